"""SsliProperties.py: Effective configuration of the ssli-verifier CLI and campaigns."""

import os

from pydantic import BaseModel, ValidationError
from yaml import YAMLError

from .CampaignProperties import CampaignProperties
from .LemmaScanProperties import LemmaScanProperties
from .ToleranceProperties import ToleranceProperties
from ..logger import get_logger
from ..schema.exceptions import ConfigError
from ..utils import get_float_property, get_int_property, get_str_property

CONFIG_ENV_VAR = "SSLI_CONFIG"


def _underscore_keys(props: dict) -> dict:
    return {k.replace("-", "_") if isinstance(k, str) else k: v for k, v in props.items()}


def default_config_paths() -> list[str]:
    """Implicit config locations, tried in order when no path is given."""
    return ["ssli.yaml", os.path.join(os.path.expanduser("~"), ".config", "ssli-verifier", "config.yaml")]


class SsliProperties:
    tolerances: ToleranceProperties = ToleranceProperties()
    campaign: CampaignProperties = CampaignProperties()
    lemma_scan: LemmaScanProperties = LemmaScanProperties()

    # Path the properties were read from, None when running on defaults.
    source: str | None = None

    def __init__(self):
        pass

    def load(self, properties_path: str | None = None) -> "SsliProperties":
        """Loads the YAML config and applies the SSLI_* environment overrides.

        An explicit path, given as argument or through SSLI_CONFIG, must exist; the
        implicit locations are optional and the built-in defaults apply without them.
        """

        log = get_logger()

        explicit = True
        if properties_path is None or not properties_path.strip():
            properties_path = get_str_property(props={}, prop_name="config", env_var_name=CONFIG_ENV_VAR)
        if properties_path is None:
            explicit = False
            properties_path = next((p for p in default_config_paths() if os.path.exists(p)), None)

        properties: dict = {}
        if properties_path is not None:
            if not os.path.exists(properties_path):
                if explicit:
                    log.error(f"Properties file {properties_path} does not exist.")
                    raise ConfigError(f"Properties file {properties_path} does not exist")
            else:
                properties = self._read(properties_path)
                self.source = properties_path

        self.tolerances = self._section(properties, "tolerances", ToleranceProperties)
        self.campaign = self._section(properties, "campaign", CampaignProperties)
        self.lemma_scan = self._section(properties, "lemma_scan", LemmaScanProperties)
        self._apply_env_overrides()
        return self

    def _read(self, properties_path: str) -> dict:
        log = get_logger()
        log.info(f"Loading properties from {properties_path}...")

        try:
            import yaml

            with open(properties_path, 'r', encoding='utf-8') as file:
                properties = yaml.safe_load(file)
        except YAMLError as e:
            log.error(f"Error parsing YAML file: {e}.")
            raise ConfigError(f"Error parsing YAML file {properties_path}: {e}")
        except OSError as e:
            log.error(f"Error reading properties file: {e}.")
            raise ConfigError(f"Error reading properties file {properties_path}: {e}")

        if properties is None:
            log.warning(f"Properties file {properties_path} is empty.")
            return {}
        if not isinstance(properties, dict):
            raise ConfigError(f"Properties file {properties_path} must hold a mapping at the top level")
        return _underscore_keys(properties)

    @staticmethod
    def _section(properties: dict, name: str, model: type[BaseModel]):
        section = properties.get(name, {}) or {}
        if not isinstance(section, dict):
            raise ConfigError(f"Config section '{name}' must be a mapping, got {type(section).__name__}")
        try:
            return model(**_underscore_keys(section))
        except ValidationError as e:
            raise ConfigError(f"Invalid config section '{name}': {e}")

    def _apply_env_overrides(self):
        log = get_logger()

        threads = get_int_property(props={}, prop_name="threads", env_var_name="SSLI_THREADS")
        if threads is not None and threads >= 1:
            self.campaign = self.campaign.model_copy(update={"threads": threads})
            log.info(f"Campaign threads set to: {threads}.")

        seed = get_int_property(props={}, prop_name="seed", env_var_name="SSLI_SEED")
        if seed is not None and seed >= 0:
            self.campaign = self.campaign.model_copy(update={"seed": seed})
            log.info(f"Campaign seed set to: {seed}.")

        tolerance = get_float_property(props={}, prop_name="tolerance", env_var_name="SSLI_TOLERANCE")
        if tolerance is not None and tolerance >= 0:
            self.tolerances = self.tolerances.model_copy(update={"hypothesis": tolerance})
            log.info(f"Hypothesis tolerance set to: {tolerance}.")

    def echo(self) -> dict:
        """Effective values, echoed by every CLI run."""
        return {
            "config": self.source,
            "tolerances": self.tolerances.model_dump(),
            "campaign": self.campaign.model_dump(),
            "lemma_scan": self.lemma_scan.model_dump(),
        }
