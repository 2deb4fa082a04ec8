import os
import sys
import tempfile
import unittest
from unittest.mock import patch

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from src.ssli_verifier.properties import SsliProperties, ToleranceProperties
from src.ssli_verifier.schema import ConfigError

FULL_CONFIG = """\
tolerances:
  hypothesis: 1.0e-10
  majorization-sum: 1.0e-8
campaign:
  mode: theorem3
  trials: 500
  block-size: 100
  rot-samples: 5
lemma-scan:
  r-steps: 50
  phi-steps: 10
  fd-check: true
"""


class TestSsliProperties(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()

    def tearDown(self):
        self.tmp.cleanup()

    def write(self, text: str, name: str = "ssli.yaml") -> str:
        path = os.path.join(self.tmp.name, name)
        with open(path, "w", encoding="utf-8") as file:
            file.write(text)
        return path

    def test_hyphenated_keys(self):
        path = self.write(FULL_CONFIG)
        properties = SsliProperties().load(path)
        self.assertEqual(path, properties.source)
        self.assertEqual(1e-10, properties.tolerances.hypothesis)
        self.assertEqual(1e-8, properties.tolerances.majorization_sum)
        self.assertEqual(1e-12, properties.tolerances.equality)
        self.assertEqual("theorem3", properties.campaign.mode)
        self.assertEqual(100, properties.campaign.block_size)
        self.assertEqual(5, properties.campaign.rot_samples)
        self.assertEqual(50, properties.lemma_scan.r_steps)
        self.assertTrue(properties.lemma_scan.fd_check)

    def test_echo(self):
        echo = SsliProperties().load(self.write(FULL_CONFIG)).echo()
        self.assertEqual({"config", "tolerances", "campaign", "lemma_scan"}, set(echo))
        self.assertEqual(500, echo["campaign"]["trials"])

    def test_empty_file_gives_defaults(self):
        properties = SsliProperties().load(self.write(""))
        self.assertEqual(ToleranceProperties(), properties.tolerances)
        self.assertEqual(10_000, properties.campaign.trials)

    def test_missing_explicit_path(self):
        with self.assertRaises(ConfigError):
            SsliProperties().load(os.path.join(self.tmp.name, "absent.yaml"))

    @patch.dict(os.environ, {"SSLI_CONFIG": "/nonexistent/ssli.yaml"})
    def test_missing_path_from_env(self):
        with self.assertRaises(ConfigError):
            SsliProperties().load()

    def test_malformed_yaml(self):
        with self.assertRaises(ConfigError):
            SsliProperties().load(self.write("campaign: [1, 2\n"))

    def test_invalid_values(self):
        for text in ("tolerances:\n  violation: -1.0\n",
                     "campaign:\n  trials: many\n",
                     "campaign: 5\n",
                     "- tolerances\n"):
            with self.assertRaises(ConfigError, msg=text):
                SsliProperties().load(self.write(text))

    @patch.dict(os.environ, {"SSLI_THREADS": "4", "SSLI_SEED": "99", "SSLI_TOLERANCE": "1e-9"})
    def test_env_overrides(self):
        properties = SsliProperties().load(self.write(FULL_CONFIG))
        self.assertEqual(4, properties.campaign.threads)
        self.assertEqual(99, properties.campaign.seed)
        self.assertEqual(1e-9, properties.tolerances.hypothesis)
        self.assertEqual(500, properties.campaign.trials)

    @patch.dict(os.environ, {"SSLI_THREADS": "0", "SSLI_SEED": "-3"})
    def test_out_of_range_env_values_are_ignored(self):
        properties = SsliProperties().load(self.write(FULL_CONFIG))
        self.assertEqual(1, properties.campaign.threads)
        self.assertEqual(0, properties.campaign.seed)


if __name__ == '__main__':
    unittest.main()
