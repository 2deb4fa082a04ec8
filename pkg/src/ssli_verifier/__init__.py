from .cli import (EXIT_INTERNAL_ERROR, CliArgumentParser, FORMATS, MATRIX_ACTIONS, cmd_counterexamples, cmd_lemma_scan,
                  cmd_matrix, cmd_sample, cmd_verify, tool_version)


def build_parser() -> CliArgumentParser:
    from .schema import CampaignMode, Formulation

    parser = CliArgumentParser(
        prog="ssli",
        description="ssli-verifier: numerical checks of the sum-of-squared-logarithms inequality"
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {tool_version()}")
    parser.add_argument("--config", type=str, help="Path to the config file")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="Log INFO (-v) or DEBUG (-vv) to stderr")
    subparsers = parser.add_subparsers(dest="command", required=True, parser_class=CliArgumentParser)

    def add_format(sub):
        sub.add_argument("--format", choices=FORMATS, default="table", help="Output format (default: table)")

    verify = subparsers.add_parser("verify", help="Check one formulation on a tuple or matrix pair")
    verify.add_argument("--formulation", choices=[f.value for f in Formulation],
                        help="Formulation, required unless the input names it")
    verify.add_argument("--input", type=str, help="Inline JSON, a JSON file path, or '-' for stdin")
    verify.add_argument("--left", type=str, help="Left tuple or matrix as JSON")
    verify.add_argument("--right", type=str, help="Right tuple or matrix as JSON")
    verify.add_argument("--tol", type=float, help="Relative hypothesis tolerance")
    verify.add_argument("--eq-tol", dest="eq_tol", type=float, help="Tolerance on the equality defects")
    add_format(verify)
    verify.set_defaults(handler=cmd_verify)

    scan = subparsers.add_parser("lemma-scan", help="Scan F <= 0 and dh/dr > 0 over an (r, phi) grid")
    scan.add_argument("--r-min", dest="r_min", type=float)
    scan.add_argument("--r-max", dest="r_max", type=float)
    scan.add_argument("--r-steps", dest="r_steps", type=int, help="Number of radii, both ends included")
    scan.add_argument("--phi-steps", dest="phi_steps", type=int, help="Number of intervals on [0, pi/3]")
    scan.add_argument("--tol", type=float)
    scan.add_argument("--fd-check", dest="fd_check", action="store_true",
                      help="Cross-check dh/dr against central differences")
    add_format(scan)
    scan.set_defaults(handler=cmd_lemma_scan)

    examples = subparsers.add_parser("counterexamples", help="Evaluate the pinned counterexamples")
    examples.add_argument("--tol", type=float)
    add_format(examples)
    examples.set_defaults(handler=cmd_counterexamples)

    sample = subparsers.add_parser("sample", help="Run a seeded sampling campaign")
    sample.add_argument("--mode", choices=[m.value for m in CampaignMode])
    sample.add_argument("--n", type=int, help="Tuple length")
    sample.add_argument("--trials", type=int)
    sample.add_argument("--seed", type=int)
    sample.add_argument("--spread", type=float, help="Width of the sampled log-coordinates")
    sample.add_argument("--threads", type=int, help="Worker threads (default: SSLI_THREADS or 1)")
    sample.add_argument("--block-size", dest="block_size", type=int)
    sample.add_argument("--rot-samples", dest="rot_samples", type=int, help="Rotations per matrix, optimality mode")
    sample.add_argument("--premise-attempts", dest="premise_attempts", type=int)
    sample.add_argument("--csv", type=str, help="Write one CSV row per trial to this file")
    add_format(sample)
    sample.set_defaults(handler=cmd_sample)

    matrix = subparsers.add_parser("matrix", help="Matrix logarithm, polar factors and strain measures")
    matrix.add_argument("action", choices=MATRIX_ACTIONS)
    matrix.add_argument("--input", type=str, required=True,
                        help="Matrix as JSON rows, a JSON file path, or '-' for stdin")
    add_format(matrix)
    matrix.set_defaults(handler=cmd_matrix)

    return parser


def main(argv: list[str] | None = None):
    import sys
    import traceback

    from .logger import get_logger, set_level
    from .properties import SsliProperties
    from .schema.exceptions import SsliError

    log = get_logger()
    try:
        args = build_parser().parse_args(argv)
        if args.verbose:
            set_level("DEBUG" if args.verbose > 1 else "INFO")

        properties = SsliProperties()
        properties.load(args.config)
        code = args.handler(args, properties)
    except SsliError as e:
        print(f"ssli: error: {e}", file=sys.stderr)
        log.debug(traceback.format_exc())
        code = e.code if e.code is not None else 1
    except Exception as e:
        print(f"ssli: internal error: {type(e).__name__}: {e}", file=sys.stderr)
        log.error(f"Unexpected error: {e}.\n{traceback.format_exc()}")
        code = EXIT_INTERNAL_ERROR
    sys.exit(code)


if __name__ == "__main__":
    main()
