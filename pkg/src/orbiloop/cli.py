#!/usr/bin/env python3
"""``orbiloop`` command line.

Every subcommand prints a text report to stdout and, with ``--json PATH``, writes
the same result as a JSON document (``--json -`` prints the JSON instead of the
text). Exit codes: 0 success, 1 a verdict or check failed, 2 bad input, 3 a
precondition of the computation does not hold.
"""
import argparse
import logging
import os
import sys
import traceback

from . import env
from .config.catalog import get_catalog
from .exceptions import OrbiloopError
from .utils.io import dumps, save_json
from .verbs import verb_list

_logger = logging.getLogger(__name__)


def _threads(value: str) -> int:
    threads = int(value)
    if threads < 1:
        raise argparse.ArgumentTypeError("--threads must be at least 1")
    return threads


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orbiloop", description="Loop groupoids, gerbes and twisted cohomology of finite orbifolds"
    )
    parser.add_argument("--json", metavar="PATH", dest="json_path", help="write the result document ('-' for stdout)")
    parser.add_argument("--debug", action="store_true", help="log at debug level and show tracebacks")
    parser.add_argument("--threads", type=_threads, default=None, help="worker threads (sets ORBILOOP_THREADS)")
    subparsers = parser.add_subparsers(dest="verb", metavar="VERB", required=True)
    for verb_class in verb_list:
        sub = subparsers.add_parser(verb_class.get_name(), help=verb_class.get_help())
        verb_class.add_arguments(sub)
        sub.set_defaults(verb_class=verb_class)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)

    env.setup_logger()
    if args.debug:
        env.debug(True)
    if args.threads is not None:
        os.environ["ORBILOOP_THREADS"] = str(args.threads)
    try:
        _logger.debug("sympy %s", env.sympy_version())
    except ImportError as e:
        _logger.error("%s", e)
        return 1

    verb_class = args.verb_class
    _logger.debug("running %s", verb_class.get_name())
    try:
        report = verb_class.run(args, get_catalog())
    except OrbiloopError as e:
        _logger.error("%s: %s", verb_class.get_name(), e)
        _logger.debug(traceback.format_exc())
        return e.exit_code
    except Exception as e:
        _logger.error("%s: unexpected %s: %s", verb_class.get_name(), type(e).__name__, e)
        _logger.debug(traceback.format_exc())
        return 1

    if args.json_path == "-":
        sys.stdout.write(dumps(report.document))
    else:
        print(report.text)
        if args.json_path:
            save_json(report.document, args.json_path)
            _logger.info("result written to %s", args.json_path)
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
