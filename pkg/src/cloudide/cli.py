"""Command line entry points.

`cloudide` manages a service instance (serve, init-config) and also exposes
the verifier as a subcommand; the `verify` script is the standalone
verification tool aimed at any running endpoint.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .config import default_config_json, load_config
from .errors import ServiceError
from .harness.functional import run_functional_suite
from .harness.report import render_text, write_report_dir
from .harness.similarity import run_similarity_suite


def _add_verify_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--endpoint", required=True,
                        help="base URL of the running service, e.g. http://127.0.0.1:8080")
    parser.add_argument("--suite", required=True,
                        choices=["similarity", "admin", "user"],
                        help="which suite to run")
    parser.add_argument("--json", metavar="PATH", default=None,
                        help="also write the full report as JSON to this file")
    parser.add_argument("--report-dir", metavar="DIR", default=None,
                        help="write CSV plus PNG charts of the results here")
    parser.add_argument("--languages", default=None,
                        help="similarity only: comma list restricting the corpus "
                             "(c,cpp,java); default is all")
    parser.add_argument("--admin-user", default="admin",
                        help="admin username for the admin suite")
    parser.add_argument("--admin-password", default="change-me-now",
                        help="admin password for the admin suite")


def _run_verify(args: argparse.Namespace) -> int:
    try:
        if args.suite == "similarity":
            languages = None
            if args.languages:
                languages = [tok.strip() for tok in args.languages.split(",") if tok.strip()]
            report = run_similarity_suite(args.endpoint, languages=languages)
        else:
            report = run_functional_suite(args.endpoint, args.suite,
                                          admin_username=args.admin_user,
                                          admin_password=args.admin_password)
    except ServiceError as exc:
        print("verification aborted: %s: %s" % (exc.code, exc.message),
              file=sys.stderr)
        return 2

    sys.stdout.write(render_text(report))
    if args.json:
        Path(args.json).write_text(json.dumps(report.to_dict(), indent=2) + "\n",
                                   encoding="utf-8")
    if args.report_dir:
        for path in write_report_dir(report, args.report_dir):
            print("wrote %s" % path)
    return 0 if report.detected == report.tested else 1


def verify_main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="verify",
        description="Exercise a running cloudide endpoint and score the results.")
    _add_verify_args(parser)
    return _run_verify(parser.parse_args(argv))


def _run_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    config = load_config(args.config)
    if args.host:
        config.host = args.host
    if args.port:
        config.port = args.port
    try:
        app = create_app(config)
    except ServiceError as exc:
        print("refusing to start: %s: %s" % (exc.code, exc.message), file=sys.stderr)
        return 2
    uvicorn.run(app, host=config.host, port=config.port, log_level="info")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="cloudide",
        description="Self-hostable compile-and-run backend for a browser IDE.")
    sub = parser.add_subparsers(dest="command", required=True)

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("-c", "--config", default=None,
                       help="path to a JSON config file")
    serve.add_argument("--host", default=None, help="override listen host")
    serve.add_argument("--port", type=int, default=None, help="override listen port")

    init = sub.add_parser("init-config", help="print a starter JSON config")
    init.add_argument("-o", "--output", default=None,
                      help="write it to this file instead of stdout")

    verify = sub.add_parser("verify", help="verify a running endpoint")
    _add_verify_args(verify)

    args = parser.parse_args(argv)
    if args.command == "serve":
        return _run_serve(args)
    if args.command == "init-config":
        text = default_config_json()
        if args.output:
            Path(args.output).write_text(text, encoding="utf-8")
            print("wrote %s" % args.output)
        else:
            sys.stdout.write(text)
        return 0
    return _run_verify(args)


if __name__ == "__main__":
    sys.exit(main())
