import argparse
import csv
import io
import json
import sys
from pathlib import Path

from rich.console import Console

from ._base import GkzError
from ._commands import COMMANDS, EXIT_VIOLATION, error_report
from ._config import RunConfig
from ._utils import expect_object

# Initialize console for rich logging
_console = Console(stderr=True)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hardygkz", description="Hardy-space factorization and Gleason-Kahane-Zelazko checks."
    )
    parser.add_argument("command", choices=sorted(COMMANDS), help="Operation to run.")
    parser.add_argument("--grid", type=int, default=4096, help="Boundary grid size N, a power of two.")
    parser.add_argument("--degree", type=int, default=256, help="Truncation degree d < N/2.")
    parser.add_argument("--tol", type=float, default=1e-8, help="Verdict tolerance.")
    parser.add_argument("--seed", type=int, default=42, help="Seed of the random test families.")
    parser.add_argument("--in", dest="input_path", type=Path, help="JSON input (default: stdin).")
    parser.add_argument("--out", dest="output_path", type=Path, help="Report path (default: stdout).")
    parser.add_argument(
        "--format", dest="output_format", choices=("json", "csv"), default="json",
        help="Report format; csv is available for the shift-norms trend table.",
    )
    parser.add_argument("--space", help="shift-norms: Hardy2, Bergman2 or Dirichlet.")
    parser.add_argument("--n", type=int, help="shift-norms: power of the shift to report.")
    parser.add_argument("--n-max", type=int, help="shift-norms: length of the trend table.")
    return parser


def _read_input(args: argparse.Namespace, config: RunConfig):
    if config.input_path is not None:
        return json.loads(config.input_path.read_text())
    if args.command == "shift-norms":
        return {}
    return json.loads(sys.stdin.read())


def _render(report, config: RunConfig) -> str:
    if config.output_format == "json":
        return json.dumps(report, indent=2, sort_keys=True) + "\n"
    if "trend" not in report:
        raise ValueError("csv output is only available for the shift-norms trend table")
    _buffer = io.StringIO()
    if "norm" in report:
        _buffer.write(f"# n={report['n']} norm={float(report['norm'])!r}\n")
    _writer = csv.DictWriter(_buffer, fieldnames=("n", "norm", "nth_root"), lineterminator="\n")
    _writer.writeheader()
    _writer.writerows(report["trend"])
    return _buffer.getvalue()


def _write_output(text: str, path: Path | None):
    if path is None:
        sys.stdout.write(text)
    else:
        path.write_text(text)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = RunConfig(
            grid=args.grid,
            degree=args.degree,
            tol=args.tol,
            seed=args.seed,
            input_path=args.input_path,
            output_path=args.output_path,
            output_format=args.output_format,
        )
        data = _read_input(args, config)
        if args.command == "shift-norms":
            expect_object(data, "the shift-norms input")
            for _key, _value in (("space", args.space), ("n", args.n), ("n_max", args.n_max)):
                if _value is not None:
                    data[_key] = _value
        report, code = COMMANDS[args.command](data, config)
        text = _render(report, config)
    except (GkzError, OSError, ValueError, KeyError, TypeError) as e:
        _console.log(f"[red]{type(e).__name__}: {e}[/red]")
        report, code = error_report(e), EXIT_VIOLATION
        text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    _write_output(text, args.output_path)
    return code


if __name__ == "__main__":
    sys.exit(main())
