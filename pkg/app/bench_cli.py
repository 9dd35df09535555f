########################
# Command Line         #
########################

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from colorama import Fore, Style, init  # Using Colorama for color coded output
init(autoreset=True)

from app.bench_observers import AutoSaveObserver, LoggingObserver
from app.bench_record import FAIL, PASS, SKIP, BenchRecord
from app.bench_runner import BenchRunner
from app.conversions import LaurentThetaPoly, partial_to_theta, theta_to_partial
from app.exceptions import ConfigurationError, OreError, UnknownAlgorithm, ValidationError
from app.input_validators import FORMATS, BenchConfig, InputValidator
from app.matrixarith import STRATEGIES
from app.ore_config import OreConfig
from app.orecore import PARTIAL, THETA, OrePoly

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_CONFIG = 2

DEFAULT_VERIFY_ALGOS = "naive,iter,takayama,vdh,ivdh,mulweyl,naive_theta,vdh_theta,ivdh_theta"


def _sweep_options(parser: argparse.ArgumentParser, default_algos: str) -> None:
    parser.add_argument("--algos", default=default_algos, help="Comma-separated algorithm names")
    parser.add_argument("--sizes", default="8,16", help="Comma-separated sizes n (bidegree (n, n))")
    parser.add_argument("--prime", default=None, help="Characteristic: a prime, or 0 for the rationals")
    parser.add_argument("--trials", type=int, default=1)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--format", dest="output_format", choices=FORMATS, default="table")
    parser.add_argument("--strategy", choices=STRATEGIES, default="naive", help="Matrix product strategy")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="oremul",
        description="Verify and benchmark products of differential operators."
    )
    commands = parser.add_subparsers(dest="command", required=True)

    verify = commands.add_parser("verify", help="Check algorithms against the naive product")
    _sweep_options(verify, DEFAULT_VERIFY_ALGOS)

    bench = commands.add_parser("bench", help="Time and count algorithm runs")
    _sweep_options(bench, "mulweyl,takayama")
    bench.add_argument("--count-blocks", action="store_true", help="Tally n x n block products")
    bench.add_argument("--block-size", type=int, default=None, help="Block side (default: n)")
    bench.add_argument("--timeout", type=float, default=None, help="Per-run timeout in seconds")
    bench.add_argument("--verify", action="store_true", help="Also check every product")
    bench.add_argument("--output", default=None, help="CSV file for the records")

    convert = commands.add_parser("convert", help="Rewrite an operator document between d and theta")
    convert.add_argument("--input", default="-", help="JSON operator document ('-' for stdin)")
    convert.add_argument("--to", dest="target", choices=(PARTIAL, THETA), required=True)
    convert.add_argument("--output", default="-", help="Destination ('-' for stdout)")
    return parser


def _bench_config(args: argparse.Namespace, config: OreConfig, verify: bool) -> BenchConfig:
    prime = config.default_prime if args.prime is None else InputValidator.validate_prime(args.prime)
    return BenchConfig(
        algos=InputValidator.validate_name_list(args.algos),
        sizes=InputValidator.validate_int_list(args.sizes, "size list"),
        p=prime,
        trials=args.trials,
        seed=args.seed,
        output_format=args.output_format,
        verify=verify,
        count_blocks=getattr(args, "count_blocks", False),
        block_size=getattr(args, "block_size", None),
        timeout=getattr(args, "timeout", None) or config.timeout,
        strategy=args.strategy,
    )


def _print_records(runner: BenchRunner, records: List[BenchRecord], output_format: str) -> None:
    if output_format == "csv":
        print(runner.render("csv"), end="")
        return
    print(runner.render("table"))
    for record in records:
        if record.status == PASS:
            print(f"{Fore.GREEN}PASS{Style.RESET_ALL} {record}")
        elif record.status == FAIL:
            print(f"{Fore.RED}FAIL{Style.RESET_ALL} {record}")
        elif record.status == SKIP:
            print(f"{Fore.YELLOW}SKIP{Style.RESET_ALL} {record.algorithm} n={record.n}: {record.note}")


def _run_sweep(args: argparse.Namespace, verify: bool, config: Optional[OreConfig]) -> int:
    runner = BenchRunner(config)
    bench = _bench_config(args, runner.config, verify)
    runner.add_observer(LoggingObserver())
    output = getattr(args, "output", None)
    if output is None and args.command == "bench":
        runner.add_observer(AutoSaveObserver(runner))

    records = runner.run(bench)
    _print_records(runner, records, bench.output_format)
    if args.command == "bench":
        runner.save_results(Path(output) if output else None)
        if bench.output_format == "table":
            print(f"\n{Fore.CYAN}Operation counts by size:{Style.RESET_ALL}")
            print(runner.growth_table("ops").to_string())

    if not runner.all_passed(records):
        print(f"{Fore.RED}Verification failed{Style.RESET_ALL}")
        return EXIT_FAILED
    if verify:
        print(f"{Fore.GREEN}All verifications passed{Style.RESET_ALL}")
    return EXIT_OK


def _read_document(source: str) -> dict:
    text = sys.stdin.read() if source == "-" else Path(source).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ValidationError(f"Invalid operator JSON: {e}")


def convert_document(data: dict, target: str) -> dict:
    """
    Rewrite an operator document in the requested derivation.

    A theta document with a positive ``valuation`` is a Laurent operator; it
    converts to partial form when no negative X power survives.

    Raises:
        ValidationError: If the document is malformed.
        ConversionError: If the result would need negative X powers.
    """
    if data.get('var') == THETA and data.get('valuation'):
        source = LaurentThetaPoly.from_dict(data)
    else:
        source = OrePoly.from_dict(data)

    if target == PARTIAL:
        if isinstance(source, OrePoly) and source.tag == PARTIAL:
            return source.to_dict()
        return theta_to_partial(source).to_dict()
    if isinstance(source, LaurentThetaPoly) or source.tag == THETA:
        return source.to_dict()
    laurent = partial_to_theta(source)
    return laurent.to_theta().to_dict() if laurent.valuation == 0 else laurent.to_dict()


def _convert(args: argparse.Namespace) -> int:
    document = convert_document(_read_document(args.input), args.target)
    text = json.dumps(document)
    if args.output == "-":
        print(text)
    else:
        Path(args.output).write_text(text + "\n")
        print(f"{Fore.GREEN}Wrote {args.output}{Style.RESET_ALL}")
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None, config: Optional[OreConfig] = None) -> int:
    """
    Entry point of the command-line harness.

    Returns:
        int: 0 when every verification passed, 1 on a failed verification,
        2 on invalid arguments or configuration.
    """
    args = build_parser().parse_args(argv)
    try:
        if args.command == "convert":
            return _convert(args)
        return _run_sweep(args, verify=(args.command == "verify" or args.verify), config=config)
    except (ValidationError, UnknownAlgorithm, ConfigurationError) as e:
        print(f"{Fore.RED}Error: {e}{Style.RESET_ALL}")
        logging.error(f"Invalid arguments: {e}")
        return EXIT_CONFIG
    except OreError as e:
        print(f"{Fore.RED}Error: {e}{Style.RESET_ALL}")
        logging.error(f"Command failed: {e}")
        return EXIT_FAILED
