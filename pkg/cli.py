"""Command line front end.

Subcommands: ``generate``, ``positions``, ``reconstruct``, ``apply``,
``analyze`` and ``verify``. Results go to stdout, logs to stderr. Exit
codes: 0 success, 1 unexpected error, 2 violation found or check failed,
3 budget or timeout exceeded, 4 bad input.
"""

import argparse
import logging
import signal
import sys
from contextlib import contextmanager
from typing import Callable, Iterator, List, Optional, Tuple

from dotenv import load_dotenv

from config import get_config
from exceptions import RelposError, ResourceLimitError, SpecParseError
from reconstruct import RSpec, reconstruct
from theorems import list_theorems, run_all
from utils.logging_config import setup_logging
from utils.parsing import apply_pipeline, parse_rspec, parse_substitution, parse_word
from utils.reports import (
    analysis_report, certificates_report, human_report, human_table, positions_csv,
    positions_report, reconstruction_report, to_json, word_report,
)
from words import set_index_budget

logger = logging.getLogger(__name__)

CommandResult = Tuple[str, int]

EXIT_OK = 0
EXIT_VIOLATION = 2
DEFAULT_PAIRS = 10


class _ArgumentParser(argparse.ArgumentParser):
    """Raise instead of exiting so that usage errors map to exit code 4."""

    def error(self, message: str) -> None:
        raise SpecParseError(f'{self.prog}: {message}')


def _positive_int(text: str) -> int:
    try:
        value = int(text.replace('_', ''))
    except ValueError:
        raise argparse.ArgumentTypeError(f'not an integer: {text!r}')
    if value < 1:
        raise argparse.ArgumentTypeError(f'must be at least 1, got {value}')
    return value


def _positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f'not a number: {text!r}')
    if value <= 0:
        raise argparse.ArgumentTypeError(f'must be positive, got {value}')
    return value


@contextmanager
def _deadline(seconds: Optional[float]) -> Iterator[None]:
    """Raise :class:`ResourceLimitError` if the block runs longer than ``seconds``."""
    if not seconds or not hasattr(signal, 'SIGALRM'):
        yield
        return

    def expire(signum, frame):
        raise ResourceLimitError(f'timed out after {seconds}s')

    previous = signal.signal(signal.SIGALRM, expire)
    signal.setitimer(signal.ITIMER_REAL, seconds)
    try:
        yield
    finally:
        signal.setitimer(signal.ITIMER_REAL, 0)
        signal.signal(signal.SIGALRM, previous)


def cmd_generate(args: argparse.Namespace) -> CommandResult:
    w = parse_word(args.word)
    if args.format == 'json':
        return to_json(word_report(w, args.length)), EXIT_OK
    if args.format == 'human':
        return human_report(word_report(w, args.length)), EXIT_OK
    return w.text(args.length) + '\n', EXIT_OK


def cmd_positions(args: argparse.Namespace) -> CommandResult:
    report = positions_report(parse_word(args.word), args.n)
    if args.format == 'json':
        return to_json(report), EXIT_OK
    if args.format == 'human':
        return human_report(report), EXIT_OK
    return positions_csv(report['rows']), EXIT_OK


def _rspec_from_args(args: argparse.Namespace) -> RSpec:
    if args.formula is not None:
        return RSpec.from_formula(args.formula)
    if args.file is not None:
        return RSpec.from_file(args.file)
    if args.values is not None:
        if ',' in args.values:
            return parse_rspec(args.values)
        try:
            return RSpec.from_values([int(args.values)])
        except ValueError:
            raise SpecParseError(f'bad value list: {args.values!r}')
    return RSpec.preset(args.preset)


def cmd_reconstruct(args: argparse.Namespace) -> CommandResult:
    spec = _rspec_from_args(args)
    pairs = args.pairs or spec.limit or DEFAULT_PAIRS
    outcome = reconstruct(spec, pairs)
    code = EXIT_OK if outcome.ok else EXIT_VIOLATION
    report = reconstruction_report(spec, outcome)
    if args.format == 'json':
        return to_json(report), code
    if args.format == 'human':
        return human_report(report), code
    if outcome.ok:
        return report['word'] + '\n', code
    v = outcome.violation
    clause = f' clause {v.clause}' if v.clause is not None else ''
    return f'violation at n={v.index} ({v.kind.value}{clause}): {v.detail}\n', code


def cmd_apply(args: argparse.Namespace) -> CommandResult:
    w = apply_pipeline(parse_word(args.word), args.pipeline)
    if args.format == 'json':
        return to_json(word_report(w, args.length)), EXIT_OK
    return w.text(args.length) + '\n', EXIT_OK


def cmd_analyze(args: argparse.Namespace) -> CommandResult:
    report = analysis_report(parse_substitution(args.substitution))
    if args.format == 'json':
        return to_json(report), EXIT_OK
    return human_report(report), EXIT_OK


def cmd_verify(args: argparse.Namespace) -> CommandResult:
    if args.list:
        rows = [t.to_dict() for t in list_theorems()]
        if args.format == 'json':
            return to_json({'theorems': rows}), EXIT_OK
        return human_table(rows, ['id', 'default_scale', 'summary']), EXIT_OK
    if args.all:
        ids = [t.theorem_id for t in list_theorems()]
    elif args.theorem_id:
        ids = [args.theorem_id]
    else:
        raise SpecParseError('verify needs a theorem id, --all or --list')
    workers = args.workers if args.workers is not None else (get_config().VERIFY_WORKERS if len(ids) > 1 else 1)
    certificates = run_all(scale=args.scale, workers=workers, timeout=args.timeout,
                           seed=args.seed, theorem_ids=ids)
    report = certificates_report(certificates, timings=args.timings)
    code = EXIT_OK if report['passed'] else EXIT_VIOLATION
    if args.format == 'json':
        return to_json(report), code
    if args.format == 'text':
        lines = [f"{c['theorem_id']} {'pass' if c['passed'] else 'FAIL'}" for c in report['certificates']]
        return '\n'.join(lines) + '\n', code
    return human_report(report), code


def build_parser() -> argparse.ArgumentParser:
    """The ``relpos`` argument parser with one subparser per command."""
    parser = _ArgumentParser(
        prog='relpos',
        description='Relative position functions of binary words: generate, analyze, reconstruct, verify.',
    )
    parser.add_argument('--max-index', type=_positive_int, default=None,
                        help='largest number of letters any word may generate')
    parser.add_argument('--timeout', type=_positive_float, default=None,
                        help='wall clock limit in seconds (per check for verify)')
    parser.add_argument('--log-level', default=None, help='DEBUG, INFO, WARNING or ERROR')
    parser.add_argument('--log-format', choices=('json', 'text'), default=None)
    subparsers = parser.add_subparsers(dest='command', metavar='COMMAND', required=True,
                                       parser_class=_ArgumentParser)

    generate = subparsers.add_parser('generate', help='print a prefix of a word')
    generate.add_argument('word', help='word spec, e.g. "tm | clone:2"')
    generate.add_argument('--length', type=_positive_int, required=True)
    generate.add_argument('--format', choices=('text', 'json', 'human'), default='text')
    generate.set_defaults(handler=cmd_generate)

    positions = subparsers.add_parser('positions', help='position, relative and difference series as CSV')
    positions.add_argument('word')
    positions.add_argument('--n', type=_positive_int, required=True, help='number of rows')
    positions.add_argument('--format', choices=('csv', 'text', 'json', 'human'), default='csv')
    positions.set_defaults(handler=cmd_positions)

    rebuild = subparsers.add_parser('reconstruct', help='recover a word from its relative position function')
    source = rebuild.add_mutually_exclusive_group(required=True)
    source.add_argument('--formula', help='closed form k*n+j')
    source.add_argument('--file', help='newline separated values r(1), r(2), ...')
    source.add_argument('--values', help='comma separated values')
    source.add_argument('--preset', choices=('fib', 'tm'))
    rebuild.add_argument('--pairs', type=_positive_int, default=None,
                         help=f'pairs to place; all given values or {DEFAULT_PAIRS} by default')
    rebuild.add_argument('--format', choices=('text', 'json', 'human'), default='text')
    rebuild.set_defaults(handler=cmd_reconstruct)

    pipeline = subparsers.add_parser('apply', help='apply an operator pipeline to a word')
    pipeline.add_argument('pipeline', help='stages such as "delete^2 | prefix:ab"')
    pipeline.add_argument('--word', required=True)
    pipeline.add_argument('--length', type=_positive_int, required=True)
    pipeline.add_argument('--format', choices=('text', 'json'), default='text')
    pipeline.set_defaults(handler=cmd_apply)

    analyze = subparsers.add_parser('analyze', help='spectral report of a substitution')
    analyze.add_argument('substitution', help='e.g. fib, pisa:2,0,2 or "a->ab;b->a"')
    analyze.add_argument('--format', choices=('json', 'human', 'text'), default='json')
    analyze.set_defaults(handler=cmd_analyze)

    verify = subparsers.add_parser('verify', help='machine-check registered identities')
    verify.add_argument('theorem_id', nargs='?')
    verify.add_argument('--all', action='store_true')
    verify.add_argument('--list', action='store_true')
    verify.add_argument('--n', '--len', '--scale', dest='scale', type=_positive_int, default=None,
                        help='terms checked (word length for the uniqueness searches)')
    verify.add_argument('--workers', type=_positive_int, default=None)
    verify.add_argument('--seed', type=int, default=None)
    verify.add_argument('--format', choices=('human', 'text', 'json'), default='human')
    verify.add_argument('--timings', action='store_true', help='include elapsed seconds per check')
    verify.set_defaults(handler=cmd_verify)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Run one command and return its exit code.

    :param argv: Arguments without the program name; ``sys.argv[1:]`` when None
    :type argv: Optional[List[str]]
    :return: Process exit code
    :rtype: int
    """
    load_dotenv()
    try:
        args = build_parser().parse_args(argv)
    except SpecParseError as e:
        print(f'error: {e}', file=sys.stderr)
        return e.exit_code

    config = get_config()
    setup_logging(args.log_level or config.LOG_LEVEL, args.log_format or config.LOG_FORMAT, stream=sys.stderr)
    handler: Callable[[argparse.Namespace], CommandResult] = args.handler
    try:
        if args.max_index is not None:
            set_index_budget(args.max_index)
        with _deadline(None if args.command == 'verify' else args.timeout):
            output, code = handler(args)
    except RelposError as e:
        logger.warning(f'{args.command} failed: {e}')
        print(f'error: {e}', file=sys.stderr)
        return e.exit_code
    except Exception as e:
        logger.error(f'Unexpected error in {args.command}: {e}', exc_info=True)
        print(f'error: {e}', file=sys.stderr)
        return 1

    sys.stdout.write(output)
    logger.info(f'{args.command} finished with exit code {code}')
    return code


if __name__ == '__main__':
    sys.exit(main())
