"""Text formats shared by the command line and the HTTP API.

Word specs are a base word followed by ``|``-separated pipeline stages,
for example ``fib | delete^3 | prefix:abba | reflect``. Substitution specs
are a name (``fibonacci``, ``pisa:1,0,2``, ...) or ``a->U;b->V``, with an
optional ``^t`` power suffix.
"""

import logging
import re
from pathlib import Path
from typing import Callable, Dict, List, Tuple

from exceptions import BadInputError, SpecParseError
from operators import delete, delete_first, delete_pow, prefix_op, strip_initial_run
from reconstruct import RSpec, linear_realization
from substitution import (
    BinarySubstitution, apply, clone, fibonacci, fibonacci_switch, fixed_point, golden_family,
    iccanobif, identity, noble_means, period_doubling, pisa, power, thue_morse,
)
from words import WordStream, periodic, reflect, staircase_word

logger = logging.getLogger(__name__)

_RULE = re.compile(r'^a->(?P<a>[ab]*);b->(?P<b>[ab]*)$')
_POWER = re.compile(r'^(?P<base>.+?)\^(?P<t>\d+)$')

_NAMED: Dict[str, Callable[[], BinarySubstitution]] = {
    'fib': fibonacci,
    'fibonacci': fibonacci,
    'iccanobif': iccanobif,
    'tm': thue_morse,
    'thue_morse': thue_morse,
    'pd': period_doubling,
    'period_doubling': period_doubling,
    'identity': identity,
}

_PARAMETRIZED: Dict[str, Tuple[int, Callable[..., BinarySubstitution]]] = {
    'pisa': (3, pisa),
    'noble': (1, noble_means),
    'clone': (1, clone),
    'golden': (2, golden_family),
}


def _int_list(text: str, count: int, what: str) -> List[int]:
    try:
        values = [int(v) for v in text.split(',')]
    except ValueError:
        raise SpecParseError(f'{what} expects {count} comma separated integers, got {text!r}')
    if len(values) != count:
        raise SpecParseError(f'{what} expects {count} comma separated integers, got {text!r}')
    return values


def parse_substitution(text: str) -> BinarySubstitution:
    """Parse a substitution spec.

    :param text: Name, parametrized name or explicit rule, optionally ``^t``
    :type text: str
    :return: The substitution
    :rtype: BinarySubstitution
    :raises SpecParseError: If the text is not a substitution spec
    """
    compact = ''.join(text.split())
    match = _POWER.match(compact)
    if match:
        return power(parse_substitution(match.group('base')), int(match.group('t')))
    rule = _RULE.match(compact)
    if rule:
        return BinarySubstitution(rule.group('a'), rule.group('b'))
    if compact in _NAMED:
        return _NAMED[compact]()
    name, _, arguments = compact.partition(':')
    if name in _PARAMETRIZED and arguments:
        count, factory = _PARAMETRIZED[name]
        return factory(*_int_list(arguments, count, name))
    raise SpecParseError(f'unknown substitution: {text!r}')


def parse_base_word(text: str) -> WordStream:
    """Parse the base of a word spec (everything before the first ``|``)."""
    text = text.strip()
    if text in ('fib', 'fibonacci'):
        return fixed_point(fibonacci(), 'a')
    if text in ('tm', 'thue_morse'):
        return fixed_point(thue_morse(), 'a')
    if text in ('pd', 'period_doubling'):
        return fixed_point(period_doubling(), 'a')
    if text == 'staircase':
        return staircase_word()
    kind, _, argument = text.partition(':')
    if kind == 'periodic' and argument:
        return periodic(argument)
    if kind == 'fixed' and argument:
        subst_text, at, seed = argument.rpartition('@')
        if not at:
            subst_text, seed = argument, 'a'
        return fixed_point(parse_substitution(subst_text), seed.strip())
    if kind == 'linear' and argument:
        k, j = _int_list(argument, 2, 'linear')
        return linear_realization(k, j)
    raise SpecParseError(f'unknown word: {text!r}')


def apply_stage(w: WordStream, stage: str) -> WordStream:
    """Apply one pipeline stage such as ``delete^2`` or ``prefix:ab``."""
    stage = stage.strip()
    if stage == 'reflect':
        return reflect(w)
    if stage == 'delete':
        return delete(w)
    if stage.startswith('delete^'):
        exponent = stage[len('delete^'):]
        if not exponent.isdigit():
            raise SpecParseError(f'bad deletion power: {stage!r}')
        return delete_pow(w, int(exponent))
    if stage in ('delete_a', 'delete_b'):
        return delete_first(w, stage[-1])
    if stage == 'switch':
        return fibonacci_switch(w)
    if stage == 'strip':
        return strip_initial_run(w)
    kind, _, argument = stage.partition(':')
    if kind == 'prefix':
        return prefix_op(argument, w)
    if kind == 'clone' and argument:
        return apply(clone(_int_list(argument, 1, 'clone')[0]), w)
    if kind == 'subst' and argument:
        return apply(parse_substitution(argument), w)
    raise SpecParseError(f'unknown pipeline stage: {stage!r}')


def apply_pipeline(w: WordStream, pipeline: str) -> WordStream:
    """Apply ``|``-separated stages left to right; blank stages are ignored."""
    for stage in pipeline.split('|'):
        if stage.strip():
            w = apply_stage(w, stage)
    return w


def parse_word(text: str) -> WordStream:
    """Parse a full word spec: base word plus optional pipeline.

    :param text: Word spec, e.g. ``tm | clone:2``
    :type text: str
    :return: The described stream
    :rtype: WordStream
    :raises SpecParseError: If any part does not parse
    """
    if not text or not text.strip():
        raise SpecParseError('empty word spec')
    base, _, pipeline = text.partition('|')
    try:
        w = parse_base_word(base)
    except BadInputError as e:
        # parse errors already name the offending text
        if isinstance(e, SpecParseError):
            raise
        raise SpecParseError(f'{base.strip()!r}: {e}') from e
    w = apply_pipeline(w, pipeline)
    logger.debug(f'Parsed word spec {text!r} as {w.descriptor}')
    return w


def parse_rspec(text: str) -> RSpec:
    """Parse an r spec: preset name, ``@path`` file, comma list or ``k*n+j``."""
    text = text.strip()
    if text in ('fib', 'fibonacci', 'tm', 'thue_morse'):
        return RSpec.preset(text)
    if text.startswith('@'):
        return RSpec.from_file(Path(text[1:]))
    if ',' in text:
        try:
            return RSpec.from_values(int(v) for v in text.split(','))
        except ValueError:
            raise SpecParseError(f'bad value list: {text!r}')
    return RSpec.from_formula(text)
