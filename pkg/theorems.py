"""Registry of machine-checked identities about relative position functions.

Each check is a module level function ``check(scale, rng) -> (passed, details)``
registered under a stable id. ``scale`` is the number of terms (or the word
length for the brute-force searches); ``rng`` is a ``random.Random`` seeded
from the configured seed and the theorem id, so every run is reproducible.
``run_all`` can fan the checks out over worker processes.
"""

import logging
import multiprocessing
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from config import get_config
from exceptions import NoFixedPointError, ParameterError, RelposError
from models import Certificate
from operators import delete, delete_first, delete_pow, locate_threshold, prefix_op
from position import (
    RatioKind, counting, empirical_ratio, p, position_series, relative_series, runs, series_table,
    smallest_period,
)
from reconstruct import RSpec, linear_realization, reconstruct, relative_of, validate
from spectral import (
    classify_golden, classify_linear_limit, classify_tau_jm, classify_tau_k, eigen_check,
    freq_from_r_limit, freq_transfer, freq_transfer_inverse, golden_ratio, pf_data,
    pisa_closed_form, pisa_limits, pq_from_r, predicted_limits, tau, tau_k,
)
from substitution import (
    BinarySubstitution, SubstitutionMatrix, apply, clone, fibonacci, fibonacci_switch,
    fixed_point, golden_family, iccanobif, matrix, period_doubling, pisa, power, supertile,
    thue_morse,
)
from words import (
    WordStream, apply_coding, dimer, get_index_budget, is_balanced, periodic, reflect,
    set_index_budget, staircase_word,
)

logger = logging.getLogger(__name__)

CheckResult = Tuple[bool, Dict[str, Any]]
CheckFunction = Callable[[int, random.Random], CheckResult]

RANDOM_INSTANCES = 100
ROUNDTRIP_WORDS = 200
MONOTONE_SEQUENCES = 200
CLASSIFIED_MATRICES = 500
RATIO_TOLERANCE = 0.01


@dataclass(frozen=True)
class Theorem:
    """A registered check."""

    theorem_id: str
    summary: str
    default_scale: int
    check: CheckFunction

    def to_dict(self) -> Dict[str, Any]:
        return {'id': self.theorem_id, 'summary': self.summary, 'default_scale': self.default_scale}


_REGISTRY: Dict[str, Theorem] = {}


def register(theorem_id: str, summary: str, default_scale: int) -> Callable[[CheckFunction], CheckFunction]:
    """Decorator adding a check to the registry.

    :param theorem_id: Stable identifier used by ``verify``
    :type theorem_id: str
    :param summary: One line statement of the checked identity
    :type summary: str
    :param default_scale: Scale used when none is given
    :type default_scale: int
    :return: Decorator returning the function unchanged
    :rtype: Callable
    """
    def decorator(func: CheckFunction) -> CheckFunction:
        if theorem_id in _REGISTRY:
            raise ValueError(f'theorem id registered twice: {theorem_id}')
        _REGISTRY[theorem_id] = Theorem(theorem_id, summary, default_scale, func)
        return func
    return decorator


def list_theorems() -> List[Theorem]:
    """All registered checks in registration order."""
    return list(_REGISTRY.values())


def get_theorem(theorem_id: str) -> Theorem:
    try:
        return _REGISTRY[theorem_id]
    except KeyError:
        raise ParameterError(f'unknown theorem id: {theorem_id!r}')


def run_theorem(theorem_id: str, scale: Optional[int] = None, seed: Optional[int] = None) -> Certificate:
    """Run one check and wrap the outcome in a certificate.

    :param theorem_id: Registered id
    :type theorem_id: str
    :param scale: Number of terms; the theorem's default when None
    :type scale: Optional[int]
    :param seed: Random seed; the configured ``RANDOM_SEED`` when None
    :type seed: Optional[int]
    :return: Certificate with timing and details
    :rtype: Certificate
    :raises ParameterError: For an unknown id or a scale below 1
    """
    theorem = get_theorem(theorem_id)
    scale = theorem.default_scale if scale is None else scale
    if scale < 1:
        raise ParameterError(f'scale must be at least 1, got {scale}')
    seed = get_config().RANDOM_SEED if seed is None else seed
    rng = random.Random(f'{seed}:{theorem_id}')
    logger.info(f'Verifying {theorem_id} at scale {scale}')
    started = time.perf_counter()
    passed, details = theorem.check(scale, rng)
    elapsed = time.perf_counter() - started
    threshold = details.pop('threshold', None)
    if passed:
        logger.info(f'{theorem_id} passed in {elapsed:.2f}s')
    else:
        logger.warning(f'{theorem_id} FAILED in {elapsed:.2f}s: {details}')
    return Certificate(theorem_id=theorem_id, passed=bool(passed), scale=scale,
                       elapsed_seconds=elapsed, threshold=threshold, details=details)


def _failed(theorem_id: str, scale: Optional[int], reason: str) -> Certificate:
    return Certificate(theorem_id=theorem_id, passed=False,
                       scale=scale if scale is not None else get_theorem(theorem_id).default_scale,
                       details={'error': reason})


def _run_guarded(theorem_id: str, scale: Optional[int], seed: Optional[int],
                 budget: Optional[int] = None) -> Certificate:
    """Worker entry point: errors become failed certificates."""
    if budget is not None:
        set_index_budget(budget)
    try:
        return run_theorem(theorem_id, scale, seed)
    except RelposError as e:
        logger.warning(f'{theorem_id} raised {type(e).__name__}: {e}')
        return _failed(theorem_id, scale, f'{type(e).__name__}: {e}')
    except Exception as e:
        logger.error(f'Unexpected error while verifying {theorem_id}: {e}', exc_info=True)
        return _failed(theorem_id, scale, f'unexpected {type(e).__name__}: {e}')


def run_all(scale: Optional[int] = None, workers: Optional[int] = None,
            timeout: Optional[float] = None, seed: Optional[int] = None,
            theorem_ids: Optional[Iterable[str]] = None) -> List[Certificate]:
    """Run several checks, optionally in parallel worker processes.

    With one worker and no timeout everything runs in this process. Otherwise
    checks are queued on a process pool; a check still running ``timeout``
    seconds after its slot in the queue opened is reported as failed and the
    pool is terminated once all results are in.

    :param scale: Scale applied to every check; per-theorem defaults when None
    :type scale: Optional[int]
    :param workers: Worker processes; the configured ``VERIFY_WORKERS`` when None
    :type workers: Optional[int]
    :param timeout: Seconds allowed per check; no limit when None
    :type timeout: Optional[float]
    :param seed: Random seed passed to every check
    :type seed: Optional[int]
    :param theorem_ids: Subset to run; all registered checks when None
    :type theorem_ids: Optional[Iterable[str]]
    :return: Certificates in the order of ``theorem_ids``
    :rtype: List[Certificate]
    """
    ids = [t.theorem_id for t in list_theorems()] if theorem_ids is None else list(theorem_ids)
    for theorem_id in ids:
        get_theorem(theorem_id)
    workers = max(1, workers or get_config().VERIFY_WORKERS)
    timeout = timeout if timeout is not None else get_config().VERIFY_TIMEOUT
    if workers == 1 and timeout is None:
        return [_run_guarded(theorem_id, scale, seed) for theorem_id in ids]

    budget = get_index_budget()
    certificates: List[Certificate] = []
    pool = multiprocessing.Pool(processes=min(workers, len(ids)) or 1)
    try:
        pending = [pool.apply_async(_run_guarded, (theorem_id, scale, seed, budget)) for theorem_id in ids]
        started = time.monotonic()
        for index, (theorem_id, result) in enumerate(zip(ids, pending)):
            wait = None
            if timeout is not None:
                deadline = started + timeout * (index // workers + 1)
                wait = max(0.0, deadline - time.monotonic())
            try:
                certificates.append(result.get(wait))
            except multiprocessing.TimeoutError:
                logger.warning(f'{theorem_id} timed out after {timeout}s')
                certificates.append(_failed(theorem_id, scale, f'timed out after {timeout}s'))
    finally:
        pool.terminate()
        pool.join()
    return certificates


# Word factories

def fibonacci_word() -> WordStream:
    return fixed_point(fibonacci(), 'a')


def thue_morse_word() -> WordStream:
    return fixed_point(thue_morse(), 'a')


def _random_text(rng: random.Random, length: int) -> str:
    return ''.join(rng.choice('ab') for _ in range(length))


def random_primitive_substitution(rng: random.Random, max_length: int = 4) -> BinarySubstitution:
    """Random primitive substitution with ``sigma(a)`` starting with ``a``."""
    while True:
        image_a = 'a' + _random_text(rng, rng.randint(1, max_length - 1))
        image_b = _random_text(rng, rng.randint(1, max_length))
        sigma = BinarySubstitution(image_a, image_b)
        if matrix(sigma).is_primitive():
            return sigma


def random_period(rng: random.Random, max_length: int = 6, first: Optional[str] = None) -> str:
    """Random period containing both letters, optionally with a fixed first letter."""
    while True:
        u = _random_text(rng, rng.randint(2, max_length))
        if first is not None:
            u = first + u[1:]
        if 'a' in u and 'b' in u:
            return u


def random_word(rng: random.Random, starts_with_a: bool = False) -> WordStream:
    """A random word with infinitely many of each letter.

    Half are fixed points of random primitive substitutions, half periodic;
    unless ``starts_with_a`` is set, half of them are reflected.
    """
    if rng.random() < 0.5:
        w = fixed_point(random_primitive_substitution(rng), 'a')
    else:
        w = periodic(random_period(rng, first='a' if starts_with_a else None))
        return w
    if not starts_with_a and rng.random() < 0.5:
        w = reflect(w)
    return w


def random_balanced(rng: random.Random, k: int) -> str:
    letters = list('a' * k + 'b' * k)
    rng.shuffle(letters)
    return ''.join(letters)


def _first_mismatch(expected: Iterable[Any], actual: Iterable[Any]) -> Optional[int]:
    """1-based index of the first disagreement, or None."""
    for n, (x, y) in enumerate(zip(expected, actual), start=1):
        if x != y:
            return n
    return None


def _differences(values: Sequence[int]) -> List[int]:
    return [b - a for a, b in zip(values, values[1:])]


# Position functions of named words

@register('thm-fib', 'r(n) = n for the Fibonacci word', 100_000)
def check_fibonacci_r(scale: int, rng: random.Random) -> CheckResult:
    values = relative_series(fibonacci_word()).values(scale)
    bad = _first_mismatch(range(1, scale + 1), values)
    return bad is None, {'n_max': scale, 'first_mismatch': bad}


@register('fib-factor-laws',
          'Fibonacci: delta p_a is the (2,1) coding and delta p_b the (3,2) coding of the word', 100_000)
def check_fibonacci_factors(scale: int, rng: random.Random) -> CheckResult:
    f = fibonacci_word()
    delta_pa = _differences(position_series(f, 'a').values(scale + 1))
    delta_pb = _differences(position_series(f, 'b').values(scale + 1))
    bad_a = _first_mismatch(apply_coding(f, 2, 1).take(scale), delta_pa)
    bad_b = _first_mismatch(apply_coding(f, 3, 2).take(scale), delta_pb)
    return bad_a is None and bad_b is None, {
        'n_max': scale, 'first_mismatch_pa': bad_a, 'first_mismatch_pb': bad_b,
    }


@register('tm-fixed-point', 'the +1/-1 coding of Thue-Morse equals its own r, and r(n) = 1 iff X_(n-1) = ab',
          100_000)
def check_thue_morse_r(scale: int, rng: random.Random) -> CheckResult:
    tm = thue_morse_word()
    values = relative_series(tm).values(scale)
    bad = _first_mismatch(apply_coding(tm, 1, -1).take(scale), values)
    dimer_bad = None
    for n, value in enumerate(values, start=1):
        if (value == 1) != (dimer(tm, n - 1) == ('a', 'b')):
            dimer_bad = n
            break
    return bad is None and dimer_bad is None, {
        'n_max': scale, 'first_mismatch': bad, 'first_dimer_mismatch': dimer_bad,
    }


@register('tm-clone-fixed-point', 'the (k,-k) coding of clone(k) applied to Thue-Morse equals its r, k = 2, 3',
          10_000)
def check_cloned_thue_morse(scale: int, rng: random.Random) -> CheckResult:
    mismatches = {}
    for k in (2, 3):
        w = apply(clone(k), thue_morse_word())
        mismatches[k] = _first_mismatch(apply_coding(w, k, -k).take(scale),
                                        relative_series(w).values(scale))
    return all(v is None for v in mismatches.values()), {'n_max': scale, 'first_mismatch': mismatches}


# Reconstruction

@register('reconstruction-roundtrip', 'reconstructing from r reproduces random words on the determined prefix',
          1_000)
def check_roundtrip(scale: int, rng: random.Random) -> CheckResult:
    failures = []
    for _ in range(ROUNDTRIP_WORDS):
        w = random_word(rng)
        outcome = reconstruct(relative_of(w), scale)
        length = outcome.determined_length
        if not outcome.ok or outcome.word.text(length) != w.text(length):
            failures.append(w.descriptor)
    return not failures, {'pairs': scale, 'words': ROUNDTRIP_WORDS, 'failures': failures[:5]}


@register('monotone-existence',
          'every increasing positive r (and every decreasing negative r) is a relative position function',
          1_000)
def check_monotone_existence(scale: int, rng: random.Random) -> CheckResult:
    failures = []
    for i in range(MONOTONE_SEQUENCES):
        values = [rng.randint(1, 5)]
        while len(values) < scale:
            values.append(values[-1] + rng.randint(1, 3))
        spec = RSpec.from_values(values)
        if i % 2:
            spec = spec.negated()
        violation = validate(spec, scale)
        if violation is not None:
            failures.append(f'{spec.description}: {violation.detail}')
            continue
        outcome = reconstruct(spec, scale)
        text = outcome.word.text(outcome.determined_length)
        leading = 'b' if i % 2 else 'a'
        if not text.startswith(leading):
            failures.append(f'{spec.description}: starts with {text[:1]}')
        k = values[0]
        if k > 1 and len(text) >= k:
            expected = (leading * (k - 1)) + ('a' if i % 2 else 'b')
            if not text.startswith(expected):
                failures.append(f'{spec.description}: does not start with {expected}')
    return not failures, {'pairs': scale, 'sequences': MONOTONE_SEQUENCES, 'failures': failures[:5]}


# Periodic words

TABLE_ONE: Dict[str, Tuple[Tuple[int, ...], Tuple[int, ...], Tuple[int, ...]]] = {
    'ab': ((2,), (2,), (0,)),
    'aab': ((1, 2), (3,), (2, 1)),
    'abba': ((3, 1), (1, 3), (-2, 2)),
    'aabb': ((1, 3), (1, 3), (0,)),
}


def _cycle(pattern: Sequence[int], length: int) -> List[int]:
    return [pattern[i % len(pattern)] for i in range(length)]


@register('table-1', 'difference sequences of (ab), (aab), (abba), (aabb) repeated, and their periods', 20)
def check_periodic_table(scale: int, rng: random.Random) -> CheckResult:
    mismatches = {}
    for u, (pa_pattern, pb_pattern, r_pattern) in TABLE_ONE.items():
        rows = series_table(periodic(u), scale)
        columns = {
            'delta_pa': ([row['delta_pa'] for row in rows], pa_pattern),
            'delta_pb': ([row['delta_pb'] for row in rows], pb_pattern),
            'delta_r': ([row['delta_r'] for row in rows], r_pattern),
        }
        for column, (actual, pattern) in columns.items():
            bad = _first_mismatch(_cycle(pattern, scale), actual)
            if bad is not None:
                mismatches[f'{u}:{column}'] = bad
        k, j = u.count('a'), u.count('b')
        periods = {
            'delta_pa': (smallest_period(columns['delta_pa'][0]) or scale, k),
            'delta_pb': (smallest_period(columns['delta_pb'][0]) or scale, j),
            'delta_r': (smallest_period(columns['delta_r'][0]) or scale, k * j // gcd(k, j)),
        }
        for column, (period, bound) in periods.items():
            if bound % period:
                mismatches[f'{u}:{column}:period'] = period
    return not mismatches, {'terms': scale, 'mismatches': mismatches}


@register('pisa-closed-form', 'p_b(n) = m p_a(n) + (k+l+1-m) n + (m-l-1) on the grid k<=3, l<=2, m<=3',
          10_000)
def check_pisa_closed_form(scale: int, rng: random.Random) -> CheckResult:
    failures = {}
    for k in range(1, 4):
        for l in range(0, 3):
            for m in range(1, 4):
                form = pisa_closed_form(k, l, m)
                w = fixed_point(pisa(k, l, m), 'a')
                pa = position_series(w, 'a').values(scale)
                pb = position_series(w, 'b').values(scale)
                expected = [form.pb_from_pa(a, n) for n, a in enumerate(pa, start=1)]
                bad = _first_mismatch(expected, pb)
                if bad is not None:
                    failures[f'{k},{l},{m}'] = bad
    return not failures, {'n_max': scale, 'first_mismatch': failures}


# Operators

@register('deletion-positions', 'D_x shifts the position functions, and D_a, D_b commute', 1_000)
def check_deletion_positions(scale: int, rng: random.Random) -> CheckResult:
    failures = []
    for _ in range(RANDOM_INSTANCES):
        w = random_word(rng)
        x = rng.choice('ab')
        y = 'b' if x == 'a' else 'a'
        d = delete_first(w, x)
        q = p(w, x, 1)
        px_w = position_series(w, x).values(scale + 1)
        py_w = position_series(w, y).values(scale)
        expected_x = [v - 1 for v in px_w[1:]]
        expected_y = [v - 1 if v > q else v for v in py_w]
        if (position_series(d, x).values(scale) != expected_x
                or position_series(d, y).values(scale) != expected_y):
            failures.append(f'{w.descriptor} | delete_{x}')
        ab = delete_first(delete_first(w, 'a'), 'b').text(scale)
        ba = delete_first(delete_first(w, 'b'), 'a').text(scale)
        if ab != ba:
            failures.append(f'{w.descriptor}: deletions do not commute')
    return not failures, {'n_max': scale, 'instances': RANDOM_INSTANCES, 'failures': failures[:5]}


@register('deletion-shift',
          'r of D^k(w) is r(n + k) eventually, exactly for k = 1 on words starting ab or ba', 1_000)
def check_deletion_shift(scale: int, rng: random.Random) -> CheckResult:
    failures = []
    worst = 1
    for _ in range(RANDOM_INSTANCES):
        w = random_word(rng)
        k = rng.randint(1, 3)
        shifted = relative_series(delete_pow(w, k))
        original = relative_series(w)
        report = locate_threshold(shifted, lambda n: original(n + k), scale)
        if report.threshold is None:
            failures.append(f'{w.descriptor}: D^{k} never settles')
        else:
            worst = max(worst, report.threshold)
        head = rng.choice(['ab', 'ba'])
        v = prefix_op(head, w)
        exact = locate_threshold(relative_series(delete(v)), lambda n: relative_series(v)(n + 1), scale)
        if exact.threshold != 1:
            failures.append(f'{v.descriptor}: D is not an exact shift')
        length = min(scale, 200)
        for u in ('ab', 'ba'):
            if delete(prefix_op(u, w)).text(length) != w.text(length):
                failures.append(f'{w.descriptor}: D o Pre_{u} is not the identity')
        restored = prefix_op('ab', delete(w)).text(length) == w.text(length)
        if restored != w.text(2).startswith('ab'):
            failures.append(f'{w.descriptor}: Pre_ab o D mismatch')
        if delete(reflect(w)).text(length) != reflect(delete(w)).text(length):
            failures.append(f'{w.descriptor}: D does not commute with reflection')
    return not failures, {
        'n_max': scale, 'instances': RANDOM_INSTANCES, 'threshold': worst, 'failures': failures[:5],
    }


@register('balanced-prefix-shift',
          'a balanced prefix of length 2k shifts r by k; D^k o Pre_u = Id iff u is balanced', 1_000)
def check_balanced_prefix(scale: int, rng: random.Random) -> CheckResult:
    failures = []
    length = min(scale, 200)
    for _ in range(RANDOM_INSTANCES):
        w = random_word(rng)
        k = rng.randint(1, 10)
        u = random_balanced(rng, k)
        v = prefix_op(u, w)
        r_v, r_w = relative_series(v), relative_series(w)
        if [r_v(n + k) for n in range(1, scale + 1)] != r_w.values(scale):
            failures.append(f'{v.descriptor}: r is not shifted by {k}')
        candidate = _random_text(rng, 2 * k)
        restored = delete_pow(prefix_op(candidate, w), k).text(length) == w.text(length)
        if restored != is_balanced(candidate):
            failures.append(f'{w.descriptor}: D^{k} o Pre_{candidate} disagrees with balance')
        r_a, r_b = relative_series(prefix_op('a', w)), relative_series(prefix_op('b', w))
        if any(r_a(n) <= r_w(n) or r_b(n) >= r_w(n) for n in range(1, scale + 1)):
            failures.append(f'{w.descriptor}: Pre_a / Pre_b do not move r monotonically')
        pa_new = position_series(prefix_op('a', w), 'a').values(scale)
        pa_old = position_series(w, 'a').values(scale)
        if pa_new[0] != 0 or any(pa_new[n] != pa_old[n - 1] + 1 for n in range(1, scale)):
            failures.append(f'{w.descriptor}: Pre_a does not shift p_a')
    return not failures, {'n_max': scale, 'instances': RANDOM_INSTANCES, 'failures': failures[:5]}


@register('cloning', 'r of clone(k)(w) at mk + j is k r(m + 1), and cloning keeps frequencies', 1_000)
def check_cloning(scale: int, rng: random.Random) -> CheckResult:
    failures = []
    for _ in range(RANDOM_INSTANCES):
        w = random_word(rng)
        k = rng.randint(2, 3)
        cloned = relative_series(apply(clone(k), w))
        original = relative_series(w).values(scale)
        if any(cloned(m * k + j) != k * original[m] for m in range(scale) for j in range(1, k + 1)):
            failures.append(f'{w.descriptor} | clone:{k}')
        fa = Fraction(rng.randint(0, 20), 20)
        if freq_transfer(clone(k), fa, 1 - fa) != (fa, 1 - fa):
            failures.append(f'clone:{k} changes the frequencies ({fa}, {1 - fa})')
    return not failures, {'n_max': scale, 'instances': RANDOM_INSTANCES, 'failures': failures[:5]}


# Deleted, prefixed and switched Fibonacci words

@register('fib-plus-one', 'r(n) = n + 1 for D(f)', 10_000)
def check_fibonacci_plus_one(scale: int, rng: random.Random) -> CheckResult:
    values = relative_series(delete(fibonacci_word())).values(scale)
    bad = _first_mismatch(range(2, scale + 2), values)
    return bad is None, {'n_max': scale, 'first_mismatch': bad}


@register('fib-plus-k', 'r(n) = n + k for D^k(f), k <= 5, beyond a stable threshold', 20_000)
def check_fibonacci_plus_k(scale: int, rng: random.Random) -> CheckResult:
    reports = {}
    for k in range(1, 6):
        series = relative_series(delete_pow(fibonacci_word(), k))
        reports[k] = locate_threshold(series, lambda n, k=k: n + k, scale)
    worst = max((r.threshold or scale) for r in reports.values())
    passed = all(r.threshold is not None and r.stable for r in reports.values())
    return passed, {'horizon': scale, 'threshold': worst,
                    'thresholds': {k: r.threshold for k, r in reports.items()}}


@register('iccanobif-prefix',
          'the square of a->ba, b->a has fixed points ab.f and ba.f; balanced prefixes give r(n) = n - j',
          10_000)
def check_iccanobif_prefix(scale: int, rng: random.Random) -> CheckResult:
    f = fibonacci_word()
    square = power(iccanobif(), 2)
    failures = []
    try:
        fixed_point(iccanobif(), 'a')
        failures.append('a->ba, b->a unexpectedly has a fixed point from a')
    except NoFixedPointError:
        pass
    for head, sign in (('ab', 1), ('ba', -1)):
        prefixed = prefix_op(head, f)
        if fixed_point(square, head[0]).text(scale) != prefixed.text(scale):
            failures.append(f'fixed point from {head[0]} is not Pre_{head}(f)')
        expected = [sign] + list(range(1, scale))
        if relative_series(prefixed).values(scale) != expected:
            failures.append(f'r of Pre_{head}(f) is not ({sign}, n - 1)')
    for _ in range(10):
        j = rng.randint(1, 5)
        u = random_balanced(rng, j)
        r_u = relative_series(prefix_op(u, f))
        if any(r_u(n) != n - j for n in range(j + 1, scale + 1)):
            failures.append(f'Pre_{u}(f) does not have r(n) = n - {j}')
    return not failures, {'n_max': scale, 'failures': failures[:5]}


@register('iccanobif-conjugation',
          'ab.F^(2n)(a) = G^(2n)(a).ba and ba.F^(2n-1)(a) = G^(2n-1)(a).ab for G: a->ba, b->a', 8)
def check_iccanobif_conjugation(scale: int, rng: random.Random) -> CheckResult:
    fib, icc = fibonacci(), iccanobif()
    failures = []
    for n in range(1, scale + 1):
        if 'ab' + supertile(fib, 2 * n, 'a') != supertile(icc, 2 * n, 'a') + 'ba':
            failures.append(f'even level {2 * n}')
        if 'ba' + supertile(fib, 2 * n - 1, 'a') != supertile(icc, 2 * n - 1, 'a') + 'ab':
            failures.append(f'odd level {2 * n - 1}')
    return not failures, {'n_max': scale, 'failures': failures}


@register('fibonacci-switch', 'retiling the level-2 supertiles of f gives D(f)', 10_000)
def check_fibonacci_switch(scale: int, rng: random.Random) -> CheckResult:
    f = fibonacci_word()
    switched = fibonacci_switch(f).text(scale)
    deleted = delete(f).text(scale)
    bad = _first_mismatch(deleted, switched)
    return bad is None, {'letters': scale, 'first_mismatch': bad}


# Spectral predictions

def random_primitive_matrix(rng: random.Random, high: int = 9) -> SubstitutionMatrix:
    while True:
        m = SubstitutionMatrix(*(rng.randint(0, high) for _ in range(4)))
        if m.is_primitive():
            return m


@register('spectral-exactness',
          'M[u 1]^T = lambda[u 1]^T exactly; predicted slopes match r(n)/n on the Pisa grid', 100_000)
def check_spectral_exactness(scale: int, rng: random.Random) -> CheckResult:
    failures = []
    named = {'fibonacci': fibonacci(), 'thue_morse': thue_morse(), 'period_doubling': period_doubling()}
    matrices = [matrix(sigma) for sigma in named.values()]
    matrices += [random_primitive_matrix(rng) for _ in range(20)]
    for m in matrices:
        data = pf_data(m)
        if not eigen_check(m, data.u) or m.m21 * data.u + m.m22 != data.lambda_pf:
            failures.append(f'{m}: [u 1] is not an eigenvector')
        if data.lambda_pf * data.lambda_pf != m.trace() * data.lambda_pf - m.det():
            failures.append(f'{m}: lambda is not a root of the characteristic polynomial')
    if predicted_limits(fibonacci()).lim_r_over_n != 1:
        failures.append('Fibonacci slope is not 1')
    if predicted_limits(thue_morse()).lim_r_over_n != 0:
        failures.append('Thue-Morse slope is not 0')
    for k in range(1, 6):
        t = tau_k(k)
        if t * t != k * t + 1:
            failures.append(f'tau_{k} is not a root of X^2 - {k}X - 1')
    consistency = list(named.values()) + [pisa(rng.randint(1, 4), rng.randint(0, 3), rng.randint(1, 4))
                                          for _ in range(20)]
    for sigma in consistency:
        limits = predicted_limits(sigma)
        if freq_from_r_limit(limits.lim_r_over_n) != limits.freq_b:
            failures.append(f'{sigma}: frequency from the slope of r disagrees')
    worst = 0.0
    for k in range(1, 4):
        for l in range(0, 3):
            for m in range(1, 4):
                w = fixed_point(pisa(k, l, m), 'a')
                predicted = float(pisa_limits(k, l, m).lim_r_over_n)
                error = abs(float(empirical_ratio(w, RatioKind.R_OVER_N, scale)) - predicted)
                worst = max(worst, error)
                if error > RATIO_TOLERANCE:
                    failures.append(f'pisa:{k},{l},{m}: r(n)/n is {error:.4f} away from the limit')
    return not failures, {'n': scale, 'worst_ratio_error': round(worst, 6), 'failures': failures[:5]}


@register('classification', 'matrix-shape classifications agree with exact eigenvector checks', 500)
def check_classification(scale: int, rng: random.Random) -> CheckResult:
    failures = []
    golden = golden_ratio()
    for _ in range(scale):
        m = SubstitutionMatrix(*(rng.randint(0, 9) for _ in range(4)))
        if (classify_golden(m) is not None) != eigen_check(m, golden):
            failures.append(f'{m}: golden')
        for k in range(1, 4):
            if (classify_tau_k(m, k) is not None) != eigen_check(m, tau_k(k)):
                failures.append(f'{m}: tau_{k}')
        j = rng.randint(1, 6)
        mm = j + 1 if rng.random() < 0.5 else rng.randint(1, 6)
        if classify_tau_jm(m, j, mm).matched != eigen_check(m, tau(j, mm)):
            failures.append(f'{m}: tau({j}, {mm})')
        if m.is_primitive():
            slope = predicted_limits(m).lim_r_over_n
            integral = slope.is_rational and slope.x.denominator == 1
            expected = int(slope.x) if integral else None
            if classify_linear_limit(m) != expected:
                failures.append(f'{m}: linear class')
    for _ in range(20):
        first = matrix(golden_family(rng.randint(1, 5), rng.randint(0, 5)))
        second = matrix(golden_family(rng.randint(1, 5), rng.randint(0, 5)))
        if classify_golden(first @ second) is None:
            failures.append(f'{first} @ {second} leaves the golden family')
    return not failures, {'matrices': scale, 'failures': failures[:5]}


@register('frequency-transfer',
          'predicted letter frequencies of sigma(w) match counts; the inverse transfer roundtrips', 100_000)
def check_frequency_transfer(scale: int, rng: random.Random) -> CheckResult:
    failures = []
    worst = 0.0
    sources = [fibonacci(), thue_morse(), period_doubling()]
    for i in range(20):
        sigma = BinarySubstitution(_random_text(rng, rng.randint(1, 4)), _random_text(rng, rng.randint(1, 4)))
        if i % 2:
            source = sources[rng.randrange(len(sources))]
            w = fixed_point(source, 'a')
            limits = predicted_limits(source)
            fa, fb = limits.freq_a, limits.freq_b
        else:
            u = random_period(rng)
            w = periodic(u)
            fa, fb = Fraction(u.count('a'), len(u)), Fraction(u.count('b'), len(u))
        predicted_a, _ = freq_transfer(sigma, fa, fb)
        empirical = counting(apply(sigma, w), 'a', scale) / scale
        error = abs(empirical - float(predicted_a))
        worst = max(worst, error)
        if error > RATIO_TOLERANCE:
            failures.append(f'{sigma} on {w.descriptor}: frequency off by {error:.4f}')
        if matrix(sigma).det() != 0:
            if freq_transfer_inverse(sigma, *freq_transfer(sigma, fa, fb)) != (fa, fb):
                failures.append(f'{sigma}: inverse transfer does not roundtrip')
    for _ in range(20):
        d = Fraction(rng.randint(-50, 50), rng.randint(1, 10))
        p_limit, q_limit = pq_from_r(d)
        if 1 / p_limit + 1 / q_limit != 1 or p_limit - q_limit != d:
            failures.append(f'p and q for r = {d}')
    return not failures, {'horizon': scale, 'worst_frequency_error': round(worst, 6), 'failures': failures[:5]}


# Eventually linear r

@register('linear-realization',
          'every k*n + j with (k, j) != (0, 0) is eventually realized; exact families are exact', 2_000)
def check_linear_realization(scale: int, rng: random.Random) -> CheckResult:
    failures = []
    worst = 1
    for k in range(-3, 4):
        for j in range(-3, 4):
            if k == 0 and j == 0:
                continue
            series = relative_series(linear_realization(k, j))
            report = locate_threshold(series, lambda n, k=k, j=j: k * n + j, scale)
            if report.threshold is None or not report.stable:
                failures.append(f'{k}*n{j:+d}: no stable threshold')
            else:
                worst = max(worst, report.threshold)
    for k in range(1, 5):
        for s in range(k):
            values = relative_series(fixed_point(pisa(k - s, s, 1), 'a')).values(scale)
            if _first_mismatch([k * n - s for n in range(1, scale + 1)], values) is not None:
                failures.append(f'pisa:{k - s},{s},1 is not exactly {k}*n-{s}')
        deleted = relative_series(delete(fixed_point(pisa(1, k - 1, 1), 'a'))).values(scale)
        if _first_mismatch([k * n + 1 for n in range(1, scale + 1)], deleted) is not None:
            failures.append(f'D(pisa:1,{k - 1},1) is not exactly {k}*n+1')
    return not failures, {'horizon': scale, 'threshold': worst, 'failures': failures[:5]}


@register('run-bounds',
          'with runs at most c: (1-c)n+1 <= r(n) <= cn, p_a(n) <= (c+1)(n-1), p_b(n) <= (c+1)n-1', 1_000)
def check_run_bounds(scale: int, rng: random.Random) -> CheckResult:
    failures = []
    for _ in range(RANDOM_INSTANCES):
        w = random_word(rng, starts_with_a=True)
        pa = position_series(w, 'a').values(scale)
        pb = position_series(w, 'b').values(scale)
        horizon = max(pa[-1], pb[-1]) + 1
        c = runs(w, horizon).c
        for n, (a, b) in enumerate(zip(pa, pb), start=1):
            if not ((1 - c) * n + 1 <= b - a <= c * n and a <= (c + 1) * (n - 1) and b <= (c + 1) * n - 1):
                failures.append(f'{w.descriptor}: bound fails at n={n} with c={c}')
                break
        if scale > 1:
            longest_b = runs(w, pa[-1] + 1).longest_b_run
            if longest_b != max(_differences(pa)) - 1:
                failures.append(f'{w.descriptor}: longest b run is not max delta p_a - 1')
        if 'bb' not in w.text(horizon):
            r_values = [b - a for a, b in zip(pa, pb)]
            if any(d < 0 for d in _differences(r_values)):
                failures.append(f'{w.descriptor}: r decreases although bb never occurs')
    staircase = relative_series(staircase_word()).values(min(scale, 200))
    if any(d < 0 for d in _differences(staircase)) or 'bb' not in staircase_word().text(10):
        failures.append('staircase word is not a witness')
    return not failures, {'n_max': scale, 'instances': RANDOM_INSTANCES, 'failures': failures[:5]}


# Brute-force uniqueness

def _search(length: int, consistent: Callable[[str], bool], start: str = 'a') -> List[str]:
    """All words of ``length`` extending ``start`` whose every prefix is ``consistent``."""
    found = []
    stack = [start] if consistent(start) else []
    while stack:
        text = stack.pop()
        if len(text) == length:
            found.append(text)
            continue
        for letter in 'ba':
            candidate = text + letter
            if consistent(candidate):
                stack.append(candidate)
    return sorted(found)


def codings_consistent(text: str) -> bool:
    """Could both difference sequences of a word with this prefix be codings of it?

    ``delta p_x(i)`` must equal ``code_x(letter i - 1)`` for one fixed
    ``code_x``; a gap still open at the end of the prefix is only a lower bound.
    """
    for letter in 'ab':
        positions = [i for i, c in enumerate(text) if c == letter]
        code: Dict[str, int] = {}
        for i in range(1, len(positions)):
            gap = positions[i] - positions[i - 1]
            if code.setdefault(text[i - 1], gap) != gap:
                return False
        if positions:
            source = text[len(positions) - 1]
            if source in code and code[source] < len(text) - positions[-1]:
                return False
    return True


def self_r_consistent(text: str) -> bool:
    """Could the +1/-1 coding of a word with this prefix be its own r?"""
    length = len(text)
    pa = [i for i, c in enumerate(text) if c == 'a']
    pb = [i for i, c in enumerate(text) if c == 'b']
    for n in range(1, max(len(pa), len(pb)) + 1):
        coded = 1 if text[n - 1] == 'a' else -1
        if n <= len(pa) and n <= len(pb):
            if pb[n - 1] - pa[n - 1] != coded:
                return False
        elif n <= len(pa):
            if coded < length - pa[n - 1]:
                return False
        elif coded > pb[n - 1] - length:
            return False
    return True


@register('fib-uni', 'among words starting with a, only f and (ab) repeated have both difference '
                     'sequences as codings', 30)
def check_fibonacci_uniqueness(scale: int, rng: random.Random) -> CheckResult:
    survivors = [w for w in _search(scale, codings_consistent)
                 if w.count('a') >= 2 and w.count('b') >= 2]
    expected = sorted({fibonacci_word().text(scale), periodic('ab').text(scale)})
    return survivors == expected, {'length': scale, 'survivors': survivors}


@register('tm-uni', 'among +1/-1 words starting with +1, only Thue-Morse equals its own r', 20)
def check_thue_morse_uniqueness(scale: int, rng: random.Random) -> CheckResult:
    survivors = _search(scale, self_r_consistent)
    expected = [thue_morse_word().text(scale)]
    return survivors == expected, {'length': scale, 'survivors': survivors}
