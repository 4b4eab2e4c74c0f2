"""Report builders shared by the command line and the HTTP API.

Every builder returns plain JSON-ready data so that ``cli.py --format json``
and the API responses have the same shape.
"""

import csv
import io
import json
import logging
from typing import Any, Dict, Iterable, List, Optional

from models import Certificate, ReconstructionOutcome
from position import series_table
from reconstruct import RSpec
from spectral import (
    classify_golden, classify_linear_limit, classify_tau_k, pf_data, pisa_closed_form,
    pisa_limits, predicted_limits,
)
from substitution import BinarySubstitution, matrix, pisa_is_pisot, pisa_parameters
from words import WordStream

logger = logging.getLogger(__name__)

POSITION_COLUMNS = ['n', 'p_a', 'p_b', 'r', 'delta_pa', 'delta_pb', 'delta_r']


def word_report(w: WordStream, length: int) -> Dict[str, Any]:
    return w.export(length)


def positions_report(w: WordStream, n_max: int) -> Dict[str, Any]:
    return {'descriptor': w.descriptor, 'rows': series_table(w, n_max)}


def reconstruction_report(spec: RSpec, outcome: ReconstructionOutcome) -> Dict[str, Any]:
    report = {'spec': spec.description}
    report.update(outcome.to_dict())
    return report


def _pair(value: Optional[tuple]) -> Optional[List[int]]:
    return None if value is None else list(value)


def analysis_report(sigma: BinarySubstitution) -> Dict[str, Any]:
    """Matrix, Perron-Frobenius data, predicted limits and classifications.

    Non-primitive substitutions get the matrix part only. Members of the
    Pisa family also get their closed form and the tau-based limits.

    :param sigma: Substitution to analyze
    :type sigma: BinarySubstitution
    :return: JSON-ready report
    :rtype: Dict[str, Any]
    """
    m = matrix(sigma)
    report: Dict[str, Any] = {
        'substitution': str(sigma),
        'rule': sigma.rule,
        'matrix': m.to_dict(),
        'trace': m.trace(),
        'det': m.det(),
        'primitive': m.is_primitive(),
        'golden': _pair(classify_golden(m)),
        'tau_k': {str(k): _pair(classify_tau_k(m, k)) for k in range(1, 4)},
    }
    if m.is_primitive():
        report['pf'] = pf_data(m).to_dict()
        report['limits'] = predicted_limits(m).to_dict()
        report['linear_class'] = classify_linear_limit(m)
    parameters = pisa_parameters(sigma)
    if parameters is not None:
        k, l, mm = parameters
        report['pisa'] = {
            'k': k, 'l': l, 'm': mm,
            'pisot': pisa_is_pisot(k, l, mm),
            'closed_form': pisa_closed_form(k, l, mm).to_dict(),
            'tau_limits': pisa_limits(k, l, mm).to_dict(),
        }
    return report


def certificates_report(certificates: Iterable[Certificate], timings: bool = False) -> Dict[str, Any]:
    rendered = [c.to_dict(timings=timings) for c in certificates]
    return {'passed': all(c['passed'] for c in rendered), 'certificates': rendered}


def positions_csv(rows: List[Dict[str, int]]) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=POSITION_COLUMNS, lineterminator='\n')
    writer.writeheader()
    writer.writerows(rows)
    return buffer.getvalue()


def to_json(data: Any) -> str:
    """Byte-stable JSON: sorted keys, two space indent, trailing newline."""
    return json.dumps(data, sort_keys=True, indent=2) + '\n'


def _flatten(data: Any, prefix: str = '') -> List[tuple]:
    if isinstance(data, dict):
        items = []
        for key in sorted(data):
            items.extend(_flatten(data[key], f'{prefix}.{key}' if prefix else str(key)))
        return items
    if isinstance(data, list) and data and isinstance(data[0], dict):
        items = []
        for i, entry in enumerate(data):
            items.extend(_flatten(entry, f'{prefix}[{i}]'))
        return items
    return [(prefix, data)]


def human_table(rows: List[Dict[str, Any]], columns: Optional[List[str]] = None) -> str:
    """Right-aligned columns with a header line."""
    if not rows:
        return ''
    columns = columns or list(rows[0])
    cells = [[str(row.get(c, '')) for c in columns] for row in rows]
    widths = [max(len(c), *(len(line[i]) for line in cells)) for i, c in enumerate(columns)]
    lines = ['  '.join(c.rjust(wd) for c, wd in zip(columns, widths))]
    lines += ['  '.join(v.rjust(wd) for v, wd in zip(line, widths)) for line in cells]
    return '\n'.join(lines) + '\n'


def human_report(data: Dict[str, Any]) -> str:
    """``key: value`` lines for nested reports; row lists become tables."""
    if isinstance(data.get('rows'), list):
        head = [f"descriptor: {data['descriptor']}"] if 'descriptor' in data else []
        return '\n'.join(head) + ('\n' if head else '') + human_table(data['rows'], POSITION_COLUMNS)
    if isinstance(data.get('certificates'), list):
        rows = []
        for c in data['certificates']:
            row = {'theorem': c['theorem_id'], 'result': 'pass' if c['passed'] else 'FAIL', 'scale': c['scale']}
            if 'elapsed_seconds' in c:
                row['seconds'] = c['elapsed_seconds']
            row['threshold'] = '' if c['threshold'] is None else c['threshold']
            rows.append(row)
        return human_table(rows)
    return ''.join(f'{key}: {value}\n' for key, value in _flatten(data))
