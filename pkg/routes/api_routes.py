"""API routes exposing the word toolkit over HTTP.

Responses have the same JSON shape as ``cli.py --format json``. Library
errors are translated through the ``http_status`` each exception carries.
"""

import logging
from typing import Any, Dict, Optional

from flask import Blueprint, Response, jsonify, request

from exceptions import ParameterError, RelposError
from reconstruct import RSpec, reconstruct
from theorems import list_theorems, run_theorem
from utils.parsing import parse_rspec, parse_substitution, parse_word
from utils.reports import (
    analysis_report, positions_csv, positions_report, reconstruction_report, word_report,
)

logger = logging.getLogger(__name__)

api_bp = Blueprint('api', __name__)

DEFAULT_PAIRS = 10


def _int_arg(source: Dict[str, Any], name: str, default: Optional[int] = None) -> int:
    """Read a positive integer parameter from query args or a JSON body.

    :raises ParameterError: If the value is missing, not an integer or below 1
    """
    raw = source.get(name, default)
    if raw is None:
        raise ParameterError(f'missing required parameter: {name}')
    try:
        value = int(raw)
    except (TypeError, ValueError):
        raise ParameterError(f'{name} must be an integer, got {raw!r}')
    if value < 1:
        raise ParameterError(f'{name} must be at least 1, got {value}')
    return value


def _required(source: Dict[str, Any], name: str) -> str:
    value = source.get(name)
    if not value:
        raise ParameterError(f'missing required parameter: {name}')
    return value


def _error_response(e: Exception, action: str):
    if isinstance(e, RelposError):
        logger.warning(f'{action} rejected: {e}')
        return jsonify({'error': str(e), 'type': type(e).__name__}), e.http_status
    logger.error(f'Unexpected error during {action}: {e}', exc_info=True)
    return jsonify({'error': 'Internal server error'}), 500


@api_bp.route('/words', methods=['GET'])
def get_word():
    """Export a prefix of a word.

    ---
    tags:
      - Words
    parameters:
      - in: query
        name: spec
        type: string
        required: true
        description: Word spec, base word plus optional pipeline
        example: "tm | clone:2"
      - in: query
        name: length
        type: integer
        required: true
        example: 8
    responses:
      200:
        description: Stream export
        schema:
          type: object
          properties:
            provenance:
              type: string
              example: substitution-fixed-point
            descriptor:
              type: string
            length:
              type: integer
            prefix:
              type: string
              example: aabbbbaa
      400:
        description: Unparseable spec or bad length
      422:
        description: Index budget exceeded
    """
    try:
        w = parse_word(_required(request.args, 'spec'))
        return jsonify(word_report(w, _int_arg(request.args, 'length'))), 200
    except Exception as e:
        return _error_response(e, 'word export')


@api_bp.route('/positions', methods=['GET'])
def get_positions():
    """Position, relative and difference series of a word.

    ---
    tags:
      - Words
    parameters:
      - in: query
        name: spec
        type: string
        required: true
        example: fib
      - in: query
        name: n
        type: integer
        required: true
        example: 4
      - in: query
        name: format
        type: string
        enum: [json, csv]
        default: json
    responses:
      200:
        description: Rows n, p_a, p_b, r, delta_pa, delta_pb, delta_r
      400:
        description: Unparseable spec or bad n
      422:
        description: Index budget exceeded
    """
    try:
        report = positions_report(parse_word(_required(request.args, 'spec')), _int_arg(request.args, 'n'))
        if request.args.get('format') == 'csv':
            return Response(positions_csv(report['rows']), mimetype='text/csv'), 200
        return jsonify(report), 200
    except Exception as e:
        return _error_response(e, 'position series')


@api_bp.route('/reconstruct', methods=['POST'])
def post_reconstruct():
    """Recover a word from its relative position function.

    ---
    tags:
      - Reconstruction
    consumes:
      - application/json
    parameters:
      - in: body
        name: r_spec
        required: true
        schema:
          type: object
          properties:
            formula:
              type: string
              example: "2*n-1"
            values:
              type: array
              items:
                type: integer
              example: [2, 1]
            preset:
              type: string
              enum: [fib, tm]
            pairs:
              type: integer
              example: 10
    responses:
      200:
        description: Reconstruction succeeded
      400:
        description: No usable r spec in the body
      422:
        description: The values are not a relative position function; the first violation is reported
    """
    try:
        data = request.get_json(silent=True)
        if not data:
            return jsonify({'error': 'No JSON data provided'}), 400
        if data.get('formula') is not None:
            spec = RSpec.from_formula(str(data['formula']))
        elif data.get('values'):
            spec = RSpec.from_values(data['values'])
        elif data.get('preset'):
            spec = parse_rspec(str(data['preset']))
        else:
            return jsonify({'error': 'Missing required field: formula, values or preset'}), 400
        pairs = _int_arg(data, 'pairs', spec.limit or DEFAULT_PAIRS)
        outcome = reconstruct(spec, pairs)
        return jsonify(reconstruction_report(spec, outcome)), 200 if outcome.ok else 422
    except Exception as e:
        return _error_response(e, 'reconstruction')


@api_bp.route('/analyze', methods=['GET'])
def get_analysis():
    """Spectral report of a substitution.

    ---
    tags:
      - Spectral
    parameters:
      - in: query
        name: substitution
        type: string
        required: true
        example: "pisa:2,0,2"
    responses:
      200:
        description: Matrix, Perron-Frobenius data, limits and classifications
      400:
        description: Unparseable substitution
    """
    try:
        sigma = parse_substitution(_required(request.args, 'substitution'))
        return jsonify(analysis_report(sigma)), 200
    except Exception as e:
        return _error_response(e, 'analysis')


@api_bp.route('/theorems', methods=['GET'])
def get_theorems():
    """List the registered checks.

    ---
    tags:
      - Verification
    responses:
      200:
        description: Registered theorem ids with summaries and default scales
    """
    return jsonify({'theorems': [t.to_dict() for t in list_theorems()]}), 200


@api_bp.route('/verify/<theorem_id>', methods=['POST'])
def post_verify(theorem_id: str):
    """Run one check and return its certificate.

    ---
    tags:
      - Verification
    parameters:
      - in: path
        name: theorem_id
        type: string
        required: true
        example: thm-fib
      - in: body
        name: options
        required: false
        schema:
          type: object
          properties:
            scale:
              type: integer
              example: 1000
            seed:
              type: integer
    responses:
      200:
        description: Certificate of a passing check
      400:
        description: Unknown theorem id or bad scale
      422:
        description: Certificate of a failing check
    """
    try:
        data = request.get_json(silent=True) or {}
        scale = _int_arg(data, 'scale') if data.get('scale') is not None else None
        seed = data.get('seed')
        if seed is not None:
            try:
                seed = int(seed)
            except (TypeError, ValueError):
                raise ParameterError(f'seed must be an integer, got {seed!r}')
        certificate = run_theorem(theorem_id, scale, seed)
        return jsonify(certificate.to_dict()), 200 if certificate.passed else 422
    except Exception as e:
        return _error_response(e, f'verification of {theorem_id}')
