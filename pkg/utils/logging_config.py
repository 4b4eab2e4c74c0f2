"""Logging configuration utility.

Structured JSON logging for the service and the command line, with a plain
text formatter for interactive use. The command line logs to stderr so
that stdout carries only results.
"""

import logging
import sys
from typing import Optional, TextIO

from pythonjsonlogger import jsonlogger

_FIELDS = '%(asctime)s %(name)s %(levelname)s %(message)s'
_DATEFMT = '%Y-%m-%d %H:%M:%S'


def setup_logging(log_level: str = 'INFO', log_format: str = 'json',
                  stream: Optional[TextIO] = None) -> None:
    """Configure application-wide logging.

    :param log_level: Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
    :type log_level: str
    :param log_format: ``json`` for structured records, ``text`` for plain lines
    :type log_format: str
    :param stream: Destination; stdout when None
    :type stream: Optional[TextIO]
    """
    numeric_level = getattr(logging, log_level.upper(), logging.INFO)

    root_logger = logging.getLogger()
    root_logger.setLevel(numeric_level)

    for handler in root_logger.handlers[:]:
        root_logger.removeHandler(handler)

    console_handler = logging.StreamHandler(stream or sys.stdout)
    console_handler.setLevel(numeric_level)

    if log_format == 'text':
        formatter = logging.Formatter(_FIELDS.replace(' %(', ' | %('), datefmt=_DATEFMT)
    else:
        formatter = jsonlogger.JsonFormatter(_FIELDS, datefmt=_DATEFMT)
    console_handler.setFormatter(formatter)

    root_logger.addHandler(console_handler)

    logging.getLogger('werkzeug').setLevel(logging.WARNING)
