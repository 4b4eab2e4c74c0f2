"""Application configuration module.

This module defines the configuration classes for the different environments
(development, testing, production) and loads settings from environment
variables. The command line and the HTTP API both read their defaults from
here.
"""

import os
from typing import Dict, Optional, Type


def _int_env(name: str, default: int) -> int:
    """Read an integer setting from the environment.

    :param name: Environment variable name
    :type name: str
    :param default: Value used when the variable is unset or empty
    :type default: int
    :return: Parsed integer value
    :rtype: int
    :raises ValueError: If the variable is set but is not an integer
    """
    raw = os.environ.get(name)
    if raw is None or raw.strip() == '':
        return default
    try:
        return int(raw.replace('_', ''))
    except ValueError:
        raise ValueError(f'{name} must be an integer, got {raw!r}')


def _optional_float_env(name: str) -> Optional[float]:
    raw = os.environ.get(name)
    if raw is None or raw.strip() == '':
        return None
    try:
        return float(raw)
    except ValueError:
        raise ValueError(f'{name} must be a number of seconds, got {raw!r}')


class Config:
    """Base configuration class.

    Contains common configuration settings used across all environments.
    """

    # Flask configuration
    SECRET_KEY: str = os.environ.get('SECRET_KEY', 'dev-secret-key-change-in-production')
    DEBUG: bool = os.environ.get('FLASK_ENV') == 'development'
    TESTING: bool = False

    # Logging configuration
    LOG_LEVEL: str = os.environ.get('LOG_LEVEL', 'INFO')
    LOG_FORMAT: str = os.environ.get('LOG_FORMAT', 'json')

    # Largest number of letters any lazy word may generate
    INDEX_BUDGET: int = _int_env('RELPOS_INDEX_BUDGET', 10_000_000)

    # Significant digits for decimal renderings and the numeric fallback
    DECIMAL_DIGITS: int = _int_env('RELPOS_DECIMAL_DIGITS', 30)

    # Theorem verification
    VERIFY_WORKERS: int = _int_env('RELPOS_VERIFY_WORKERS', os.cpu_count() or 1)
    VERIFY_TIMEOUT: Optional[float] = _optional_float_env('RELPOS_VERIFY_TIMEOUT')
    RANDOM_SEED: int = _int_env('RELPOS_SEED', 20240101)


class DevelopmentConfig(Config):
    """Development environment configuration."""

    DEBUG: bool = True
    LOG_LEVEL: str = 'DEBUG'
    LOG_FORMAT: str = 'text'


class TestingConfig(Config):
    """Configuration used by the test suite."""

    TESTING: bool = True
    INDEX_BUDGET: int = 2_000_000
    VERIFY_WORKERS: int = 1


class ProductionConfig(Config):
    """Production environment configuration for Heroku deployment."""

    DEBUG: bool = False
    LOG_LEVEL: str = 'INFO'


_CONFIGS: Dict[str, Type[Config]] = {
    'development': DevelopmentConfig,
    'testing': TestingConfig,
    'production': ProductionConfig,
}


def get_config(env: Optional[str] = None) -> Type[Config]:
    """Select the configuration class for an environment.

    :param env: Environment name; defaults to the ``APP_ENV`` variable
    :type env: Optional[str]
    :return: Configuration class (the base class for unknown names)
    :rtype: Type[Config]
    """
    name = (env or os.environ.get('APP_ENV', '')).strip().lower()
    return _CONFIGS.get(name, Config)
