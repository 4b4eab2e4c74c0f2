"""Pytest configuration and fixtures.

This module provides shared fixtures for all tests.
"""

import os
import random

import pytest
from flask import Flask
from dotenv import load_dotenv

# Select the testing configuration before anything reads Config
os.environ.setdefault('APP_ENV', 'testing')

from config import TestingConfig
from routes import api_bp
from substitution import fibonacci, fixed_point, period_doubling, thue_morse
from utils.logging_config import setup_logging
from words import get_index_budget, set_index_budget

load_dotenv()


@pytest.fixture(autouse=True)
def index_budget():
    """Run every test under the testing index budget and restore it afterwards.

    :return: The budget in force during the test
    :rtype: int
    """
    previous = get_index_budget()
    set_index_budget(TestingConfig.INDEX_BUDGET)
    yield TestingConfig.INDEX_BUDGET
    set_index_budget(previous)


@pytest.fixture
def small_budget():
    """Shrink the index budget to 1000 letters for the duration of a test.

    :return: The reduced budget
    :rtype: int
    """
    set_index_budget(1000)
    yield 1000


@pytest.fixture
def app():
    """Create Flask application for testing.

    :return: Flask application instance
    :rtype: Flask
    """
    test_app = Flask(__name__)
    test_app.config.from_object(TestingConfig)
    test_app.config['SECRET_KEY'] = 'test-secret-key'

    test_app.register_blueprint(api_bp, url_prefix='/api')

    setup_logging('INFO')

    @test_app.route('/health')
    def health_check():
        return {'status': 'healthy', 'service': 'relpos'}, 200

    with test_app.app_context():
        yield test_app


@pytest.fixture
def client(app):
    """Create test client.

    :param app: Flask application fixture
    :type app: Flask
    :return: Flask test client
    :rtype: FlaskClient
    """
    return app.test_client()


@pytest.fixture
def fib_word():
    """The Fibonacci word ``abaababaabaab...``."""
    return fixed_point(fibonacci(), 'a')


@pytest.fixture
def tm_word():
    """The Thue-Morse word ``abbabaabbaababba...``."""
    return fixed_point(thue_morse(), 'a')


@pytest.fixture
def pd_word():
    """The period-doubling word ``abaaabababaaabaa...``."""
    return fixed_point(period_doubling(), 'a')


@pytest.fixture
def rng():
    """Random generator seeded from the testing configuration.

    :return: Seeded generator
    :rtype: random.Random
    """
    return random.Random(TestingConfig.RANDOM_SEED)
