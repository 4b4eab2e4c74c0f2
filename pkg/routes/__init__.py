"""Routes package for the JSON API."""

from routes.api_routes import api_bp

__all__ = ['api_bp']
