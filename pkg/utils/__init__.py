"""Utility modules package."""



