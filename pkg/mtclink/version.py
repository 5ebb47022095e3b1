"""Version of python-mtclink."""

__version__ = "0.1.0"
