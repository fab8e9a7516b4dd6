from .cli import execute, main
