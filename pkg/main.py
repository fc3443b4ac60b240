#!/usr/bin/env python3
"""
Subtractive Workbench - Entry Point

Command-line entry for checking subtractive closure and subtractive topology
claims on finite semirings; `python main.py serve` starts the HTTP API.
"""

from app.cli import cli

if __name__ == '__main__':
    cli()
