#!/usr/bin/env python3
"""
Conditional Logic Workbench - Main Entry Point
Runs the bundled corpus verification, or any CLI subcommand when arguments are given
"""

import sys
from pathlib import Path

# Add src to path for imports
sys.path.insert(0, str(Path(__file__).parent / "src"))

from condlogic.cli import main as cli_main


def main():
    """Run the CLI; with no arguments verify the bundled corpus"""
    argv = sys.argv[1:] or ["corpus", "verify"]
    return cli_main(argv)


if __name__ == "__main__":
    exit_code = main()
    sys.exit(exit_code)
