#!/usr/bin/env python3
"""
quasikit command-line launcher
Runs the CLI from a source checkout without installing the package
"""

import os
import sys

# Add the repository root to path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from quasikit.cli import main

if __name__ == '__main__':
    sys.exit(main())
