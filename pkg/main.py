#!/usr/bin/env python3
"""
ocalearn - learning one-counter automata

Launcher for running the command line straight from a source checkout.
"""

import os
import sys

# Add the package to the path
sys.path.append(os.path.abspath(os.path.dirname(__file__)))

from ocalearn.main import main

if __name__ == "__main__":
    sys.exit(main())
