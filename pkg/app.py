#!/usr/bin/env python3
"""
Runs the quantumness command line from a source checkout, without installing
the package. Takes the same arguments as the ``quantumness`` executable.
"""
# Standard
import sys

# Local
from quantumness.cli.app import main

sys.exit(main())
