#!/usr/bin/env python3
"""Entry point for running the dyncluster command line from a checkout."""

import sys

from src.dyncluster.main import main


if __name__ == "__main__":
    sys.exit(main())
