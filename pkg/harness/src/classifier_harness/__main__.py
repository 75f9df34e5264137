"""Module entry point so ``python3 -m classifier_harness`` works."""

import sys

from .cli import main

sys.exit(main())
