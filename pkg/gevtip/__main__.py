"""Allow running the command-line interface as ``python -m gevtip``."""

import sys

from gevtip.cli.boundaries.cli import main

sys.exit(main())
