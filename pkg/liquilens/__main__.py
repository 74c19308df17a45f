"""Allow ``python -m liquilens``."""

import sys

from liquilens.cli import main

sys.exit(main())
