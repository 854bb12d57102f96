"""Entry point for ``python -m hadamard_inverse``."""

import sys

from .cli import main

sys.exit(main())
