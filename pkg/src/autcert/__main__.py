"""``python -m autcert`` dispatches to the certificate pipeline CLI."""

import sys

from .pipeline import main

if __name__ == "__main__":
    sys.exit(main())
