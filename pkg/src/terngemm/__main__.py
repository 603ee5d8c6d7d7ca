"""Allow ``python -m terngemm`` as an alias for the console script."""

import sys

from terngemm.cli import main

if __name__ == "__main__":
    sys.exit(main())
