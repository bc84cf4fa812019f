import sys

from edgefog.bench.cli import main


if __name__ == "__main__":
    sys.exit(main())
