import sys

from kovacic_aim.cli import main

if __name__ == "__main__":
    sys.exit(main())
