"""Command line entry for checking and running .dsr programs, see `python sortc.py -h`."""
import sys

from DSRCheck.cli import main

if __name__ == "__main__":
    sys.exit(main())
