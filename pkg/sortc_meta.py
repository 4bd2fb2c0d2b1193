"""Command line entry for the metatheory suite, see `python sortc_meta.py -h`."""
import sys

from DSRCheck.benchmark.cli import main

if __name__ == "__main__":
    sys.exit(main())
