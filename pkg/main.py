#!/usr/bin/env python3
import sys

# Try to import from installed package
try:
    from superfourier.cli import main
except ImportError:
    # If running from source without install
    sys.path.append("src")
    from superfourier.cli import main

if __name__ == "__main__":
    main()
