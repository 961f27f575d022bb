"""
Run a verification scenario from a checkout: python verify.py model-p3-d1-c2
"""
import sys

from cli.main import main

if __name__ == "__main__":
    sys.exit(main())
