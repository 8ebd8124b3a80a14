import sys

from fadecap.cli import main

sys.exit(main())
