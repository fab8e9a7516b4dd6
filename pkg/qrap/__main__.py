import sys

from qrap.cli import main

sys.exit(main())
