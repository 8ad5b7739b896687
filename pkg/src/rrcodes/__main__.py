import sys

from rrcodes.cli import main

sys.exit(main())
