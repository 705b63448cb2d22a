import sys

from swisscheese.cli import main

sys.exit(main())
