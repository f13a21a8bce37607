import sys

from gf2lab.cli import main

sys.exit(main())
