import sys

from pyErfSparse.cli.commands import main

sys.exit(main())
