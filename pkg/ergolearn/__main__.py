import sys

from ergolearn.cli import main

sys.exit(main())
