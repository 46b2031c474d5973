import sys

from tuttewidth.cli import main

sys.exit(main())
