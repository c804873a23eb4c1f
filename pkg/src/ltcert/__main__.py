import sys

from ltcert.cli import main

sys.exit(main())
