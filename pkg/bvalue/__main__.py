import sys

from bvalue.cli.main import main

sys.exit(main())
