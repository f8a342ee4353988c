import sys

from refkac.cli import main

sys.exit(main())
