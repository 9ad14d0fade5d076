import sys

from spinalkit.main import main

sys.exit(main())
