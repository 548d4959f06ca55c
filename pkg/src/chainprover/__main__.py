import sys

from chainprover.cli import main

sys.exit(main())
