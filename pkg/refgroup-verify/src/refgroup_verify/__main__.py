import sys

from refgroup_verify.cli import main

sys.exit(main())
