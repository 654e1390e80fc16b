import sys

from khadequacy.cli import main

sys.exit(main())
