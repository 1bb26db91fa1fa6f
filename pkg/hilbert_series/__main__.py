import sys

from hilbert_series.cli import main


sys.exit(main())
