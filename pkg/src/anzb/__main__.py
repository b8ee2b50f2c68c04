from __future__ import annotations

import sys

from anzb.cli import main

sys.exit(main())
