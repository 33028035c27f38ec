# Copyright Contributors to the svrgreg project.
# SPDX-License-Identifier: Apache-2.0

import sys

from svrgreg.cli import main

sys.exit(main())
