# Copyright Contributors to the svrgreg project.
# SPDX-License-Identifier: Apache-2.0

import numpy as np


def pytest_runtest_setup(item):
    np.random.seed(0)
