# Copyright Contributors to the svrgreg project.
# SPDX-License-Identifier: Apache-2.0

import sys

from setuptools import find_packages, setup

# READ README.md for long description on PyPi.
try:
    long_description = open('README.md', encoding='utf-8').read()
except Exception as e:
    sys.stderr.write(f'Failed to read README.md:\n  {e}\n')
    sys.stderr.flush()
    long_description = ''

setup(
    name='svrgreg',
    version='0.1.0',
    description='Stochastic variance reduced gradient methods as iterative regularization for linear ill-posed problems',
    packages=find_packages(include=['svrgreg', 'svrgreg.*']),
    python_requires=">=3.7",
    install_requires=[
        'multipledispatch',
        'numpy>=1.17',
        'pandas>=1.0',
    ],
    extras_require={
        'test': [
            'flake8',
            'pytest>=4.1',
            'pytest-xdist',
            'scipy',
        ],
        'dev': [
            'flake8',
            'isort',
            'pytest>=4.1',
            'pytest-xdist',
            'scipy',
            'sphinx>=2.0',
            'sphinx_rtd_theme',
        ],
    },
    entry_points={
        'console_scripts': [
            'svrgreg=svrgreg.cli:main',
        ],
    },
    long_description=long_description,
    long_description_content_type='text/markdown',
    keywords='inverse problems iterative regularization stochastic gradient variance reduction',
    classifiers=[
        'Intended Audience :: Developers',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: Apache License 2.0',
        'Operating System :: POSIX :: Linux',
        'Operating System :: MacOS :: MacOS X',
        'Programming Language :: Python :: 3.7',
    ],
)
