#!/usr/bin/env python3
"""
Copyright (c) 2017-present, Facebook, Inc.
All rights reserved.

This source code is licensed under the BSD-style license found in the
LICENSE file in the root directory of this source tree.
"""

from setuptools import find_packages, setup

install_requires = [
    "pyparsing",
    "numpy",
    "scipy>=1.9",
    "networkx",
]

extras_require = {
    # CBC through python-mip, selected with --backend cbc
    "cbc": ["mip"],
}


setup(
    name="contested-logistics",
    version="0.0.1",
    packages=find_packages(exclude=["examples", "examples.*"]),
    description="Double-oracle solver for contested logistics games",
    long_description=open("README.rst").read(),
    install_requires=install_requires,
    extras_require=extras_require,
    scripts=["cl_cli"],
    package_data={"core.tests": ["data/*"]},
    include_package_data=True,
    zip_safe=False,
    python_requires=">=3.10",
)
