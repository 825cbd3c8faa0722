import os
from setuptools import setup, find_packages

with open(os.path.join("okhnf", "VERSION")) as version_file:
    version = version_file.read().strip()

setup(
    name="okhnf",
    version=version,
    description="Exact pseudo-Hermite normal forms of modules over rings of integers",
    author="okhnf Contributors",
    license="GPLv2 with linking exception",
    packages=find_packages(exclude=["tests", "tests.*"]),
    package_data={"okhnf": ["VERSION"]},
    include_package_data=True,
    zip_safe=False,
    python_requires=">=3.9",
    install_requires=[
        "click>=8.1,<8.2",
        "jsonschema>=3.2",
        "mpmath>=1.2",
        "pygments>=2.7",
        "sympy>=1.9",
    ],
    entry_points={
        "console_scripts": [
            "okhnf = okhnf.cli:cli",
        ],
    },
)
