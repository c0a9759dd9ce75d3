import re
from setuptools import setup, find_packages

# Read requirements from requirements.txt
with open('requirements.txt') as f:
    requirements = f.read().splitlines()

with open('test_requirements.txt') as f:
    test_requirements = [line for line in f.read().splitlines() if line and not line.startswith('-r')]

# Single source of the version number
with open('harmonicqc/__init__.py') as f:
    version = re.search(r'__version__ = "([^"]+)"', f.read()).group(1)

setup(
    name="harmonicqc",
    version=version,
    description="Coefficient conditions, quasiconformal extensions and numerical verification for harmonic univalent mappings",
    packages=find_packages(exclude=["tests", "tests.*"]),
    package_data={"harmonicqc": ["maps/*.json"]},
    install_requires=requirements,
    extras_require={"test": test_requirements},
    entry_points={
        'console_scripts': [
            'harmonicqc=harmonicqc.cli:run_cli',
        ],
    },
    python_requires='>=3.8',
)
