#!/usr/bin/env python3
"""
ocalearn Setup
"""

from setuptools import setup, find_packages

# Read requirements from requirements.txt, leaving the development tools out
DEV_REQUIREMENTS = ("pytest", "pytest-cov", "hypothesis", "flake8", "black")

with open('requirements.txt') as f:
    lines = [line.split('#', 1)[0].strip() for line in f]
    requirements = [line for line in lines if line]

install_requires = [r for r in requirements if not r.startswith(DEV_REQUIREMENTS)]
dev_requires = [r for r in requirements if r.startswith(DEV_REQUIREMENTS)]

# Read long description from README.md
with open('README.md', 'r', encoding='utf-8') as f:
    long_description = f.read()

setup(
    name="ocalearn",
    version="0.1.0",
    description="Passive and active learning of deterministic real-time one-counter automata",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=find_packages(exclude=["examples", "examples.*"]),
    include_package_data=True,
    entry_points={
        "console_scripts": [
            "ocalearn=ocalearn.main:main",
        ],
    },
    install_requires=install_requires,
    extras_require={"dev": dev_requires},
    python_requires=">=3.8",
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Environment :: Console",
        "Intended Audience :: Science/Research",
        "Operating System :: OS Independent",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Topic :: Scientific/Engineering",
    ],
    keywords="automata, grammatical inference, rpni, one-counter automata, active learning",
)
