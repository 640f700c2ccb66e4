from setuptools import setup, find_packages
from pathlib import Path

# Read the README.md file
this_directory = Path(__file__).parent
long_description = (this_directory / "README.md").read_text()

setup(
    name="coxcomm",
    version="0.1.0",
    description="Word posets, commutation classes and reduced words in Coxeter groups",
    long_description=long_description,
    long_description_content_type="text/markdown",
    license="MIT",
    packages=find_packages(include=["coxcomm", "coxcomm.*"]),
    include_package_data=True,
    python_requires=">=3.9",
    install_requires=[
        "sympy>=1.12",
        "networkx>=3.1",
    ],
    extras_require={
        "docs": [
            "mkdocs",
            "mkdocs-include-markdown-plugin",
            "mkdocs[python]",
            "mkdocs-exclude",
            "ruamel.yaml",
        ],
    },
    entry_points={
        "console_scripts": [
            "coxcomm=coxcomm.cli:main",
        ],
    },
    classifiers=[
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3",
        "Operating System :: OS Independent",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
)
