from setuptools import setup, find_packages

_dependencies = []
with open("requirements.txt", "r") as f:
    for line in f.readlines():
        if line.strip():
            _dependencies.append(line.strip())

setup(
    name="hardygkz",
    version="0.1.0",
    description="""Numerical Hardy-space toolkit: inner-outer factorization, weighted
    composition operators and Gleason-Kahane-Zelazko style recovery checks.""",
    packages=find_packages(include=("hardygkz", "hardygkz.*")),
    python_requires=">=3.10",
    install_requires=_dependencies,
    extras_require={"test": ["pytest"]},
    entry_points={"console_scripts": ["hardygkz=hardygkz.__main__:main"]},
)
