from setuptools import find_packages, setup


with open("README.md", "r", encoding="utf-8") as fh:
    long_description = fh.read()

setup(
    name="edgefog",
    version="0.1.0",
    description="Edge-Fog task assignment solvers (LPCF, NOC/QAP baselines) and experiment harness",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=find_packages(exclude=["tests", "tests.*"]),
    install_requires=[
        "pydantic>=2.10.4",
        "loguru~=0.7.3",
        "numpy",
        "scipy>=1.11",
        "networkx>=3.2",
        "pydantic_core>=2.27.2",
        "tomli>=2.0.0; python_version < '3.11'",
    ],
    extras_require={
        "test": ["pytest~=8.3.5", "pytest-asyncio~=0.25.3"],
    },
    classifiers=[
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.12",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
    ],
    python_requires=">=3.10",
    entry_points={
        "console_scripts": [
            "edgefog=edgefog.bench.cli:main",
        ],
    },
)
