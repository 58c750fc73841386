from setuptools import setup, find_packages

with open("warpwave/__init__.py", encoding="utf-8") as f:
    line = next(iter(f))
    VERSION = line.strip().split()[-1][1:-1]

with open("README.md") as f:
    readme = f.read()

setup(
    name="warpwave",
    version=VERSION,
    description="Time-frequency warped single-carrier waveforms",
    long_description=readme,
    long_description_content_type="text/markdown",
    license="BSD 3-Clause",
    packages=find_packages(exclude=["docs", "examples", "rst", "tests", "tests.*"]),
    install_requires=[
        "numpy>=1.20",
        "scipy>=1.6",
        "pandas>=1.5.0",
        "psygnal>=0.3.0",
        "pyyaml>=5.1",
        "joblib>=1.3",
    ],
    extras_require={"testing": ["pytest"]},
    entry_points={"console_scripts": ["warpwave=warpwave.labcli:main"]},
    python_requires=">=3.8",
)
