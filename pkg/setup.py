from setuptools import setup

# parse requirements.txt to requirement list
with open("requirements.txt") as f:
    requirements = [line for line in f.read().splitlines() if line and not line.startswith("#")]

with open("README.md", encoding="utf-8") as f:
    long_description = f.read()

setup(
    name="DSRCheck",
    version="0.1.0",
    packages=[
        "DSRCheck",
        "DSRCheck.benchmark",
        "DSRCheck.classes",
        "DSRCheck.evaluation",
        "DSRCheck.io",
        "DSRCheck.patterns",
        "DSRCheck.sorts",
        "DSRCheck.typecheck",
        "DSRCheck.utility",
    ],
    include_package_data=True,
    long_description=long_description,
    long_description_content_type="text/markdown",
    python_requires=">=3.8",
    install_requires=["colorama", "jsonschema", "lark", "networkx", "numpy", "pandas", "tqdm"],
    extras_require={"default": requirements},
    entry_points={
        "console_scripts": [
            "sortc=DSRCheck.cli:main",
            "sortc-meta=DSRCheck.benchmark.cli:main",
        ]
    },
)
