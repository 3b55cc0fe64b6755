from setuptools import setup, find_packages

setup(
    name="superfourier",
    version="0.1.0",
    package_dir={"": "src"},
    packages=find_packages(where="src"),
    install_requires=[
        "colorama",
        "typer",
        "click",
        "typing_extensions",
        "pandas>=1.5",
        "openpyxl",
        "tqdm",
        "pyyaml",
        "numpy",
        "sympy",
        "matplotlib",
    ],
    extras_require={
        "test": ["pytest", "hypothesis"],
    },
    entry_points={
        "console_scripts": [
            "superfourier=superfourier.cli:main",
        ],
    },
    python_requires=">=3.9",
)
