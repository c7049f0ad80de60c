from setuptools import setup

with open("README.md", "r", encoding="utf-8") as fh:
    long_description = fh.read()

setup(
    name="tarai-toolkit",
    version="1.0.0",
    description="Call-by-need and strict evaluation of the n-dimensional tarai function, with closed-form verification",
    long_description=long_description,
    long_description_content_type="text/markdown",
    py_modules=[
        "tarai_core",
        "closed_form",
        "lazy_engine",
        "strict_engine",
        "verifier",
        "tarai_config",
        "tarai_cli",
    ],
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Mathematics",
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
    ],
    python_requires=">=3.9",
    install_requires=[
        "PyYAML>=6.0.1",
        "python-dotenv>=1.0.0",
        "pandas>=2.0",
        "numpy>=1.24",
        "colorlog>=6.8.0",
    ],
    extras_require={
        "dev": [
            "pytest>=7.4.3",
            "hypothesis>=6.92.1",
            "black>=23.12.1",
            "flake8>=6.1.0",
            "mypy>=1.7.1",
        ],
    },
    entry_points={
        "console_scripts": [
            "tarai=tarai_cli:main",
        ],
    },
)
