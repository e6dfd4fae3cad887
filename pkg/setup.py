"""Setup script for the etech package."""

from setuptools import find_packages, setup

setup(
    name="etech",
    use_scm_version=True,
    description=(
        "Event-triggered transmission simulator for energy-harvesting transmitters"
    ),
    author="Peiman Khorramshahi",
    author_email="peiman@khorramshahi.com",
    packages=find_packages(include=["etech", "etech.*"]),
    install_requires=[
        "click>=8.1.7",
        "numpy>=1.26",
        "PyYAML>=6.0.1",
        "rich>=13.9.4",
    ],
    python_requires=">=3.10,<3.13",
    setup_requires=["setuptools_scm"],
    entry_points={
        "console_scripts": [
            "etech=etech.cli:main",
        ],
    },
    include_package_data=True,
    package_data={
        "etech": [
            "core/*.txt",
            "core/*.yaml",
            "py.typed",
        ],
    },
)
