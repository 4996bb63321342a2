from setuptools import setup, find_packages

setup(
    name="fcnet",
    version="1.0.0",
    packages=find_packages(exclude=["tests"]),
    include_package_data=True,
    install_requires=[
        "click>=8.1.7",
        "tabulate>=0.9.0",
        "numpy>=1.22",
        "scipy>=1.8",
        "networkx>=2.8",
        "scikit-learn>=1.1",
        "matplotlib>=3.5",
    ],
    entry_points={
        "console_scripts": [
            "fcnet=fcnet.cli:cli",
        ],
    },
    python_requires=">=3.8",
    author="fcnet Team",
    description="Community detection on signed functional-connectivity graphs from multichannel recordings",
    keywords="community-detection modularity signed-graphs functional-connectivity lfp eeg cli",
)
