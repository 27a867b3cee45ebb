from setuptools import setup, find_packages

setup(
    name="oChroma",
    version="1.0.0",
    packages=find_packages(exclude=["tests"]),
    install_requires=[
        "python-dotenv>=1.0.0",
        "networkx>=3.0",
    ],
    extras_require={
        "tests": ["pytest>=7.0"],
    },
    entry_points={
        'console_scripts': [
            'ochroma=oChroma.main:main',
        ],
    },
    author="oChroma Team",
    description="O-colourings of vertex-oriented 4-regular plane graphs",
    keywords="graph colouring, 4-regular, plane graph, tait, knot projection",
    python_requires=">=3.8",
)
