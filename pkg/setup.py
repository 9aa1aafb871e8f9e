#coding=utf-8
from setuptools import setup, find_packages

pkg_name = "libboltz"


exec(compile(open(pkg_name+"/version.py").read(), pkg_name+"/version.py", "exec"))


with open("README.md") as f:
    long_description = f.read()


setup(name=pkg_name,
    version=__version__,
    description='Steady-state solvers for the Boltzmann and BGK equations: SGS sweeps with preconditioned fixed-point inner solvers and FAS multigrid.',
    keywords = "kinetic theory, Boltzmann equation, BGK, discrete velocity method, multigrid, Gauss-Seidel",
    long_description=long_description,
    long_description_content_type="text/markdown",
    license='MIT',
    classifiers=[
        "License :: MIT License",
        "Intended Audience :: Developers",
        "Intended Audience :: Science/Research",
        "Programming Language :: Python :: 3.7",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Topic :: Scientific/Engineering",
    ],
    packages = find_packages(exclude=["tests"]),
    python_requires=">=3.7",
    install_requires=[
        'numpy>=1.17',
        'pandas>=0.24.2',
    ],
    extras_require={
        'test': ['pytest>=5.0'],
    },
    entry_points={
        'console_scripts': ['libboltz=libboltz.app.cli:main'],
    },
    include_package_data=True,
)
