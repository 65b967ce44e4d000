import os
from setuptools import setup, find_packages


# Utility function to read the README file.
def read(fname):
    return open(os.path.join(os.path.dirname(__file__), fname)).read()


setup(
    name="qutritwalk",
    version="0.1.0",
    description=("Three-state quantum walk simulator with phase damping, amplitude damping,"
                 " unitary noise and broken links."),
    license="GPLv3",
    packages=find_packages(include=['qutritwalk*']),
    long_description=read('README.md'),
    long_description_content_type="text/markdown",
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: GNU General Public License v3 (GPLv3)",
        "Operating System :: OS Independent",
        "Topic :: Scientific/Engineering :: Physics",
    ],
    python_requires='>=3.8',
    entry_points={
        'console_scripts': ['qutritwalk=qutritwalk.cli:main'],
    },
    install_requires=[
        'numpy>=1.22',
        'scipy>=1.8',
        'PyYAML==6.0.1',
        'appdirs==1.4.4',
        'sortedcontainers==2.4.0',
    ],
    extras_require={
        'dev': [
            'pytest==8.2.1',
            'pytest-cov==5.0.0',
            'coverage-threshold==0.4.4',
            'hypothesis==6.103.0',
        ]
    },
)
