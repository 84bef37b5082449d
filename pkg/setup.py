#!/usr/bin/env python

from setuptools import find_packages, setup


def readme():
    with open('README.rst') as f:
        return f.read()


def requirements():
    req_path = 'requirements.txt'
    with open(req_path) as f:
        reqs = f.read().splitlines()
    return reqs


setup(name='semnet_analyzer',
      version='0.1.0',
      description='Topology of ConceptNet semantic networks',
      long_description=readme(),
      keywords='semantic networks conceptnet power law configuration model',
      packages=find_packages(exclude=['tests']),
      install_requires=requirements(),
      extras_require={'test': ['pytest', 'networkx']},
      package_data={'semnet_analyzer': ['data/*.json']},
      include_package_data=True,
      entry_points={'console_scripts': ['semnet-analyzer = semnet_analyzer.cli:main']},
      classifiers=['Intended Audience :: Science/Research',
                   'Intended Audience :: Developers',
                   'Programming Language :: Python',
                   'Topic :: Scientific/Engineering',
                   'Operating System :: POSIX',
                   'Operating System :: Unix',
                   'Operating System :: MacOS',
                   'Programming Language :: Python :: 3',
                   'Programming Language :: Python :: 3.8',
                   'Programming Language :: Python :: 3.9',
                   'Programming Language :: Python :: 3.10',
                   ],
      zip_safe=False)
