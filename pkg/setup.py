from setuptools import find_packages, setup

with open('README.md', 'r') as f:
    long_description = f.read()

setup(name='ergolearn',
      version='1.0.0',
      description='Learning Chaotic Dynamics with Ergodic Audits',
      long_description=long_description,
      long_description_content_type='text/markdown',
      license='Apache 2.0',
      python_requires='>=3.8',
      install_requires=['coverage>=5.5',
                        'numpy>=1.21.0',
                        'pylint>=2.7.2',
                        'pytest>=6.2.2',
                        'scipy>=1.7.0',
                        'tensorflow>=2.11.0',
                        'tomli>=1.1.0; python_version < "3.11"'
                        ],
      extras_require={
          'tests': ['coverage',
                    'pytest',
                    'pytest-pep8',
                    ],
      },
      entry_points={
          'console_scripts': ['ergolearn=ergolearn.cli:main']
      },
      classifiers=[
          'Development Status :: 4 - Beta',
          'Intended Audience :: Education',
          'Intended Audience :: Science/Research',
          'License :: OSI Approved :: Apache Software License',
          'Programming Language :: Python :: 3.8',
          'Programming Language :: Python :: 3.9',
          'Programming Language :: Python :: 3.10',
          'Programming Language :: Python :: 3.11',
          'Topic :: Scientific/Engineering :: Mathematics',
          'Topic :: Scientific/Engineering :: Physics'
      ],
      packages=find_packages(exclude=['tests', 'tests.*', 'examples', 'examples.*']))
