from __future__ import absolute_import
import io
import os
from setuptools import setup, find_packages


about = {}
here = os.path.abspath(os.path.dirname(__file__))
with io.open(os.path.join(here, 'bethe', '__init__.py'),
             mode='r', encoding='utf-8') as f:
    exec(f.read(), about)


setup(
    name='bethe',
    version=about['__version__'],
    packages=find_packages(exclude=('tests', 'tests.*')),
    description='Bethe ansatz equations and eigenfunctions on root systems',
    long_description=io.open('README.rst', encoding='utf-8').read(),
    license='BSD',
    entry_points={
        'console_scripts': ['bethe = bethe.tool:cli']
    },
    include_package_data=True,
    zip_safe=False,
    python_requires='>=3.7',
    install_requires=[
        'click',
        'numpy>=1.17',
        'PyYAML',
        'scipy',
        'tqdm',
    ],
    classifiers=[
        'Development Status :: 4 - Beta',
        'Intended Audience :: Science/Research',
        'Natural Language :: English',
        'License :: OSI Approved :: BSD License',
        'Programming Language :: Python',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.7',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Operating System :: OS Independent',
        'Environment :: Console',
        'Topic :: Scientific/Engineering :: Mathematics',
        'Topic :: Scientific/Engineering :: Physics',
    ],
)
