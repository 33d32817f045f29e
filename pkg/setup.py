from setuptools import setup, find_packages

setup(
    name='pgm-toolkit',
    version='1.0.0',
    packages=find_packages(exclude=['tests', 'tests.*']),
    py_modules=['cli'],
    include_package_data=True,
    install_requires=[
        'numpy>=1.26.0',
        'scipy>=1.11.0',
        'click>=8.1.7',
        'PyYAML>=6.0.1',
        'python-dotenv>=1.0.0',
        'tqdm>=4.66.0',
        'deepdiff>=6.7.0',
        'colorlog>=6.8.0',
    ],
    extras_require={
        'test': [
            'pytest>=7.4.0',
            'pytest-mock>=3.12.0',
        ],
    },
    entry_points={
        'console_scripts': [
            'pgm-cli=cli:cli',
        ],
    },
    python_requires='>=3.10',
    description='Pretty good measurement toolkit: PGM construction, error bounds and protocol simulation',
    long_description=open('DESIGN.md').read(),
    long_description_content_type='text/markdown',
)
