import setuptools

with open("README.md", "r") as fh:
    long_description = fh.read()

setuptools.setup(
    name="linmba",
    version="0.1.0",
    license='agpl-3.0',
    description="Simplification and generation of linear mixed Boolean-arithmetic expressions",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=setuptools.find_packages(exclude=["test", "test.*"]),
    install_requires=[
        'numpy',
        'pytest',
        'pytest-repeat',
        'pyyaml',
        'cachetools',
        'tblib',
        'click',
        'asciitree'
    ],
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Intended Audience :: Developers',
        'Topic :: Security',
        'Topic :: Software Development :: Compilers',
        'Programming Language :: Python :: 3.7',
    ],
    entry_points='''
    [console_scripts]
    linmba=linmba.cli:cli
    '''
)
