"""Build script: compiles the optional Cython kernel twin.

The package is fully functional without the extension (a pure-Python
fallback is selected at import); building it just makes the hot
polynomial/row-reduction kernels faster.  `pip install -e .` compiles it
when Cython and a C compiler are present, and degrades silently otherwise.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "speclab._kernel_cy",
                ["src/speclab/_kernel_cy.pyx"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
