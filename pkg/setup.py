import os

from setuptools import setup

ext_modules = []
if not os.environ.get("SPIDERSQ_NO_EXT"):
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [Extension("spidersq._kernels", ["src/spidersq/_kernels.pyx"])],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
