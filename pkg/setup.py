from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pure-Python install; the kernel falls back at import time
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "carlitzq._lattice",
                ["src/carlitzq/_lattice.pyx"],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
