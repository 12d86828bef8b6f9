from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pure-Python install, _enum_py is used at import
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "philattice._enum_c",
                ["src/philattice/_enum_c.pyx"],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)
