from setuptools import setup

try:
    from Cython.Build import cythonize
    from setuptools import Extension
except ImportError:  # the pure-Python fallback still works
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("pointsel._kernels", ["src/pointsel/_kernels.pyx"], extra_compile_args=["-O2"])],
        compiler_directives={"language_level": "3"},
    )
    for ext in ext_modules:
        ext.optional = True

setup(ext_modules=ext_modules)
