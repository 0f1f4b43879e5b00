"""Builds the _kmed extension through CMake and drops it into the package."""

import shutil
import subprocess
import sys
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name):
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    def build_extension(self, ext):
        source = Path(__file__).resolve().parent
        build = Path(self.build_temp).resolve()
        build.mkdir(parents=True, exist_ok=True)
        out = Path(self.get_ext_fullpath(ext.name)).resolve()
        out.parent.mkdir(parents=True, exist_ok=True)
        subprocess.run(
            [
                "cmake",
                str(source),
                "-DKMED_BUILD_TESTS=OFF",
                "-DCMAKE_BUILD_TYPE=Release",
                f"-DPython3_EXECUTABLE={sys.executable}",
            ],
            cwd=build,
            check=True,
        )
        subprocess.run(["cmake", "--build", build, "--target", "_kmed"], check=True)
        built = next(build.glob("_kmed*.so"))
        shutil.copy2(built, out)


setup(
    ext_modules=[CMakeExtension("kmedoids._kmed")],
    cmdclass={"build_ext": CMakeBuild},
)
