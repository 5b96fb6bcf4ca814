import os
import sys

_py_dir = os.environ.get("LATSPEC_PYTHON_DIR")
if _py_dir and _py_dir not in sys.path:
    sys.path.insert(0, _py_dir)
