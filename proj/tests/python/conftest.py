import os
import sys

# When driven by ctest the module lives in the cmake build tree; an installed
# rpcmlab wheel works as well.
module_dir = os.environ.get("RPCM_MODULE_DIR")
if module_dir:
    sys.path.insert(0, module_dir)
