import sys
from pathlib import Path

# allow running pytest from a fresh checkout without installing the package
_SRC = Path(__file__).resolve().parents[1] / "src"
if str(_SRC) not in sys.path:
    sys.path.insert(0, str(_SRC))
