import sys
from pathlib import Path

# Allow running the suite from a fresh checkout without installing.
_SRC = Path(__file__).resolve().parent.parent / "src"
if _SRC.is_dir() and str(_SRC) not in sys.path:
    try:
        import permplane  # noqa: F401
    except ImportError:
        sys.path.insert(0, str(_SRC))
