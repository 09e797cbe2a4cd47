"""Classification, enumeration and transformation of isonemal weave designs with quarter-turn symmetry."""
from __future__ import annotations

__version__ = "0.1.0"
