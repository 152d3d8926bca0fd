"""Allow running as `python -m geocrystal.cli`."""

from __future__ import annotations

from geocrystal.cli import main

main()
