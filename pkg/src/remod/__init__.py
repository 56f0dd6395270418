"""remod: ER and BP model extraction from dependency-parsed requirements."""

__version__ = "0.1.0"
