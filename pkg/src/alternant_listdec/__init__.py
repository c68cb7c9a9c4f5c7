"""List decoding of 2-interleaved binary alternant codes."""

__version__ = "0.1.0"
