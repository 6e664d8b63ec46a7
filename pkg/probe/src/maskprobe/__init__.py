"""maskprobe: fill-mask scoring of probe templates into canonical score tables."""

__version__ = "0.1.0"
