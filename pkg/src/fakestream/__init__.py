"""Online, explainable fake-news classification over tweet streams."""

__version__ = "0.1.0"
