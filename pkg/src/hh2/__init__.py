"""Second Hochschild cohomology of finite-dimensional path algebra quotients."""

__version__ = "0.1.0"
