"""Exact computations with K3-type Hodge structures with complex
multiplication and their twistor families."""
__version__ = "0.1.0"
