"""Pattern complexity and expansive directions of two-dimensional configurations."""
from .kernels import BACKEND

__version__ = "0.1.0"
