"""Decision procedures with certificates for cellular automata over groups,
and group-ring tools for direct finiteness and the support pseudonorm."""
__version__ = "0.1.0"

from .kernels import BACKEND  # noqa: E402
