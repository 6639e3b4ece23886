from .modespace import ModeSpace, ModeVector, build_mode_space, mode_frequency

__all__ = ["ModeSpace", "ModeVector", "build_mode_space", "mode_frequency"]
