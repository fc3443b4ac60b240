from .v1 import workbench_bp

__all__ = ['workbench_bp']
