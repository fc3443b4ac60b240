from .endpoints import workbench_bp

__all__ = ['workbench_bp']
