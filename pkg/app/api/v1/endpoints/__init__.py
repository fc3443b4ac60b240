from .workbench_endpoint import workbench_bp

__all__ = ['workbench_bp']
