import logging
import os
import sys
import time
from datetime import date
from functools import wraps
from typing import Any, Callable, Dict, List, Optional
from app.config.settings import settings

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - [%(filename)s:%(lineno)d] - %(message)s'


class LoggerConfig:
    """One configured logger per module name, all writing to stderr"""

    _loggers: Dict[str, logging.Logger] = {}
    _override: Optional[str] = None

    @classmethod
    def _level(cls) -> int:
        if settings.DEBUG:
            return logging.DEBUG
        name = (cls._override or settings.LOG_LEVEL).upper()
        return getattr(logging, name, logging.WARNING)

    @staticmethod
    def _handlers() -> List[logging.Handler]:
        formatter = logging.Formatter(LOG_FORMAT)
        # stdout is reserved for report lines
        handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
        if settings.ENABLE_FILE_LOGGING:
            os.makedirs(settings.LOG_DIR, exist_ok=True)
            path = os.path.join(settings.LOG_DIR, f"workbench_{date.today():%Y%m%d}.log")
            file_handler = logging.FileHandler(path)
            file_handler.setLevel(logging.INFO)
            handlers.append(file_handler)
        for handler in handlers:
            handler.setFormatter(formatter)
        return handlers

    @classmethod
    def setup_logger(cls, name: str) -> logging.Logger:
        if name in cls._loggers:
            return cls._loggers[name]

        logger = logging.getLogger(name)
        logger.setLevel(cls._level())
        logger.handlers.clear()
        for handler in cls._handlers():
            logger.addHandler(handler)
        logger.propagate = False

        cls._loggers[name] = logger
        return logger

    @classmethod
    def set_level(cls, level: str) -> None:
        """Override LOG_LEVEL for every logger, including ones created later"""
        cls._override = level
        for logger in cls._loggers.values():
            logger.setLevel(cls._level())


def get_logger(name: str) -> logging.Logger:
    return LoggerConfig.setup_logger(name)


def _describe(value: Any) -> str:
    # semirings and lattices are large; their name is enough in a log line
    name = getattr(value, "name", None)
    if isinstance(name, str):
        return f"{type(value).__name__}({name})"
    return str(value)[:100]


def log_execution_time(logger: logging.Logger = None):
    """Log how long the wrapped call took, or how long it ran before failing"""
    def decorator(func: Callable) -> Callable:
        @wraps(func)
        def wrapper(*args, **kwargs) -> Any:
            log = logger or get_logger(func.__module__)
            started = time.perf_counter()
            try:
                result = func(*args, **kwargs)
            except Exception as e:
                log.error(f"{func.__qualname__} failed after {time.perf_counter() - started:.3f}s: {e}")
                raise
            log.info(f"{func.__qualname__} finished in {time.perf_counter() - started:.3f}s")
            return result
        return wrapper
    return decorator


def log_method_calls(logger: logging.Logger = None):
    """Log service calls at debug level with abbreviated arguments"""
    def decorator(func: Callable) -> Callable:
        @wraps(func)
        def wrapper(*args, **kwargs) -> Any:
            log = logger or get_logger(func.__module__)
            if log.isEnabledFor(logging.DEBUG):
                described = [_describe(a) for a in args]
                described += [f"{key}={_describe(value)}" for key, value in kwargs.items()]
                log.debug(f"{func.__qualname__}({', '.join(described)})")
            try:
                return func(*args, **kwargs)
            except Exception as e:
                log.error(f"{func.__qualname__}: {e}")
                raise
        return wrapper
    return decorator


def _request_summary(body: Any) -> str:
    if not isinstance(body, dict):
        return "no JSON body"
    texts = body.get("texts") or ([body["text"]] if isinstance(body.get("text"), str) else [])
    names = []
    for text in texts:
        first = next((line.split() for line in str(text).splitlines() if line.strip()), [])
        names.append(first[1] if len(first) > 1 and first[0] == "semiring" else "?")
    options = {k: v for k, v in body.items() if k not in ("text", "texts")}
    return f"semirings={names} options={options}"


def log_api_request(logger: logging.Logger = None):
    """Log an endpoint call with the semiring names it carries and its status"""
    def decorator(func: Callable) -> Callable:
        @wraps(func)
        def wrapper(*args, **kwargs) -> Any:
            from flask import request

            log = logger or get_logger('api')
            route = f"{request.method} {request.path}"
            log.info(f"API Request - {route} - {_request_summary(request.get_json(silent=True))}")
            started = time.perf_counter()
            try:
                result = func(*args, **kwargs)
            except Exception as e:
                log.error(f"API Error - {route} - {time.perf_counter() - started:.2f}s - {e}")
                raise
            status = result[1] if isinstance(result, tuple) and len(result) > 1 else 200
            log.info(f"API Response - {route} - {status} - {time.perf_counter() - started:.2f}s")
            return result
        return wrapper
    return decorator
