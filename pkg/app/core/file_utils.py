import os
from typing import List, Tuple
from werkzeug.datastructures import FileStorage
from werkzeug.utils import secure_filename
from app.config.settings import settings
from app.core.exceptions import InvalidParam, ParseError
from app.core.logger import get_logger, log_method_calls
from app.models.schemas import FiniteSemiring
from app.services.semiring_service import SemiringService

logger = get_logger(__name__)


def _decode(data: bytes, source: str) -> str:
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as e:
        line = data[:e.start].count(b"\n") + 1
        raise ParseError(f"{source} is not UTF-8 text (byte 0x{data[e.start]:02x})", line)


class SemiringFileManager:
    """Reading semiring files from disk and from HTTP uploads"""

    @staticmethod
    def is_allowed_file(filename: str) -> bool:
        """Check if the file extension is one of the semiring file extensions"""
        if not filename:
            logger.debug("File validation failed: No filename provided")
            return False
        file_ext = os.path.splitext(filename)[1].lower()
        return file_ext in settings.SEMIRING_EXTENSIONS

    @staticmethod
    @log_method_calls()
    def collect_paths(paths: List[str]) -> List[str]:
        """Expand directories into their semiring files (sorted by name); plain files pass through"""
        collected = []
        for path in paths:
            if os.path.isdir(path):
                entries = sorted(os.listdir(path))
                found = [os.path.join(path, e) for e in entries if SemiringFileManager.is_allowed_file(e)]
                logger.debug(f"Found {len(found)} semiring files in directory {path}")
                collected.extend(found)
            elif os.path.isfile(path):
                collected.append(path)
            else:
                raise InvalidParam(f"no such file or directory: {path}")
        return collected

    @staticmethod
    @log_method_calls()
    def read_semiring(path: str) -> FiniteSemiring:
        logger.info(f"Reading semiring file: {path}")
        with open(path, "rb") as handle:
            return SemiringService.parse_semiring(_decode(handle.read(), path))

    @staticmethod
    def read_semirings(paths: List[str]) -> List[FiniteSemiring]:
        return [SemiringFileManager.read_semiring(p) for p in SemiringFileManager.collect_paths(paths)]

    @staticmethod
    @log_method_calls()
    def read_uploaded_files(files: List[FileStorage]) -> List[Tuple[str, str]]:
        """(secured filename, text) for every uploaded semiring file"""
        if not files:
            raise InvalidParam("no semiring files uploaded")
        texts = []
        for i, file in enumerate(files, 1):
            if not file or not file.filename:
                raise InvalidParam(f"invalid upload {i}")
            filename = secure_filename(file.filename)
            if not SemiringFileManager.is_allowed_file(filename):
                raise InvalidParam(
                    f"file type not allowed: {file.filename}; expected one of {sorted(settings.SEMIRING_EXTENSIONS)}"
                )
            texts.append((filename, _decode(file.read(), filename)))
            logger.debug(f"Read upload {i}/{len(files)}: {filename}")
        return texts
