"""
Json cache for tables and classes.

Tables are keyed by (n_max, order), classes by a hash of the chamber
signature of the queried datum. Every file carries a ``format_version``;
unreadable files and files of another version are recomputed and
overwritten.
"""

from __future__ import annotations

import fcntl
import hashlib
import json
import os
from contextlib import contextmanager
from pathlib import Path
from typing import Any, Iterator, Optional, Union

from rubber_system.misc import config
from rubber_system.misc import logger
from rubber_system.misc.exceptions import CacheCorruptionError
from rubber_system.model.gclass import GClass

FORMAT_VERSION = 1

__all__ = ["FORMAT_VERSION", "ResultCache"]


class ResultCache:
    """Load and store computed results below a cache directory.

    Parameters
    ----------
    directory: str | Path, default: None
        The cache directory, defaults to the configured ``cache_dir``.
    """

    def __init__(self, directory: Union[str, Path, None] = None) -> None:
        self.directory = Path(directory or config.get(config.CACHE_DIR)).expanduser()

    def __repr__(self) -> str:
        return f"ResultCache({str(self.directory)!r})"

    @contextmanager
    def _lock(self) -> Iterator[None]:
        self.directory.mkdir(parents=True, exist_ok=True)
        with (self.directory / ".lock").open("a") as lock:
            fcntl.flock(lock, fcntl.LOCK_EX)
            try:
                yield
            finally:
                fcntl.flock(lock, fcntl.LOCK_UN)

    def _read(self, path: Path, kind: str) -> Optional[dict[str, Any]]:
        """Content of a cache file, None if there is none."""
        if not path.is_file():
            return None
        try:
            with path.open() as f_obj:
                content = json.load(f_obj)
        except (OSError, ValueError) as error:
            raise CacheCorruptionError(path, str(error)) from error
        if not isinstance(content, dict):
            raise CacheCorruptionError(path, "not a json object")
        if content.get("format_version") != FORMAT_VERSION:
            raise CacheCorruptionError(
                path, f"format version {content.get('format_version')!r}"
            )
        if content.get("kind") != kind:
            raise CacheCorruptionError(path, f"expected a {kind} entry")
        return content

    def _write(self, path: Path, kind: str, content: dict[str, Any]) -> None:
        payload = {"format_version": FORMAT_VERSION, "kind": kind, **content}
        with self._lock():
            tmp = path.with_suffix(".tmp")
            with tmp.open("w") as f_obj:
                json.dump(payload, f_obj, indent=1)
            os.replace(tmp, path)
        logger.debug("stored %s", path)

    def table_path(self, n_max: int, order: int) -> Path:
        return self.directory / f"chi_table-{n_max}-{order}.json"

    def load_table(self, n_max: int, order: int) -> Any:
        """The cached :py:class:`EulerTable`, None on a miss or a bad file."""
        from rubber_system.api.recursion import EulerTable

        path = self.table_path(n_max, order)
        try:
            content = self._read(path, "chi_table")
            if content is None:
                return None
            try:
                table = EulerTable.from_dict(content["table"])
            except (KeyError, TypeError, ValueError) as error:
                raise CacheCorruptionError(path, str(error)) from error
        except CacheCorruptionError as error:
            logger.warning("%s, recomputing", error)
            return None
        logger.debug("cache hit %s", path)
        return table

    def store_table(self, table: Any) -> None:
        self._write(
            self.table_path(table.max_n, table.order),
            "chi_table",
            {"table": table.to_dict()},
        )

    def chi_table(self, n_max: int, order: Optional[int] = None) -> Any:
        """:py:func:`recursion.chi_table` through the cache."""
        from rubber_system.api.recursion import chi_table

        if order is None:
            order = max(config.get(config.TRUNCATION_ORDER), n_max)
        table = self.load_table(n_max, order)
        if table is None:
            table = chi_table(n_max, order)
            self.store_table(table)
        return table

    @staticmethod
    def signature_key(signature: Any) -> str:
        signs = "".join("+" if s > 0 else "-" for s in signature.signs)
        return hashlib.sha256(f"{signature.n}:{signs}".encode()).hexdigest()

    def class_path(self, signature: Any) -> Path:
        return self.directory / f"class-{self.signature_key(signature)}.json"

    def load_class(self, x: Any) -> Optional[GClass]:
        """The cached class of the chamber of x.

        The stored representative is checked to lie in the chamber of x
        before the class is served.
        """
        from rubber_system.api.chambers import same_chamber, signature, validate

        datum = validate(x)
        path = self.class_path(signature(datum))
        try:
            content = self._read(path, "total_class")
            if content is None:
                return None
            try:
                representative = validate(content["x"])
                gclass = GClass(int(c) for c in content["class"])
            except (KeyError, TypeError, ValueError) as error:
                raise CacheCorruptionError(path, str(error)) from error
        except CacheCorruptionError as error:
            logger.warning("%s, recomputing", error)
            return None
        if representative.n != datum.n or not same_chamber(representative, datum):
            logger.warning("%s belongs to another chamber, recomputing", path)
            return None
        logger.debug("cache hit %s", path)
        return gclass

    def store_class(self, x: Any, gclass: GClass) -> None:
        from rubber_system.api.chambers import signature, validate

        datum = validate(x)
        self._write(
            self.class_path(signature(datum)),
            "total_class",
            {"n": datum.n, "x": list(datum.x), "class": gclass.to_list()},
        )

    def total_class(self, x: Any) -> GClass:
        """:py:func:`strata.total_class` through the cache."""
        from rubber_system.api.strata import total_class

        gclass = self.load_class(x)
        if gclass is None:
            gclass = total_class(x)
            self.store_class(x, gclass)
        return gclass
