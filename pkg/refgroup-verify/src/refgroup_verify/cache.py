"""Caches for verification runs.

ConstructionCache keeps groups in memory so that claims sharing a group
build it once, even when they run on different threads. GroupStore keeps
group constructions on disk, keyed by the sha256 of their construction spec,
so later runs load them instead of enumerating again. ResultCache keeps
computed claim values on disk, keyed by the sha256 of the canonical JSON
of the claim constructor.
"""

from __future__ import annotations

import hashlib
import os
import tempfile
import threading
from dataclasses import dataclass, field
from pathlib import Path
from typing import TYPE_CHECKING, Any, override

from pydantic import BaseModel, ConfigDict, JsonValue, ValidationError

from refgroup_core import dyadic
from refgroup_core.exceptions import RefGroupError
from refgroup_core.log import get_logger
from refgroup_core.matrix import parse_exact_matrix
from refgroup_core.permutation import parse_permutation_group
from refgroup_core.table import table_from_elements
from refgroup_algebra.quantum import ConstructionStore
from refgroup_verify import __version__
from refgroup_verify.exceptions import CacheCorruptionError

if TYPE_CHECKING:
    from collections.abc import Callable

    from refgroup_core.backends import MatrixBackend
    from refgroup_core.permutation import BaseStrongGenSet
    from refgroup_core.table import FiniteGroupTable
    from refgroup_verify.models import Constructor

logger = get_logger(__name__)

GROUP_DIR = "groups"

_GROUP_HEADER_LINES = 3


def _write_atomic(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as f:
            f.write(text)
        Path(tmp).replace(path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise


@dataclass(slots=True, kw_only=True)
class ConstructionCache:
    """Values built at most once per key, with one lock per key."""

    _values: dict[str, Any] = field(default_factory=dict, init=False)

    _locks: dict[str, threading.Lock] = field(default_factory=dict, init=False)

    """Guards ``_locks`` itself"""
    _guard: threading.Lock = field(default_factory=threading.Lock, init=False)

    def get[T](self, key: str, build: Callable[[], T]) -> T:
        """The cached value for ``key``, calling ``build`` on the first request.

        Concurrent requests for the same key wait for the first builder.
        Different keys build in parallel.
        """
        with self._guard:
            lock = self._locks.setdefault(key, threading.Lock())
        with lock:
            if key in self._values:
                return self._values[key]
            logger.debug("construction started", key=key)
            value = build()
            self._values[key] = value
            return value

    def __contains__(self, key: str) -> bool:
        return key in self._values


@dataclass(slots=True, kw_only=True)
class GroupStore(ConstructionStore):
    """Group constructions on disk, one file per construction spec digest.

    A matrix table is a ``.group`` file: the lines ``hash <digest>``,
    ``mode <mode>`` and ``order <n>``, then one ExactMatrix serialization per
    element in id order. A permutation group is a ``.bsgs`` file: a
    ``hash <digest>`` line, then the ``degree order`` header and one line of
    generator images per generator. Unreadable files are removed and rebuilt.
    A store without a root directory builds every time.
    """

    root: Path | None

    def digest(self, spec: str) -> str:
        """sha256 of the construction spec with the package version mixed in."""
        return hashlib.sha256(f"{__version__}\n{spec}".encode()).hexdigest()

    def path_for(self, spec: str, suffix: str) -> Path | None:
        """File holding the construction for ``spec``."""
        if self.root is None:
            return None
        return self.root / f"{self.digest(spec)}{suffix}"

    def _fetch[T](
        self,
        path: Path | None,
        *,
        read: Callable[[str, str], T],
        render: Callable[[T, str], str],
        build: Callable[[], T],
    ) -> T:
        if path is None:
            return build()
        digest = path.stem
        if path.exists():
            try:
                value = read(path.read_text(encoding="utf-8"), digest)
            except OSError as e:
                logger.warning("group cache unreadable", path=str(path), error=str(e))
            except CacheCorruptionError as e:
                logger.warning("group cache corrupt", path=str(path), error=str(e))
                path.unlink(missing_ok=True)
            else:
                logger.debug("group cache hit", path=path.name)
                return value
        value = build()
        _write_atomic(path, render(value, digest))
        logger.debug("group cache stored", path=path.name)
        return value

    @override
    def table(
        self,
        spec: str,
        *,
        name: str,
        backend: MatrixBackend,
        generators: dyadic.DyadicStack,
        build: Callable[[], FiniteGroupTable[dyadic.DyadicStack]],
    ) -> FiniteGroupTable[dyadic.DyadicStack]:
        def read(text: str, digest: str) -> FiniteGroupTable[dyadic.DyadicStack]:
            return read_group_file(
                text, digest, name=name, backend=backend, generators=generators
            )

        return self._fetch(
            self.path_for(spec, ".group"),
            read=read,
            render=render_group_file,
            build=build,
        )

    @override
    def permutation_group(
        self, spec: str, build: Callable[[], BaseStrongGenSet]
    ) -> BaseStrongGenSet:
        return self._fetch(
            self.path_for(spec, ".bsgs"),
            read=read_bsgs_file,
            render=lambda group, digest: f"hash {digest}\n{group.serialize()}",
            build=build,
        )


def render_group_file(
    table: FiniteGroupTable[dyadic.DyadicStack], digest: str
) -> str:
    """The ``.group`` text of a matrix table."""
    lines = [f"hash {digest}", f"mode {table.mode.value}", f"order {table.order}"]
    lines.extend(
        dyadic.to_exact(table.elements, i).serialize() for i in range(table.order)
    )
    return "\n".join(lines) + "\n"


def read_group_file(
    text: str,
    digest: str,
    *,
    name: str,
    backend: MatrixBackend,
    generators: dyadic.DyadicStack,
) -> FiniteGroupTable[dyadic.DyadicStack]:
    """Rebuilds a matrix table from ``.group`` text.

    Raises:
        CacheCorruptionError: on a header for another spec or mode, a wrong
            element count, a malformed matrix, or elements that do not form
            the group of ``generators``.
    """
    lines = text.splitlines()
    expected = [f"hash {digest}", f"mode {backend.mode.value}"]
    if lines[:2] != expected or not "".join(lines[2:3]).startswith("order "):
        msg = f"group cache header does not match {digest[:12]}"
        raise CacheCorruptionError(msg)
    recorded = lines[2].removeprefix("order ")
    listed = len(lines) - _GROUP_HEADER_LINES
    if not recorded.isdigit() or int(recorded) != listed:
        msg = f"group cache records order {recorded} but lists {listed}"
        raise CacheCorruptionError(msg)
    try:
        matrices = [
            parse_exact_matrix(line) for line in lines[_GROUP_HEADER_LINES:]
        ]
        elements = backend.prepare(dyadic.from_exact(matrices))
        return table_from_elements(
            backend, elements, generators, name=name, mode=backend.mode
        )
    except (RefGroupError, ValueError) as e:
        msg = f"group cache for {name} does not decode: {e}"
        raise CacheCorruptionError(msg) from e


def read_bsgs_file(text: str, digest: str) -> BaseStrongGenSet:
    """Rebuilds a permutation group from ``.bsgs`` text.

    Raises:
        CacheCorruptionError: on a hash line for another spec, or text that
            parse_permutation_group rejects.
    """
    head, _, body = text.partition("\n")
    if head != f"hash {digest}":
        msg = f"permutation cache header does not match {digest[:12]}"
        raise CacheCorruptionError(msg)
    try:
        return parse_permutation_group(body)
    except (RefGroupError, ValueError) as e:
        msg = f"permutation cache does not decode: {e}"
        raise CacheCorruptionError(msg) from e


class CacheEntry(BaseModel):
    """One computed claim value as stored on disk."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    digest: str
    computation: str
    value: JsonValue
    evidence: str | None = None
    route: str | None = None
    notes: tuple[str, ...] = ()
    unknown: bool = False


@dataclass(slots=True, kw_only=True)
class ResultCache:
    """Computed values on disk, one JSON file per constructor digest.

    A cache without a root directory stores nothing and never hits.
    """

    root: Path | None

    def path_for(self, constructor: Constructor) -> Path | None:
        """File holding the entry for ``constructor``."""
        if self.root is None:
            return None
        return self.root / f"{constructor.digest()}.json"

    def _read(self, path: Path) -> CacheEntry:
        """Decodes one entry.

        Raises:
            CacheCorruptionError: if the file is not a valid entry.
        """
        try:
            return CacheEntry.model_validate_json(path.read_bytes())
        except (OSError, ValidationError) as e:
            msg = f"cache entry {path.name} is unreadable"
            raise CacheCorruptionError(msg) from e

    def load(self, constructor: Constructor) -> CacheEntry | None:
        """The stored entry, or None on a miss.

        Corrupt entries are logged, removed and treated as misses.
        """
        path = self.path_for(constructor)
        if path is None or not path.exists():
            return None
        try:
            entry = self._read(path)
        except CacheCorruptionError as e:
            logger.warning("cache entry corrupt", path=str(path), error=str(e))
            path.unlink(missing_ok=True)
            return None
        if entry.digest != constructor.digest():
            logger.warning("cache entry for another constructor", path=str(path))
            return None
        logger.debug("cache hit", computation=constructor.computation)
        return entry

    def store(self, constructor: Constructor, entry: CacheEntry) -> None:
        """Writes an entry atomically; a cache without a root ignores it."""
        path = self.path_for(constructor)
        if path is None:
            return
        _write_atomic(path, entry.model_dump_json())
        logger.debug("cache stored", computation=constructor.computation)
