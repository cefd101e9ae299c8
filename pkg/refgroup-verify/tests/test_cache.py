import threading
from pathlib import Path

import numpy as np
import pytest

from refgroup_core import dyadic
from refgroup_core.backends import MatrixBackend
from refgroup_core.constants import GateName
from refgroup_core.matrix import ExactMatrix, standard_gate
from refgroup_core.permutation import Permutation, schreier_sims
from refgroup_core.table import enumerate_group
from refgroup_algebra.quantum import clifford_group, construction_spec
from refgroup_verify.cache import (
    CacheEntry,
    ConstructionCache,
    GroupStore,
    ResultCache,
    read_bsgs_file,
    read_group_file,
)
from refgroup_verify.exceptions import CacheCorruptionError
from refgroup_verify.models import Constructor


def _entry(constructor: Constructor, value=192) -> CacheEntry:
    return CacheEntry(
        digest=constructor.digest(),
        computation=constructor.computation,
        value=value,
        route="table",
        notes=("a note",),
    )


class TestConstructionCache:
    def test_builds_once(self) -> None:
        cache = ConstructionCache()
        calls = []

        def build() -> int:
            calls.append(1)
            return 42

        assert cache.get("answer", build) == 42
        assert cache.get("answer", build) == 42
        assert calls == [1]
        assert "answer" in cache

    def test_builds_once_across_threads(self) -> None:
        cache = ConstructionCache()
        calls = []
        barrier = threading.Barrier(4)

        def build() -> str:
            calls.append(1)
            return "built"

        def worker() -> None:
            barrier.wait()
            cache.get("shared", build)

        threads = [threading.Thread(target=worker) for _ in range(4)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert calls == [1]

    def test_keys_are_independent(self) -> None:
        cache = ConstructionCache()
        assert cache.get("a", lambda: 1) == 1
        assert cache.get("b", lambda: 2) == 2
        assert "c" not in cache


class TestResultCache:
    def test_round_trip(self, cache: ResultCache) -> None:
        constructor = Constructor(computation="order", params={"group": "C1"})
        assert cache.load(constructor) is None
        cache.store(constructor, _entry(constructor))
        loaded = cache.load(constructor)
        assert loaded is not None
        assert loaded.value == 192
        assert loaded.notes == ("a note",)

    def test_one_file_per_digest(self, cache: ResultCache) -> None:
        constructor = Constructor(computation="gq_size")
        cache.store(constructor, _entry(constructor, [15, 15]))
        path = cache.path_for(constructor)
        assert path is not None
        assert path.name == f"{constructor.digest()}.json"
        assert [p.name for p in path.parent.iterdir()] == [path.name]

    def test_corrupt_entry_removed(self, cache: ResultCache) -> None:
        constructor = Constructor(computation="gq_size")
        path = cache.path_for(constructor)
        path.parent.mkdir(parents=True)
        path.write_text("{not json")
        assert cache.load(constructor) is None
        assert not path.exists()

    def test_read_raises_on_corruption(self, tmp_path: Path) -> None:
        path = tmp_path / "bad.json"
        path.write_text("[]")
        with pytest.raises(CacheCorruptionError):
            ResultCache(root=tmp_path)._read(path)

    def test_entry_for_other_constructor_ignored(self, cache: ResultCache) -> None:
        stored = Constructor(computation="order", params={"group": "C1"})
        asked = Constructor(computation="order", params={"group": "C2"})
        path = cache.path_for(asked)
        path.parent.mkdir(parents=True)
        path.write_text(_entry(stored).model_dump_json())
        assert cache.load(asked) is None

    def test_no_root_stores_nothing(self, no_cache: ResultCache) -> None:
        constructor = Constructor(computation="gq_size")
        assert no_cache.path_for(constructor) is None
        no_cache.store(constructor, _entry(constructor))
        assert no_cache.load(constructor) is None


class _CliffordOne:
    """Inputs for storing C1 = <H, P>, counting how often it is enumerated."""

    def __init__(self) -> None:
        self.backend = MatrixBackend(dim=2)
        self.gates = [standard_gate(GateName.H), standard_gate(GateName.P)]
        self.generators = dyadic.from_exact(self.gates)
        self.builds = 0

    def build(self):
        self.builds += 1
        return enumerate_group(self.backend, self.generators, name="C1")

    def fetch(self, store: GroupStore):
        return store.table(
            construction_spec("table", "C1", self.gates),
            name="C1",
            backend=self.backend,
            generators=self.generators,
            build=self.build,
        )


def _symmetric_four():
    swap = Permutation(images=(1, 0, 2, 3))
    cycle = Permutation(images=(1, 2, 3, 0))
    return schreier_sims([swap, cycle], degree=4)


class TestGroupStore:
    def test_table_round_trip(self, tmp_path: Path) -> None:
        store = GroupStore(root=tmp_path)
        c1 = _CliffordOne()
        first = c1.fetch(store)
        second = c1.fetch(store)
        assert c1.builds == 1
        assert second.keys == first.keys
        assert second.generators == first.generators
        assert np.array_equal(second.left_action, first.left_action)

    def test_group_file_layout(self, tmp_path: Path) -> None:
        store = GroupStore(root=tmp_path)
        c1 = _CliffordOne()
        c1.fetch(store)
        path = store.path_for(construction_spec("table", "C1", c1.gates), ".group")
        lines = path.read_text().splitlines()
        assert lines[:3] == [f"hash {path.stem}", "mode full", "order 192"]
        assert len(lines) == 195
        assert lines[3] == ExactMatrix.identity(2).serialize()

    def test_corrupt_table_rebuilt(self, tmp_path: Path) -> None:
        store = GroupStore(root=tmp_path)
        c1 = _CliffordOne()
        path = store.path_for(construction_spec("table", "C1", c1.gates), ".group")
        c1.fetch(store)
        path.write_text(f"hash {path.stem}\nmode full\norder 192\n2;1,0,0,0\n")
        assert c1.fetch(store).order == 192
        assert c1.builds == 2
        assert path.read_text().splitlines()[2] == "order 192"

    def test_foreign_hash_rejected(self) -> None:
        c1 = _CliffordOne()
        with pytest.raises(CacheCorruptionError):
            read_group_file(
                "hash other\nmode full\norder 0\n",
                "mine",
                name="C1",
                backend=c1.backend,
                generators=c1.generators,
            )

    def test_missing_elements_rejected(self, tmp_path: Path) -> None:
        store = GroupStore(root=tmp_path)
        c1 = _CliffordOne()
        c1.fetch(store)
        path = store.path_for(construction_spec("table", "C1", c1.gates), ".group")
        lines = path.read_text().splitlines()
        text = "\n".join([*lines[:2], "order 191", *lines[3:-1]])
        with pytest.raises(CacheCorruptionError, match="does not decode"):
            read_group_file(
                text,
                path.stem,
                name="C1",
                backend=c1.backend,
                generators=c1.generators,
            )

    def test_permutation_round_trip(self, tmp_path: Path) -> None:
        store = GroupStore(root=tmp_path)
        built = store.permutation_group("S4", _symmetric_four)

        def refuse():
            raise AssertionError

        loaded = store.permutation_group("S4", refuse)
        assert loaded.order() == built.order() == 24
        assert loaded.generators == built.generators
        path = store.path_for("S4", ".bsgs")
        assert path.read_text().splitlines()[:2] == [f"hash {path.stem}", "4 24"]

    def test_bsgs_hash_checked(self) -> None:
        text = "hash other\n" + _symmetric_four().serialize()
        with pytest.raises(CacheCorruptionError):
            read_bsgs_file(text, "mine")

    def test_no_root_builds_every_time(self) -> None:
        store = GroupStore(root=None)
        c1 = _CliffordOne()
        c1.fetch(store)
        c1.fetch(store)
        assert c1.builds == 2
        assert store.path_for("anything", ".group") is None

    def test_named_group_through_store(self, tmp_path: Path) -> None:
        store = GroupStore(root=tmp_path)
        cold = clifford_group(1, store=store)
        warm = clifford_group(1, store=store)
        assert warm.order == cold.order == 192
        assert len(list(tmp_path.glob("*.group"))) == 1
