from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any

from pydantic import JsonValue
from pydantic_core import to_jsonable_python

from refgroup_core.constants import Backing
from refgroup_algebra.fingerprint import EvidenceLevel
from refgroup_verify.exceptions import UnknownComputationError

if TYPE_CHECKING:
    from collections.abc import Callable, Mapping

    from refgroup_algebra.presentation import WitnessSearch
    from refgroup_verify.context import BuildContext

type Computation = Callable[[BuildContext, Mapping[str, Any]], Computed]


@dataclass(slots=True, frozen=True, kw_only=True)
class Computed:
    """What a computation found, in JSON-ready form."""

    """Compared against the claim's expected value"""
    value: JsonValue

    """Evidence level name, for identification claims"""
    evidence: str | None = None

    """table, permutation or formula"""
    route: str | None = None

    notes: tuple[str, ...] = ()

    """The search ran out of budget before deciding"""
    unknown: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", to_jsonable_python(self.value))


def witness_computed(search: WitnessSearch) -> Computed:
    """The evidence level a witness search reached.

    A search that ran out of budget is unknown rather than failed.
    """
    found = search.witness is not None
    level = EvidenceLevel.PRESENTATION_WITNESS if found else EvidenceLevel.NONE
    return Computed(
        value=level.name,
        evidence=level.name,
        route=Backing.TABLE,
        notes=() if found else (search.reason,),
        unknown=not found and "budget" in search.reason,
    )


@dataclass(slots=True, kw_only=True)
class ComputationRouter:
    """Maps the computation names used in claim constructors to functions."""

    _registry: dict[str, Computation] = field(default_factory=dict, init=False)

    def add(self, name: str, computation: Computation) -> None:
        """Registers a computation.

        Raises:
            ValueError: if the name is taken.
        """
        if name in self._registry:
            msg = f"computation {name!r} is already registered"
            raise ValueError(msg)
        self._registry[name] = computation

    def register(self, name: str) -> Callable[[Computation], Computation]:
        """Decorator to register a computation."""

        def decorator(func: Computation) -> Computation:
            self.add(name, func)
            return func

        return decorator

    def resolve(self, name: str) -> Computation:
        """The computation registered under ``name``.

        Raises:
            UnknownComputationError: if there is none.
        """
        try:
            return self._registry[name]
        except KeyError:
            msg = f"no computation named {name!r}"
            raise UnknownComputationError(msg) from None

    def names(self) -> tuple[str, ...]:
        """Registered names, sorted."""
        return tuple(sorted(self._registry))

    def __contains__(self, name: str) -> bool:
        return name in self._registry


router = ComputationRouter()
