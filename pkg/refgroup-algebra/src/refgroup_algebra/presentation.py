"""Finitely presented groups as data, and witness search in concrete groups.

Relations are written the usual way, ``x1^2=x2^2=(x2^-1x1)^3(x2x1)^3=1``,
with generators numbered from one in text and from zero in code. A witness
for a presentation in a concrete group G is a tuple of elements of G that
satisfies every relator and generates G.
"""

from __future__ import annotations

import re
import time
from dataclasses import dataclass
from typing import TYPE_CHECKING

from refgroup_core.constants import (
    CAYLEY_TABLE_LIMIT,
    WITNESS_ORDER_LIMIT,
    WITNESS_RANK_LIMIT,
    WITNESS_SEARCH_BUDGET,
)
from refgroup_core.exceptions import ParseError
from refgroup_core.log import get_logger

if TYPE_CHECKING:
    from collections.abc import Callable, Sequence
    from typing import Any

    from refgroup_core.table import FiniteGroupTable
    from refgroup_core.typedefs import Word

logger = get_logger(__name__)

_TOKEN = re.compile(r"x_?\{?(\d+)\}?|(\()|(\))|\^\{?(-?\d+)\}?|(\s+)")


def _tokenize(text: str) -> list[tuple[str, int]]:
    tokens: list[tuple[str, int]] = []
    pos = 0
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if match is None:
            msg = f"unexpected {text[pos]!r} at position {pos} of {text!r}"
            raise ParseError(msg)
        generator, opening, closing, exponent, _ = match.groups()
        if generator is not None:
            if int(generator) == 0:
                msg = f"generators are numbered from 1 in {text!r}"
                raise ParseError(msg)
            tokens.append(("gen", int(generator) - 1))
        elif opening:
            tokens.append(("open", 0))
        elif closing:
            tokens.append(("close", 0))
        elif exponent is not None:
            tokens.append(("pow", int(exponent)))
        pos = match.end()
    return tokens


def inverse_word(word: Word) -> Word:
    """The formal inverse."""
    return tuple((g, -e) for g, e in reversed(word))


def reduce_word(word: Word) -> Word:
    """Merges neighbouring powers of the same generator and drops zero powers."""
    out: list[tuple[int, int]] = []
    for g, e in word:
        if out and out[-1][0] == g:
            merged = out[-1][1] + e
            out.pop()
            if merged:
                out.append((g, merged))
        elif e:
            out.append((g, e))
    return tuple(out)


def power_word(word: Word, exponent: int) -> Word:
    """``word`` raised to any integer power."""
    base = word if exponent >= 0 else inverse_word(word)
    return reduce_word(base * abs(exponent))


def parse_word(text: str) -> Word:
    """Parses a word such as ``(x2^-1x1)^3(x2x1)^3``.

    Raises:
        ParseError: on unknown characters or unbalanced parentheses.
    """
    tokens = _tokenize(text)

    def sequence(pos: int, *, nested: bool) -> tuple[Word, int]:
        letters: Word = ()
        while pos < len(tokens):
            kind, value = tokens[pos]
            if kind == "close":
                if not nested:
                    msg = f"unbalanced ')' in {text!r}"
                    raise ParseError(msg)
                return letters, pos
            if kind == "gen":
                factor: Word = ((value, 1),)
                pos += 1
            elif kind == "open":
                factor, pos = sequence(pos + 1, nested=True)
                if pos >= len(tokens) or tokens[pos][0] != "close":
                    msg = f"unclosed '(' in {text!r}"
                    raise ParseError(msg)
                pos += 1
            else:
                msg = f"exponent without a base in {text!r}"
                raise ParseError(msg)
            if pos < len(tokens) and tokens[pos][0] == "pow":
                factor = power_word(factor, tokens[pos][1])
                pos += 1
            letters = reduce_word(letters + factor)
        if nested:
            msg = f"unclosed '(' in {text!r}"
            raise ParseError(msg)
        return letters, pos

    word, _ = sequence(0, nested=False)
    return word


def format_word(word: Word) -> str:
    """Inverse of parse_word, up to free reduction."""
    if not word:
        return "1"
    return "".join(f"x{g + 1}" + (f"^{e}" if e != 1 else "") for g, e in word)


def parse_relations(text: str) -> tuple[Word, ...]:
    """Parses a chain ``w1=w2=...=1`` into the relators w1, w2, ...

    Raises:
        ParseError: if some part is not a word.
    """
    parts = [part.strip() for part in text.split("=")]
    return tuple(parse_word(part) for part in parts if part not in {"", "1"})


@dataclass(slots=True, frozen=True, kw_only=True)
class Presentation:
    """Generators x_1..x_k subject to relators, each equal to the identity."""

    """Label used in logs and reports"""
    name: str

    """Number of generators"""
    generators: int

    """Relators as reduced words"""
    relators: tuple[Word, ...]

    @classmethod
    def from_text(cls, name: str, text: str) -> Presentation:
        """Builds a presentation from a printed relation chain.

        The number of generators is the largest index that occurs.
        """
        relators = parse_relations(text)
        generators = 1 + max((g for word in relators for g, _ in word), default=-1)
        return cls(name=name, generators=generators, relators=relators)

    def relator_texts(self) -> tuple[str, ...]:
        """Relators in text form."""
        return tuple(format_word(word) for word in self.relators)

    def power_bound(self, generator: int) -> int | None:
        """The exponent e of a relator x^e on this generator alone, if any."""
        bounds = [
            abs(word[0][1])
            for word in self.relators
            if len(word) == 1 and word[0][0] == generator
        ]
        return min(bounds) if bounds else None


def evaluate_word[T](
    word: Word,
    images: Sequence[T],
    *,
    mul: Callable[[T, T], T],
    inverse: Callable[[T], T],
    unit: T,
) -> T:
    """The element a word takes when x_i is sent to images[i]."""
    result = unit
    for g, e in word:
        base = images[g] if e > 0 else inverse(images[g])
        for _ in range(abs(e)):
            result = mul(result, base)
    return result


def _table_evaluator(
    table: FiniteGroupTable[Any],
) -> Callable[[Word, Sequence[int]], int]:
    def evaluate(word: Word, images: Sequence[int]) -> int:
        return evaluate_word(
            word,
            images,
            mul=table.multiply,
            inverse=lambda x: int(table.inverses[x]),
            unit=0,
        )

    return evaluate


def relators_hold(
    table: FiniteGroupTable[Any], presentation: Presentation, images: Sequence[int]
) -> bool:
    """True when every relator evaluates to the identity on ``images``."""
    evaluate = _table_evaluator(table)
    return all(evaluate(word, images) == 0 for word in presentation.relators)


def verify_witness(
    table: FiniteGroupTable[Any], presentation: Presentation, images: Sequence[int]
) -> bool:
    """Relators plus generation, checked from scratch."""
    if len(images) != presentation.generators:
        return False
    if not relators_hold(table, presentation, images):
        return False
    return table.subgroup(list(images)).order == table.order


@dataclass(slots=True, frozen=True, kw_only=True)
class Witness[T]:
    """Elements realizing a presentation in a concrete group."""

    """Name of the presentation"""
    presentation: str

    """Image of every generator"""
    images: tuple[T, ...]

    """Order of the group they generate"""
    group_order: int


@dataclass(slots=True, frozen=True, kw_only=True)
class WitnessSearch:
    """Outcome of a brute-force witness search."""

    """The first witness in lexicographic id order, if one was found"""
    witness: Witness[int] | None

    """Partial and complete tuples visited"""
    visited: int

    """Why the search stopped"""
    reason: str


def search_witness(
    table: FiniteGroupTable[Any],
    presentation: Presentation,
    *,
    expected_order: int | None = None,
    budget: int = WITNESS_SEARCH_BUDGET,
) -> WitnessSearch:
    """Backtracking search for a generating tuple satisfying a presentation.

    Generators are assigned in order, candidates in increasing id order,
    filtered by the element order any pure power relator forces. A relator
    is evaluated as soon as all of its generators are assigned. A complete
    tuple must generate the whole table, and when ``expected_order`` is
    given the table must have exactly that order, so the witness shows the
    group is the presented one and not a proper quotient.
    """
    start = time.perf_counter()
    rank = presentation.generators
    if expected_order is not None and table.order != expected_order:
        reason = f"group order {table.order} differs from {expected_order}"
        return WitnessSearch(witness=None, visited=0, reason=reason)
    if table.order > WITNESS_ORDER_LIMIT or rank > WITNESS_RANK_LIMIT:
        reason = (
            f"order {table.order} with {rank} generators is outside the "
            f"brute-force limits ({WITNESS_ORDER_LIMIT}, {WITNESS_RANK_LIMIT})"
        )
        return WitnessSearch(witness=None, visited=0, reason=reason)
    if table.order <= CAYLEY_TABLE_LIMIT:
        table.cayley_table()

    orders = table.element_orders
    candidates: list[list[int]] = []
    for g in range(rank):
        bound = presentation.power_bound(g)
        candidates.append(
            [
                x
                for x in range(1, table.order)
                if bound is None or bound % int(orders[x]) == 0
            ]
        )
    due: list[list[Word]] = [[] for _ in range(rank)]
    for word in presentation.relators:
        if word:
            due[max(g for g, _ in word)].append(word)

    evaluate = _table_evaluator(table)
    images: list[int] = []
    visited = 0
    satisfying = 0

    def extend(level: int) -> tuple[int, ...] | None:
        nonlocal visited, satisfying
        for x in candidates[level]:
            if visited >= budget:
                return None
            visited += 1
            images.append(x)
            if all(evaluate(word, images) == 0 for word in due[level]):
                if level + 1 < rank:
                    found = extend(level + 1)
                    if found is not None:
                        return found
                else:
                    satisfying += 1
                    if table.subgroup(images).order == table.order:
                        return tuple(images)
            images.pop()
        return None

    found = extend(0) if rank else None
    if found is not None:
        witness = Witness(
            presentation=presentation.name, images=found, group_order=table.order
        )
        reason = "found"
    else:
        witness = None
        if visited >= budget:
            reason = f"budget of {budget} candidates exhausted"
        elif satisfying:
            reason = (
                f"{satisfying} tuple(s) satisfy the relators but none generates "
                f"{table.name}"
            )
        else:
            reason = "no tuple satisfies the relators"
    logger.info(
        "witness search finished",
        group=table.name,
        presentation=presentation.name,
        found=witness is not None,
        visited=visited,
        seconds=round(time.perf_counter() - start, 3),
    )
    return WitnessSearch(witness=witness, visited=visited, reason=reason)
