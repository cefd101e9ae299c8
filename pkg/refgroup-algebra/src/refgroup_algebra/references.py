"""Reference groups that identifications are checked against.

Symmetric and alternating groups as permutations, GL(n, p) and SL(n, p)
over prime fields, cyclic groups and direct products of tables.
"""

from __future__ import annotations

import itertools
from typing import TYPE_CHECKING, Any

from refgroup_core.backends import ElementBackend
from refgroup_core.permutation import (
    Permutation,
    perm_group_table,
    schreier_sims,
)
from refgroup_core.table import enumerate_group

if TYPE_CHECKING:
    from refgroup_core.permutation import BaseStrongGenSet
    from refgroup_core.table import FiniteGroupTable

type Matrix = tuple[tuple[int, ...], ...]


def cyclic_group(n: int) -> FiniteGroupTable[list[int]]:
    """Z_n as residues under addition."""
    backend = ElementBackend[int](
        mul=lambda a, b: (a + b) % n, inv=lambda a: -a % n, unit=0
    )
    return enumerate_group(backend, [1 % n], name=f"Z{n}")


def symmetric_group(n: int) -> BaseStrongGenSet:
    """S_n generated by (0 1) and (0 1 ... n-1)."""
    gens = []
    if n > 1:
        gens = [
            Permutation.from_cycles([(0, 1)], n),
            Permutation.from_cycles([tuple(range(n))], n),
        ]
    return schreier_sims(gens, degree=n)


def alternating_group(n: int) -> BaseStrongGenSet:
    """A_n generated by the 3-cycles (0 1 k)."""
    gens = [Permutation.from_cycles([(0, 1, k)], n) for k in range(2, n)]
    return schreier_sims(gens, degree=n)


def symmetric_table(n: int) -> FiniteGroupTable[list[Permutation]]:
    """S_n as a table."""
    return perm_group_table(symmetric_group(n), name=f"S{n}")


def _mat_mul(a: Matrix, b: Matrix, p: int) -> Matrix:
    columns = list(zip(*b, strict=True))
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col, strict=True)) % p for col in columns)
        for row in a
    )


def _mat_inv(a: Matrix, p: int) -> Matrix:
    """Gauss-Jordan inverse over F_p."""
    n = len(a)
    rows = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        pivot = next(r for r in range(col, n) if rows[r][col] % p)
        rows[col], rows[pivot] = rows[pivot], rows[col]
        scale = pow(rows[col][col], -1, p)
        rows[col] = [v * scale % p for v in rows[col]]
        for r in range(n):
            if r != col and rows[r][col]:
                factor = rows[r][col]
                rows[r] = [
                    (v - factor * w) % p
                    for v, w in zip(rows[r], rows[col], strict=True)
                ]
    return tuple(tuple(row[n:]) for row in rows)


def _primitive_root(p: int) -> int:
    for g in range(1, p):
        if len({pow(g, k, p) for k in range(1, p)}) == p - 1:
            return g
    return 1


def _transvections(n: int) -> list[Matrix]:
    out = []
    for i, j in itertools.permutations(range(n), 2):
        rows = [[int(r == c) for c in range(n)] for r in range(n)]
        rows[i][j] = 1
        out.append(tuple(tuple(row) for row in rows))
    return out


def _matrix_group(
    generators: list[Matrix], n: int, p: int, name: str
) -> FiniteGroupTable[list[Matrix]]:
    backend = ElementBackend[Matrix](
        mul=lambda a, b: _mat_mul(a, b, p),
        inv=lambda a: _mat_inv(a, p),
        unit=tuple(tuple(int(r == c) for c in range(n)) for r in range(n)),
    )
    return enumerate_group(backend, generators, name=name)


def special_linear_group(n: int, p: int) -> FiniteGroupTable[list[Matrix]]:
    """SL(n, p), generated by the elementary transvections."""
    return _matrix_group(_transvections(n), n, p, f"SL({n},{p})")


def general_linear_group(n: int, p: int) -> FiniteGroupTable[list[Matrix]]:
    """GL(n, p): transvections plus diag(w, 1, ..., 1) for a primitive root w."""
    gens = _transvections(n)
    w = _primitive_root(p)
    if w != 1:
        rows = [[int(r == c) for c in range(n)] for r in range(n)]
        rows[0][0] = w
        gens.append(tuple(tuple(row) for row in rows))
    return _matrix_group(gens, n, p, f"GL({n},{p})")


def general_linear_order(n: int, q: int) -> int:
    """|GL(n, q)| = prod over i < n of (q^n - q^i)."""
    result = 1
    for i in range(n):
        result *= q**n - q**i
    return result


def direct_product(
    a: FiniteGroupTable[Any], b: FiniteGroupTable[Any], *, name: str | None = None
) -> FiniteGroupTable[list[tuple[int, int]]]:
    """A x B on pairs of ids."""
    backend = ElementBackend[tuple[int, int]](
        mul=lambda x, y: (a.multiply(x[0], y[0]), b.multiply(x[1], y[1])),
        inv=lambda x: (int(a.inverses[x[0]]), int(b.inverses[x[1]])),
        unit=(0, 0),
    )
    gens = [(g, 0) for g in a.generators] + [(0, h) for h in b.generators]
    return enumerate_group(
        backend,
        gens or [(0, 0)],
        name=name or f"{a.name}x{b.name}",
        cap=a.order * b.order,
    )
