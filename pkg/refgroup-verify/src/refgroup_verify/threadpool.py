from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from collections.abc import Callable, Sequence


def map_ordered[T, R](
    func: Callable[[T], R], items: Sequence[T], *, workers: int
) -> list[R]:
    """Applies ``func`` to every item on up to ``workers`` threads.

    Results come back in the order of ``items`` whatever order the threads
    finish in. One worker runs everything on the calling thread.
    """
    if workers <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(
        max_workers=workers, thread_name_prefix="refgroup-claim"
    ) as executor:
        return list(executor.map(func, items))
