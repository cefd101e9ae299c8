"""Type definitions."""

from collections.abc import Hashable, Iterable

import numpy as np
import numpy.typing as npt

type ElementId = int
type ElementKey = Hashable
type IdArray = npt.NDArray[np.int64]
type Images = tuple[int, ...]
type Letter = tuple[int, int]
type Word = tuple[Letter, ...]
type IdLike = Iterable[int] | IdArray | int
type IntMatrix = tuple[tuple[int, ...], ...]
