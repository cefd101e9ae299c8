"""Settings for a verification run, resolved from flags and the environment.

Flags win over environment variables, which win over the defaults. Only
the cache directory and the worker count can come from the environment.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from enum import StrEnum
from pathlib import Path
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from collections.abc import Mapping

CACHE_DIR_ENV = "REFGROUP_CACHE_DIR"
WORKERS_ENV = "REFGROUP_WORKERS"
DEFAULT_CACHE_DIR = Path(".refgroup-cache")


class ReportFormat(StrEnum):
    """Report layouts."""

    HUMAN = "human"
    MACHINE = "machine"


@dataclass(slots=True, frozen=True, kw_only=True)
class Settings:
    """Resolved settings for one run."""

    """Where computed values are cached; None turns the cache off"""
    cache_dir: Path | None = DEFAULT_CACHE_DIR

    """Claims evaluated in parallel"""
    workers: int = 1

    report_format: ReportFormat = ReportFormat.HUMAN

    """Whether machine records carry wall times"""
    timings: bool = False

    @classmethod
    def resolve(
        cls,
        *,
        cache: str | None = None,
        no_cache: bool = False,
        workers: int | None = None,
        report_format: ReportFormat | str = ReportFormat.HUMAN,
        timings: bool = False,
        environ: Mapping[str, str] | None = None,
    ) -> Settings:
        """Combines command line values with the environment.

        Raises:
            ValueError: if the worker count is not a positive integer.
        """
        env = os.environ if environ is None else environ
        cache_dir: Path | None = None
        if not no_cache:
            cache_dir = Path(cache or env.get(CACHE_DIR_ENV) or DEFAULT_CACHE_DIR)
        if workers is None:
            raw = env.get(WORKERS_ENV, "1")
            try:
                workers = int(raw)
            except ValueError:
                msg = f"{WORKERS_ENV} must be an integer, got {raw!r}"
                raise ValueError(msg) from None
        if workers < 1:
            msg = f"worker count must be at least 1, got {workers}"
            raise ValueError(msg)
        return cls(
            cache_dir=cache_dir,
            workers=workers,
            report_format=ReportFormat(report_format),
            timings=timings,
        )
