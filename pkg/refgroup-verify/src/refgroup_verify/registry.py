"""Loading and filtering claim registries."""

from __future__ import annotations

from importlib import resources
from typing import TYPE_CHECKING

from pydantic import ValidationError

from refgroup_core.log import get_logger
from refgroup_verify.exceptions import RegistryParseError
from refgroup_verify.models import Registry

if TYPE_CHECKING:
    from pathlib import Path

    from refgroup_verify.models import Claim

logger = get_logger(__name__)

DEFAULT_REGISTRY = "registry.json"


def _read_default() -> bytes:
    shipped = resources.files("refgroup_verify").joinpath("data", DEFAULT_REGISTRY)
    return shipped.read_bytes()


def load_registry(path: Path | None = None) -> Registry:
    """Reads and validates a registry, the shipped one when ``path`` is None.

    Raises:
        RegistryParseError: if the file is missing, is not JSON, or a record
            fails validation.
    """
    source = "<shipped registry>" if path is None else str(path)
    try:
        raw = _read_default() if path is None else path.read_bytes()
    except OSError as e:
        msg = f"cannot read registry {source}: {e}"
        raise RegistryParseError(msg) from e
    try:
        registry = Registry.model_validate_json(raw)
    except ValidationError as e:
        msg = f"invalid registry {source}: {e.error_count()} errors\n{e}"
        raise RegistryParseError(msg) from e
    logger.info("registry loaded", source=source, claims=len(registry.claims))
    return registry


def filter_claims(registry: Registry, prefix: str | None) -> list[Claim]:
    """Claims whose id starts with ``prefix``, in registry order."""
    if not prefix:
        return list(registry.claims)
    return [claim for claim in registry.claims if claim.id.startswith(prefix)]
