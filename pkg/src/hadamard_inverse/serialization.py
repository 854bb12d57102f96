"""JSON and CSV artifacts.

Complex numbers are written as ``[re, im]`` pairs and every JSON document carries
``"schema": 1``. Keys are sorted and separators fixed, so equal inputs give byte-identical
files.
"""

from __future__ import annotations

__all__ = [
    "SCHEMA_VERSION",
    "document",
    "dumps_json",
    "germ_from_dict",
    "germ_to_dict",
    "jet_from_dict",
    "jet_to_dict",
    "load_germ_file",
    "operator_to_dict",
    "pair",
    "rational_from_dict",
    "rational_to_dict",
    "resolve_germ",
    "unpair",
    "write_csv",
]

import csv
import io
import json
import logging
from collections.abc import Iterable, Sequence
from pathlib import Path
from typing import Any

import numpy as np

from .exceptions import OrderUnderflowError, UnknownGermError
from .germ_catalog import CatalogGerm, RationalGerm, parse_germ, rational_catalog
from .germ_core import TruncatedGerm
from .ode_builder import EulerOperator
from .volterra_engine import SingularJet

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1


def pair(value: complex) -> list[float]:
    value = complex(value)
    return [float(value.real), float(value.imag)]


def unpair(value: Sequence[float] | float) -> complex:
    if isinstance(value, int | float):
        return complex(value)
    re, im = value
    return complex(re, im)


def _pairs(values: Iterable[complex]) -> list[list[float]]:
    return [pair(v) for v in values]


def germ_to_dict(germ: TruncatedGerm) -> dict[str, Any]:
    return {"kind": "truncated", "coeffs": _pairs(germ.coeffs)}


def germ_from_dict(data: dict[str, Any]) -> TruncatedGerm:
    return TruncatedGerm([unpair(c) for c in data["coeffs"]])


def rational_to_dict(r: RationalGerm) -> dict[str, Any]:
    return {
        "kind": "rational",
        "pole": pair(r.pole),
        "pole_coeffs": _pairs(r.pole_coeffs),
        "poly_part": _pairs(r.poly_part),
    }


def rational_from_dict(data: dict[str, Any]) -> RationalGerm:
    return RationalGerm(
        unpair(data["pole"]),
        tuple(unpair(a) for a in data["pole_coeffs"]),
        tuple(unpair(c) for c in data.get("poly_part", [])),
    )


def operator_to_dict(op: EulerOperator) -> dict[str, Any]:
    return {"omega": pair(op.omega), "coeffs": _pairs(op.coeffs)}


def jet_to_dict(jet: SingularJet) -> dict[str, Any]:
    return {
        "base": pair(jet.base),
        "residue": pair(jet.residue),
        "log_jet": _pairs(jet.log_jet.coeffs),
        "regular_jet": _pairs(jet.regular_jet.coeffs),
    }


def jet_from_dict(data: dict[str, Any]) -> SingularJet:
    return SingularJet(
        unpair(data["base"]),
        unpair(data["residue"]),
        TruncatedGerm([unpair(c) for c in data["log_jet"]]),
        TruncatedGerm([unpair(c) for c in data.get("regular_jet", [[0.0, 0.0]])]),
    )


def document(payload: dict[str, Any]) -> dict[str, Any]:
    """Wrap a payload with the schema version."""
    return {"schema": SCHEMA_VERSION, **payload}


def _plain(value: Any) -> Any:
    if isinstance(value, complex | np.complexfloating):
        return pair(value)
    if isinstance(value, np.floating | np.integer | np.bool_):
        return value.item()
    if isinstance(value, np.ndarray):
        return [_plain(v) for v in value.tolist()]
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, list | tuple):
        return [_plain(v) for v in value]
    return value


def dumps_json(doc: dict[str, Any]) -> str:
    """Serialise deterministically; complex values anywhere become pairs."""
    return json.dumps(_plain(doc), sort_keys=True, indent=2, separators=(",", ": "), allow_nan=True) + "\n"


def write_csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    """Render rows as CSV text with ``repr``-exact floats."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([repr(float(v)) if isinstance(v, float | np.floating) else v for v in row])
    return buffer.getvalue()


def load_germ_file(path: Path) -> TruncatedGerm | RationalGerm:
    """Read a germ document of kind ``truncated`` or ``rational``.

    Raises:
        UnknownGermError: Unreadable file, wrong schema or unknown kind
    """
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise UnknownGermError(f"cannot read germ file {path}: {e}") from e
    if data.get("schema") != SCHEMA_VERSION:
        raise UnknownGermError(f"{path}: unsupported schema {data.get('schema')!r}")
    kind = data.get("kind")
    try:
        if kind == "truncated":
            return germ_from_dict(data)
        if kind == "rational":
            return rational_from_dict(data)
    except (KeyError, TypeError, ValueError) as e:
        raise UnknownGermError(f"{path}: malformed {kind} germ: {e}") from e
    raise UnknownGermError(f"{path}: unknown germ kind {kind!r}")


def resolve_germ(text: str) -> CatalogGerm:
    """Catalog name or path to a ``.json`` germ file."""
    if not text.endswith(".json"):
        return parse_germ(text)
    loaded = load_germ_file(Path(text))
    if isinstance(loaded, RationalGerm):
        return rational_catalog(text, loaded)

    def rule(count: int) -> TruncatedGerm:
        if count > loaded.order:
            raise OrderUnderflowError(f"{text} holds {loaded.order} coefficients, {count} requested")
        return loaded.truncate(count)

    logger.debug(f"Loaded truncated germ of order {loaded.order} from {text}")
    return CatalogGerm(name=text, coefficient_rule=rule, evaluator=lambda z: np.asarray(loaded.partial_sum(z)))
