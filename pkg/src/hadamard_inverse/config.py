"""Numerical configuration and run-ledger persistence."""

from __future__ import annotations

__all__ = ["DEFAULT_CONFIG", "NumericsConfig", "RunLedger"]

import contextlib
import logging
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Any

from tinydb import Query, TinyDB

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class NumericsConfig:
    """Thresholds shared by every module.

    All values are configurable; operations accept ``config=None`` and fall back to ``DEFAULT_CONFIG``.
    """

    # germ_core
    zero_threshold: float = 1e-300  # |f_n| below this counts as a vanishing coefficient

    # germ_catalog
    root_of_unity_order: int = 10**6  # largest k checked for p^k = 1
    root_of_unity_tol: float = 1e-9  # |p^k - 1| below this flags a root of unity
    unit_modulus_tol: float = 1e-12  # tolerance on |p| = 1
    ladder_tail_tol: float = 1e-16  # relative cut-off of the geometric ladder m-sum

    # ode_builder
    log_form_threshold: int = 10**4  # switch to log-magnitude residuals above this index

    # contour_quadrature
    quadrature_nodes: int = 256  # default trapezoid nodes
    quadrature_max_nodes: int = 8192  # refinement ceiling
    quadrature_tol: float = 1e-10  # Cauchy difference stopping refinement
    contour_margin: float = 0.05  # minimum distance contour/singular point, in units of radius

    # volterra_engine
    small_residue_ratio: float = 1e-6  # warn when |A| < ratio * ||f1||

    # singularity_scope
    pade_rank_tol: float = 1e-12  # relative pivot below which the Toeplitz system is rank-deficient
    pade_defect_tol: float = 1e-10  # relative residual above which a Padé solve fails
    froissart_tol: float = 1e-8  # pole/zero distance flagging a Froissart doublet
    root_tol: float = 1e-10  # backward-error certificate for polynomial roots
    aberth_max_iter: int = 500  # simultaneous iteration budget
    stability_tol: float = 1e-3  # pole drift allowed between sweep orders
    ratio_window: int = 10  # trailing estimates used for the ratio-test spread
    oscillation_tol: float = 1e-2  # relative spread flagging oscillatory ratios

    def with_overrides(self, **overrides: Any) -> NumericsConfig:
        """Return a copy with selected fields replaced."""
        return replace(self, **overrides)


DEFAULT_CONFIG = NumericsConfig()


class RunLedger:
    """Persistent store of CLI artifacts.

    Uses Repository pattern to encapsulate TinyDB operations. Each record is keyed by run name.

    Supports context manager protocol for automatic resource cleanup:
        with RunLedger(Path("runs.json")) as ledger:
            ledger.save("example2-inverse", payload)
    """

    def __init__(self, db_path: Path | None = None) -> None:
        """Initialize the ledger.

        Args:
            db_path: Database file path, defaults to hadamard_runs.json in current directory
        """
        if db_path is None:
            db_path = Path("hadamard_runs.json")

        self._db_path = db_path
        self._db: TinyDB | None = TinyDB(str(db_path))
        self._table = self._db.table("runs")
        logger.debug(f"Run ledger opened: {db_path}")

    def __enter__(self) -> RunLedger:
        """Enter context manager."""
        return self

    def __exit__(self, exc_type, exc_val, exc_tb) -> None:
        """Exit context manager and close database."""
        self.close()

    def __del__(self) -> None:
        with contextlib.suppress(Exception):
            if getattr(self, "_db", None) is not None:
                self._db.close()

    def save(self, run: str, payload: dict[str, Any]) -> None:
        """Save or replace the artifact of a run.

        Args:
            run: Run name
            payload: JSON-ready artifact
        """
        query = Query()
        record = {"run": run, "payload": payload}
        if self._table.search(query.run == run):
            self._table.update(record, query.run == run)
            logger.info(f"Updated ledger entry {run}")
        else:
            self._table.insert(record)
            logger.info(f"Recorded ledger entry {run}")

    def load(self, run: str) -> dict[str, Any] | None:
        """Load the artifact of a run, or None if absent."""
        result = self._table.search(Query().run == run)
        if not result:
            logger.debug(f"No ledger entry for {run}")
            return None
        return result[0]["payload"]

    def delete(self, run: str) -> bool:
        """Delete a run; returns whether anything was removed."""
        removed = self._table.remove(Query().run == run)
        return bool(removed)

    def list_all(self) -> dict[str, dict[str, Any]]:
        """Mapping from run name to artifact."""
        return {record["run"]: record["payload"] for record in self._table.all()}

    def close(self) -> None:
        """Close database connection."""
        if getattr(self, "_db", None) is not None:
            self._db.close()
            self._db = None
            logger.debug("Run ledger closed")
