"""Two-way contingency tables and maximum-likelihood probability estimates.

A :class:`ContingencyTable` is an immutable I x J matrix of nonnegative
integer counts with row and column labels. Estimation turns counts into
joint, marginal, and conditional probability estimates; the estimates are
the usual maximum-likelihood ones (cell count over the relevant total).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Literal, Sequence

import numpy as np

__all__ = [
    "ContingencyTable",
    "ProbabilityEstimates",
    "Record",
    "crosstab",
    "expand_records",
    "joint_probabilities",
    "conditional_probabilities",
]

# One raw observation: (row category, column category).
Record = tuple[str, str]

_COHERENCE_TOL = 1e-12


def _frozen_int_matrix(values) -> np.ndarray:
    arr = np.asarray(values)
    if arr.ndim != 2:
        raise ValueError(f"counts must be a 2-D matrix, got shape {arr.shape}")
    if arr.size and not np.issubdtype(arr.dtype, np.integer):
        if not np.all(arr == np.floor(arr)):
            raise ValueError("counts must be integers")
    arr = arr.astype(np.int64)
    arr.setflags(write=False)
    return arr


def _unique_labels(labels: Sequence[str], expected: int, axis: str) -> tuple[str, ...]:
    out = tuple(str(lab) for lab in labels)
    if len(out) != expected:
        raise ValueError(f"expected {expected} {axis} labels, got {len(out)}")
    if len(set(out)) != len(out):
        raise ValueError(f"duplicate {axis} labels: {out}")
    return out


@dataclass(frozen=True)
class ContingencyTable:
    """Cross-classification of two categorical variables.

    Attributes
    ----------
    counts : (I, J) int matrix, I >= 2 and J >= 2, all entries >= 0,
        grand total >= 1.
    row_labels, col_labels : category names, in table order.
    row_ordinal, col_ordinal : whether the categories carry a meaningful
        order (enables default integer scores for linear-association
        tests).
    """

    counts: np.ndarray
    row_labels: tuple[str, ...]
    col_labels: tuple[str, ...]
    row_ordinal: bool = False
    col_ordinal: bool = False

    def __post_init__(self) -> None:
        counts = _frozen_int_matrix(self.counts)
        n_rows, n_cols = counts.shape
        if n_rows < 2:
            raise ValueError("at least 2 rows required")
        if n_cols < 2:
            raise ValueError("at least 2 columns required")
        if np.any(counts < 0):
            i, j = map(int, np.argwhere(counts < 0)[0])
            raise ValueError(f"negative count {counts[i, j]} at cell ({i}, {j})")
        if int(counts.sum()) < 1:
            raise ValueError("table total must be at least 1")
        object.__setattr__(self, "counts", counts)
        object.__setattr__(self, "row_labels",
                           _unique_labels(self.row_labels, n_rows, "row"))
        object.__setattr__(self, "col_labels",
                           _unique_labels(self.col_labels, n_cols, "column"))

    @property
    def n_rows(self) -> int:
        return self.counts.shape[0]

    @property
    def n_cols(self) -> int:
        return self.counts.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.counts.shape

    @property
    def row_totals(self) -> np.ndarray:
        return self.counts.sum(axis=1)

    @property
    def col_totals(self) -> np.ndarray:
        return self.counts.sum(axis=0)

    def row_total(self, i: int) -> int:
        return int(self.row_totals[i])

    def col_total(self, j: int) -> int:
        return int(self.col_totals[j])

    def total(self) -> int:
        """Grand total n."""
        return int(self.counts.sum())


@dataclass(frozen=True)
class ProbabilityEstimates:
    """Maximum-likelihood joint and marginal probability estimates."""

    joint: np.ndarray
    row_marginal: np.ndarray
    col_marginal: np.ndarray
    source: ContingencyTable

    def __post_init__(self) -> None:
        joint = np.asarray(self.joint, dtype=float)
        rows = np.asarray(self.row_marginal, dtype=float)
        cols = np.asarray(self.col_marginal, dtype=float)
        if abs(joint.sum() - 1.0) > _COHERENCE_TOL:
            raise ValueError(f"joint probabilities sum to {joint.sum()!r}, not 1")
        if np.max(np.abs(joint.sum(axis=1) - rows)) > _COHERENCE_TOL:
            raise ValueError("row marginals inconsistent with joint matrix")
        if np.max(np.abs(joint.sum(axis=0) - cols)) > _COHERENCE_TOL:
            raise ValueError("column marginals inconsistent with joint matrix")
        for arr in (joint, rows, cols):
            arr.setflags(write=False)
        object.__setattr__(self, "joint", joint)
        object.__setattr__(self, "row_marginal", rows)
        object.__setattr__(self, "col_marginal", cols)


def crosstab(
    records: Iterable[Record],
    row_order: Sequence[str] | None = None,
    col_order: Sequence[str] | None = None,
    *,
    row_ordinal: bool = False,
    col_ordinal: bool = False,
) -> ContingencyTable:
    """Cross-tabulate raw (row category, column category) records.

    Labels follow ``row_order``/``col_order`` when given (a record whose
    category is missing from an explicit order is an error); otherwise
    the distinct observed labels are sorted lexicographically. The table
    total always equals the number of records.
    """
    records = [(str(r), str(c)) for r, c in records]
    if not records:
        raise ValueError("cannot cross-tabulate an empty record set")
    row_labels = _resolve_order((r for r, _ in records), row_order, "row")
    col_labels = _resolve_order((c for _, c in records), col_order, "column")
    row_index = {lab: i for i, lab in enumerate(row_labels)}
    col_index = {lab: j for j, lab in enumerate(col_labels)}
    counts = np.zeros((len(row_labels), len(col_labels)), dtype=np.int64)
    for r, c in records:
        counts[row_index[r], col_index[c]] += 1
    return ContingencyTable(counts, row_labels, col_labels,
                            row_ordinal=row_ordinal, col_ordinal=col_ordinal)


def _resolve_order(values: Iterable[str], order: Sequence[str] | None,
                   axis: str) -> tuple[str, ...]:
    observed = set(values)
    if order is None:
        return tuple(sorted(observed))
    labels = tuple(str(lab) for lab in order)
    if len(set(labels)) != len(labels):
        raise ValueError(f"duplicate labels in explicit {axis} order: {labels}")
    missing = observed.difference(labels)
    if missing:
        raise ValueError(
            f"{axis} category {sorted(missing)[0]!r} does not appear in the "
            f"explicit {axis} order {list(labels)}")
    return labels


def expand_records(table: ContingencyTable) -> list[Record]:
    """Expand a count table back into one record per observation,
    in row-major cell order. Inverse of :func:`crosstab` under the
    table's own label order."""
    out: list[Record] = []
    for i, row_lab in enumerate(table.row_labels):
        for j, col_lab in enumerate(table.col_labels):
            out.extend([(row_lab, col_lab)] * int(table.counts[i, j]))
    return out


def joint_probabilities(table: ContingencyTable) -> ProbabilityEstimates:
    """ML estimates of the joint cell probabilities (count / n) together
    with the row and column marginals."""
    n = table.total()
    joint = table.counts / n
    return ProbabilityEstimates(
        joint=joint,
        row_marginal=joint.sum(axis=1),
        col_marginal=joint.sum(axis=0),
        source=table,
    )


def conditional_probabilities(
    table: ContingencyTable,
    given: Literal["rows", "cols"] = "rows",
) -> np.ndarray:
    """ML estimates of conditional probabilities.

    ``given="rows"`` returns the matrix of P(column j | row i), each row
    summing to 1; ``given="cols"`` returns P(row i | column j), each
    column summing to 1. Conditioning on an empty category is an error.
    """
    if given == "rows":
        margins = table.row_totals
        if np.any(margins == 0):
            lab = table.row_labels[int(np.argmin(margins))]
            raise ValueError(f"cannot condition on empty row {lab!r}")
        out = table.counts / margins[:, None]
    elif given == "cols":
        margins = table.col_totals
        if np.any(margins == 0):
            lab = table.col_labels[int(np.argmin(margins))]
            raise ValueError(f"cannot condition on empty column {lab!r}")
        out = table.counts / margins[None, :]
    else:
        raise ValueError(f"given must be 'rows' or 'cols', got {given!r}")
    out.setflags(write=False)
    return out
