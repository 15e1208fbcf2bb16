"""
Protograph-level objects for Type-I spatially-coupled LDPC codes.

A fully connected gamma x kappa base matrix is split into component
matrices H_0..H_m by a partition matrix P (P(i, j) = l puts edge (i, j)
into H_l). Stacking the components along a diagonal band of L block
columns gives the terminated coupled matrix H_SC of size
(L + m) * gamma x L * kappa.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidArgumentError, InvalidPartitionError, ResourceError

DENSE_CELL_LIMIT = 10**8


@dataclass(frozen=True)
class BaseGraph:
    """Fully connected bipartite base graph with ``gamma`` check and ``kappa`` variable types."""

    gamma: int
    kappa: int

    def __post_init__(self):
        for name in ("gamma", "kappa"):
            v = getattr(self, name)
            if not isinstance(v, (int, np.integer)) or isinstance(v, bool) or v < 1:
                raise InvalidArgumentError(f"{name} must be a positive integer, got {v!r}")

    @property
    def shape(self) -> tuple[int, int]:
        return (self.gamma, self.kappa)

    @property
    def n_edges(self) -> int:
        return self.gamma * self.kappa

    def edges(self) -> list[tuple[int, int]]:
        """Edges in row-major order; edge (i, j) has index i * kappa + j."""
        return [(i, j) for i in range(self.gamma) for j in range(self.kappa)]

    def edge_index(self, i: int, j: int) -> int:
        return i * self.kappa + j

    def to_json(self) -> dict:
        return {"gamma": self.gamma, "kappa": self.kappa}

    @classmethod
    def from_json(cls, obj: dict) -> "BaseGraph":
        return cls(int(obj["gamma"]), int(obj["kappa"]))


def make_base_graph(gamma: int, kappa: int) -> BaseGraph:
    return BaseGraph(gamma, kappa)


@dataclass(frozen=True)
class CouplingPattern:
    """Admissible component indices 0 = a_0 < a_1 < ... < a_{m_t} = m."""

    values: tuple[int, ...]

    def __post_init__(self):
        vals = tuple(int(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if not vals:
            raise InvalidArgumentError("coupling pattern must be nonempty")
        if vals[0] != 0:
            raise InvalidArgumentError(f"coupling pattern must start at 0, got {vals[0]}")
        if any(b <= a for a, b in zip(vals, vals[1:])):
            raise InvalidArgumentError(f"coupling pattern must be strictly increasing: {vals}")

    @classmethod
    def consecutive(cls, m: int) -> "CouplingPattern":
        if m < 0:
            raise InvalidArgumentError(f"memory must be non-negative, got {m}")
        return cls(tuple(range(m + 1)))

    @property
    def m_t(self) -> int:
        return len(self.values) - 1

    @property
    def m(self) -> int:
        return self.values[-1]

    @property
    def value_set(self) -> frozenset[int]:
        return frozenset(self.values)

    def __contains__(self, v) -> bool:
        return v in self.value_set

    def to_json(self) -> list[int]:
        return list(self.values)

    @classmethod
    def from_json(cls, obj) -> "CouplingPattern":
        if isinstance(obj, dict):
            obj = obj["values"]
        return cls(tuple(obj))

    @classmethod
    def parse(cls, text: str) -> "CouplingPattern":
        """Parse ``"consecutive:m"`` or a comma-separated list such as ``"0,2,5"``."""
        text = text.strip()
        if text.startswith("consecutive:"):
            return cls.consecutive(int(text.split(":", 1)[1]))
        return cls(tuple(int(t) for t in text.split(",") if t.strip()))


@dataclass(frozen=True)
class PartitionMatrix:
    """gamma x kappa grid of component indices, stored row-major as nested tuples."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(v) for v in row) for row in self.entries)
        if not rows or not rows[0]:
            raise InvalidArgumentError("partition matrix must be nonempty")
        if any(len(r) != len(rows[0]) for r in rows):
            raise InvalidArgumentError("partition matrix rows have unequal lengths")
        if any(v < 0 for r in rows for v in r):
            raise InvalidArgumentError("partition matrix entries must be non-negative")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def from_array(cls, arr) -> "PartitionMatrix":
        arr = np.asarray(arr)
        if arr.ndim != 2:
            raise InvalidArgumentError(f"partition matrix must be 2-D, got shape {arr.shape}")
        return cls(tuple(tuple(int(v) for v in row) for row in arr))

    @classmethod
    def zeros(cls, base: BaseGraph) -> "PartitionMatrix":
        return cls(tuple((0,) * base.kappa for _ in range(base.gamma)))

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.entries), len(self.entries[0]))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    def as_array(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64)

    def flat(self) -> tuple[int, ...]:
        return tuple(v for row in self.entries for v in row)

    def max_entry(self) -> int:
        return max(self.flat())

    def check_compatible(self, base: BaseGraph, pattern: CouplingPattern | None = None) -> None:
        if self.shape != base.shape:
            raise InvalidArgumentError(
                f"partition matrix shape {self.shape} does not match base graph {base.shape}"
            )
        if pattern is not None:
            allowed = pattern.value_set
            for i, row in enumerate(self.entries):
                for j, v in enumerate(row):
                    if v not in allowed:
                        raise InvalidPartitionError(i, j, v)

    def to_json(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    @classmethod
    def from_json(cls, obj) -> "PartitionMatrix":
        if isinstance(obj, dict):
            obj = obj.get("entries", obj.get("p"))
        return cls(tuple(tuple(r) for r in obj))


@dataclass(frozen=True)
class ComponentMatrices:
    """Binary gamma x kappa matrices H_0..H_m summing to the all-one matrix."""

    mats: tuple[np.ndarray, ...]

    def __post_init__(self):
        mats = []
        for h in self.mats:
            a = np.array(h, dtype=np.uint8)
            a.setflags(write=False)
            mats.append(a)
        if not mats:
            raise InvalidArgumentError("need at least one component matrix")
        total = np.sum(mats, axis=0)
        if not np.all(total == 1):
            raise InvalidArgumentError("component matrices must partition the all-one matrix")
        object.__setattr__(self, "mats", tuple(mats))

    @property
    def memory(self) -> int:
        return len(self.mats) - 1

    @property
    def shape(self) -> tuple[int, int]:
        return self.mats[0].shape

    def partition(self) -> PartitionMatrix:
        """Recover P by locating the unique component that holds each edge."""
        return PartitionMatrix.from_array(np.argmax(np.stack(self.mats), axis=0))


def spread_edges(base: BaseGraph, p: PartitionMatrix, pattern: CouplingPattern) -> ComponentMatrices:
    p.check_compatible(base, pattern)
    arr = p.as_array()
    return ComponentMatrices(tuple((arr == l).astype(np.uint8) for l in range(pattern.m + 1)))


@dataclass(frozen=True)
class SparseBinaryMatrix:
    """Binary matrix held as a sorted coordinate list of its ones."""

    rows: int
    cols: int
    nonzeros: tuple[tuple[int, int], ...] = field(default=())

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise InvalidArgumentError("matrix dimensions must be non-negative")
        coords = tuple(sorted((int(r), int(c)) for r, c in self.nonzeros))
        for r, c in coords:
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise InvalidArgumentError(f"coordinate ({r},{c}) out of range {self.rows}x{self.cols}")
        if len(set(coords)) != len(coords):
            raise InvalidArgumentError("duplicate coordinates in sparse matrix")
        object.__setattr__(self, "nonzeros", coords)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def nnz(self) -> int:
        return len(self.nonzeros)

    @classmethod
    def from_dense(cls, arr) -> "SparseBinaryMatrix":
        arr = np.asarray(arr)
        r, c = np.nonzero(arr)
        return cls(arr.shape[0], arr.shape[1], tuple(zip(r.tolist(), c.tolist())))

    def to_dense(self) -> np.ndarray:
        if self.rows * self.cols > DENSE_CELL_LIMIT:
            raise ResourceError(
                f"dense assembly of {self.rows}x{self.cols} exceeds {DENSE_CELL_LIMIT} cells",
                projected=self.rows * self.cols,
            )
        out = np.zeros(self.shape, dtype=np.uint8)
        if self.nonzeros:
            r, c = zip(*self.nonzeros)
            out[list(r), list(c)] = 1
        return out

    def row_neighbors(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.rows)]
        for r, c in self.nonzeros:
            out[r].append(c)
        return out

    def col_neighbors(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.cols)]
        for r, c in self.nonzeros:
            out[c].append(r)
        for lst in out:
            lst.sort()
        return out

    def row_degrees(self) -> list[int]:
        return [len(x) for x in self.row_neighbors()]

    def col_degrees(self) -> list[int]:
        return [len(x) for x in self.col_neighbors()]

    def to_alist(self) -> str:
        """MacKay alist text: ``N M`` (cols rows), max degrees, degree lists, 1-indexed neighbor lists.

        Neighbor lists are zero-padded to the maximum degree.
        """
        cols_nb = self.col_neighbors()
        rows_nb = self.row_neighbors()
        cmax = max((len(x) for x in cols_nb), default=0)
        rmax = max((len(x) for x in rows_nb), default=0)

        def padded(nb, width):
            vals = [v + 1 for v in nb] + [0] * (width - len(nb))
            return " ".join(map(str, vals))

        lines = [
            f"{self.cols} {self.rows}",
            f"{cmax} {rmax}",
            " ".join(str(len(x)) for x in cols_nb),
            " ".join(str(len(x)) for x in rows_nb),
        ]
        lines += [padded(nb, cmax) for nb in cols_nb]
        lines += [padded(nb, rmax) for nb in rows_nb]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_alist(cls, text: str) -> "SparseBinaryMatrix":
        """Parse alist text; accepts padded or unpadded neighbor lists and a missing row section."""
        lines = [[int(t) for t in ln.split()] for ln in text.splitlines() if ln.strip()]
        if len(lines) < 4:
            raise InvalidArgumentError("alist text needs at least four header lines")
        n_cols, n_rows = lines[0][:2]
        col_deg = lines[2]
        row_deg = lines[3]
        if len(col_deg) != n_cols or len(row_deg) != n_rows:
            raise InvalidArgumentError("alist degree lists do not match the declared dimensions")
        if len(lines) < 4 + n_cols:
            raise InvalidArgumentError("alist text is missing column neighbor lists")
        coords = set()
        for c in range(n_cols):
            nb = [v for v in lines[4 + c] if v != 0]
            if len(nb) != col_deg[c]:
                raise InvalidArgumentError(f"alist column {c + 1} lists {len(nb)} neighbors, degree {col_deg[c]}")
            coords.update((r - 1, c) for r in nb)
        if len(lines) >= 4 + n_cols + n_rows:
            for r in range(n_rows):
                nb = [v for v in lines[4 + n_cols + r] if v != 0]
                if {(r, c - 1) for c in nb} - coords or len(nb) != row_deg[r]:
                    raise InvalidArgumentError(f"alist row {r + 1} disagrees with the column lists")
        return cls(n_rows, n_cols, tuple(coords))


def build_sc_matrix(comps: ComponentMatrices, coupling_length: int) -> SparseBinaryMatrix:
    """Assemble the terminated band matrix: block (t, s) is H_{t-s} for 0 <= t-s <= m."""
    if coupling_length < 1:
        raise InvalidArgumentError(f"coupling length must be >= 1, got {coupling_length}")
    gamma, kappa = comps.shape
    m = comps.memory
    L = coupling_length
    coords = []
    for l, h in enumerate(comps.mats):
        ii, jj = np.nonzero(h)
        for s in range(L):
            t = s + l
            coords.extend(zip((t * gamma + ii).tolist(), (s * kappa + jj).tolist()))
    return SparseBinaryMatrix((L + m) * gamma, L * kappa, tuple(coords))


def explicit_product_assignment(base: BaseGraph) -> PartitionMatrix:
    """P(i, j) = i * j; its largest entry is (gamma - 1)(kappa - 1)."""
    return PartitionMatrix(tuple(tuple(i * j for j in range(base.kappa)) for i in range(base.gamma)))


def assignment_from_flat(base: BaseGraph, values: Sequence[int] | Iterable[int]) -> PartitionMatrix:
    vals = list(values)
    if len(vals) != base.n_edges:
        raise InvalidArgumentError(f"expected {base.n_edges} values, got {len(vals)}")
    k = base.kappa
    return PartitionMatrix(tuple(tuple(vals[i * k:(i + 1) * k]) for i in range(base.gamma)))
