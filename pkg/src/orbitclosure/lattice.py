"""Integer linear algebra: column Hermite normal form, integer kernels, rank."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


@dataclass(frozen=True)
class IntMatrix:
    """Dense integer matrix. ``ncols`` is kept explicitly so 0-row matrices have a width."""

    entries: tuple[tuple[int, ...], ...]
    ncols: int

    def __post_init__(self):
        for row in self.entries:
            if len(row) != self.ncols:
                raise ValueError("ragged matrix rows")
            for x in row:
                if not isinstance(x, int) or isinstance(x, bool):
                    raise TypeError(f"matrix entry {x!r} is not an integer")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], ncols: int | None = None) -> "IntMatrix":
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols is required for a matrix without rows")
            ncols = len(rows[0])
        return cls(rows, ncols)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], nrows: int) -> "IntMatrix":
        return cls(
            tuple(tuple(int(col[i]) for col in columns) for i in range(nrows)),
            len(columns),
        )

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), n)

    @property
    def nrows(self) -> int:
        return len(self.entries)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.entries)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(tuple(self.columns()), self.nrows)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = other.columns()
        return IntMatrix(
            tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in self.entries),
            other.ncols,
        )

    def apply(self, vec: Sequence[int]) -> tuple[int, ...]:
        if len(vec) != self.ncols:
            raise ValueError("vector length does not match column count")
        return tuple(sum(a * b for a, b in zip(row, vec)) for row in self.entries)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]


@dataclass(frozen=True)
class KernelBasis:
    """Basis of the saturated integer kernel of ``source`` (columns of length ``source.ncols``)."""

    vectors: tuple[tuple[int, ...], ...]
    source: IntMatrix

    def __len__(self) -> int:
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b == g == gcd(a, b) >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def hermite_normal_form(A: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Column-style HNF: returns ``(H, U)`` with ``A @ U == H`` and ``U`` unimodular.

    Pivots sit in strictly increasing rows, move left to right, are positive,
    and entries to the left of a pivot lie in ``[0, pivot)``. Zero columns are last.
    """
    m, n = A.shape
    # work on columns: cols[j] is column j of A, ucols[j] column j of U
    cols = [list(c) for c in A.columns()]
    ucols = [[int(i == j) for i in range(n)] for j in range(n)]

    def combine(j: int, k: int, a: int, b: int, c: int, d: int) -> None:
        # (col_j, col_k) <- (a col_j + b col_k, c col_j + d col_k), with ad - bc = +-1
        for store in (cols, ucols):
            x, y = store[j], store[k]
            store[j] = [a * u + b * v for u, v in zip(x, y)]
            store[k] = [c * u + d * v for u, v in zip(x, y)]

    pivot_col = 0
    for i in range(m):
        if pivot_col >= n:
            break
        for j in range(pivot_col + 1, n):
            b = cols[j][i]
            if b == 0:
                continue
            a = cols[pivot_col][i]
            g, s, t = _xgcd(a, b)
            # [[s, -b/g], [t, a/g]] has determinant 1
            combine(pivot_col, j, s, t, -b // g, a // g)
        piv = cols[pivot_col][i]
        if piv == 0:
            continue
        if piv < 0:
            cols[pivot_col] = [-x for x in cols[pivot_col]]
            ucols[pivot_col] = [-x for x in ucols[pivot_col]]
            piv = -piv
        for j in range(pivot_col):
            q = cols[j][i] // piv
            if q:
                cols[j] = [x - q * y for x, y in zip(cols[j], cols[pivot_col])]
                ucols[j] = [x - q * y for x, y in zip(ucols[j], ucols[pivot_col])]
        pivot_col += 1

    H = IntMatrix(tuple(tuple(c[i] for c in cols) for i in range(m)), n)
    U = IntMatrix.from_columns(ucols, n)
    return H, U


def _hnf_rank(H: IntMatrix) -> int:
    return sum(1 for col in H.columns() if any(col))


def rank_over_rationals(A: IntMatrix) -> int:
    H, _ = hermite_normal_form(A)
    return _hnf_rank(H)


def canonical_lattice_basis(vectors: Sequence[Sequence[int]], dim: int) -> tuple[tuple[int, ...], ...]:
    """Canonical basis (HNF columns) of the lattice spanned by ``vectors`` in Z^dim."""
    if not vectors:
        return ()
    H, _ = hermite_normal_form(IntMatrix.from_columns(vectors, dim))
    return tuple(col for col in H.columns() if any(col))


def kernel_basis(A: IntMatrix) -> KernelBasis:
    """Saturated basis of ``{b in Z^n : A b = 0}``, canonicalized by HNF."""
    H, U = hermite_normal_form(A)
    r = _hnf_rank(H)
    raw = [U.column(j) for j in range(r, A.ncols)]
    return KernelBasis(canonical_lattice_basis(raw, A.ncols), A)


def solve_in_lattice(basis: Sequence[Sequence[int]], target: Sequence[int]) -> tuple[int, ...] | None:
    """Integer coefficients expressing ``target`` in ``basis``, or None if not in the Z-span."""
    dim = len(target)
    if not basis:
        return () if not any(target) else None
    H, U = hermite_normal_form(IntMatrix.from_columns(basis, dim))
    # H = B U with pivots in increasing rows; forward substitution on pivot rows
    residual = list(target)
    coeffs_h = [0] * H.ncols
    row = 0
    for j, col in enumerate(H.columns()):
        if not any(col):
            break
        while col[row] == 0:
            if residual[row] != 0:
                return None
            row += 1
        q, rem = divmod(residual[row], col[row])
        if rem:
            return None
        coeffs_h[j] = q
        residual = [x - q * y for x, y in zip(residual, col)]
        row += 1
    if any(residual):
        return None
    return U.apply(coeffs_h)
