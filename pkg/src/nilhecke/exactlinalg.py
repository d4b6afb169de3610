"""
Exact linear algebra over the rationals.

Vectors are sequences of numbers coercible to :class:`fractions.Fraction`;
matrices are sequences of rows.  Internally rows are stored sparsely as
``{column: Fraction}`` dictionaries, which keeps the wide relation matrices
produced by the tensor quotients cheap to reduce.

>>> rref([[2, 4], [1, 2]])
([[Fraction(1, 1), Fraction(2, 1)], [Fraction(0, 1), Fraction(0, 1)]], [0])
>>> solve_unique([[1], [1]], [2, 2])
[Fraction(2, 1)]
>>> rank([[0, 0, 0]] * 3)
0
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

__all__ = [
    "LinAlgError", "DimensionMismatch", "NoSolution", "NotUnique",
    "SparseRow", "EchelonBasis",
    "to_fraction", "rref", "rank", "kernel_basis", "in_span",
    "solve_unique", "inverse", "mat_vec", "transpose", "sparse_combination",
]

SparseRow = dict  # column -> nonzero Fraction


class LinAlgError(ArithmeticError):
    pass


class DimensionMismatch(LinAlgError, ValueError):
    pass


class NoSolution(LinAlgError):
    """The right-hand side is not in the column span."""


class NotUnique(LinAlgError):
    """The homogeneous system has a nontrivial kernel."""


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, float):
        raise TypeError("floats are not exact scalars")
    return Fraction(x)


def _sparse(row: Sequence) -> SparseRow:
    out = {}
    for j, x in enumerate(row):
        if x:
            out[j] = to_fraction(x)
    return out


def _check_rect(rows: Sequence[Sequence], ncols: int | None = None) -> int:
    widths = {len(r) for r in rows}
    if ncols is not None:
        widths.add(ncols)
    if len(widths) > 1:
        raise DimensionMismatch(f"ragged matrix: row widths {sorted(widths)}")
    return widths.pop() if widths else 0


class EchelonBasis:
    """
    Incrementally maintained reduced row echelon basis of a row space.

    Rows may carry an optional *tag* vector that records which combination of
    the inserted rows produced them; that is what lets :meth:`coefficients`
    express a target in terms of the original generators.
    """

    def __init__(self, ncols: int, track: bool = False):
        self.ncols = ncols
        self.track = track
        self.pivots: dict[int, SparseRow] = {}
        self.tags: dict[int, SparseRow] = {}
        self._count = 0

    def __len__(self) -> int:
        return len(self.pivots)

    def _reduce(self, row: SparseRow, tag: SparseRow | None):
        for c in [c for c in row if c in self.pivots]:
            a = row.get(c)
            if not a:
                continue
            for k, v in self.pivots[c].items():
                s = row.get(k, 0) - a * v
                if s:
                    row[k] = s
                else:
                    row.pop(k, None)
            if tag is not None:
                for k, v in self.tags[c].items():
                    s = tag.get(k, 0) - a * v
                    if s:
                        tag[k] = s
                    else:
                        tag.pop(k, None)
        return row, tag

    def add(self, row: SparseRow | Sequence) -> bool:
        """Insert a row; return True when it enlarged the span."""
        if not isinstance(row, dict):
            if len(row) != self.ncols:
                raise DimensionMismatch(f"row of length {len(row)}, expected {self.ncols}")
            row = _sparse(row)
        else:
            row = {k: to_fraction(v) for k, v in row.items() if v}
        tag = {self._count: Fraction(1)} if self.track else None
        self._count += 1
        row, tag = self._reduce(row, tag)
        if not row:
            return False
        p = min(row)
        inv = 1 / row[p]
        row = {k: v * inv for k, v in row.items()}
        if tag is not None:
            tag = {k: v * inv for k, v in tag.items()}
        for c, other in self.pivots.items():
            a = other.get(p)
            if not a:
                continue
            for k, v in row.items():
                s = other.get(k, 0) - a * v
                if s:
                    other[k] = s
                else:
                    other.pop(k, None)
            if tag is not None:
                otag = self.tags[c]
                for k, v in tag.items():
                    s = otag.get(k, 0) - a * v
                    if s:
                        otag[k] = s
                    else:
                        otag.pop(k, None)
        self.pivots[p] = row
        if tag is not None:
            self.tags[p] = tag
        return True

    def residue(self, target: SparseRow | Sequence) -> SparseRow:
        if not isinstance(target, dict):
            target = _sparse(target)
        else:
            target = {k: to_fraction(v) for k, v in target.items() if v}
        row, _ = self._reduce(target, None)
        return row

    def contains(self, target) -> bool:
        return not self.residue(target)

    def coefficients(self, target) -> SparseRow | None:
        """Coefficients over the inserted rows expressing *target*, or None."""
        if not self.track:
            raise ValueError("EchelonBasis built without tracking")
        if not isinstance(target, dict):
            target = _sparse(target)
        else:
            target = {k: to_fraction(v) for k, v in target.items() if v}
        out: SparseRow = {}
        for c in [c for c in target if c in self.pivots]:
            a = target.get(c)
            if not a:
                continue
            for k, v in self.pivots[c].items():
                s = target.get(k, 0) - a * v
                if s:
                    target[k] = s
                else:
                    target.pop(k, None)
            for k, v in self.tags[c].items():
                s = out.get(k, 0) + a * v
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        if target:
            return None
        return out

    def rows(self) -> list[SparseRow]:
        return [self.pivots[p] for p in sorted(self.pivots)]


def rref(m: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and the ascending pivot columns."""
    ncols = _check_rect(m)
    basis = EchelonBasis(ncols)
    for row in m:
        basis.add(row)
    pivots = sorted(basis.pivots)
    out = []
    for p in pivots:
        r = basis.pivots[p]
        out.append([r.get(j, Fraction(0)) for j in range(ncols)])
    out.extend([Fraction(0)] * ncols for _ in range(len(m) - len(pivots)))
    return out, pivots


def rank(m: Sequence[Sequence]) -> int:
    return len(rref(m)[1])


def kernel_basis(m: Sequence[Sequence], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of ``{x : m x = 0}``, one vector per free column."""
    ncols = _check_rect(m, ncols)
    basis = EchelonBasis(ncols)
    for row in m:
        basis.add(row)
    out = []
    for f in range(ncols):
        if f in basis.pivots:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for p, r in basis.pivots.items():
            if f in r:
                v[p] = -r[f]
        out.append(v)
    return out


def transpose(m: Sequence[Sequence], nrows: int | None = None) -> list[list]:
    if not m:
        return [[] for _ in range(nrows or 0)]
    return [list(col) for col in zip(*m)]


def in_span(vectors: Sequence[Sequence], target: Sequence) -> list[Fraction] | None:
    """Coefficients ``c`` with ``sum(c_i v_i) == target``, or None."""
    ncols = len(target)
    basis = EchelonBasis(ncols, track=True)
    for v in vectors:
        if len(v) != ncols:
            raise DimensionMismatch("vector length differs from target")
        basis.add(v)
    coeffs = basis.coefficients(target)
    if coeffs is None:
        return None
    return [coeffs.get(i, Fraction(0)) for i in range(len(vectors))]


def solve_unique(a: Sequence[Sequence], b: Sequence) -> list[Fraction]:
    """
    The unique ``x`` with ``a x = b``.

    Raises :class:`NotUnique` when ``a`` has a nontrivial kernel and
    :class:`NoSolution` when ``b`` is outside the column span.
    """
    nrows = len(a)
    if len(b) != nrows:
        raise DimensionMismatch(f"{nrows} rows but right-hand side of length {len(b)}")
    ncols = _check_rect(a) if a else 0
    cols = transpose(a) if a else []
    basis = EchelonBasis(nrows, track=True)
    independent = sum(basis.add(c) for c in cols)
    if independent < ncols:
        raise NotUnique(f"kernel of dimension {ncols - independent}")
    coeffs = basis.coefficients(list(b))
    if coeffs is None:
        raise NoSolution("right-hand side outside the column span")
    return [coeffs.get(i, Fraction(0)) for i in range(ncols)]


def inverse(a: Sequence[Sequence]) -> list[list[Fraction]]:
    """Inverse of a square matrix; raises :class:`NotUnique` if singular."""
    n = len(a)
    _check_rect(a, n)
    basis = EchelonBasis(2 * n)
    for i, row in enumerate(a):
        r = _sparse(row)
        r[n + i] = Fraction(1)
        basis.add(r)
    if any(i not in basis.pivots for i in range(n)):
        raise NotUnique("singular matrix")
    out = []
    for i in range(n):
        r = basis.pivots[i]
        out.append([r.get(n + j, Fraction(0)) for j in range(n)])
    return out


def mat_vec(m: Sequence[Sequence], v: Sequence) -> list[Fraction]:
    if m and len(m[0]) != len(v):
        raise DimensionMismatch("matrix width differs from vector length")
    return [sum((to_fraction(x) * to_fraction(y) for x, y in zip(row, v) if x and y), Fraction(0))
            for row in m]


def sparse_combination(rows: Iterable[tuple[Fraction, SparseRow]]) -> SparseRow:
    out: SparseRow = {}
    for a, r in rows:
        for k, v in r.items():
            s = out.get(k, 0) + a * v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
    return out
