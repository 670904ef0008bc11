"""
Integer Algebra Module

Exact integer matrix algebra behind every cohomology computation:
- Smith normal form with unimodular transforms (U @ A @ V = D)
- Elementary divisors, dense and sparse
- Cokernel presentations as finitely generated abelian groups
- Rational rank as an independent cross-check

IntegerMatrix values are numpy arrays with ``dtype=object`` holding Python
ints, so no entry can overflow and no floating point is ever involved.
"""

import logging
import numbers
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np
import sympy

logger = logging.getLogger(__name__)

IntegerMatrix = np.ndarray


def integer_matrix(rows: Sequence[Sequence[int]], shape: Optional[Tuple[int, int]] = None) -> IntegerMatrix:
    """
    Build an exact integer matrix.

    Args:
        rows: Row-major entries
        shape: Required when there are no rows (e.g. ``(0, 3)``)

    Returns:
        Object-dtype numpy array of Python ints

    Raises:
        ValueError: If an entry is not an integer or rows are ragged
    """
    rows = [list(r) for r in rows]
    if not rows:
        m, n = shape if shape is not None else (0, 0)
        return np.zeros((m, n), dtype=object)
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ValueError("Ragged rows in integer matrix")
    matrix = np.zeros((len(rows), width), dtype=object)
    for i, row in enumerate(rows):
        for j, value in enumerate(row):
            if isinstance(value, bool) or not isinstance(value, numbers.Integral):
                raise ValueError(f"Integer matrix entries must be integers, got {value!r}")
            matrix[i, j] = int(value)
    if shape is not None and matrix.shape != tuple(shape):
        raise ValueError(f"Expected shape {shape}, got {matrix.shape}")
    return matrix


def zero_matrix(m: int, n: int) -> IntegerMatrix:
    matrix = np.empty((m, n), dtype=object)
    matrix.fill(0)
    return matrix


def identity_matrix(k: int) -> IntegerMatrix:
    matrix = zero_matrix(k, k)
    for i in range(k):
        matrix[i, i] = 1
    return matrix


def matmul(A: IntegerMatrix, B: IntegerMatrix) -> IntegerMatrix:
    """Exact product; also defined when the inner dimension is zero."""
    if A.shape[1] != B.shape[0]:
        raise ValueError(f"Shape mismatch: {A.shape} @ {B.shape}")
    if A.shape[1] == 0:
        return zero_matrix(A.shape[0], B.shape[1])
    return np.dot(A, B)


def determinant(M: IntegerMatrix) -> int:
    """Exact determinant of a square integer matrix (1 for the 0x0 matrix)."""
    if M.shape[0] != M.shape[1]:
        raise ValueError(f"Determinant needs a square matrix, got {M.shape}")
    if M.shape[0] == 0:
        return 1
    return int(sympy.Matrix(M.tolist()).det(method="bareiss"))


def rational_rank(A: IntegerMatrix) -> int:
    """Rank over the rationals by exact elimination (sympy)."""
    m, n = A.shape
    if m == 0 or n == 0:
        return 0
    return int(sympy.Matrix(m, n, [int(x) for x in A.flat]).rank())


@dataclass(frozen=True)
class AbelianGroup:
    """Finitely generated abelian group Z^free_rank + Z/t1 + ... + Z/tk."""

    free_rank: int = 0
    torsion: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError(f"Negative free rank {self.free_rank}")
        torsion = tuple(int(t) for t in self.torsion)
        if any(t < 2 for t in torsion):
            raise ValueError(f"Torsion coefficients must be >= 2, got {torsion}")
        if any(b % a for a, b in zip(torsion, torsion[1:])):
            raise ValueError(f"Torsion coefficients must form a divisibility chain, got {torsion}")
        object.__setattr__(self, "torsion", torsion)

    @classmethod
    def from_divisors(cls, generators: int, divisors: Iterable[int]) -> "AbelianGroup":
        """Quotient of Z^generators by relations with the given elementary divisors."""
        nonzero = sorted(abs(d) for d in divisors if d)
        return cls(free_rank=generators - len(nonzero), torsion=tuple(d for d in nonzero if d > 1))

    @classmethod
    def from_dict(cls, data: Mapping) -> "AbelianGroup":
        return cls(free_rank=int(data["free_rank"]), torsion=tuple(data.get("torsion", ())))

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def to_dict(self) -> Dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    def __str__(self) -> str:
        if self.is_trivial:
            return "0"
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " + ".join(parts)


@dataclass(frozen=True)
class SmithForm:
    """U @ A @ V = D with U, V unimodular and D diagonal (d1 | d2 | ... then zeros)."""

    D: IntegerMatrix
    U: IntegerMatrix
    V: IntegerMatrix

    @property
    def diagonal(self) -> Tuple[int, ...]:
        return tuple(int(self.D[i, i]) for i in range(min(self.D.shape)))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)

    def verify(self, A: IntegerMatrix) -> bool:
        """Check every invariant against the original matrix."""
        if not np.array_equal(matmul(matmul(self.U, A), self.V), self.D):
            return False
        if abs(determinant(self.U)) != 1 or abs(determinant(self.V)) != 1:
            return False
        off_diagonal = self.D.copy()
        for i in range(min(off_diagonal.shape)):
            off_diagonal[i, i] = 0
        if any(x != 0 for x in off_diagonal.flat):
            return False
        diagonal = self.diagonal
        nonzero = [d for d in diagonal if d]
        if any(d < 0 for d in diagonal) or diagonal[:len(nonzero)] != tuple(nonzero):
            return False
        return all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))


def _min_abs_entry(D: IntegerMatrix, t: int) -> Optional[Tuple[int, int]]:
    # Smallest nonzero |entry| of D[t:, t:]; ties go to the lowest row, then column
    best = None
    best_value = 0
    m, n = D.shape
    for i in range(t, m):
        for j in range(t, n):
            value = abs(D[i, j])
            if value and (best is None or value < best_value):
                best, best_value = (i, j), value
    return best


def _diagonalize(D: IntegerMatrix, U: Optional[IntegerMatrix] = None,
                 V: Optional[IntegerMatrix] = None) -> None:
    """Reduce D in place to Smith normal form, applying row ops to U and column ops to V."""
    m, n = D.shape
    for t in range(min(m, n)):
        pivot = _min_abs_entry(D, t)
        if pivot is None:
            return
        while True:
            i, j = pivot
            if i != t:
                D[[t, i]] = D[[i, t]]
                if U is not None:
                    U[[t, i]] = U[[i, t]]
            if j != t:
                D[:, [t, j]] = D[:, [j, t]]
                if V is not None:
                    V[:, [t, j]] = V[:, [j, t]]
            p = D[t, t]

            for r in range(t + 1, m):
                if D[r, t]:
                    q = D[r, t] // p
                    D[r, :] = D[r, :] - q * D[t, :]
                    if U is not None:
                        U[r, :] = U[r, :] - q * U[t, :]
            for c in range(t + 1, n):
                if D[t, c]:
                    q = D[t, c] // p
                    D[:, c] = D[:, c] - q * D[:, t]
                    if V is not None:
                        V[:, c] = V[:, c] - q * V[:, t]

            remainders = any(D[r, t] for r in range(t + 1, m)) or any(D[t, c] for c in range(t + 1, n))
            if not remainders:
                stray = next(((r, c) for r in range(t + 1, m) for c in range(t + 1, n)
                              if D[r, c] % p), None)
                if stray is None:
                    break
                # Pull the non-divisible row up; the next pass leaves a smaller remainder
                r = stray[0]
                D[t, :] = D[t, :] + D[r, :]
                if U is not None:
                    U[t, :] = U[t, :] + U[r, :]
            pivot = _min_abs_entry(D, t)

        if D[t, t] < 0:
            D[t, :] = -D[t, :]
            if U is not None:
                U[t, :] = -U[t, :]


def smith_normal_form(A: IntegerMatrix) -> SmithForm:
    """
    Smith normal form with transforms.

    Pivots are always the nonzero entry of minimal absolute value (ties by
    lowest row, then column), which keeps coefficient growth down and makes
    U and V deterministic.

    Args:
        A: Integer matrix of any shape, including empty

    Returns:
        SmithForm with U @ A @ V = D
    """
    A = np.asarray(A, dtype=object)
    m, n = A.shape
    D = A.copy()
    U = identity_matrix(m)
    V = identity_matrix(n)
    _diagonalize(D, U, V)
    return SmithForm(D=D, U=U, V=V)


def elementary_divisors(A: IntegerMatrix) -> List[int]:
    """Nonzero diagonal of the Smith normal form, without computing transforms."""
    D = np.asarray(A, dtype=object).copy()
    _diagonalize(D)
    return [int(D[i, i]) for i in range(min(D.shape)) if D[i, i]]


def sparse_elementary_divisors(rows: Sequence[Mapping[int, int]]) -> List[int]:
    """
    Elementary divisors of a sparse matrix given as one {column: value} dict per row.

    Unit pivots are eliminated sparsely first (each contributes a divisor 1);
    whatever remains without a unit entry is finished by the dense Smith form.
    Boundary matrices are overwhelmingly +-1, so the dense residue stays tiny.
    """
    work: Dict[int, Dict[int, int]] = {}
    column_rows: Dict[int, set] = {}
    for r, entries in enumerate(rows):
        row = {c: int(v) for c, v in entries.items() if v}
        if row:
            work[r] = row
            for c in row:
                column_rows.setdefault(c, set()).add(r)

    divisors: List[int] = []
    while True:
        pivot = None
        for r in sorted(work):
            units = [c for c, v in work[r].items() if v in (1, -1)]
            if units:
                pivot = (r, min(units, key=lambda c: (len(column_rows[c]), c)))
                break
        if pivot is None:
            break
        r, c = pivot
        pivot_row = work.pop(r)
        sign = pivot_row[c]
        for c2 in pivot_row:
            column_rows[c2].discard(r)
        for r2 in sorted(column_rows[c]):
            row = work[r2]
            q = row[c] * sign
            for c2, v in pivot_row.items():
                value = row.get(c2, 0) - q * v
                if value:
                    if c2 not in row:
                        column_rows[c2].add(r2)
                    row[c2] = value
                elif c2 in row:
                    del row[c2]
                    column_rows[c2].discard(r2)
            if not row:
                del work[r2]
        divisors.append(1)

    if work:
        columns = sorted({c for row in work.values() for c in row})
        position = {c: j for j, c in enumerate(columns)}
        residue = zero_matrix(len(work), len(columns))
        for i, r in enumerate(sorted(work)):
            for c, v in work[r].items():
                residue[i, position[c]] = v
        logger.debug("Dense Smith form on %dx%d residue", *residue.shape)
        divisors.extend(elementary_divisors(residue))
    return divisors


def cokernel_presentation(A: IntegerMatrix) -> AbelianGroup:
    """
    Cokernel Z^cols / (row span of A), read off the Smith diagonal.

    Each row of A is one relation among the ``cols`` generators.
    """
    A = np.asarray(A, dtype=object)
    return AbelianGroup.from_divisors(A.shape[1], elementary_divisors(A))
