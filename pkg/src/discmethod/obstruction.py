"""Simultaneous intertwiners of matrix pairs over Q.

Given pairs ``(A_m, B_m)`` we solve ``P B_m = A_m P`` for all ``m`` and ask
whether the solution space contains an invertible matrix.  If the
determinant of the general solution is the zero polynomial, no invertible
intertwiner exists and the pairs cannot be simultaneously conjugate.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Sequence

from .poly import MPoly


class ObstructionError(ValueError):
    pass


@dataclass(frozen=True)
class RatMatrix:
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(Fraction(v) for v in row) for row in self.entries)
        if rows and len({len(r) for r in rows}) != 1:
            raise ObstructionError("ragged matrix")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def identity(cls, n: int) -> RatMatrix:
        return cls(tuple(tuple(int(r == c) for c in range(n)) for r in range(n)))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def __getitem__(self, rc):
        r, c = rc
        return self.entries[r][c]

    def __matmul__(self, other: RatMatrix) -> RatMatrix:
        if self.cols != other.rows:
            raise ObstructionError("dimension mismatch in product")
        return RatMatrix(tuple(
            tuple(sum((self.entries[r][t] * other.entries[t][c] for t in range(self.cols)), Fraction(0))
                  for c in range(other.cols))
            for r in range(self.rows)
        ))

    def __add__(self, other: RatMatrix) -> RatMatrix:
        return RatMatrix(tuple(tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self.entries, other.entries)))

    def __sub__(self, other: RatMatrix) -> RatMatrix:
        return self + other.scale(-1)

    def scale(self, c) -> RatMatrix:
        return RatMatrix(tuple(tuple(v * c for v in row) for row in self.entries))

    def is_zero(self) -> bool:
        return not any(v for row in self.entries for v in row)

    def det(self) -> Fraction:
        m = [list(r) for r in self.entries]
        n = len(m)
        out = Fraction(1)
        for p in range(n):
            piv = next((r for r in range(p, n) if m[r][p]), None)
            if piv is None:
                return Fraction(0)
            if piv != p:
                m[p], m[piv] = m[piv], m[p]
                out = -out
            out *= m[p][p]
            for r in range(p + 1, n):
                f = m[r][p] / m[p][p]
                if f:
                    for c in range(p, n):
                        m[r][c] -= f * m[p][c]
        return out

    def inverse(self) -> RatMatrix:
        n = self.rows
        aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(self.entries)]
        for p in range(n):
            piv = next((r for r in range(p, n) if aug[r][p]), None)
            if piv is None:
                raise ObstructionError("singular matrix")
            aug[p], aug[piv] = aug[piv], aug[p]
            inv = 1 / aug[p][p]
            aug[p] = [v * inv for v in aug[p]]
            for r in range(n):
                if r != p and aug[r][p]:
                    f = aug[r][p]
                    aug[r] = [a - f * b for a, b in zip(aug[r], aug[p])]
        return RatMatrix(tuple(tuple(r[n:]) for r in aug))

    def to_json(self):
        return [[_num_json(v) for v in row] for row in self.entries]


def _num_json(v: Fraction):
    return v.numerator if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def as_matrix(m) -> RatMatrix:
    return m if isinstance(m, RatMatrix) else RatMatrix(tuple(tuple(r) for r in m))


def nullspace(rows: Sequence[Sequence[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Basis of the kernel by exact Gauss-Jordan elimination.

    Pivots are the first nonzero entry in column order; each basis vector
    sets one free variable to 1 and the others to 0.
    """
    m = [list(map(Fraction, r)) for r in rows if any(r)]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for row, pc in zip(m, pivots):
            v[pc] = -row[fc]
        basis.append(v)
    return basis


def intertwining_system(pairs) -> tuple[list[list[Fraction]], int]:
    """Linear equations in the n*n entries of P (row-major) for P B = A P."""
    pairs = [(as_matrix(a), as_matrix(b)) for a, b in pairs]
    if not pairs:
        raise ObstructionError("no matrix pairs given")
    n = pairs[0][0].rows
    for a, b in pairs:
        if (a.rows, a.cols, b.rows, b.cols) != (n, n, n, n):
            raise ObstructionError(f"all matrices must be {n}x{n}")
    eqs = []
    for a, b in pairs:
        for r in range(n):
            for c in range(n):
                row = [Fraction(0)] * (n * n)
                for t in range(n):
                    row[r * n + t] += b[t, c]
                    row[t * n + c] -= a[r, t]
                eqs.append(row)
    return eqs, n


def conjugation_space(pairs) -> list[RatMatrix]:
    """Basis of {P : P B_m = A_m P for every pair}."""
    eqs, n = intertwining_system(pairs)
    return [
        RatMatrix(tuple(tuple(v[r * n:(r + 1) * n]) for r in range(n)))
        for v in nullspace(eqs, n * n)
    ]


def in_span(basis: Sequence[RatMatrix], target) -> bool:
    target = as_matrix(target)
    flat = [[v for row in m.entries for v in row] for m in basis]
    tvec = [v for row in target.entries for v in row]
    if not flat:
        return not any(tvec)
    # target in span iff appending it does not raise the rank
    return _rank(flat + [tvec]) == _rank(flat)


def _rank(rows) -> int:
    # rank = #rows - dim of the left kernel
    return len(rows) - len(nullspace(_transpose(rows), len(rows)))


def _transpose(rows):
    return [list(col) for col in zip(*rows)]


def param_names(d: int) -> tuple[str, ...]:
    return tuple(f"a{i}" for i in range(1, d + 1))


def general_element(basis: Sequence[RatMatrix]) -> list[list[MPoly]]:
    """sum_m a_m * P_m as a matrix of polynomials in a1..ad."""
    if not basis:
        raise ObstructionError("empty basis: the only intertwiner is zero")
    names = param_names(len(basis))
    n = basis[0].rows
    out = []
    for r in range(n):
        row = []
        for c in range(n):
            terms = {}
            for idx, m in enumerate(basis):
                if m[r, c]:
                    mono = tuple(int(i == idx) for i in range(len(basis)))
                    terms[mono] = m[r, c]
            row.append(MPoly(names, terms))
        out.append(row)
    return out


def parametric_det(M: Sequence[Sequence[MPoly]]) -> MPoly:
    """Determinant by Laplace expansion along rows, memoized on column subsets."""
    n = len(M)
    if any(len(row) != n for row in M):
        raise ObstructionError("parametric_det needs a square matrix")
    if n == 0:
        raise ObstructionError("empty matrix")
    vars = M[0][0].vars

    @lru_cache(maxsize=None)
    def minor(row: int, cols: frozenset) -> MPoly:
        if row == n:
            return MPoly.const(vars, 1)
        total = MPoly(vars)
        for pos, c in enumerate(sorted(cols)):
            entry = M[row][c]
            if entry.is_zero():
                continue
            sub = minor(row + 1, cols - {c})
            if sub.is_zero():
                continue
            term = entry * sub
            total = total - term if pos % 2 else total + term
        return total

    return minor(0, frozenset(range(n)))


@dataclass(frozen=True)
class Verdict:
    obstructed: bool
    dimension: int
    basis: tuple[RatMatrix, ...]
    det_poly: MPoly | None
    witness: RatMatrix | None

    @property
    def label(self) -> str:
        return "obstructed" if self.obstructed else "inconclusive"

    def to_json(self):
        return {
            "dimension": self.dimension,
            "basis": [m.to_json() for m in self.basis],
            "det_poly": str(self.det_poly) if self.det_poly is not None else "0",
            "verdict": self.label,
            "witness": self.witness.to_json() if self.witness is not None else None,
        }


def combine(basis: Sequence[RatMatrix], point: Sequence) -> RatMatrix:
    n = basis[0].rows
    acc = RatMatrix(tuple((Fraction(0),) * n for _ in range(n)))
    for c, m in zip(point, basis):
        if c:
            acc = acc + m.scale(c)
    return acc


def equivalence_verdict(pairs) -> Verdict:
    """Decide whether an invertible simultaneous intertwiner can exist.

    ``obstructed`` is decided from the exact determinant polynomial.  When it
    is nonzero a witness is searched on the grid {0..n}^d (after trying the
    identity, if it intertwines); a nonzero polynomial of degree <= n cannot
    vanish on that whole grid, so the search always succeeds.
    """
    basis = tuple(conjugation_space(pairs))
    if not basis:
        return Verdict(True, 0, basis, None, None)
    det = parametric_det(general_element(basis))
    if det.is_zero():
        return Verdict(True, len(basis), basis, det, None)
    n = basis[0].rows
    ident = RatMatrix.identity(n)
    if in_span(basis, ident):
        return Verdict(False, len(basis), basis, det, ident)
    names = det.vars
    for point in product(range(n + 1), repeat=len(basis)):
        if det.evaluate(dict(zip(names, point))) != 0:
            witness = combine(basis, point)
            if witness.det() == 0:
                raise ObstructionError("witness determinant disagrees with the parametric determinant")
            return Verdict(False, len(basis), basis, det, witness)
    raise ObstructionError("no witness found on the grid although the determinant is nonzero")


def load_pairs(path) -> list[tuple[RatMatrix, RatMatrix]]:
    with open(path) as fh:
        return pairs_from_json(json.load(fh))


def pairs_from_json(obj) -> list[tuple[RatMatrix, RatMatrix]]:
    def mat(m):
        return RatMatrix(tuple(tuple(Fraction(str(v)) for v in row) for row in m))

    pairs = [(mat(p["A"]), mat(p["B"])) for p in obj["pairs"]]
    n = obj.get("n")
    if n is not None and any(a.rows != n or b.rows != n for a, b in pairs):
        raise ObstructionError(f"declared n={n} does not match the matrices")
    return pairs
