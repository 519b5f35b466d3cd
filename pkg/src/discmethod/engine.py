"""Vanishing cycles and Picard-Lefschetz operators from braid monodromy data.

Input is the braid monodromy of the discriminant curve, one entry
``(j_i, beta_i)`` per critical value with ``nabla(gamma_i) = beta_i^-1 s_j beta_i``,
together with the sheet transpositions of mu_1..mu_k.

Matrices use the column convention: column ``s`` of an operator matrix holds
the coordinates of the image of ``Delta_s`` in the basis ``Delta_1..Delta_mu``.
The intersection matrix stores ``(Delta_i, Delta_j)`` in row ``j``, column ``i``.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Sequence

from .braids import BraidWord, FreeWord, WordError, conjugated_braid, hurwitz_act
from .fiber import ChainClass, FiberError, SheetMonodromy, cycle_rank, lift, word_permutation

log = logging.getLogger(__name__)

Matrix = tuple[tuple[int, ...], ...]


class MonodromyError(ValueError):
    pass


class ValidationError(MonodromyError):
    def __init__(self, report: ValidationReport):
        super().__init__("; ".join(report.errors))
        self.report = report


@dataclass(frozen=True)
class BraidEntry:
    j: int
    conjugator: BraidWord

    @property
    def braid(self) -> BraidWord:
        return conjugated_braid(self.j, self.conjugator)


@dataclass(frozen=True)
class MorseData:
    k: int
    sheets: SheetMonodromy
    braids: tuple[BraidEntry, ...]
    clusters: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] | None = None

    @property
    def mu(self) -> int:
        return len(self.braids)

    @classmethod
    def from_json(cls, obj) -> MorseData:
        k = int(obj["k"])
        sheets = SheetMonodromy(obj["sheets"], tuple(tuple(p) for p in obj["classical_monodromy"]))
        braids = tuple(
            BraidEntry(int(e["j"]), BraidWord(k, tuple(tuple(x) for x in e.get("conjugator", []))))
            for e in obj["braids"]
        )
        if "clusters" in obj:
            clusters = tuple(tuple(int(i) for i in c) for c in obj["clusters"])
        else:
            clusters = tuple((i,) for i in range(1, len(braids) + 1))
        labels = obj.get("labels")
        return cls(k, sheets, braids, clusters, tuple(labels) if labels is not None else None)

    @classmethod
    def load(cls, path) -> MorseData:
        with open(path) as fh:
            return cls.from_json(json.load(fh))

    def to_json(self):
        out = {
            "k": self.k,
            "sheets": self.sheets.sheets,
            "classical_monodromy": [list(p) for p in self.sheets.transpositions],
            "braids": [{"j": e.j, "conjugator": e.conjugator.to_json()} for e in self.braids],
            "clusters": [list(c) for c in self.clusters],
        }
        if self.labels is not None:
            out["labels"] = list(self.labels)
        return out


@dataclass
class ValidationReport:
    mu: int = 0
    cycle_rank: int | None = None
    transpositions: list[tuple[int, int] | None] = field(default_factory=list)
    errors: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.errors

    def to_json(self):
        return {
            "valid": self.ok,
            "mu": self.mu,
            "cycle_rank": self.cycle_rank,
            "transpositions": [list(p) if p else None for p in self.transpositions],
            "errors": list(self.errors),
            "warnings": list(self.warnings),
        }


def validate(d: MorseData) -> ValidationReport:
    """Collect every problem with ``d``; errors are fatal for the pipeline."""
    rep = ValidationReport(mu=d.mu)
    if d.sheets.k != d.k:
        rep.errors.append(f"classical monodromy lists {d.sheets.k} generators, expected k={d.k}")
    for i, e in enumerate(d.braids, 1):
        if not 1 <= e.j <= d.k - 1:
            rep.errors.append(f"braid {i}: j={e.j} out of range 1..{d.k - 1}")
        if e.conjugator.k != d.k:
            rep.errors.append(f"braid {i}: conjugator has k={e.conjugator.k}, expected {d.k}")
    flat = [i for c in d.clusters for i in c]
    if flat != list(range(1, d.mu + 1)):
        rep.errors.append(f"clusters {list(map(list, d.clusters))} do not cover 1..{d.mu} consecutively")
    if any(len(c) == 0 for c in d.clusters):
        rep.errors.append("empty cluster")
    if d.labels is not None and len(d.labels) != len(d.clusters):
        rep.errors.append(f"{len(d.labels)} labels for {len(d.clusters)} clusters")
    if rep.errors:
        return rep

    if not d.sheets.is_transitive():
        rep.warnings.append(
            f"sheet action is not transitive (orbits {[sorted(o) for o in d.sheets.components()]}): disconnected fiber"
        )
    rep.cycle_rank = cycle_rank(d.sheets)
    for i, e in enumerate(d.braids, 1):
        u = hurwitz_act(FreeWord.gen(d.k, e.j), e.conjugator)
        v = hurwitz_act(FreeWord.gen(d.k, e.j + 1), e.conjugator)
        pu = word_permutation(d.sheets, u)
        pair = pu.as_transposition()
        rep.transpositions.append(pair)
        if pair is None:
            rep.errors.append(f"braid {i}: sheet permutation of mu_{e.j}^beta_{i} is not a transposition")
        elif word_permutation(d.sheets, v) != pu:
            rep.errors.append(
                f"braid {i}: mu_{e.j}^beta_{i} and mu_{e.j + 1}^beta_{i} have different sheet transpositions,"
                " so the vanishing path does not lift to a cycle"
            )
    if not rep.errors and d.mu != rep.cycle_rank:
        rep.warnings.append(f"mu={d.mu} differs from the cycle rank {rep.cycle_rank}")
    return rep


def check(d: MorseData) -> MorseData:
    rep = validate(d)
    if not rep.ok:
        raise ValidationError(rep)
    return d


@dataclass(frozen=True)
class VanishingCycle:
    delta: ChainClass
    pair: tuple[int, int]
    path: FreeWord


@lru_cache(maxsize=None)
def _vanishing(d: MorseData, i: int) -> VanishingCycle:
    if not 1 <= i <= d.mu:
        raise MonodromyError(f"index {i} out of range 1..{d.mu}")
    e = d.braids[i - 1]
    u = hurwitz_act(FreeWord.gen(d.k, e.j), e.conjugator)
    v = hurwitz_act(FreeWord.gen(d.k, e.j + 1), e.conjugator)
    pair = word_permutation(d.sheets, u).as_transposition()
    if pair is None:
        raise MonodromyError(f"braid {i}: sheet permutation of mu_{e.j}^beta_{i} is not a transposition")
    if word_permutation(d.sheets, v).as_transposition() != pair:
        raise MonodromyError(f"braid {i}: vanishing path does not lift to a cycle")
    path = v * u
    delta = lift(d.sheets, path, pair[0]).chain
    if delta.is_zero():
        raise MonodromyError(f"vanishing cycle {i} lifts to zero at sheet {pair[0]}")
    return VanishingCycle(delta, pair, path)


def vanishing_cycle(d: MorseData, i: int) -> tuple[ChainClass, tuple[int, int]]:
    vc = _vanishing(d, i)
    return vc.delta, vc.pair


def vanishing_path(d: MorseData, i: int) -> FreeWord:
    return _vanishing(d, i).path


def vanishing_basis(d: MorseData) -> list[VanishingCycle]:
    return [_vanishing(d, i) for i in range(1, d.mu + 1)]


def pl_image(d: MorseData, s: int, i: int) -> ChainClass:
    """Image of Delta_s under the Picard-Lefschetz operator around critical value i."""
    vs = _vanishing(d, s)
    moved = hurwitz_act(vs.path, d.braids[i - 1].braid)
    return lift(d.sheets, moved, vs.pair[0]).chain


def _multiple_of(diff: ChainClass, base: ChainClass) -> int | None:
    pivot = next(idx for idx, c in enumerate(base.coeffs) if c)
    n, r = divmod(diff.coeffs[pivot], base.coeffs[pivot])
    if r or n * base != diff:
        return None
    return n


@lru_cache(maxsize=None)
def intersection_number(d: MorseData, s: int, i: int) -> int:
    """The integer n with pl_image(s, i) == Delta_s - n * Delta_i."""
    delta_s = _vanishing(d, s).delta
    delta_i = _vanishing(d, i).delta
    n = _multiple_of(delta_s - pl_image(d, s, i), delta_i)
    if n is None:
        raise MonodromyError(f"h_{i}(Delta_{s}) is not of the form Delta_{s} - n*Delta_{i}")
    return n


def stabilizer_shortcut(d: MorseData, s: int, i: int) -> int | None:
    """0 when the vanishing path of s is fixed by nabla(gamma_i), else None."""
    path = _vanishing(d, s).path
    if hurwitz_act(path, d.braids[i - 1].braid) == path:
        return 0
    return None


def intersection_matrix(d: MorseData) -> Matrix:
    check(d)
    n = d.mu
    return tuple(tuple(intersection_number(d, i, j) for i in range(1, n + 1)) for j in range(1, n + 1))


def identity(n: int) -> Matrix:
    return tuple(tuple(int(r == c) for c in range(n)) for r in range(n))


def matmul(a: Matrix, b: Matrix) -> Matrix:
    n, m = len(a), len(b[0]) if b else 0
    return tuple(
        tuple(sum(a[r][t] * b[t][c] for t in range(len(b))) for c in range(m)) for r in range(n)
    )


def int_det(a: Matrix) -> int:
    """Determinant of an integer matrix by Bareiss elimination."""
    m = [list(row) for row in a]
    n = len(m)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for p in range(n - 1):
        if m[p][p] == 0:
            swap = next((r for r in range(p + 1, n) if m[r][p]), None)
            if swap is None:
                return 0
            m[p], m[swap] = m[swap], m[p]
            sign = -sign
        for r in range(p + 1, n):
            for c in range(p + 1, n):
                m[r][c] = (m[r][c] * m[p][p] - m[r][p] * m[p][c]) // prev
        prev = m[p][p]
    return sign * m[n - 1][n - 1]


def pl_matrix(d: MorseData, i: int) -> Matrix:
    """Operator matrix of h_{gamma_i}: identity minus e_i times row i of the intersection matrix."""
    check(d)
    n = d.mu
    row = [intersection_number(d, s, i) for s in range(1, n + 1)]
    return tuple(
        tuple(int(r == c) - (row[c] if r == i - 1 else 0) for c in range(n)) for r in range(n)
    )


def compose_cluster(d: MorseData, c: int) -> Matrix:
    """Product M_{i1} ... M_{im} over the critical values of cluster ``c`` (1-based)."""
    check(d)
    if not 1 <= c <= len(d.clusters):
        raise MonodromyError(f"cluster {c} out of range 1..{len(d.clusters)}")
    out = identity(d.mu)
    for i in d.clusters[c - 1]:
        out = matmul(out, pl_matrix(d, i))
    return out


def monodromy_at_infinity(d: MorseData) -> Matrix:
    check(d)
    out = identity(d.mu)
    for c in range(1, len(d.clusters) + 1):
        out = matmul(out, compose_cluster(d, c))
    return out


def block_check(M: Sequence[Sequence[int]], clusters: Sequence[Sequence[int]], c: int) -> bool:
    """True iff every row outside cluster ``c`` is an identity row."""
    active = set(clusters[c - 1])
    n = len(M)
    return all(
        list(M[r]) == [int(r == col) for col in range(n)] for r in range(n) if r + 1 not in active
    )


def load_bundled(name: str) -> MorseData:
    return MorseData.load(Path(__file__).parent / "data" / name)


__all__ = [
    "BraidEntry",
    "MorseData",
    "MonodromyError",
    "ValidationError",
    "ValidationReport",
    "VanishingCycle",
    "validate",
    "check",
    "vanishing_cycle",
    "vanishing_path",
    "vanishing_basis",
    "pl_image",
    "intersection_number",
    "stabilizer_shortcut",
    "intersection_matrix",
    "pl_matrix",
    "compose_cluster",
    "monodromy_at_infinity",
    "block_check",
    "int_det",
    "matmul",
    "identity",
    "load_bundled",
    "WordError",
    "FiberError",
]
