"""Combinatorial CW-model of a regular fiber of the projection to the x-line.

Sheets 1..N are the 0-cells; every generator mu_i carries one 1-cell per
sheet.  Under the homology relations only one class per generator survives,
so 1-chains are stored as integer vectors on the canonical generators
``e_i = (mu_i) lifted at sheet a_i`` where ``(a_i, b_i)`` is the sheet
transposition of ``mu_i`` with ``a_i < b_i``.  Lifts at sheet ``b_i`` give
``-e_i``; lifts at sheets outside the transposition are null-homologous.
The exponent of a letter does not change its class, so it is ignored.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .braids import FreeWord, Permutation


class FiberError(ValueError):
    pass


@dataclass(frozen=True)
class ChainClass:
    coeffs: tuple[int, ...]

    @classmethod
    def zero(cls, k: int) -> ChainClass:
        return cls((0,) * k)

    @classmethod
    def basis(cls, k: int, i: int, c: int = 1) -> ChainClass:
        v = [0] * k
        v[i - 1] = c
        return cls(tuple(v))

    @property
    def k(self) -> int:
        return len(self.coeffs)

    def __add__(self, other: ChainClass) -> ChainClass:
        return ChainClass(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: ChainClass) -> ChainClass:
        return ChainClass(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> ChainClass:
        return ChainClass(tuple(-a for a in self.coeffs))

    def __rmul__(self, n: int) -> ChainClass:
        return ChainClass(tuple(n * a for a in self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __str__(self):
        parts = []
        for i, c in enumerate(self.coeffs, 1):
            if c:
                mag = "" if abs(c) == 1 else f"{abs(c)}"
                parts.append(("- " if c < 0 else "+ ") + f"{mag}e{i}")
        if not parts:
            return "0"
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


@dataclass(frozen=True)
class SheetMonodromy:
    """Classical monodromy: the sheet transposition attached to each mu_i."""

    sheets: int
    transpositions: tuple[tuple[int, int], ...]

    def __post_init__(self):
        N = int(self.sheets)
        if N < 1:
            raise FiberError("need at least one sheet")
        pairs = []
        for i, pair in enumerate(self.transpositions, 1):
            if len(pair) != 2:
                raise FiberError(f"mu_{i}: expected a transposition, got {pair!r}")
            a, b = sorted(int(v) for v in pair)
            if a == b or a < 1 or b > N:
                raise FiberError(f"mu_{i}: ({a},{b}) is not a transposition of 1..{N}")
            pairs.append((a, b))
        if not pairs:
            raise FiberError("need at least one generator")
        object.__setattr__(self, "sheets", N)
        object.__setattr__(self, "transpositions", tuple(pairs))

    @property
    def k(self) -> int:
        return len(self.transpositions)

    @classmethod
    def from_json(cls, obj) -> SheetMonodromy:
        return cls(obj["sheets"], tuple(tuple(p) for p in obj["classical_monodromy"]))

    def to_json(self):
        return {"sheets": self.sheets, "classical_monodromy": [list(p) for p in self.transpositions]}

    def components(self) -> list[set[int]]:
        """Orbits of the sheet action (connected components of the fiber)."""
        parent = list(range(self.sheets + 1))

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        for a, b in self.transpositions:
            parent[find(a)] = find(b)
        orbits: dict[int, set[int]] = {}
        for l in range(1, self.sheets + 1):
            orbits.setdefault(find(l), set()).add(l)
        return sorted(orbits.values(), key=min)

    def is_transitive(self) -> bool:
        return len(self.components()) == 1


@dataclass(frozen=True)
class LiftResult:
    chain: ChainClass
    end_sheet: int


def _check_word(m: SheetMonodromy, w: FreeWord):
    if w.k != m.k:
        raise FiberError(f"generator-count mismatch: word k={w.k}, monodromy k={m.k}")


def _check_sheet(m: SheetMonodromy, l: int):
    if not 1 <= l <= m.sheets:
        raise FiberError(f"sheet {l} out of range 1..{m.sheets}")


def word_permutation(m: SheetMonodromy, w: FreeWord) -> Permutation:
    _check_word(m, w)
    images = list(range(1, m.sheets + 1))
    for g, _ in w.letters:
        a, b = m.transpositions[g - 1]
        images = [b if v == a else a if v == b else v for v in images]
    return Permutation(tuple(images))


def lift(m: SheetMonodromy, w: FreeWord, l: int) -> LiftResult:
    """Lift ``w`` starting on sheet ``l`` and reduce to canonical coordinates."""
    _check_word(m, w)
    _check_sheet(m, l)
    coeffs = [0] * m.k
    for g, _ in w.letters:
        a, b = m.transpositions[g - 1]
        if l == a:
            coeffs[g - 1] += 1
            l = b
        elif l == b:
            coeffs[g - 1] -= 1
            l = a
    return LiftResult(ChainClass(tuple(coeffs)), l)


def is_cycle(m: SheetMonodromy, w: FreeWord, l: int) -> bool:
    _check_sheet(m, l)
    return word_permutation(m, w)(l) == l


def boundary1(m: SheetMonodromy, i: int, l: int) -> tuple[int, ...]:
    """Boundary of the 1-cell of mu_i on sheet l, as a vector over sheets."""
    _check_sheet(m, l)
    a, b = m.transpositions[i - 1]
    out = [0] * m.sheets
    if l == a:
        out[b - 1] += 1
        out[a - 1] -= 1
    elif l == b:
        out[a - 1] += 1
        out[b - 1] -= 1
    return tuple(out)


def boundary2(m: SheetMonodromy, i: int, l: int) -> dict[tuple[int, int], int]:
    """Boundary of the 2-cell of mu_i on sheet l, as a formal sum of 1-cells.

    A sheet fixed by the transposition bounds its own loop; the two sheets
    swapped by it bound the loop traversed twice.
    """
    _check_sheet(m, l)
    a, b = m.transpositions[i - 1]
    if l in (a, b):
        return {(i, a): 1, (i, b): 1}
    return {(i, l): 1}


def chain_boundary(m: SheetMonodromy, c: ChainClass) -> tuple[int, ...]:
    out = [0] * m.sheets
    for i, n in enumerate(c.coeffs, 1):
        if n:
            for s, v in enumerate(boundary1(m, i, m.transpositions[i - 1][0])):
                out[s] += n * v
    return tuple(out)


def cycle_rank(m: SheetMonodromy) -> int:
    """Rank of the 1-cycles: k - N + (number of fiber components)."""
    return m.k - m.sheets + len(m.components())


def as_chain(m: SheetMonodromy, cells: dict[tuple[int, int], int]) -> ChainClass:
    """Reduce a formal sum of 1-cells ``{(i, sheet): coeff}`` to canonical coordinates."""
    coeffs = [0] * m.k
    for (i, l), c in cells.items():
        a, b = m.transpositions[i - 1]
        if l == a:
            coeffs[i - 1] += c
        elif l == b:
            coeffs[i - 1] -= c
    return ChainClass(tuple(coeffs))


def sheet_monodromy(sheets: int, pairs: Sequence[Sequence[int]]) -> SheetMonodromy:
    return SheetMonodromy(sheets, tuple(tuple(p) for p in pairs))
