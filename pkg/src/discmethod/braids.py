"""Free-group and braid-group words, and the Hurwitz (Artin) right action.

Conventions
-----------
* Generators are 1-based: mu_1..mu_k for the free group F_k and
  sigma_1..sigma_{k-1} for the braid group B_k.
* A word is a tuple of ``(index, exponent)`` letters with exponent +1/-1.
* Letters act leftmost first, so ``w^(b1 b2) == (w^b1)^b2``.
* Conjugation is always interpreted through the action, never by
  syntactic group multiplication.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

Letter = tuple[int, int]


class WordError(ValueError):
    pass


def _check_letters(letters, bound, what):
    out = []
    for item in letters:
        g, e = int(item[0]), int(item[1])
        if e not in (1, -1):
            raise WordError(f"exponent must be +1 or -1, got {e}")
        if not 1 <= g <= bound:
            raise WordError(f"{what} index {g} out of range 1..{bound}")
        out.append((g, e))
    return out


def _reduce(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    stack: list[Letter] = []
    for g, e in letters:
        if stack and stack[-1][0] == g and stack[-1][1] == -e:
            stack.pop()
        else:
            stack.append((g, e))
    return tuple(stack)


@dataclass(frozen=True)
class FreeWord:
    """Freely reduced word in mu_1..mu_k."""

    k: int
    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        if self.k < 1:
            raise WordError("free group needs at least one generator")
        checked = _check_letters(self.letters, self.k, "generator")
        object.__setattr__(self, "letters", _reduce(checked))

    @classmethod
    def gen(cls, k: int, g: int, e: int = 1) -> FreeWord:
        return cls(k, ((g, e),))

    def __mul__(self, other: FreeWord) -> FreeWord:
        if other.k != self.k:
            raise WordError("generator-count mismatch")
        return FreeWord(self.k, self.letters + other.letters)

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return word_str(self.letters, "mu")

    def to_json(self):
        return [list(x) for x in self.letters]


@dataclass(frozen=True)
class BraidWord:
    """Word in sigma_1..sigma_{k-1}; no normal form is kept."""

    k: int
    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        if self.k < 1:
            raise WordError("braid group needs at least one strand")
        checked = _check_letters(self.letters, self.k - 1, "braid generator")
        object.__setattr__(self, "letters", tuple(checked))

    @classmethod
    def gen(cls, k: int, j: int, e: int = 1) -> BraidWord:
        return cls(k, ((j, e),))

    def __add__(self, other: BraidWord) -> BraidWord:
        if other.k != self.k:
            raise WordError("strand-count mismatch")
        return BraidWord(self.k, self.letters + other.letters)

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return word_str(self.letters, "s")

    def to_json(self):
        return [list(x) for x in self.letters]


@dataclass(frozen=True)
class Permutation:
    """Bijection of {1..n}; ``images[l-1]`` is the image of ``l``."""

    images: tuple[int, ...]

    def __post_init__(self):
        imgs = tuple(int(v) for v in self.images)
        if sorted(imgs) != list(range(1, len(imgs) + 1)):
            raise ValueError(f"not a permutation of 1..{len(imgs)}: {imgs}")
        object.__setattr__(self, "images", imgs)

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def transposition(cls, n: int, a: int, b: int) -> Permutation:
        imgs = list(range(1, n + 1))
        imgs[a - 1], imgs[b - 1] = b, a
        return cls(tuple(imgs))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, l: int) -> int:
        return self.images[l - 1]

    def then(self, other: Permutation) -> Permutation:
        """Apply ``self`` first, then ``other`` (right-action composition)."""
        return Permutation(tuple(other(v) for v in self.images))

    def moved(self) -> tuple[int, ...]:
        return tuple(l for l in range(1, self.n + 1) if self(l) != l)

    def as_transposition(self) -> tuple[int, int] | None:
        m = self.moved()
        if len(m) == 2:
            return m[0], m[1]
        return None

    def is_identity(self) -> bool:
        return not self.moved()


def word_str(letters, sym):
    if not letters:
        return "1"
    return "*".join(f"{sym}{g}" if e == 1 else f"{sym}{g}^-1" for g, e in letters)


def free_reduce(letters: Sequence[Letter], k: int) -> FreeWord:
    return FreeWord(k, tuple(letters))


def invert(w):
    """Reverse the letters and flip every exponent (works for both word kinds)."""
    return type(w)(w.k, tuple((g, -e) for g, e in reversed(w.letters)))


def _letter_images(k: int, j: int, e: int) -> dict[int, tuple[Letter, ...]]:
    # images of the generators moved by sigma_j^e; all others are fixed
    if e == 1:
        return {j: ((j + 1, 1),), j + 1: ((j + 1, 1), (j, 1), (j + 1, -1))}
    return {j + 1: ((j, 1),), j: ((j, -1), (j + 1, 1), (j, 1))}


def _substitute(letters, images) -> tuple[Letter, ...]:
    out: list[Letter] = []
    for g, e in letters:
        img = images.get(g)
        if img is None:
            piece: Sequence[Letter] = ((g, e),)
        elif e == 1:
            piece = img
        else:
            piece = [(h, -f) for h, f in reversed(img)]
        for h, f in piece:
            if out and out[-1][0] == h and out[-1][1] == -f:
                out.pop()
            else:
                out.append((h, f))
    return tuple(out)


@lru_cache(maxsize=4096)
def _artin_image(b: BraidWord) -> tuple[tuple[Letter, ...], ...]:
    images = [((g, 1),) for g in range(1, b.k + 1)]
    for j, e in b.letters:
        sub = _letter_images(b.k, j, e)
        images = [_substitute(img, sub) for img in images]
    return tuple(images)


def artin_image(b: BraidWord) -> tuple[FreeWord, ...]:
    """Images of mu_1..mu_k under ``b``."""
    return tuple(FreeWord(b.k, img) for img in _artin_image(b))


def hurwitz_act(w: FreeWord, b: BraidWord) -> FreeWord:
    if w.k != b.k:
        raise WordError(f"strand-count mismatch: word has k={w.k}, braid has k={b.k}")
    imgs = _artin_image(b)
    return FreeWord(w.k, _substitute(w.letters, {g: imgs[g - 1] for g in range(1, w.k + 1)}))


def braids_equal(b1: BraidWord, b2: BraidWord) -> bool:
    """Word problem in B_k, decided by the faithful Artin action."""
    if b1.k != b2.k:
        raise WordError("strand-count mismatch")
    return _artin_image(b1) == _artin_image(b2)


def alpha_braid(s: int, k: int) -> BraidWord:
    """(s2 s1)(s3 s2)...(s_s s_{s-1}); empty for s == 1."""
    if not 1 <= s <= k - 1:
        raise WordError(f"s={s} out of range 1..{k - 1}")
    letters = []
    for m in range(2, s + 1):
        letters += [(m, 1), (m - 1, 1)]
    return BraidWord(k, tuple(letters))


def conjugated_braid(j: int, w: BraidWord) -> BraidWord:
    """The braid w^-1 * sigma_j * w in action order."""
    return invert(w) + BraidWord.gen(w.k, j) + w


def normalize_conjugator(j: int, w: BraidWord) -> BraidWord:
    """Conjugator c with c^-1 s1 c equal to w^-1 s_j w."""
    c = alpha_braid(j, w.k) + w
    if not braids_equal(conjugated_braid(1, c), conjugated_braid(j, w)):
        raise AssertionError(f"normalization of sigma_{j} failed for {w}")
    return c


def braid_permutation(b: BraidWord) -> Permutation:
    """Image in Sigma_k; points follow the transpositions leftmost first."""
    p = Permutation.identity(b.k)
    for j, _ in b.letters:
        p = p.then(Permutation.transposition(b.k, j, j + 1))
    return p


def centralizer_gens(k: int) -> tuple[BraidWord, ...]:
    """Generators of the centralizer of sigma_1 in B_k."""
    if k < 3:
        raise WordError("centralizer generators need k >= 3")
    gens = [BraidWord(k, ((2, 1), (1, 1), (1, 1), (2, 1)))]
    gens += [BraidWord.gen(k, j) for j in range(1, k) if j != 2]
    return tuple(gens)


def conjugate_root(w: FreeWord) -> tuple[FreeWord, int] | None:
    """Split a reduced ``w = eta^-1 * mu_g * eta``; returns ``(eta, g)`` or None."""
    n = len(w.letters)
    if n % 2 == 0:
        return None
    m = n // 2
    g, e = w.letters[m]
    if e != 1:
        return None
    head = FreeWord(w.k, w.letters[:m])
    tail = FreeWord(w.k, w.letters[m + 1:])
    if invert(head) != tail:
        return None
    return tail, g


def centralizer_dichotomy(zeta: BraidWord) -> tuple[FreeWord, bool] | None:
    """Find eta with (mu1, mu2)^zeta equal to eta-conjugates of (mu1, mu2) or (mu2, mu1).

    Returns ``(eta, swapped)`` or None when no such eta exists.
    """
    k = zeta.k
    one = hurwitz_act(FreeWord.gen(k, 1), zeta)
    two = hurwitz_act(FreeWord.gen(k, 2), zeta)
    r1, r2 = conjugate_root(one), conjugate_root(two)
    if r1 is None or r2 is None or {r1[1], r2[1]} != {1, 2}:
        return None
    (eta1, g1), (eta2, g2) = r1, r2
    # eta is fixed only up to powers of the conjugated generator on the left:
    # need eta1 * eta2^-1 == mu_g1^a * mu_g2^b
    r = (eta1 * invert(eta2)).letters
    a = 0
    while a < len(r) and r[a][0] == g1:
        a += 1
    if any(g != g2 for g, _ in r[a:]):
        return None
    power = sum(e for _, e in r[:a])
    eta = FreeWord(k, ((g1, -1 if power > 0 else 1),) * abs(power)) * eta1
    return eta, g1 == 2
