"""Discriminant curves of polynomial maps and the Q(sqrt(3)) example family."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .poly import MPoly, PolyError, is_squarefree_univariate, sylvester_resultant
from .quadext import QuadExt

XY = ("x", "y")


def _check_monic(f: MPoly, y: str = "y"):
    lead = f.coefficients(y)[-1] if f.degree(y) > 0 else None
    if lead is None or not lead.is_constant():
        raise PolyError(f"polynomial is not monic in {y}: leading coefficient {lead}")


def discriminant_curve(f: MPoly, x: str = "x", y: str = "y", t: str = "t") -> MPoly:
    """d_f(t, x) = Res_y(f - t, d(f - t)/dy), without sign or leading-coefficient normalization."""
    _check_monic(f, y)
    if t in f.vars:
        raise PolyError(f"variable name {t!r} is already used by f")
    vars = (t,) + tuple(f.vars)
    g = f.with_vars(vars) - MPoly.var(vars, t)
    d = sylvester_resultant(g, g.diff(y), y)
    rest = [v for v in d.vars if v not in (t, x)]
    if rest and any(d.degree(v) > 0 for v in rest):
        raise PolyError(f"discriminant depends on extra variables {rest}")
    return d.with_vars((t, x))


def perturb(f: MPoly, lam, a, x: str = "x", y: str = "y") -> MPoly:
    """f(x + lam*y, y) + a*x."""
    X = MPoly.var(f.vars, x)
    Y = MPoly.var(f.vars, y)
    return f.substitute({x: X + Y * lam}) + X * a


def content_in(p: MPoly, x: str) -> MPoly:
    """Gcd of the coefficients of ``p`` viewed in ``x`` (bivariate input)."""
    from .poly import univariate_gcd

    coeffs = [c for c in p.coefficients(x) if not c.is_zero()]
    g = coeffs[0]
    for c in coeffs[1:]:
        if g.is_constant():
            break
        g = univariate_gcd(g, c)
    return g


def is_reduced_discriminant(f: MPoly, x: str = "x", y: str = "y", t: str = "t") -> bool:
    """Whether d_f(t, x) is reduced.

    Res_x(d_f, d d_f/dx) must be a nonzero polynomial in t, and the content
    of d_f in x (a polynomial in t alone) must be squarefree; the resultant
    alone cannot see repeated factors free of x.
    """
    d = discriminant_curve(f, x, y, t)
    if d.degree(x) < 1:
        return False
    if sylvester_resultant(d, d.diff(x), x).is_zero():
        return False
    return is_squarefree_univariate(content_in(d, x).drop_vars([x]))


# the family c(x, y) * r^s(x, y)

def cubic(vars=XY) -> MPoly:
    return MPoly.parse("y^2*x - (y+1)^3", vars)


def family_builder(s) -> MPoly:
    """c(x,y) * (s^2 (2s - 3) y + x - 3 s^2); ``s`` a number or a variable name."""
    if isinstance(s, str):
        vars = (s,) + XY
        S = MPoly.var(vars, s)
    else:
        vars = XY
        S = MPoly.const(vars, s)
    X, Y = MPoly.var(vars, "x"), MPoly.var(vars, "y")
    line = S * S * (S * 2 - 3) * Y + X - S * S * 3
    return cubic(vars) * line


def f_plus() -> MPoly:
    return family_builder(QuadExt(3, 2, 3))


def f_minus() -> MPoly:
    return family_builder(QuadExt(3, -2, 3))


CRITICAL_QUADRATIC = (
    "(256*s^2+256*s+64)*t^2 + (-1647*s^4-1836*s^3+2430*s^2+2916*s+729)*t + 2916*s^6"
)
CLAIMED_DISCRIMINANT = "-2187*(s-1)^2*(s^2-6*s-3)^2*(5*s+3)^2"


@dataclass(frozen=True)
class IdentityCheck:
    holds: bool
    scalar: Fraction | None
    computed: MPoly
    claimed: MPoly


def family_discriminant_identity() -> IdentityCheck:
    """Compare the t-discriminant of the critical-value quadratic with the claimed factorization.

    Equality is accepted up to a nonzero rational scalar.
    """
    q = MPoly.parse(CRITICAL_QUADRATIC, ("s", "t"))
    a, b, c = (p.drop_vars(["t"]) for p in q.coefficients("t")[::-1])
    computed = b * b - a * c * 4
    claimed = MPoly.parse(CLAIMED_DISCRIMINANT, ("s",))
    if computed.is_zero() or claimed.is_zero():
        return IdentityCheck(computed == claimed, None, computed, claimed)
    scalar = computed.leading()[1] / claimed.leading()[1]
    holds = computed == claimed * scalar
    return IdentityCheck(holds, scalar if holds else None, computed, claimed)
