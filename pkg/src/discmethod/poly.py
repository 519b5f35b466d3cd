"""Sparse exact multivariate polynomials over Q and Q(sqrt(d)).

A polynomial is a map from exponent tuples to nonzero coefficients, over an
ordered tuple of variable names.  Coefficients are ``Fraction`` or ``QuadExt``.
"""

from __future__ import annotations

import ast
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Sequence

from .quadext import QuadExt, conjugate, is_squarefree


class PolyError(ValueError):
    pass


def _norm_coeff(c):
    if isinstance(c, QuadExt):
        return c.a if c.b == 0 else c
    if isinstance(c, bool):
        raise PolyError("boolean coefficient")
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    raise PolyError(f"unsupported coefficient {c!r}")


class MPoly:
    __slots__ = ("vars", "terms")

    def __init__(self, vars: Sequence[str], terms: Mapping[tuple[int, ...], object] | None = None):
        self.vars = tuple(vars)
        if len(set(self.vars)) != len(self.vars):
            raise PolyError(f"repeated variable in {self.vars}")
        clean = {}
        for mono, c in (terms or {}).items():
            mono = tuple(int(e) for e in mono)
            if len(mono) != len(self.vars) or min(mono, default=0) < 0:
                raise PolyError(f"bad monomial {mono} for variables {self.vars}")
            c = _norm_coeff(c)
            if c:
                clean[mono] = c
        self.terms = clean

    @classmethod
    def _raw(cls, vars, terms):
        p = cls.__new__(cls)
        p.vars = vars
        p.terms = terms
        return p

    # constructors
    @classmethod
    def const(cls, vars: Sequence[str], c) -> MPoly:
        return cls(vars, {(0,) * len(vars): c})

    @classmethod
    def var(cls, vars: Sequence[str], name: str) -> MPoly:
        vars = tuple(vars)
        mono = tuple(int(v == name) for v in vars)
        if name not in vars:
            raise PolyError(f"unknown variable {name!r}")
        return cls(vars, {mono: 1})

    @classmethod
    def parse(cls, text: str, vars: Sequence[str], d: int | None = None) -> MPoly:
        return parse_poly(text, vars, d)

    # basic properties
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, MPoly):
            if other.vars != self.vars:
                try:
                    other = other.with_vars(self.vars)
                except PolyError:
                    return False
            return self.terms == other.terms
        if isinstance(other, (int, Rational, QuadExt)):
            return self == MPoly.const(self.vars, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    @property
    def field(self):
        ds = {c.d for c in self.terms.values() if isinstance(c, QuadExt)}
        if len(ds) > 1:
            raise PolyError(f"mixed quadratic fields {sorted(ds)}")
        return ("quadext", ds.pop()) if ds else ("rational",)

    def _index(self, name: str) -> int:
        try:
            return self.vars.index(name)
        except ValueError:
            raise PolyError(f"variable {name!r} not in {self.vars}") from None

    def degree(self, name: str) -> int:
        """Degree in one variable; -1 for the zero polynomial."""
        i = self._index(name)
        return max((m[i] for m in self.terms), default=-1)

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def constant_value(self):
        if not self.is_constant():
            raise PolyError("polynomial is not constant")
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    def with_vars(self, vars: Sequence[str]) -> MPoly:
        """Re-express over a variable list containing every variable actually used."""
        vars = tuple(vars)
        if vars == self.vars:
            return self
        used = {v for m in self.terms for v, e in zip(self.vars, m) if e}
        missing = used - set(vars)
        if missing:
            raise PolyError(f"variables {sorted(missing)} would be dropped")
        pos = [self.vars.index(v) if v in self.vars else None for v in vars]
        terms = {tuple(m[p] if p is not None else 0 for p in pos): c for m, c in self.terms.items()}
        return MPoly._raw(vars, terms)

    def _align(self, other):
        if isinstance(other, MPoly):
            if other.vars == self.vars:
                return other
            return other.with_vars(self.vars)
        return MPoly.const(self.vars, other)

    # ring operations
    def __add__(self, other):
        other = self._align(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            v = terms.get(m, 0) + c
            if v:
                terms[m] = _norm_coeff(v)
            else:
                terms.pop(m, None)
        return MPoly._raw(self.vars, terms)

    __radd__ = __add__

    def __neg__(self):
        return MPoly._raw(self.vars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._align(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            c = _norm_coeff(other)
            if not c:
                return MPoly._raw(self.vars, {})
            return MPoly._raw(self.vars, {m: _norm_coeff(v * c) for m, v in self.terms.items()})
        other = self._align(other)
        terms: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                terms[m] = terms.get(m, 0) + c1 * c2
        return MPoly._raw(self.vars, {m: _norm_coeff(c) for m, c in terms.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise PolyError("negative power")
        out, base = MPoly.const(self.vars, 1), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __truediv__(self, c):
        if isinstance(c, MPoly):
            return self.divexact(c)
        c = _norm_coeff(c)
        if not c:
            raise ZeroDivisionError("polynomial division by zero")
        inv = 1 / c
        return MPoly._raw(self.vars, {m: _norm_coeff(v * inv) for m, v in self.terms.items()})

    def leading(self):
        """Leading (monomial, coefficient) in lexicographic order of ``vars``."""
        m = max(self.terms)
        return m, self.terms[m]

    def divexact(self, other: MPoly) -> MPoly:
        """Exact quotient; raises PolyError when ``other`` does not divide ``self``."""
        other = self._align(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if other.is_constant():
            return self / other.constant_value()
        lm, lc = other.leading()
        inv = 1 / lc
        rest = [(m, c) for m, c in other.terms.items() if m != lm]
        rem = dict(self.terms)
        quot = {}
        while rem:
            m = max(rem)
            c = rem.pop(m)
            qm = tuple(a - b for a, b in zip(m, lm))
            if min(qm) < 0:
                raise PolyError("inexact polynomial division")
            qc = _norm_coeff(c * inv)
            quot[qm] = qc
            for m2, c2 in rest:
                mm = tuple(a + b for a, b in zip(qm, m2))
                v = rem.get(mm, 0) - qc * c2
                if v:
                    rem[mm] = _norm_coeff(v)
                else:
                    rem.pop(mm, None)
        return MPoly._raw(self.vars, quot)

    # calculus and substitution
    def diff(self, name: str) -> MPoly:
        i = self._index(name)
        terms = {}
        for m, c in self.terms.items():
            if m[i]:
                mm = m[:i] + (m[i] - 1,) + m[i + 1:]
                terms[mm] = _norm_coeff(c * m[i])
        return MPoly._raw(self.vars, terms)

    def substitute(self, mapping: Mapping[str, object]) -> MPoly:
        """Simultaneously replace variables by polynomials or constants.

        The result lives over the same variable list unless a substituted
        polynomial brings new variables; those are appended.
        """
        vars = list(self.vars)
        for val in mapping.values():
            if isinstance(val, MPoly):
                vars += [v for v in val.vars if v not in vars]
        vars = tuple(vars)
        base = self.with_vars(vars)
        subs = {}
        for name, val in mapping.items():
            base._index(name)
            subs[vars.index(name)] = val.with_vars(vars) if isinstance(val, MPoly) else MPoly.const(vars, val)
        powers: dict[tuple[int, int], MPoly] = {}

        def power(i, e):
            key = (i, e)
            if key not in powers:
                powers[key] = subs[i] ** e
            return powers[key]

        out = MPoly._raw(vars, {})
        for m, c in base.terms.items():
            keep = tuple(0 if i in subs else e for i, e in enumerate(m))
            term = MPoly._raw(vars, {keep: c})
            for i in subs:
                if m[i]:
                    term = term * power(i, m[i])
            out = out + term
        return out

    def evaluate(self, point: Mapping[str, object]):
        """Value at a full point, or a polynomial when only some variables are given."""
        p = self.substitute(point)
        if p.is_constant():
            return p.constant_value()
        return p

    def drop_vars(self, names: Iterable[str]) -> MPoly:
        names = set(names)
        return self.with_vars(tuple(v for v in self.vars if v not in names))

    def coefficients(self, name: str) -> list[MPoly]:
        """Coefficients in powers of ``name`` (index = power), over the same variables."""
        i = self._index(name)
        deg = self.degree(name)
        out = [dict() for _ in range(deg + 1)]
        for m, c in self.terms.items():
            out[m[i]][m[:i] + (0,) + m[i + 1:]] = c
        return [MPoly._raw(self.vars, t) for t in out]

    def galois_conjugate(self) -> MPoly:
        return MPoly._raw(self.vars, {m: conjugate(c) for m, c in self.terms.items()})

    def map_coeffs(self, fn) -> MPoly:
        return MPoly(self.vars, {m: fn(c) for m, c in self.terms.items()})

    # printing / serialization
    def sorted_terms(self):
        """Terms in graded lexicographic order, highest first."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for m, c in self.sorted_terms():
            mono = "*".join(
                v if e == 1 else f"{v}^{e}" for v, e in zip(self.vars, m) if e
            )
            if isinstance(c, QuadExt):
                cs, neg = f"({c})", False
            else:
                cs, neg = str(abs(c)), c < 0
            if mono and cs == "1":
                piece = mono
            elif mono:
                piece = f"{cs}*{mono}"
            else:
                piece = cs
            out.append(("- " if neg else "+ ") + piece)
        s = " ".join(out)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def __repr__(self):
        return f"MPoly({self.vars}, {self})"

    def to_json(self):
        field = self.field
        fobj = {"type": "rational"} if field[0] == "rational" else {"type": "quadext", "d": field[1]}
        terms = []
        for m, c in self.sorted_terms():
            if isinstance(c, QuadExt):
                coeff = [str(c.a), str(c.b)]
            else:
                coeff = [str(c), "0"]
            terms.append({"coeff": coeff, "monomial": list(m)})
        return {"vars": list(self.vars), "field": fobj, "terms": terms}

    @classmethod
    def from_json(cls, obj) -> MPoly:
        vars = tuple(obj["vars"])
        field = obj.get("field", {"type": "rational"})
        kind = field.get("type")
        if kind == "rational":
            d = None
        elif kind == "quadext":
            d = int(field["d"])
            if not is_squarefree(d):
                raise PolyError(f"quadext d={d} is not a squarefree integer")
        else:
            raise PolyError(f"unsupported coefficient field {field!r}")
        terms = {}
        for t in obj["terms"]:
            raw = t["coeff"]
            if isinstance(raw, (str, int)):
                raw = [raw]
            a = Fraction(str(raw[0]))
            b = Fraction(str(raw[1])) if len(raw) > 1 else Fraction(0)
            if b and d is None:
                raise PolyError("irrational coefficient in a rational polynomial")
            c = QuadExt(a, b, d) if d is not None else a
            mono = tuple(t["monomial"])
            terms[mono] = terms.get(mono, 0) + c
        return cls(vars, terms)


# parsing

_BINOPS = {ast.Add, ast.Sub, ast.Mult, ast.Pow, ast.Div}


def parse_poly(text: str, vars: Sequence[str], d: int | None = None) -> MPoly:
    """Parse expressions such as ``"y^2*x - (y+1)^3"`` or ``"(3+2*sqrt(3))*x"``.

    ``sqrt(d)`` is the only allowed function call; division only by constants.
    """
    vars = tuple(vars)
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise PolyError(f"cannot parse {text!r}: {exc.msg}") from None

    def walk(node):
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
            return MPoly.const(vars, node.value)
        if isinstance(node, ast.Name):
            if node.id not in vars:
                raise PolyError(f"unknown variable {node.id!r}")
            return MPoly.var(vars, node.id)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = walk(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id == "sqrt":
            if len(node.args) != 1 or not isinstance(node.args[0], ast.Constant):
                raise PolyError("sqrt takes one integer literal")
            r = node.args[0].value
            if d is None or r != d:
                raise PolyError(f"sqrt({r}) not allowed: only sqrt(d) with the declared d={d}")
            return MPoly.const(vars, QuadExt(0, 1, d))
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            left = walk(node.left)
            right = walk(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if isinstance(node.op, ast.Div):
                if not right.is_constant():
                    raise PolyError("division by a non-constant")
                return left / right.constant_value()
            if not right.is_constant():
                raise PolyError("exponent must be a non-negative integer")
            e = right.constant_value()
            if isinstance(e, QuadExt) or e.denominator != 1 or e < 0:
                raise PolyError("exponent must be a non-negative integer")
            return left ** int(e)
        raise PolyError(f"unsupported syntax in {text!r}")

    return walk(tree)


# determinants and resultants

def bareiss_det(mat: Sequence[Sequence[MPoly]]) -> MPoly:
    """Fraction-free determinant of a square matrix of polynomials."""
    m = [list(row) for row in mat]
    n = len(m)
    if n == 0:
        raise PolyError("empty matrix")
    vars = m[0][0].vars
    sign = 1
    prev = MPoly.const(vars, 1)
    for p in range(n - 1):
        if m[p][p].is_zero():
            swap = next((r for r in range(p + 1, n) if not m[r][p].is_zero()), None)
            if swap is None:
                return MPoly._raw(vars, {})
            m[p], m[swap] = m[swap], m[p]
            sign = -sign
        piv = m[p][p]
        for r in range(p + 1, n):
            for c in range(p + 1, n):
                num = m[r][c] * piv - m[r][p] * m[p][c]
                m[r][c] = num.divexact(prev)
            m[r][p] = MPoly._raw(vars, {})
        prev = piv
    det = m[n - 1][n - 1]
    return det if sign > 0 else -det


def sylvester_matrix(f: MPoly, g: MPoly, name: str) -> list[list[MPoly]]:
    if f.vars != g.vars:
        g = g.with_vars(f.vars)
    fc = f.coefficients(name)[::-1]
    gc = g.coefficients(name)[::-1]
    df, dg = len(fc) - 1, len(gc) - 1
    zero = MPoly._raw(f.vars, {})
    size = df + dg
    rows = []
    for r in range(dg):
        rows.append([zero] * r + fc + [zero] * (size - r - df - 1))
    for r in range(df):
        rows.append([zero] * r + gc + [zero] * (size - r - dg - 1))
    return rows


def sylvester_resultant(f: MPoly, g: MPoly, name: str) -> MPoly:
    """Res_name(f, g) as the Sylvester determinant; ``name`` is removed from the result.

    f's coefficient rows come first, so Res(y - p, y - q) = p - q.
    """
    if f.is_zero() or g.is_zero():
        raise PolyError("resultant of the zero polynomial")
    g = g.with_vars(f.vars) if g.vars != f.vars else g
    df, dg = f.degree(name), g.degree(name)
    if df == 0 and dg == 0:
        res = MPoly.const(f.vars, 1)
    elif df == 0:
        res = f ** dg
    elif dg == 0:
        res = g ** df
    else:
        res = bareiss_det(sylvester_matrix(f, g, name))
    return res.drop_vars([name])


def univariate_gcd(f: MPoly, g: MPoly) -> MPoly:
    """Monic gcd of two polynomials in a single variable."""
    names = {v for p in (f, g) for m in p.terms for v, e in zip(p.vars, m) if e}
    if len(names) > 1:
        raise PolyError(f"univariate gcd needs one variable, got {sorted(names)}")
    a, b = f, g.with_vars(f.vars)
    name = names.pop() if names else f.vars[0]
    while not b.is_zero():
        a, b = b, _univariate_rem(a, b, name)
    if a.is_zero():
        return a
    return a / a.coefficients(name)[-1].constant_value()


def _univariate_rem(a: MPoly, b: MPoly, name: str) -> MPoly:
    i = a._index(name)
    db = b.degree(name)
    lc = b.coefficients(name)[-1].constant_value()
    r = a
    while not r.is_zero() and r.degree(name) >= db:
        dr = r.degree(name)
        c = r.coefficients(name)[-1].constant_value() / lc
        mono = tuple(dr - db if j == i else 0 for j in range(len(a.vars)))
        r = r - b * MPoly._raw(a.vars, {mono: _norm_coeff(c)})
    return r


def is_squarefree_univariate(p: MPoly) -> bool:
    names = [v for v in p.vars if p.degree(v) > 0]
    if not names:
        return not p.is_zero()
    (name,) = names
    return univariate_gcd(p, p.diff(name)).is_constant()

