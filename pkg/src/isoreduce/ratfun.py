"""Exact univariate rational-function arithmetic over the rationals.

Edge weights throughout this package are rational functions of the spectral
variable, written ``l`` in the text grammar.  Polynomials are dense tuples of
`fractions.Fraction` coefficients, lowest power first; rational functions are
kept fully cancelled with a monic denominator, so structural ``==`` on the
data coincides with equality of the underlying functions.  That canonical
form is what makes graph comparison elsewhere a plain dictionary comparison.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Iterable, Iterator

import numpy as np

from .errors import (
    DegreeCapExceeded,
    DivisionByZero,
    PoleAtPoint,
    RootFindingFailed,
    WeightSyntaxError,
)

DEGREE_CAP = 512

# Rational-root extraction gives up beyond this magnitude and leaves the work
# to the simultaneous iteration; purely an accuracy optimisation.
_DIVISOR_LIMIT = 10**15
_CANDIDATE_CAP = 4096


def _as_fraction(value) -> Fraction:
    if isinstance(value, float):
        raise TypeError("floating-point coefficients are not supported; use Fraction")
    return value if isinstance(value, Fraction) else Fraction(value)


class Polynomial:
    """Dense univariate polynomial with exact rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Fraction | int] = ()):
        cs = [_as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        if len(cs) > DEGREE_CAP + 1:
            raise DegreeCapExceeded(
                f"polynomial degree {len(cs) - 1} exceeds the cap of {DEGREE_CAP}")
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def constant(cls, value) -> "Polynomial":
        return cls((_as_fraction(value),))

    @classmethod
    def variable(cls) -> "Polynomial":
        return cls((Fraction(0), Fraction(1)))

    @property
    def degree(self) -> int | None:
        """Degree, or None for the zero polynomial (deliberately not a number)."""
        return len(self.coeffs) - 1 if self.coeffs else None

    @property
    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def leading(self) -> Fraction:
        if not self.coeffs:
            return Fraction(0)
        return self.coeffs[-1]

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, Polynomial) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Polynomial(out)

    def __neg__(self) -> "Polynomial":
        return Polynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return P_ZERO
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca == 0:
                continue
            for j, cb in enumerate(b):
                if cb:
                    out[i + j] += ca * cb
        return Polynomial(out)

    def scaled(self, factor) -> "Polynomial":
        f = _as_fraction(factor)
        if f == 0:
            return P_ZERO
        return Polynomial(tuple(c * f for c in self.coeffs))

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative polynomial powers are not defined")
        result = P_ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def divmod(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        """Long division; remainder has degree below the divisor's."""
        if not other:
            raise DivisionByZero("polynomial division by zero")
        if not self:
            return P_ZERO, P_ZERO
        rem = list(self.coeffs)
        dcs = other.coeffs
        dn = len(dcs)
        lead = dcs[-1]
        if len(rem) < dn:
            return P_ZERO, self
        quot = [Fraction(0)] * (len(rem) - dn + 1)
        for k in range(len(rem) - dn, -1, -1):
            c = rem[k + dn - 1]
            if c == 0:
                continue
            q = c / lead
            quot[k] = q
            for i in range(dn):
                rem[k + i] -= q * dcs[i]
        return Polynomial(quot), Polynomial(rem)

    def __floordiv__(self, other: "Polynomial") -> "Polynomial":
        return self.divmod(other)[0]

    def __mod__(self, other: "Polynomial") -> "Polynomial":
        return self.divmod(other)[1]

    def exact_div(self, other: "Polynomial") -> "Polynomial":
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError("polynomial division expected to be exact was not")
        return q

    def monic(self) -> "Polynomial":
        if not self.coeffs or self.coeffs[-1] == 1:
            return self
        lead = self.coeffs[-1]
        return Polynomial(tuple(c / lead for c in self.coeffs))

    def derivative(self) -> "Polynomial":
        return Polynomial(tuple(c * i for i, c in enumerate(self.coeffs) if i))

    def eval_complex(self, z: complex) -> complex:
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * z + complex(c)
        return acc

    def eval_exact(self, q: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * q + c
        return acc

    def __repr__(self) -> str:
        return f"Polynomial({_poly_str(self)})"


P_ZERO = Polynomial(())
P_ONE = Polynomial((1,))
P_LAMBDA = Polynomial((0, 1))


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic greatest common divisor (Euclid with per-step monic scaling)."""
    while b:
        a, b = b, (a % b).monic()
    return a.monic()


def poly_lcm(a: Polynomial, b: Polynomial) -> Polynomial:
    if not a or not b:
        return P_ZERO
    return (a * b).exact_div(poly_gcd(a, b)).monic()


def square_free_parts(p: Polynomial) -> list[tuple[Polynomial, int]]:
    """Yun decomposition: [(monic square-free factor, multiplicity)], product
    of factor^multiplicity equals p up to a constant."""
    p = p.monic()
    if p.degree is None or p.degree == 0:
        return []
    dp = p.derivative()
    g = poly_gcd(p, dp)
    if g.degree == 0:
        return [(p, 1)]
    c = p.exact_div(g)
    d = dp.exact_div(g) - c.derivative()
    parts: list[tuple[Polynomial, int]] = []
    k = 1
    while c.degree and c.degree > 0:
        a = poly_gcd(c, d)
        if a.degree and a.degree > 0:
            parts.append((a, k))
        c = c.exact_div(a)
        d = d.exact_div(a) - c.derivative()
        k += 1
    return parts


class RationalFunction:
    """Fully cancelled ratio of two polynomials with monic denominator.

    The canonical form (gcd(num, den) = 1, den monic, zero stored as 0/1)
    makes value equality identical to field-by-field equality.
    """

    __slots__ = ("num", "den")

    def __init__(self, num=P_ONE, den=P_ONE):
        if not isinstance(num, Polynomial):
            num = Polynomial.constant(num)
        if not isinstance(den, Polynomial):
            den = Polynomial.constant(den)
        if not den:
            raise DivisionByZero("rational function with zero denominator")
        if not num:
            self.num, self.den = P_ZERO, P_ONE
            return
        g = poly_gcd(num, den)
        if g.degree and g.degree > 0:
            num = num.exact_div(g)
            den = den.exact_div(g)
        lead = den.leading()
        if lead != 1:
            num = num.scaled(1 / lead)
            den = den.scaled(1 / lead)
        self.num = num
        self.den = den

    @classmethod
    def variable(cls) -> "RationalFunction":
        return cls(P_LAMBDA, P_ONE)

    @property
    def is_zero(self) -> bool:
        return not self.num

    @property
    def is_constant(self) -> bool:
        return self.den == P_ONE and self.num.is_constant

    def constant_value(self) -> Fraction:
        if not self.is_constant:
            raise ValueError(f"{self!r} is not a constant")
        return self.num.coeffs[0] if self.num else Fraction(0)

    def __bool__(self) -> bool:
        return bool(self.num)

    def __eq__(self, other) -> bool:
        return (isinstance(other, RationalFunction)
                and self.num == other.num and self.den == other.den)

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(self.num * other.den + other.num * self.den,
                                self.den * other.den)

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(self.num * other.den - other.num * self.den,
                                self.den * other.den)

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "RationalFunction") -> "RationalFunction":
        if not other.num:
            raise DivisionByZero("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __pow__(self, n: int) -> "RationalFunction":
        if n < 0:
            return RF_ONE / (self ** (-n))
        return RationalFunction(self.num ** n, self.den ** n)

    def eval(self, z: complex) -> complex:
        d = self.den.eval_complex(z)
        if d == 0:
            raise PoleAtPoint(z)
        return self.num.eval_complex(z) / d

    def __repr__(self) -> str:
        return f"RationalFunction({format_weight(self)!r})"


RF_ZERO = RationalFunction(P_ZERO, P_ONE)
RF_ONE = RationalFunction(P_ONE, P_ONE)
RF_LAMBDA = RationalFunction(P_LAMBDA, P_ONE)


def normalize(num: Polynomial, den: Polynomial) -> RationalFunction:
    """Canonical form of num/den; value-equal inputs give identical data."""
    return RationalFunction(num, den)


def arith(a: RationalFunction, b: RationalFunction, op: str) -> RationalFunction:
    """Field arithmetic by operation name ('add', 'sub', 'mul', 'div')."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


# ---------------------------------------------------------------------------
# Root finding: exact rational roots first, square-free multiplicities,
# simultaneous (Aberth) iteration for what remains.
# ---------------------------------------------------------------------------

def poly_roots(p: Polynomial, tol: float = 1e-12) -> list[complex]:
    """All deg(p) roots (with multiplicity) of a nonzero polynomial.

    Multiplicities come from the square-free decomposition; each square-free
    factor is solved by exact rational-root extraction followed by Aberth
    iteration, and every numeric root must meet the backward-error bound
    |p(z)| <= tol * sum_i |c_i||z|^i.
    """
    if not p:
        raise ValueError("root set of the zero polynomial is undefined")
    roots: list[complex] = []
    for factor, mult in square_free_parts(p):
        for r in _simple_roots(factor, tol):
            roots.extend([r] * mult)
    roots.sort(key=lambda z: (z.real, z.imag))
    return roots


def _simple_roots(f: Polynomial, tol: float) -> list[complex]:
    """Roots of a square-free monic polynomial, each exactly once."""
    out: list[complex] = []
    exact, rest = _rational_roots(f)
    out.extend(complex(float(r)) for r in exact)
    deg = rest.degree
    if deg is None or deg == 0:
        return out
    cs = rest.coeffs
    if deg == 1:
        out.append(complex(float(-cs[0] / cs[1])))
        return out
    if deg == 2:
        a, b, c = complex(float(cs[2])), complex(float(cs[1])), complex(float(cs[0]))
        disc = (b * b - 4 * a * c) ** 0.5
        # the numerically stable branch: avoid cancellation in -b +- disc
        q = -(b + disc) / 2 if (b.real * disc.real + b.imag * disc.imag) >= 0 else -(b - disc) / 2
        r1 = q / a
        r2 = c / q if q != 0 else -b / a - r1
        out.extend([r1, r2])
        return out
    out.extend(_aberth(rest, tol))
    return out


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
    return small + large[::-1]


def _rational_roots(f: Polynomial) -> tuple[list[Fraction], Polynomial]:
    """Extract exact rational roots of a square-free polynomial by the
    divisor test on the (integer-cleared) leading and trailing coefficients."""
    found: list[Fraction] = []
    if f.coeffs and f.coeffs[0] == 0:
        found.append(Fraction(0))
        f = Polynomial(f.coeffs[1:])
    if f.degree is None or f.degree == 0:
        return found, f
    denom_lcm = 1
    for c in f.coeffs:
        denom_lcm = denom_lcm * c.denominator // _int_gcd(denom_lcm, c.denominator)
    ints = [int(c * denom_lcm) for c in f.coeffs]
    content = 0
    for v in ints:
        content = _int_gcd(content, abs(v))
    if content > 1:
        ints = [v // content for v in ints]
    a0, an = abs(ints[0]), abs(ints[-1])
    if a0 == 0 or a0 > _DIVISOR_LIMIT or an > _DIVISOR_LIMIT:
        return found, f
    candidates: set[Fraction] = set()
    for p_div in _divisors(a0):
        for q_div in _divisors(an):
            candidates.add(Fraction(p_div, q_div))
            candidates.add(Fraction(-p_div, q_div))
            if len(candidates) > _CANDIDATE_CAP:
                return found, f
    for cand in sorted(candidates):
        if f.degree == 0:
            break
        if f.eval_exact(cand) == 0:
            found.append(cand)
            f = _deflate(f, cand)
    return found, f


def _int_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _deflate(f: Polynomial, root: Fraction) -> Polynomial:
    """Exact synthetic division of f by (x - root)."""
    cs = f.coeffs
    out = [Fraction(0)] * (len(cs) - 1)
    acc = cs[-1]
    for i in range(len(cs) - 2, -1, -1):
        out[i] = acc
        acc = cs[i] + acc * root
    return Polynomial(out)


_ABERTH_MAX_ITER = 120


def _aberth(f: Polynomial, tol: float) -> list[complex]:
    """Simultaneous root iteration for a square-free polynomial of degree >= 3.

    Initial guesses come from the companion matrix; the Aberth corrections
    then converge quadratically since all roots are simple.
    """
    scale = max(abs(c) for c in f.coeffs)
    coeffs = [float(c / scale) for c in f.coeffs]
    deriv = [c * i for i, c in enumerate(coeffs)][1:]
    n = len(coeffs) - 1

    z = [complex(r) for r in np.roots(coeffs[::-1])]
    # companion eigenvalues can coincide to machine precision; nudge apart
    for i in range(n):
        for j in range(i):
            if abs(z[i] - z[j]) < 1e-12 * max(1.0, abs(z[i])):
                z[i] += (1e-6 + 1e-6j) * (i + 1)

    def horner(cs: list[float], x: complex) -> complex:
        acc = 0j
        for c in reversed(cs):
            acc = acc * x + c
        return acc

    for _ in range(_ABERTH_MAX_ITER):
        worst = 0.0
        for k in range(n):
            zk = z[k]
            pv = horner(coeffs, zk)
            if pv == 0:
                continue
            dv = horner(deriv, zk)
            if dv == 0:
                z[k] = zk + 1e-6 * (1 + 1j)
                worst = 1.0
                continue
            ratio = pv / dv
            s = sum(1 / (zk - z[j]) for j in range(n) if j != k)
            denom = 1 - ratio * s
            corr = ratio if denom == 0 else ratio / denom
            z[k] = zk - corr
            rel = abs(corr) / max(1.0, abs(z[k]))
            if rel > worst:
                worst = rel
        if worst < 1e-15:
            break

    residuals = []
    for zk in z:
        m = abs(zk)
        bound = 0.0
        for c in reversed(coeffs):
            bound = bound * m + abs(c)
        residuals.append(abs(horner(coeffs, zk)) / max(bound, 1e-300))
    if any(r > tol for r in residuals):
        raise RootFindingFailed(
            f"simultaneous iteration did not reach tolerance {tol}",
            residuals=tuple(residuals))
    return z


# ---------------------------------------------------------------------------
# The weight-expression grammar: integers, fractions p/q, the symbol `l`,
# operators + - * / ^ (nonnegative integer exponents), parentheses.
# ---------------------------------------------------------------------------

def _tokenize(text: str) -> Iterator[tuple[str, object, int]]:
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            if j < n and text[j] == ".":
                raise WeightSyntaxError("floating-point coefficients are refused",
                                        position=i, text=text)
            yield ("int", int(text[i:j]), i)
            i = j
            continue
        if ch == "l":
            yield ("var", None, i)
            i += 1
            continue
        if ch in "+-*/^()":
            yield (ch, None, i)
            i += 1
            continue
        raise WeightSyntaxError(f"unexpected character {ch!r}", position=i, text=text)
    yield ("end", None, n)


class _WeightParser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = list(_tokenize(text))
        self.pos = 0

    def peek(self) -> tuple[str, object, int]:
        return self.tokens[self.pos]

    def take(self) -> tuple[str, object, int]:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, message: str, tok: tuple[str, object, int]):
        raise WeightSyntaxError(message, position=tok[2], text=self.text)

    def parse(self) -> RationalFunction:
        value = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            self.fail("unexpected trailing input", tok)
        return value

    def expr(self) -> RationalFunction:
        value = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> RationalFunction:
        value = self.factor()
        while self.peek()[0] in ("*", "/"):
            op = self.take()[0]
            rhs = self.factor()
            value = value * rhs if op == "*" else value / rhs
        return value

    def factor(self) -> RationalFunction:
        if self.peek()[0] == "-":
            self.take()
            return -self.factor()
        value = self.atom()
        if self.peek()[0] == "^":
            self.take()
            tok = self.take()
            if tok[0] != "int":
                self.fail("exponent must be a nonnegative integer literal", tok)
            value = value ** int(tok[1])
        return value

    def atom(self) -> RationalFunction:
        tok = self.take()
        if tok[0] == "int":
            return RationalFunction(Polynomial.constant(tok[1]))
        if tok[0] == "var":
            return RF_LAMBDA
        if tok[0] == "(":
            value = self.expr()
            closing = self.take()
            if closing[0] != ")":
                self.fail("unbalanced parenthesis", closing)
            return value
        self.fail("expected a number, 'l' or a parenthesised expression", tok)
        raise AssertionError  # unreachable


def parse_weight(text: str) -> RationalFunction:
    """Parse a weight expression such as ``(2*l + 1)/(l - 3)``."""
    if not text.strip():
        raise WeightSyntaxError("empty weight expression", position=0, text=text)
    return _WeightParser(text).parse()


def _frac_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _poly_str(p: Polynomial) -> str:
    if not p:
        return "0"
    parts: list[str] = []
    for i in range(len(p.coeffs) - 1, -1, -1):
        c = p.coeffs[i]
        if c == 0:
            continue
        mag = abs(c)
        if i == 0:
            body = _frac_str(mag)
        elif i == 1:
            body = "l" if mag == 1 else f"{_frac_str(mag)}*l"
        else:
            body = f"l^{i}" if mag == 1 else f"{_frac_str(mag)}*l^{i}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+{body}" if c > 0 else f"-{body}")
    return "".join(parts)


def _term_count(p: Polynomial) -> int:
    return sum(1 for c in p.coeffs if c != 0)


def format_weight(f: RationalFunction) -> str:
    """Canonical text form; reparsing it reproduces the same canonical value."""
    if f.is_zero:
        return "0"
    num_str = _poly_str(f.num)
    if f.den == P_ONE:
        return num_str
    den_str = _poly_str(f.den)
    if _term_count(f.num) > 1:
        num_str = f"({num_str})"
    if _term_count(f.den) > 1:
        den_str = f"({den_str})"
    return f"{num_str}/{den_str}"
