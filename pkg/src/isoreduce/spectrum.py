"""Spectra of adjacency matrices whose entries depend on the spectral variable.

The characteristic equation det(M - lambda*I) = 0 of a rational-function
matrix is cleared to a single polynomial fraction: each row is multiplied by
the least common multiple of its denominators (the product of those
multipliers is tracked), and the resulting polynomial matrix is reduced by
fraction-free (Bareiss) elimination, which keeps every intermediate value an
exact minor.  The spectrum is the root multiset of the cleared numerator.

Removing vertices changes the spectrum by an advance-known multiset: one
entry per removed vertex, its loop weight (zero when loopless).  Comparison
of two spectra is therefore "equal up to the correction multiset": values are
greedily paired within tolerance and every unpaired value must be absorbed by
an unused correction entry.  Correction entries may go unused - a reduction
can lose fewer eigenvalues than it is allowed to.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import IdenticallyZeroDeterminant, LambdaLoop
from .graph import WeightedDigraph
from .ratfun import (
    P_LAMBDA,
    P_ONE,
    P_ZERO,
    Polynomial,
    RationalFunction,
    poly_lcm,
    poly_roots,
)

DEFAULT_MATCH_TOL = 1e-8
ROOT_FINDER_TOL = 1e-12


@dataclass(frozen=True)
class CharEquation:
    """Cleared characteristic equation: det(M - lambda*I) = num/den with
    gcd(num, den) = 1, both monic (the constant scale carries no roots)."""

    num: Polynomial
    den: Polynomial


@dataclass(frozen=True)
class SpectrumMultiset:
    """Eigenvalues with multiplicities, distinct at resolution ``tol``."""

    entries: tuple[tuple[complex, int], ...]
    tol: float

    def values(self) -> list[complex]:
        out: list[complex] = []
        for value, mult in self.entries:
            out.extend([value] * mult)
        return out

    def __len__(self) -> int:
        return sum(m for _, m in self.entries)


@dataclass(frozen=True)
class CorrectionSet:
    """Multiset of eigenvalue corrections contributed by removed vertices."""

    entries: tuple[complex, ...]


@dataclass(frozen=True)
class MatchVerdict:
    match: bool
    unexplained: tuple[complex, ...] = ()


def _bareiss_determinant(mat: list[list[Polynomial]]) -> Polynomial:
    """Fraction-free determinant of a polynomial matrix."""
    n = len(mat)
    if n == 0:
        return P_ONE
    a = [row[:] for row in mat]
    sign = 1
    prev = P_ONE
    for k in range(n - 1):
        if not a[k][k]:
            pivot = next((r for r in range(k + 1, n) if a[r][k]), None)
            if pivot is None:
                return P_ZERO
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]).exact_div(prev)
            a[i][k] = P_ZERO
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return -det if sign < 0 else det


def char_equation(g: WeightedDigraph) -> CharEquation:
    """Exact characteristic equation of the weighted adjacency matrix."""
    n = len(g.vertices)
    mat = g.adjacency()
    shifted: list[list[RationalFunction]] = []
    lam = RationalFunction(P_LAMBDA)
    for i in range(n):
        row = list(mat[i])
        row[i] = row[i] - lam
        shifted.append(row)

    cleared: list[list[Polynomial]] = []
    multiplier = P_ONE
    for row in shifted:
        row_lcm = P_ONE
        for entry in row:
            row_lcm = poly_lcm(row_lcm, entry.den)
        cleared.append([entry.num * row_lcm.exact_div(entry.den) for entry in row])
        multiplier = multiplier * row_lcm

    det = _bareiss_determinant(cleared)
    if not det:
        return CharEquation(P_ZERO, P_ONE)
    as_fraction = RationalFunction(det, multiplier)
    return CharEquation(as_fraction.num.monic(), as_fraction.den)


def _cluster(values: list[complex], tol: float) -> tuple[tuple[complex, int], ...]:
    entries: list[tuple[complex, int]] = []
    for z in sorted(values, key=lambda v: (v.real, v.imag)):
        if entries:
            mean, count = entries[-1]
            if abs(z - mean) <= tol:
                entries[-1] = ((mean * count + z) / (count + 1), count + 1)
                continue
        entries.append((z, 1))
    return tuple(entries)


def spectrum(g: WeightedDigraph, tol: float = DEFAULT_MATCH_TOL) -> SpectrumMultiset:
    """Eigenvalue multiset of the graph, clustered at resolution ``tol``."""
    ce = char_equation(g)
    if not ce.num:
        raise IdenticallyZeroDeterminant(
            "every value of the spectral variable solves the characteristic equation")
    roots = poly_roots(ce.num, ROOT_FINDER_TOL)
    return SpectrumMultiset(_cluster(roots, tol), tol)


def _loop_correction_values(weight: RationalFunction) -> list[complex]:
    """Correction entries for one removed vertex.

    Constant loop weights contribute themselves (zero when the vertex has no
    loop).  A loop weight that genuinely depends on the spectral variable
    contributes the solutions of lambda = weight(lambda) instead.
    """
    if weight.is_constant:
        return [complex(float(weight.constant_value()))]
    fixed_point = P_LAMBDA * weight.den - weight.num
    if not fixed_point:
        raise LambdaLoop("<loop>", stage="correction entries undefined")
    return poly_roots(fixed_point, ROOT_FINDER_TOL)


def correction_set(g: WeightedDigraph, members) -> CorrectionSet:
    """The advance-known spectral difference for removing everything outside
    ``members``: the loop weights of the removed vertices."""
    member_set = set(members)
    for label in member_set:
        g.index(label)
    entries: list[complex] = []
    for v in g.vertices:
        if v in member_set:
            continue
        entries.extend(_loop_correction_values(g.weight(v, v)))
    entries.sort(key=lambda z: (z.real, z.imag))
    return CorrectionSet(tuple(entries))


def correction_values(weights) -> CorrectionSet:
    """Correction entries for an explicit collection of removed-loop weights,
    e.g. the per-step weights recorded by a sequential reduction."""
    entries: list[complex] = []
    for w in weights:
        entries.extend(_loop_correction_values(w))
    entries.sort(key=lambda z: (z.real, z.imag))
    return CorrectionSet(tuple(entries))


def spectra_match(a: SpectrumMultiset, b: SpectrumMultiset, corr: CorrectionSet,
                  tol: float = DEFAULT_MATCH_TOL) -> MatchVerdict:
    """Pair the two spectra within tolerance and absorb the leftovers.

    Verdict is a match iff every unpaired value (from either side) sits within
    ``tol`` of a still-available correction entry; each correction entry
    absorbs at most one value, and unused entries are fine.
    """
    avals = sorted(a.values(), key=lambda z: (z.real, z.imag))
    bvals = sorted(b.values(), key=lambda z: (z.real, z.imag))
    taken = [False] * len(bvals)
    unpaired: list[complex] = []
    for z in avals:
        best, best_d = None, tol
        for i, w in enumerate(bvals):
            if taken[i]:
                continue
            d = abs(z - w)
            if d <= best_d:
                best, best_d = i, d
        if best is None:
            unpaired.append(z)
        else:
            taken[best] = True
    unpaired.extend(w for i, w in enumerate(bvals) if not taken[i])

    available = list(corr.entries)
    unexplained: list[complex] = []
    for z in unpaired:
        best, best_d = None, tol
        for i, c in enumerate(available):
            d = abs(z - c)
            if d <= best_d:
                best, best_d = i, d
        if best is None:
            unexplained.append(z)
        else:
            available.pop(best)
    return MatchVerdict(not unexplained, tuple(unexplained))
