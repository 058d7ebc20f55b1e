"""Sparse exact arithmetic for the bigraded ring Q[x, p] and its algebraic forms.

Every object carries two additive gradings: the charge (x_j contributes
w_j, p_k contributes -d_k, and dx_j / dp_k contribute like x_j / p_k) and
the weight (p_k and dp_k contribute 1, x-variables contribute 0).
Coefficients are exact rationals; dimensions computed downstream are
therefore exact ranks over Q.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator, NamedTuple


class Monomial(NamedTuple):
    """Exponent data of a monomial x^a p^b."""

    x: tuple[int, ...]
    p: tuple[int, ...]

    def __mul__(self, other: "Monomial") -> "Monomial":  # type: ignore[override]
        return Monomial(
            tuple(a + b for a, b in zip(self.x, other.x)),
            tuple(a + b for a, b in zip(self.p, other.p)),
        )

    def label(self, xnames: list[str] | None = None, pnames: list[str] | None = None) -> str:
        xs = xnames or [f"x{j + 1}" for j in range(len(self.x))]
        ps = pnames or [f"p{k + 1}" for k in range(len(self.p))]
        parts = []
        for name, e in zip(xs + ps, self.x + self.p):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"


def unit_monomial(n: int, r: int) -> Monomial:
    return Monomial((0,) * n, (0,) * r)


def bigrade(m: Monomial, spec) -> tuple[int, int]:
    """Return (charge, weight) of a monomial under the model's gradings."""
    if len(m.x) != spec.n or len(m.p) != spec.r:
        raise ValueError(
            f"exponent lengths {(len(m.x), len(m.p))} do not match (n, r) = {(spec.n, spec.r)}"
        )
    charge = sum(w * a for w, a in zip(spec.weights, m.x)) - sum(
        d * b for d, b in zip(spec.degrees, m.p)
    )
    return charge, sum(m.p)


def weighted_exponents(total: int, weights: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    """All exponent tuples a >= 0 with sum(a_j * weights[j]) == total."""
    if total < 0:
        return
    if not weights:
        if total == 0:
            yield ()
        return
    w0 = weights[0]
    rest = weights[1:]
    for a0 in range(total // w0 + 1):
        for tail in weighted_exponents(total - a0 * w0, rest):
            yield (a0,) + tail


# ---------------------------------------------------------------------------
# Polynomials


@dataclass(frozen=True)
class BigradedPoly:
    """Sparse polynomial in Q[x, p]; zero coefficients are never stored."""

    n: int
    r: int
    terms: dict[Monomial, Fraction] = field(default_factory=dict)

    @staticmethod
    def from_terms(n: int, r: int, items: Iterable[tuple[Monomial, Fraction]]) -> "BigradedPoly":
        acc: dict[Monomial, Fraction] = {}
        for m, c in items:
            c = Fraction(c)
            if not c:
                continue
            s = acc.get(m, Fraction(0)) + c
            if s:
                acc[m] = s
            else:
                acc.pop(m, None)
        return BigradedPoly(n, r, acc)

    @staticmethod
    def zero(n: int, r: int) -> "BigradedPoly":
        return BigradedPoly(n, r, {})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "BigradedPoly") -> "BigradedPoly":
        acc = dict(self.terms)
        for m, c in other.terms.items():
            s = acc.get(m, Fraction(0)) + c
            if s:
                acc[m] = s
            else:
                acc.pop(m, None)
        return BigradedPoly(self.n, self.r, acc)

    def __neg__(self) -> "BigradedPoly":
        return BigradedPoly(self.n, self.r, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "BigradedPoly") -> "BigradedPoly":
        return self + (-other)

    def __mul__(self, other: "BigradedPoly") -> "BigradedPoly":
        acc: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1 * m2
                s = acc.get(m, Fraction(0)) + c1 * c2
                if s:
                    acc[m] = s
                else:
                    acc.pop(m, None)
        return BigradedPoly(self.n, self.r, acc)

    def scale(self, c) -> "BigradedPoly":
        c = Fraction(c)
        if not c:
            return BigradedPoly.zero(self.n, self.r)
        return BigradedPoly(self.n, self.r, {m: c * v for m, v in self.terms.items()})

    def diff_x(self, j: int) -> "BigradedPoly":
        acc = {}
        for m, c in self.terms.items():
            e = m.x[j]
            if e:
                x = list(m.x)
                x[j] = e - 1
                acc[Monomial(tuple(x), m.p)] = c * e
        return BigradedPoly(self.n, self.r, acc)

    def diff_p(self, k: int) -> "BigradedPoly":
        acc = {}
        for m, c in self.terms.items():
            e = m.p[k]
            if e:
                p = list(m.p)
                p[k] = e - 1
                acc[Monomial(m.x, tuple(p))] = c * e
        return BigradedPoly(self.n, self.r, acc)

    def diff(self, slot: int) -> "BigradedPoly":
        """Derivative with respect to ambient coordinate slot (x first, then p)."""
        return self.diff_x(slot) if slot < self.n else self.diff_p(slot - self.n)

    def evaluate(self, xs, ps) -> complex:
        total = 0j
        for m, c in self.terms.items():
            v = complex(c)
            for base, e in zip(xs, m.x):
                if e:
                    v *= base**e
            for base, e in zip(ps, m.p):
                if e:
                    v *= base**e
            total += v
        return total

    def bigrades(self, spec) -> set[tuple[int, int]]:
        return {bigrade(m, spec) for m in self.terms}

    def homogeneous_bigrade(self, spec) -> tuple[int, int] | None:
        grades = self.bigrades(spec)
        return grades.pop() if len(grades) == 1 else None


# ---------------------------------------------------------------------------
# Differential forms

# A form key is (monomial, I, J): I and J are strictly increasing tuples of
# dx / dp indices.  All generators dx_j, dp_k are odd, so signs are fixed by
# the canonical order dx_1 < ... < dx_n < dp_1 < ... < dp_r.
FormKey = tuple[Monomial, tuple[int, ...], tuple[int, ...]]


def _merge_sign(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    """Sign of sorting the concatenation of two disjoint increasing tuples."""
    inversions = 0
    for x in a:
        for y in b:
            if y < x:
                inversions += 1
    return (-1) ** inversions, tuple(sorted(a + b))


@dataclass(frozen=True)
class BigradedForm:
    """Sparse algebraic differential form with exact rational coefficients."""

    n: int
    r: int
    terms: dict[FormKey, Fraction] = field(default_factory=dict)

    @staticmethod
    def zero(n: int, r: int) -> "BigradedForm":
        return BigradedForm(n, r, {})

    @staticmethod
    def from_terms(n: int, r: int, items: Iterable[tuple[FormKey, Fraction]]) -> "BigradedForm":
        acc: dict[FormKey, Fraction] = {}
        for key, c in items:
            c = Fraction(c)
            if not c:
                continue
            s = acc.get(key, Fraction(0)) + c
            if s:
                acc[key] = s
            else:
                acc.pop(key, None)
        return BigradedForm(n, r, acc)

    @staticmethod
    def from_poly(poly: BigradedPoly) -> "BigradedForm":
        return BigradedForm(poly.n, poly.r, {(m, (), ()): c for m, c in poly.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "BigradedForm") -> "BigradedForm":
        acc = dict(self.terms)
        for key, c in other.terms.items():
            s = acc.get(key, Fraction(0)) + c
            if s:
                acc[key] = s
            else:
                acc.pop(key, None)
        return BigradedForm(self.n, self.r, acc)

    def __neg__(self) -> "BigradedForm":
        return BigradedForm(self.n, self.r, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "BigradedForm") -> "BigradedForm":
        return self + (-other)

    def scale(self, c) -> "BigradedForm":
        c = Fraction(c)
        if not c:
            return BigradedForm.zero(self.n, self.r)
        return BigradedForm(self.n, self.r, {k: c * v for k, v in self.terms.items()})

    def degrees(self) -> set[int]:
        return {len(I) + len(J) for (_, I, J) in self.terms}

    def bigrades(self, spec) -> set[tuple[int, int]]:
        out = set()
        for m, I, J in self.terms:
            c, k = bigrade(m, spec)
            c += sum(spec.weights[i] for i in I) - sum(spec.degrees[j] for j in J)
            out.add((c, k + len(J)))
        return out


def wedge(a: BigradedForm, b: BigradedForm) -> BigradedForm:
    """Graded-antisymmetric product; generator tuples stay sorted, signs normalized."""
    if (a.n, a.r) != (b.n, b.r):
        raise ValueError("wedge operands live in different variable sets")
    acc: dict[FormKey, Fraction] = {}
    for (m1, I1, J1), c1 in a.terms.items():
        for (m2, I2, J2), c2 in b.terms.items():
            if set(I1) & set(I2) or set(J1) & set(J2):
                continue
            # move the dx block of b across the dp block of a
            sign = (-1) ** (len(J1) * len(I2))
            si, I = _merge_sign(I1, I2)
            sj, J = _merge_sign(J1, J2)
            key = (m1 * m2, I, J)
            s = acc.get(key, Fraction(0)) + sign * si * sj * c1 * c2
            if s:
                acc[key] = s
            else:
                acc.pop(key, None)
    return BigradedForm(a.n, a.r, acc)


def wedge_power(a: BigradedForm, k: int) -> BigradedForm:
    if k < 0:
        raise ValueError("negative wedge power")
    out = BigradedForm.from_poly(BigradedPoly(a.n, a.r, {unit_monomial(a.n, a.r): Fraction(1)}))
    for _ in range(k):
        out = wedge(out, a)
    return out


def euler_contract(f: BigradedForm, spec) -> BigradedForm:
    """Contract against the charge Euler field: dx_j -> w_j x_j, dp_k -> -d_k p_k.

    This is an odd derivation; contracting twice gives zero.
    """
    acc: dict[FormKey, Fraction] = {}

    def put(key: FormKey, c: Fraction) -> None:
        s = acc.get(key, Fraction(0)) + c
        if s:
            acc[key] = s
        else:
            acc.pop(key, None)

    for (m, I, J), c in f.terms.items():
        for pos, i in enumerate(I):
            x = list(m.x)
            x[i] += 1
            key = (Monomial(tuple(x), m.p), I[:pos] + I[pos + 1 :], J)
            put(key, c * spec.weights[i] * (-1) ** pos)
        for pos, j in enumerate(J):
            p = list(m.p)
            p[j] += 1
            key = (Monomial(m.x, tuple(p)), I, J[:pos] + J[pos + 1 :])
            put(key, c * (-spec.degrees[j]) * (-1) ** (len(I) + pos))
    return BigradedForm(f.n, f.r, acc)


# ---------------------------------------------------------------------------
# Bidegree bases


@dataclass(frozen=True)
class BidegreeBasis:
    """Deterministically ordered basis of (Omega^p)_{charge, (weight)}."""

    charge: int
    weight: int
    degree: int
    elements: tuple[FormKey, ...]
    index: dict[FormKey, int]

    def __len__(self) -> int:
        return len(self.elements)


def monomial_basis(spec, charge: int, weight: int) -> list[Monomial]:
    """All monomials of the given charge and weight, graded-lex ordered."""
    out = []
    if weight < 0:
        return out
    for b in weighted_exponents(weight, (1,) * spec.r):
        xdeg = charge + sum(d * bi for d, bi in zip(spec.degrees, b))
        if xdeg < 0:
            continue
        for a in weighted_exponents(xdeg, tuple(spec.weights)):
            out.append(Monomial(a, b))
    out.sort()
    return out


def enumerate_bidegree(spec, charge: int, weight: int, degree: int) -> BidegreeBasis:
    """Complete, duplicate-free basis of the (charge, weight) piece of p-forms."""
    if weight < 0 or degree < 0:
        elems: list[FormKey] = []
    else:
        elems = []
        for jsize in range(0, min(degree, spec.r) + 1):
            isize = degree - jsize
            if isize > spec.n:
                continue
            mono_weight = weight - jsize
            if mono_weight < 0:
                continue
            for J in combinations(range(spec.r), jsize):
                dJ = sum(spec.degrees[j] for j in J)
                for I in combinations(range(spec.n), isize):
                    wI = sum(spec.weights[i] for i in I)
                    mono_charge = charge - wI + dJ
                    for m in monomial_basis(spec, mono_charge, mono_weight):
                        elems.append((m, I, J))
        elems.sort()
    return BidegreeBasis(
        charge, weight, degree, tuple(elems), {e: i for i, e in enumerate(elems)}
    )


def form_coordinates(f: BigradedForm, basis: BidegreeBasis) -> dict[int, Fraction]:
    """Coordinates of a form in a bidegree basis; raises if a term falls outside."""
    row: dict[int, Fraction] = {}
    for key, c in f.terms.items():
        idx = basis.index.get(key)
        if idx is None:
            raise ValueError(f"form term {key} is not in the bidegree basis")
        row[idx] = c
    return row
