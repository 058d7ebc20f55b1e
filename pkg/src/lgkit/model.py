"""Model input: parsing, validation, flags, and the smoothness probe.

A model is the data (n, r, degrees, weights, polynomials) with exact
rational coefficients.  Flags are pure functions of the numeric data:

* ``calabi_yau``: sum of degrees equals sum of weights,
* ``smooth_chart``: all weights equal 1 (the total space is a manifold),
* ``elliptic``: max degree <= 2 * min degree - 1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .algebra import BigradedPoly, Monomial


class ModelError(ValueError):
    """Raised for malformed or inconsistent model documents."""


@dataclass(frozen=True)
class ModelSpec:
    """Validated model data; immutable and safe to share."""

    n: int
    r: int
    degrees: tuple[int, ...]
    weights: tuple[int, ...]
    polys: tuple[BigradedPoly, ...]

    @property
    def calabi_yau(self) -> bool:
        return sum(self.degrees) == sum(self.weights)

    @property
    def smooth_chart(self) -> bool:
        return all(w == 1 for w in self.weights)

    @property
    def elliptic(self) -> bool:
        return max(self.degrees) <= 2 * min(self.degrees) - 1

    @property
    def d_min(self) -> int:
        return min(self.degrees)

    @property
    def d_max(self) -> int:
        return max(self.degrees)

    def coprime_weights(self) -> bool:
        g = 0
        for w in self.weights:
            g = gcd(g, w)
        return g == 1

    def superpotential(self) -> BigradedPoly:
        """W = sum_k p_k * poly_k, a charge-0 weight-1 element when CY holds."""
        total = BigradedPoly.zero(self.n, self.r)
        for k, poly in enumerate(self.polys):
            pk = [0] * self.r
            pk[k] = 1
            shift = BigradedPoly(
                self.n, self.r, {Monomial((0,) * self.n, tuple(pk)): Fraction(1)}
            )
            total = total + shift * poly
        return total

    def flags(self) -> dict[str, bool]:
        return {
            "calabi_yau": self.calabi_yau,
            "smooth_chart": self.smooth_chart,
            "elliptic": self.elliptic,
        }


def _parse_coeff(raw) -> Fraction:
    if isinstance(raw, bool) or isinstance(raw, float):
        raise ModelError(f"coefficient {raw!r} is not an exact rational; use 'num/den' strings")
    if isinstance(raw, int):
        return Fraction(raw)
    if isinstance(raw, str):
        try:
            return Fraction(raw)
        except (ValueError, ZeroDivisionError) as exc:
            raise ModelError(f"cannot parse rational coefficient {raw!r}") from exc
    raise ModelError(f"coefficient {raw!r} has unsupported type {type(raw).__name__}")


def parse_model(document) -> ModelSpec:
    """Build a validated ModelSpec from a JSON document (text, dict, or path content).

    The document carries ``n``, ``r``, ``degrees``, optional ``weights``
    (default all 1), and ``polynomials``: one list of
    ``{"coeff": rational-string, "exps": [a_1..a_n]}`` terms per defining
    polynomial.  Each polynomial must be weighted homogeneous of its stated
    degree and nonzero.
    """
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise ModelError(f"model document is not valid JSON: {exc}") from exc
    if not isinstance(document, dict):
        raise ModelError("model document must be a JSON object")

    try:
        n = int(document["n"])
        r = int(document["r"])
        degrees = tuple(int(d) for d in document["degrees"])
        polys_raw = document["polynomials"]
    except KeyError as exc:
        raise ModelError(f"missing model field {exc}") from exc
    weights = tuple(int(w) for w in document.get("weights", [1] * n))

    if n < 1 or r < 1:
        raise ModelError("n and r must be positive")
    if len(degrees) != r:
        raise ModelError(f"expected {r} degrees, got {len(degrees)}")
    if len(weights) != n:
        raise ModelError(f"expected {n} weights, got {len(weights)}")
    if any(d < 1 for d in degrees) or any(w < 1 for w in weights):
        raise ModelError("degrees and weights must be positive integers")
    if len(polys_raw) != r:
        raise ModelError(f"expected {r} polynomials, got {len(polys_raw)}")

    polys = []
    for i, terms in enumerate(polys_raw):
        acc = []
        for term in terms:
            coeff = _parse_coeff(term["coeff"])
            exps = tuple(int(e) for e in term["exps"])
            if len(exps) != n:
                raise ModelError(
                    f"polynomial {i + 1}: exponent list {list(exps)} has length "
                    f"{len(exps)}, expected {n}"
                )
            if any(e < 0 for e in exps):
                raise ModelError(f"polynomial {i + 1}: negative exponent in {list(exps)}")
            acc.append((Monomial(exps, (0,) * r), coeff))
        poly = BigradedPoly.from_terms(n, r, acc)
        if poly.is_zero():
            raise ModelError(f"polynomial {i + 1} is zero")
        for m in poly.terms:
            deg = sum(w * a for w, a in zip(weights, m.x))
            if deg != degrees[i]:
                raise ModelError(
                    f"polynomial {i + 1}: monomial {m.label()} has weighted degree "
                    f"{deg}, expected {degrees[i]}"
                )
        polys.append(poly)

    return ModelSpec(n=n, r=r, degrees=degrees, weights=weights, polys=tuple(polys))


def serialize_model(spec: ModelSpec) -> str:
    """Canonical JSON text; parse(serialize(spec)) reproduces spec exactly."""
    polys = []
    for poly in spec.polys:
        terms = []
        for m in sorted(poly.terms):
            c = poly.terms[m]
            terms.append({"coeff": f"{c.numerator}/{c.denominator}", "exps": list(m.x)})
        polys.append(terms)
    doc = {
        "n": spec.n,
        "r": spec.r,
        "degrees": list(spec.degrees),
        "weights": list(spec.weights),
        "polynomials": polys,
    }
    return json.dumps(doc, indent=2, sort_keys=True)


def smoothness_probe(spec: ModelSpec, cutoff: int) -> str:
    """Probe (not certify) smoothness of the critical locus.

    Computes per-weight dimensions of the charge-0 Jacobian ring up to the
    cutoff.  A trailing window of max(d) + 1 zero dimensions reads as
    ``likely-smooth`` (finite total dimension is the proxy for a compact
    critical locus), a trailing window of positive dimensions of the same
    length reads as ``not-smooth``, anything shorter is ``inconclusive``.
    """
    if not (spec.calabi_yau and spec.smooth_chart):
        raise ModelError("smoothness probe requires the Calabi-Yau and smooth-chart flags")
    from .cohomology import jacobian_ring_charge0

    window = spec.d_max + 1
    report = jacobian_ring_charge0(spec, cutoff, stop_at_zero=False)
    tail = report.weight_dims[-window:]
    if len(tail) == window and all(d == 0 for d in tail):
        return "likely-smooth"
    if len(tail) == window and all(d > 0 for d in tail):
        return "not-smooth"
    return "inconclusive"
