"""Jacobian ring, Koszul and twisted de Rham cohomology, and dimension tables.

All exact computations reduce to ranks of sparse rational matrices on
bidegree blocks (fixed charge 0, fixed weight, fixed form degree).  The
superpotential differential dW raises weight by one and preserves charge,
so the complexes split into strands that are processed independently.

Dimension bookkeeping used throughout (all per block, N = block dimension):

* Koszul cohomology at (p, k):
  dim H = [N(p,k) - rank dW(p,k)] - rank dW(p-1,k-1).
* Global-holomorphic-form cohomology at (p, k) (the weight-k piece of the
  complex of Euler-kernel forms):
  dim H = [N(p,k) - rank stack(p,k)] - [rank stack(p-1,k-1) - rank euler(p-1,k-1)],
  where stack is the map (dW wedge, euler contraction) into the direct sum
  of the two codomain blocks.  Both identities are rank-nullity plus the
  fact that the Euler kernel is cut out linearly inside the block.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb

from .algebra import (
    BidegreeBasis,
    BigradedForm,
    BigradedPoly,
    Monomial,
    enumerate_bidegree,
    euler_contract,
    form_coordinates,
    monomial_basis,
    unit_monomial,
    wedge,
    wedge_power,
)
from .linalg import RowEliminator, row_to_int
from .model import ModelError, ModelSpec

# ---------------------------------------------------------------------------
# Reports


@dataclass
class JacobianReport:
    """Per-weight dimensions of the charge-0 Jacobian ring."""

    weight_dims: list[int]
    total: int
    stabilized: bool
    derived_zero_from: int | None = None
    basis_by_weight: dict[int, list[str]] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "weight_dims": self.weight_dims,
            "total": self.total,
            "stabilized": self.stabilized,
            "derived_zero_from": self.derived_zero_from,
            "basis_by_weight": self.basis_by_weight,
        }


@dataclass
class CohomologyTable:
    """Sparse dimension table for one page; indices are ints or (p, q) pairs."""

    label: str
    entries: dict
    notes: dict = field(default_factory=dict)
    differentials: list = field(default_factory=list)

    def total(self) -> int:
        return sum(self.entries.values())

    def to_dict(self) -> dict:
        def norm(ix):
            return list(ix) if isinstance(ix, tuple) else ix

        out = {
            "label": self.label,
            "entries": sorted(
                ([norm(ix), dim] for ix, dim in self.entries.items()),
                key=lambda e: (isinstance(e[0], list), e[0]),
            ),
        }
        if self.notes:
            out["notes"] = {str(k): v for k, v in sorted(self.notes.items(), key=lambda kv: str(kv[0]))}
        if self.differentials:
            out["differentials"] = self.differentials
        return out


# ---------------------------------------------------------------------------
# Generators and the twisted differential


def jacobian_generators(spec: ModelSpec) -> list[BigradedPoly]:
    """Partials of W: the n x-derivatives (charge -w_j, weight 1) then the
    r defining polynomials themselves (charge d_k, weight 0)."""
    w = spec.superpotential()
    gens = [w.diff_x(j) for j in range(spec.n)]
    gens.extend(spec.polys)
    return gens


def poly_differential(poly: BigradedPoly) -> BigradedForm:
    """The algebraic differential of a polynomial as a 1-form."""
    terms = []
    for j in range(poly.n):
        for m, c in poly.diff_x(j).terms.items():
            terms.append(((m, (j,), ()), c))
    for k in range(poly.r):
        for m, c in poly.diff_p(k).terms.items():
            terms.append(((m, (), (k,)), c))
    return BigradedForm.from_terms(poly.n, poly.r, terms)


def differential_one_form(spec: ModelSpec) -> BigradedForm:
    """dW as an algebraic 1-form: sum_j (dW/dx_j) dx_j + sum_k W_k dp_k."""
    return poly_differential(spec.superpotential())


def _dp_form(spec: ModelSpec, k: int) -> BigradedForm:
    return BigradedForm.from_terms(
        spec.n, spec.r, [((unit_monomial(spec.n, spec.r), (), (k,)), Fraction(1))]
    )


def euler_preimage_of_dW(spec: ModelSpec) -> BigradedForm:
    """The 2-form sum_k (1/d_k) dW_k ^ dp_k.

    Contracting it against the charge Euler field returns dW, and its r-th
    wedge power kills dW; its lower powers represent the odd classes of the
    second page.
    """
    total = BigradedForm.zero(spec.n, spec.r)
    for k in range(spec.r):
        factor = wedge(poly_differential(spec.polys[k]), _dp_form(spec, k))
        total = total + factor.scale(Fraction(1, spec.degrees[k]))
    return total


# ---------------------------------------------------------------------------
# Strand engine: cached blocks and ranks


class StrandEngine:
    """Caches bidegree bases and exact ranks of the block maps at charge 0.

    Row images are produced directly as integer dicts: the coefficients of
    dW are cleared of denominators once (a uniform column scaling that
    leaves every rank and membership test unchanged), and the wedge and
    contraction signs are inlined.
    """

    def __init__(self, spec: ModelSpec):
        self.spec = spec
        self.dW = differential_one_form(spec)
        self._basis: dict[tuple[int, int], BidegreeBasis] = {}
        self._rank: dict[tuple[str, int, int], int] = {}
        # integer dW terms, split by generator type
        from math import gcd as _gcd

        denom_lcm = 1
        for c in self.dW.terms.values():
            denom_lcm = denom_lcm * c.denominator // _gcd(denom_lcm, c.denominator)
        self._dw_xterms: list[tuple[int, tuple, tuple, int]] = []
        self._dw_pterms: list[tuple[int, tuple, tuple, int]] = []
        for (m, I, J), c in self.dW.terms.items():
            ic = int(c * denom_lcm)
            if I:
                self._dw_xterms.append((I[0], m.x, m.p, ic))
            else:
                self._dw_pterms.append((J[0], m.x, m.p, ic))
        self._dw_xterms.sort()
        self._dw_pterms.sort()

    def basis(self, p: int, k: int) -> BidegreeBasis:
        key = (p, k)
        if key not in self._basis:
            self._basis[key] = enumerate_bidegree(self.spec, 0, k, p)
        return self._basis[key]

    # -- row builders ------------------------------------------------------

    def _dw_row_int(self, element, cod_index) -> dict[int, int]:
        m, I, J = element
        mx, mp = m.x, m.p
        row: dict[int, int] = {}
        for j, gx, gp, c in self._dw_xterms:
            if j in I:
                continue
            pos = 0
            for i in I:
                if i < j:
                    pos += 1
                else:
                    break
            key = (
                Monomial(
                    tuple(a + b for a, b in zip(mx, gx)),
                    tuple(a + b for a, b in zip(mp, gp)),
                ),
                I[:pos] + (j,) + I[pos:],
                J,
            )
            idx = cod_index[key]
            v = row.get(idx, 0) + (-c if pos & 1 else c)
            if v:
                row[idx] = v
            else:
                del row[idx]
        base_sign = -1 if len(I) & 1 else 1
        for l, gx, gp, c in self._dw_pterms:
            if l in J:
                continue
            pos = 0
            for jj in J:
                if jj < l:
                    pos += 1
                else:
                    break
            key = (
                Monomial(
                    tuple(a + b for a, b in zip(mx, gx)),
                    tuple(a + b for a, b in zip(mp, gp)),
                ),
                I,
                J[:pos] + (l,) + J[pos:],
            )
            idx = cod_index[key]
            s = base_sign * (-1 if pos & 1 else 1)
            v = row.get(idx, 0) + s * c
            if v:
                row[idx] = v
            else:
                del row[idx]
        return row

    def _euler_row_int(self, element, cod_index) -> dict[int, int]:
        m, I, J = element
        weights, degrees = self.spec.weights, self.spec.degrees
        row: dict[int, int] = {}
        for pos, i in enumerate(I):
            x = list(m.x)
            x[i] += 1
            key = (Monomial(tuple(x), m.p), I[:pos] + I[pos + 1 :], J)
            idx = cod_index[key]
            c = weights[i] * (-1 if pos & 1 else 1)
            v = row.get(idx, 0) + c
            if v:
                row[idx] = v
            else:
                del row[idx]
        base = len(I)
        for pos, l in enumerate(J):
            p_exp = list(m.p)
            p_exp[l] += 1
            key = (Monomial(m.x, tuple(p_exp)), I, J[:pos] + J[pos + 1 :])
            idx = cod_index[key]
            c = -degrees[l] * (-1 if (base + pos) & 1 else 1)
            v = row.get(idx, 0) + c
            if v:
                row[idx] = v
            else:
                del row[idx]
        return row

    def dw_row(self, element, codomain: BidegreeBasis) -> dict[int, Fraction]:
        image = wedge(
            self.dW, BigradedForm(self.spec.n, self.spec.r, {element: Fraction(1)})
        )
        return form_coordinates(image, codomain)

    def euler_row(self, element, codomain: BidegreeBasis) -> dict[int, Fraction]:
        image = euler_contract(
            BigradedForm(self.spec.n, self.spec.r, {element: Fraction(1)}), self.spec
        )
        return form_coordinates(image, codomain)

    def _int_rows(self, kind: str, p: int, k: int):
        domain = self.basis(p, k)
        if kind == "dW":
            cod_index = self.basis(p + 1, k + 1).index
            for el in domain.elements:
                yield self._dw_row_int(el, cod_index)
        elif kind == "euler":
            cod_index = self.basis(p - 1, k).index
            for el in domain.elements:
                yield self._euler_row_int(el, cod_index)
        elif kind == "stack":
            cod1 = self.basis(p + 1, k + 1)
            cod2_index = self.basis(p - 1, k).index
            offset = len(cod1)
            cod1_index = cod1.index
            for el in domain.elements:
                row = self._dw_row_int(el, cod1_index)
                for idx, c in self._euler_row_int(el, cod2_index).items():
                    row[offset + idx] = c
                yield row
        else:  # pragma: no cover
            raise ValueError(kind)

    def rank(self, kind: str, p: int, k: int) -> int:
        """Exact rank of the requested block map; cached."""
        key = (kind, p, k)
        if key in self._rank:
            return self._rank[key]
        if p < 0 or k < 0 or len(self.basis(p, k)) == 0:
            self._rank[key] = 0
            return 0
        if kind == "euler" and p == 0:
            self._rank[key] = 0
            return 0
        elim = RowEliminator()
        rows = [r for r in self._int_rows(kind, p, k) if r]
        rows.sort(key=lambda r: (len(r), sorted(r.items())))
        for row in rows:
            elim.add(row)
        self._rank[key] = elim.rank
        return elim.rank

    # -- derived dimensions --------------------------------------------------

    def block_dim(self, p: int, k: int) -> int:
        if p < 0 or k < 0:
            return 0
        return len(self.basis(p, k))

    def koszul_dim(self, p: int, k: int) -> int:
        """dim of the degree-p, weight-k piece of H((Omega)_0, dW)."""
        n = self.block_dim(p, k)
        if n == 0:
            return 0
        ker = n - self.rank("dW", p, k)
        if p == 0 or k == 0 or self.block_dim(p - 1, k - 1) == 0:
            return ker
        return ker - self.rank("dW", p - 1, k - 1)

    def euler_kernel_dim(self, p: int, k: int) -> int:
        """dim of the weight-k global holomorphic p-forms (Euler kernel)."""
        n = self.block_dim(p, k)
        if n == 0:
            return 0
        return n - self.rank("euler", p, k)

    def derham0_dim(self, p: int, k: int) -> int:
        """dim of the degree-p, weight-k piece of H(global forms, dW)."""
        n = self.block_dim(p, k)
        if n == 0:
            return 0
        ker = n - self.rank("stack", p, k)
        if p == 0 or k == 0 or self.block_dim(p - 1, k - 1) == 0:
            return ker
        image = self.rank("stack", p - 1, k - 1) - self.rank("euler", p - 1, k - 1)
        return ker - image

    # -- membership tests ----------------------------------------------------

    def in_dw_image(self, form: BigradedForm, p: int, k: int) -> bool:
        """Is the (p, k) cocycle a dW-multiple of an arbitrary (p-1, k-1) form?"""
        cod = self.basis(p, k)
        target = row_to_int(form_coordinates(form, cod))
        elim = RowEliminator()
        for row in self._int_rows("dW", p - 1, k - 1):
            if row:
                elim.add(row)
        return elim.contains(target)

    def in_dw_image_of_euler_kernel(self, form: BigradedForm, p: int, k: int) -> bool:
        """Is the (p, k) cocycle of the form dW ^ u with u a global form?

        Solvability of (dW ^ u, euler(u)) = (form, 0) over the full
        (p-1, k-1) block, tested through row-space membership of the
        stacked map.  Membership is invariant under the overall scaling of
        either the target vector or the dW coefficient block.
        """
        cod1 = self.basis(p, k)
        target = row_to_int(form_coordinates(form, cod1))
        elim = RowEliminator()
        for row in self._int_rows("stack", p - 1, k - 1):
            if row:
                elim.add(row)
        return elim.contains(target)

    # -- consistency helpers ---------------------------------------------------

    def check_d_squared(self, p: int, k: int) -> bool:
        """dW ^ dW ^ basis = 0, verified exactly on the whole block."""
        for el in self.basis(p, k).elements:
            once = wedge(self.dW, BigradedForm(self.spec.n, self.spec.r, {el: Fraction(1)}))
            if not wedge(self.dW, once).is_zero():
                return False
        return True


# ---------------------------------------------------------------------------
# Jacobian ring


def jacobian_ring_charge0(
    spec: ModelSpec,
    cutoff: int,
    stop_at_zero: bool = True,
    with_basis: bool = False,
) -> JacobianReport:
    """Per-weight dimensions of the charge-0 Jacobian ring by exact elimination.

    For weight k the ideal block is spanned by generator times all
    complementary-bidegree monomials; the quotient dimension is the block
    dimension minus the rank.  The charge-0 subring is generated in weight
    one (all weights equal 1 here), so a zero weight forces every later
    weight to vanish; with ``stop_at_zero`` the remaining window is filled
    in by that argument instead of by elimination.
    """
    if cutoff < 1:
        raise ModelError("jacobian cutoff must be at least 1")
    if not (spec.calabi_yau and spec.smooth_chart):
        raise ModelError("charge-0 Jacobian ring requires Calabi-Yau and smooth-chart flags")

    gens = jacobian_generators(spec)
    gen_grades = []
    for g in gens:
        grade = g.homogeneous_bigrade(spec)
        if grade is None:
            raise ModelError("Jacobian generator is not bihomogeneous")
        gen_grades.append(grade)

    window = spec.d_max + 1
    dims: list[int] = []
    derived_from = None
    basis_by_weight: dict[int, list[str]] = {}

    for k in range(cutoff + 1):
        cols = monomial_basis(spec, 0, k)
        index = {m: i for i, m in enumerate(cols)}
        elim = RowEliminator()
        rows = []
        for g, (cg, kg) in zip(gens, gen_grades):
            if k - kg < 0:
                continue
            for m in monomial_basis(spec, -cg, k - kg):
                row: dict[int, Fraction] = {}
                for gm, c in g.terms.items():
                    row_m = m * gm
                    row[index[row_m]] = row.get(index[row_m], Fraction(0)) + c
                introws = row_to_int(row)
                if introws:
                    rows.append(introws)
        rows.sort(key=lambda rr: (len(rr), sorted(rr.items())))
        for row in rows:
            elim.add(row)
        dim = len(cols) - elim.rank
        dims.append(dim)
        if with_basis:
            free = [m for m in cols if index[m] not in elim.pivots]
            basis_by_weight[k] = [m.label() for m in free]
        if stop_at_zero and dim == 0:
            derived_from = k + 1
            dims.extend([0] * min(window, cutoff - k))
            break

    if derived_from is not None:
        # the charge-0 subring is generated in weight 1, so one zero weight
        # forces all later weights to vanish
        stabilized = True
    else:
        stabilized = len(dims) > window and all(d == 0 for d in dims[-window:])
    return JacobianReport(
        weight_dims=dims,
        total=sum(dims),
        stabilized=stabilized,
        derived_zero_from=derived_from,
        basis_by_weight=basis_by_weight,
    )


# ---------------------------------------------------------------------------
# Independent oracle: Hodge numbers of smooth complete intersections


@dataclass
class HodgeDiamond:
    dimension: int
    hodge: dict[tuple[int, int], int]
    betti: list[int]
    primitive_middle: int

    def to_dict(self) -> dict:
        return {
            "dimension": self.dimension,
            "hodge": {f"{p},{q}": h for (p, q), h in sorted(self.hodge.items())},
            "betti": self.betti,
            "primitive_middle": self.primitive_middle,
        }


def _chi_line_bundle(big_n: int, t: int) -> Fraction:
    """Euler characteristic polynomial chi(P^N, O(t)) = binom(t + N, N)."""
    num = Fraction(1)
    for i in range(1, big_n + 1):
        num *= Fraction(t + i, i)
    return num


@lru_cache(maxsize=None)
def _chi_forms(big_n: int, q: int, t: int) -> Fraction:
    """chi(P^N, Omega^q(t)) from the exterior powers of the Euler sequence."""
    if q < 0 or q > big_n:
        return Fraction(0)
    if q == 0:
        return _chi_line_bundle(big_n, t)
    return comb(big_n + 1, q) * _chi_line_bundle(big_n, t - q) - _chi_forms(big_n, q - 1, t)


def hodge_oracle(n: int, r: int, degrees) -> HodgeDiamond:
    """Hodge diamond of a smooth complete intersection of the given degrees
    in projective (n-1)-space, via Euler characteristics.

    Restriction to the intersection uses the Koszul resolution, and the
    cotangent sheaf enters through the conormal filtration; middle Hodge
    numbers are read off from chi(Omega^p) and the Lefschetz description of
    the off-middle part.  Entirely independent of the Jacobian-ring path.
    """
    degrees = tuple(int(d) for d in degrees)
    if len(degrees) != r:
        raise ValueError("degree list length must equal r")
    big_n = n - 1
    m = big_n - r
    if m <= 0:
        raise ValueError(f"complete intersection has non-positive dimension {m}")

    def chi_restricted(q: int, t: int) -> Fraction:
        """chi(X, Omega^q_P(t)|_X) via the Koszul resolution of X in P^N."""
        total = Fraction(0)
        for mask in range(1 << r):
            twist = t
            sign = 1
            for i in range(r):
                if mask >> i & 1:
                    twist -= degrees[i]
                    sign = -sign
            total += sign * _chi_forms(big_n, q, twist)
        return total

    def multisets(size: int):
        """Multisets of the degree list, as twist sums, with multiplicity."""
        if size == 0:
            yield 0
            return
        def rec(start: int, left: int, acc: int):
            if left == 0:
                yield acc
                return
            for i in range(start, r):
                yield from rec(i, left - 1, acc + degrees[i])
        yield from rec(0, size, 0)

    chi_p = []
    for p in range(m + 1):
        total = Fraction(0)
        for j in range(p + 1):
            sign = (-1) ** j
            for twist in multisets(j):
                total += sign * chi_restricted(p - j, -twist)
        chi_p.append(total)

    hodge: dict[tuple[int, int], int] = {}
    for p in range(m + 1):
        for q in range(m + 1):
            if p + q != m:
                hodge[(p, q)] = 1 if p == q else 0
    for p in range(m + 1):
        q = m - p
        chi = chi_p[p]
        if 2 * p == m:
            val = (-1) ** p * chi
        else:
            val = (-1) ** q * (chi - (-1) ** p)
        val = int(val)
        if val < 0:
            raise ArithmeticError(f"negative Hodge number h^({p},{q}) = {val}")
        hodge[(p, q)] = val

    betti = [sum(hodge.get((p, k - p), 0) for p in range(k + 1)) for k in range(2 * m + 1)]
    primitive = betti[m] - (1 if m % 2 == 0 else 0)
    return HodgeDiamond(dimension=m, hodge=hodge, betti=betti, primitive_middle=primitive)


# ---------------------------------------------------------------------------
# Formula-driven tables


def cohomology_of_V(spec: ModelSpec, dim_r: int) -> CohomologyTable:
    """Classical cohomology of the critical locus from the middle-dimension count."""
    if dim_r < 0:
        raise ValueError("dim_r must be nonnegative")
    m = spec.n - spec.r - 1
    entries: dict[int, int] = {}
    for p in range(0, 2 * m + 1):
        if p == m:
            entries[p] = dim_r + (1 if m % 2 == 0 else 0)
        elif p % 2 == 0:
            entries[p] = 1
    return CohomologyTable("HV", entries)


def pv_table(spec: ModelSpec, dim_r: int) -> CohomologyTable:
    """Twisted polyvector cohomology table (degrees symmetric about zero)."""
    m = spec.n - spec.r - 1
    entries: dict[int, int] = {}
    for k in range(0, m + 1):
        p = -m + 2 * k
        if p != 0:
            entries[p] = 1
    entries[0] = dim_r + (1 if m % 2 == 0 else 0)
    return CohomologyTable("HPV", entries)


def spectral_pages(
    spec: ModelSpec, dim_r: int
) -> tuple[CohomologyTable, CohomologyTable, CohomologyTable]:
    """First, second, and limiting pages of the weight spectral sequence.

    The q = 0 row of the first page consists of infinite-dimensional spaces
    of global forms; those slots are recorded symbolically in the notes.
    The only nontrivial higher differentials are the isomorphisms
    d_{p+1}^{(p,p)} for p = 1 .. r-1, recorded in the metadata.
    """
    n, r = spec.n, spec.r
    e1_entries = {(p, p): 1 for p in range(1, n)}
    e1_notes = {
        (p, 0): "global holomorphic p-forms (infinite-dimensional)" for p in range(0, n + r)
    }
    e1 = CohomologyTable("E1", e1_entries, notes=e1_notes)

    e2_entries: dict[tuple[int, int], int] = {(p, p): 1 for p in range(1, n)}
    for k in range(2, r + 1):
        e2_entries[(2 * k - 1, 0)] = 1
    e2_entries[(n + r - 1, 0)] = dim_r
    diffs = [
        {"page": p + 1, "from": [p, p], "to": [2 * p + 1, 0], "isomorphism": True}
        for p in range(1, r)
    ]
    e2 = CohomologyTable("E2", e2_entries, differentials=diffs)

    einf_entries: dict[tuple[int, int], int] = {(p, p): 1 for p in range(r, n)}
    einf_entries[(n + r - 1, 0)] = dim_r
    einf = CohomologyTable("Einf", einf_entries)
    return e1, e2, einf


# ---------------------------------------------------------------------------
# Strand computations


def default_strand_cutoff(spec: ModelSpec, jacobian: JacobianReport) -> int:
    """Weights that can carry classes, plus a vanishing window."""
    top_weight = max(
        (k for k, d in enumerate(jacobian.weight_dims) if d > 0), default=0
    )
    return spec.r + top_weight + spec.d_max + 1


@dataclass
class StrandTable:
    """Aggregated strand dimensions for one complex."""

    label: str
    by_degree: dict[int, dict[int, int]]
    stabilized: dict[int, bool]

    def totals(self) -> dict[int, int]:
        return {p: sum(d.values()) for p, d in self.by_degree.items()}

    def to_table(self) -> CohomologyTable:
        entries = {p: t for p, t in self.totals().items() if t}
        notes = {
            p: "strand window not exhausted within cutoff"
            for p, ok in self.stabilized.items()
            if not ok
        }
        return CohomologyTable(self.label, entries, notes=notes)


def _strand_scan(
    engine: StrandEngine, dim_at, p: int, cutoff: int, window: int
) -> tuple[dict[int, int], bool]:
    """Scan weights 0..cutoff at fixed degree until a zero window appears."""
    dims: dict[int, int] = {}
    zero_run = 0
    seen_block = False
    for k in range(cutoff + 1):
        if engine.block_dim(p, k) == 0:
            if seen_block:
                zero_run += 1
                if zero_run >= window:
                    return dims, True
            continue
        seen_block = True
        d = dim_at(p, k)
        if d:
            dims[k] = d
            zero_run = 0
        else:
            zero_run += 1
            if zero_run >= window:
                return dims, True
    return dims, not seen_block


def koszul_cohomology(
    spec: ModelSpec, degree: int, cutoff: int, engine: StrandEngine | None = None
) -> tuple[dict[int, int], bool]:
    """Per-strand dimensions of the degree-`degree` Koszul cohomology of
    (algebraic forms at charge 0, dW)."""
    if cutoff < 1:
        raise ModelError("strand cutoff must be at least 1")
    if not (spec.calabi_yau and spec.smooth_chart):
        raise ModelError("Koszul cohomology requires Calabi-Yau and smooth-chart flags")
    engine = engine or StrandEngine(spec)
    return _strand_scan(engine, engine.koszul_dim, degree, cutoff, spec.d_max + 1)


def h0_omega(spec: ModelSpec, degree: int, weight: int) -> list[BigradedForm]:
    """Deterministic basis of the global holomorphic forms of the given
    degree and weight: the Euler-contraction kernel inside the charge-0 block."""
    if not spec.smooth_chart:
        raise ModelError("global form computation requires the smooth-chart flag")
    from .linalg import linear_kernel

    engine = StrandEngine(spec)
    domain = engine.basis(degree, weight)
    if len(domain) == 0:
        return []
    if degree == 0:
        return [
            BigradedForm(spec.n, spec.r, {el: Fraction(1)}) for el in domain.elements
        ]
    if len(domain) > 4000:
        raise ModelError("bidegree block too large for dense kernel extraction")
    cod = engine.basis(degree - 1, weight)
    rows = []
    for el in domain.elements:
        coords = engine.euler_row(el, cod)
        rows.append([coords.get(i, Fraction(0)) for i in range(len(cod))])
    _, kernel = linear_kernel(rows)
    out = []
    for combo in kernel:
        terms = {
            el: c for el, c in zip(domain.elements, combo) if c
        }
        out.append(BigradedForm(spec.n, spec.r, terms))
    return out


@dataclass
class DeRhamZeroReport:
    """The q = 0 row computed by strand linear algebra plus class witnesses."""

    by_degree: dict[int, dict[int, int]]
    stabilized: dict[int, bool]
    totals: dict[int, int]
    odd_class_checks: list[dict]

    def to_table(self) -> CohomologyTable:
        entries = {p: t for p, t in self.totals.items() if t}
        notes = {
            p: "strand window not exhausted within cutoff"
            for p, ok in self.stabilized.items()
            if not ok
        }
        return CohomologyTable("dRham0", entries, notes=notes)


def derham0_cohomology(
    spec: ModelSpec, cutoff: int, engine: StrandEngine | None = None
) -> DeRhamZeroReport:
    """Strand-by-strand cohomology of (global holomorphic forms, dW).

    Also certifies the odd generators: for k = 1 .. r-1 the class of
    dW ^ (euler preimage)^k is checked to be a nonzero cocycle that is not
    a dW-multiple of a global form.
    """
    if cutoff < 1:
        raise ModelError("strand cutoff must be at least 1")
    if not (spec.calabi_yau and spec.smooth_chart):
        raise ModelError("twisted de Rham computation requires CY and smooth-chart flags")
    engine = engine or StrandEngine(spec)
    window = spec.d_max + 1
    by_degree: dict[int, dict[int, int]] = {}
    stabilized: dict[int, bool] = {}
    for p in range(0, spec.n + spec.r + 1):
        dims, ok = _strand_scan(engine, engine.derham0_dim, p, cutoff, window)
        by_degree[p] = dims
        stabilized[p] = ok

    checks = []
    theta = euler_preimage_of_dW(spec)
    dw = engine.dW
    for k in range(1, spec.r):
        cls = wedge(dw, wedge_power(theta, k))
        p, weight = 2 * k + 1, k + 1
        is_cocycle = wedge(dw, cls).is_zero()
        in_kernel = euler_contract(cls, spec).is_zero()
        trivial = engine.in_dw_image_of_euler_kernel(cls, p, weight)
        checks.append(
            {
                "power": k,
                "degree": p,
                "weight": weight,
                "nonzero_form": not cls.is_zero(),
                "cocycle": bool(is_cocycle),
                "global_form": bool(in_kernel),
                "nontrivial_class": not trivial,
            }
        )
    totals = {p: sum(d.values()) for p, d in by_degree.items()}
    return DeRhamZeroReport(by_degree, stabilized, totals, checks)


def koszul_table(
    spec: ModelSpec, cutoff: int, engine: StrandEngine | None = None
) -> StrandTable:
    engine = engine or StrandEngine(spec)
    by_degree = {}
    stabilized = {}
    for p in range(0, spec.n + spec.r + 1):
        dims, ok = koszul_cohomology(spec, p, cutoff, engine)
        by_degree[p] = dims
        stabilized[p] = ok
    return StrandTable("Koszul", by_degree, stabilized)


def koszul_witness_class(spec: ModelSpec) -> BigradedForm:
    """dW_1 ^ dp_1 ^ ... ^ dW_r ^ dp_r, the generator in degree 2r."""
    total = None
    for k in range(spec.r):
        factor = wedge(poly_differential(spec.polys[k]), _dp_form(spec, k))
        total = factor if total is None else wedge(total, factor)
    assert total is not None
    return total


def koszul_witness_nonzero(spec: ModelSpec, engine: StrandEngine | None = None) -> bool:
    """The 2r-degree witness is a nonzero Koszul class (exact check)."""
    engine = engine or StrandEngine(spec)
    cls = koszul_witness_class(spec)
    if cls.is_zero():
        return False
    if not wedge(engine.dW, cls).is_zero():
        return False
    return not engine.in_dw_image(cls, 2 * spec.r, spec.r)


# ---------------------------------------------------------------------------
# Full report


def cohomology_report(
    spec: ModelSpec,
    weight_cutoff: int | None = None,
    strand_cutoff: int | None = None,
    strands: bool = True,
    with_basis: bool = False,
) -> dict:
    """All pages: Jacobian report, formula tables, and (optionally) the
    strand-verified Koszul and twisted de Rham rows, with cross-checks."""
    if weight_cutoff is None:
        weight_cutoff = 4 * spec.d_max
    jacobian = jacobian_ring_charge0(spec, weight_cutoff, with_basis=with_basis)
    dim_r = jacobian.total
    oracle = hodge_oracle(spec.n, spec.r, spec.degrees)
    hv = cohomology_of_V(spec, dim_r)
    hpv = pv_table(spec, dim_r)
    e1, e2, einf = spectral_pages(spec, dim_r)

    checks = [
        {
            "name": "jacobian_matches_hodge_oracle",
            "value": dim_r,
            "expected": oracle.primitive_middle,
            "tolerance": 0,
            "pass": dim_r == oracle.primitive_middle,
        },
        {
            "name": "total_dimension_identity_pv_vs_v",
            "value": hpv.total(),
            "expected": hv.total(),
            "tolerance": 0,
            "pass": hpv.total() == hv.total(),
        },
        {
            "name": "einf_total_matches_v",
            "value": einf.total(),
            "expected": hv.total(),
            "tolerance": 0,
            "pass": einf.total() == hv.total(),
        },
    ]

    report = {
        "flags": spec.flags(),
        "jacobian": jacobian.to_dict(),
        "hodge_oracle": oracle.to_dict(),
        "pages": {t.label: t.to_dict() for t in (e1, e2, einf, hpv, hv)},
        "checks": checks,
    }

    if strands:
        engine = StrandEngine(spec)
        if strand_cutoff is None:
            strand_cutoff = default_strand_cutoff(spec, jacobian)
        kt = koszul_table(spec, strand_cutoff, engine)
        dr = derham0_cohomology(spec, strand_cutoff, engine)
        report["pages"]["Koszul"] = kt.to_table().to_dict()
        report["pages"]["dRham0"] = dr.to_table().to_dict()
        report["strands"] = {
            "cutoff": strand_cutoff,
            "koszul": {str(p): d for p, d in kt.by_degree.items()},
            "dRham0": {str(p): d for p, d in dr.by_degree.items()},
            "odd_class_checks": dr.odd_class_checks,
        }
        allowed = {2 * spec.r, spec.n + spec.r - 1, spec.n + spec.r}
        support_ok = all(
            not dims or p in allowed for p, dims in kt.by_degree.items()
        )
        row_expected = {
            p: d for (p, q), d in e2.entries.items() if q == 0
        }
        drham_total = {p: t for p, t in dr.totals.items() if t}
        top = spec.n + spec.r
        witness_ok = koszul_witness_nonzero(spec, engine)
        checks.extend(
            [
                {
                    "name": "koszul_support",
                    "value": sorted(p for p, d in kt.by_degree.items() if d),
                    "expected": sorted(
                        p for p in allowed if kt.by_degree.get(p)
                    ),
                    "tolerance": 0,
                    "pass": support_ok,
                },
                {
                    "name": "koszul_witness_class_nonzero",
                    "value": witness_ok,
                    "expected": True,
                    "tolerance": 0,
                    "pass": witness_ok,
                },
                {
                    "name": "derham0_matches_e2_row",
                    "value": drham_total,
                    "expected": row_expected,
                    "tolerance": 0,
                    "pass": drham_total == row_expected,
                },
                {
                    "name": "top_koszul_equals_jacobian",
                    "value": sum(kt.by_degree.get(top, {}).values()),
                    "expected": dim_r,
                    "tolerance": 0,
                    "pass": sum(kt.by_degree.get(top, {}).values()) == dim_r,
                },
            ]
        )
    return report
