"""Quotient metric geometry on the total space, realized on the unit slice.

Points live on the real hypersurface F = |x|^2 - sum d_k |p_k|^2 = 1 inside
C^{n+r}; tangent vectors of the quotient are represented by ambient complex
vectors and canonicalized by horizontal projection.  The defining gradient
is used in its holomorphic normalization G = (x, -d * p), so |G|^2 =
|x|^2 + sum d_k^2 |p_k|^2 and the diagonal scaling tensor has eigenvalues
+1 on x-directions and -d_k on p-directions.  The real gradient of F is
2 G.

All real inner products are Euclidean on the underlying R^{2(n+r)}; a
complex component vector v represents the real vector with coordinates
(Re v, Im v), and multiplication by i realizes the complex structure.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class GeometryError(ValueError):
    pass


def _as_complex(a) -> np.ndarray:
    return np.asarray(a, dtype=np.complex128)


@dataclass(frozen=True)
class SlicePoint:
    """A point of the unit slice; F(x, p) = 1 up to 1e-12."""

    x: np.ndarray
    p: np.ndarray
    degrees: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "x", _as_complex(self.x))
        object.__setattr__(self, "p", _as_complex(self.p))
        if abs(self.slice_value() - 1.0) > 1e-9:
            raise GeometryError(f"point is off the slice: F = {self.slice_value()!r}")

    def slice_value(self) -> float:
        d = np.asarray(self.degrees, dtype=float)
        return float(np.sum(np.abs(self.x) ** 2) - np.sum(d * np.abs(self.p) ** 2))

    def gradient(self) -> tuple[np.ndarray, np.ndarray]:
        """Holomorphic defining gradient G = (x, -d * p)."""
        d = np.asarray(self.degrees, dtype=float)
        return self.x.copy(), -d * self.p

    def gradient_norm(self) -> float:
        gx, gp = self.gradient()
        return float(np.sqrt(np.sum(np.abs(gx) ** 2) + np.sum(np.abs(gp) ** 2)))

    def close_to(self, other: "SlicePoint", tol: float = 1e-9) -> bool:
        return (
            np.allclose(self.x, other.x, atol=tol, rtol=0.0)
            and np.allclose(self.p, other.p, atol=tol, rtol=0.0)
        )


@dataclass(frozen=True)
class AmbientVector:
    """Real tangent vector of the ambient space, stored by complex components."""

    base: SlicePoint
    vx: np.ndarray
    vp: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "vx", _as_complex(self.vx))
        object.__setattr__(self, "vp", _as_complex(self.vp))

    def j(self) -> "AmbientVector":
        return AmbientVector(self.base, 1j * self.vx, 1j * self.vp)

    def __add__(self, other: "AmbientVector") -> "AmbientVector":
        _check_base(self, other)
        return AmbientVector(self.base, self.vx + other.vx, self.vp + other.vp)

    def __sub__(self, other: "AmbientVector") -> "AmbientVector":
        _check_base(self, other)
        return AmbientVector(self.base, self.vx - other.vx, self.vp - other.vp)

    def scale(self, c: float) -> "AmbientVector":
        return AmbientVector(self.base, c * self.vx, c * self.vp)

    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.vx) ** 2) + np.sum(np.abs(self.vp) ** 2)))


def _check_base(u: AmbientVector, v: AmbientVector) -> None:
    if u.base is v.base:
        return
    if not u.base.close_to(v.base, tol=1e-9):
        raise GeometryError("vectors are anchored at different base points")


def inner(u: AmbientVector, v: AmbientVector) -> float:
    """Euclidean inner product of the underlying real vectors."""
    _check_base(u, v)
    return float(
        np.sum(u.vx * np.conj(v.vx)).real + np.sum(u.vp * np.conj(v.vp)).real
    )


# ---------------------------------------------------------------------------
# Slice projection and the tangent splitting


def slice_scale(x, p, degrees, tol: float = 1e-15) -> float:
    """Unique positive scale with |x|^2 = s^2 (1 + sum d_k s^(2 d_k) |p_k|^2).

    Scaling the point by the inverse group element (x / s, s^d * p) lands on
    the unit slice.  The right-hand side is strictly increasing in s, so
    bisection brackets the root and Newton polishing reaches relative
    accuracy near machine precision.
    """
    x = _as_complex(x)
    p = _as_complex(p)
    xx = float(np.sum(np.abs(x) ** 2))
    if xx == 0.0:
        raise GeometryError("slice scale requires x != 0")
    d = np.asarray(degrees, dtype=float)
    pp = np.abs(p) ** 2

    def value(s: float) -> float:
        return s * s * (1.0 + float(np.sum(d * s ** (2.0 * d) * pp))) - xx

    lo, hi = 0.0, 1.0
    while value(hi) < 0.0:
        lo, hi = hi, 2.0 * hi
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if value(mid) < 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= tol * hi:
            break
    s = 0.5 * (lo + hi)
    # Newton polish on g(s) = s^2 (1 + sum d s^(2d) |p|^2) - |x|^2
    for _ in range(8):
        g = value(s)
        dg = 2.0 * s + float(np.sum(d * (2.0 * d + 2.0) * s ** (2.0 * d + 1.0) * pp))
        if dg == 0.0:
            break
        step = g / dg
        s -= step
        if abs(step) <= 1e-16 * s:
            break
    return float(s)


def project_to_slice(x, p, degrees) -> SlicePoint:
    """Representative on the unit slice via the inverse charge action."""
    x = _as_complex(x)
    p = _as_complex(p)
    s = slice_scale(x, p, degrees)
    d = np.asarray(degrees, dtype=float)
    return SlicePoint(x / s, (s**d) * p, tuple(int(t) for t in degrees))


def projections(v: AmbientVector) -> tuple[AmbientVector, AmbientVector, AmbientVector]:
    """Orthogonal decomposition (normal, vertical, horizontal).

    The normal direction is the real gradient of F, the vertical direction
    its complex rotation (the circle-orbit tangent); both span the kernel
    of the quotient differential, so the horizontal part is the canonical
    representative of the descent class.
    """
    base = v.base
    gx, gp = base.gradient()
    g = AmbientVector(base, gx, gp)
    jg = g.j()
    g2 = inner(g, g)
    cn = inner(v, g) / g2
    cv = inner(v, jg) / g2
    normal = g.scale(cn)
    vertical = jg.scale(cv)
    horizontal = v - normal - vertical
    return normal, vertical, horizontal


def horizontal(v: AmbientVector) -> AmbientVector:
    return projections(v)[2]


def metric(u: AmbientVector, v: AmbientVector) -> float:
    """Quotient metric: Euclidean pairing of the horizontal parts."""
    _check_base(u, v)
    return inner(horizontal(u), horizontal(v))


# ---------------------------------------------------------------------------
# Homotheties and the compact core


def homothety_point(t: float, point: SlicePoint) -> SlicePoint:
    """Fiber-scaling diffeomorphism applied to a slice representative."""
    if t <= 0:
        raise GeometryError("homothety parameter must be positive")
    return project_to_slice(t * point.x, t * point.p, point.degrees)


def homothety(
    t: float, point: SlicePoint, vectors: list[AmbientVector]
) -> tuple[SlicePoint, list[AmbientVector]]:
    """Transport a point and tangent representatives along the homothety.

    The differential of the scaling map multiplies components by t; the
    subsequent inverse charge action (a fixed group element, hence trivial
    on descent classes) brings the result back to the slice, and horizontal
    projection canonicalizes.
    """
    if t <= 0:
        raise GeometryError("homothety parameter must be positive")
    x2, p2 = t * point.x, t * point.p
    s = slice_scale(x2, p2, point.degrees)
    d = np.asarray(point.degrees, dtype=float)
    new_point = SlicePoint(x2 / s, (s**d) * p2, point.degrees)
    out = []
    for v in vectors:
        moved = AmbientVector(new_point, t * v.vx / s, (s**d) * t * v.vp)
        out.append(horizontal(moved))
    return new_point, out


def compact_core_test(point: SlicePoint) -> tuple[bool, float]:
    """Membership in the compact core K, and the exit scale when outside.

    In the |x| = 1 gauge, K is the set with sum |p'_k|^2 <= 1.  Outside,
    a monotone search finds t < 1 with sum t^(2 d_k + 2) |p'_k|^2 = 1, and
    the returned exit parameter is 1 / t > 1: the homothety by 1 / t_exit
    carries the point back into K.
    """
    d = np.asarray(point.degrees, dtype=float)
    scale = float(np.sqrt(np.sum(np.abs(point.x) ** 2)))
    p_gauge = (scale**d) * point.p
    load = np.abs(p_gauge) ** 2
    if float(np.sum(load)) <= 1.0 + 1e-12:
        return True, 1.0

    def value(t: float) -> float:
        return float(np.sum(t ** (2.0 * d + 2.0) * load)) - 1.0

    lo, hi = 0.0, 1.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if value(mid) > 0.0:
            hi = mid
        else:
            lo = mid
        if hi - lo <= 1e-15 * max(hi, 1e-30):
            break
    t = 0.5 * (lo + hi)
    return False, 1.0 / t


# ---------------------------------------------------------------------------
# Volume norms


def chart_index(point: SlicePoint) -> int:
    """Chart with the largest |x_j|; ties break to the smallest index."""
    mags = np.abs(point.x)
    best = float(np.max(mags))
    return next(j for j, m in enumerate(mags) if m >= best - 1e-15)


def _holomorphic_horizontal(point: SlicePoint, vx, vp) -> np.ndarray:
    """Horizontal part of a holomorphic coordinate vector, as one array.

    For type (1, 0) vectors the normal-plus-vertical span complexifies to
    the line through G, so a single Hermitian projection suffices.
    """
    gx, gp = point.gradient()
    g = np.concatenate([gx, gp])
    v = np.concatenate([_as_complex(vx), _as_complex(vp)])
    coeff = np.vdot(g, v) / np.vdot(g, g)
    return v - coeff * g


def volume_norms(point: SlicePoint, chart: int | None = None) -> tuple[float, float]:
    """Norms (|Theta|, |Omega|) of the canonical polyvector and volume form.

    Theta is evaluated through the horizontal lift of the chart coordinate
    polyvector (scaled by the inverse chart coordinate of x_j); Omega by
    evaluating the chart volume form on a horizontal unitary frame.  Both
    plain Hermitian values are rescaled by the defining-gradient norm, the
    normalization under which they are the constant 2.  The chart fiber
    coordinates use x_j^(d_l) p_l, the exponent choice that makes the
    result chart independent.
    """
    n = len(point.x)
    r = len(point.p)
    j = chart_index(point) if chart is None else chart
    if abs(point.x[j]) < 1e-8:
        raise GeometryError("chart coordinate too small for volume evaluation")
    d = np.asarray(point.degrees, dtype=float)
    xj = point.x[j]

    lifts = []
    for k in range(n):
        if k == j:
            continue
        vx = np.zeros(n, dtype=np.complex128)
        vx[k] = 1.0
        lifts.append(_holomorphic_horizontal(point, vx, np.zeros(r)))
    for l in range(r):
        vp = np.zeros(r, dtype=np.complex128)
        vp[l] = 1.0
        lifts.append(_holomorphic_horizontal(point, np.zeros(n), vp))
    m = len(lifts)  # n + r - 1
    lift_matrix = np.array(lifts)

    gram = lift_matrix @ lift_matrix.conj().T
    det_gram = float(np.linalg.det(gram).real)
    if det_gram < 0 and det_gram > -1e-14:
        det_gram = 0.0
    theta_plain = np.sqrt(det_gram) / abs(xj)
    grad_norm = point.gradient_norm()
    theta = float(theta_plain * 2.0 * grad_norm)

    # orthonormalize the horizontal frame and evaluate the chart volume form
    q, _ = np.linalg.qr(lift_matrix.T)
    frame = q.T  # rows: unitary horizontal frame
    rows = []
    for vec in frame:
        vx, vp = vec[:n], vec[n:]
        row = []
        for k in range(n):
            if k == j:
                continue
            row.append(vx[k] / xj - point.x[k] * vx[j] / xj**2)
        for l in range(r):
            dl = point.degrees[l]
            row.append(xj**dl * vp[l] + dl * xj ** (dl - 1) * point.p[l] * vx[j])
        rows.append(row)
    omega_plain = abs(np.linalg.det(np.array(rows)))
    omega = float(omega_plain * 2.0 / grad_norm)
    return theta, omega


# ---------------------------------------------------------------------------
# Shape operator, integrability tensor, curvature


def scaling_tensor(v: AmbientVector) -> AmbientVector:
    """Diagonal derivative of the defining gradient: +1 on x, -d_k on p."""
    d = np.asarray(v.base.degrees, dtype=float)
    return AmbientVector(v.base, v.vx.copy(), -d * v.vp)


def shape_pairing(u: AmbientVector, v: AmbientVector) -> float:
    """Second fundamental form of the slice on horizontal parts."""
    _check_base(u, v)
    uh = horizontal(u)
    vh = horizontal(v)
    return inner(scaling_tensor(uh), vh) / u.base.gradient_norm()


def a_tensor(u: AmbientVector, v: AmbientVector) -> AmbientVector:
    """Integrability tensor A_u v of the circle quotient, on horizontal parts.

    Pointwise closed formula: minus the pairing of v against the tangential
    part of J (scaling tensor) u, times the unit vertical direction scaled
    by the inverse gradient norm.
    """
    _check_base(u, v)
    base = u.base
    uh = horizontal(u)
    vh = horizontal(v)
    gx, gp = base.gradient()
    g = AmbientVector(base, gx, gp)
    jg = g.j()
    g2 = inner(g, g)
    w = scaling_tensor(uh).j()
    w_t = w - g.scale(inner(w, g) / g2)  # tangential part
    coeff = -inner(vh, w_t) / g2
    return jg.scale(coeff)


def vertical_bracket(u: AmbientVector, v: AmbientVector) -> AmbientVector:
    """Vertical part of the bracket of horizontal extensions: 2 A_u v."""
    return a_tensor(u, v).scale(2.0)


@dataclass
class CurvatureResult:
    sectional: float
    slice_sectional: float
    oneill_correction: float
    sectional_from_gauss: float
    plane_area_sq: float


def sectional_curvature(u: AmbientVector, v: AmbientVector) -> CurvatureResult:
    """Sectional curvature of the quotient plane spanned by u, v.

    Two algebraically identical paths are evaluated: the closed bracket
    formula, and the Gauss-equation curvature of the slice plus the
    submersion correction.  Their agreement is a pure implementation check.
    """
    _check_base(u, v)
    uh = horizontal(u)
    vh = horizontal(v)
    guu = inner(uh, uh)
    gvv = inner(vh, vh)
    guv = inner(uh, vh)
    area_sq = guu * gvv - guv * guv
    if area_sq <= 1e-18:
        raise GeometryError("degenerate plane after horizontal projection")

    br_uv = vertical_bracket(uh, vh)
    br_uju = vertical_bracket(uh, uh.j())
    br_vjv = vertical_bracket(vh, vh.j())
    br_ujv = vertical_bracket(uh, vh.j())

    numerator = (
        3.0 * inner(br_uv, br_uv)
        + inner(br_uju, br_vjv)
        - inner(br_ujv, br_ujv)
    )
    k_closed = numerator / (4.0 * area_sq)

    suu = shape_pairing(uh, uh)
    svv = shape_pairing(vh, vh)
    suv = shape_pairing(uh, vh)
    k_slice = (suu * svv - suv * suv) / area_sq
    correction = 3.0 * inner(br_uv, br_uv) / (4.0 * area_sq)
    return CurvatureResult(
        sectional=k_closed,
        slice_sectional=k_slice,
        oneill_correction=correction,
        sectional_from_gauss=k_slice + correction,
        plane_area_sq=area_sq,
    )


def holomorphic_sectional(u: AmbientVector) -> dict[str, float]:
    """Holomorphic sectional curvature, in both normalizations.

    ``via_plane`` evaluates the general plane formula on (u, Ju) and equals
    |vbracket(u, Ju)|^2 / |u|^4; ``half_norm_sq`` is the alternative
    |vbracket(u, Ju)|^2 / (2 |u|^2) normalization.  The two differ by the
    factor |u|^2 / 2; the discrepancy is reported, not resolved.
    """
    uh = horizontal(u)
    nu2 = inner(uh, uh)
    br = vertical_bracket(uh, uh.j())
    br2 = inner(br, br)
    return {
        "via_plane": br2 / (nu2 * nu2),
        "half_norm_sq": br2 / (2.0 * nu2),
    }


# ---------------------------------------------------------------------------
# Finite-difference curvature oracle


def chart_coordinates(point: SlicePoint, chart: int) -> np.ndarray:
    """Real chart coordinates (affine x ratios, then twisted fiber coords)."""
    n, r = len(point.x), len(point.p)
    xj = point.x[chart]
    coords = []
    for k in range(n):
        if k == chart:
            continue
        coords.append(point.x[k] / xj)
    for l in range(r):
        coords.append(xj ** point.degrees[l] * point.p[l])
    z = np.array(coords)
    return np.concatenate([z.real, z.imag])


def chart_point(q: np.ndarray, chart: int, n: int, r: int, degrees) -> SlicePoint:
    """Slice representative of the chart point with real coordinates q."""
    m = n + r - 1
    z = q[:m] + 1j * q[m:]
    x = np.zeros(n, dtype=np.complex128)
    x[chart] = 1.0
    idx = 0
    for k in range(n):
        if k == chart:
            continue
        x[k] = z[idx]
        idx += 1
    p = np.array([z[idx + l] for l in range(r)])
    return project_to_slice(x, p, degrees)


def chart_components(v: AmbientVector, chart: int) -> np.ndarray:
    """Differential of the chart map applied to an ambient representative."""
    point = v.base
    n, r = len(point.x), len(point.p)
    xj = point.x[chart]
    comps = []
    for k in range(n):
        if k == chart:
            continue
        comps.append(v.vx[k] / xj - point.x[k] * v.vx[chart] / xj**2)
    for l in range(r):
        dl = point.degrees[l]
        comps.append(
            xj**dl * v.vp[l] + dl * xj ** (dl - 1) * point.p[l] * v.vx[chart]
        )
    z = np.array(comps)
    return np.concatenate([z.real, z.imag])


def _chart_metric(q: np.ndarray, chart: int, n: int, r: int, degrees) -> np.ndarray:
    """Metric matrix of the quotient in chart coordinates at q."""
    point = chart_point(q, chart, n, r, degrees)
    m2 = len(q)
    mhalf = n + r - 1
    s = slice_scale_for_chart(q, chart, n, r, degrees)
    d = np.asarray(degrees, dtype=float)
    lifts = []
    for a in range(m2):
        zx = np.zeros(n, dtype=np.complex128)
        zp = np.zeros(r, dtype=np.complex128)
        real_part = a < mhalf
        slot = a if real_part else a - mhalf
        delta = 1.0 if real_part else 1.0j
        idx = 0
        assigned = False
        for k in range(n):
            if k == chart:
                continue
            if idx == slot:
                zx[k] = delta
                assigned = True
                break
            idx += 1
        if not assigned:
            zp[slot - (n - 1)] = delta
        lifts.append(
            horizontal(AmbientVector(point, zx / s, (s**d) * zp))
        )
    g = np.empty((m2, m2))
    for a in range(m2):
        for b in range(a, m2):
            g[a, b] = g[b, a] = inner(lifts[a], lifts[b])
    return g


def slice_scale_for_chart(q, chart, n, r, degrees) -> float:
    m = n + r - 1
    z = q[:m] + 1j * q[m:]
    x = np.zeros(n, dtype=np.complex128)
    x[chart] = 1.0
    idx = 0
    for k in range(n):
        if k == chart:
            continue
        x[k] = z[idx]
        idx += 1
    p = np.array([z[idx + l] for l in range(r)])
    return slice_scale(x, p, degrees)


def _curvature_fd_step(
    point: SlicePoint, u: AmbientVector, v: AmbientVector, chart: int, h: float
) -> float:
    n, r = len(point.x), len(point.p)
    degrees = point.degrees
    q0 = chart_coordinates(point, chart)
    dim = len(q0)

    def g_at(q):
        return _chart_metric(q, chart, n, r, degrees)

    g0 = g_at(q0)
    cond = np.linalg.cond(g0)
    if cond > 1e8:
        raise GeometryError(f"chart metric is ill conditioned: cond = {cond:.3e}")

    # derivative of Christoffel symbols by central differences
    gamma0 = _christoffel_at(q0, g_at, h, dim)
    dgamma = np.empty((dim, dim, dim, dim))
    for c in range(dim):
        e = np.zeros(dim)
        e[c] = h
        gp = _christoffel_at(q0 + e, g_at, h, dim)
        gm = _christoffel_at(q0 - e, g_at, h, dim)
        dgamma[c] = (gp - gm) / (2.0 * h)

    # Riemann tensor R^i_{jkl} = d_k G^i_{lj} - d_l G^i_{kj} + G^i_{km} G^m_{lj} - G^i_{lm} G^m_{kj}
    riem = np.empty((dim, dim, dim, dim))
    for i in range(dim):
        for jj in range(dim):
            for k in range(dim):
                for l in range(dim):
                    riem[i, jj, k, l] = (
                        dgamma[k][i, l, jj]
                        - dgamma[l][i, k, jj]
                        + np.sum(gamma0[i, k, :] * gamma0[:, l, jj])
                        - np.sum(gamma0[i, l, :] * gamma0[:, k, jj])
                    )

    uq = chart_components(horizontal(u), chart)
    vq = chart_components(horizontal(v), chart)
    # lower the first index and contract: < R(u, v) v, u >
    r_low = np.einsum("im,mjkl->ijkl", g0, riem)
    num = np.einsum("ijkl,i,j,k,l->", r_low, uq, vq, uq, vq)
    guu = uq @ g0 @ uq
    gvv = vq @ g0 @ vq
    guv = uq @ g0 @ vq
    denom = guu * gvv - guv * guv
    return float(num / denom)


def _christoffel_at(q, g_at, h, dim) -> np.ndarray:
    g = g_at(q)
    ginv = np.linalg.inv(g)
    dg = np.empty((dim, dim, dim))
    for c in range(dim):
        e = np.zeros(dim)
        e[c] = h
        dg[c] = (g_at(q + e) - g_at(q - e)) / (2.0 * h)
    gamma = np.empty((dim, dim, dim))
    for k in range(dim):
        for l in range(dim):
            # vector over m: dg[l][m, k] + dg[k][m, l] - dg[m][k, l]
            vec = dg[l][:, k] + dg[k][:, l] - dg[:, k, l]
            gamma[:, k, l] = 0.5 * (ginv @ vec)
    return gamma


def curvature_fd(
    point: SlicePoint,
    u: AmbientVector,
    v: AmbientVector,
    chart: int | None = None,
    step: float = 1e-3,
    richardson: bool = True,
) -> float:
    """Sectional curvature from central differences of the chart metric.

    Independent of the closed formulas: builds the metric matrix in chart
    coordinates, differentiates twice for the Christoffel symbols and the
    curvature tensor, and contracts against the plane.  One Richardson
    level removes the leading quadratic error.
    """
    if len(point.x) + len(point.p) < 3:
        raise GeometryError("chart too small to carry a 2-plane")
    j = chart_index(point) if chart is None else chart
    if abs(point.x[j]) < 0.3:
        raise GeometryError("chart coordinate too small; pick a different chart")
    k_h = _curvature_fd_step(point, u, v, j, step)
    if not richardson:
        return k_h
    k_h2 = _curvature_fd_step(point, u, v, j, step / 2.0)
    return (4.0 * k_h2 - k_h) / 3.0


# ---------------------------------------------------------------------------
# Probes along homothety orbits


def asymptotic_curvature_probe(
    point: SlicePoint,
    u: AmbientVector,
    v: AmbientVector,
    t_list: list[float],
) -> list[dict[str, float]]:
    """Curvature and integrability decay along the fiber-scaling orbit.

    The scaling law K(t) * t^2 = K(1) holds exactly; the table reports the
    measured ratio together with the integrability-tensor ratio, which
    decays like the inverse gradient norm.
    """
    rows = []
    base_k = sectional_curvature(u, v).sectional
    for t in t_list:
        if t <= 0:
            raise GeometryError("homothety parameters must be positive")
        pt, (ut, vt) = homothety(t, point, [u, v])
        res = sectional_curvature(ut, vt)
        a = a_tensor(ut, vt)
        a_ratio = a.norm() / (ut.norm() * vt.norm())
        rows.append(
            {
                "t": float(t),
                "sectional": res.sectional,
                "scaled": res.sectional * t * t,
                "reference": base_k,
                "a_ratio": a_ratio,
                "grad_norm": pt.gradient_norm(),
            }
        )
    return rows


# ---------------------------------------------------------------------------
# Ellipticity diagnostics


def ambient_derivative_norm(spec, order: int, xs: np.ndarray, ps: np.ndarray) -> float:
    """|D^k W|: root of the sum of squared k-th partials over ordered tuples."""
    from itertools import combinations_with_replacement
    from math import factorial

    w = spec.superpotential()
    nslots = spec.n + spec.r
    total = 0.0
    for combo in combinations_with_replacement(range(nslots), order):
        poly = w
        for slot in combo:
            poly = poly.diff(slot)
            if poly.is_zero():
                break
        if poly.is_zero():
            continue
        counts = {}
        for slot in combo:
            counts[slot] = counts.get(slot, 0) + 1
        mult = factorial(order)
        for c in counts.values():
            mult //= factorial(c)
        total += mult * abs(poly.evaluate(xs, ps)) ** 2
    return float(np.sqrt(total))


def gradient_fd(spec, xs: np.ndarray, ps: np.ndarray, h: float = 1e-5) -> np.ndarray:
    """Finite-difference holomorphic gradient of W with one Richardson level."""
    w = spec.superpotential()
    coords = np.concatenate([xs, ps]).astype(np.complex128)
    n = spec.n

    def eval_at(c):
        return w.evaluate(c[:n], c[n:])

    out = np.zeros(len(coords), dtype=np.complex128)
    for j in range(len(coords)):
        e = np.zeros(len(coords), dtype=np.complex128)
        e[j] = h
        d1 = (eval_at(coords + e) - eval_at(coords - e)) / (2 * h)
        e[j] = h / 2
        d2 = (eval_at(coords + e) - eval_at(coords - e)) / h
        out[j] = (4.0 * d2 - d1) / 3.0
    return out


def ellipticity_probe(spec, ray: list[SlicePoint], order: int) -> dict:
    """Derivative-growth diagnostics along a ray of slice points.

    Reports the fitted constant in the coordinate bound
    |x_j| <= c (|grad W| + 1)^(1 / d_min), and the ratio
    |D^k W| / (|grad W| + 1)^k, which must decay along the ray for k >= 2
    when the ellipticity flag holds.
    """
    if order < 1:
        raise ValueError("derivative order must be at least 1")
    if order > spec.d_max + 1:
        return {
            "order": order,
            "rows": [],
            "trivial": True,
            "note": "all derivatives of this order vanish identically",
        }
    rows = []
    for pt in ray:
        grad = ambient_derivative_norm(spec, 1, pt.x, pt.p)
        dk = ambient_derivative_norm(spec, order, pt.x, pt.p)
        coord_max = float(np.max(np.abs(np.concatenate([pt.x, pt.p]))))
        c_fit = coord_max / (grad + 1.0) ** (1.0 / spec.d_min)
        rows.append(
            {
                "grad_norm": grad,
                "derivative_norm": dk,
                "ratio": dk / (grad + 1.0) ** order,
                "coordinate_bound_constant": c_fit,
            }
        )
    return {"order": order, "rows": rows, "trivial": False}


# ---------------------------------------------------------------------------
# Seeded sampling


def sample_point(rng: np.random.Generator, spec, radius: float) -> SlicePoint:
    """x uniform on the unit sphere, p in a polydisc, then slice projected."""
    x = rng.standard_normal(spec.n) + 1j * rng.standard_normal(spec.n)
    x /= np.linalg.norm(x)
    p = np.empty(spec.r, dtype=np.complex128)
    for k in range(spec.r):
        while True:
            cand = rng.uniform(-1, 1) + 1j * rng.uniform(-1, 1)
            if abs(cand) <= 1.0:
                p[k] = radius * cand
                break
    return project_to_slice(x, p, spec.degrees)


def sample_vector(rng: np.random.Generator, point: SlicePoint) -> AmbientVector:
    n, r = len(point.x), len(point.p)
    vx = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    vp = rng.standard_normal(r) + 1j * rng.standard_normal(r)
    return AmbientVector(point, vx, vp)
