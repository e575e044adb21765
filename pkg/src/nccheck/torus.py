"""Band-limited model of the flat-torus Hodge triple.

Vectors live in H_N: matrix-valued trigonometric polynomials with modes
|m|, |n| <= N, stored as coefficient arrays of shape (2N+1, 2N+1, 2, 2) with
inner product <a, b> = (1/2) sum Tr(a_k^* b_k).  Operators carry a degree d
(their maximum mode shift) and map H_N into H_{N+d} exactly, so every
polynomial operator identity can be tested with no truncation error: the
verdicts are independent of N above the minimal band.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .numlin import PAULI
from .triple import ConditionReport, Witness, ko_dimensions

S0, S1, S2, S3 = PAULI

MIN_BAND = 3


def _width(band):
    return 2 * band + 1


def zero_coeffs(band, batch=()):
    return np.zeros((*batch, _width(band), _width(band), 2, 2), dtype=complex)


class TorusVector:
    """Element of H_N: coefficients c[m+N, n+N] for the mode e^{i(mx+ny)}."""

    def __init__(self, band, coeffs=None):
        self.band = int(band)
        w = _width(self.band)
        if coeffs is None:
            coeffs = np.zeros((w, w, 2, 2), dtype=complex)
        coeffs = np.asarray(coeffs, dtype=complex)
        if coeffs.shape != (w, w, 2, 2):
            raise ValueError(f"coefficients have shape {coeffs.shape}, expected {(w, w, 2, 2)}")
        self.coeffs = coeffs

    def pad(self, band):
        if band < self.band:
            raise ValueError("cannot shrink the band")
        if band == self.band:
            return self
        out = zero_coeffs(band)
        d = band - self.band
        w = _width(self.band)
        out[d : d + w, d : d + w] = self.coeffs
        return TorusVector(band, out)

    def inner(self, other):
        band = max(self.band, other.band)
        a = self.pad(band).coeffs
        b = other.pad(band).coeffs
        return 0.5 * complex(np.vdot(a, b))

    def norm(self):
        return float(np.sqrt(self.inner(self).real))

    def __add__(self, other):
        band = max(self.band, other.band)
        return TorusVector(band, self.pad(band).coeffs + other.pad(band).coeffs)

    def __sub__(self, other):
        band = max(self.band, other.band)
        return TorusVector(band, self.pad(band).coeffs - other.pad(band).coeffs)

    def __rmul__(self, z):
        return TorusVector(self.band, z * self.coeffs)


def trig_monomial(mode, matrix, band=None):
    """The matrix-valued monomial ``matrix * e^{i(mx+ny)}``."""
    m, n = mode
    band = max(abs(m), abs(n)) if band is None else band
    out = zero_coeffs(band)
    out[m + band, n + band] = np.asarray(matrix, dtype=complex)
    return TorusVector(band, out)


def trig_adjoint(f):
    """Pointwise adjoint f*(x,y): coefficient at k is f_{-k}^*."""
    c = np.conj(np.transpose(f.coeffs[::-1, ::-1], (0, 1, 3, 2)))
    return TorusVector(f.band, c)


def trig_mult(f, g):
    """Pointwise product of matrix trig polynomials (mode convolution)."""
    band = f.band + g.band
    out = zero_coeffs(band)
    wf = _width(f.band)
    wg = _width(g.band)
    for a in range(wf):
        for b in range(wf):
            fc = f.coeffs[a, b]
            if not fc.any():
                continue
            out[a : a + wg, b : b + wg] += np.einsum("ij,mnjk->mnik", fc, g.coeffs)
    return TorusVector(band, out)


class BandOp:
    """Linear or antilinear operator with a declared band degree.

    ``fn(arr, band)`` acts on batched coefficient arrays of shape
    (..., 2*band+1, 2*band+1, 2, 2) and returns the array at band + degree.
    Composition degrees add; sums take the max degree.
    """

    def __init__(self, degree, fn, antilinear=False, label=""):
        self.degree = int(degree)
        self.fn = fn
        self.antilinear = bool(antilinear)
        self.label = label

    def apply(self, arr, band):
        return self.fn(arr, band), band + self.degree

    def __call__(self, v):
        out, band = self.apply(v.coeffs, v.band)
        return TorusVector(band, out)

    def __matmul__(self, other):
        def fn(arr, band):
            mid, b2 = other.apply(arr, band)
            out, _ = self.apply(mid, b2)
            return out

        anti = self.antilinear != other.antilinear
        return BandOp(self.degree + other.degree, fn,
                      anti, f"({self.label} . {other.label})")

    def __add__(self, other):
        if self.antilinear != other.antilinear:
            raise ValueError("cannot add linear and antilinear operators")
        deg = max(self.degree, other.degree)

        def fn(arr, band):
            a, _ = self.apply(arr, band)
            b, _ = other.apply(arr, band)
            return _pad_batch(a, band + self.degree, band + deg) + _pad_batch(
                b, band + other.degree, band + deg
            )

        return BandOp(deg, fn, self.antilinear, f"({self.label} + {other.label})")

    def __sub__(self, other):
        return self + (-1.0) * other

    def __rmul__(self, z):
        return BandOp(
            self.degree,
            lambda arr, band: z * self.apply(arr, band)[0],
            self.antilinear,
            f"({z} * {self.label})",
        )


def _pad_batch(arr, band, target):
    if target == band:
        return arr
    d = target - band
    w = _width(band)
    out = zero_coeffs(target, batch=arr.shape[:-4])
    out[..., d : d + w, d : d + w, :, :] = arr
    return out


def commutator_op(a, b):
    return a @ b - b @ a


def identity_op():
    return BandOp(0, lambda arr, band: arr.copy(), label="1")


def dirac_op():
    """D = i L_{sigma1} d/dx + i L_{sigma2} d/dy: mode (m,n) maps by
    -(m sigma1 + n sigma2); band preserving."""

    def fn(arr, band):
        w = _width(band)
        modes = np.arange(-band, band + 1)
        fac = -(
            modes[:, None, None, None] * S1[None, None, :, :]
            + modes[None, :, None, None] * S2[None, None, :, :]
        )
        return np.einsum("mnij,...mnjk->...mnik", fac, arr)

    return BandOp(0, fn, label="D")


def left_mult(f):
    """L_f: pointwise left multiplication by a matrix trig polynomial."""
    d = f.band
    wf = _width(d)

    def fn(arr, band):
        w = _width(band)
        out = zero_coeffs(band + d, batch=arr.shape[:-4])
        for a in range(wf):
            for b in range(wf):
                fc = f.coeffs[a, b]
                if not fc.any():
                    continue
                out[..., a : a + w, b : b + w, :, :] += np.einsum(
                    "ij,...mnjk->...mnik", fc, arr
                )
        return out

    return BandOp(d, fn, label=f"L[{f.band}]")


def right_mult(f):
    """R_f: pointwise right multiplication."""
    d = f.band
    wf = _width(d)

    def fn(arr, band):
        w = _width(band)
        out = zero_coeffs(band + d, batch=arr.shape[:-4])
        for a in range(wf):
            for b in range(wf):
                fc = f.coeffs[a, b]
                if not fc.any():
                    continue
                out[..., a : a + w, b : b + w, :, :] += np.einsum(
                    "...mnij,jk->...mnik", arr, fc
                )
        return out

    return BandOp(d, fn, label=f"R[{f.band}]")


def grading_op():
    """gamma a = sigma3 a sigma3, pointwise."""

    def fn(arr, band):
        return np.einsum("ij,...mnjk,kl->...mnil", S3, arr, S3)

    return BandOp(0, fn, label="gamma")


def j0_op():
    """Entrywise pointwise complex conjugation: flips modes, conjugates."""

    def fn(arr, band):
        return np.conj(arr[..., ::-1, ::-1, :, :])

    return BandOp(0, fn, antilinear=True, label="J0")


def j1_op():
    """J1 = L_{sigma1} R_{sigma1} J0."""

    def fn(arr, band):
        c = np.conj(arr[..., ::-1, ::-1, :, :])
        return np.einsum("ij,...mnjk,kl->...mnil", S1, c, S1)

    return BandOp(0, fn, antilinear=True, label="J1")


def j2_op():
    """Pointwise matrix Hermitian conjugation a -> a^*."""

    def fn(arr, band):
        return np.conj(np.swapaxes(arr[..., ::-1, ::-1, :, :], -1, -2))

    return BandOp(0, fn, antilinear=True, label="J2")


def twist_op():
    """tau = J1 J2: pointwise a -> sigma1 a^t sigma1 (linear)."""

    def fn(arr, band):
        t = np.transpose(arr, (*range(arr.ndim - 2), arr.ndim - 1, arr.ndim - 2))
        return np.einsum("ij,...mnjk,kl->...mnil", S1, t, S1)

    return BandOp(0, fn, label="tau")


def tau_of_poly(f):
    """tau applied to a multiplier: sigma1 f^t sigma1 pointwise (no mode flip)."""
    t = np.transpose(f.coeffs, (0, 1, 3, 2))
    return TorusVector(f.band, np.einsum("ij,mnjk,kl->mnil", S1, t, S1))


def unitarity_defect(u):
    """Max coefficient norm of u^* u - 1 as a trig polynomial."""
    prod = trig_mult(trig_adjoint(u), u)
    ref = trig_monomial((0, 0), S0, band=prod.band)
    return float(np.abs(prod.coeffs - ref.coeffs).max())


def ju_op(u, tol=1e-9):
    """J_U = L_U R_U J2 for a unitary matrix trig polynomial U."""
    if unitarity_defect(u) > tol:
        raise ValueError("U is not unitary as a trig polynomial")
    return left_mult(u) @ right_mult(u) @ j2_op()


def tau_u_op(u, tol=1e-9):
    """tau_U = L_U R_U tau; requires tau(U) = U^*."""
    defect = tau_of_poly(u) - trig_adjoint(u)
    if float(np.abs(defect.coeffs).max()) > tol:
        raise ValueError("tau(U) != U^*: incompatible twist unitary")
    return left_mult(u) @ right_mult(u) @ twist_op()


# -- exact identity testing ------------------------------------------------


_BASIS_CACHE = {}


def _basis_stack(band):
    hit = _BASIS_CACHE.get(band)
    if hit is not None:
        return hit
    w = _width(band)
    dim = w * w * 4
    out = np.eye(dim, dtype=complex).reshape(dim, w, w, 2, 2), dim
    _BASIS_CACHE[band] = out
    return out


def op_matrix(op, band):
    """Matrix of a band operator restricted to H_band (columns = outputs).

    For an antilinear operator the returned matrix M represents
    v -> M conj(v); compose such matrices only with linear ones in mind.
    """
    stack, dim = _basis_stack(band)
    out, _ = op.apply(stack, band)
    return out.reshape(dim, -1).T


def _mat_left(f, band):
    """Dense matrix of L_f on H_band, assembled mode-block by mode-block."""
    w = _width(band)
    wf = _width(f.band)
    w2 = _width(band + f.band)
    out = np.zeros((w2, w2, 2, 2, w, w, 2, 2), dtype=complex)
    eye = np.eye(2, dtype=complex)
    for ka in range(wf):
        for kb in range(wf):
            fc = f.coeffs[ka, kb]
            if not fc.any():
                continue
            block = np.einsum("ik,jl->ijkl", fc, eye)  # acts as fc @ c
            for mi in range(w):
                for ni in range(w):
                    out[mi + ka, ni + kb, :, :, mi, ni, :, :] += block
    return out.reshape(w2 * w2 * 4, w * w * 4)


def _mat_right(f, band):
    """Dense matrix of R_f on H_band."""
    w = _width(band)
    wf = _width(f.band)
    w2 = _width(band + f.band)
    out = np.zeros((w2, w2, 2, 2, w, w, 2, 2), dtype=complex)
    eye = np.eye(2, dtype=complex)
    for ka in range(wf):
        for kb in range(wf):
            fc = f.coeffs[ka, kb]
            if not fc.any():
                continue
            block = np.einsum("ik,lj->ijkl", eye, fc)  # acts as c @ fc
            for mi in range(w):
                for ni in range(w):
                    out[mi + ka, ni + kb, :, :, mi, ni, :, :] += block
    return out.reshape(w2 * w2 * 4, w * w * 4)


def _mat_dirac(band):
    """Dense matrix of the Dirac operator on H_band (band preserving)."""
    w = _width(band)
    out = np.zeros((w, w, 2, 2, w, w, 2, 2), dtype=complex)
    eye = np.eye(2, dtype=complex)
    for mi in range(w):
        for ni in range(w):
            fac = -((mi - band) * S1 + (ni - band) * S2)
            out[mi, ni, :, :, mi, ni, :, :] = np.einsum("ik,jl->ijkl", fac, eye)
    return out.reshape(w * w * 4, w * w * 4)


def operator_identity(lhs, rhs, band, tol=1e-9, name="identity"):
    """Compare two band operators on the full basis of H_band.

    Both sides are applied to every basis vector; outputs are compared in
    the common grown band.  The witness carries the worst basis mode and the
    operator 2-norm of the difference (exact: uniform mode weights make the
    coefficient matrix the operator matrix in an orthonormal basis).
    """
    if lhs.antilinear != rhs.antilinear:
        raise ValueError("cannot compare operators of different linearity type")
    stack, dim = _basis_stack(band)
    la, lb = lhs.apply(stack, band)
    ra, rb = rhs.apply(stack, band)
    out_band = max(lb, rb)
    la = _pad_batch(la, lb, out_band)
    ra = _pad_batch(ra, rb, out_band)
    diff = (la - ra).reshape(dim, -1)
    worst = np.linalg.norm(diff, axis=1)
    idx = int(np.argmax(worst))
    if worst[idx] <= tol:
        return ConditionReport(name, True, None, {"band": band, "max_basis_residual": float(worst[idx])})
    opn = float(np.linalg.norm(diff.T, 2))
    w = _width(band)
    mode_flat = idx // 4
    mode = (mode_flat // w - band, mode_flat % w - band)
    return ConditionReport(
        name,
        False,
        Witness((mode, idx % 4), None, opn),
        {"band": band, "max_basis_residual": float(worst[idx]), "operator_norm": opn},
    )


def operators_equal(lhs, rhs, band, tol=1e-9):
    return operator_identity(lhs, rhs, band, tol).holds


# -- the paper's torus checks ----------------------------------------------


def scalar_family(extended=False):
    """Generator monomials 1, u, v, u*, v* (u^a v^b grid when extended).

    Ordered so that the first second-order violation found for J1 is the
    generator pair (u, v) with commutator 2i L_{sigma3} of norm 2.  The
    infinite-dimensional algebra is represented by generator-level evidence.
    """
    order = [(0, 0), (1, 0), (0, 1), (-1, 0), (0, -1)]
    if extended:
        order += [(1, 1), (1, -1), (-1, 1), (-1, -1)]
    return [(f"u^{a}v^{b}", trig_monomial((a, b), S0)) for a, b in order]


def multiplier_family():
    """Matrix trig polynomials used for the conjugation-table identities."""
    fam = [
        ("sigma2*u", trig_monomial((1, 0), S2)),
        ("sigma1", trig_monomial((0, 0), S1)),
        ("mix", TorusVector(1, _mix_coeffs())),
    ]
    return fam


def _mix_coeffs():
    out = zero_coeffs(1)
    out[1 + 0, 1 + 0] = S3 + 0.5 * S0
    out[1 + 1, 1 + 0] = 0.5 * (S1 + 1j * S2)
    out[1 - 1, 1 + 1] = 0.25 * S2
    return out


class _MatCache:
    """Per-band dense matrices of the suite's primitive operators, shared
    across order-condition checks so each one is assembled once."""

    def __init__(self):
        self.dirac = {}
        self.left = {}
        self.kernels = {}

    def md(self, band):
        if band not in self.dirac:
            self.dirac[band] = _mat_dirac(band)
        return self.dirac[band]

    def ml(self, key, f, band):
        k = (key, band)
        if k not in self.left:
            self.left[k] = _mat_left(f, band)
        return self.left[k]

    def kj(self, jkey, j, band):
        k = (jkey, band)
        if k not in self.kernels:
            self.kernels[k] = op_matrix(j, band)
        return self.kernels[k]

    def left_commutator(self, key, f, band):
        """[D, L_f] as a dense matrix at the given band (J-independent)."""
        k = ("DL", key, band)
        if k not in self.left:
            m = self.ml(key, f, band)
            self.left[k] = self.md(band + f.band) @ m - m @ self.md(band)
        return self.left[k]


def _order_condition(name, dirac, j, family, band, tol, cache=None, jkey=None):
    """Zeroth/first/second order condition over a scalar-monomial family.

    order 0: [L_a, (L_b)°] ; order 1: [[D, L_a], (L_b)°] ;
    order 2: [[D, L_a], ([D, L_b])°]  with x° = J x^* J^{-1} and the adjoint
    computed structurally ((L_f)^* = L_{f*}, [D, L_f]^* = -[D, L_{f*}]).
    Commutators are evaluated exactly through dense per-band matrices of the
    primitives; the first violating pair in scan order is the witness and its
    norm is the operator norm of the commutator.
    """
    order = 0 if name.endswith("order_zero") else (1 if name.endswith("order_one") else 2)
    cache = cache or _MatCache()
    jkey = jkey or name
    dj = j.degree

    def lhs_mat(i, fa, b):
        if order == 0:
            return cache.ml(("fam", i), fa, b)
        return cache.left_commutator(("fam", i), fa, b)

    def star_mat(jdx, fbs, b):
        if order <= 1:
            return cache.ml(("adj", jdx), fbs, b)
        return -cache.left_commutator(("adj", jdx), fbs, b)

    circ_mats = {}

    def circ_mat(jdx, fbs, b):
        key = (jdx, b)
        if key not in circ_mats:
            ds = fbs.band
            inner = star_mat(jdx, fbs, b + dj)
            circ_mats[key] = (
                cache.kj(jkey, j, b + dj + ds)
                @ np.conj(inner)
                @ np.conj(cache.kj(jkey, j, b))
            )
        return circ_mats[key]

    adjoints = [trig_adjoint(fb) for _, fb in family]
    first = None
    violations = 0
    for i, (la, fa) in enumerate(family):
        da = fa.band if order else fa.band
        for jdx, (lb, _) in enumerate(family):
            fbs = adjoints[jdx]
            cb = fbs.band + 2 * dj
            c1 = lhs_mat(i, fa, band + cb) @ circ_mat(jdx, fbs, band)
            c2 = circ_mat(jdx, fbs, band + da) @ lhs_mat(i, fa, band)
            diff = c1 - c2
            colmax = float(np.max(np.linalg.norm(diff, axis=0)))
            if colmax > tol:
                violations += 1
                if first is None:
                    first = Witness(((i, la), (jdx, lb)), None, float(np.linalg.norm(diff, 2)))
    if first is None:
        return ConditionReport(name, True, None, {"family_size": len(family)})
    return ConditionReport(
        name, False, first, {"family_size": len(family), "violations": violations}
    )


def zero_op(degree=0, antilinear=False):
    return BandOp(
        degree,
        lambda arr, band: _pad_batch(np.zeros_like(arr), band, band + degree),
        antilinear,
        label="0",
    )


def _sign_identity(name, lhs, rhs, band, tol):
    """Detect lhs = +- rhs as band operators: +1, -1, or undefined."""
    plus = operator_identity(lhs, rhs, band, tol)
    minus = operator_identity(lhs, (-1.0) * rhs, band, tol)
    if plus.holds and minus.holds:
        return None, True, ConditionReport(name, False, None, {"value": None, "degenerate": True})
    if plus.holds or minus.holds:
        v = 1 if plus.holds else -1
        return v, False, ConditionReport(name, True, None, {"value": v})
    norm = min(
        plus.witness.norm if plus.witness else np.inf,
        minus.witness.norm if minus.witness else np.inf,
    )
    return None, False, ConditionReport(
        name, False, Witness(None, None, norm), {"value": None, "residual": norm}
    )


# -- Hochschild cycle on the torus ----------------------------------------


def torus_hochschild_cycle():
    """c = -(i/2) u*v* (x) (u (x) v - v (x) u), entries as scalar monomials."""
    uval = (1, 0)
    vval = (0, 1)
    uv_star = (-1, -1)
    return [
        (-0.5j, (uv_star, uval, vval)),
        (0.5j, (uv_star, vval, uval)),
    ]


def monomial_chain_boundary(chains):
    """Hochschild boundary for chains of scalar monomials (modes add under
    multiplication); returns the boundary as a dict of mode tuples."""
    out = {}

    def addmode(a, b):
        return (a[0] + b[0], a[1] + b[1])

    for coeff, entries in chains:
        n = len(entries) - 1
        for i in range(n):
            merged = entries[:i] + (addmode(entries[i], entries[i + 1]),) + entries[i + 2 :]
            out[merged] = out.get(merged, 0.0) + coeff * (-1) ** i
        wrap = (addmode(entries[n], entries[0]),) + entries[1:n]
        out[wrap] = out.get(wrap, 0.0) + coeff * (-1) ** n
    return out


def torus_hochschild_check(band, tol=1e-12):
    """Boundary of the orientation cycle vanishes and pi_D(c) = L_{sigma3}."""
    chains = torus_hochschild_cycle()
    boundary = monomial_chain_boundary(chains)
    bnorm = float(np.sqrt(sum(abs(c) ** 2 for c in boundary.values())))
    d = dirac_op()
    rep = None
    for coeff, entries in chains:
        acc = left_mult(trig_monomial(entries[0], S0))
        for mode in entries[1:]:
            acc = acc @ commutator_op(d, left_mult(trig_monomial(mode, S0)))
        term = coeff * acc
        rep = term if rep is None else rep + term
    target = left_mult(trig_monomial((0, 0), S3))
    ident = operator_identity(rep, target, band, tol, "hochschild_represents_grading")
    boundary_rep = ConditionReport(
        "hochschild_boundary_zero", bnorm <= tol, None, {"boundary_norm": bnorm}
    )
    return boundary_rep, ident


# -- the suite --------------------------------------------------------------


def default_prop12_unitaries():
    """The two constant shapes compatible with tau (diagonal and
    antidiagonal phases) plus a nonconstant diagonal example."""
    th1 = np.pi / 5
    u_diag = trig_monomial((0, 0), np.diag([np.exp(1j * th1), np.exp(-1j * th1)]))
    th2 = np.pi / 7
    u_anti = trig_monomial(
        (0, 0), np.array([[0, np.exp(1j * th2)], [np.exp(-1j * th2), 0]])
    )
    poly = zero_coeffs(1)
    poly[1 + 1, 1 + 0] = np.diag([1.0, 0.0])  # u in the upper-left entry
    poly[1 - 1, 1 + 0] = np.diag([0.0, 1.0])  # u* in the lower-right
    u_poly = TorusVector(1, poly)
    return [("diag", u_diag), ("antidiag", u_anti), ("offband", u_poly)]


# Expected verdict per suite check; cmd_torus exits 0 iff every actual
# verdict matches (the J1 second-order failure and the untwisted J2 sign
# are expected *failures* with recorded witnesses).
TORUS_EXPECTED = {
    "grading_self_adjoint": True,
    "grading_involutive": True,
    "grading_commutes_algebra": True,
    "grading_anticommutes_dirac": True,
    "dirac_self_adjoint": True,
    "generator_sigma1_from_u": True,
    "generator_sigma2_from_v": True,
    "j0_involution": True,
    "j1_involution": True,
    "j2_involution": True,
    "j1_factorization": True,
    "tau_equals_j1_j2": True,
    "tau_involution": True,
    "tau_commutes_j2": True,
    "j1_order_zero": True,
    "j1_order_one": True,
    "j1_order_two": False,
    "sign_eps_j1": True,
    "sign_eps_prime_j1": True,
    "sign_eps_double_prime_j1": True,
    "ko_j1_contains_0": True,
    "sign_eps_prime_j2_untwisted": False,
    "j2_order_zero": True,
    "j2_order_one": True,
    "j2_order_two": True,
    "sign_eps_prime_j2_twisted": True,
    "sign_eps_j2": True,
    "sign_eps_double_prime_j2": True,
    "eq_lr_j0_L": True,
    "eq_lr_j0_R": True,
    "eq_lr_j1_L": True,
    "eq_lr_j1_R": True,
    "eq_lr_j2_L": True,
    "eq_lr_j2_R": True,
    "hochschild_boundary_zero": True,
    "hochschild_represents_grading": True,
    "gamma_conj_outside_clifford_evidence": True,
    "gamma_sigma3_orientation_axioms": True,
}
for _tag in ("diag", "antidiag", "offband"):
    TORUS_EXPECTED.update(
        {
            f"prop12_{_tag}_ju_squared": True,
            f"prop12_{_tag}_order_two": True,
            f"prop12_{_tag}_twisted_intertwine": True,
            f"prop12_{_tag}_commutes_grading": True,
            f"prop12_{_tag}_tau_squared": True,
            f"prop12_{_tag}_tau_commutes_ju": True,
        }
    )


def run_torus_suite(band, tol=1e-9, unitaries=None):
    """Execute every torus check at the given band; band >= 3 required
    (the orientation cycle needs two mode shifts of headroom)."""
    if band < MIN_BAND:
        raise ValueError(f"band must be >= {MIN_BAND} (orientation cycle headroom)")
    reports = []
    d = dirac_op()
    gam = grading_op()
    ident = identity_op()
    j0, j1, j2, tau = j0_op(), j1_op(), j2_op(), twist_op()
    fam = scalar_family()
    cache = _MatCache()
    u_mon = trig_monomial((1, 0), S0)
    v_mon = trig_monomial((0, 1), S0)

    def check(name, lhs, rhs, tolerance=tol):
        reports.append(operator_identity(lhs, rhs, band, tolerance, name))

    # grading axioms for gamma a = sigma3 a sigma3
    reports.append(_adjoint_identity("grading_self_adjoint", gam, gam, band, tol))
    check("grading_involutive", gam @ gam, ident)
    worst = None
    for label, f in fam:
        rep = operator_identity(commutator_op(gam, left_mult(f)), zero_op(f.band), band, tol)
        if not rep.holds and worst is None:
            worst = Witness((label,), None, rep.witness.norm)
    reports.append(
        ConditionReport("grading_commutes_algebra", worst is None, worst, {"family_size": len(fam)})
    )
    check("grading_anticommutes_dirac", gam @ d + d @ gam, zero_op())
    reports.append(_adjoint_identity("dirac_self_adjoint", d, d, band, tol))

    # -u*[D,u] = L_{sigma1},  -v*[D,v] = L_{sigma2}
    check(
        "generator_sigma1_from_u",
        (-1.0) * (left_mult(trig_adjoint(u_mon)) @ commutator_op(d, left_mult(u_mon))),
        left_mult(trig_monomial((0, 0), S1)),
    )
    check(
        "generator_sigma2_from_v",
        (-1.0) * (left_mult(trig_adjoint(v_mon)) @ commutator_op(d, left_mult(v_mon))),
        left_mult(trig_monomial((0, 0), S2)),
    )

    # reality operators: involutions and factorizations
    check("j0_involution", j0 @ j0, ident)
    check("j1_involution", j1 @ j1, ident)
    check("j2_involution", j2 @ j2, ident)
    s1c = trig_monomial((0, 0), S1)
    check("j1_factorization", left_mult(s1c) @ right_mult(s1c) @ j0, j1)
    check("tau_equals_j1_j2", j1 @ j2, tau)
    check("tau_involution", tau @ tau, ident)
    check("tau_commutes_j2", tau @ j2 - j2 @ tau, zero_op(antilinear=True))

    # Prop 9: J1 is a real structure; second order fails
    reports.append(_order_condition("j1_order_zero", d, j1, fam, band, tol, cache, "j1"))
    reports.append(_order_condition("j1_order_one", d, j1, fam, band, tol, cache, "j1"))
    reports.append(_order_condition("j1_order_two", d, j1, fam, band, tol, cache, "j1"))

    e1, _, rep = _sign_identity("sign_eps_j1", j1 @ j1, ident, band, tol)
    reports.append(rep)
    ep1, _, rep = _sign_identity("sign_eps_prime_j1", j1 @ d, d @ j1, band, tol)
    reports.append(rep)
    epp1, _, rep = _sign_identity("sign_eps_double_prime_j1", j1 @ gam, gam @ j1, band, tol)
    reports.append(rep)
    if None not in (e1, ep1, epp1):
        ko = ko_dimensions(e1, ep1, epp1)
        reports.append(
            ConditionReport("ko_j1_contains_0", 0 in ko, None, {"ko_set": sorted(ko)})
        )
    else:
        reports.append(ConditionReport("ko_j1_contains_0", False, None, {"ko_set": None}))

    # Prop 10: untwisted J2 has no eps'; the twist repairs it
    ep2, _, rep = _sign_identity("sign_eps_prime_j2_untwisted", j2 @ d, d @ j2, band, tol)
    reports.append(rep)
    reports.append(_order_condition("j2_order_zero", d, j2, fam, band, tol, cache, "j2"))
    reports.append(_order_condition("j2_order_one", d, j2, fam, band, tol, cache, "j2"))
    reports.append(_order_condition("j2_order_two", d, j2, fam, band, tol, cache, "j2"))
    _, _, rep = _sign_identity("sign_eps_prime_j2_twisted", tau @ j2 @ d, d @ j2 @ tau, band, tol)
    reports.append(rep)
    _, _, rep = _sign_identity("sign_eps_j2", j2 @ j2, ident, band, tol)
    reports.append(rep)
    _, _, rep = _sign_identity("sign_eps_double_prime_j2", j2 @ gam, gam @ j2, band, tol)
    reports.append(rep)

    # the conjugation table
    for label, m in multiplier_family():
        mstar = trig_adjoint(m)
        mbar = TorusVector(m.band, np.conj(m.coeffs[::-1, ::-1]))
        mj1 = TorusVector(
            m.band, np.einsum("ij,mnjk,kl->mnil", S1, np.conj(m.coeffs[::-1, ::-1]), S1)
        )
        checks = [
            ("eq_lr_j0_L", j0 @ left_mult(m) @ j0, left_mult(mbar)),
            ("eq_lr_j0_R", j0 @ right_mult(m) @ j0, right_mult(mbar)),
            ("eq_lr_j1_L", j1 @ left_mult(m) @ j1, left_mult(mj1)),
            ("eq_lr_j1_R", j1 @ right_mult(m) @ j1, right_mult(mj1)),
            ("eq_lr_j2_L", j2 @ left_mult(m) @ j2, right_mult(mstar)),
            ("eq_lr_j2_R", j2 @ right_mult(m) @ j2, left_mult(mstar)),
        ]
        for name, lhs, rhs in checks:
            got = operator_identity(lhs, rhs, band, tol, name)
            prev = next((r for r in reports if r.name == name), None)
            if prev is None:
                got.details["multipliers"] = [label] if got.holds else []
                reports.append(got)
            else:
                prev.holds = prev.holds and got.holds
                if got.holds:
                    prev.details.setdefault("multipliers", []).append(label)
                elif prev.witness is None:
                    prev.witness = got.witness

    # Prop 12 family
    for tag, u in unitaries or default_prop12_unitaries():
        ju = ju_op(u, tol)
        tu = tau_u_op(u, tol)
        check(f"prop12_{tag}_ju_squared", ju @ ju, ident)
        # a degree-carrying U grows every commutator band by 2 deg(U); trim
        # the quantification family to the generators for those to keep the
        # suite inside its time budget (verdicts are band-exact either way)
        fam_u = fam if u.band == 0 else fam[:3]
        reports.append(
            _order_condition(f"prop12_{tag}_order_two", d, ju, fam_u, band, tol, cache, f"ju_{tag}")
        )
        # the twisted relation tau_U J_U D = eps' D J_U tau_U holds with a
        # definite sign (measured -1 with the paper's displayed gamma-carrying
        # J's; the gamma-flipped choice gives +1, same KO column)
        _, _, rep = _sign_identity(
            f"prop12_{tag}_twisted_intertwine", tu @ ju @ d, d @ ju @ tu, band, tol
        )
        reports.append(rep)
        check(f"prop12_{tag}_commutes_grading", ju @ gam - gam @ ju, zero_op(ju.degree, antilinear=True))
        check(f"prop12_{tag}_tau_squared", tu @ tu, ident)
        check(f"prop12_{tag}_tau_commutes_ju", tu @ ju - ju @ tu, zero_op(ju.degree + tu.degree, antilinear=True))

    # orientation: Hochschild cycle for the grading L_{sigma3}
    brep, hrep = torus_hochschild_check(band, 1e-12)
    reports.append(brep)
    reports.append(hrep)

    # conj-by-sigma3 grading is not in Cl_D(A): it fails to commute with
    # R_{sigma1} in the commutant, while the orientation grading L_{sigma3}
    # does commute (generator-level evidence, not a closure computation)
    rs1 = right_mult(trig_monomial((0, 0), S1))
    bad = operator_identity(commutator_op(gam, rs1), zero_op(), band, tol)
    ls3 = left_mult(trig_monomial((0, 0), S3))
    good = operator_identity(commutator_op(ls3, rs1), zero_op(), band, tol)
    reports.append(
        ConditionReport(
            "gamma_conj_outside_clifford_evidence",
            (not bad.holds) and good.holds,
            None,
            {
                "conj_grading_commutator_norm": bad.witness.norm if bad.witness else 0.0,
                "orientation_grading_commutes": good.holds,
            },
        )
    )
    # L_{sigma3} satisfies the grading axioms over the scalar algebra
    ax = [
        operator_identity(ls3 @ ls3, ident, band, tol),
        _adjoint_identity("", ls3, ls3, band, tol),
        operator_identity(ls3 @ d + d @ ls3, zero_op(), band, tol),
    ]
    com_ok = all(
        operator_identity(commutator_op(ls3, left_mult(f)), zero_op(f.band), band, tol).holds
        for _, f in fam
    )
    reports.append(
        ConditionReport(
            "gamma_sigma3_orientation_axioms",
            all(r.holds for r in ax) and com_ok,
            None,
            {"squares_to_one": ax[0].holds, "self_adjoint": ax[1].holds,
             "anticommutes_dirac": ax[2].holds, "commutes_algebra": com_ok},
        )
    )
    return reports


def _adjoint_identity(name, op, expected_adjoint, band, tol):
    """<op u, w> = <u, expected_adjoint w> over the band basis."""
    stack, dim = _basis_stack(band)
    la, lb = op.apply(stack, band)
    ra, rb = expected_adjoint.apply(stack, band)
    out_band = max(lb, rb)
    la = _pad_batch(la, lb, out_band).reshape(dim, -1)
    ra = _pad_batch(ra, rb, out_band).reshape(dim, -1)
    stack_p = _pad_batch(stack, band, out_band).reshape(dim, -1)
    gram_left = np.conj(la) @ stack_p.T  # <op u_i, u_j>
    gram_right = np.conj(stack_p) @ ra.T  # <u_i, A* u_j>
    defect = float(np.abs(gram_left - gram_right).max())
    return ConditionReport(name or "adjoint_identity", defect <= tol, None, {"defect": defect})
