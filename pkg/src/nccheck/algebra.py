"""Generated *-algebras and commutants inside a matrix algebra."""

from __future__ import annotations

import numpy as np

from ._kernels import orthonormalize_rows, residual_norms
from .numlin import (
    DEFAULT_TOL,
    MatrixSubspace,
    adjoint,
    as_matrix,
    circ,
    span,
)

# Above this ambient matrix-space dimension (n^2), materializing commutant
# bases via a dense eigensolve is avoided; callers should use
# commutant_dimension + containment checks instead.
_DENSE_COMMUTANT_LIMIT = 2100


class OperatorAlgebra:
    """A *-closed (optionally unital) subalgebra given by an orthonormal basis."""

    def __init__(self, subspace, unital):
        self.subspace = subspace
        self.unital = bool(unital)

    @property
    def ambient_dim(self):
        return self.subspace.ambient_dim

    @property
    def dim(self):
        return self.subspace.dim

    def basis_matrices(self):
        return self.subspace.basis_matrices()

    def closure_defect(self, tol=DEFAULT_TOL):
        """Max residual of pairwise products and adjoints against the span.

        Zero (within tol) certifies the product/adjoint closure invariants.
        """
        basis = self.basis_matrices()
        k = basis.shape[0]
        if k == 0:
            return 0.0
        prods = np.einsum("aij,bjk->abik", basis, basis).reshape(k * k, -1)
        adjs = np.conj(np.transpose(basis, (0, 2, 1))).reshape(k, -1)
        cand = np.vstack([prods, adjs])
        res = residual_norms(cand, self.subspace.vecs)
        return float(res.max())


def _pairwise_products(basis, chunk=64):
    """Stack of all pairwise products of the basis matrices (flattened)."""
    k, n, _ = basis.shape
    out = []
    for start in range(0, k, chunk):
        block = np.einsum("aij,bjk->abik", basis[start : start + chunk], basis)
        out.append(block.reshape(-1, n * n))
    return np.vstack(out)


def generate_star_algebra(generators, unital=True, tol=DEFAULT_TOL):
    """Smallest *-closed (unital) subalgebra containing the generators.

    Alternates span-closure with adjoint/pairwise-product augmentation until
    the dimension stabilizes; terminates since the dimension is bounded by
    n^2 and strictly increases each round.  Empty generators with unital=True
    give the scalars.
    """
    gens = [as_matrix(g) for g in generators]
    if not gens and not unital:
        raise ValueError("empty generator list for a non-unital algebra")
    n = gens[0].shape[0] if gens else None
    if n is None:
        raise ValueError("empty generator list: ambient dimension unknown")
    seed = list(gens)
    if unital:
        seed.append(np.eye(n, dtype=complex))
    space = span(seed, tol)
    if space.dim == 0:
        raise ValueError("span collapsed to zero: tolerance too large for the inputs")
    while True:
        basis = space.basis_matrices()
        # adjoints first, then all pairwise products, then re-span
        adjs = np.conj(np.transpose(basis, (0, 2, 1))).reshape(basis.shape[0], -1)
        extra = orthonormalize_rows(adjs, tol, against=space.vecs)
        if extra.shape[0]:
            space = MatrixSubspace(n, np.vstack([space.vecs, extra]))
            basis = space.basis_matrices()
        prods = _pairwise_products(basis)
        keep = residual_norms(prods, space.vecs) > tol
        if not keep.any():
            break
        extra = orthonormalize_rows(prods[keep], tol, against=space.vecs)
        if extra.shape[0] == 0:
            break
        space = MatrixSubspace(n, np.vstack([space.vecs, extra]))
        if space.dim >= n * n:
            break
    return OperatorAlgebra(space, unital)


def algebra_from_subspace(subspace, unital, tol=DEFAULT_TOL):
    """Wrap an already-closed subspace, asserting the closure invariants."""
    alg = OperatorAlgebra(subspace, unital)
    defect = alg.closure_defect(tol)
    if defect > tol * 10:
        raise ValueError(f"subspace is not product/adjoint closed (defect {defect:.2e})")
    return alg


def _basis_stack(b):
    if isinstance(b, OperatorAlgebra):
        return b.basis_matrices()
    if isinstance(b, MatrixSubspace):
        return b.basis_matrices()
    return np.stack([as_matrix(m) for m in b])


def commutant_constraint_gram(generators):
    """Hermitian PSD Gram matrix A = sum_g M_g^* M_g of the commutation map.

    M_g vec(X) = vec(Xg - gX) in row-major flattening, i.e.
    M_g = I (x) g^T - g (x) I.  The expansion collapses to two Kronecker
    terms plus two one-shot einsum contractions over the generator stack.
    """
    g = np.asarray(generators, dtype=complex)
    k, n, _ = g.shape
    gc = g.conj()
    s1 = np.einsum("gia,gja->ij", gc, g)  # sum conj(g) g^T (Hermitian)
    s2 = np.einsum("gai,gaj->ij", gc, g)  # sum g^* g
    eye = np.eye(n, dtype=complex)
    a = np.kron(eye, s1) + np.kron(s2, eye)
    t = np.einsum("gij,gkl->ikjl", g, gc).reshape(n * n, n * n)
    a -= t + t.conj().T
    return a


def commutant(b, tol=DEFAULT_TOL):
    """Commutant {X : [X, g] = 0 for all basis g} as a unital algebra.

    Computed as the joint null space of the maps X -> Xg - gX via the
    eigendecomposition of the assembled constraint Gram matrix; eigenvalues
    <= tol * max(1, lambda_max) count as null.
    """
    basis = _basis_stack(b)
    n = basis.shape[1]
    if n * n > _DENSE_COMMUTANT_LIMIT:
        raise ValueError(
            f"dense commutant basis on ambient dim {n} is too large; "
            "use commutant_dimension / containment checks"
        )
    if basis.shape[0] == 0:
        vecs = np.eye(n * n, dtype=complex)
        return OperatorAlgebra(MatrixSubspace(n, vecs), True)
    a = commutant_constraint_gram(basis)
    evals, evecs = np.linalg.eigh(a)
    lam_max = float(evals[-1]) if evals.size else 0.0
    null = evals <= tol * max(1.0, lam_max)
    vecs = evecs[:, null].T  # rows = flattened commutant matrices
    return OperatorAlgebra(MatrixSubspace(n, np.ascontiguousarray(vecs)), True)


def commutant_dimension(b, tol=DEFAULT_TOL, rng_seed=7):
    """dim of the commutant of a *-closed unital algebra, without a basis.

    Uses the finite-dimensional structure theory: decompose H under the
    algebra's center into isotypic blocks (d_i, m_i); the commutant has
    dimension sum m_i^2.  All heavy work happens in the algebra's own
    coordinates (dim k), never in B(H).
    """
    if isinstance(b, OperatorAlgebra) and not b.unital:
        raise ValueError("commutant_dimension expects a unital *-algebra")
    basis = _basis_stack(b)
    k, n, _ = basis.shape
    if k == 0:
        raise ValueError("commutant_dimension of the zero algebra")
    flat = basis.reshape(k, n * n)
    # structure of commutators projected back onto the algebra basis
    mu = np.empty((k, k, k), dtype=complex)  # mu[i, j, m] = <c_m, [c_i, c_j]>
    for i in range(k):
        comm = basis[i] @ basis - basis @ basis[i]
        resid = residual_norms(comm.reshape(k, n * n), flat)
        if resid.max() > tol * 100:
            raise ValueError("input is not product-closed; cannot use structure theory")
        mu[i] = comm.reshape(k, n * n) @ flat.conj().T
    # center: null space of alpha -> sum_i alpha_i mu[i, :, :]
    constraint = mu.reshape(k, k * k).T  # (k*k, k)
    gram = constraint.conj().T @ constraint
    evals, evecs = np.linalg.eigh(gram)
    lam_max = float(evals[-1]) if evals.size else 0.0
    null = evals <= tol * max(1.0, lam_max)
    center_coeff = evecs[:, null].T
    c = center_coeff.shape[0]
    center = np.einsum("ri,ijk->rjk", center_coeff, basis)
    # generic Hermitian central element separates the isotypic blocks: it is
    # a distinct scalar on each one, so its eigenspaces are the blocks
    rng = np.random.default_rng(rng_seed)
    w = rng.standard_normal(c) + 1j * rng.standard_normal(c)
    z = np.einsum("r,rjk->jk", w, center)
    z = z + z.conj().T
    zvals, zvecs = np.linalg.eigh(z)
    gap = 1e-6 * max(1.0, float(zvals[-1] - zvals[0]))
    cuts = [0]
    for i in range(1, n):
        if zvals[i] - zvals[i - 1] > gap:
            cuts.append(i)
    cuts.append(n)
    if len(cuts) - 1 != c:
        raise ValueError("central element failed to separate blocks; retry with new seed")
    total = 0
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        p = zvecs[:, lo:hi] @ zvecs[:, lo:hi].conj().T
        # the compressed algebra p C p is a full matrix algebra M_d
        block = np.einsum("ij,rjk,kl->ril", p, basis, p).reshape(k, n * n)
        d2 = orthonormalize_rows(block, 1e-7).shape[0]
        d = int(round(np.sqrt(d2)))
        if d * d != d2:
            raise ValueError(f"block algebra dimension {d2} is not a perfect square")
        m = (hi - lo) / d
        mi = int(round(m))
        if abs(m - mi) > 1e-6:
            raise ValueError(f"non-integral multiplicity {m}")
        total += mi * mi
    return total


def circ_image(j, b, tol=DEFAULT_TOL):
    """Algebra {b° : b in B} = J B^* J^{-1}, spanned basiswise.

    *-closed because B is; unital when B is.
    """
    basis = _basis_stack(b)
    if basis.shape[1] != j.dim:
        raise ValueError("dimension mismatch between J and algebra")
    imgs = [circ(j, m) for m in basis]
    sub = span(imgs, tol)
    unital = b.unital if isinstance(b, OperatorAlgebra) else True
    return OperatorAlgebra(sub, unital)


def commutes_with_all(x, b, tol=DEFAULT_TOL, norm="fro"):
    """Largest commutator norm of x against the basis of b.

    Frobenius by default (vectorized, and an upper bound on the operator
    norm, so containment verdicts are conservative); pass norm="op" when the
    reported magnitude must be the spectral norm.
    """
    basis = _basis_stack(b)
    comm = np.einsum("ij,gjk->gik", x, basis) - np.einsum("gij,jk->gik", basis, x)
    if norm == "op":
        worst = max(float(np.linalg.norm(c, 2)) for c in comm)
    else:
        worst = float(np.sqrt((np.abs(comm) ** 2).reshape(len(basis), -1).sum(axis=1).max()))
    return worst <= tol, worst
