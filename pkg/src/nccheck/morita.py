"""J-implemented Morita equivalence and the spin / even-spin / Hodge classes."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import (
    OperatorAlgebra,
    circ_image,
    commutant,
    commutant_dimension,
    commutes_with_all,
)
from .numlin import DEFAULT_TOL, subspace_witness
from .triple import clifford, clifford_gamma


@dataclass
class MoritaTest:
    """Outcome of one B1 = (B2°)' comparison with diagnostics."""

    equivalent: bool
    contained: bool
    dim_b1: int
    dim_circ_commutant: int
    worst_commutator: float
    witness: np.ndarray | None = None
    witness_residual: float | None = None

    def to_dict(self):
        return {
            "equivalent": self.equivalent,
            "contained": self.contained,
            "dim_b1": self.dim_b1,
            "dim_circ_commutant": self.dim_circ_commutant,
            "worst_commutator": self.worst_commutator,
            "witness_residual": self.witness_residual,
        }


def morita_test(b1, b2, j, tol=DEFAULT_TOL, want_witness=True):
    """Test B1 ~_J B2, i.e. B1 = (B2°)' as subspaces.

    Containment B1 in (B2°)' is checked by commutation residuals; equality
    then reduces to dim B1 = dim (B2°)', with the commutant dimension taken
    from the structure theory of the small algebra B2° (no commutant basis
    on large H).  When equality fails and the ambient space is small enough,
    an explicit witness in the larger space is extracted.
    """
    if b1.ambient_dim != b2.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    c = circ_image(j, b2, tol)
    worst = 0.0
    contained = True
    for x in b1.basis_matrices():
        ok, w = commutes_with_all(x, c, tol)
        worst = max(worst, w)
        if not ok:
            contained = False
    dim_cc = commutant_dimension(c, tol)
    equivalent = contained and (b1.dim == dim_cc)
    witness = None
    wres = None
    if not equivalent and want_witness:
        n = b1.ambient_dim
        if not contained:
            # a basis element of B1 that fails to commute is itself evidence;
            # keep the commutator with largest norm
            best = None
            for i, x in enumerate(b1.basis_matrices()):
                for g in c.basis_matrices():
                    cm = x @ g - g @ x
                    nrm = float(np.linalg.norm(cm, 2))
                    if best is None or nrm > best[0]:
                        best = (nrm, cm)
            witness, wres = best[1], best[0]
        elif n * n <= 2100:
            cc = commutant(c, tol)
            found = subspace_witness(cc.subspace, b1.subspace, tol)
            if found is not None:
                witness, wres = found
    return MoritaTest(equivalent, contained, b1.dim, dim_cc, worst, witness, wres)


def morita_equivalent_J(b1, b2, j, tol=DEFAULT_TOL):
    """True iff B1 equals the commutant of circ_image(J, B2)."""
    return morita_test(b1, b2, j, tol, want_witness=False).equivalent


@dataclass
class MoritaClassification:
    spin: bool
    even_spin: bool | None
    hodge: bool
    diagnostics: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "spin": self.spin,
            "even_spin": self.even_spin,
            "hodge": self.hodge,
            "diagnostics": {
                k: (v.to_dict() if isinstance(v, MoritaTest) else v)
                for k, v in self.diagnostics.items()
            },
        }


def classify(t, tol=None):
    """Evaluate spin (6a), even-spin (6b), Hodge (6c) for a finite triple.

    even_spin is None (undefined, not false) when no grading is present.
    A-bar is A itself in finite dimension.
    """
    if t.real_structure is None:
        raise ValueError("classification requires a real structure")
    tol = t.tol if tol is None else tol
    j = t.real_structure.j
    a = t.algebra()
    cl = clifford(t)
    spin_test = morita_test(cl, a, j, tol)
    hodge_test = morita_test(cl, cl, j, tol)
    even_test = None
    if t.grading is not None:
        clg = clifford_gamma(t)
        even_test = morita_test(clg, a, j, tol)
    diag = {
        "dim_algebra": a.dim,
        "dim_clifford": cl.dim,
        "spin": spin_test,
        "hodge": hodge_test,
    }
    if even_test is not None:
        diag["dim_clifford_gamma"] = clifford_gamma(t).dim
        diag["even_spin"] = even_test
    return MoritaClassification(
        spin=spin_test.equivalent,
        even_spin=None if even_test is None else even_test.equivalent,
        hodge=hodge_test.equivalent,
        diagnostics=diag,
    )
