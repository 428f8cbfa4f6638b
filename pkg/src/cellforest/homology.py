"""Reduced integer homology, torsion orders, and spanning tree/forest predicates.

Betti numbers come from exact ranks; torsion of H_k comes from the invariant
factors of the (k+1)-st boundary map (the cokernel of that map has the same
torsion subgroup as H_k, because the chain group modulo the cycle lattice is
free).  Homology is reduced throughout: the augmentation makes beta_0 one less
than the number of connected components.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod

from .linalg import invariant_factors, rank
from .complexes import boundary_matrix, relative_boundary


@dataclass(frozen=True)
class HomologySummary:
    k: int
    betti: int
    torsion_order: int
    torsion_factors: tuple

    def __str__(self):
        tor = " x ".join(f"Z/{f}" for f in self.torsion_factors) or "0"
        free = f"Z^{self.betti}" if self.betti else ""
        body = " x ".join(p for p in (free, tor if self.torsion_factors else "") if p)
        return body or "0"


def homology(X, k):
    """Reduced homology summary at dimension k (torsion via Smith form)."""
    d = X.dim
    if not 0 <= k <= d:
        raise ValueError(f"homology index {k} out of range for a {d}-complex")
    nullity = X.n_cells(k) - rank(boundary_matrix(X, k))
    if k < d:
        above = boundary_matrix(X, k + 1)
        factors = tuple(f for f in invariant_factors(above) if f > 1)
        betti = nullity - rank(above)
    else:
        factors = ()
        betti = nullity
    return HomologySummary(k, betti, prod(factors) if factors else 1, factors)


def betti(X, k):
    """Reduced Betti number; negative k gives 0 for any nonempty complex."""
    if k < 0:
        return 0
    return homology(X, k).betti


def torsion(X, k):
    """Order of the torsion subgroup of reduced H_k; 1 outside 0..dim-1."""
    if not 0 <= k < X.dim:
        return 1
    return homology(X, k).torsion_order


def is_z_apc(X):
    """Integer homology vanishes strictly below the top dimension."""
    return all(betti(X, k) == 0 and torsion(X, k) == 1 for k in range(X.dim))


def subcomplex_boundary(X, facet_subset, k=None):
    """Columns of the k-th boundary restricted to a facet subset (k defaults to dim)."""
    k = X.dim if k is None else k
    b = boundary_matrix(X, k)
    cols = sorted(facet_subset)
    if any(not 0 <= c < b.ncols for c in cols):
        raise ValueError("facet index out of range")
    return b.submatrix(range(b.nrows), cols)


def is_spanning_forest(X, facet_subset, k=None):
    """Columns of the top boundary restricted to the subset are independent."""
    sub = subcomplex_boundary(X, facet_subset, k)
    return rank(sub) == sub.ncols


def is_maximal_spanning_forest(X, facet_subset, k=None):
    k = X.dim if k is None else k
    sub = subcomplex_boundary(X, facet_subset, k)
    return sub.ncols == rank(boundary_matrix(X, k)) and rank(sub) == sub.ncols


def is_spanning_tree(X, facet_subset, k=None):
    """Maximal spanning forest of a complex whose codim-1 rational homology vanishes."""
    k = X.dim if k is None else k
    return betti(skeleton_or_self(X, k), k - 1) == 0 and is_maximal_spanning_forest(
        X, facet_subset, k
    )


def skeleton_or_self(X, k):
    from .complexes import skeleton

    return X if k == X.dim else skeleton(X, k)


def forest_torsion(X, facet_subset, k=None):
    """Torsion order t_{k-1} of the spanning subcomplex keeping these k-cells."""
    sub = subcomplex_boundary(X, facet_subset, k)
    return prod(f for f in invariant_factors(sub) if f > 1)


def relative_homology_torsion(X, root):
    """Torsion order of codim-1 homology relative to a root.

    ``root`` holds the (d-1)-cell indices of the root, which keeps the whole
    lower skeleton; the relative chain complex collapses to the submatrix of
    the top boundary on the remaining rows, whose cokernel torsion is returned.
    """
    sub = relative_boundary(X, root)
    return prod(f for f in invariant_factors(sub) if f > 1)
