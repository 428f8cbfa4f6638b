"""Critical groups, cut and flow lattices, and discriminant groups.

The i-th critical group is the torsion of the cokernel of the i-th up-down
Laplacian; its order equals the forest count one dimension up.  Cut and flow
lattices are the integer row space and integer kernel of a boundary map; the
discriminant group of a lattice is the cokernel of its Gram matrix.  The two
short exact sequences tying these together are checked at the level of orders.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, prod

from .linalg import (
    Matrix,
    column_lattice_basis,
    det,
    invariant_factors,
    kernel_lattice_basis,
    rank,
    solve_matrix,
)
from .complexes import boundary_matrix, laplacian
from .homology import forest_torsion, is_maximal_spanning_forest, torsion
from .oracle import enumerate_forests


@dataclass(frozen=True)
class AbelianGroupStructure:
    """Invariant factors (each > 1, divisibility chain) plus free rank."""

    torsion_factors: tuple
    free_rank: int = 0

    @property
    def order(self):
        if self.free_rank:
            return None
        return prod(self.torsion_factors) if self.torsion_factors else 1

    def __str__(self):
        parts = [f"Z/{f}" for f in self.torsion_factors]
        if self.free_rank:
            parts.append(f"Z^{self.free_rank}")
        return " x ".join(parts) if parts else "0"


@dataclass(frozen=True)
class LatticeData:
    """An integral lattice: ambient dimension, basis columns, and a role tag."""

    ambient: int
    basis: Matrix
    role: str

    @property
    def rank(self):
        return self.basis.ncols


def _torsion_structure(M):
    return AbelianGroupStructure(tuple(f for f in invariant_factors(M) if f > 1))


def critical_group(X, i):
    """Torsion of the cokernel of the i-th up-down Laplacian."""
    if not 0 <= i < X.dim:
        raise ValueError(f"critical group index {i} out of range 0..{X.dim - 1}")
    return _torsion_structure(laplacian(X, i, "ud"))


def critical_group_reduced(X, i, forest=None):
    """The same group from the Laplacian reduced at a torsion-free maximal i-forest.

    Searches the census for a torsion-free maximal i-forest when none is
    given; returns None when no such forest exists.
    """
    if not 0 <= i < X.dim:
        raise ValueError(f"critical group index {i} out of range 0..{X.dim - 1}")
    if forest is None:
        census = enumerate_forests(X, i) if i >= 1 else None
        if i == 0:
            forest = (0,)
        else:
            for facets, t in census.forests:
                if t == 1:
                    forest = facets
                    break
            else:
                return None
    else:
        forest = tuple(sorted(forest))
        if not is_maximal_spanning_forest(X, forest, i) or forest_torsion(X, forest, i) != 1:
            raise ValueError("selection is not a torsion-free maximal forest")
    keep = [j for j in range(X.n_cells(i)) if j not in set(forest)]
    L = laplacian(X, i, "ud")
    return AbelianGroupStructure(
        tuple(f for f in invariant_factors(L.submatrix(keep, keep)) if f > 1)
    )


def cut_lattice(X, k):
    """Integer row space of the k-th boundary, as a column basis."""
    if not 1 <= k <= X.dim:
        raise ValueError(f"cut lattice index {k} out of range 1..{X.dim}")
    basis = column_lattice_basis(boundary_matrix(X, k).transpose())
    return LatticeData(X.n_cells(k), basis, "cut")


def flow_lattice(X, k):
    """Integer kernel of the k-th boundary, as a column basis."""
    if not 1 <= k <= X.dim:
        raise ValueError(f"flow lattice index {k} out of range 1..{X.dim}")
    basis = kernel_lattice_basis(boundary_matrix(X, k))
    return LatticeData(X.n_cells(k), basis, "flow")


def discriminant_group(L):
    """Structure of (dual lattice)/(lattice): cokernel of the Gram matrix."""
    if L.rank == 0:
        return AbelianGroupStructure(())
    gram = L.basis.transpose() * L.basis
    return _torsion_structure(gram)


def _primitive(vec, positive_at):
    g = 0
    for x in vec:
        g = gcd(g, x)
    vec = [x // g for x in vec]
    if vec[positive_at] < 0:
        vec = [-x for x in vec]
    return tuple(vec)


def fundamental_vectors(X, tree):
    """Primitive fundamental bond and circuit vectors of a spanning tree.

    For each facet outside the tree, the circuit vector is the unique kernel
    vector supported on the tree plus that facet, normalized primitive and
    positive at the extra facet.  For each tree facet, the bond vector is the
    unique row-space vector vanishing on the rest of the tree, normalized
    primitive and positive at that facet.  Returns (bonds, circuits) keyed by
    facet index.
    """
    from .homology import is_spanning_tree

    tree = tuple(sorted(tree))
    if not is_spanning_tree(X, tree):
        raise ValueError("selection is not a spanning tree")
    b = boundary_matrix(X, X.dim)
    n = b.ncols
    tree_cols = b.submatrix(range(b.nrows), tree)
    circuits = {}
    for j in (j for j in range(n) if j not in set(tree)):
        target = Matrix.from_columns([b.column(j)], nrows=b.nrows)
        coords = solve_matrix(tree_cols, target)
        denom = 1
        for i in range(len(tree)):
            c = Fraction(coords[i, 0])
            denom = denom * c.denominator // gcd(denom, c.denominator)
        vec = [0] * n
        for i, t in enumerate(tree):
            vec[t] = -int(Fraction(coords[i, 0]) * denom)
        vec[j] = denom
        circuits[j] = _primitive(vec, j)
    bonds = {}
    for t in tree:
        rest = [c for c in tree if c != t]
        # row combinations y with (y^T b) vanishing on the rest of the tree
        constraint = Matrix([[b[i, r] for i in range(b.nrows)] for r in rest], ncols=b.nrows)
        ker = kernel_lattice_basis(constraint)
        for jcol in range(ker.ncols):
            y = ker.column(jcol)
            u = [sum(y[i] * b[i, c] for i in range(b.nrows)) for c in range(n)]
            if u[t]:
                bonds[t] = _primitive(u, t)
                break
        else:
            raise AssertionError("no fundamental bond found for a tree facet")
    return bonds, circuits


@dataclass(frozen=True)
class SequenceOrderReport:
    critical_order: int
    cut_discriminant_order: int
    flow_discriminant_order: int
    direct_sum_index: int
    error_order: int

    @property
    def first_sequence_ok(self):
        return self.critical_order == self.direct_sum_index * self.error_order

    @property
    def second_sequence_ok(self):
        return self.direct_sum_index == self.error_order * self.flow_discriminant_order

    @property
    def cut_matches_critical(self):
        return self.critical_order == self.cut_discriminant_order

    @property
    def all_orders_equal(self):
        return (
            self.error_order == 1
            and self.critical_order
            == self.cut_discriminant_order
            == self.flow_discriminant_order
            == self.direct_sum_index
        )

    @property
    def ok(self):
        return self.first_sequence_ok and self.second_sequence_ok and self.cut_matches_critical


def sequence_order_check(X):
    """Order relations of the two short exact sequences at the top dimension.

    |K| = |Z^n/(C+F)| * |E| and |Z^n/(C+F)| = |E| * |F#/F|, with |K| = |C#/C|;
    E is the codim-1 torsion.  All five orders coincide exactly when E is
    trivial.
    """
    d = X.dim
    K = critical_group(X, d - 1)
    C = cut_lattice(X, d)
    F = flow_lattice(X, d)
    if C.rank + F.rank != X.n_cells(d):
        raise AssertionError("cut and flow ranks do not fill the ambient space")
    combined = Matrix.from_columns(
        [C.basis.column(j) for j in range(C.rank)] + [F.basis.column(j) for j in range(F.rank)],
        nrows=X.n_cells(d),
    )
    index = abs(det(combined))
    return SequenceOrderReport(
        critical_order=K.order,
        cut_discriminant_order=discriminant_group(C).order,
        flow_discriminant_order=discriminant_group(F).order,
        direct_sum_index=index,
        error_order=torsion(X, d - 1),
    )
