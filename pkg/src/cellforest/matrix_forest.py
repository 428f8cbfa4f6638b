"""Torsion-weighted forest counts from Laplacian determinants and spectra.

Each routine here is an independent computation of the same quantity

    tau_d(X) = sum over maximal spanning d-forests T of t_{d-1}(T)^2,

optionally weighted by a product of top-cell weights.  The routes:

* ``tau_reduced``      -- determinant of the Laplacian reduced at a root.
* ``tau_pseudodet``    -- product of nonzero Laplacian eigenvalues over the
                          count one dimension down (recursive).
* ``tau_alternating``  -- the closed-form alternating product of
                          pseudodeterminants obtained by iterating the above.
* ``tau_covolume``     -- determinant of the Laplacian restricted to the image
                          lattice of the top boundary, over its squared covolume.
* ``tau_cobase``       -- fully general reduced determinant with a kernel-defect
                          correction; no vanishing hypotheses at all.
* ``tau_cobase_spectral`` -- fully general eigenvalue form, normalized by the
                          torsion-weighted cobase enumerator.
* ``tau_algebraic_weighted`` / ``tau_weighted_alternating`` -- the same story
                          for the algebraically weighted Laplacian, where lower
                          dimensional weights enter.

All hypotheses are checked before any determinant is taken; a violated check
raises ``HypothesisError`` naming the offending Betti number or torsion order.
Every report records the correction factors actually used, so cross-method
disagreements are diagnosable from the reports alone.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import prod

from .linalg import (
    char_poly,
    column_lattice_basis,
    covolume_squared,
    det,
    greedy_column_basis,
    greedy_row_basis,
    pseudodet,
    rank,
    solve_matrix,
)
from .complexes import (
    boundary_matrix,
    laplacian,
    skeleton,
    weighted_laplacian,
    weighted_laplacian_similar,
)
from .homology import betti, forest_torsion, relative_homology_torsion, torsion
from .oracle import cobase_defect_enumerator, cobase_kernel_defect, default_cobase


class HypothesisError(ValueError):
    """A formula's vanishing hypothesis fails; the message names the condition."""


def _require(cond, msg):
    if not cond:
        raise HypothesisError(msg)


def format_exact(x):
    """Exact rendering: integers plainly, rationals as p/q."""
    if isinstance(x, Fraction) and x.denominator != 1:
        return f"{x.numerator}/{x.denominator}"
    return str(int(x))


@dataclass(frozen=True)
class TauReport:
    """A forest count with the method, corrections, and intermediates that produced it."""

    method: str
    k: int
    value: object
    corrections: tuple = ()
    details: tuple = ()
    hypotheses: tuple = ()

    def render(self):
        lines = [f"method: {self.method}", f"k: {self.k}", f"value: {format_exact(self.value)}"]
        if self.corrections:
            lines.append(
                "corrections: " + " ".join(f"{n}={format_exact(v)}" for n, v in self.corrections)
            )
        if self.details:
            lines.append("details: " + " ".join(f"{n}={v}" for n, v in self.details))
        if self.hypotheses:
            lines.append("hypotheses: " + "; ".join(self.hypotheses))
        return "\n".join(lines)


def _exactify(x):
    x = Fraction(x) if not isinstance(x, (int, Fraction)) else x
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x


def default_root(X):
    """Deterministic root: the lexicographically greedy one.

    When codim-1 rational homology vanishes this is the greedy column basis of
    the codim-1 boundary (a maximal forest); otherwise it is the complement of
    the greedy row basis of the top boundary.
    """
    d = X.dim
    if betti(X, d - 1) == 0:
        return tuple(greedy_column_basis(boundary_matrix(X, d - 1)))
    s = set(greedy_row_basis(boundary_matrix(X, d)))
    return tuple(i for i in range(X.n_cells(d - 1)) if i not in s)


def _root_complement(X, root):
    root_set = set(root)
    return tuple(i for i in range(X.n_cells(X.dim - 1)) if i not in root_set)


def _top_laplacian(X, weights):
    if weights is None:
        return laplacian(X, X.dim - 1, "ud")
    return weighted_laplacian(X, X.dim, weights)


def tau_reduced(X, root=None, weights=None):
    """Forest count as a reduced-Laplacian determinant at a root.

    With vanishing codim-1 and codim-2 rational homology and a maximal
    codim-1 forest as root, the correction is the squared torsion ratio of the
    ambient complex to the root; for a general root it is the squared ratio of
    the codim-1 torsion to the relative torsion at the root.
    """
    d = X.dim
    _require(d >= 1, "reduced determinant needs dimension at least 1")
    root = default_root(X) if root is None else tuple(sorted(root))
    sel = _root_complement(X, root)
    L = _top_laplacian(X, weights)
    det_ls = det(L.submatrix(sel, sel))
    hypotheses = []
    b_codim1 = betti(X, d - 1)
    b_codim2 = betti(X, d - 2)
    root_cols = boundary_matrix(X, d - 1).submatrix(range(X.n_cells(d - 2) if d >= 2 else 1), root) if d >= 1 else None
    maximal_root = (
        b_codim1 == 0
        and b_codim2 == 0
        and rank(root_cols) == len(root) == rank(boundary_matrix(X, d - 1))
    )
    if maximal_root:
        hypotheses.append(f"beta_{d-1}(X)=0")
        hypotheses.append(f"beta_{d-2}(X)=0")
        hypotheses.append("root is a maximal codim-1 forest")
        t_x = torsion(X, d - 2)
        t_r = forest_torsion(X, root, d - 1)
        value = _exactify(Fraction(t_x * t_x, t_r * t_r) * det_ls)
        corrections = ((f"t{d-2}(X)", t_x), (f"t{d-2}(R)", t_r))
    else:
        rows = boundary_matrix(X, d).submatrix(sel, range(X.n_cells(d)))
        _require(
            rank(rows) == len(sel) == rank(boundary_matrix(X, d)),
            "selection is not a root: complementary rows are not a row basis of the top boundary",
        )
        hypotheses.append("root complement is a row basis of the top boundary")
        t_x = torsion(X, d - 1)
        t_rel = relative_homology_torsion(X, root)
        value = _exactify(Fraction(t_x * t_x, t_rel * t_rel) * det_ls)
        corrections = ((f"t{d-1}(X)", t_x), (f"t{d-1}(X,R)", t_rel))
    return TauReport(
        method="reduced",
        k=d,
        value=value,
        corrections=corrections,
        details=(("det_reduced", format_exact(det_ls)), ("root", ",".join(map(str, root)))),
        hypotheses=tuple(hypotheses),
    )


def _pseudodet_value(X, k, weights):
    """Recursive eigenvalue-product count; weights apply at the top call only."""
    if k == 0:
        return X.n_cells(0)
    _require(
        betti(X, k - 1) == 0,
        f"beta_{k-1}(X) != 0: eigenvalue-product formula needs vanishing codim-1 homology",
    )
    _require(
        betti(X, k - 2) == 0,
        f"beta_{k-2}(X) != 0: eigenvalue-product formula needs vanishing codim-2 homology",
    )
    if weights is None:
        lam = pseudodet(laplacian(X, k - 1, "ud"))
    else:
        lam = pseudodet(weighted_laplacian(X, k, weights))
    t_x = torsion(X, k - 2)
    below = _pseudodet_value(X, k - 1, None)
    return _exactify(Fraction(t_x * t_x, 1) * lam / below)


def tau_pseudodet(X, weights=None):
    """Forest count as pseudodeterminant of the top Laplacian over the count below."""
    d = X.dim
    _require(d >= 1, "eigenvalue-product formula needs dimension at least 1")
    value = _pseudodet_value(X, d, weights)
    lam = pseudodet(_top_laplacian(X, weights))
    below = _pseudodet_value(X, d - 1, None) if d >= 1 else 1
    return TauReport(
        method="pseudodet",
        k=d,
        value=value,
        corrections=((f"t{d-2}(X)", torsion(X, d - 2)), (f"tau{d-1}(X)", below)),
        details=(("pseudodet", format_exact(lam)),),
        hypotheses=(f"beta_{d-1}(X)=0", f"beta_{d-2}(X)=0"),
    )


def _alternating_hypotheses(X):
    d = X.dim
    for k in range(d):
        _require(betti(X, k) == 0, f"beta_{k}(X) != 0: alternating product needs acyclicity below the top")
    for k in range(d - 1):
        _require(
            torsion(X, k) == 1,
            f"t_{k}(X) != 1: alternating product needs torsion-free homology below codimension 1",
        )


def tau_alternating(X):
    """Closed-form alternating product of Laplacian pseudodeterminants.

    Valid when rational homology vanishes below the top dimension and integer
    torsion is trivial below codimension 1 (codim-1 torsion is allowed: it
    never enters the correction factors of the underlying recursion).
    """
    d = X.dim
    _require(d >= 1, "alternating product needs dimension at least 1")
    _alternating_hypotheses(X)
    value = Fraction(1)
    lams = []
    for i in range(d + 1):
        lam = pseudodet(laplacian(X, i - 1, "ud"))
        lams.append((f"lam(L{i-1})", format_exact(lam)))
        value *= Fraction(lam) ** ((-1) ** (d - i))
    return TauReport(
        method="alternating",
        k=d,
        value=_exactify(value),
        details=tuple(lams),
        hypotheses=tuple(
            [f"beta_{k}(X)=0" for k in range(d)] + [f"t_{k}(X)=1" for k in range(d - 1)]
        ),
    )


def tau_covolume(X, weights=None):
    """Forest count from the Laplacian restricted to the top boundary's image lattice.

    Fully general: tau = t_{d-1}(X)^2 det(L|_B) / covol(B)^2 with B the integer
    image lattice of the *top* boundary (the codim-1 Laplacian maps it to
    itself; restricting to the image of the codim-1 boundary instead fails the
    cross-checks).  A rank-zero boundary returns 1 by the empty-product
    convention.
    """
    d = X.dim
    _require(d >= 1, "covolume formula needs dimension at least 1")
    b = boundary_matrix(X, d)
    basis = column_lattice_basis(b)
    if basis.ncols == 0:
        return TauReport(method="covolume", k=d, value=1, details=(("rank", "0"),))
    L = _top_laplacian(X, weights)
    action = solve_matrix(basis, L * basis)
    det_action = det(action)
    covol2 = covolume_squared(basis)
    t_x = torsion(X, d - 1)
    value = _exactify(Fraction(t_x * t_x) * det_action / covol2)
    return TauReport(
        method="covolume",
        k=d,
        value=value,
        corrections=((f"t{d-1}(X)", t_x), ("covol^2", covol2)),
        details=(("det_restricted", format_exact(det_action)),),
    )


def tau_cobase(X, cobase=None):
    """Fully general reduced determinant at a cobase, defect-corrected.

    tau = t_{d-2}(X)^2 det L_S / (t_{d-2}(R)^2 t'_{d-1}(S)^2) for any row basis
    S of the top boundary, with R the complementary root and t' the kernel
    defect of S.  No vanishing hypotheses.
    """
    d = X.dim
    _require(d >= 1, "cobase determinant needs dimension at least 1")
    cobase = default_cobase(X) if cobase is None else tuple(sorted(cobase))
    b = boundary_matrix(X, d)
    rows = b.submatrix(cobase, range(b.ncols))
    _require(
        rank(rows) == len(cobase) == rank(b),
        "selection is not a cobase: rows are not a row basis of the top boundary",
    )
    root = tuple(i for i in range(X.n_cells(d - 1)) if i not in set(cobase))
    L = laplacian(X, d - 1, "ud")
    det_ls = det(L.submatrix(cobase, cobase))
    t_x = torsion(X, d - 2)
    t_r = forest_torsion(X, root, d - 1)
    defect = cobase_kernel_defect(X, d - 1, cobase)
    value = _exactify(Fraction(t_x * t_x, t_r * t_r * defect * defect) * det_ls)
    return TauReport(
        method="cobase",
        k=d,
        value=value,
        corrections=((f"t{d-2}(X)", t_x), (f"t{d-2}(R)", t_r), ("defect", defect)),
        details=(("det_reduced", format_exact(det_ls)), ("cobase", ",".join(map(str, cobase)))),
        hypotheses=("cobase rows are a row basis of the top boundary",),
    )


def tau_cobase_spectral(X, cap=None):
    """Fully general eigenvalue form: pseudodeterminant over the cobase enumerator."""
    d = X.dim
    _require(d >= 1, "cobase spectral formula needs dimension at least 1")
    lam = pseudodet(laplacian(X, d - 1, "ud"))
    h = cobase_defect_enumerator(X, d - 1, cap=cap)
    t_x = torsion(X, d - 2)
    value = _exactify(Fraction(t_x * t_x) * lam / h)
    return TauReport(
        method="cobase-spectral",
        k=d,
        value=value,
        corrections=((f"t{d-2}(X)", t_x), ("cobase_enumerator", h)),
        details=(("pseudodet", format_exact(lam)),),
    )


def _algebraic_value(X, k, weights):
    if k == -1:
        return 1
    _require(
        betti(X, k - 1) == 0,
        f"beta_{k-1}(X) != 0: algebraic weighted formula needs vanishing codim-1 homology",
    )
    _require(
        betti(X, k - 2) == 0,
        f"beta_{k-2}(X) != 0: algebraic weighted formula needs vanishing codim-2 homology",
    )
    lam = pseudodet(weighted_laplacian_similar(X, k, weights))
    mono = Fraction(1)
    if k >= 1:
        for i in range(X.n_cells(k - 1)):
            mono *= weights[(k - 1, i)]
    t_x = torsion(X, k - 2)
    below = _algebraic_value(X, k - 1, weights)
    return _exactify(Fraction(t_x * t_x) * lam * mono / below)


def tau_algebraic_weighted(X, weights):
    """Weighted forest count from the algebraically weighted Laplacian spectrum.

    Recursive in the dimension, grounded at the 1x1 sum-of-vertex-weights
    Laplacian of the empty face (which carries weight 1 by convention).
    """
    d = X.dim
    _require(d >= 1, "algebraic weighted formula needs dimension at least 1")
    value = _algebraic_value(X, d, weights)
    return TauReport(
        method="algebraic-weighted",
        k=d,
        value=value,
        corrections=((f"t{d-2}(X)", torsion(X, d - 2)),),
        hypotheses=(f"beta_{d-1}(X)=0", f"beta_{d-2}(X)=0"),
    )


def tau_weighted_alternating(X, weights):
    """Closed-form weighted alternating product (algebraic weighting).

    Same validity domain as the unweighted alternating product.
    """
    d = X.dim
    _require(d >= 1, "weighted alternating product needs dimension at least 1")
    _alternating_hypotheses(X)
    value = Fraction(1)
    for k in range(d):
        exp = (-1) ** (d - k - 1)
        for i in range(X.n_cells(k)):
            value *= Fraction(weights[(k, i)]) ** exp
    for k in range(-1, d):
        lam = pseudodet(weighted_laplacian_similar(X, k + 1, weights))
        value *= Fraction(lam) ** ((-1) ** (d - k - 1))
    return TauReport(method="weighted-alternating", k=d, value=_exactify(value))


def rooted_forest_polynomial(X):
    """Generating polynomial of rooted forests: det(L + z I) on the codim-1 space.

    The coefficient of z^j is the sum of squared relative torsions over rooted
    spanning forests whose root keeps j codim-1 cells.
    """
    d = X.dim
    if d < 1:
        raise ValueError("rooted forest polynomial needs dimension at least 1")
    L = laplacian(X, d - 1, "ud")
    return char_poly(-L)


def graph_components(X):
    """Vertex index sets of the connected components of a 1-complex."""
    if X.dim != 1:
        raise ValueError("component analysis applies to 1-dimensional complexes")
    n = X.n_cells(0)
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    b = boundary_matrix(X, 1)
    for j in range(b.ncols):
        ends = [i for i in range(n) if b[i, j] != 0]
        if len(ends) == 2:
            ra, rb = find(ends[0]), find(ends[1])
            if ra != rb:
                parent[rb] = ra
    comps = {}
    for v in range(n):
        comps.setdefault(find(v), []).append(v)
    return tuple(tuple(c) for c in sorted(comps.values()))


def graph_matrix_tree(G):
    """Maximal forest count of a graph by both classical routes, plus rooted count.

    Returns the forest count computed as the product of nonzero Laplacian
    eigenvalues over the product of component orders, checks it against the
    determinant reduced at one vertex per component, and reports the rooted
    forest count (the pseudodeterminant itself).
    """
    if G.dim != 1:
        raise ValueError("matrix-tree routine applies to 1-dimensional complexes")
    comps = graph_components(G)
    lam = pseudodet(laplacian(G, 0, "ud"))
    denominator = prod(len(c) for c in comps)
    by_eigenvalues = _exactify(Fraction(lam, denominator))
    removed = {c[0] for c in comps}
    keep = [v for v in range(G.n_cells(0)) if v not in removed]
    L = laplacian(G, 0, "ud")
    by_determinant = det(L.submatrix(keep, keep))
    if by_eigenvalues != by_determinant:
        raise AssertionError("eigenvalue and determinant forest counts disagree")
    return TauReport(
        method="graph-matrix-tree",
        k=1,
        value=by_determinant,
        corrections=(("component_orders", denominator),),
        details=(
            ("rooted_forests", format_exact(lam)),
            ("components", str(len(comps))),
        ),
    )


METHODS = {
    "reduced": lambda X, w: tau_reduced(X, weights=w),
    "pseudodet": lambda X, w: tau_pseudodet(X, weights=w),
    "alternating": lambda X, w: tau_alternating(X),
    "covolume": lambda X, w: tau_covolume(X, weights=w),
    "cobase": lambda X, w: tau_cobase(X),
    "cobase-spectral": lambda X, w: tau_cobase_spectral(X),
    "algebraic-weighted": lambda X, w: tau_algebraic_weighted(X, w),
    "weighted-alternating": lambda X, w: tau_weighted_alternating(X, w),
}

WEIGHT_REQUIRED = {"algebraic-weighted", "weighted-alternating"}
UNWEIGHTED_ONLY = {"alternating", "cobase", "cobase-spectral"}


def tau(X, k, method, weights=None):
    """Count forests at dimension k by the named method (on the k-skeleton)."""
    d = X.dim
    if not 1 <= k <= d:
        raise ValueError(f"tau dimension {k} out of range 1..{d}")
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; choose from {sorted(METHODS)}")
    if method in WEIGHT_REQUIRED and weights is None:
        raise ValueError(f"method {method!r} requires weights")
    if method in UNWEIGHTED_ONLY and weights is not None:
        raise ValueError(f"method {method!r} is unweighted")
    Xk = X if k == d else skeleton(X, k)
    return METHODS[method](Xk, weights)
