"""Text interchange format for complexes, weights, and censuses.

Complex files: a header line ``dim d``, then either a single simplicial block

    facets <count>
    <sorted vertex list, space separated>     (one facet per line)

or one ``matrix k rows cols`` block per dimension k = 1..d, each followed by
``rows`` lines of ``cols`` space-separated integers.  Lines starting with
``#`` and blank lines are ignored.  Serialization is canonical (facets sorted,
fixed spacing), so parse/serialize round-trips are bit-exact.

Weight files: lines ``dim index value`` with ``value`` an integer or ``p/q``.
"""

from __future__ import annotations

from fractions import Fraction

from .linalg import Matrix
from .complexes import ChainComplex, SimplicialComplex, WeightAssignment, from_facets


class FormatError(ValueError):
    pass


def _content_lines(text):
    out = []
    for raw in text.splitlines():
        line = raw.strip()
        if line and not line.startswith("#"):
            out.append(line)
    return out


def parse_any(text):
    """Parse a complex file into a SimplicialComplex (facets form) or ChainComplex."""
    lines = _content_lines(text)
    if not lines:
        raise FormatError("empty complex file")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "dim":
        raise FormatError("first line must be 'dim <d>'")
    d = int(head[1])
    if d < 0:
        raise FormatError("dimension must be nonnegative")
    body = lines[1:]
    if body and body[0].split()[0] == "facets":
        parts = body[0].split()
        if len(parts) != 2:
            raise FormatError("facets header must be 'facets <count>'")
        count = int(parts[1])
        facet_lines = body[1:]
        if len(facet_lines) != count:
            raise FormatError(f"expected {count} facet lines, found {len(facet_lines)}")
        facets = []
        for line in facet_lines:
            vs = [int(t) for t in line.split()]
            if vs != sorted(vs) or len(set(vs)) != len(vs):
                raise FormatError(f"facet line must be a sorted vertex set: {line!r}")
            facets.append(set(vs))
        n = max(v for f in facets for v in f)
        S = from_facets(n, facets)
        if S.dim != d:
            raise FormatError(f"header says dim {d} but facets have dimension {S.dim}")
        return S
    matrices = {}
    i = 0
    while i < len(body):
        parts = body[i].split()
        if len(parts) != 4 or parts[0] != "matrix":
            raise FormatError(f"expected 'matrix k rows cols', got {body[i]!r}")
        k, nrows, ncols = int(parts[1]), int(parts[2]), int(parts[3])
        rows = []
        for j in range(nrows):
            i += 1
            if i >= len(body):
                raise FormatError(f"matrix {k}: missing row {j}")
            row = [int(t) for t in body[i].split()]
            if len(row) != ncols:
                raise FormatError(f"matrix {k}: row {j} has {len(row)} entries, expected {ncols}")
            rows.append(row)
        matrices[k] = Matrix(rows, ncols=ncols)
        i += 1
    if sorted(matrices) != list(range(1, d + 1)):
        raise FormatError(f"need matrix blocks for k = 1..{d}")
    sizes = [matrices[1].nrows] + [matrices[k].ncols for k in range(1, d + 1)]
    for k in range(2, d + 1):
        if matrices[k].nrows != sizes[k - 1]:
            raise FormatError(f"matrix {k} has {matrices[k].nrows} rows, expected {sizes[k - 1]}")
    cells = tuple(tuple(f"{k}:{i}" for i in range(sizes[k])) for k in range(d + 1))
    # the file stores only the interior maps; the augmentation identity is a
    # convention that formal duals legitimately violate, so it is not enforced
    return ChainComplex.create(
        cells, tuple(matrices[k] for k in range(1, d + 1)), check_augmentation=False
    )


def parse_complex(text):
    """Parse a complex file straight to a chain complex."""
    obj = parse_any(text)
    return obj.to_chain_complex() if isinstance(obj, SimplicialComplex) else obj


def serialize_complex(obj):
    """Canonical text form: facets blocks for simplicial input, matrix blocks otherwise."""
    if isinstance(obj, SimplicialComplex):
        facets = sorted(tuple(sorted(f)) for f in obj.facets)
        lines = [f"dim {obj.dim}", f"facets {len(facets)}"]
        lines.extend(" ".join(str(v) for v in f) for f in facets)
        return "\n".join(lines) + "\n"
    if isinstance(obj, ChainComplex):
        lines = [f"dim {obj.dim}"]
        for k in range(1, obj.dim + 1):
            b = obj.boundaries[k]
            lines.append(f"matrix {k} {b.nrows} {b.ncols}")
            lines.extend(" ".join(str(x) for x in row) for row in b.data)
        return "\n".join(lines) + "\n"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def reserialize(text):
    return serialize_complex(parse_any(text))


def parse_weights(text):
    """Parse 'dim index value' weight lines into a WeightAssignment."""
    values = {}
    for line in _content_lines(text):
        parts = line.split()
        if len(parts) != 3:
            raise FormatError(f"weight line must be 'dim index value': {line!r}")
        key = (int(parts[0]), int(parts[1]))
        if key in values:
            raise FormatError(f"duplicate weight for cell {key}")
        values[key] = Fraction(parts[2])
    return WeightAssignment(values)


def serialize_weights(w):
    lines = []
    for (dim, idx), value in sorted(w.items()):
        text = str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
        lines.append(f"{dim} {idx} {text}")
    return "\n".join(lines) + "\n"


def serialize_census(X, census):
    """Census export: 'labels ; torsion' lines, lexicographically sorted."""
    return "\n".join(census.export_lines(X)) + "\n"
