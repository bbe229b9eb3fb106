"""Tiny exact linear algebra over the package's scalar fields.

Only what the rest of the package needs: the rank of a family of sparse
vectors (for linear-independence certificates) and a basis of the solution
space of a homogeneous system (for relation-invariant weightings).  Dense
Gaussian elimination is plenty at this scale, and floating point is not an
option, so this stays hand-rolled.
"""

from __future__ import annotations

from .scalars import Field


def rank_of_sparse(vectors, field: Field) -> int:
    """Rank of a list of dict-valued vectors (arbitrary hashable keys)."""
    keys = sorted({k for v in vectors for k in v})
    index = {k: i for i, k in enumerate(keys)}
    rows = []
    for v in vectors:
        row = [field.zero] * len(keys)
        for k, a in v.items():
            row[index[k]] = a
        rows.append(row)
    return _row_reduce(rows, field)


def _row_reduce(rows, field: Field) -> int:
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = field.one / rows[rank][col]
        rows[rank] = [x * inv for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                factor = rows[r][col]
                rows[r] = [x - factor * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
        if rank == len(rows):
            break
    return rank


def nullspace_basis(rows, field: Field):
    """Basis of {x : M x = 0} for a dense row-list M over the field."""
    if not rows:
        return []
    m = [list(r) for r in rows]
    ncols = len(m[0])
    pivots = []
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(m)) if m[r][col]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = field.one / m[rank][col]
        m[rank] = [x * inv for x in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][col]:
                factor = m[r][col]
                m[r] = [x - factor * y for x, y in zip(m[r], m[rank])]
        pivots.append(col)
        rank += 1
        if rank == len(m):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [field.zero] * ncols
        vec[f] = field.one
        for r, p in enumerate(pivots):
            vec[p] = -m[r][f]
        basis.append(vec)
    return basis
