"""Pure-Python integer kernels.

All inputs are homogeneous integer points ``(w, X_1, ..., X_d)`` with
``w > 0`` standing for the rational point ``X / w``.  The compiled module
``_kernels`` exposes the same names with the same semantics and defers to
these functions whenever a value leaves the 128-bit fast path.
"""

from __future__ import annotations

from itertools import product
from math import gcd


def det_value(rows):
    """Exact determinant of a square integer matrix (fraction-free Bareiss)."""
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pk = m[k][k]
        rk = m[k]
        for i in range(k + 1, n):
            ri = m[i]
            rik = ri[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * pk - rik * rk[j]) // prev
        prev = pk
    return sign * m[n - 1][n - 1]


def det_sign(rows):
    v = det_value(rows)
    return (v > 0) - (v < 0)


def _reduced_rows(pts):
    # Row-reduce against the first point; each row is scaled by a positive
    # factor, so the sign of the d x d determinant equals the orientation.
    p0 = pts[0]
    w0 = p0[0]
    dim = len(p0)
    rows = []
    for p in pts[1:]:
        wi = p[0]
        g = gcd(w0, wi)
        a = w0 // g
        b = wi // g
        rows.append([a * p[k] - b * p0[k] for k in range(1, dim)])
    return rows


def orient_sign(pts):
    """Sign of the orientation determinant of ``d+1`` homogeneous points."""
    return det_sign(_reduced_rows(pts))


def family_scan(members):
    """Separation test and inner-tangent candidates for a family.

    Returns ``(sign, candidates)``.  ``sign`` is the common orientation of
    all colorful vertex tuples, or 0 when two tuples disagree or one is
    degenerate.  For a separated family ``candidates[i]`` lists every vertex
    assignment (one index per member ``j != i``, in member order) whose
    hyperplane leaves member ``i`` strictly on one side and every other
    vertex of the remaining members strictly on the other side.
    """
    common = 0
    for tup in product(*members):
        s = orient_sign(tup)
        if s == 0:
            return 0, None
        if common == 0:
            common = s
        elif s != common:
            return 0, None
    k = len(members)
    candidates = []
    for i in range(k):
        others = [j for j in range(k) if j != i]
        found = []
        for choice in product(*(range(len(members[j])) for j in others)):
            support = [members[j][c] for j, c in zip(others, choice)]
            side = 0
            ok = True
            for v in members[i]:
                s = orient_sign(support + [v])
                if s == 0 or (side and s != side):
                    ok = False
                    break
                side = s
            if not ok:
                continue
            for j, c in zip(others, choice):
                for idx, u in enumerate(members[j]):
                    if idx == c:
                        continue
                    if orient_sign(support + [u]) != -side:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                found.append(tuple(choice))
        candidates.append(found)
    return common, candidates


def side_value(h, p):
    # h = (b, a_1, ..., a_d) for the hyperplane a.x = b
    s = -h[0] * p[0]
    for k in range(1, len(h)):
        s += h[k] * p[k]
    return s


def side_counts(h, pts):
    pos = neg = zero = 0
    for p in pts:
        v = side_value(h, p)
        if v > 0:
            pos += 1
        elif v < 0:
            neg += 1
        else:
            zero += 1
    return pos, neg, zero


def _lex_sign(g, qvecs):
    for q in qvecs:
        s = 0
        for a, b in zip(g, q):
            s += a * b
        if s:
            return 1 if s > 0 else -1
    return 0


class PackedSimplices:
    """Simplices stored as facet functionals for repeated containment queries.

    ``funcs[t]`` holds ``d+1`` integer vectors ``g`` normalized so that a
    homogeneous point ``q`` is in the open simplex ``t`` iff ``g.q > 0`` for
    all of them.  Queries take a list of vectors ``[q, u_1, u_2, ...]``
    describing the symbolic point ``q + e u_1 + e^2 u_2 + ...`` for an
    infinitesimal ``e > 0``.
    """

    backend = "python"

    def __init__(self, funcs):
        self.funcs = [tuple(tuple(g) for g in f) for f in funcs]

    def __len__(self):
        return len(self.funcs)

    def _inside(self, f, qvecs, closed):
        for g in f:
            s = _lex_sign(g, qvecs)
            if s < 0 or (s == 0 and not closed):
                return False
        return True

    def count(self, qvecs, closed=False):
        return sum(1 for f in self.funcs if self._inside(f, qvecs, closed))

    def mask(self, qvecs, closed=False):
        return [t for t, f in enumerate(self.funcs) if self._inside(f, qvecs, closed)]


class PackedCells:
    """Vertex lists of cells for repeated hyperplane crossing queries."""

    backend = "python"

    def __init__(self, cells):
        self.cells = [tuple(tuple(p) for p in c) for c in cells]

    def __len__(self):
        return len(self.cells)

    def _crossed(self, h, cell):
        pos = neg = False
        for p in cell:
            v = side_value(h, p)
            if v > 0:
                pos = True
            elif v < 0:
                neg = True
        return pos and neg

    def crossed_count(self, h):
        return sum(1 for c in self.cells if self._crossed(h, c))

    def crossed_mask(self, h):
        return [t for t, c in enumerate(self.cells) if self._crossed(h, c)]
