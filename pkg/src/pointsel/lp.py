"""Exact linear feasibility over the rationals.

Dictionary-form simplex with Bland's rule (so it cannot cycle).  Strict rows
``a.x > b`` become ``a.x - b - t >= 0`` with a single shared slack ``t`` that
is then maximised subject to ``t <= 1``; the system is strictly feasible iff
the optimum is positive.  Free variables are pivoted into the basis first and
never leave it, which keeps the dictionary at (rows x dimension) size even
for hundreds of constraints.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

_FLIP = {">": "<", ">=": "<=", "<": ">", "<=": ">=", "=": "="}
_ALIASES = {"≥": ">=", "≤": "<=", "==": "="}

Constraint = tuple[Sequence, str, object]


def _normalize(constraints):
    """Rows ``(coeffs, strict)`` meaning ``coeffs[0] + coeffs[1:].x (> or >=) 0``."""
    rows = []
    n = None
    for coeffs, rel, bound in constraints:
        rel = _ALIASES.get(rel, rel)
        if rel not in _FLIP:
            raise ValueError(f"unknown relation {rel!r}")
        a = [Fraction(c) for c in coeffs]
        if n is None:
            n = len(a)
        elif len(a) != n:
            raise ValueError("constraint rows have different lengths")
        b = Fraction(bound)
        if rel in ("<", "<="):
            a = [-c for c in a]
            b = -b
            rel = _FLIP[rel]
        if rel == "=":
            rows.append(([-b] + a, False))
            rows.append(([b] + [-c for c in a], False))
        else:
            rows.append(([-b] + a, rel == ">"))
    return rows, (n or 0)


class _Dictionary:
    # basic[i] = const[i] + sum_k coef[i][k] * cols[k]
    def __init__(self, basic, const, coef, cols):
        self.basic = basic
        self.const = const
        self.coef = coef
        self.cols = cols

    def pivot(self, r, k):
        arow = self.coef[r]
        ark = arow[k]
        inv = 1 / ark
        leaving = self.basic[r]
        newc = -self.const[r] * inv
        newrow = [-a * inv for a in arow]
        newrow[k] = inv
        self.const[r] = newc
        self.coef[r] = newrow
        self.basic[r] = self.cols[k]
        self.cols[k] = leaving
        for i in range(len(self.basic)):
            if i == r:
                continue
            row = self.coef[i]
            f = row[k]
            if f == 0:
                continue
            self.const[i] += f * newc
            for j in range(len(row)):
                if j == k:
                    row[j] = f * inv
                elif newrow[j]:
                    row[j] += f * newrow[j]

    def drop_column(self, k):
        del self.cols[k]
        for row in self.coef:
            del row[k]


def _bland(D: _Dictionary, obj: int, constrained, stop=None) -> bool:
    """Maximise row ``obj``; returns False if unbounded."""
    while True:
        if stop is not None and stop():
            return True
        orow = D.coef[obj]
        enter = None
        for k, var in enumerate(D.cols):
            if orow[k] > 0 and (enter is None or var < D.cols[enter]):
                enter = k
        if enter is None:
            return True
        best = None
        best_ratio = None
        for i in range(len(D.basic)):
            if i == obj or not constrained(D.basic[i]):
                continue
            a = D.coef[i][enter]
            if a < 0:
                ratio = D.const[i] / -a
                if (
                    best is None
                    or ratio < best_ratio
                    or (ratio == best_ratio and D.basic[i] < D.basic[best])
                ):
                    best, best_ratio = i, ratio
        if best is None:
            return False
        D.pivot(best, enter)


def linear_feasible(constraints: Sequence[Constraint]) -> tuple[Fraction, ...] | None:
    """Decide a system of linear constraints exactly.

    Each constraint is ``(coeffs, relation, bound)`` with relation one of
    ``>``, ``>=``, ``=``, ``<=``, ``<``.  Returns a rational witness satisfying
    every constraint (strict ones strictly), or None when infeasible.
    """
    rows, n = _normalize(constraints)
    strict = any(s for _, s in rows)
    T = n  # index of the shared strict slack
    first_slack = n + 1
    ART = 10**9  # artificial variable, larger than every other index
    OBJ = -1

    basic, const, coef = [], [], []
    cols = list(range(n)) + ([T] if strict else [])
    for i, (a, s) in enumerate(rows):
        basic.append(first_slack + i)
        const.append(a[0])
        row = list(a[1:])
        if strict:
            row.append(Fraction(-1) if s else Fraction(0))
        coef.append(row)
    if strict:
        basic.append(first_slack + len(rows))
        const.append(Fraction(1))
        coef.append([Fraction(0)] * n + [Fraction(-1)])
    D = _Dictionary(basic, const, coef, cols)

    def is_free(var):
        return 0 <= var < n

    def constrained(var):
        return not is_free(var) and var != OBJ

    # pivot every free variable into the basis; it never leaves again
    k = 0
    while k < len(D.cols):
        var = D.cols[k]
        if not is_free(var):
            k += 1
            continue
        r = next(
            (i for i in range(len(D.basic)) if not is_free(D.basic[i]) and D.coef[i][k] != 0),
            None,
        )
        if r is None:
            D.drop_column(k)  # variable appears nowhere: fix it at 0
            continue
        D.pivot(r, k)
        k += 1

    # phase 1
    neg = [i for i in range(len(D.basic)) if constrained(D.basic[i]) and D.const[i] < 0]
    if neg:
        for i in range(len(D.basic)):
            D.coef[i].append(Fraction(1) if constrained(D.basic[i]) else Fraction(0))
        D.cols.append(ART)
        D.basic.append(OBJ)
        D.const.append(Fraction(0))
        D.coef.append([Fraction(0)] * (len(D.cols) - 1) + [Fraction(-1)])
        obj = len(D.basic) - 1
        r = min(neg, key=lambda i: (D.const[i], D.basic[i]))
        D.pivot(r, len(D.cols) - 1)
        _bland(D, obj, constrained)
        if D.const[obj] < 0:
            return None
        # remove the objective row, then the artificial variable
        del D.basic[obj], D.const[obj], D.coef[obj]
        if ART in D.basic:
            r = D.basic.index(ART)
            k = None
            for j, var in enumerate(D.cols):
                if D.coef[r][j] != 0 and (k is None or var < D.cols[k]):
                    k = j
            if k is None:
                del D.basic[r], D.const[r], D.coef[r]
            else:
                D.pivot(r, k)
        D.drop_column(D.cols.index(ART))

    if strict:
        def t_value():
            if T in D.basic:
                return D.const[D.basic.index(T)]
            return Fraction(0)

        if t_value() <= 0:
            D.basic.append(OBJ)
            if T in D.basic[:-1]:
                r = D.basic.index(T)
                D.const.append(D.const[r])
                D.coef.append(list(D.coef[r]))
            else:
                D.const.append(Fraction(0))
                D.coef.append([Fraction(1) if v == T else Fraction(0) for v in D.cols])
            obj = len(D.basic) - 1
            _bland(D, obj, constrained, stop=lambda: D.const[obj] > 0)
            del D.basic[obj], D.const[obj], D.coef[obj]
        if t_value() <= 0:
            return None

    x = [Fraction(0)] * n
    for var, c in zip(D.basic, D.const):
        if is_free(var):
            x[var] = c
    # the free rows are expressed in nonbasic variables, all of which are 0
    witness = tuple(x)
    if not satisfies(constraints, witness):
        raise AssertionError("internal error: LP witness fails exact re-check")
    return witness


def satisfies(constraints: Sequence[Constraint], x: Sequence[Fraction]) -> bool:
    for coeffs, rel, bound in constraints:
        rel = _ALIASES.get(rel, rel)
        v = sum((Fraction(a) * xi for a, xi in zip(coeffs, x)), Fraction(0))
        b = Fraction(bound)
        ok = {
            ">": v > b,
            ">=": v >= b,
            "=": v == b,
            "<=": v <= b,
            "<": v < b,
        }[rel]
        if not ok:
            return False
    return True
