# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled integer kernels.

Same contract as :mod:`pointsel._fallback`.  Arithmetic runs on 128-bit
integers with overflow-checked multiply/add; any input that does not fit in
64 bits, or any intermediate that overflows, is handed back to the exact
big-integer implementation, so results never depend on which path ran.
"""

from libc.stdlib cimport malloc, free

from pointsel import _fallback

cdef extern from *:
    """
    typedef __int128 ps_i128;
    static inline int ps_mul(ps_i128 a, ps_i128 b, ps_i128 *r) { return __builtin_mul_overflow(a, b, r); }
    static inline int ps_sub(ps_i128 a, ps_i128 b, ps_i128 *r) { return __builtin_sub_overflow(a, b, r); }
    static inline int ps_add(ps_i128 a, ps_i128 b, ps_i128 *r) { return __builtin_add_overflow(a, b, r); }
    """
    ctypedef long long i128 "ps_i128"
    bint ps_mul(i128 a, i128 b, i128* r) noexcept nogil
    bint ps_sub(i128 a, i128 b, i128* r) noexcept nogil
    bint ps_add(i128 a, i128 b, i128* r) noexcept nogil

cdef enum:
    MAXN = 17
    MAXF = 8

det_value = _fallback.det_value
side_value = _fallback.side_value


cdef int _det_sign_c(i128* m, int n, int* ovf) noexcept nogil:
    cdef int sign = 1
    cdef int k, i, j, piv
    cdef i128 prev = 1
    cdef i128 pk, t1, t2, t3, tmp
    if n == 0:
        return 1
    for k in range(n - 1):
        if m[k * n + k] == 0:
            piv = -1
            for i in range(k + 1, n):
                if m[i * n + k] != 0:
                    piv = i
                    break
            if piv < 0:
                return 0
            for j in range(n):
                tmp = m[k * n + j]
                m[k * n + j] = m[piv * n + j]
                m[piv * n + j] = tmp
            sign = -sign
        pk = m[k * n + k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                if ps_mul(m[i * n + j], pk, &t1) or ps_mul(m[i * n + k], m[k * n + j], &t2) or ps_sub(t1, t2, &t3):
                    ovf[0] = 1
                    return 0
                m[i * n + j] = t3 / prev
        prev = pk
    t1 = m[n * n - 1]
    if t1 > 0:
        return sign
    if t1 < 0:
        return -sign
    return 0


cdef long long _gcd(long long a, long long b) noexcept nogil:
    cdef long long t
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        t = a % b
        a = b
        b = t
    return a


cdef int _orient_c(long long* P, int n, int* ovf) noexcept nogil:
    # P holds n homogeneous points of length n, row-major
    cdef i128 D[MAXN * MAXN]
    cdef int i, k, m = n - 1
    cdef long long w0 = P[0], wi, g
    cdef i128 a, b, t1, t2, t3
    for i in range(1, n):
        wi = P[i * n]
        g = _gcd(w0, wi)
        a = w0 / g
        b = wi / g
        for k in range(1, n):
            if ps_mul(a, <i128> P[i * n + k], &t1) or ps_mul(b, <i128> P[k], &t2) or ps_sub(t1, t2, &t3):
                ovf[0] = 1
                return 0
            D[(i - 1) * m + (k - 1)] = t3
    return _det_sign_c(D, m, ovf)


cdef bint _load_row(object row, long long* out, int n):
    cdef int k
    if len(row) != n:
        return False
    try:
        for k in range(n):
            out[k] = row[k]
    except OverflowError:
        return False
    return True


def det_sign(rows):
    cdef int n = len(rows)
    cdef i128 M[MAXN * MAXN]
    cdef long long tmp[MAXN]
    cdef int i, k, ovf = 0, s
    if n > MAXN:
        return _fallback.det_sign(rows)
    for i in range(n):
        if not _load_row(rows[i], tmp, n):
            return _fallback.det_sign(rows)
        for k in range(n):
            M[i * n + k] = tmp[k]
    s = _det_sign_c(M, n, &ovf)
    if ovf:
        return _fallback.det_sign(rows)
    return s


def orient_sign(pts):
    cdef int n = len(pts)
    cdef long long P[MAXN * MAXN]
    cdef int i, ovf = 0, s
    if n < 1 or n > MAXN:
        return _fallback.orient_sign(pts)
    for i in range(n):
        if not _load_row(pts[i], &P[i * n], n):
            return _fallback.orient_sign(pts)
    s = _orient_c(P, n, &ovf)
    if ovf:
        return _fallback.orient_sign(pts)
    return s


def family_scan(members):
    cdef int k = len(members)
    cdef int n, i, j, t, v, c, jj, nrows, side, s, ok, ovf = 0, common = 0
    cdef long long V[MAXF * MAXF * MAXF]
    cdef int cnt[MAXF]
    cdef int idx[MAXF]
    cdef int others[MAXF]
    cdef long long P[MAXF * MAXF]
    if k < 2 or k > MAXF:
        return _fallback.family_scan(members)
    n = len(members[0][0])
    if n != k:
        return _fallback.family_scan(members)
    for j in range(k):
        cnt[j] = len(members[j])
        if cnt[j] < 1 or cnt[j] > MAXF:
            return _fallback.family_scan(members)
        for v in range(cnt[j]):
            if not _load_row(members[j][v], &V[(j * MAXF + v) * MAXF], n):
                return _fallback.family_scan(members)

    # separation: odometer over all colorful vertex tuples
    for j in range(k):
        idx[j] = 0
    while True:
        for j in range(k):
            for t in range(n):
                P[j * n + t] = V[(j * MAXF + idx[j]) * MAXF + t]
        s = _orient_c(P, n, &ovf)
        if ovf:
            return _fallback.family_scan(members)
        if s == 0:
            return 0, None
        if common == 0:
            common = s
        elif s != common:
            return 0, None
        j = k - 1
        while j >= 0:
            idx[j] += 1
            if idx[j] < cnt[j]:
                break
            idx[j] = 0
            j -= 1
        if j < 0:
            break

    candidates = []
    for i in range(k):
        nrows = 0
        for j in range(k):
            if j != i:
                others[nrows] = j
                nrows += 1
        found = []
        for j in range(nrows):
            idx[j] = 0
        while True:
            for j in range(nrows):
                for t in range(n):
                    P[j * n + t] = V[(others[j] * MAXF + idx[j]) * MAXF + t]
            ok = 1
            side = 0
            for v in range(cnt[i]):
                for t in range(n):
                    P[nrows * n + t] = V[(i * MAXF + v) * MAXF + t]
                s = _orient_c(P, n, &ovf)
                if ovf:
                    return _fallback.family_scan(members)
                if s == 0 or (side != 0 and s != side):
                    ok = 0
                    break
                side = s
            if ok:
                for jj in range(nrows):
                    for c in range(cnt[others[jj]]):
                        if c == idx[jj]:
                            continue
                        for t in range(n):
                            P[nrows * n + t] = V[(others[jj] * MAXF + c) * MAXF + t]
                        s = _orient_c(P, n, &ovf)
                        if ovf:
                            return _fallback.family_scan(members)
                        if s != -side:
                            ok = 0
                            break
                    if not ok:
                        break
            if ok:
                found.append(tuple([idx[j] for j in range(nrows)]))
            j = nrows - 1
            while j >= 0:
                idx[j] += 1
                if idx[j] < cnt[others[j]]:
                    break
                idx[j] = 0
                j -= 1
            if j < 0:
                break
        candidates.append(found)
    return common, candidates


def side_counts(h, pts):
    cdef int n = len(h), s, ovf
    cdef long long H[MAXN]
    cdef long long P[MAXN]
    cdef int pos = 0, neg = 0, zero = 0
    if n > MAXN:
        return _fallback.side_counts(h, pts)
    # the offset enters with a minus sign: side = a.x - b * w
    if not _load_row((-h[0],) + tuple(h[1:]), H, n):
        return _fallback.side_counts(h, pts)
    for p in pts:
        ovf = 0
        if _load_row(p, P, n):
            s = _dot_sign(H, P, n, &ovf)
        if ovf or len(p) != n or not _load_row(p, P, n):
            v = _fallback.side_value(h, p)
            s = (v > 0) - (v < 0)
        if s > 0:
            pos += 1
        elif s < 0:
            neg += 1
        else:
            zero += 1
    return pos, neg, zero


cdef int _dot_sign(const long long* a, const long long* b, int n, int* ovf) noexcept nogil:
    cdef i128 s = 0, t
    cdef int k
    for k in range(n):
        t = (<i128> a[k]) * (<i128> b[k])
        if ps_add(s, t, &s):
            ovf[0] = 1
            return 0
    if s > 0:
        return 1
    if s < 0:
        return -1
    return 0


cdef class PackedSimplices:
    """Facet functionals of many simplices, see ``_fallback.PackedSimplices``."""

    cdef long long* data
    cdef int count_, n
    cdef bint fits
    cdef object slow
    cdef public str backend

    def __cinit__(self, funcs):
        cdef int t, j
        self.data = NULL
        self.slow = _fallback.PackedSimplices(funcs)
        self.backend = "compiled"
        self.count_ = len(funcs)
        self.fits = True
        self.n = len(funcs[0]) if self.count_ else 0
        if self.n > MAXN:
            self.fits = False
            return
        self.data = <long long*> malloc(max(1, self.count_ * self.n * self.n) * sizeof(long long))
        if self.data == NULL:
            raise MemoryError()
        for t in range(self.count_):
            f = funcs[t]
            if len(f) != self.n:
                self.fits = False
                return
            for j in range(self.n):
                if not _load_row(f[j], &self.data[(t * self.n + j) * self.n], self.n):
                    self.fits = False
                    return

    def __dealloc__(self):
        if self.data != NULL:
            free(self.data)

    def __len__(self):
        return self.count_

    cdef int _run(self, qvecs, bint closed, list out) except -2:
        cdef long long Q[4 * MAXN]
        cdef int nq = len(qvecs), t, j, a, s, ovf, total = 0
        cdef bint inside
        if nq > 4:
            return -1
        for a in range(nq):
            if not _load_row(qvecs[a], &Q[a * self.n], self.n):
                return -1
        for t in range(self.count_):
            inside = True
            for j in range(self.n):
                s = 0
                for a in range(nq):
                    ovf = 0
                    s = _dot_sign(&self.data[(t * self.n + j) * self.n], &Q[a * self.n], self.n, &ovf)
                    if ovf:
                        s = _fallback._lex_sign(self.slow.funcs[t][j], qvecs[a:])
                        break
                    if s != 0:
                        break
                if s < 0 or (s == 0 and not closed):
                    inside = False
                    break
            if inside:
                total += 1
                if out is not None:
                    out.append(t)
        return total

    def count(self, qvecs, closed=False):
        cdef int r
        if self.fits and self.count_:
            r = self._run(qvecs, closed, None)
            if r >= 0:
                return r
        return self.slow.count(qvecs, closed)

    def mask(self, qvecs, closed=False):
        cdef list out = []
        if self.fits and self.count_:
            if self._run(qvecs, closed, out) >= 0:
                return out
        return self.slow.mask(qvecs, closed)


cdef class PackedCells:
    """Cell vertex lists, see ``_fallback.PackedCells``."""

    cdef long long* data
    cdef int* sizes
    cdef int count_, n, maxv
    cdef bint fits
    cdef object slow
    cdef public str backend

    def __cinit__(self, cells):
        cdef int t, v
        self.data = NULL
        self.sizes = NULL
        self.slow = _fallback.PackedCells(cells)
        self.backend = "compiled"
        self.count_ = len(cells)
        self.fits = True
        self.n = len(cells[0][0]) if self.count_ else 0
        self.maxv = max([len(c) for c in cells]) if self.count_ else 0
        if self.n > MAXN:
            self.fits = False
            return
        self.data = <long long*> malloc(max(1, self.count_ * self.maxv * self.n) * sizeof(long long))
        self.sizes = <int*> malloc(max(1, self.count_) * sizeof(int))
        if self.data == NULL or self.sizes == NULL:
            raise MemoryError()
        for t in range(self.count_):
            c = cells[t]
            self.sizes[t] = len(c)
            for v in range(len(c)):
                if not _load_row(c[v], &self.data[(t * self.maxv + v) * self.n], self.n):
                    self.fits = False
                    return

    def __dealloc__(self):
        if self.data != NULL:
            free(self.data)
        if self.sizes != NULL:
            free(self.sizes)

    def __len__(self):
        return self.count_

    cdef int _run(self, h, list out) except -2:
        cdef long long H[MAXN]
        cdef int t, v, k, total = 0
        cdef bint pos, neg, bad
        cdef i128 s, term
        if not _load_row(h, H, self.n):
            return -1
        # store -b in slot 0 so the value is a plain dot product
        if H[0] == (-9223372036854775807 - 1):
            return -1
        H[0] = -H[0]
        for t in range(self.count_):
            pos = False
            neg = False
            for v in range(self.sizes[t]):
                s = 0
                bad = False
                for k in range(self.n):
                    term = (<i128> H[k]) * (<i128> self.data[(t * self.maxv + v) * self.n + k])
                    if ps_add(s, term, &s):
                        bad = True
                        break
                if bad:
                    return -1
                if s > 0:
                    pos = True
                elif s < 0:
                    neg = True
            if pos and neg:
                total += 1
                if out is not None:
                    out.append(t)
        return total

    def crossed_count(self, h):
        cdef int r
        if self.fits and self.count_:
            r = self._run(h, None)
            if r >= 0:
                return r
        return self.slow.crossed_count(h)

    def crossed_mask(self, h):
        cdef list out = []
        if self.fits and self.count_:
            if self._run(h, out) >= 0:
                return out
        return self.slow.crossed_mask(h)
