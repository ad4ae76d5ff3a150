# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Smith reduction on 64-bit integers.

Same pivot rule and operation order as ``_snf_py.smith_reduce``.  Any entry
leaving the range |x| < 2**62 raises OverflowError so the caller can rerun
the exact Python kernel.
"""

from libc.stdlib cimport malloc, free

cdef extern from *:
    """
    static int _mul_ovf(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static int _sub_ovf(long long a, long long b, long long *r) {
        return __builtin_sub_overflow(a, b, r);
    }
    """
    int _mul_ovf(long long a, long long b, long long *r) nogil
    int _sub_ovf(long long a, long long b, long long *r) nogil

cdef long long LIM = 4611686018427387904  # 2**62


cdef inline long long _abs(long long x) nogil:
    return -x if x < 0 else x


cdef inline long long _floordiv(long long a, long long p) nogil:
    cdef long long q = a / p
    if (a % p != 0) and ((a < 0) != (p < 0)):
        q -= 1
    return q


cdef inline long long _quot(long long a, long long p) nogil:
    cdef long long q = _floordiv(a, p)
    cdef long long r = a - q * p
    if 2 * _abs(r) > _abs(p):
        q += 1
    return q


cdef inline int _axpy(long long *dst, long long *src, long long q, Py_ssize_t n) nogil:
    # dst -= q * src ; returns 1 on overflow
    cdef Py_ssize_t c
    cdef long long prod, res
    for c in range(n):
        if src[c] != 0:
            if _mul_ovf(q, src[c], &prod):
                return 1
            if _sub_ovf(dst[c], prod, &res):
                return 1
            if res >= LIM or res <= -LIM:
                return 1
            dst[c] = res
    return 0


cdef class _Mat:
    # row-major dense matrix of long long
    cdef long long *d
    cdef Py_ssize_t r, c

    def __cinit__(self, Py_ssize_t r, Py_ssize_t c):
        self.r = r
        self.c = c
        self.d = <long long *> malloc(max(r * c, 1) * sizeof(long long))
        if self.d == NULL:
            raise MemoryError()
        cdef Py_ssize_t i
        for i in range(r * c):
            self.d[i] = 0

    def __dealloc__(self):
        if self.d != NULL:
            free(self.d)

    cdef inline long long get(self, Py_ssize_t i, Py_ssize_t j):
        return self.d[i * self.c + j]

    cdef list tolist(self):
        cdef Py_ssize_t i, j
        return [[self.d[i * self.c + j] for j in range(self.c)] for i in range(self.r)]


cdef _Mat _ident(Py_ssize_t n):
    cdef _Mat m = _Mat(n, n)
    cdef Py_ssize_t i
    for i in range(n):
        m.d[i * n + i] = 1
    return m


cdef class _State:
    cdef _Mat A, U, Ui, V, Vi
    cdef Py_ssize_t m, n
    cdef bint track
    cdef long long *tmp

    def __cinit__(self, Py_ssize_t m, Py_ssize_t n, bint track):
        self.m = m
        self.n = n
        self.track = track
        self.A = _Mat(m, n)
        if track:
            self.U = _ident(m)
            self.Ui = _ident(m)
            self.V = _ident(n)
            self.Vi = _ident(n)
        self.tmp = <long long *> malloc(max(m, n, 1) * sizeof(long long))

    def __dealloc__(self):
        if self.tmp != NULL:
            free(self.tmp)

    cdef void swap_rows(self, Py_ssize_t i, Py_ssize_t k):
        cdef Py_ssize_t c
        cdef long long x
        for c in range(self.n):
            x = self.A.d[i * self.n + c]
            self.A.d[i * self.n + c] = self.A.d[k * self.n + c]
            self.A.d[k * self.n + c] = x
        if self.track:
            for c in range(self.m):
                x = self.U.d[i * self.m + c]
                self.U.d[i * self.m + c] = self.U.d[k * self.m + c]
                self.U.d[k * self.m + c] = x
            for c in range(self.m):
                x = self.Ui.d[c * self.m + i]
                self.Ui.d[c * self.m + i] = self.Ui.d[c * self.m + k]
                self.Ui.d[c * self.m + k] = x

    cdef void swap_cols(self, Py_ssize_t j, Py_ssize_t k):
        cdef Py_ssize_t c
        cdef long long x
        for c in range(self.m):
            x = self.A.d[c * self.n + j]
            self.A.d[c * self.n + j] = self.A.d[c * self.n + k]
            self.A.d[c * self.n + k] = x
        if self.track:
            for c in range(self.n):
                x = self.V.d[c * self.n + j]
                self.V.d[c * self.n + j] = self.V.d[c * self.n + k]
                self.V.d[c * self.n + k] = x
            for c in range(self.n):
                x = self.Vi.d[j * self.n + c]
                self.Vi.d[j * self.n + c] = self.Vi.d[k * self.n + c]
                self.Vi.d[k * self.n + c] = x

    cdef int row_axpy(self, Py_ssize_t i, Py_ssize_t t, long long q):
        cdef Py_ssize_t c
        if _axpy(&self.A.d[i * self.n], &self.A.d[t * self.n], q, self.n):
            return 1
        if self.track:
            if _axpy(&self.U.d[i * self.m], &self.U.d[t * self.m], q, self.m):
                return 1
            # column t of Ui += q * column i
            for c in range(self.m):
                self.tmp[c] = self.Ui.d[c * self.m + i]
            for c in range(self.m):
                if self.tmp[c] != 0:
                    if _axpy(&self.Ui.d[c * self.m + t], &self.tmp[c], -q, 1):
                        return 1
        return 0

    cdef int col_axpy(self, Py_ssize_t j, Py_ssize_t t, long long q):
        cdef Py_ssize_t c
        for c in range(self.m):
            if self.A.d[c * self.n + t] != 0:
                if _axpy(&self.A.d[c * self.n + j], &self.A.d[c * self.n + t], q, 1):
                    return 1
        if self.track:
            for c in range(self.n):
                if self.V.d[c * self.n + t] != 0:
                    if _axpy(&self.V.d[c * self.n + j], &self.V.d[c * self.n + t], q, 1):
                        return 1
            if _axpy(&self.Vi.d[t * self.n], &self.Vi.d[j * self.n], -q, self.n):
                return 1
        return 0

    cdef void negate_row(self, Py_ssize_t t):
        cdef Py_ssize_t c
        for c in range(self.n):
            self.A.d[t * self.n + c] = -self.A.d[t * self.n + c]
        if self.track:
            for c in range(self.m):
                self.U.d[t * self.m + c] = -self.U.d[t * self.m + c]
            for c in range(self.m):
                self.Ui.d[c * self.m + t] = -self.Ui.d[c * self.m + t]


def smith_reduce(a, Py_ssize_t nrows, Py_ssize_t ncols, bint track=True):
    cdef _State s = _State(nrows, ncols, track)
    cdef Py_ssize_t m = nrows, n = ncols
    cdef Py_ssize_t i, j, t, bi, bj, bad
    cdef long long x, p, best
    cdef bint dirty
    for i in range(m):
        row = a[i]
        for j in range(n):
            x = row[j]
            if x >= LIM or x <= -LIM:
                raise OverflowError("entry too large for the compiled kernel")
            s.A.d[i * n + j] = x
    cdef _Mat A = s.A
    diag = []
    t = 0
    while t < m and t < n:
        best = 0
        bi = -1
        bj = -1
        for i in range(t, m):
            for j in range(t, n):
                x = A.d[i * n + j]
                if x != 0 and (best == 0 or _abs(x) < best):
                    best = _abs(x)
                    bi = i
                    bj = j
                    if best == 1:
                        break
            if best == 1:
                break
        if best == 0:
            break
        if bi != t:
            s.swap_rows(t, bi)
        if bj != t:
            s.swap_cols(t, bj)
        while True:
            p = A.d[t * n + t]
            dirty = False
            for i in range(t + 1, m):
                if A.d[i * n + t] != 0:
                    if s.row_axpy(i, t, _quot(A.d[i * n + t], p)):
                        raise OverflowError("intermediate overflow")
                    if A.d[i * n + t] != 0:
                        dirty = True
            for j in range(t + 1, n):
                if A.d[t * n + j] != 0:
                    if s.col_axpy(j, t, _quot(A.d[t * n + j], p)):
                        raise OverflowError("intermediate overflow")
                    if A.d[t * n + j] != 0:
                        dirty = True
            if dirty:
                best = _abs(p)
                bi = t
                bj = t
                for i in range(t + 1, m):
                    x = A.d[i * n + t]
                    if x != 0 and _abs(x) < best:
                        best = _abs(x)
                        bi = i
                        bj = t
                for j in range(t + 1, n):
                    x = A.d[t * n + j]
                    if x != 0 and _abs(x) < best:
                        best = _abs(x)
                        bi = t
                        bj = j
                if bi != t:
                    s.swap_rows(t, bi)
                if bj != t:
                    s.swap_cols(t, bj)
                continue
            bad = -1
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    x = A.d[i * n + j]
                    if x - _floordiv(x, p) * p != 0:
                        bad = i
                        break
                if bad >= 0:
                    break
            if bad < 0:
                break
            if s.row_axpy(t, bad, -1):
                raise OverflowError("intermediate overflow")
        if A.d[t * n + t] < 0:
            s.negate_row(t)
        diag.append(A.d[t * n + t])
        t += 1
    if track:
        return diag, s.U.tolist(), s.Ui.tolist(), s.V.tolist(), s.Vi.tolist()
    return diag, None, None, None, None
