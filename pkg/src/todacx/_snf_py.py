"""Pure-Python Smith reduction kernel.

Works on plain lists of Python ints, so there is no overflow.  The compiled
kernel in ``_snf_core`` runs the same pivot sequence on 64-bit integers and
gives bit-identical results whenever nothing overflows.
"""


def _identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _quot(a, p):
    # nearest-integer quotient, ties towards floor; keeps remainders small
    q, r = divmod(a, p)
    if 2 * abs(r) > abs(p):
        q += 1
    return q


def smith_reduce(a, nrows, ncols, track=True):
    """Diagonalize ``a`` in place of a copy.

    Returns ``(diag, u, uinv, v, vinv)`` with ``u * a * v`` diagonal.  When
    ``track`` is false the four transform slots are ``None``.
    """
    A = [list(r) for r in a]
    m, n = nrows, ncols
    if track:
        U = _identity(m)
        Ui = _identity(m)
        V = _identity(n)
        Vi = _identity(n)
    else:
        U = Ui = V = Vi = None

    def swap_rows(i, k):
        A[i], A[k] = A[k], A[i]
        if track:
            U[i], U[k] = U[k], U[i]
            for row in Ui:
                row[i], row[k] = row[k], row[i]

    def swap_cols(j, k):
        for row in A:
            row[j], row[k] = row[k], row[j]
        if track:
            for row in V:
                row[j], row[k] = row[k], row[j]
            Vi[j], Vi[k] = Vi[k], Vi[j]

    def row_axpy(i, t, q):
        # row_i -= q * row_t
        ri, rt = A[i], A[t]
        for c in range(n):
            if rt[c]:
                ri[c] -= q * rt[c]
        if track:
            ui, ut = U[i], U[t]
            for c in range(m):
                if ut[c]:
                    ui[c] -= q * ut[c]
            for row in Ui:
                if row[i]:
                    row[t] += q * row[i]

    def col_axpy(j, t, q):
        # col_j -= q * col_t
        for row in A:
            if row[t]:
                row[j] -= q * row[t]
        if track:
            for row in V:
                if row[t]:
                    row[j] -= q * row[t]
            vt, vj = Vi[t], Vi[j]
            for c in range(n):
                if vj[c]:
                    vt[c] += q * vj[c]

    def negate_row(t):
        A[t] = [-x for x in A[t]]
        if track:
            U[t] = [-x for x in U[t]]
            for row in Ui:
                row[t] = -row[t]

    diag = []
    t = 0
    while t < m and t < n:
        best = 0
        bi = bj = -1
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                x = row[j]
                if x and (best == 0 or abs(x) < best):
                    best = abs(x)
                    bi, bj = i, j
                    if best == 1:
                        break
            if best == 1:
                break
        if best == 0:
            break
        if bi != t:
            swap_rows(t, bi)
        if bj != t:
            swap_cols(t, bj)
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    row_axpy(i, t, _quot(A[i][t], p))
                    if A[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if A[t][j]:
                    col_axpy(j, t, _quot(A[t][j], p))
                    if A[t][j]:
                        dirty = True
            if dirty:
                # move the smallest leftover of row/column t onto the pivot
                best = abs(p)
                bi = bj = t
                for i in range(t + 1, m):
                    x = A[i][t]
                    if x and abs(x) < best:
                        best, bi, bj = abs(x), i, t
                for j in range(t + 1, n):
                    x = A[t][j]
                    if x and abs(x) < best:
                        best, bi, bj = abs(x), t, j
                if bi != t:
                    swap_rows(t, bi)
                if bj != t:
                    swap_cols(t, bj)
                continue
            bad = -1
            for i in range(t + 1, m):
                row = A[i]
                for j in range(t + 1, n):
                    if row[j] % p:
                        bad = i
                        break
                if bad >= 0:
                    break
            if bad < 0:
                break
            # row_t += row_bad, then eliminate again
            row_axpy(t, bad, -1)
        if A[t][t] < 0:
            negate_row(t)
        diag.append(A[t][t])
        t += 1
    return diag, U, Ui, V, Vi
