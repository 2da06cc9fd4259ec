# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of ``qpverify.termops.pure``.

Same data contracts, same semantics, function for function; coefficients
stay exact ``Fraction`` objects, the speedup comes from typed loops and
direct dict manipulation.  Parity with the pure backend is enforced by
``tests/test_termops.py``.
"""

from fractions import Fraction

_ZERO = Fraction(0)


def padd(a, b):
    out = dict(a)
    for k, c in b.items():
        s = out.get(k)
        if s is None:
            out[k] = c
        else:
            s = s + c
            if s:
                out[k] = s
            else:
                del out[k]
    return out


def pscale(a, c):
    if not c:
        return {}
    return {k: v * c for k, v in a.items()}


def piadd(acc, b, c):
    if not c:
        return
    for k, v in b.items():
        s = acc.get(k)
        v = v * c
        if s is None:
            acc[k] = v
        else:
            s = s + v
            if s:
                acc[k] = s
            else:
                del acc[k]


cdef tuple _add_exps(tuple e1, tuple e2):
    cdef Py_ssize_t n = len(e1)
    cdef Py_ssize_t i
    cdef list out = [0] * n
    for i in range(n):
        out[i] = e1[i] + e2[i]
    return tuple(out)


cdef long _total(tuple e):
    cdef long t = 0
    cdef Py_ssize_t i
    for i in range(len(e)):
        t += e[i]
    return t


def pmul(a, b, maxdeg=-1):
    cdef long md = maxdeg
    cdef long da
    if not a or not b:
        return {}
    out = {}
    bitems = list(b.items())
    for ka, ca in a.items():
        if md >= 0:
            da = _total(ka)
        for kb, cb in bitems:
            if md >= 0 and da + _total(kb) > md:
                continue
            k = _add_exps(ka, kb)
            c = ca * cb
            s = out.get(k)
            if s is None:
                out[k] = c
            else:
                s = s + c
                if s:
                    out[k] = s
                else:
                    del out[k]
    return out


def pderive(a, i):
    cdef Py_ssize_t pos = i
    out = {}
    for k, c in a.items():
        e = k[pos]
        if not e:
            continue
        kk = k[:pos] + (e - 1,) + k[pos + 1:]
        c = c * e
        s = out.get(kk)
        if s is None:
            out[kk] = c
        else:
            s = s + c
            if s:
                out[kk] = s
            else:
                del out[kk]
    return out


def ptruncate(a, maxdeg):
    cdef long md = maxdeg
    return {k: c for k, c in a.items() if _total(k) <= md}


def merge_ders(d1, d2):
    cdef Py_ssize_t n1 = len(d1)
    cdef Py_ssize_t n2 = len(d2)
    cdef Py_ssize_t i = 0, j = 0
    cdef long inv = 0
    if n1 == 0:
        return 1, d2
    if n2 == 0:
        return 1, d1
    out = []
    while i < n1 and j < n2:
        x = d1[i]
        y = d2[j]
        if x == y:
            return 0, None
        if x < y:
            out.append(x)
            i += 1
        else:
            out.append(y)
            inv += n1 - i
            j += 1
    while i < n1:
        out.append(d1[i])
        i += 1
    while j < n2:
        out.append(d2[j])
        j += 1
    return (-1 if inv & 1 else 1), tuple(out)


def siadd(acc, key, c):
    s = acc.get(key)
    if s is None:
        if c:
            acc[key] = c
    else:
        s = s + c
        if s:
            acc[key] = s
        else:
            del acc[key]


def sadd(a, b):
    out = dict(a)
    for k, c in b.items():
        siadd(out, k, c)
    return out


def sscale(a, c):
    if not c:
        return {}
    return {k: v * c for k, v in a.items()}


def smul(a, b, maxdeg=-1):
    cdef long md = maxdeg
    cdef long deg1 = 0
    cdef int sgn
    out = {}
    bitems = list(b.items())
    for key1, c1 in a.items():
        e1 = key1[0]
        d1 = key1[1]
        if md >= 0:
            deg1 = _total(e1)
        for key2, c2 in bitems:
            e2 = key2[0]
            d2 = key2[1]
            if md >= 0 and deg1 + _total(e2) > md:
                continue
            sgn, dm = merge_ders(d1, d2)
            if not sgn:
                continue
            siadd(out, (_add_exps(e1, e2), dm), c1 * c2 if sgn > 0 else -c1 * c2)
    return out


cdef dict _dy_table(a):
    cdef dict table = {}
    cdef Py_ssize_t i
    for key, c in a.items():
        e = key[0]
        d = key[1]
        for i in range(len(e)):
            ei = e[i]
            if not ei:
                continue
            ee = e[:i] + (ei - 1,) + e[i + 1:]
            lst = table.get(i)
            if lst is None:
                lst = []
                table[i] = lst
            lst.append(((ee, d), c * ei))
    return table


cdef dict _xi_table(a):
    cdef dict table = {}
    cdef Py_ssize_t pos
    for key, c in a.items():
        e = key[0]
        d = key[1]
        for pos in range(len(d)):
            i = d[pos]
            dd = d[:pos] + d[pos + 1:]
            lst = table.get(i)
            if lst is None:
                lst = []
                table[i] = lst
            lst.append(((e, dd), -c if pos & 1 else c))
    return table


cdef dict _contract(dict xi_of, dict dy_of):
    cdef dict out = {}
    cdef int sgn
    for i, left in xi_of.items():
        right = dy_of.get(i)
        if not right:
            continue
        for key1, c1 in left:
            e1 = key1[0]
            d1 = key1[1]
            for key2, c2 in right:
                e2 = key2[0]
                d2 = key2[1]
                sgn, dm = merge_ders(d1, d2)
                if not sgn:
                    continue
                siadd(out, (_add_exps(e1, e2), dm), c1 * c2 if sgn > 0 else -c1 * c2)
    return out


def sn_bracket(a, p, b, q):
    cdef long pp = p
    out = {}
    first = _contract(_xi_table(a), _dy_table(b))
    if pp & 1:
        for k, c in first.items():
            siadd(out, k, c)
    else:
        for k, c in first.items():
            siadd(out, k, -c)
    for k, c in _contract(_dy_table(a), _xi_table(b)).items():
        siadd(out, k, -c)
    return out


def kveval(terms, polys):
    import itertools

    cdef Py_ssize_t k = len(polys)
    cdef long inv
    cdef Py_ssize_t r, x, y
    out = {}
    for key, c in terms.items():
        e = key[0]
        d = key[1]
        if len(d) != k:
            raise ValueError("degree mismatch in evaluation")
        det = {}
        for perm in itertools.permutations(range(k)):
            inv = 0
            for x in range(k):
                for y in range(x + 1, k):
                    if perm[x] > perm[y]:
                        inv += 1
            prod = None
            for r in range(k):
                df = pderive(polys[perm[r]], d[r])
                if not df:
                    prod = None
                    break
                prod = df if prod is None else pmul(prod, df)
                if not prod:
                    prod = None
                    break
            if prod is None:
                continue
            piadd(det, prod, Fraction(-1 if inv & 1 else 1))
        if det:
            piadd(out, pmul(det, {e: Fraction(1)}), c)
    return out


def bivector_eval(terms, f, g):
    out = {}
    for key, c in terms.items():
        e = key[0]
        d = key[1]
        i = d[0]
        j = d[1]
        dfi = pderive(f, i)
        dgj = pderive(g, j)
        if dfi and dgj:
            piadd(out, pmul(pmul(dfi, dgj), {e: Fraction(1)}), c)
        dfj = pderive(f, j)
        dgi = pderive(g, i)
        if dfj and dgi:
            piadd(out, pmul(pmul(dfj, dgi), {e: Fraction(1)}), -c)
    return out


def table_bracket(table, p, q, maxdeg=-1):
    cdef long md = maxdeg
    out = {}
    dp = {}
    dq = {}
    for pair, val in table.items():
        u = pair[0]
        v = pair[1]
        du = dp.get(u)
        if du is None:
            du = pderive(p, u)
            dp[u] = du
        if not du:
            continue
        dv = dq.get(v)
        if dv is None:
            dv = pderive(q, v)
            dq[v] = dv
        if not dv:
            continue
        prod = pmul(du, dv, md)
        if not prod:
            continue
        for k, c in pmul(prod, val, md).items():
            s = out.get(k)
            if s is None:
                out[k] = c
            else:
                s = s + c
                if s:
                    out[k] = s
                else:
                    del out[k]
    return out
