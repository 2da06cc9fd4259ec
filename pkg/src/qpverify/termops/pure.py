"""Pure-Python kernels for sparse exact term algebra.

Two carrier encodings, shared by every bracket computation in the package:

* polynomial: dict mapping exponent tuples (one slot per coordinate) to
  ``Fraction`` coefficients, zero coefficients never stored;
* polyvector: dict mapping ``(exponents, derivations)`` to ``Fraction``,
  where ``derivations`` is a strictly ascending tuple of coordinate
  indices.  A key ``(e, (i, j))`` stands for the term
  ``y^e * d/dy_i ^ d/dy_j``.

The polyvector encoding is the usual odd-variable picture: derivations are
anticommuting symbols listed in ascending order, so every product carries
the sign of the interleaving permutation.

The compiled backend (``_speedups.pyx``) mirrors this module function for
function; ``qpverify.termops`` picks one at import time.
"""

from fractions import Fraction

_ZERO = Fraction(0)


# ---------------------------------------------------------------------------
# polynomial kernels


def padd(a, b):
    """Sum of two polynomials."""
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
    """Polynomial times a scalar."""
    if not c:
        return {}
    return {k: v * c for k, v in a.items()}


def piadd(acc, b, c):
    """In-place ``acc += c*b`` on a polynomial dict."""
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


def pmul(a, b, maxdeg=-1):
    """Product of two polynomials, optionally truncated above ``maxdeg``."""
    if not a or not b:
        return {}
    out = {}
    bitems = list(b.items())
    for ka, ca in a.items():
        if maxdeg >= 0:
            da = sum(ka)
        for kb, cb in bitems:
            if maxdeg >= 0 and da + sum(kb) > maxdeg:
                continue
            k = tuple(x + y for x, y in zip(ka, kb))
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
    """Partial derivative of a polynomial along coordinate ``i``."""
    out = {}
    for k, c in a.items():
        e = k[i]
        if not e:
            continue
        kk = k[:i] + (e - 1,) + k[i + 1 :]
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
    """Drop monomials of total degree above ``maxdeg``."""
    return {k: c for k, c in a.items() if sum(k) <= maxdeg}


# ---------------------------------------------------------------------------
# polyvector kernels


def merge_ders(d1, d2):
    """Merge two ascending derivation tuples.

    Returns ``(sign, merged)`` where ``sign`` is the parity of the
    interleaving permutation, or ``(0, None)`` when an index repeats.
    """
    if not d1:
        return 1, d2
    if not d2:
        return 1, d1
    n1, n2 = len(d1), len(d2)
    i = j = 0
    inv = 0
    out = []
    while i < n1 and j < n2:
        x, y = d1[i], d2[j]
        if x == y:
            return 0, None
        if x < y:
            out.append(x)
            i += 1
        else:
            out.append(y)
            inv += n1 - i
            j += 1
    out.extend(d1[i:])
    out.extend(d2[j:])
    return (-1 if inv & 1 else 1), tuple(out)


def siadd(acc, key, c):
    """In-place ``acc[key] += c`` on a term dict."""
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
    """Wedge (super) product of two polyvector term dicts."""
    out = {}
    bitems = list(b.items())
    for (e1, d1), c1 in a.items():
        if maxdeg >= 0:
            deg1 = sum(e1)
        for (e2, d2), c2 in bitems:
            if maxdeg >= 0 and deg1 + sum(e2) > maxdeg:
                continue
            sgn, dm = merge_ders(d1, d2)
            if not sgn:
                continue
            e = tuple(x + y for x, y in zip(e1, e2))
            siadd(out, (e, dm), c1 * c2 if sgn > 0 else -c1 * c2)
    return out


def _dy_table(a):
    """Coordinate derivatives of ``a``, grouped by coordinate index."""
    table = {}
    for (e, d), c in a.items():
        for i, ei in enumerate(e):
            if not ei:
                continue
            ee = e[:i] + (ei - 1,) + e[i + 1 :]
            table.setdefault(i, []).append(((ee, d), c * ei))
    return table


def _xi_table(a):
    """Left derivation-slot derivatives of ``a``, grouped by slot index."""
    table = {}
    for (e, d), c in a.items():
        for pos, i in enumerate(d):
            dd = d[:pos] + d[pos + 1 :]
            table.setdefault(i, []).append(((e, dd), -c if pos & 1 else c))
    return table


def _contract(xi_of, dy_of):
    """Sum over coordinates of the super product ``xi_of[i] * dy_of[i]``."""
    out = {}
    for i, left in xi_of.items():
        right = dy_of.get(i)
        if not right:
            continue
        for (e1, d1), c1 in left:
            for (e2, d2), c2 in right:
                sgn, dm = merge_ders(d1, d2)
                if not sgn:
                    continue
                e = tuple(x + y for x, y in zip(e1, e2))
                siadd(out, (e, dm), c1 * c2 if sgn > 0 else -c1 * c2)
    return out


def sn_bracket(a, p, b, q):
    """Schouten-Nijenhuis bracket of homogeneous polyvector term dicts.

    Sign convention: on vector fields the bracket is the commutator, and
    for a bivector P the square ``[[P, P]]`` evaluates on three functions
    to twice the Jacobi defect of the induced bracket.  Both facts are
    pinned by regression tests.
    """
    # [[a, b]] = -(-1)^p sum_i xi_i(a) dy_i(b)  -  sum_i dy_i(a) xi_i(b)
    out = {}
    s1 = 1 if p & 1 else -1
    for k, c in _contract(_xi_table(a), _dy_table(b)).items():
        siadd(out, k, c if s1 > 0 else -c)
    for k, c in _contract(_dy_table(a), _xi_table(b)).items():
        siadd(out, k, -c)
    return out


def kveval(terms, polys):
    """Evaluate a k-vector term dict on k polynomials.

    Each term contributes ``coeff * monomial * det(d_{d_r} f_s)``.
    """
    import itertools

    k = len(polys)
    out = {}
    for (e, d), c in terms.items():
        if len(d) != k:
            raise ValueError("degree mismatch in evaluation")
        # det over permutations; polys are sparse dicts
        det = {}
        for perm in itertools.permutations(range(k)):
            inv = sum(
                1 for x in range(k) for y in range(x + 1, k) if perm[x] > perm[y]
            )
            prod = None
            for r, s in enumerate(perm):
                df = pderive(polys[s], d[r])
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
    """Bracket of two polynomials under a bivector term dict."""
    out = {}
    for (e, d), c in terms.items():
        i, j = d
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
    """Bracket of two polynomials from a generator table.

    ``table`` maps ordered coordinate pairs ``(u, v)`` to polynomial
    values of the bracket on the corresponding coordinates; the bracket
    extends to polynomials by the Leibniz rule,
    ``{p, q} = sum T[u, v] * dp/du * dq/dv``.
    """
    out = {}
    dp = {}
    dq = {}
    for (u, v), val in table.items():
        if u not in dp:
            dp[u] = pderive(p, u)
        du = dp[u]
        if not du:
            continue
        if v not in dq:
            dq[v] = pderive(q, v)
        dv = dq[v]
        if not dv:
            continue
        prod = pmul(du, dv, maxdeg)
        if not prod:
            continue
        for k, c in pmul(prod, val, maxdeg).items():
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
