"""Poisson brackets on matrix-entry coordinate rings.

Polynomials live in the free commutative ring on the n*n entry symbols
``t[i,j]`` (functions on the full matrix space; statements about the
special linear group are phrased through the determinant ideal).  A
left-invariant field acts on entries by right matrix multiplication,
``x^L t = t x``, a right-invariant one by left multiplication,
``x^R t = x t``; with these conventions left fields generate right
translations and the two kinds commute.

Brackets are stored by their generator table, the values on entry pairs,
and extend to polynomials by the Leibniz rule.

The free entry ring is the coordinate ring of the general (or special)
linear group, so the Poisson identities proved off the group ideal hold
for the type-A realizations; for orthogonal or symplectic algebras the
constructions still make sense as derivation tables, but the Jacobi
identities would only hold modulo the isotropy ideal of the subgroup.
"""

import warnings
from fractions import Fraction

from . import liealg, multivec, termops

ONE = Fraction(1)

# Jacobiator of the conjugation-invariant bracket against the invariant
# 3-tensor pushed through the conjugation fields; computed once and
# regression locked.
AD_JACOBIATOR_FACTOR = Fraction(-1, 2)

DEFAULT_DEGREE_CAP = 6


class RealizationMismatch(ValueError):
    """Raised when tensors and matrix realizations do not line up."""


def var_index(n, i, j):
    return i * n + j


def entry(n, i, j):
    """The entry symbol t[i,j] as a polynomial."""
    e = [0] * (n * n)
    e[var_index(n, i, j)] = 1
    return {tuple(e): ONE}


def _unit_exp(n, v):
    e = [0] * (n * n)
    e[v] = 1
    return tuple(e)


def _field_images(L, x, side):
    """Images of every entry symbol under a one-sided field of ``x``.

    Left: (t x)_{ij} = sum_k t_{ik} x_{kj}.  Right: (x t)_{ij} =
    sum_k x_{ik} t_{kj}.
    """
    if L.matrices is None:
        raise RealizationMismatch("algebra carries no matrix realization")
    n = L.msize
    X = L.matrices[x] if isinstance(x, int) else x
    images = {}
    for (a, b), val in X.items():
        if side == "left":
            for i in range(n):
                tgt = var_index(n, i, b)
                mono = _unit_exp(n, var_index(n, i, a))
                images.setdefault(tgt, {})
                termops.piadd(images[tgt], {mono: ONE}, val)
        else:
            for j in range(n):
                tgt = var_index(n, a, j)
                mono = _unit_exp(n, var_index(n, b, j))
                images.setdefault(tgt, {})
                termops.piadd(images[tgt], {mono: ONE}, val)
    return images


def _apply_derivation(images, p, n):
    out = {}
    for v, img in images.items():
        dv = termops.pderive(p, v)
        if dv:
            termops.piadd(out, termops.pmul(dv, img), ONE)
    return out


def left_field(L, x, p):
    """Left-invariant derivation of ``x`` applied to an entry polynomial."""
    return _apply_derivation(_field_images(L, x, "left"), p, L.msize)


def right_field(L, x, p):
    """Right-invariant derivation of ``x`` applied to an entry polynomial."""
    return _apply_derivation(_field_images(L, x, "right"), p, L.msize)


class GroupBivector:
    """Antisymmetric bracket on the entry ring, stored on generators."""

    def __init__(self, n, table, degree_cap=DEFAULT_DEGREE_CAP):
        self.n = n
        self.nvars = n * n
        self.table = {k: v for k, v in table.items() if v}
        self.degree_cap = degree_cap
        for (u, v), val in self.table.items():
            neg = termops.pscale(self.table.get((v, u), {}), -ONE)
            if neg != val:
                raise ValueError("generator table is not antisymmetric")

    def bracket(self, p, q):
        return termops.table_bracket(self.table, p, q, self.degree_cap)

    def entry_bracket(self, u, v):
        return dict(self.table.get((u, v), {}))

    def is_zero(self):
        return not self.table


def build_two_sided_bracket(L, r1, r2, degree_cap=DEFAULT_DEGREE_CAP):
    """Bracket with generator table from left fields of r1 plus right fields of r2.

    The compatibility condition (equal Schouten squares of the two
    tensors) is checked and reported as a warning when violated; the
    bracket is still produced, which is how a non-Poisson witness is
    exhibited.
    """
    if L.matrices is None:
        raise RealizationMismatch("algebra carries no matrix realization")
    for r in (r1, r2):
        if r.algebra is not L:
            raise RealizationMismatch("tensor built over a different algebra")
        if r.degree != 2 or r.symmetry != "alternating":
            raise ValueError("r-matrix inputs must be alternating 2-tensors")
    sq1 = multivec.algebraic_schouten(r1, r1)
    sq2 = multivec.algebraic_schouten(r2, r2)
    if sq1 != sq2:
        warnings.warn(
            "the two tensors have different Schouten squares; "
            "the bracket need not be Poisson",
            stacklevel=2,
        )
    n = L.msize
    left_cache = {}
    right_cache = {}

    def left_img(x):
        if x not in left_cache:
            left_cache[x] = _field_images(L, x, "left")
        return left_cache[x]

    def right_img(x):
        if x not in right_cache:
            right_cache[x] = _field_images(L, x, "right")
        return right_cache[x]

    table = {}
    for u in range(n * n):
        for v in range(n * n):
            acc = {}
            for (a, b), c in r1.plain_items():
                pa = left_img(a).get(u)
                pb = left_img(b).get(v)
                if pa and pb:
                    termops.piadd(acc, termops.pmul(pa, pb), c)
            for (a, b), c in r2.plain_items():
                pa = right_img(a).get(u)
                pb = right_img(b).get(v)
                if pa and pb:
                    termops.piadd(acc, termops.pmul(pa, pb), c)
            if acc:
                table[(u, v)] = acc
    return GroupBivector(n, table, degree_cap)


def build_sklyanin_bracket(L, degree_cap=DEFAULT_DEGREE_CAP):
    """The standard bracket: left fields of r minus right fields of r."""
    r = liealg.canonical_tensors(L).r_sd
    return build_two_sided_bracket(L, r, r.scale(-1), degree_cap)


def build_ad_bracket(L, degree_cap=DEFAULT_DEGREE_CAP):
    """Conjugation-invariant bracket from the invariant symmetric 2-tensor."""
    if L.matrices is None:
        raise RealizationMismatch("algebra carries no matrix realization")
    t = liealg.canonical_tensors(L).t
    n = L.msize
    left_cache = {}
    right_cache = {}

    def left_img(x):
        if x not in left_cache:
            left_cache[x] = _field_images(L, x, "left")
        return left_cache[x]

    def right_img(x):
        if x not in right_cache:
            right_cache[x] = _field_images(L, x, "right")
        return right_cache[x]

    table = {}
    for u in range(n * n):
        for v in range(n * n):
            acc = {}
            for (a, b), c in t.plain_items():
                la = left_img(a).get(u)
                rb = right_img(b).get(v)
                if la and rb:
                    termops.piadd(acc, termops.pmul(la, rb), c)
                lb = left_img(a).get(v)
                ra = right_img(b).get(u)
                if lb and ra:
                    termops.piadd(acc, termops.pmul(lb, ra), -c)
            if acc:
                table[(u, v)] = acc
    return GroupBivector(n, table, degree_cap)


def jacobiator_on_generators(B):
    """Cyclic sum {a,{b,c}} + {b,{c,a}} + {c,{a,b}} on ascending entry triples.

    The Leibniz rule makes generator triples sufficient; the jacobiator is
    alternating, so repeated entries contribute nothing.
    """
    n2 = B.nvars
    out = {}
    gens = [{_unit_exp_from(n2, v): ONE} for v in range(n2)]
    for u in range(n2):
        for v in range(u + 1, n2):
            for w in range(v + 1, n2):
                acc = {}
                termops.piadd(acc, B.bracket(gens[u], B.bracket(gens[v], gens[w])), ONE)
                termops.piadd(acc, B.bracket(gens[v], B.bracket(gens[w], gens[u])), ONE)
                termops.piadd(acc, B.bracket(gens[w], B.bracket(gens[u], gens[v])), ONE)
                if acc:
                    out[(u, v, w)] = acc
    return out


def _unit_exp_from(nvars, v):
    e = [0] * nvars
    e[v] = 1
    return tuple(e)


def conjugation_field(L, x, p):
    """Derivation of the conjugation action, the left minus the right field."""
    lhs = left_field(L, x, p)
    termops.piadd(lhs, right_field(L, x, p), -ONE)
    return lhs


def ad_invariance_defect(L, B, x):
    """Leibniz-compatible Lie derivative of the bracket along conjugation.

    Returns the defect table on generator pairs; all zero means the
    bracket is invariant under the conjugation field of ``x``.
    """
    n2 = B.nvars
    out = {}
    for u in range(n2):
        pu = {_unit_exp_from(n2, u): ONE}
        for v in range(u + 1, n2):
            pv = {_unit_exp_from(n2, v): ONE}
            acc = conjugation_field(L, x, B.bracket(pu, pv))
            termops.piadd(acc, B.bracket(conjugation_field(L, x, pu), pv), -ONE)
            termops.piadd(acc, B.bracket(pu, conjugation_field(L, x, pv)), -ONE)
            if acc:
                out[(u, v)] = acc
    return out


def phi_through_conjugation(L, u, v, w):
    """The invariant 3-tensor evaluated through conjugation fields on entries."""
    phi = liealg.canonical_tensors(L).phi
    n2 = L.msize * L.msize
    pu = {_unit_exp_from(n2, u): ONE}
    pv = {_unit_exp_from(n2, v): ONE}
    pw = {_unit_exp_from(n2, w): ONE}
    acc = {}
    for (a, b, c), coef in phi.plain_items():
        fa = conjugation_field(L, a, pu)
        if not fa:
            continue
        fb = conjugation_field(L, b, pv)
        if not fb:
            continue
        fc = conjugation_field(L, c, pw)
        if not fc:
            continue
        termops.piadd(acc, termops.pmul(termops.pmul(fa, fb), fc), coef)
    return acc


def determinant(n):
    """Determinant of the generic matrix as an entry polynomial."""
    import itertools

    out = {}
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b])
        e = [0] * (n * n)
        for i in range(n):
            e[var_index(n, i, perm[i])] += 1
        out[tuple(e)] = Fraction(-1 if inv & 1 else 1)
    return out


def in_principal_ideal(p, d):
    """Exact membership of ``p`` in the ideal generated by ``d``.

    Greedy reduction by the lex-leading term; complete for principal
    ideals in a polynomial ring.
    """
    if not p:
        return True
    lead_d = max(d)
    cd = d[lead_d]
    work = dict(p)
    while work:
        lead = max(work)
        quot = tuple(a - b for a, b in zip(lead, lead_d))
        if any(q < 0 for q in quot):
            return False
        factor = work[lead] / cd
        for k, c in d.items():
            key = tuple(a + b for a, b in zip(quot, k))
            s = work.get(key, Fraction(0)) - factor * c
            if s:
                work[key] = s
            elif key in work:
                del work[key]
    return True
