import itertools
from fractions import Fraction

import pytest

from qpverify import liealg, multivec, orbits, rootsys

F = Fraction

TYPES = [
    ("A", 1), ("A", 2), ("A", 3), ("A", 4), ("A", 5), ("A", 6),
    ("B", 2), ("B", 3), ("B", 4),
    ("C", 2), ("C", 3), ("C", 4),
    ("D", 4), ("D", 5),
    ("E", 6), ("E", 7), ("E", 8), ("F", 4), ("G", 2),
]


def derived_good_count(rs):
    """Closed-form count re-derived from root data, not hard-coded."""
    if rs.series == "A":
        return 2 ** rs.rank - 1
    ones = rootsys.coefficient_one_nodes(rs)
    k = len(ones)
    return k + k * (k - 1) // 2  # T of size 1 or 2 inside the coefficient-1 nodes


@pytest.mark.parametrize("series,rank", TYPES)
def test_good_orbit_counts(series, rank):
    rs = rootsys.build_root_system(series, rank)
    got = len(orbits.enumerate_good_orbits(rs))
    assert got == derived_good_count(rs)


def test_good_orbit_count_table():
    # the classical table the derivation reproduces
    table = {
        ("A", 6): 63, ("B", 3): 1, ("C", 4): 1, ("D", 4): 6,
        ("E", 6): 3, ("E", 7): 1, ("E", 8): 0, ("F", 4): 0, ("G", 2): 0,
    }
    for (series, rank), want in table.items():
        rs = rootsys.build_root_system(series, rank)
        assert len(orbits.enumerate_good_orbits(rs)) == want


def test_classify_examples():
    rsA2 = rootsys.build_root_system("A", 2)
    d = orbits.classify_levi(rsA2, {1})
    assert d.good and d.orbit_rank == 1 and d.T == {2}

    rsB2 = rootsys.build_root_system("B", 2)
    d = orbits.classify_levi(rsB2, {2})
    assert d.good and d.hermitian_symmetric and d.T == {1}

    rsG2 = rootsys.build_root_system("G", 2)
    for S in (set(), {1}, {2}):
        assert not orbits.classify_levi(rsG2, S).good


def test_classify_rejects_full_set():
    rs = rootsys.build_root_system("A", 2)
    with pytest.raises(ValueError):
        orbits.classify_levi(rs, {1, 2})


def test_good_depends_only_on_T():
    rs = rootsys.build_root_system("D", 4)
    for size in range(4):
        for S in itertools.combinations(range(1, 5), size):
            a = orbits.classify_levi(rs, S)
            b = orbits.classify_levi(rs, frozenset(S))
            assert a.good == b.good and a.T == b.T


def test_orbit_rank():
    rs = rootsys.build_root_system("A", 3)
    for size in range(3):
        for S in itertools.combinations(range(1, 4), size):
            d = orbits.classify_levi(rs, S)
            assert d.orbit_rank == rs.rank - len(S)


# ---------------------------------------------------------------------------
# tangent projections


@pytest.fixture(scope="module")
def sl2():
    return liealg.algebra("A", 1)


@pytest.fixture(scope="module")
def sl3():
    return liealg.algebra("A", 2)


@pytest.fixture(scope="module")
def so5():
    return liealg.algebra("B", 2)


def test_phi_projection_sl2_full_orbit(sl2):
    # two-dimensional tangent space cannot carry a 3-tensor
    ct = liealg.canonical_tensors(sl2)
    lev = orbits.classify_levi(sl2.root_system, set())
    assert orbits.tangent_projection(ct.phi, lev, sl2).is_zero()


def test_phi_projection_sl3_full_orbit(sl3):
    ct = liealg.canonical_tensors(sl3)
    lev = orbits.classify_levi(sl3.root_system, set())
    assert not orbits.tangent_projection(ct.phi, lev, sl3).is_zero()


def test_symmetric_pair_kills_phi_projection(so5):
    # Hermitian-symmetric Levi of the rank-2 orthogonal algebra: the
    # complement squares back into the Levi, so the odd component of an
    # invariant 3-tensor must vanish; the projection is zero
    ct = liealg.canonical_tensors(so5)
    lev = orbits.classify_levi(so5.root_system, {2})
    assert lev.hermitian_symmetric
    assert orbits.is_symmetric_pair(lev, so5)
    assert orbits.tangent_projection(ct.phi, lev, so5).is_zero()
    # parity mechanism: all complement-complement brackets land in the Levi
    l_idx, m_idx = orbits.levi_and_complement_indices(lev, so5)
    for a in m_idx:
        for b in m_idx:
            assert set(so5.bracket(a, b)) <= set(l_idx)
    # the non-Hermitian Levi of the same algebra is not a symmetric pair
    lev1 = orbits.classify_levi(so5.root_system, {1})
    assert not lev1.hermitian_symmetric
    assert not orbits.is_symmetric_pair(lev1, so5)


def test_tangent_projection_linear_and_surjective(sl3):
    lev = orbits.classify_levi(sl3.root_system, set())
    _, m_idx = orbits.levi_and_complement_indices(lev, sl3)
    target_dim = len(list(itertools.combinations(range(len(m_idx)), 3)))
    images = []
    for trip in itertools.combinations(range(sl3.dim), 3):
        w = multivec.wedge_of(sl3, *({i: F(1)} for i in trip))
        q = orbits.tangent_projection(w, lev, sl3)
        if q.terms:
            images.append(q.terms)
    # rank of the image span equals dim of the third exterior power of g/l
    keys = sorted({k for t in images for k in t if tuple(sorted(k)) == k})
    from qpverify import linalg

    rows = []
    for t in images:
        rows.append([t.get(k, F(0)) for k in keys])
    reduced, pivots = linalg.rref(rows)
    assert len(pivots) == target_dim
    # linearity on a sample
    a = multivec.wedge_of(sl3, {2: F(1)}, {3: F(1)}, {4: F(1)})
    b = multivec.wedge_of(sl3, {2: F(1)}, {3: F(1)}, {5: F(1)})
    pa = orbits.tangent_projection(a, lev, sl3).terms
    pb = orbits.tangent_projection(b, lev, sl3).terms
    pab = orbits.tangent_projection(a.add(b.scale(3)), lev, sl3).terms
    combo = dict(pa)
    for k, c in pb.items():
        s = combo.get(k, F(0)) + 3 * c
        if s:
            combo[k] = s
        elif k in combo:
            del combo[k]
    assert pab == combo


def test_hermitian_levi_of_d4():
    # end-node Levi of the rank-4 even orthogonal algebra: symmetric
    # pair, and the invariant 3-tensor dies on the tangent space
    L8 = liealg.algebra("D", 4)
    ct = liealg.canonical_tensors(L8)
    lev = orbits.classify_levi(L8.root_system, {2, 3, 4})
    assert lev.good and lev.hermitian_symmetric
    assert orbits.is_symmetric_pair(lev, L8)
    assert orbits.tangent_projection(ct.phi, lev, L8).is_zero()


def test_invariant_bivector_dims_at_base(sl2, sl3, so5):
    lev2 = orbits.classify_levi(sl2.root_system, set())
    assert orbits.invariant_bivector_dim_at_base(lev2, sl2) == 1
    lev3 = orbits.classify_levi(sl3.root_system, set())
    # reported alongside rank(M) = 2 without a hard tie
    assert orbits.invariant_bivector_dim_at_base(lev3, sl3) == 3
    for node in (1, 2):
        lev = orbits.classify_levi(sl3.root_system, {node})
        assert orbits.invariant_bivector_dim_at_base(lev, sl3) == 1
    levB = orbits.classify_levi(so5.root_system, {2})
    assert orbits.invariant_bivector_dim_at_base(levB, so5) == 1


def test_enumeration_deterministic():
    rs = rootsys.build_root_system("D", 4)
    a = orbits.enumerate_good_orbits(rs)
    b = orbits.enumerate_good_orbits(rs)
    assert [d.S for d in a] == [d.S for d in b]
