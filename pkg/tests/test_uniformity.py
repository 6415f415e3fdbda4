"""Uniformity oracles, their agreement, and the structure classifiers."""

import random

import pytest

from matroidkit.gf import GFMatrix, parse_matrix
from matroidkit.iso import are_isomorphic, has_minor
from matroidkit.matroid import (
    Matroid,
    MatroidError,
    RankTableRep,
    direct_sum,
    from_graph,
    from_matrix,
    parallel_connection,
)
from matroidkit.uniformity import (
    FlatWitness,
    MinorWitness,
    classify_connected_not3_22,
    classify_disconnected_22,
    is_22_uniform_circuits,
    is_kl_uniform_flats,
    is_kl_uniform_minor,
    is_paving,
    is_sparse_paving,
    minimal_kl_frontier,
    simple_iff_uniform_check,
)

P10_TEXT = """2 5 10
1 0 0 0 0 1 0 0 1 1
0 1 0 0 0 1 1 0 0 1
0 0 1 0 0 0 1 1 0 1
0 0 0 1 0 0 0 1 1 0
0 0 0 0 1 1 1 1 0 0
"""

F7_TEXT = """2 3 7
1 0 0 1 1 0 1
0 1 0 1 0 1 1
0 0 1 0 1 1 1
"""


def u_matroid(r, n, labels=None):
    table = bytes(min(bin(m).count("1"), r) for m in range(1 << n))
    return Matroid(RankTableRep(n, table), labels=labels)


def spike(r):
    cols = [[1 if j == i else 0 for j in range(r)] for i in range(r)]
    cols += [[0 if j == i else 1 for j in range(r)] for i in range(r)]
    cols.append([1] * r)
    labels = (
        tuple(f"x{i + 1}" for i in range(r))
        + tuple(f"y{i + 1}" for i in range(r))
        + ("t",)
    )
    return from_matrix(GFMatrix.from_columns(2, cols), labels=labels)


@pytest.fixture
def f7():
    return from_matrix(parse_matrix(F7_TEXT))


@pytest.fixture
def p10():
    return from_matrix(parse_matrix(P10_TEXT))


def ag32():
    return from_matrix(GFMatrix.from_point_values([v for v in range(1, 16) if v & 1], 4))


def random_corpus(count, qs=(2, 3), seed=11):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        q = rng.choice(qs)
        r = rng.randint(1, 4)
        n = rng.randint(1, 7)
        rows = [[rng.randrange(q) for _ in range(n)] for _ in range(r)]
        out.append(from_matrix(GFMatrix(q, rows)))
    return out


def test_uniform_matroids_are_11_uniform():
    for r, n in [(0, 0), (0, 2), (1, 3), (2, 4), (3, 6)]:
        assert is_kl_uniform_flats(u_matroid(r, n), 1, 1)[0]


def test_fano_is_paving(f7):
    assert is_kl_uniform_flats(f7, 2, 1) == (True, None)
    assert is_paving(f7)


def test_spike_deletions():
    z6 = spike(6)
    z6t = z6.delete(z6.mask_of(("t",)))
    ok, witness = is_kl_uniform_flats(z6t, 2, 2)
    assert not ok
    assert witness == FlatWitness(455)
    assert z6t.labels_of(witness.flat) == ("x1", "x2", "x3", "y1", "y2", "y3")
    assert z6t.r(witness.flat) == z6t.rank() - 2
    assert z6t.closure(witness.flat) == witness.flat
    z5 = spike(5)
    z5t = z5.delete(z5.mask_of(("t",)))
    assert is_kl_uniform_flats(z5t, 2, 2)[0]
    assert is_22_uniform_circuits(z5t)


def test_loops_break_top_k():
    m = direct_sum(u_matroid(2, 3), u_matroid(0, 2))
    assert not is_kl_uniform_flats(m, 2, 2)[0]
    assert not is_kl_uniform_flats(m, 2, 1)[0]
    assert is_kl_uniform_flats(m, 3, 2)[0]  # k above the rank: vacuous


def test_minor_witness_is_the_forbidden_minor():
    m = direct_sum(u_matroid(2, 2), u_matroid(0, 2))
    ok, witness = is_kl_uniform_minor(m, 2, 2)
    assert not ok
    assert witness == MinorWitness(0, 0)
    z6 = spike(6)
    z6t = z6.delete(z6.mask_of(("t",)))
    ok, witness = is_kl_uniform_minor(z6t, 2, 2)
    assert not ok
    minor = z6t.minor(contract=witness.contract, delete=witness.delete)
    assert (minor.n, minor.rank()) == (4, 2)
    assert minor.loops().bit_count() == 2
    assert minor.coloops().bit_count() == 2
    target = direct_sum(u_matroid(2, 2), u_matroid(0, 2))
    assert are_isomorphic(minor, target) is not None


def test_two_wheels_fail_22_by_circuits():
    w3 = from_graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    two = direct_sum(w3, w3)
    assert not is_22_uniform_circuits(two)
    assert not is_kl_uniform_flats(two, 2, 2)[0]


def test_oracle_agreement_and_duality_on_random_corpus():
    corpus = random_corpus(40)
    corpus.append(from_matrix(parse_matrix(F7_TEXT)))
    corpus.append(ag32())
    for m in corpus:
        md = m.dual()
        for k in range(1, 4):
            for l in range(1, 4):
                if k + l > 5:
                    continue
                flats = is_kl_uniform_flats(m, k, l)[0]
                assert flats == is_kl_uniform_minor(m, k, l)[0]
                assert flats == is_kl_uniform_flats(md, l, k)[0]
                if (k, l) == (2, 2) and m.n <= 16:
                    assert flats == is_22_uniform_circuits(m)


def test_monotonicity_and_minor_closure():
    corpus = random_corpus(15, seed=5)
    for m in corpus:
        table = {
            (k, l): is_kl_uniform_flats(m, k, l)[0]
            for k in range(1, 4)
            for l in range(1, 4)
        }
        for (k, l), ok in table.items():
            if ok:
                assert all(
                    table[kk, ll]
                    for kk in range(k, 4)
                    for ll in range(l, 4)
                )
        if table[2, 2] and m.n:
            for i in range(m.n):
                assert is_kl_uniform_flats(m.delete(1 << i), 2, 2)[0]
                assert is_kl_uniform_flats(m.contract(1 << i), 2, 2)[0]


def test_min_rank_bound_for_simple_cosimple_22(p10):
    z5 = spike(5)
    for m in [p10, z5, z5.delete(z5.mask_of(("t",))), ag32(), ag32().dual()]:
        if m.is_simple() and m.is_cosimple() and is_kl_uniform_flats(m, 2, 2)[0]:
            assert min(m.rank(), m.n - m.rank()) <= 5


def test_paving_family_facts():
    assert is_paving(ag32())
    for n in range(1, 5):
        assert is_paving(u_matroid(1, n))
    s8 = spike(4).delete(spike(4).mask_of(("y4",)))
    assert not is_sparse_paving(s8)
    assert not is_paving(s8)
    w3 = from_graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    assert is_sparse_paving(w3)


def test_simple_iff_uniform(f7):
    assert simple_iff_uniform_check(f7)
    assert not simple_iff_uniform_check(u_matroid(1, 2))
    for m in random_corpus(20, seed=23):
        if m.rank() >= 2:
            assert simple_iff_uniform_check(m) == m.is_simple()


def test_frontier(p10):
    assert minimal_kl_frontier(u_matroid(3, 6), 3, 3) == [(1, 1)]
    assert minimal_kl_frontier(p10, 3, 3) == [(2, 2)]
    m = direct_sum(u_matroid(2, 2), u_matroid(0, 2))
    assert minimal_kl_frontier(m, 3, 3) == [(1, 3), (3, 1)]


def test_classify_disconnected(f7):
    got = classify_disconnected_22(direct_sum(f7, u_matroid(0, 1)))
    assert got.clause == "D-ii" and got.data[0] == "loop"
    got = classify_disconnected_22(direct_sum(ag32(), u_matroid(1, 2)))
    assert got.clause == "D-iii"
    free = direct_sum(u_matroid(1, 1), u_matroid(1, 1, labels=("b",)))
    assert classify_disconnected_22(free).clause == "D-i"
    with pytest.raises(MatroidError):
        classify_disconnected_22(f7)  # connected
    with pytest.raises(MatroidError):
        classify_disconnected_22(direct_sum(spike(6).delete(spike(6).mask_of(("t",))), u_matroid(0, 1)))


def test_classify_connected_not3():
    z4 = spike(4)
    u23 = u_matroid(2, 3, labels=("t", "s1", "s2"))
    joined = parallel_connection(z4, "t", u23, "t")
    m = joined.delete(joined.mask_of(("t",)))
    assert (m.n, m.rank(), m.is_connected(), m.is_3connected()) == (10, 5, True, False)
    got = classify_connected_not3_22(m)
    assert got.clause == "C-iii"
    assert got.data == ("series", "s1", "s2")

    w3 = from_graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)], labels=tuple("abcdef"))
    w3p = parallel_connection(w3, "a", u_matroid(1, 2, labels=("a", "a2")), "a")
    assert classify_connected_not3_22(w3p).clause == "C-ii"


def test_classify_c_iv_parallel_connection_with_u24():
    w3 = from_graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)], labels=tuple("abcdef"))
    u24 = u_matroid(2, 4, labels=("a", "q1", "q2", "q3"))
    joined = parallel_connection(w3, "a", u24, "a")
    m = joined.delete(joined.mask_of(("a",)))
    assert has_minor(m, u_matroid(2, 4)) is not None  # non-binary
    got = classify_connected_not3_22(m)
    assert got.clause == "C-iv"
    assert got.data[1] == ("q1", "q2", "q3")


def test_classifier_preconditions(f7, p10):
    with pytest.raises(MatroidError):
        classify_connected_not3_22(p10)  # 3-connected
    with pytest.raises(MatroidError):
        classify_connected_not3_22(direct_sum(f7, f7))  # disconnected
