import random

import pytest

from matroidkit.gf import GFMatrix, field, parse_matrix
from matroidkit.matroid import (
    Matroid,
    MatroidError,
    RankTableRep,
    as_rank_table,
    binary_three_sum,
    direct_sum,
    format_graph_text,
    from_graph,
    from_matrix,
    full_rank_table,
    graft_matroid,
    incidence_matrix,
    is_binary_affine,
    parallel_connection,
    parse_graph_text,
)

P10_TEXT = """
2 5 10
1 0 0 0 0 1 0 0 1 1
0 1 0 0 0 1 1 0 0 1
0 0 1 0 0 0 1 1 0 1
0 0 0 1 0 0 0 1 1 0
0 0 0 0 1 1 1 1 0 0
"""

P9_TEXT = """
2 4 9
1 0 0 0 1 0 0 1 1
0 1 0 0 1 1 0 0 1
0 0 1 0 0 1 1 0 1
0 0 0 1 0 0 1 1 0
"""

F7_TEXT = """
2 3 7
1 0 0 1 1 0 1
0 1 0 1 0 1 1
0 0 1 0 1 1 1
"""

W4_EDGES = [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 3), (3, 4), (4, 1)]
K4_EDGES = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]


@pytest.fixture(scope="module")
def p10():
    return from_matrix(parse_matrix(P10_TEXT), name="P10")


@pytest.fixture(scope="module")
def p9():
    return from_matrix(parse_matrix(P9_TEXT), name="P9")


@pytest.fixture(scope="module")
def f7():
    return from_matrix(parse_matrix(F7_TEXT), name="F7")


def u_matroid(r, n):
    """Uniform U_{r,n} as a bare rank table (test helper)."""
    table = bytearray(min(mask.bit_count(), r) for mask in range(1 << n))
    return Matroid(RankTableRep(n, table))


def test_rank_basics(p10):
    assert p10.rank() == 5
    assert p10.rank([]) == 0
    assert p10.nullity() == 5
    assert p10.rank(["1", "2", "3"]) == 3


def test_rank_rejects_bad_input(p10):
    with pytest.raises(MatroidError):
        p10.rank(["99"])
    with pytest.raises(MatroidError):
        p10.rank(1 << 10)


def test_closure(p9, f7):
    got = p9.labels_of(p9.closure(p9.mask_of(["1", "3", "4"])))
    assert got == ("1", "3", "4", "7", "8")
    assert p9.closure(0) == 0  # loopless: closure of the empty set is empty
    basis = p9.mask_of(["1", "2", "3", "4"])
    assert p9.closure(basis) == p9.full_mask
    loopy = direct_sum(f7, u_matroid(0, 2))
    assert loopy.labels_of(loopy.closure(0)) == ("1'", "2'")


def test_flats(f7):
    assert len(f7.flats_of_rank(2)) == 7  # Fano hyperplanes
    assert f7.flats_of_rank(3) == [f7.full_mask]
    assert f7.flats_of_rank(0) == [0]
    u34 = u_matroid(3, 4)
    assert len(u34.flats_of_rank(2)) == 6
    with pytest.raises(MatroidError):
        f7.flats_of_rank(4)


def test_circuits(f7, p9, p10):
    tri = [c for c in f7.circuits() if c.bit_count() == 3]
    assert len(tri) == 7
    p9_tris = sorted(p9.labels_of(c) for c in p9.circuits(max_size=3))
    assert p9_tris == [
        ("1", "2", "5"),
        ("1", "4", "8"),
        ("1", "6", "9"),
        ("2", "3", "6"),
        ("3", "4", "7"),
        ("3", "5", "9"),
    ]
    assert len(p10.circuits()) == 26
    assert u_matroid(3, 3).circuits() == ()
    assert u_matroid(0, 2).circuits() == (1, 2)  # two loops


def test_circuit_routes_agree(p9):
    tbl = as_rank_table(p9)
    assert p9.circuits() == tbl.circuits()


def test_minors(p10):
    w4 = p10.minor(contract="5", delete=["10"])
    assert (w4.n, w4.rank()) == (8, 4)
    assert w4.labels == ("1", "2", "3", "4", "6", "7", "8", "9")
    z4 = p10.contract(["8"])
    assert (z4.n, z4.rank()) == (9, 4)
    same = p10.contract(0)
    assert all(same.r(m) == p10.r(m) for m in range(1 << 10))
    with pytest.raises(MatroidError):
        p10.minor(contract="1", delete="1")


def test_minor_commutation(p10):
    a = p10.minor(contract=["1", "6"], delete=["7"])
    b = p10.delete(["7"]).contract(["1", "6"])
    assert a.labels == b.labels
    assert all(a.r(m) == b.r(m) for m in range(1 << a.n))


def test_dual(p10, f7):
    d = p10.dual()
    assert d.rank() == 5
    n, full = p10.n, p10.full_mask
    for mask in range(1 << n):
        assert d.r(mask) == mask.bit_count() + p10.r(full ^ mask) - 5
    dd = d.dual()
    assert all(dd.r(m) == p10.r(m) for m in range(1 << n))
    assert f7.dual().rank() == 4


def test_direct_sum():
    u22 = from_matrix(GFMatrix(field(2), [(1, 0), (0, 1)]))
    u01 = from_matrix(GFMatrix(field(2), [(0,)]))
    s = direct_sum(u22, u01)
    assert s.rank() == 2
    assert s.labels_of(s.loops()) == ("1'",)
    assert not s.is_connected()
    f7 = from_matrix(parse_matrix(F7_TEXT))
    both = direct_sum(f7, u01)
    left = set(f7.circuits())
    assert set(both.circuits()) == left | {1 << 7}
    empty = direct_sum(f7, from_matrix(GFMatrix(field(2), ((),))))
    assert all(empty.r(m) == f7.r(m) for m in range(1 << 7))


def test_parallel_connection():
    u12 = from_matrix(GFMatrix(field(2), [(1, 1)]))
    p = parallel_connection(u12, "1", u12, "1")
    assert (p.n, p.rank()) == (3, 1)
    assert p.parallel_classes() == [7]  # one class of three: U_{1,3}
    w3 = from_graph(4, K4_EDGES)
    u23 = u_matroid(2, 3)
    q = parallel_connection(u23, "1", w3, "1")
    assert q.rank() == u23.rank() + w3.rank() - 1
    with pytest.raises(MatroidError):
        parallel_connection(u_matroid(0, 1), "1", u12, "1")  # loop basepoint
    with pytest.raises(MatroidError):
        parallel_connection(u_matroid(1, 1), "1", u12, "1")  # coloop basepoint


def test_three_sum_shape(p9, f7):
    glue = {"1": "t1", "2": "t2", "5": "t3"}
    tri = f7.labels_of(next(c for c in f7.circuits() if c.bit_count() == 3))
    remap = {tri[0]: "t1", tri[1]: "t2", tri[2]: "t3"}
    remap.update({lab: "f" + lab for lab in f7.labels if lab not in tri})
    s = binary_three_sum(p9.relabel(glue), f7.relabel(remap), ["t1", "t2", "t3"])
    assert (s.n, s.rank()) == (10, 5)
    assert s.is_simple() and s.is_cosimple()
    with pytest.raises(MatroidError):
        binary_three_sum(p9, f7, ["1", "2", "5"])  # overlap is not just the glue


def test_simple_cosimple(p10):
    assert p10.is_simple() and p10.is_cosimple()
    u12 = from_matrix(GFMatrix(field(2), [(1, 1)]))
    assert not u12.is_simple()
    # U_{1,3} is three parallel elements: not simple, but its dual U_{2,3}
    # is simple, so it is cosimple
    assert not u_matroid(1, 3).is_simple()
    assert u_matroid(1, 3).is_cosimple()
    assert not u_matroid(1, 1).is_cosimple()  # a coloop's dual is a loop


def test_si_cosi_reduced():
    u22 = from_matrix(GFMatrix(field(2), [(1, 0), (0, 1)]))
    u01 = from_matrix(GFMatrix(field(2), [(0,)]))
    u12 = from_matrix(GFMatrix(field(2), [(1, 1)]))
    messy = direct_sum(direct_sum(u22, u01), u12)
    assert messy.si().loops() == 0
    red = messy.reduced()
    assert red.n == 0
    f7 = from_matrix(parse_matrix(F7_TEXT))
    assert f7.reduced().n == 7  # already simple and cosimple


def test_connectivity(p10):
    assert p10.lambda_of(0) == 0
    rng = random.Random(3)
    for _ in range(60):
        mask = rng.randrange(1 << p10.n)
        assert p10.lambda_of(mask) == p10.lambda_of(p10.full_mask ^ mask)
    assert p10.is_3connected()
    assert u_matroid(0, 0).is_connected()
    assert u_matroid(1, 1).is_3connected()
    assert u_matroid(1, 3).is_3connected()
    assert u_matroid(2, 3).is_3connected()
    assert not u_matroid(0, 2).is_connected()
    f7 = from_matrix(parse_matrix(F7_TEXT))
    u01 = from_matrix(GFMatrix(field(2), [(0,)]))
    assert not direct_sum(f7, u01).is_3connected()


def test_components():
    f7 = from_matrix(parse_matrix(F7_TEXT))
    u01 = from_matrix(GFMatrix(field(2), [(0,)]))
    s = direct_sum(f7, u01)
    assert [s.labels_of(c) for c in s.components()] == [
        ("1", "2", "3", "4", "5", "6", "7"),
        ("1'",),
    ]


def test_graphic_backend():
    w4 = from_graph(5, W4_EDGES)
    assert (w4.n, w4.rank()) == (8, 4)
    lin = w4.to_linear()
    assert all(lin.r(m) == w4.r(m) for m in range(1 << 8))
    d = w4.dual()
    assert isinstance(d.rep, RankTableRep)
    assert d.rank() == 8 - 4
    minor = w4.minor(contract=["1"], delete=["5"])
    lin_minor = lin.minor(contract=["1"], delete=["5"])
    assert all(minor.r(m) == lin_minor.r(m) for m in range(1 << minor.n))
    loopy = from_graph(2, [(0, 0), (0, 1)])
    assert loopy.loops() == 1 and loopy.rank() == 1


def test_graft_backend():
    g = graft_matroid(4, K4_EDGES, [0, 1, 2, 3])
    assert g.labels[-1] == "g"
    base = g.delete(["g"])
    w3 = from_graph(4, K4_EDGES)
    assert all(base.r(m) == w3.r(m) for m in range(1 << 6))
    # all four vertices marked: even in the single component, so g is spanned
    assert g.rank() == w3.rank()
    g1 = graft_matroid(4, K4_EDGES, [0])
    assert g1.rank() == w3.rank() + 1
    lin = g1.to_linear()
    assert all(lin.r(m) == g1.r(m) for m in range(1 << 7))
    contracted = g1.contract(["g"])
    assert isinstance(contracted.rep, RankTableRep)
    assert contracted.rank() == g1.rank() - 1
    sub = g1.minor(contract=["1"], delete=["6"])
    lsub = lin.minor(contract=["1"], delete=["6"])
    assert all(sub.r(m) == lsub.r(m) for m in range(1 << sub.n))


def test_incidence_matrix_gamma_column():
    m = incidence_matrix(3, [(0, 1), (1, 2)], gamma=[0, 2])
    assert m.rows == ((1, 0, 1), (1, 1, 0), (0, 1, 1))


def test_rank_axioms_sampled(p10):
    table = full_rank_table(p10)
    assert table[0] == 0
    rng = random.Random(11)
    full = p10.full_mask
    for _ in range(2000):
        x = rng.randrange(full + 1)
        y = rng.randrange(full + 1)
        e = 1 << rng.randrange(p10.n)
        assert table[x] <= table[x | e] <= table[x] + 1
        assert table[x | y] + table[x & y] <= table[x] + table[y]


def test_full_rank_table_routes_agree():
    w4 = from_graph(5, W4_EDGES)
    assert full_rank_table(w4) == full_rank_table(w4.to_linear())


def test_affine(f7):
    assert not is_binary_affine(f7)
    # AG(3,2): binary affine cube, the eight weight-odd... use coordinates with
    # a leading all-ones row removed: columns of [1; x] for x in GF(2)^3
    rows = [[1] * 8]
    for i in range(3):
        rows.append([(v >> i) & 1 for v in range(8)])
    ag32 = from_matrix(GFMatrix(field(2), rows))
    assert is_binary_affine(ag32)
    with pytest.raises(MatroidError):
        is_binary_affine(u_matroid(2, 4))


def test_graph_text_round_trip():
    text = format_graph_text(4, K4_EDGES, gamma=[0, 2])
    nv, edges, gamma = parse_graph_text(text)
    assert (nv, edges, gamma) == (4, K4_EDGES, [0, 2])
    nv, edges, gamma = parse_graph_text("graph 2 1\n0 1\n")
    assert gamma is None
    with pytest.raises(MatroidError):
        parse_graph_text("graph 2 1\n0 2\n")
    with pytest.raises(MatroidError):
        parse_graph_text("2 1\n0 1\n")


def test_export_text(p10):
    assert parse_matrix(p10.export_text()).point_values() == (
        16, 8, 4, 2, 1, 25, 13, 7, 18, 28,
    )
    w4 = from_graph(5, W4_EDGES)
    assert parse_graph_text(w4.export_text())[0] == 5
    with pytest.raises(MatroidError):
        as_rank_table(p10).export_text()


def test_relabel(p10):
    m = p10.relabel({"1": "a"})
    assert m.labels[0] == "a"
    assert m.rank(["a", "2"]) == 2
