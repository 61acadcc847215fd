import pytest

from sparsekit.errors import (AlgorithmStallError, CapabilityError,
                              PreconditionError)
from sparsekit.graphio import (complete_graph, cycle_graph, grid_graph,
                               path_graph, star_graph)
from sparsekit.orders import (degeneracy_order, identity_order, wcol_of_order,
                              wreach_sets)
from sparsekit.wideness import (Cover, PartitionCover, SeparatorCertificate,
                                UqwCertificate, balanced_separator,
                                neighborhood_cover, partition_cover,
                                uqw_brute, uqw_extract, validate_cover,
                                validate_partition, validate_separator,
                                validate_uqw, wreach_clusters)


# ------------------------------------------------------------ uqw extraction

def test_uqw_extract_path_frozen():
    g = path_graph(10)
    cert = uqw_extract(g, range(10), 2, 2, identity_order(10))
    assert sorted(cert.S) == [0, 1]
    assert sorted(cert.B) == [2, 5, 8]
    assert cert.wcol_bound == 3
    assert cert.guarantee_applies is False
    assert cert.verified


def test_uqw_extract_star_deletes_center():
    g = star_graph(100)
    cert = uqw_extract(g, range(100), 1, 3, identity_order(100))
    assert sorted(cert.S) == [0]
    assert len(cert.B) == 99
    assert cert.verified


def test_uqw_extract_guarantee_case():
    # |A| = 256 = 4*(2*2*2)^2 meets the bound exactly for c = 2, m = 2
    g = path_graph(256)
    cert = uqw_extract(g, range(256), 1, 2, degeneracy_order(g))
    assert cert.wcol_bound == 2
    assert cert.guarantee_applies is True
    assert cert.S == frozenset()
    assert len(cert.B) == 128
    assert cert.verified


def test_uqw_extract_preconditions():
    g = path_graph(5)
    with pytest.raises(PreconditionError):
        uqw_extract(g, [], 1, 2, identity_order(5))
    with pytest.raises(PreconditionError):
        uqw_extract(g, [0, 1], 0, 2, identity_order(5))


def test_uqw_brute_frozen():
    g = path_graph(10)
    cert = uqw_brute(g, range(10), 2, 4, s_max=0)
    assert sorted(cert.S) == [] and sorted(cert.B) == [0, 3, 6, 9]
    # any 2 of K5 stay adjacent no matter which 3 vertices go
    assert uqw_brute(complete_graph(5), range(5), 1, 2, s_max=3) is None
    cert = uqw_brute(cycle_graph(12), range(12), 2, 4, s_max=1)
    assert sorted(cert.S) == [] and sorted(cert.B) == [0, 3, 6, 9]


def test_uqw_brute_caps():
    with pytest.raises(CapabilityError) as e:
        uqw_brute(path_graph(19), range(19), 1, 2, s_max=1)
    assert e.value.cap_name == "uqw_brute_n"
    with pytest.raises(CapabilityError) as e:
        uqw_brute(path_graph(10), range(10), 1, 2, s_max=4)
    assert e.value.cap_name == "uqw_brute_s"


def test_uqw_brute_never_worse_than_extraction():
    for g in (path_graph(12), cycle_graph(11), grid_graph(3, 4)):
        pi = degeneracy_order(g)
        got = uqw_extract(g, range(g.n), 1, 2, pi)
        ref = uqw_brute(g, range(g.n), 1, len(got.B), s_max=len(got.S))
        assert ref is not None and len(ref.B) >= len(got.B)


def test_validate_uqw_rejects():
    g = path_graph(6)
    A = frozenset(range(6))
    close = UqwCertificate(2, 2, A, frozenset(), frozenset({0, 1}), 3, False)
    assert any("apart" in v for v in validate_uqw(g, close))
    assert close.verified is False
    overlap = UqwCertificate(2, 2, A, frozenset({0}), frozenset({0, 4}), 3, False)
    assert any("overlap" in v for v in validate_uqw(g, overlap))
    outside = UqwCertificate(2, 2, A, frozenset(), frozenset({7}), 3, False)
    assert any("contained" in v for v in validate_uqw(g, outside))
    # a guarantee claim makes the size bounds part of the certificate
    weak = UqwCertificate(2, 3, A, frozenset({0, 1, 2, 3}), frozenset({5}), 3, True)
    bad = validate_uqw(g, weak)
    assert any("exceeds" in v for v in bad) and any("below" in v for v in bad)


def test_uqw_json_round_trip():
    g = path_graph(10)
    cert = uqw_extract(g, range(10), 2, 2, identity_order(10))
    back = UqwCertificate.from_json(cert.to_json())
    assert back.to_json() == cert.to_json()
    assert validate_uqw(g, back) == []


# ------------------------------------------------------- balanced separators

def test_separator_star_frozen():
    g = star_graph(100)
    cert = balanced_separator(g, range(100), 1, 0.1, identity_order(100))
    assert sorted(cert.S) == [0]
    assert cert.worst_ball_count == 1
    assert cert.worst_ball_fraction == pytest.approx(0.01)
    assert cert.iterations == 1
    assert cert.verified


def test_separator_star_trivial_eps():
    g = star_graph(100)
    cert = balanced_separator(g, range(100), 1, 1.0, identity_order(100))
    assert cert.S == frozenset()
    assert cert.verified


def test_separator_may_stop_with_everything_deleted():
    # below the theory threshold the exchange loop may stall immediately;
    # S = V is then still a valid (if useless) certificate
    g = path_graph(10)
    cert = balanced_separator(g, range(10), 1, 1.0, identity_order(10))
    assert cert.S == frozenset(range(10))
    assert cert.iterations == 0
    assert cert.worst_ball_count == 0
    assert cert.verified


def test_separator_on_trees_and_grids():
    import random
    rnd = random.Random(7)
    edges = [(v, rnd.randint(0, v - 1)) for v in range(1, 60)]
    from sparsekit.graph import Graph
    tree = Graph(60, edges)
    for g in (tree, grid_graph(5, 5)):
        pi = degeneracy_order(g)
        for r, eps in ((1, 0.5), (1, 0.2), (2, 0.5)):
            cert = balanced_separator(g, range(g.n), r, eps, pi)
            assert cert.verified
            assert cert.worst_ball_count <= eps * g.n


def test_separator_preconditions():
    g = path_graph(5)
    pi = identity_order(5)
    with pytest.raises(PreconditionError):
        balanced_separator(g, [], 1, 0.5, pi)
    with pytest.raises(PreconditionError):
        balanced_separator(g, range(5), 0, 0.5, pi)
    with pytest.raises(PreconditionError):
        balanced_separator(g, range(5), 1, 0.0, pi)
    with pytest.raises(PreconditionError):
        balanced_separator(g, range(5), 1, 1.5, pi)


def test_validate_separator_rejects():
    g = star_graph(10)
    A = frozenset(range(10))
    lying = SeparatorCertificate(1, 0.1, A, frozenset(), 0, 0)
    bad = validate_separator(g, lying)
    assert any("measured" in v for v in bad)
    assert any("above eps" in v for v in bad)
    assert lying.verified is False


def test_separator_json_round_trip():
    g = star_graph(20)
    cert = balanced_separator(g, range(20), 1, 0.2, identity_order(20))
    back = SeparatorCertificate.from_json(cert.to_json())
    assert back.to_json() == cert.to_json()
    assert validate_separator(g, back) == []


# ------------------------------------------------------------------- covers

def test_cover_path_frozen():
    g = path_graph(5)
    cover = neighborhood_cover(g, 1, identity_order(5))
    want = {0: frozenset({0, 1, 2}), 1: frozenset({1, 2, 3}),
            2: frozenset({2, 3, 4}), 3: frozenset({3, 4})}
    assert cover.clusters == want
    assert cover.max_degree == 3
    assert cover.radius_bound == 2
    assert cover.verified


def test_cover_cycle_frozen():
    g = cycle_graph(6)
    cover = neighborhood_cover(g, 1, identity_order(6))
    assert sorted(cover.clusters) == [0, 1, 2, 3]
    assert cover.max_degree == 3
    assert cover.verified


def test_cover_degree_bounded_by_wcol():
    for g in (path_graph(20), cycle_graph(14), grid_graph(4, 5)):
        pi = degeneracy_order(g)
        for r in (1, 2):
            cover = neighborhood_cover(g, r, pi)
            assert cover.verified
            assert cover.max_degree <= wcol_of_order(g, pi, 2 * r)


def test_wreach_clusters_degree_identity():
    # membership count of v across the full cluster family equals the size
    # of v's weak-reach set
    g = grid_graph(3, 4)
    pi = degeneracy_order(g)
    clusters = wreach_clusters(g, pi, 2)
    sets = wreach_sets(g, pi, 2)
    for v in range(g.n):
        assert sum(v in vs for vs in clusters.values()) == len(sets[v])


def test_validate_cover_rejects():
    g = path_graph(5)
    stray = Cover(1, {0: frozenset({1, 2})}, 2, 1)
    assert any("outside its cluster" in v for v in validate_cover(g, stray))
    split = Cover(1, {0: frozenset({0, 2})}, 2, 1)
    assert any("disconnected" in v for v in validate_cover(g, split))
    wide = Cover(1, {0: frozenset(range(7))}, 2, 1)
    assert any("radius" in v for v in validate_cover(path_graph(7), wide))
    # dropping a cluster strands some ball
    g2 = path_graph(5)
    ok = neighborhood_cover(g2, 1, identity_order(5))
    clipped = Cover(1, {0: ok.clusters[0]}, 2, 1)
    assert any("fits in no cluster" in v for v in validate_cover(g2, clipped))
    wrong_deg = Cover(1, dict(ok.clusters), 2, ok.max_degree + 1)
    assert any("degree" in v for v in validate_cover(g2, wrong_deg))


def test_cover_json_round_trip():
    g = cycle_graph(8)
    cover = neighborhood_cover(g, 2, degeneracy_order(g))
    back = Cover.from_json(cover.to_json())
    assert back.to_json() == cover.to_json()
    assert validate_cover(g, back) == []


# --------------------------------------------------------- partition covers

def test_partition_path_frozen():
    g = path_graph(9)
    pi = identity_order(9)
    pc = partition_cover(g, 1, pi)
    assert pc.n_parts == 6
    assert pc.n_parts <= wcol_of_order(g, pi, 5) == 6
    assert pc.verified


def test_partition_cycle_frozen():
    g = cycle_graph(12)
    pi = degeneracy_order(g)
    pc = partition_cover(g, 1, pi)
    assert pc.n_parts == 6
    assert pc.n_parts <= wcol_of_order(g, pi, 5)
    assert pc.verified


def test_partition_count_bounded_by_wcol():
    for g in (path_graph(20), grid_graph(4, 4), star_graph(30)):
        pi = degeneracy_order(g)
        for r in (1, 2):
            pc = partition_cover(g, r, pi)
            assert pc.verified
            assert pc.n_parts <= wcol_of_order(g, pi, 4 * r + 1)


def test_validate_partition_rejects():
    g = path_graph(7)
    sparse = PartitionCover(1, [frozenset({0, 1})])
    assert any("fits in no part" in v for v in validate_partition(g, sparse))
    fat = PartitionCover(1, [frozenset(range(7))])
    assert any("radius" in v for v in validate_partition(g, fat))
    assert fat.verified is False


def test_partition_json_round_trip():
    g = grid_graph(3, 3)
    pc = partition_cover(g, 1, degeneracy_order(g))
    back = PartitionCover.from_json(pc.to_json())
    assert back.to_json() == pc.to_json()
    assert validate_partition(g, back) == []
