import pytest

from arknit import quiver as qv

ZIG = "zigzag"


def test_finite_spec_labels_and_duplicates():
    spec = qv.QuiverSpec.finite([0, 1], [(0, 1), (0, 1, "b")])
    labels = sorted(a.label for a in spec.arrows)
    assert labels == ["a0", "b"]
    with pytest.raises(qv.QuiverError):
        qv.QuiverSpec.finite([0, 1], [(0, 1, "x"), (0, 1, "x")])
    with pytest.raises(qv.QuiverError):
        qv.QuiverSpec.finite([0], [(0, 1)])


def test_truncate_family_windows():
    a_inf = qv.QuiverSpec.family_quiver("A_inf", orientation=ZIG)
    assert list(qv.truncate(a_inf, 3).vertices) == [1, 2, 3, 4]
    lin = qv.QuiverSpec.family_quiver("A_inf", orientation="linear-right")
    assert list(qv.truncate(lin, 3).vertices) == [0, 1, 2, 3]
    bi = qv.QuiverSpec.family_quiver("A_biinf", orientation=ZIG)
    assert list(qv.truncate(bi, 2).vertices) == [-2, -1, 0, 1, 2]
    d = qv.QuiverSpec.family_quiver("D_inf", orientation=ZIG)
    tq = qv.truncate(d, 2)
    assert list(tq.vertices) == [0, 1, 2, 3, 4]
    assert sorted((a.src, a.tgt) for a in tq.arrows) == \
        [(2, 0), (2, 1), (2, 3), (4, 3)]


def test_truncate_cycle_keeps_all_vertices_and_caps():
    cyc = qv.QuiverSpec.family_quiver("cycle", n=3)
    tq = qv.truncate(cyc, 5)
    assert list(tq.vertices) == [0, 1, 2]
    assert tq.nilpotency == 5
    loop = qv.truncate(qv.QuiverSpec.family_quiver("cycle", n=1), 2)
    assert [a.label for a in loop.arrows] == ["loop"]


def test_zigzag_orientation_sources_are_even():
    bi = qv.truncate(qv.QuiverSpec.family_quiver("A_biinf", orientation=ZIG), 3)
    for a in bi.arrows:
        assert a.src % 2 == 0 and a.tgt % 2 == 1


def test_enumerate_paths_and_concat():
    spec = qv.QuiverSpec.finite([0, 1, 2], [(0, 1), (1, 2), (0, 1, "b")])
    tq = qv.truncate(spec, 0)
    paths = qv.enumerate_paths(tq, 0, 2)
    assert len(paths) == 2
    p = paths[0]
    assert p.length == 2 and p.source == 0 and p.target == 2
    triv = qv.trivial_path(0)
    assert qv.concat(triv, p) == p


def test_enumerate_paths_respects_nilpotency_cap():
    cyc = qv.truncate(qv.QuiverSpec.family_quiver("cycle", n=2), 3)
    paths = qv.enumerate_paths(cyc, 0, 0)
    # trivial path plus the length-2 loop; length 4 exceeds the cap
    assert sorted(p.length for p in paths) == [0, 2]


def test_count_paths_ending_at_stabilizes():
    lin = qv.QuiverSpec.family_quiver("A_inf", orientation="linear-right")
    pc = qv.count_paths_ending_at(qv.truncate(lin, 4), 3)
    assert pc.count == 4
    back = qv.QuiverSpec.family_quiver("A_inf", orientation="linear-left")
    with pytest.raises(qv.QuiverError):
        qv.count_paths_ending_at(qv.truncate(back, 4), 0)


def test_check_p2_table():
    cases = {
        ("A_inf", "linear-right"): True,
        ("A_inf", "linear-left"): False,
        ("A_inf", ZIG): True,
        ("A_biinf", "linear-right"): False,
        ("A_biinf", ZIG): True,
        ("D_inf", ZIG): True,
    }
    for (fam, orient), want in cases.items():
        spec = qv.QuiverSpec.family_quiver(fam, orientation=orient)
        assert qv.check_p2(spec) == want, (fam, orient)
    assert not qv.check_p2(qv.QuiverSpec.family_quiver("cycle", n=2))


def test_strongly_locally_finite_table():
    assert qv.is_strongly_locally_finite(
        qv.QuiverSpec.family_quiver("A_biinf", orientation=ZIG))
    assert not qv.is_strongly_locally_finite(
        qv.QuiverSpec.family_quiver("A_inf", orientation="linear-right"))


def test_is_star_composite_and_comb():
    base = qv.QuiverSpec.finite(["c"], [])
    star = qv.QuiverSpec.composite(base, [("c", "r")])
    rep = qv.is_star(star)
    assert rep.is_star and rep.core is base and rep.rays == [("c", "r")]
    tq = qv.truncate(star, 3)
    assert "r.3" in set(tq.vertices)

    comb = qv.is_star(qv.QuiverSpec.family_quiver("comb"))
    assert not comb.is_star and comb.witness


def test_spec_json_round_trip():
    spec = qv.QuiverSpec.finite(["x", "y"], [("x", "y", "e")])
    back = qv.QuiverSpec.from_json(spec.to_json())
    assert back.to_json() == spec.to_json()
    fam = qv.QuiverSpec.family_quiver("D_inf", orientation=ZIG)
    assert qv.QuiverSpec.from_json(fam.to_json()).to_json() == fam.to_json()


def test_opposite_window():
    spec = qv.QuiverSpec.finite([0, 1], [(0, 1, "e")])
    op = qv.truncate(spec, 0).opposite()
    assert [(a.src, a.tgt) for a in op.arrows] == [(1, 0)]


def test_truncate_rejects_negative_level():
    with pytest.raises(qv.QuiverError):
        qv.truncate(qv.QuiverSpec.family_quiver("A_inf", orientation=ZIG), -1)
