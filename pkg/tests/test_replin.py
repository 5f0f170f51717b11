"""Representation layer: constructions, hom/ext, decomposition, families."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from arknit.fields import QQ, Field
from arknit import quiver as qv
from arknit import replin as rl


def _a3():
    # 1 -> 2 -> 3
    return qv.truncate(qv.QuiverSpec.finite(
        [1, 2, 3], [(1, 2, "a"), (2, 3, "b")]), 0)


def _fork():
    # 2 -> 1, 2 -> 3
    return qv.truncate(qv.QuiverSpec.finite(
        [1, 2, 3], [(2, 1, "l"), (2, 3, "r")]), 0)


def _kronecker():
    return qv.truncate(qv.QuiverSpec.finite(
        [1, 2], [(1, 2, "a"), (1, 2, "b")]), 0)


def test_projective_injective_simple_dims():
    tq = _a3()
    assert rl.projective_rep(tq, QQ, 1).dim_vector() == {1: 1, 2: 1, 3: 1}
    assert rl.projective_rep(tq, QQ, 3).dim_vector() == {3: 1}
    assert rl.injective_rep(tq, QQ, 1).dim_vector() == {1: 1}
    assert rl.injective_rep(tq, QQ, 3).dim_vector() == {1: 1, 2: 1, 3: 1}
    assert rl.simple_rep(tq, QQ, 2).dim_vector() == {2: 1}
    with pytest.raises(rl.RepError):
        rl.simple_rep(tq, QQ, 9)


def test_hom_between_projectives_counts_paths():
    # Hom(P_x, P_y) has dimension the number of paths y -> x
    tq = _a3()
    P = {x: rl.projective_rep(tq, QQ, x) for x in (1, 2, 3)}
    assert rl.hom_dim(P[3], P[1]) == 1
    assert rl.hom_dim(P[1], P[3]) == 0
    assert rl.hom_dim(P[2], P[2]) == 1
    assert rl.ext1_dim(P[1], rl.simple_rep(tq, QQ, 3)) == 0


def test_euler_form_matches_hom_minus_ext():
    for tq in (_a3(), _fork(), _kronecker()):
        rng = random.Random(7)
        for _ in range(12):
            X = rl.random_rep(tq, QQ, rng, max_dim=3)
            Y = rl.random_rep(tq, QQ, rng, max_dim=3)
            assert (rl.hom_dim(X, Y) - rl.ext1_dim(X, Y)
                    == rl.euler_form(X, Y))


def test_kronecker_regular_line():
    tq = _kronecker()
    F = QQ

    def reg(lam):
        return rl.Representation(tq, F, {1: 1, 2: 1},
                                 {"a": [[F.one]], "b": [[F.of(lam)]]})

    R0, R1 = reg(0), reg(1)
    assert rl.hom_dim(R0, R0) == 1
    assert rl.ext1_dim(R0, R0) == 1
    assert rl.hom_dim(R0, R1) == 0
    assert rl.ext1_dim(R0, R1) == 0
    assert rl.is_indecomposable(R0)
    assert rl.iso_witness(R0, R1) is None


def test_direct_sum_witnesses_and_additivity():
    tq = _a3()
    P1 = rl.projective_rep(tq, QQ, 1)
    S2 = rl.simple_rep(tq, QQ, 2)
    I3 = rl.injective_rep(tq, QQ, 3)
    total, incs, projs = rl.direct_sum([P1, S2, I3])
    assert total.at(2) == P1.at(2) + S2.at(2) + I3.at(2)
    for piece, inc, proj in zip((P1, S2, I3), incs, projs):
        assert proj.compose(inc).blocks == rl.identity_morphism(piece).blocks
    T = rl.random_rep(tq, QQ, random.Random(3), max_dim=2)
    assert rl.hom_dim(total, T) == sum(rl.hom_dim(X, T) for X in (P1, S2, I3))
    assert rl.hom_dim(T, total) == sum(rl.hom_dim(T, X) for X in (P1, S2, I3))


def test_radical_of_projective_is_sum_over_arrows():
    for tq in (_a3(), _fork()):
        for x in tq.vertices:
            P = rl.projective_rep(tq, QQ, x)
            R, inc = rl.radical_of_projective(tq, QQ, x)
            expect = {}
            for a in tq.out_arrows(x):
                for v, d in rl.projective_rep(tq, QQ, a.tgt).dims.items():
                    expect[v] = expect.get(v, 0) + d
            assert {v: d for v, d in R.dims.items() if d} == \
                {v: d for v, d in expect.items() if d}
            # inclusion covers everything except the top
            top_dims, _blocks = rl.top_data(P)
            assert {v: d for v, d in top_dims.items() if d} == {x: 1}
            assert R.total_dim() + 1 == P.total_dim()
            inc.check()


def test_radical_and_socle_extremes():
    tq = _a3()
    S = rl.simple_rep(tq, QQ, 2)
    rad, _ = rl.radical_subrep(S)
    assert rad.total_dim() == 0
    I1 = rl.injective_rep(tq, QQ, 3)
    soc, _ = rl.socle_subrep(I1)
    assert soc.dim_vector() == {3: 1}
    P1 = rl.projective_rep(tq, QQ, 1)
    socP, _ = rl.socle_subrep(P1)
    assert socP.dim_vector() == {3: 1}


def test_decompose_groups_multiplicities():
    tq = _a3()
    P1 = rl.projective_rep(tq, QQ, 1)
    S2 = rl.simple_rep(tq, QQ, 2)
    # scrambled sum: conjugate by a nontrivial basis change at vertex 2
    total, _, _ = rl.direct_sum([P1, P1, S2])
    F = QQ
    g = {v: rl.la.identity(total.at(v), F) for v in tq.vertices}
    g[2] = [[F.of(1), F.of(2), F.of(0)],
            [F.of(1), F.of(3), F.of(1)],
            [F.of(0), F.of(1), F.of(2)]]
    maps = {}
    for a in tq.arrows:
        ginv = rl.la.inverse(g[a.src], F)
        maps[a.label] = rl.la.mat_mul(
            rl.la.mat_mul(g[a.tgt], total.maps[a.label], F,
                          inner=total.at(a.tgt), bcols=total.at(a.src)),
            ginv, F, inner=total.at(a.src), bcols=total.at(a.src))
    M = rl.Representation(tq, F, dict(total.dims), maps)
    report = rl.decompose(M)
    assert report.check()
    got = sorted((tuple(sorted(S.dim_vector().items())), mult)
                 for S, mult in report.summands)
    assert got == [((
        (1, 1), (2, 1), (3, 1)), 2), (((2, 1),), 1)]
    matched = [S for S, _ in report.summands
               if rl.iso_witness(S, P1) is not None]
    assert len(matched) == 1


def test_iso_witness_soundness():
    tq = _a3()
    F = QQ
    # same dimension vector, genuinely different modules
    thin = rl.Representation(tq, F, {1: 1, 2: 1},
                             {"a": [[F.one]]})
    split = rl.Representation(tq, F, {1: 1, 2: 1},
                              {"a": [[F.zero]]})
    assert rl.iso_witness(thin, split) is None
    assert rl.iso_witness(thin, thin) is not None
    twisted = rl.Representation(tq, F, {1: 1, 2: 1},
                                {"a": [[F.of(5)]]})
    w = rl.iso_witness(thin, twisted)
    assert w is not None and w.is_iso()


def test_morphism_algebra():
    tq = _a3()
    P1 = rl.projective_rep(tq, QQ, 1)
    one = rl.identity_morphism(P1)
    zero = rl.zero_morphism(P1, P1)
    assert one.compose(one).blocks == one.blocks
    assert one.add(zero).blocks == one.blocks
    assert zero.is_zero() and not one.is_zero()
    assert one.scale(QQ.of(3)).scale(QQ.of(0)).is_zero()
    assert one.inverse().blocks == one.blocks
    with pytest.raises(rl.RepError):
        zero.inverse()
    # non-intertwining blocks must be rejected at construction
    bad = {v: rl.la.identity(P1.at(v), QQ) for v in tq.vertices}
    bad[3] = [[QQ.of(2)]]
    with pytest.raises(rl.RepError):
        rl.Morphism(P1, P1, bad)
    f = rl.hom_basis(rl.projective_rep(tq, QQ, 3), P1)[0]
    f.check()


def test_json_round_trip_is_stable():
    tq = _fork()
    X = rl.random_rep(tq, QQ, random.Random(11), max_dim=3)
    doc = X.to_json()
    Y = rl.rep_from_json(doc, QQ)
    assert Y.to_json() == rl.rep_from_json(Y.to_json(), QQ).to_json()
    assert sorted(doc["dims"].values()) == sorted(Y.to_json()["dims"].values())
    Z = rl.rep_from_json(X.to_json(), Field(5))
    assert Z.total_dim() == X.total_dim()


def test_family_objects_on_zigzag_windows():
    A = qv.truncate(qv.QuiverSpec.family_quiver("A_inf", orientation="zigzag"), 8)
    X = rl.realize_family_object(A, "A(2,5)")
    assert X.dim_vector() == {2: 1, 3: 1, 4: 1, 5: 1}
    assert rl.is_indecomposable(X)
    D = qv.truncate(qv.QuiverSpec.family_quiver("D_inf", orientation="zigzag"), 8)
    B = rl.realize_family_object(D, "B(2,5)")
    assert B.dim_vector() == {0: 1, 1: 1, 2: 2, 3: 1, 4: 1, 5: 1}
    assert rl.is_indecomposable(B)
    A0 = rl.realize_family_object(D, "A0(3)")
    A1 = rl.realize_family_object(D, "A1(3)")
    assert A0.dim_vector() == {1: 1, 2: 1, 3: 1}
    assert A1.dim_vector() == {0: 1, 2: 1, 3: 1}
    assert rl.iso_witness(A0, A1) is None
    with pytest.raises(rl.RepError):
        rl.realize_family_object(D, "A(1,4)")
    with pytest.raises(rl.RepError):
        rl.realize_family_object(D, "B(3,3)")
    with pytest.raises(rl.RepError):
        rl.realize_family_object(A, "B(1,4)")
    with pytest.raises(rl.RepError):
        rl.realize_family_object(A, "A(2,40)")


def test_parse_object_label_spellings():
    assert rl.parse_object_label("A(2,5)") == ("A", 2, 5)
    assert rl.parse_object_label("B(1,7)") == ("B", 1, 7)
    assert rl.parse_object_label("A0(3)") == ("A0", 3)
    assert rl.parse_object_label("A^{(1)}_{4}") == ("A1", 4)
    assert rl.parse_object_label("A_{-2, 3}") == ("A", -2, 3)
    assert rl.parse_object_label(("A", 1, 2)) == ("A", 1, 2)
    for bad in ("A(3)", "C(1,2)", "A0(1,2)", "B(4)", "x"):
        with pytest.raises(rl.RepError):
            rl.parse_object_label(bad)


def test_projective_support_guard_on_family_windows():
    A = qv.truncate(qv.QuiverSpec.family_quiver("A_inf", orientation="linear-right"), 3)
    with pytest.raises(rl.RepError):
        # P_0 needs every vertex to its right, more than any finite window
        rl.projective_rep(A, QQ, 0)
    # against the arrows the support is a single vertex
    I0 = rl.injective_rep(A, QQ, 0)
    assert I0.dim_vector() == {0: 1}


def test_random_rep_is_seed_deterministic():
    tq = _fork()
    X = rl.random_rep(tq, QQ, random.Random(42))
    Y = rl.random_rep(tq, QQ, random.Random(42))
    assert X.dims == Y.dims and X.maps == Y.maps
    Z = rl.random_rep(tq, Field(5), random.Random(42))
    assert all(0 <= x < 5 for m in Z.maps.values() for row in m for x in row)


def test_path_action_composes():
    tq = _a3()
    P1 = rl.projective_rep(tq, QQ, 1)
    paths = qv.enumerate_paths(tq, 1, 3)
    assert len(paths) == 1
    m = rl.path_action(P1, paths[0])
    assert rl.la.shape(m, P1.at(1)) == (P1.at(3), P1.at(1))
    assert not rl.la.is_zero_mat(m, QQ)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000), st.integers(0, 10_000))
def test_hom_additive_in_either_argument(s1, s2):
    tq = _a3()
    F = Field(5)
    X = rl.random_rep(tq, F, random.Random(s1), max_dim=2)
    Y = rl.random_rep(tq, F, random.Random(s2), max_dim=2)
    Z = rl.random_rep(tq, F, random.Random(s1 ^ s2), max_dim=2)
    XY, _, _ = rl.direct_sum([X, Y])
    assert rl.hom_dim(XY, Z) == rl.hom_dim(X, Z) + rl.hom_dim(Y, Z)
    assert rl.ext1_dim(Z, XY) == rl.ext1_dim(Z, X) + rl.ext1_dim(Z, Y)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10_000))
def test_ext_from_projectives_vanishes(seed):
    tq = _fork()
    F = Field(5)
    T = rl.random_rep(tq, F, random.Random(seed), max_dim=3)
    for x in tq.vertices:
        assert rl.ext1_dim(rl.projective_rep(tq, F, x), T) == 0
        assert rl.ext1_dim(T, rl.injective_rep(tq, F, x)) == 0


def test_ext_data_cocycles():
    tq = _a3()
    F = QQ
    S1 = rl.simple_rep(tq, F, 1)
    S2 = rl.simple_rep(tq, F, 2)
    ed = rl.ExtData(S1, S2)
    assert ed.dim == 1
    (z,) = ed.basis_vectors()
    assert not ed.is_coboundary(z)
    assert ed.is_coboundary([F.zero] * ed.nrows)
    # the nontrivial class glues the two simples into the thin interval
    E = rl.Representation(tq, F, {1: 1, 2: 1}, {"a": [[F.one]]})
    thin = rl.realize_family_object(
        qv.truncate(qv.QuiverSpec.family_quiver("A_inf", orientation="linear-right"), 4),
        "A(1,2)")
    assert E.dim_vector() == thin.dim_vector()
    assert rl.is_indecomposable(E)
