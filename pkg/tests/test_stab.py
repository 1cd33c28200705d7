from __future__ import annotations

import random

import pytest

from singcat.exact_linalg import Matrix, rank
from singcat.homology import (
    ext,
    is_stably_zero_module,
    stable_hom,
    syzygy,
    syzygy_morphism,
)
from singcat.quiver_algebra import nakayama_cyclic
from singcat.rep import (
    Representation,
    injective_module,
    is_isomorphic,
    projective_module,
    projectives,
    simple_module,
)
from singcat.stab import (
    GpCertificate,
    OrbitNotResolved,
    StableObject,
    gp_certificate,
    gp_intersection_check,
    is_iwanaga_gorenstein,
    skeleton,
    stab_hom,
    stabilize_angle,
    standard_triangle,
)
from singcat.tilting import SubcatSpec, standard_angle


def jordan_module(alg, i):
    """k[x]/(x^i) as a module over k[x]/(x^n), i <= n."""
    f = alg.field
    rows = [[f.one if c == r + 1 else f.zero for c in range(i)]
            for r in range(i)]
    return Representation(alg, {"0": i}, {"a0": Matrix.from_rows(f, rows, i)})


def jordan_spec(alg, n):
    mods = [jordan_module(alg, i) for i in range(1, n + 1)]
    return SubcatSpec(alg, mods, 1, labels=[f"M{i}" for i in range(1, n + 1)])


def test_shift_arithmetic_on_stable_objects(kx2):
    S = simple_module(kx2, "0")
    x = StableObject(S, 3)
    assert x.suspend().shift == 2
    assert x.loop().shift == 4
    assert x.suspend().module is S


def test_truncated_polynomial_skeletons_match_brute_force():
    """For k[x]/(x^n) the stable category has modules M_1..M_{n-1}, the
    syzygy swaps M_i with M_{n-i}, and the class count is always n-1."""
    from singcat.exact_linalg import rational_field
    QQ = rational_field()
    for n in (2, 3, 4, 5):
        alg = nakayama_cyclic((n,), QQ)
        spec = jordan_spec(alg, n)
        rep = skeleton(spec)
        assert [lbl for lbl, _ in rep.zero_classes] == [f"M{n}"]
        assert rep.count == n - 1
        for i in range(1, n):
            om = syzygy(jordan_module(alg, i), 1)
            assert is_isomorphic(om, jordan_module(alg, n - i))
        # stable hom dims against the closed formula, via the skeleton matrix
        def sdim(i, j):
            return min(i, j) - max(0, i + j - n)
        sizes = [c.representative.module.total_dim for c in rep.classes]
        for a, i in enumerate(sizes):
            for b, j in enumerate(sizes):
                assert rep.hom_matrix[a][b] == sdim(i, j)
        assert all(rep.hom_matrix[a][a] >= 1 for a in range(rep.count))


def test_hereditary_skeleton_is_empty(hereditary_a2):
    Pu = projective_module(hereditary_a2, "u")
    Pv = projective_module(hereditary_a2, "v")
    Su = simple_module(hereditary_a2, "u")
    Sv = simple_module(hereditary_a2, "v")
    spec = SubcatSpec(hereditary_a2, [Pu, Pv, Su, Sv], 1,
                      labels=["Pu", "Pv", "Su", "Sv"])
    rep = skeleton(spec)
    assert rep.count == 0
    assert rep.hom_matrix == []
    assert sorted(lbl for lbl, _ in rep.zero_classes) == [
        "Pu", "Pv", "Su", "Sv"]
    assert all(c.status == "finite" for _, c in rep.zero_classes)


def test_orbit_skeleton_classes_and_zero_classes(orbit_spec):
    rep = skeleton(orbit_spec, claimed_count=4)
    assert rep.count == 3
    assert rep.claimed_count == 4
    assert rep.count_discrepancy
    assert rep.discrepancy_note is not None
    assert "3" in rep.discrepancy_note and "4" in rep.discrepancy_note
    # one 3-cycle of second syzygies carries every surviving generator
    assert [c.orbit_length for c in rep.classes] == [3, 3, 3]
    assert [c.shift_period for c in rep.classes] == [6, 6, 6]
    first = rep.classes[0].cycle_labels
    assert first == ["(0,0,0)", "(2,3,3)", "(1,1,2)"]
    assert rep.hom_matrix == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    nonproj_zero = sorted(l for l, c in rep.zero_classes if c.n > 0)
    assert nonproj_zero == ["(1,2,2)", "(2,2,2)", "(3,3,3)", "(3,3,4)"]
    proj_zero = sorted(l for l, c in rep.zero_classes if c.n == 0)
    assert proj_zero == sorted(
        ["(0,0,1)", "(0,1,1)", "(0,0,2)", "(0,1,2)", "(0,2,2)", "(1,1,3)",
         "(1,2,3)", "(1,3,3)", "(2,2,4)", "(2,3,4)", "(2,4,4)"])


def test_orbit_skeleton_membership_covers_every_generator(orbit_spec):
    rep = skeleton(orbit_spec)
    assert set(rep.membership) == set(orbit_spec.labels)
    for lbl in orbit_spec.labels:
        kind, idx = rep.membership[lbl]
        if kind == "zero":
            assert idx is None
        else:
            assert 0 <= idx < rep.count
    # tail generators land on the cycle with the shift bookkeeping
    assert rep.membership["(3,4,4)"] == ("class", 0)
    assert rep.membership["(1,1,1)"][0] == "class"
    tail_lines = [s for s in rep.identification if "(3,4,4)" in s]
    assert tail_lines and "-6" in tail_lines[0]


def test_orbit_skeleton_count_without_claim_is_not_flagged(orbit_spec):
    rep = skeleton(orbit_spec)
    assert rep.claimed_count is None
    assert not rep.count_discrepancy
    assert rep.discrepancy_note is None


def test_claim_tags_on_the_spec_are_read(orbit_spec):
    tagged = SubcatSpec(orbit_spec.algebra, orbit_spec.generators, 2,
                        labels=orbit_spec.labels,
                        claims=["skeleton_count=4"])
    rep = skeleton(tagged)
    assert rep.claimed_count == 4
    assert rep.count_discrepancy


def test_all_shifts_variant_triples_the_count(orbit_spec):
    rep = skeleton(orbit_spec, all_shifts=True)
    assert rep.count == 6
    shifts = sorted(c.representative.shift for c in rep.classes)
    assert shifts == [0, 0, 0, 1, 1, 1]


def test_stab_hom_detects_identified_and_distinct_shifts(orbit_spec):
    M = orbit_spec.by_label("(0,0,0)")
    for t in (0, 1, 2, 3, 4):
        h = stab_hom(StableObject(M, 0), StableObject(M, 2 * t), orbit_spec)
        assert h.status == "certified"
        assert h.dim == (1 if t % 3 == 0 else 0)
    end = stab_hom(StableObject(M, 0), StableObject(M, 0), orbit_spec)
    assert end.route == "identity_end"
    # the clean-tail criterion fails on this orbit (odd stages are dirty),
    # which is exactly why the periodicity routes exist
    assert end.criterion_holds is False
    zero = stab_hom(StableObject(M, 0), StableObject(M, 2), orbit_spec)
    assert zero.route == "zero_tail"


def test_stab_hom_vanishes_against_finite_dimension_classes(orbit_spec):
    M = orbit_spec.by_label("(0,0,0)")
    Z = orbit_spec.by_label("(2,2,2)")
    h = stab_hom(StableObject(Z, 0), StableObject(M, 0), orbit_spec)
    assert (h.status, h.dim, h.route) == ("certified", 0, "side_vanishes")
    h = stab_hom(StableObject(M, 0), StableObject(Z, 4), orbit_spec)
    assert (h.status, h.dim) == ("certified", 0)


def test_stab_hom_respects_the_loop_identification(orbit_spec):
    """(X, n) and (loop X, n-1) have the same Homs against every test."""
    M = orbit_spec.by_label("(0,0,0)")
    OX = syzygy(M, 1)
    tests = [StableObject(M, 0), StableObject(orbit_spec.by_label("(2,3,3)"), 0),
             StableObject(orbit_spec.by_label("(1,1,2)"), 2)]
    for T in tests:
        a = stab_hom(StableObject(M, 2), T, orbit_spec)
        b = stab_hom(StableObject(OX, 1), T, orbit_spec)
        assert a.status == b.status == "certified"
        assert a.dim == b.dim


def test_clean_tail_certification_is_uniform_in_the_target():
    """Over k[x]/(x^3) the source-side criterion certifies at stage 0 no
    matter which generator sits on the other side."""
    from singcat.exact_linalg import rational_field
    alg = nakayama_cyclic((3,), rational_field())
    spec = jordan_spec(alg, 3)
    M1, M2 = spec.generators[0], spec.generators[1]
    stages = []
    for y in (M1, M2):
        h = stab_hom(StableObject(M1, 0), StableObject(y, 0), spec)
        assert h.route == "orthogonal_tail"
        assert h.criterion_holds
        stages.append(h.stage)
    assert stages == [0, 0]
    assert stab_hom(StableObject(M1, 0), StableObject(M2, 0), spec).dim == 1


def test_stab_hom_with_tiny_horizon_is_undetermined(orbit_spec):
    M = orbit_spec.by_label("(0,0,0)")
    h = stab_hom(StableObject(M, 0), StableObject(M, 0), orbit_spec,
                 horizon=1)
    assert h.status == "undetermined"
    assert h.dim is None


def test_skeleton_raises_when_the_orbit_leaves_the_list(orbit_spec):
    alg = orbit_spec.algebra
    lone = SubcatSpec(alg, [orbit_spec.by_label("(0,0,0)")], 2,
                      labels=["(0,0,0)"])
    with pytest.raises(OrbitNotResolved):
        skeleton(lone)


def test_skeleton_raises_at_a_hopeless_horizon(orbit_spec):
    with pytest.raises(OrbitNotResolved):
        skeleton(orbit_spec, horizon=1)


def test_zero_class_certificates_are_sound(orbit_spec):
    rep = skeleton(orbit_spec)
    for lbl, cert in rep.zero_classes:
        assert cert.status == "finite"
        g = orbit_spec.by_label(lbl)
        assert is_stably_zero_module(syzygy(g, cert.n))
    for c in rep.classes:
        from singcat.homology import pd_certificate
        assert pd_certificate(c.representative.module).status == \
            "infinite_periodic"


def test_syzygy_permutes_skeleton_classes(orbit_spec):
    """Advancing a class representative by the degree shifts it one spot
    along its cycle, so the induced map on classes is a bijection."""
    rep = skeleton(orbit_spec)
    images = []
    for c in rep.classes:
        im = syzygy(c.representative.module, orbit_spec.d)
        hits = [idx for idx, o in enumerate(rep.classes)
                if stable_hom(im, o.representative.module).dim > 0
                and stable_hom(o.representative.module, im).dim > 0]
        assert len(hits) == 1
        images.append(hits[0])
    assert sorted(images) == list(range(rep.count))


def test_standard_triangle_signs_and_shifts(orbit_spec):
    E = orbit_spec.by_label("(0,0,0)")
    tr = standard_triangle(E)
    assert [o.shift for o in tr.objects] == [0, 0, 0]
    assert tr.connecting_sign == 1
    assert tr.objects[2].module is E
    comp = tr.maps[0].compose(tr.maps[1])
    assert comp.is_zero()
    shifted = standard_triangle(E, k=1)
    assert [o.shift for o in shifted.objects] == [-1, -1, -1]
    assert shifted.connecting_sign == -1
    # odd shift negates the maps but exactness data is unchanged
    assert shifted.maps[0].compose(shifted.maps[1]).is_zero()
    assert not shifted.maps[1].is_zero()
    double = standard_triangle(E, k=2)
    assert double.connecting_sign == 1


def test_pushing_an_angle_into_the_stabilization(orbit_spec):
    ang = standard_angle(orbit_spec, orbit_spec.by_label("(4,4,4)"))
    st = stabilize_angle(ang, k=3)
    assert len(st.objects) == len(ang.objects)
    assert all(o.shift == -3 for o in st.objects)
    assert st.connecting_sign == -1
    for a, b in zip(st.maps, st.maps[1:]):
        assert a.compose(b).is_zero()
    plain = stabilize_angle(ang)
    assert plain.connecting_sign == 1
    assert plain.maps[0] is ang.maps[0]


def test_gorenstein_verdicts_on_the_small_algebras(kx2, hereditary_a2):
    g = is_iwanaga_gorenstein(kx2)
    assert g.verdict == "gorenstein"
    assert g.bound == 0
    h = is_iwanaga_gorenstein(hereditary_a2)
    assert h.verdict == "gorenstein"
    assert h.bound <= 1


def test_orbit_algebra_is_not_gorenstein(orbit_spec):
    report = is_iwanaga_gorenstein(orbit_spec.algebra)
    assert report.verdict == "not_gorenstein"
    assert "(3,4)" in report.witnesses
    assert report.injective_pd["(3,4)"].status == "infinite_periodic"
    # that injective is the interval module (3,4,4)
    I = injective_module(orbit_spec.algebra, "(3,4)")
    assert is_isomorphic(I, orbit_spec.by_label("(3,4,4)"))


def test_gp_certificates_on_the_small_algebras(kx2, hereditary_a2):
    S = simple_module(kx2, "0")
    cert = gp_certificate(S)
    assert cert.status == "gp_certified"
    assert (cert.preperiod, cert.period) == (0, 1)
    assert gp_certificate(projective_module(kx2, "0")).status == \
        "gp_certified"
    bad = gp_certificate(simple_module(hereditary_a2, "u"))
    assert bad.status == "not_gp"
    assert bad.witness == (1, "v")


def test_gp_witness_for_the_base_interval(orbit_spec):
    cert = gp_certificate(orbit_spec.by_label("(0,0,0)"))
    assert cert.status == "not_gp"
    assert cert.witness == (6, "(0,1)")
    deg, v = cert.witness
    M = orbit_spec.by_label("(0,0,0)")
    assert ext(M, projective_module(orbit_spec.algebra, v), deg).dim == 1
    for i in range(1, deg):
        for w, P in projectives(orbit_spec.algebra):
            assert ext(M, P, i).dim == 0


def test_gp_intersection_report_on_kx2(kx2):
    S = simple_module(kx2, "0")
    P = projective_module(kx2, "0")
    spec = SubcatSpec(kx2, [S, P], 1, labels=["S", "P"])
    rep = gp_intersection_check(spec)
    assert rep.gp_labels == ["S", "P"]
    assert rep.rigid.ok and rep.closure.ok
    assert rep.sigma_bijective
    assert rep.hypothesis == "certified"


def test_gp_intersection_report_on_the_orbit_algebra(orbit_spec):
    rep = gp_intersection_check(orbit_spec)
    assert rep.hypothesis == "failed"
    assert rep.gorenstein.verdict == "not_gorenstein"
    # only the projective generators certify; all survivors carry witnesses
    proj_labels = sorted(
        l for l, c in skeleton(orbit_spec).zero_classes if c.n == 0)
    assert sorted(rep.gp_labels) == proj_labels
    assert rep.rigid.ok and rep.closure.ok
    assert rep.sigma_bijective
    for lbl in ("(0,0,0)", "(2,3,3)", "(1,1,2)", "(2,2,2)"):
        assert rep.statuses[lbl].status == "not_gp"


def test_random_shift_pairs_certify_consistently(orbit_spec):
    rng = random.Random(11)
    M = orbit_spec.by_label("(0,0,0)")
    for _ in range(12):
        s = 2 * rng.randrange(0, 6)
        t = 2 * rng.randrange(0, 6)
        h = stab_hom(StableObject(M, s), StableObject(M, t), orbit_spec)
        assert h.status == "certified"
        assert h.dim == (1 if (s - t) % 6 == 0 else 0)
