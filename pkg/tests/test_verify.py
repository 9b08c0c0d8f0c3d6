import pytest

from laguerre import (Circle, GeometryError, LaguerrePlane, affine,
                      canonical_pencil, ideal, thm_check, thm_equiv_rel,
                      thm_tangency_locus)
from laguerre.verify import CHECK_IDS, CHECK_SUMMARIES


def test_catalog_is_closed():
    assert len(CHECK_IDS) == 29
    assert len(set(CHECK_IDS)) == 29
    assert set(CHECK_SUMMARIES) == set(CHECK_IDS)


def test_unknown_id_rejected():
    with pytest.raises(GeometryError) as e:
        thm_check("P9.9", 5)
    assert e.value.code == "bad_check"
    with pytest.raises(GeometryError):
        thm_check("P4.4", 2)


def test_equiv_rel_examples(plane5):
    member = Circle(0, 0, 0)
    partition, rep = thm_equiv_rel(plane5, member)
    assert rep.status == "pass"
    cls = partition.classes
    assert cls[affine(0, 1)] == cls[affine(3, 4)]          # 4/1 is a square
    assert cls[affine(0, 1)] != cls[affine(0, 2)]          # 2 is a nonsquare
    assert cls[ideal(1)] == cls[affine(2, 4)]
    assert len(partition.blocks()) == 2


def test_equiv_two_circle_count(plane5):
    # exactly two tangent circles through an equivalent (ideal, affine) pair
    member = Circle(0, 0, 0)
    hits = [C for C in plane5.circles
            if plane5.incident(ideal(1), C) and plane5.incident(affine(2, 4), C)
            and C != member and plane5.tangent(C, member)]
    assert sorted(hits) == [Circle(1, 0, 0), Circle(1, 2, 1)]


def test_equiv_rel_brute_force_agrees_with_rule():
    # independent of the mask machinery: quantify the definition directly
    pl = LaguerrePlane(5)
    member = Circle(0, 0, 1)
    tangents = [C for C in pl.circles if C != member and pl.tangent(C, member)]
    off = [p for p in pl.points if not pl.incident(p, member)]

    def equivalent(a, b):
        ps = [C for C in tangents if pl.incident(a, C)]
        qs = [C for C in tangents if pl.incident(b, C)]
        return all(C1 == C2 or pl.intersection_size(C1, C2) >= 1
                   for C1 in ps for C2 in qs)

    partition, rep = thm_equiv_rel(pl, member)
    assert rep.status == "pass"
    for a in off:
        for b in off:
            if a == b:
                continue
            assert equivalent(a, b) == (partition.classes[a] == partition.classes[b])


def test_equiv_rel_rejects_bad_input(plane5, plane2):
    with pytest.raises(GeometryError):
        thm_equiv_rel(plane5, Circle(1, 0, 0))
    with pytest.raises(GeometryError):
        thm_equiv_rel(plane2, Circle(0, 0, 0))


def test_tangency_locus_examples(plane5, plane7):
    pencil5 = canonical_pencil(plane5)
    locus, rep = thm_tangency_locus(plane5, pencil5, ideal(1), affine(0, 0))
    assert rep.status == "pass"
    assert locus == Circle(4, 0, 0)
    assert plane5.incident(ideal(4), locus)

    locus, rep = thm_tangency_locus(plane5, pencil5, ideal(2), affine(1, 1))
    assert rep.status == "pass"
    assert locus.a == 3

    locus, rep = thm_tangency_locus(plane7, canonical_pencil(plane7),
                                    ideal(1), affine(0, 0))
    assert locus == Circle(6, 0, 0)


def test_tangency_locus_brute_base_points(plane5):
    # oracle: base points recomputed by scanning every pencil member
    pencil = canonical_pencil(plane5)
    members = plane5.pencil_members(pencil)
    q_ideal, x = ideal(1), affine(0, 0)
    bases = []
    for N in plane5.joining_pencil(q_ideal, x):
        hits = [pt for M in members if M != N
                for pt in [plane5.intersection(M, N)]
                if len(pt) == 1 for pt in pt]
        assert len(hits) == 1
        bases.append(hits[0])
    locus, _ = thm_tangency_locus(plane5, pencil, q_ideal, x)
    assert set(bases) == {p for p in plane5.circle_points(locus)
                          if p.kind != "I"}


def test_tangency_locus_rejects_bad_vertex(plane5):
    pencil = canonical_pencil(plane5)
    with pytest.raises(GeometryError):
        thm_tangency_locus(plane5, pencil, ideal(0), affine(0, 0))
    with pytest.raises(GeometryError):
        thm_tangency_locus(plane5, pencil, affine(0, 1), affine(0, 0))


def test_spot_checks_q5():
    rep = thm_check("P2.5", 5)
    assert rep.status == "pass"
    assert rep.cases_checked == 105  # 100 proper + 5 straight circle lines
    rep = thm_check("T4.2", 5)
    assert rep.status == "pass"
    rep = thm_check("T3.2", 5)
    assert rep.status == "pass"


def test_l3_1_report_only():
    for q in (3, 5, 7):
        rep = thm_check("L3.1", q)
        assert rep.status == "report_only"
        assert rep.details["translation_count"] == q * q - 1
        assert rep.details["glide_count"] == q * (q - 1)
        assert rep.details["glides_never_translations"] is True
        assert rep.reading_notes and "report-only" in rep.reading_notes
        assert not rep.witnesses


def test_c2_1_reports_scope(plane3):
    rep = thm_check("C2.1", 3)
    assert rep.status == "pass"
    # at q = 3 invariance is weaker, so circles missing the fixed point occur
    assert rep.details["invariant_missing_fixed_point"] > 0
    rep5 = thm_check("C2.1", 5)
    assert rep5.details["invariant_missing_fixed_point"] == 0


def test_p4_x_family_at_q11():
    for cid in ("P4.4", "P4.5", "P4.6", "P4.7", "R4.1"):
        rep = thm_check(cid, 11)
        assert rep.status == "pass", (cid, rep.witnesses[:2])
