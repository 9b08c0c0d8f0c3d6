import itertools

import pytest

from laguerre import (Circle, GeometryError, LaguerrePlane, affine,
                      canonical_pencil, ideal)


def test_build_counts():
    for q, npts, ncirc in ((3, 12, 27), (5, 30, 125), (2, 6, 8)):
        pl = LaguerrePlane(q)
        assert len(pl.points) == npts == q * q + q
        assert len(pl.circles) == ncirc == q ** 3
        for C in pl.circles:
            assert len(pl.circle_points(C)) == q + 1
    assert LaguerrePlane(2).gf.char2


def test_parallel():
    pl = LaguerrePlane(5)
    assert pl.parallel(affine(1, 0), affine(1, 4))
    assert pl.parallel(ideal(0), ideal(3))
    assert not pl.parallel(affine(1, 0), ideal(0))
    assert not pl.parallel(affine(1, 0), affine(2, 0))


def test_incident(plane5):
    assert plane5.incident(affine(2, 4), Circle(1, 0, 0))
    assert plane5.incident(ideal(1), Circle(1, 0, 0))
    assert not plane5.incident(affine(1, 3), Circle(1, 0, 0))


def test_circle_through_examples(plane5):
    assert plane5.circle_through(affine(0, 0), affine(1, 1), affine(2, 4)) == Circle(1, 0, 0)
    assert plane5.circle_through(affine(0, 0), affine(1, 1), ideal(0)) == Circle(0, 1, 0)
    with pytest.raises(GeometryError) as e:
        plane5.circle_through(affine(0, 0), affine(0, 1), affine(2, 4))
    assert e.value.code == "parallel_points"


def test_circle_through_all_triples_small():
    # every pairwise nonparallel triple joins into exactly one circle
    for q in (3, 5):
        pl = LaguerrePlane(q)
        for trip in itertools.combinations(pl.points, 3):
            if any(pl.parallel(u, v) for u, v in itertools.combinations(trip, 2)):
                continue
            C = pl.circle_through(*trip)
            assert all(pl.incident(p, C) for p in trip)
            brute = [D for D in pl.circles
                     if all(pl.incident(p, D) for p in trip)]
            assert brute == [C]


def test_intersection_examples(plane5):
    assert plane5.intersection(Circle(1, 0, 0), Circle(0, 0, 0)) == (affine(0, 0),)
    assert plane5.intersection(Circle(1, 0, 0), Circle(0, 0, 1)) == \
        (affine(1, 1), affine(4, 1))
    # equal leading coefficients share exactly the ideal point
    assert plane5.intersection(Circle(0, 0, 0), Circle(0, 0, 1)) == (ideal(0),)
    with pytest.raises(GeometryError):
        plane5.intersection(Circle(1, 0, 0), Circle(1, 0, 0))


def test_tangency_examples(plane5, plane2):
    assert plane5.tangent(Circle(1, 0, 0), Circle(0, 0, 0))
    assert not plane5.tangent(Circle(1, 0, 0), Circle(0, 0, 1))
    assert plane2.tangent(Circle(1, 0, 0), Circle(0, 0, 1))


def test_tangency_fast_path_agrees_with_counting():
    # both code paths on every circle pair
    for q in (2, 3, 5):
        pl = LaguerrePlane(q)
        for C1, C2 in itertools.combinations(pl.circles, 2):
            pts = pl.intersection(C1, C2)
            assert len(pts) == pl.intersection_size(C1, C2)
            assert pl.tangent(C1, C2) == (len(pts) == 1)
            assert all(pl.incident(p, C1) and pl.incident(p, C2) for p in pts)


def test_touching_circle_examples(plane5):
    K = Circle(0, 0, 0)
    assert plane5.touching_circle(ideal(0), K, affine(0, 1)) == Circle(0, 0, 1)
    assert plane5.touching_circle(affine(0, 0), K, affine(1, 1)) == Circle(1, 0, 0)
    with pytest.raises(GeometryError) as e:
        plane5.touching_circle(affine(0, 0), K, affine(0, 1))
    assert e.value.code == "parallel_points"
    with pytest.raises(GeometryError) as e:
        plane5.touching_circle(affine(0, 1), K, affine(1, 1))
    assert e.value.code == "not_on_circle"
    with pytest.raises(GeometryError) as e:
        plane5.touching_circle(affine(0, 0), K, affine(1, 0))
    assert e.value.code == "on_circle"


def test_touching_circle_uniqueness_brute():
    # oracle: filter all circles for the touching property
    pl = LaguerrePlane(3)
    for K in pl.circles:
        for p in pl.circle_points(K):
            for r in pl.points:
                if pl.incident(r, K) or pl.parallel(p, r):
                    continue
                brute = [C for C in pl.circles
                         if pl.incident(r, C) and C != K
                         and pl.intersection(C, K) == (p,)]
                assert brute == [pl.touching_circle(p, K, r)]


def test_parallel_point(plane5):
    K = Circle(1, 0, 0)
    assert plane5.parallel_point(affine(2, 3), K) == affine(2, 4)
    assert plane5.parallel_point(ideal(4), K) == ideal(1)
    assert plane5.parallel_point(affine(2, 4), K) == affine(2, 4)


def test_pencils(plane5):
    members = plane5.pencil_members(canonical_pencil(plane5))
    assert members == [Circle(0, 0, c) for c in range(5)]
    at_origin = plane5.pencil_members(plane5.pencil(affine(0, 0), Circle(0, 0, 0)))
    assert at_origin == [Circle(m, 0, 0) for m in range(5)]
    with pytest.raises(GeometryError):
        plane5.pencil(affine(0, 1), Circle(0, 0, 0))


def test_pencil_members_pairwise_touch_at_vertex():
    for q in (3, 5):
        pl = LaguerrePlane(q)
        for K in pl.circles:
            for p in pl.circle_points(K):
                members = pl.pencil_members(pl.pencil(p, K))
                assert len(members) == q
                for M, N in itertools.combinations(members, 2):
                    assert pl.intersection(M, N) == (p,)


def test_joining_pencil(plane5):
    joined = plane5.joining_pencil(affine(0, 0), affine(1, 1))
    assert len(joined) == 5
    assert all(plane5.incident(affine(0, 0), C) and plane5.incident(affine(1, 1), C)
               for C in joined)
    assert plane5.joining_pencil(ideal(1), affine(0, 0)) == \
        [Circle(1, b, 0) for b in range(5)]
    with pytest.raises(GeometryError):
        plane5.joining_pencil(affine(0, 0), affine(0, 1))


def test_pencil_tangent_examples(plane5):
    pencil = canonical_pencil(plane5)
    assert plane5.pencil_tangent(Circle(1, 3, 1), pencil) == \
        (Circle(0, 0, 0), affine(1, 0))
    assert plane5.pencil_tangent(Circle(1, 0, 0), pencil) == \
        (Circle(0, 0, 0), affine(0, 0))


def test_pencil_tangent_char2_fails_with_witnesses(plane2):
    pencil = canonical_pencil(plane2)
    with pytest.raises(GeometryError) as e:
        plane2.pencil_tangent(Circle(1, 0, 0), pencil)
    assert e.value.code == "a3_char2"
    assert e.value.witnesses[0]["tangent_members"] == [[0, 0, 0], [0, 0, 1]]
    # every vertex-avoiding circle has 0 or 2 tangent members in char 2
    for C in plane2.circles:
        if plane2.incident(ideal(0), C):
            continue
        count = len(plane2.tangent_members(pencil, C))
        assert count == (2 if C.b == 0 else 0)


def test_verify_axioms_pass_small():
    for q in (2, 3, 5):
        rep = LaguerrePlane(q).verify_axioms()
        assert rep.status == "pass"
        assert not rep.witnesses


def test_derived_affine_ideal_center(plane5):
    da = plane5.derived_affine(ideal(0))
    assert len(da.points) == 25
    assert len(da.lines) == 30
    assert da.report.status == "pass"


def test_derived_affine_every_center_q5(plane5):
    for p in plane5.points:
        da = plane5.derived_affine(p)
        assert len(da.points) == 25
        assert len(da.lines) == 30
        assert da.report.status == "pass"


def test_derived_affine_q3_affine_center(plane3):
    da = plane3.derived_affine(affine(0, 0))
    assert len(da.points) == 9
    assert len(da.lines) == 12
    assert da.report.status == "pass"


def test_plane_json_stable(plane3):
    blob = plane3.to_json()
    assert blob["q"] == 3
    assert blob["points"][0] == {"t": "A", "x": 0, "y": 0}
    assert blob["points"][-1] == {"t": "I", "a": 2}
    assert blob["circles"] == sorted(blob["circles"])
    assert blob["generators"][-1] == {"t": "I"}
