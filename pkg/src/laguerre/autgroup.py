"""The group of plane automorphisms fixing a tangency pencil.

For the canonical pencil (vertex ``(inf,0)`` on the circle ``y = 0``) the
group is parametrized by triples ``(k, t, g)`` with ``k != 0`` acting as

    (x, y)    ->  (k x + t,  k^2 y + g)
    (inf, a)  ->  (inf, a)
    (a, b, c) ->  (a,  k b - 2 a t,  a t^2 - k b t + k^2 c + g)

so it fixes the ideal generator pointwise and permutes the pencil members
among themselves.  Any other pencil is handled by conjugating with a
normalizing plane automorphism assembled from two primitives: adding a
fixed quadratic to every y-coordinate, and the x-coordinate inversion
``(x, y) -> (1/x, y/x^2)`` that swaps the ideal generator with ``x = 0``.
Each normalizer is verified to be a plane automorphism by an exhaustive
circle-image check before it is used.
"""

from __future__ import annotations

from typing import Iterable, NamedTuple

from .field import GF
from .plane import (AFFINE, Circle, GeometryError, IDEAL, LaguerrePlane, Pencil,
                    Point, affine, canonical_pencil, ideal)
from .report import FAIL, PASS, Report, timed


class PencilAut(NamedTuple):
    k: int
    t: int
    g: int


IDENTITY = PencilAut(1, 0, 0)

# classification tags, decided by (k, t, g) alone
AUT_CLASSES = (
    "identity",
    "translation_generators",
    "translation_circle_direction",
    "strain",
    "symmetry",
    "glide",
)


def aut_point(gf: GF, f: PencilAut, pt: Point) -> Point:
    if pt.kind == IDEAL:
        return pt
    q = gf.q
    return affine((f.k * pt.x + f.t) % q, (f.k * f.k * pt.y + f.g) % q)


def aut_circle(gf: GF, f: PencilAut, C: Circle) -> Circle:
    q = gf.q
    k, t, g = f
    return Circle(C.a, (k * C.b - 2 * C.a * t) % q,
                  (C.a * t * t - k * C.b * t + k * k * C.c + g) % q)


def aut_compose(gf: GF, f: PencilAut, h: PencilAut) -> PencilAut:
    """The automorphism acting as ``f`` after ``h``."""
    q = gf.q
    return PencilAut((f.k * h.k) % q, (f.k * h.t + f.t) % q,
                     (f.k * f.k * h.g + f.g) % q)


def aut_inverse(gf: GF, f: PencilAut) -> PencilAut:
    q = gf.q
    ki = gf.inv(f.k)
    return PencilAut(ki, (-f.t * ki) % q, (-f.g * ki * ki) % q)


def classify_aut(gf: GF, f: PencilAut) -> str:
    """Tag by parameters; the fixed-point scan oracle must agree (tested)."""
    k, t, g = f
    if k == 1:
        if t == 0:
            return "identity" if g == 0 else "translation_generators"
        return "translation_circle_direction"
    if k == gf.q - 1:
        return "symmetry" if g == 0 else "glide"
    return "strain"


def classify_by_scan(plane: LaguerrePlane, point_map: dict[Point, Point]) -> str:
    """Classify an automorphism fixing the ideal generator purely by its
    fixed points and fixed generators (no parameter knowledge)."""
    fixed_affine = [p for p in plane.points
                    if p.kind == AFFINE and point_map[p] == p]
    gens = [plane.generator_points(g) for g in plane.generators if g.kind == AFFINE]
    fixed_setwise = [gp for gp in gens
                     if {point_map[p] for p in gp} == set(gp)]
    fixed_pointwise = [gp for gp in fixed_setwise
                       if all(point_map[p] == p for p in gp)]
    if len(fixed_affine) == plane.q * plane.q:
        return "identity"
    if not fixed_affine:
        if len(fixed_setwise) == len(gens):
            return "translation_generators"
        return "glide" if fixed_setwise else "translation_circle_direction"
    if fixed_pointwise:
        return "symmetry"
    if len(fixed_affine) == 1:
        return "strain"
    raise GeometryError("unclassifiable automorphism", code="unclassifiable")


class PermutationMap:
    """An explicit point permutation that must carry circles to circles.

    This is the closed-form-free oracle: it knows nothing about parameters,
    only point images, and derives circle images by point-set lookup.
    """

    def __init__(self, plane: LaguerrePlane, point_map: dict[Point, Point]):
        self.plane = plane
        self.point_map = point_map

    def apply_point(self, pt: Point) -> Point:
        return self.point_map[pt]

    def apply_circle(self, C: Circle) -> Circle:
        img = frozenset(self.point_map[p] for p in self.plane.circle_points(C))
        out = self.plane.circle_from_point_set(img)
        if out is None:
            raise GeometryError(f"image of {C} is not a circle", code="not_automorphism")
        return out

    def verify(self) -> tuple[bool, list]:
        """Bijectivity plus circles-to-circles and generators-to-generators."""
        plane = self.plane
        witnesses = []
        if set(self.point_map) != set(plane.points) or \
                set(self.point_map.values()) != set(plane.points):
            witnesses.append({"problem": "not_bijective"})
            return False, witnesses
        for C in plane.circles:
            img = frozenset(self.point_map[p] for p in plane.circle_points(C))
            if plane.circle_from_point_set(img) is None:
                witnesses.append({"problem": "circle_image", "circle": list(C)})
        for g in plane.generators:
            img = {self.point_map[p] for p in plane.generator_points(g)}
            if not any(img == set(plane.generator_points(h)) for h in plane.generators):
                witnesses.append({"problem": "generator_image", "generator": g.to_json()})
        return not witnesses, witnesses

    def compose(self, other: "PermutationMap") -> "PermutationMap":
        """self after other."""
        return PermutationMap(self.plane,
                              {p: self.point_map[q] for p, q in other.point_map.items()})

    def inverse(self) -> "PermutationMap":
        return PermutationMap(self.plane, {v: k for k, v in self.point_map.items()})

    @classmethod
    def from_aut(cls, plane: LaguerrePlane, f: PencilAut) -> "PermutationMap":
        return cls(plane, {p: aut_point(plane.gf, f, p) for p in plane.points})


def _verified_map(plane: LaguerrePlane, point_map: dict[Point, Point]) -> PermutationMap:
    pm = PermutationMap(plane, point_map)
    ok, wit = pm.verify()
    if not ok:
        raise GeometryError("normalizer primitive is not an automorphism",
                            code="not_automorphism", witnesses=wit)
    return pm


def circle_add_map(plane: LaguerrePlane, Q: Circle) -> PermutationMap:
    """(x, y) -> (x, y + Q(x)); shifts every circle by the coefficients of Q."""
    q = plane.q
    point_map: dict[Point, Point] = {}
    for p in plane.points:
        if p.kind == IDEAL:
            point_map[p] = ideal((p.x + Q.a) % q)
        else:
            point_map[p] = affine(p.x, (p.y + plane.evaluate(Q, p.x)) % q)
    return _verified_map(plane, point_map)


def inversion_map(plane: LaguerrePlane) -> PermutationMap:
    """(x, y) -> (1/x, y/x^2), swapping the ideal generator with x = 0."""
    gf = plane.gf
    point_map: dict[Point, Point] = {}
    for p in plane.points:
        if p.kind == IDEAL:
            point_map[p] = affine(0, p.x)
        elif p.x == 0:
            point_map[p] = ideal(p.y)
        else:
            xi = gf.inv(p.x)
            point_map[p] = affine(xi, (p.y * xi * xi) % gf.q)
    return _verified_map(plane, point_map)


def x_shift_map(plane: LaguerrePlane, t: int) -> PermutationMap:
    return _verified_map(plane, {p: aut_point(plane.gf, PencilAut(1, t, 0), p)
                                 for p in plane.points})


class DeltaGroup:
    """The pencil-fixing group: elements, action, census, and axiom checks."""

    def __init__(self, plane: LaguerrePlane, pencil: Pencil,
                 elements: list[PencilAut], normalizer: PermutationMap | None):
        self.plane = plane
        self.pencil = pencil
        self.elements = elements
        self.normalizer = normalizer
        self._norm_inv = normalizer.inverse() if normalizer is not None else None
        self.gf = plane.gf

    # -- construction -----------------------------------------------------

    @classmethod
    def build(cls, plane: LaguerrePlane, pencil: Pencil) -> "DeltaGroup":
        if plane.gf.char2:
            raise GeometryError("the pencil-fixing group needs odd q",
                                code="char2_group")
        q = plane.q
        elements = [PencilAut(k, t, g)
                    for k in range(1, q) for t in range(q) for g in range(q)]
        p, K = pencil
        if p == ideal(0) and K.a == 0 and K.b == 0:
            return cls(plane, pencil, elements, None)
        if p.kind == IDEAL:
            # vertex already ideal: shift the whole coordinate chart by K
            norm = circle_add_map(plane, K)
        else:
            norm = circle_add_map(plane, K).compose(
                x_shift_map(plane, p.x)).compose(inversion_map(plane))
        group = cls(plane, pencil, elements, norm)
        # the normalizer must carry the canonical pencil onto the target one
        base = canonical_pencil(plane)
        assert norm.apply_point(base.p) == p
        assert norm.apply_circle(base.base) == K
        want = {frozenset(plane.circle_points(M))
                for M in plane.pencil_members(pencil)}
        got = {frozenset(norm.apply_point(x) for x in plane.circle_points(M))
               for M in plane.pencil_members(base)}
        assert want == got
        return group

    @property
    def canonical(self) -> bool:
        return self.normalizer is None

    # -- the action ---------------------------------------------------------

    def apply(self, f: PencilAut, obj):
        """Act on a Point or a Circle (conjugated when non-canonical)."""
        gf = self.gf
        if isinstance(obj, Circle):
            if self.normalizer is None:
                return aut_circle(gf, f, obj)
            inner = aut_circle(gf, f, self._norm_inv.apply_circle(obj))
            return self.normalizer.apply_circle(inner)
        if self.normalizer is None:
            return aut_point(gf, f, obj)
        inner = aut_point(gf, f, self._norm_inv.apply_point(obj))
        return self.normalizer.apply_point(inner)

    def compose(self, f: PencilAut, h: PencilAut) -> PencilAut:
        return aut_compose(self.gf, f, h)

    def inverse(self, f: PencilAut) -> PencilAut:
        return aut_inverse(self.gf, f)

    def classify(self, f: PencilAut) -> str:
        return classify_aut(self.gf, f)

    def census(self) -> dict[str, int]:
        out = {tag: 0 for tag in AUT_CLASSES}
        for f in self.elements:
            out[self.classify(f)] += 1
        return out

    # -- orbits and stabilizers ---------------------------------------------

    def base_generator_points(self) -> set[Point]:
        return set(self.plane.generator_points(self.plane.generator_of(self.pencil.p)))

    def space_points(self) -> list[Point]:
        """Points off the vertex generator (the residual point set)."""
        bad = self.base_generator_points()
        return [p for p in self.plane.points if p not in bad]

    def stabilizer(self, x: Point) -> list[PencilAut]:
        if x in self.base_generator_points():
            raise GeometryError("point lies on the fixed generator; its "
                                "stabilizer is the whole group",
                                code="stabilizer_on_base")
        return [f for f in self.elements if self.apply(f, x) == x]

    def orbit(self, subset: Iterable[PencilAut], x: Point) -> set[Point]:
        return {self.apply(f, x) for f in subset}

    # -- structure checks -----------------------------------------------

    def normally_transitive(self, points: list[Point] | None = None,
                            elements: list[PencilAut] | None = None
                            ) -> tuple[bool, dict | None]:
        """Transitive, and every ordered pair has a stabilizer separator."""
        pts = points if points is not None else self.space_points()
        els = elements if elements is not None else self.elements
        if len(pts) >= 1:
            reached = {self.apply(f, pts[0]) for f in els}
            if not set(pts) <= reached:
                missing = sorted(set(pts) - reached)[0]
                return False, {"problem": "not_transitive", "from": repr(pts[0]),
                               "unreached": repr(missing)}
        stabs = {x: frozenset(f for f in els if self.apply(f, x) == x) for x in pts}
        for x in pts:
            for y in pts:
                if x != y and not (stabs[x] - stabs[y]):
                    return False, {"problem": "no_separating_element",
                                   "x": repr(x), "y": repr(y)}
        return True, None

    def semidirect_factorization(self, r: Point) -> bool:
        """Every element splits uniquely as (k=1 translation) o (stabilizer of r)."""
        translations = [f for f in self.elements if f.k == 1]
        stab = self.stabilizer(r)
        products = {self.compose(t, s) for t in translations for s in stab}
        return len(translations) * len(stab) == len(self.elements) and \
            products == set(self.elements)

    def verify_axioms(self) -> Report:
        return verify_a1a2a3(self.plane, self.pencil, self)

    # -- export -------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "q": self.plane.q,
            "pencil": {"p": self.pencil.p.to_json(), "K": list(self.pencil.base)},
            "elements": sorted([f.k, f.t, f.g] for f in self.elements),
        }


def delta_group(plane: LaguerrePlane, pencil: Pencil) -> DeltaGroup:
    return DeltaGroup.build(plane, pencil)


def verify_a1a2a3(plane: LaguerrePlane, pencil: Pencil,
                  delta: DeltaGroup | None) -> Report:
    """Check transitivity off the vertex generator (A1), circular
    transitivity of point stabilizers along the base circle (A2), and the
    one-tangent-member property (A3).

    For q = 2 only A3 is evaluated (and fails, with the full witness list);
    the parametrized group does not exist there.
    """
    rep = Report("A1A2A3", plane.q, PASS)
    with timed(rep):
        details = rep.details
        witnesses = rep.witnesses
        cases = 0

        if plane.gf.char2:
            rep.reading_notes = ("characteristic 2: only the tangency-count "
                                 "axiom is evaluated; the parametrized group "
                                 "requires odd q")
        else:
            if delta is None:
                delta = DeltaGroup.build(plane, pencil)
            space = delta.space_points()
            reached = {delta.apply(f, space[0]) for f in delta.elements}
            cases += len(space)
            missing = sorted(set(space) - reached)
            if missing:
                witnesses.append({"axiom": "A1", "unreached": repr(missing[0])})
            details["A1"] = {"points": len(space), "status":
                             "fail" if missing else "pass"}

            K = pencil.base
            kpts = [x for x in plane.circle_points(K) if x != pencil.p]
            a2_bad = []
            for r in kpts:
                stab = delta.stabilizer(r)
                targets = set(kpts) - {r}
                for x in list(targets):
                    cases += 1
                    got = {delta.apply(f, x) for f in stab}
                    if not targets <= got:
                        a2_bad.append({"axiom": "A2", "r": repr(r), "x": repr(x),
                                       "missed": sorted(map(repr, targets - got))})
                        break
            witnesses.extend(a2_bad)
            details["A2"] = {"stabilizers": len(kpts),
                             "status": "fail" if a2_bad else "pass"}

        # A3: every circle avoiding the vertex has exactly one tangent member
        a3_bad = []
        a3_cases = 0
        for M in plane.circles:
            if plane.incident(pencil.p, M):
                continue
            a3_cases += 1
            hits = plane.tangent_members(pencil, M)
            if len(hits) != 1:
                a3_bad.append({"axiom": "A3", "circle": list(M),
                               "tangent_members": sorted(list(L) for L, _ in hits)})
        witnesses.extend(sorted(a3_bad, key=lambda w: w["circle"]))
        details["A3"] = {"circles": a3_cases, "status": "fail" if a3_bad else "pass"}
        cases += a3_cases

        rep.cases_checked = cases
        if witnesses:
            rep.status = FAIL
    return rep
