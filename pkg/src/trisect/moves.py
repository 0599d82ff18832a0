"""Generators for the moves that connect diagrams of diffeomorphic 4-manifolds.

All moves act on the abstract crossing data and return fresh diagrams.  The
handle slide pushes a parallel copy of one curve onto another of the same
colour; on the third curve through each copied crossing, the new crossing is
inserted on the side the third curve exits towards, so the copy stays on one
side of the slid-over curve (this keeps the signed ordered products along red
curves conjugation-trivial for noncommutative labels as well).
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .diagram import (
    COLORS,
    PAIR_FIRST,
    Crossing,
    Curve,
    TrisectionDiagram,
    connected_sum,
    standard_s4,
)
from .errors import MoveNotApplicable, NoStandardSummand, TrisectError

VARIANTS = (
    "shift_basepoint",
    "reverse_orientation",
    "two_point_insert",
    "two_point_delete",
    "three_point_flip",
    "handle_slide",
    "stabilize",
    "destabilize",
)


@dataclass
class MoveSpec:
    variant: str
    params: dict

    @classmethod
    def from_json(cls, data: dict) -> "MoveSpec":
        if "move" not in data:
            raise TrisectError("move entry needs a 'move' key")
        variant = data["move"]
        if variant not in VARIANTS:
            raise TrisectError(f"unknown move {variant!r}")
        return cls(variant, {k: v for k, v in data.items() if k != "move"})

    def to_json(self) -> dict:
        return {"move": self.variant, **self.params}


def apply_move(d: TrisectionDiagram, spec: MoveSpec) -> TrisectionDiagram:
    fn = {
        "shift_basepoint": shift_basepoint,
        "reverse_orientation": reverse_orientation,
        "two_point_insert": two_point_insert,
        "two_point_delete": two_point_delete,
        "three_point_flip": three_point_flip,
        "handle_slide": handle_slide,
        "stabilize": stabilize,
        "destabilize": destabilize,
    }[spec.variant]
    return fn(d, **spec.params)


# ---------------------------------------------------------------------------
# rebuilding helper: moves edit visit lists, ends are recomputed


def _assemble(
    d: TrisectionDiagram,
    visits: dict[str, list[str]],
    signs: dict[str, int],
    genus: int | None = None,
    declared_k: int | None | str = "keep",
) -> TrisectionDiagram:
    positions: dict[str, list[tuple[str, int]]] = {}
    curves = []
    for c in d.curves:
        vs = visits.get(c.id, list(c.visits))
        curves.append(Curve(c.id, c.color, tuple(vs)))
        for i, xid in enumerate(vs):
            positions.setdefault(xid, []).append((c.id, i))
    crossings = []
    for xid in sorted(positions):
        ends = positions[xid]
        if len(ends) != 2:
            raise TrisectError(f"crossing {xid!r} has {len(ends)} ends after the move")
        crossings.append(Crossing(xid, signs[xid], (ends[0], ends[1])))
    return TrisectionDiagram(
        d.genus if genus is None else genus,
        d.kind,
        tuple(curves),
        tuple(crossings),
        d.declared_k if declared_k == "keep" else declared_k,
    )


def _signs(d: TrisectionDiagram) -> dict[str, int]:
    return {x.id: x.sign for x in d.crossings}


def _fresh_ids(d: TrisectionDiagram, prefix: str, count: int) -> list[str]:
    taken = {x.id for x in d.crossings} | {c.id for c in d.curves}
    out = []
    k = 1
    while len(out) < count:
        cand = f"{prefix}{k}"
        if cand not in taken:
            out.append(cand)
        k += 1
    return out


# ---------------------------------------------------------------------------
# the generators


def shift_basepoint(d: TrisectionDiagram, curve: str, offset: int) -> TrisectionDiagram:
    c = d.curve(curve)
    n = len(c.visits)
    if n == 0:
        return d
    r = offset % n
    return _assemble(d, {curve: list(c.visits[r:] + c.visits[:r])}, _signs(d))


def reverse_orientation(d: TrisectionDiagram, curve: str) -> TrisectionDiagram:
    c = d.curve(curve)
    signs = _signs(d)
    for xid in c.visits:
        signs[xid] = -signs[xid]
    return _assemble(d, {curve: list(reversed(c.visits))}, signs)


def two_point_insert(
    d: TrisectionDiagram,
    curve_a: str,
    pos_a: int,
    curve_b: str,
    pos_b: int,
    sign: int = 1,
) -> TrisectionDiagram:
    ca, cb = d.curve(curve_a), d.curve(curve_b)
    if ca.color == cb.color:
        raise MoveNotApplicable("two-point insertion needs curves of different colours")
    if sign not in (1, -1):
        raise MoveNotApplicable("sign must be +1 or -1")
    if not (0 <= pos_a <= len(ca.visits)) or not (0 <= pos_b <= len(cb.visits)):
        raise MoveNotApplicable("insertion position out of range")
    p, q = _fresh_ids(d, "tp", 2)
    va = list(ca.visits)
    vb = list(cb.visits)
    va[pos_a:pos_a] = [p, q]
    vb[pos_b:pos_b] = [p, q]
    signs = _signs(d)
    signs[p] = sign
    signs[q] = -sign
    return _assemble(d, {curve_a: va, curve_b: vb}, signs)


def _cyclically_adjacent(visits: tuple[str, ...], a: str, b: str) -> bool:
    n = len(visits)
    ia, ib = visits.index(a), visits.index(b)
    return n >= 2 and ((ib - ia) % n == 1 or (ia - ib) % n == 1)


def two_point_delete(d: TrisectionDiagram, p: str, q: str) -> TrisectionDiagram:
    xp, xq = d.crossing(p), d.crossing(q)
    pair_p = frozenset(c for c, _ in xp.ends)
    pair_q = frozenset(c for c, _ in xq.ends)
    if pair_p != pair_q:
        raise MoveNotApplicable("the two crossings do not join the same pair of curves")
    if xp.sign != -xq.sign:
        raise MoveNotApplicable("the two crossings must have opposite signs")
    for cid in pair_p:
        if not _cyclically_adjacent(d.curve(cid).visits, p, q):
            raise MoveNotApplicable(f"crossings are not consecutive on {cid!r}")
    visits = {}
    for cid in pair_p:
        visits[cid] = [x for x in d.curve(cid).visits if x not in (p, q)]
    signs = _signs(d)
    del signs[p], signs[q]
    return _assemble(d, visits, signs)


def three_point_flip(d: TrisectionDiagram, p: str, q: str, r: str) -> TrisectionDiagram:
    xs = [d.crossing(x) for x in (p, q, r)]
    curve_ids = sorted({c for x in xs for c, _ in x.ends})
    if len(curve_ids) != 3:
        raise MoveNotApplicable("the crossings must pairwise join three curves")
    colors = {d.curve(c).color for c in curve_ids}
    if len(colors) != 3:
        raise MoveNotApplicable("the three curves must have three distinct colours")
    per_curve: dict[str, list[str]] = {c: [] for c in curve_ids}
    for x in xs:
        for c, _ in x.ends:
            per_curve[c].append(x.id)
    if any(len(v) != 2 for v in per_curve.values()):
        raise MoveNotApplicable("each curve must carry exactly two of the crossings")
    visits = {}
    for cid, (x1, x2) in per_curve.items():
        vs = list(d.curve(cid).visits)
        if not _cyclically_adjacent(tuple(vs), x1, x2):
            raise MoveNotApplicable(f"the triangle crossings are not consecutive on {cid!r}")
        i1, i2 = vs.index(x1), vs.index(x2)
        vs[i1], vs[i2] = vs[i2], vs[i1]
        visits[cid] = vs
    return _assemble(d, visits, _signs(d))


def handle_slide(
    d: TrisectionDiagram,
    curve: str,
    over: str,
    pos: int = 0,
    start: int = 0,
    direction: int = 1,
) -> TrisectionDiagram:
    lam, mu = d.curve(curve), d.curve(over)
    if lam.id == mu.id:
        raise MoveNotApplicable("cannot slide a curve over itself")
    if lam.color != mu.color:
        raise MoveNotApplicable("handle slides need two curves of the same colour")
    if direction not in (1, -1):
        raise MoveNotApplicable("direction must be +1 or -1")
    if not (0 <= pos <= len(lam.visits)):
        raise MoveNotApplicable("insertion position out of range")
    m = len(mu.visits)
    if m == 0:
        return d
    start %= m
    new_ids = _fresh_ids(d, "hs", m)
    signs = _signs(d)
    order = [(start + direction * t) % m for t in range(m)]
    # third-curve insertion side: the parallel copy lies on one fixed side of
    # the slid-over curve, so the new crossing lands after the old one when
    # the third curve exits to that side, before it otherwise
    inserts: dict[str, list[tuple[str, str, bool]]] = {}
    for t, idx in enumerate(order):
        xid = mu.visits[idx]
        x = d.crossing(xid)
        nu, _ = d.end_on(xid, mu.id)
        eps = x.sign
        mu_first = PAIR_FIRST[frozenset((mu.color, d.curve(nu).color))] == mu.color
        exits_left = (eps == 1) if mu_first else (eps == -1)
        signs[new_ids[t]] = eps * direction
        inserts.setdefault(nu, []).append((xid, new_ids[t], exits_left))
    visits = {lam.id: list(lam.visits[:pos]) + new_ids + list(lam.visits[pos:])}
    for nu, items in inserts.items():
        vs: list[str] = []
        before = {xid: yid for xid, yid, left in items if not left}
        after = {xid: yid for xid, yid, left in items if left}
        for xid in d.curve(nu).visits:
            if xid in before:
                vs.append(before[xid])
            vs.append(xid)
            if xid in after:
                vs.append(after[xid])
        visits[nu] = vs
    return _assemble(d, visits, signs)


def stabilize(d: TrisectionDiagram) -> TrisectionDiagram:
    if d.kind != "closed":
        raise MoveNotApplicable("stabilization needs a closed diagram")
    return connected_sum(d, standard_s4())


def _handle_pattern(d: TrisectionDiagram, comp: list[str]) -> str | None:
    """Colour of the meridian when the component is a standard handle, else None."""
    if len(comp) != 3:
        return None
    curves = [d.curve(c) for c in comp]
    if {c.color for c in curves} != set(COLORS):
        return None
    lengths = sorted(len(c.visits) for c in curves)
    if lengths != [1, 1, 2]:
        return None
    meridian = next(c for c in curves if len(c.visits) == 2)
    return meridian.color


def destabilize(d: TrisectionDiagram) -> TrisectionDiagram:
    by_type: dict[str, list[list[str]]] = {}
    for comp in d.components():
        t = _handle_pattern(d, comp)
        if t is not None:
            by_type.setdefault(t, []).append(comp)
    if not all(color in by_type for color in COLORS):
        raise NoStandardSummand("no split standard S^4 summand (one handle of each type) found")
    if d.genus - 3 < 1:
        raise MoveNotApplicable("destabilizing would leave a diagram of genus < 1")
    drop: set[str] = set()
    for color in COLORS:
        drop |= set(sorted(by_type[color])[0])
    curves = tuple(c for c in d.curves if c.id not in drop)
    keep_x = {x for c in curves for x in c.visits}
    crossings = tuple(x for x in d.crossings if x.id in keep_x)
    k = None if d.declared_k is None else d.declared_k - 1
    return TrisectionDiagram(d.genus - 3, d.kind, curves, crossings, k)


# ---------------------------------------------------------------------------
# random move sampling (regression harness)


def applicable_deletions(d: TrisectionDiagram) -> list[tuple[str, str]]:
    out = []
    for i, p in enumerate(d.crossings):
        for q in d.crossings[i + 1 :]:
            try:
                two_point_delete(d, p.id, q.id)
            except MoveNotApplicable:
                continue
            out.append((p.id, q.id))
    return out


def applicable_triangles(d: TrisectionDiagram) -> list[tuple[str, str, str]]:
    import itertools

    out = []
    for p, q, r in itertools.combinations([x.id for x in d.crossings], 3):
        try:
            three_point_flip(d, p, q, r)
        except MoveNotApplicable:
            continue
        out.append((p, q, r))
    return out


def random_move(d: TrisectionDiagram, rng: random.Random, max_visits: int = 8) -> tuple[MoveSpec, TrisectionDiagram]:
    """One random applicable move, keeping curves below max_visits crossings."""
    options: list[MoveSpec] = []
    for c in d.curves:
        if c.visits:
            options.append(MoveSpec("shift_basepoint", {"curve": c.id, "offset": rng.randrange(1, len(c.visits) + 1)}))
        options.append(MoveSpec("reverse_orientation", {"curve": c.id}))
    small = [c for c in d.curves if len(c.visits) < max_visits]
    for _ in range(4):
        if len(small) < 2:
            break
        ca, cb = rng.sample(small, 2)
        if ca.color == cb.color:
            continue
        options.append(
            MoveSpec(
                "two_point_insert",
                {
                    "curve_a": ca.id,
                    "pos_a": rng.randrange(len(ca.visits) + 1),
                    "curve_b": cb.id,
                    "pos_b": rng.randrange(len(cb.visits) + 1),
                    "sign": rng.choice((1, -1)),
                },
            )
        )
    dels = applicable_deletions(d)
    if dels:
        p, q = rng.choice(dels)
        options.append(MoveSpec("two_point_delete", {"p": p, "q": q}))
    tris = applicable_triangles(d)
    if tris:
        p, q, r = rng.choice(tris)
        options.append(MoveSpec("three_point_flip", {"p": p, "q": q, "r": r}))
    for color in COLORS:
        cs = [c for c in d.curves_of_color(color)]
        if len(cs) >= 2:
            lam, mu = rng.sample(cs, 2)
            if len(lam.visits) + len(mu.visits) <= max_visits:
                options.append(
                    MoveSpec(
                        "handle_slide",
                        {
                            "curve": lam.id,
                            "over": mu.id,
                            "pos": rng.randrange(len(lam.visits) + 1),
                            "start": rng.randrange(max(1, len(mu.visits))),
                            "direction": rng.choice((1, -1)),
                        },
                    )
                )
    rng.shuffle(options)
    for spec in options:
        try:
            return spec, apply_move(d, spec)
        except MoveNotApplicable:
            continue
    raise TrisectError("no applicable move found")
