"""The 30 clue types: samplers, NL templates, and command construction.

Every sampler reads its parameters off the hidden grid, so emitted clues
are true by construction; clue_holds re-checks that with the direct grid
evaluator. Types 7 and 8 (attribute match/mismatch) are only applicable
when the grid actually contains a matching/differing pair; under default
per-attribute uniqueness, 7 is impossible and 8 is vacuous.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from ..dsl.ast import (
    Adjacency,
    Assign,
    Command,
    DiffValue,
    Direct,
    Disjunction,
    EntityBind,
    Exclude,
    Greater,
    Indirect,
    LeftOf,
    Less,
    RightOf,
    SameValue,
)
from ..dsl.render import render_command
from .grid import AttributeSpec, PuzzleSpec, evaluate_command


class NoApplicableClueType(RuntimeError):
    pass


@dataclass(frozen=True)
class Clue:
    type_id: int
    params: dict
    nl: str
    commands: tuple[Command, ...]

    @property
    def dsl(self) -> str:
        return " ".join(render_command(c) for c in self.commands)


def clue_holds(clue: Clue, spec: PuzzleSpec) -> bool:
    return all(evaluate_command(c, spec.grid) for c in clue.commands)


def _cap(name: str) -> str:
    return name[:1].upper() + name[1:]


def _nl_value(value: str) -> str:
    return value.replace("_", " ")


def _ref_phrase(attr: str, value: str) -> str:
    return f"the one whose {attr} is {_nl_value(value)}"


def _pos(spec: PuzzleSpec, entity: str, t: str) -> int:
    return int(spec.grid[entity][t])


def _pairs_with_gap(spec: PuzzleSpec, t: str, gap: int) -> list[tuple[str, str]]:
    """Ordered (left, right) entity pairs with pos(right) - pos(left) == gap."""
    by_pos = {_pos(spec, e, t): e for e in spec.entities}
    out = []
    for pos, entity in sorted(by_pos.items()):
        other = by_pos.get(pos + gap)
        if other is not None:
            out.append((entity, other))
    return out


def _other_value(attr: AttributeSpec, actual: str, rng: random.Random) -> str:
    return rng.choice([v for v in attr.values if v != actual])


def _ref_for(spec: PuzzleSpec, entity: str, exclude: str, rng: random.Random) -> tuple[str, str]:
    """A (ref_attribute, ref_value) pair identifying `entity`, avoiding `exclude`."""
    options = [a.name for a in spec.attributes if a.name != exclude]
    attr = rng.choice(options)
    return attr, spec.grid[entity][attr]


def _two_entities(spec: PuzzleSpec, rng: random.Random) -> tuple[str, str]:
    return tuple(rng.sample(list(spec.entities), 2))


def _ordinal(spec: PuzzleSpec, rng: random.Random) -> AttributeSpec:
    return rng.choice(spec.ordinal_attributes)


# -- builders -----------------------------------------------------------


def _b01(spec, rng):
    e = rng.choice(spec.entities)
    a = rng.choice(spec.attributes)
    v = spec.grid[e][a.name]
    nl = f"{_cap(e)}'s {a.name} is {_nl_value(v)}."
    return {"entity": e, "attribute": a.name, "value": v}, nl, (Assign(Direct(e, a.name), v),)


def _b02(spec, rng):
    e = rng.choice(spec.entities)
    a = rng.choice(spec.attributes)
    v = _other_value(a, spec.grid[e][a.name], rng)
    nl = f"{_cap(e)}'s {a.name} is not {_nl_value(v)}."
    return {"entity": e, "attribute": a.name, "value": v}, nl, (Exclude(Direct(e, a.name), v),)


def _ordered_pair(spec, t, rng):
    e1, e2 = _two_entities(spec, rng)
    if _pos(spec, e1, t.name) > _pos(spec, e2, t.name):
        e1, e2 = e2, e1
    return e1, e2


def _b03(spec, rng):
    t = _ordinal(spec, rng)
    e1, e2 = _ordered_pair(spec, t, rng)
    nl = f"{_cap(e1)}'s {t.name} is somewhere to the left of {_cap(e2)}'s."
    return {"lo": e1, "hi": e2, "attribute": t.name}, nl, (Less(Direct(e1, t.name), Direct(e2, t.name)),)


def _b04(spec, rng):
    t = _ordinal(spec, rng)
    e1, e2 = _ordered_pair(spec, t, rng)
    nl = f"{_cap(e2)}'s {t.name} is somewhere to the right of {_cap(e1)}'s."
    return {"lo": e1, "hi": e2, "attribute": t.name}, nl, (Greater(Direct(e2, t.name), Direct(e1, t.name)),)


def _b05(spec, rng):
    t = _ordinal(spec, rng)
    left, right = rng.choice(_pairs_with_gap(spec, t.name, 1))
    e1, e2 = rng.sample([left, right], 2)
    nl = f"{_cap(e1)} and {_cap(e2)} are next to each other in {t.name}."
    return {"a": e1, "b": e2, "attribute": t.name}, nl, (Adjacency(Direct(e1, t.name), Direct(e2, t.name), 1),)


def _b06(spec, rng):
    t = _ordinal(spec, rng)
    es = rng.sample(list(spec.entities), 3)
    e1, e2, e3 = sorted(es, key=lambda e: _pos(spec, e, t.name))
    nl = f"{_cap(e2)} is between {_cap(e1)} and {_cap(e3)} in {t.name}."
    commands = (Less(Direct(e1, t.name), Direct(e2, t.name)), Less(Direct(e2, t.name), Direct(e3, t.name)))
    return {"low": e1, "mid": e2, "high": e3, "attribute": t.name}, nl, commands


def _matching_pair(spec):
    for a in spec.attributes:
        for i, e1 in enumerate(spec.entities):
            for e2 in spec.entities[i + 1 :]:
                if spec.grid[e1][a.name] == spec.grid[e2][a.name]:
                    return e1, e2, a.name
    return None


def _b07(spec, rng):
    e1, e2, a = _matching_pair(spec)
    nl = f"{_cap(e1)} and {_cap(e2)} have the same {a}."
    return {"a": e1, "b": e2, "attribute": a}, nl, (SameValue(Direct(e1, a), Direct(e2, a)),)


def _differing_pair(spec):
    for a in spec.attributes:
        for i, e1 in enumerate(spec.entities):
            for e2 in spec.entities[i + 1 :]:
                if spec.grid[e1][a.name] != spec.grid[e2][a.name]:
                    return e1, e2, a.name
    return None


def _b08(spec, rng):
    e1, e2, a = _differing_pair(spec)
    nl = f"{_cap(e1)} and {_cap(e2)} have different {a}s."
    return {"a": e1, "b": e2, "attribute": a}, nl, (DiffValue(Direct(e1, a), Direct(e2, a)),)


def _b09(spec, rng):
    e = rng.choice(spec.entities)
    a = rng.choice(spec.attributes)
    actual = spec.grid[e][a.name]
    values = [actual, _other_value(a, actual, rng)]
    rng.shuffle(values)
    nl = f"{_cap(e)}'s {a.name} is {_nl_value(values[0])} or {_nl_value(values[1])}."
    return {"entity": e, "attribute": a.name, "values": tuple(values)}, nl, (Disjunction(Direct(e, a.name), tuple(values)),)


def _b10(spec, rng):
    e = rng.choice(spec.entities)
    a = rng.choice(spec.nominal_attributes)
    v = spec.grid[e][a.name]
    nl = f"{_cap(_ref_phrase(a.name, v))} is {_cap(e)}."
    return {"entity": e, "attribute": a.name, "value": v}, nl, (EntityBind(a.name, v, e),)


def _b11(spec, rng):
    e = rng.choice(spec.entities)
    a1, a2 = rng.sample(list(spec.attributes), 2)
    v1, v2 = spec.grid[e][a1.name], spec.grid[e][a2.name]
    nl = f"{_cap(_ref_phrase(a1.name, v1))} has {a2.name} {_nl_value(v2)}."
    return {"ref": (a1.name, v1), "attribute": a2.name, "value": v2}, nl, (Assign(Indirect(a1.name, v1, a2.name), v2),)


def _b12(spec, rng):
    t = _ordinal(spec, rng)
    e1, e2 = _ordered_pair(spec, t, rng)
    ra, rv = _ref_for(spec, e1, t.name, rng)
    nl = f"{_cap(_ref_phrase(ra, rv))} is somewhere to the left of {_cap(e2)} in {t.name}."
    return {"ref": (ra, rv), "entity": e2, "attribute": t.name}, nl, (Less(Indirect(ra, rv, t.name), Direct(e2, t.name)),)


def _b13(spec, rng):
    t = _ordinal(spec, rng)
    e1, e2 = _ordered_pair(spec, t, rng)
    ra, rv = _ref_for(spec, e2, t.name, rng)
    nl = f"{_cap(_ref_phrase(ra, rv))} is somewhere to the right of {_cap(e1)} in {t.name}."
    return {"ref": (ra, rv), "entity": e1, "attribute": t.name}, nl, (Greater(Indirect(ra, rv, t.name), Direct(e1, t.name)),)


def _b14(spec, rng):
    e = rng.choice(spec.entities)
    a1, a2 = rng.sample(list(spec.attributes), 2)
    v1 = spec.grid[e][a1.name]
    v2 = _other_value(a2, spec.grid[e][a2.name], rng)
    nl = f"{_cap(_ref_phrase(a1.name, v1))} does not have {a2.name} {_nl_value(v2)}."
    return {"ref": (a1.name, v1), "attribute": a2.name, "value": v2}, nl, (Exclude(Indirect(a1.name, v1, a2.name), v2),)


def _b15(spec, rng):
    t = _ordinal(spec, rng)
    e1, e2 = rng.choice(_pairs_with_gap(spec, t.name, 1))
    nl = f"{_cap(e1)} is directly left of {_cap(e2)} in {t.name}."
    return {"left": e1, "right": e2, "attribute": t.name}, nl, (LeftOf(Direct(e1, t.name), Direct(e2, t.name)),)


def _b16(spec, rng):
    t = _ordinal(spec, rng)
    e1, e2 = rng.choice(_pairs_with_gap(spec, t.name, 1))
    nl = f"{_cap(e2)} is directly right of {_cap(e1)} in {t.name}."
    return {"left": e1, "right": e2, "attribute": t.name}, nl, (RightOf(Direct(e2, t.name), Direct(e1, t.name)),)


def _b17(spec, rng):
    t = _ordinal(spec, rng)
    left, right = rng.choice(_pairs_with_gap(spec, t.name, 1))
    e1, e2 = rng.sample([left, right], 2)
    ra1, rv1 = _ref_for(spec, e1, t.name, rng)
    ra2, rv2 = _ref_for(spec, e2, t.name, rng)
    nl = f"{_cap(_ref_phrase(ra1, rv1))} and {_ref_phrase(ra2, rv2)} are next to each other in {t.name}."
    commands = (Adjacency(Indirect(ra1, rv1, t.name), Indirect(ra2, rv2, t.name), 1),)
    return {"ref_a": (ra1, rv1), "ref_b": (ra2, rv2), "attribute": t.name}, nl, commands


def _distance_clue(spec, rng, distance, kind):
    t = _ordinal(spec, rng)
    left, right = rng.choice(_pairs_with_gap(spec, t.name, distance))
    e1, e2 = rng.sample([left, right], 2)
    between = distance - 1
    count = "one" if between == 1 else "two"
    unit = t.name if between == 1 else t.name + "s"
    if kind == "direct":
        nl = f"There is {count} {unit} between {_cap(e1)} and {_cap(e2)}."
        return (
            {"a": e1, "b": e2, "attribute": t.name, "distance": distance},
            nl,
            (Adjacency(Direct(e1, t.name), Direct(e2, t.name), distance),),
        )
    if kind == "indirect":
        ra1, rv1 = _ref_for(spec, e1, t.name, rng)
        ra2, rv2 = _ref_for(spec, e2, t.name, rng)
        nl = f"There is {count} {unit} between {_ref_phrase(ra1, rv1)} and {_ref_phrase(ra2, rv2)}."
        return (
            {"ref_a": (ra1, rv1), "ref_b": (ra2, rv2), "attribute": t.name, "distance": distance},
            nl,
            (Adjacency(Indirect(ra1, rv1, t.name), Indirect(ra2, rv2, t.name), distance),),
        )
    ra, rv = _ref_for(spec, e2, t.name, rng)
    nl = f"There is {count} {unit} between {_cap(e1)} and {_ref_phrase(ra, rv)}."
    return (
        {"entity": e1, "ref": (ra, rv), "attribute": t.name, "distance": distance},
        nl,
        (Adjacency(Direct(e1, t.name), Indirect(ra, rv, t.name), distance),),
    )


def _b18(spec, rng):
    return _distance_clue(spec, rng, 2, "direct")


def _b19(spec, rng):
    return _distance_clue(spec, rng, 3, "direct")


def _indirect_ordered(spec, rng):
    t = _ordinal(spec, rng)
    e1, e2 = _ordered_pair(spec, t, rng)
    ra1, rv1 = _ref_for(spec, e1, t.name, rng)
    ra2, rv2 = _ref_for(spec, e2, t.name, rng)
    return t, e1, e2, (ra1, rv1), (ra2, rv2)


def _b20(spec, rng):
    t, e1, e2, r1, r2 = _indirect_ordered(spec, rng)
    nl = f"{_cap(_ref_phrase(*r1))} is somewhere to the left of {_ref_phrase(*r2)} in {t.name}."
    return {"ref_a": r1, "ref_b": r2, "attribute": t.name}, nl, (Less(Indirect(r1[0], r1[1], t.name), Indirect(r2[0], r2[1], t.name)),)


def _b21(spec, rng):
    t, e1, e2, r1, r2 = _indirect_ordered(spec, rng)
    nl = f"{_cap(_ref_phrase(*r2))} is somewhere to the right of {_ref_phrase(*r1)} in {t.name}."
    return {"ref_a": r1, "ref_b": r2, "attribute": t.name}, nl, (Greater(Indirect(r2[0], r2[1], t.name), Indirect(r1[0], r1[1], t.name)),)


def _directly_pair(spec, rng):
    t = _ordinal(spec, rng)
    e1, e2 = rng.choice(_pairs_with_gap(spec, t.name, 1))
    return t, e1, e2


def _b22(spec, rng):
    t, e1, e2 = _directly_pair(spec, rng)
    r1 = _ref_for(spec, e1, t.name, rng)
    r2 = _ref_for(spec, e2, t.name, rng)
    nl = f"{_cap(_ref_phrase(*r1))} is directly left of {_ref_phrase(*r2)} in {t.name}."
    return {"ref_a": r1, "ref_b": r2, "attribute": t.name}, nl, (LeftOf(Indirect(r1[0], r1[1], t.name), Indirect(r2[0], r2[1], t.name)),)


def _b23(spec, rng):
    t, e1, e2 = _directly_pair(spec, rng)
    r1 = _ref_for(spec, e1, t.name, rng)
    r2 = _ref_for(spec, e2, t.name, rng)
    nl = f"{_cap(_ref_phrase(*r2))} is directly right of {_ref_phrase(*r1)} in {t.name}."
    return {"ref_a": r1, "ref_b": r2, "attribute": t.name}, nl, (RightOf(Indirect(r2[0], r2[1], t.name), Indirect(r1[0], r1[1], t.name)),)


def _b24(spec, rng):
    return _distance_clue(spec, rng, 2, "indirect")


def _b25(spec, rng):
    return _distance_clue(spec, rng, 3, "indirect")


def _b26(spec, rng):
    t, e1, e2 = _directly_pair(spec, rng)
    ra, rv = _ref_for(spec, e2, t.name, rng)
    nl = f"{_cap(e1)} is directly left of {_ref_phrase(ra, rv)} in {t.name}."
    return {"entity": e1, "ref": (ra, rv), "attribute": t.name}, nl, (LeftOf(Direct(e1, t.name), Indirect(ra, rv, t.name)),)


def _b27(spec, rng):
    t, e1, e2 = _directly_pair(spec, rng)
    ra, rv = _ref_for(spec, e1, t.name, rng)
    nl = f"{_cap(e2)} is directly right of {_ref_phrase(ra, rv)} in {t.name}."
    return {"entity": e2, "ref": (ra, rv), "attribute": t.name}, nl, (RightOf(Direct(e2, t.name), Indirect(ra, rv, t.name)),)


def _b28(spec, rng):
    t = _ordinal(spec, rng)
    left, right = rng.choice(_pairs_with_gap(spec, t.name, 1))
    e1, e2 = rng.sample([left, right], 2)
    ra, rv = _ref_for(spec, e2, t.name, rng)
    nl = f"{_cap(e1)} and {_ref_phrase(ra, rv)} are next to each other in {t.name}."
    return {"entity": e1, "ref": (ra, rv), "attribute": t.name}, nl, (Adjacency(Direct(e1, t.name), Indirect(ra, rv, t.name), 1),)


def _b29(spec, rng):
    return _distance_clue(spec, rng, 2, "mixed")


def _b30(spec, rng):
    return _distance_clue(spec, rng, 3, "mixed")


_BUILDERS = {
    1: _b01, 2: _b02, 3: _b03, 4: _b04, 5: _b05, 6: _b06, 7: _b07, 8: _b08,
    9: _b09, 10: _b10, 11: _b11, 12: _b12, 13: _b13, 14: _b14, 15: _b15,
    16: _b16, 17: _b17, 18: _b18, 19: _b19, 20: _b20, 21: _b21, 22: _b22,
    23: _b23, 24: _b24, 25: _b25, 26: _b26, 27: _b27, 28: _b28, 29: _b29, 30: _b30,
}


def applicable(type_id: int, spec: PuzzleSpec) -> bool:
    n = len(spec.entities)
    m = len(spec.attributes)
    has_ordinal = bool(spec.ordinal_attributes)
    if type_id in (1, 2, 9):
        return True
    if type_id in (3, 4, 5, 15, 16):
        return has_ordinal and n >= 2
    if type_id == 6:
        return has_ordinal and n >= 3
    if type_id == 7:
        return _matching_pair(spec) is not None
    if type_id == 8:
        return _differing_pair(spec) is not None
    if type_id == 10:
        return bool(spec.nominal_attributes)
    if type_id in (11, 14):
        return m >= 2
    if type_id in (12, 13, 17, 20, 21, 22, 23, 26, 27, 28):
        return has_ordinal and m >= 2 and n >= 2
    if type_id in (18, 24, 29):
        return has_ordinal and n >= 3 and (type_id == 18 or m >= 2)
    if type_id in (19, 25, 30):
        return has_ordinal and n >= 4 and (type_id == 19 or m >= 2)
    return False


def sample_clue(spec: PuzzleSpec, config, rng: random.Random) -> Clue:
    """Draw one clue by configured type weight among applicable types."""
    candidates = [
        (t, w) for t, w in sorted(config.clue_weights.items()) if w > 0 and applicable(t, spec)
    ]
    if not candidates:
        raise NoApplicableClueType("no positively weighted clue type fits this puzzle shape")
    types = [t for t, _ in candidates]
    weights = [w for _, w in candidates]
    type_id = rng.choices(types, weights=weights, k=1)[0]
    params, nl, commands = _BUILDERS[type_id](spec, rng)
    return Clue(type_id, params, nl, commands)
