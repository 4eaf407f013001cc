"""Hidden-solution sampling and direct grid evaluation of commands.

The grid evaluator interprets constraint commands straight against the
solution table, independent of the solver path, so clue soundness can be
checked without touching SMT.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

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
    Operand,
    RightOf,
    SameValue,
)


@dataclass(frozen=True)
class AttributeSpec:
    name: str
    values: tuple[str, ...]  # declaration order; ascending for ordinal
    ordinal: bool


@dataclass
class PuzzleSpec:
    entities: tuple[str, ...]
    attributes: tuple[AttributeSpec, ...]
    grid: dict  # entity -> attribute -> value
    clues: list = field(default_factory=list)
    query: dict = field(default_factory=dict)
    answer: object = None
    style: str = "named"

    @property
    def ordinal_attributes(self) -> list[AttributeSpec]:
        return [a for a in self.attributes if a.ordinal]

    @property
    def nominal_attributes(self) -> list[AttributeSpec]:
        return [a for a in self.attributes if not a.ordinal]

    def attribute(self, name: str) -> AttributeSpec:
        for a in self.attributes:
            if a.name == name:
                return a
        raise KeyError(name)


def sample_solution(config, rng: random.Random) -> PuzzleSpec:
    """Sample entities, attributes, and a consistent hidden grid.

    Ordinal attributes take the positions 1..N (a permutation across
    entities); nominal attributes draw N values from an unused category.
    """
    pool = config.pool()
    n_entities = rng.randint(*config.entity_range)
    n_attrs = rng.randint(*config.attribute_range)

    categories = list(pool["categories"])
    entity_cat = rng.choice(categories)
    entities = tuple(rng.sample(entity_cat["values"], n_entities))

    free_cats = [c for c in categories if c["name"] != entity_cat["name"]]
    rng.shuffle(free_cats)
    ordinal_names = [n for n in pool["ordinal_attributes"]]

    attributes: list[AttributeSpec] = []
    for _ in range(n_attrs):
        make_ordinal = rng.random() < config.ordinal_ratio and ordinal_names
        if make_ordinal:
            name = ordinal_names.pop(0)
            values = tuple(str(i) for i in range(1, n_entities + 1))
            attributes.append(AttributeSpec(name, values, True))
        else:
            if not free_cats:
                raise ValueError("category pool exhausted; add categories or lower attribute count")
            cat = free_cats.pop(0)
            values = tuple(rng.sample(cat["values"], n_entities))
            attributes.append(AttributeSpec(cat["attribute"], values, False))

    grid: dict = {e: {} for e in entities}
    for attr in attributes:
        assigned = list(attr.values)
        rng.shuffle(assigned)
        for entity, value in zip(entities, assigned):
            grid[entity][attr.name] = value

    return PuzzleSpec(entities=entities, attributes=tuple(attributes), grid=grid)


def _resolve(grid: dict, op: Operand) -> str | None:
    """Operand value under the grid; None when an indirect reference fails."""
    if isinstance(op, Direct):
        return grid.get(op.entity, {}).get(op.attribute)
    holders = [e for e, row in grid.items() if row.get(op.ref_attribute) == op.ref_value]
    if len(holders) != 1:
        return None
    return grid[holders[0]].get(op.attribute)


def evaluate_command(command: Command, grid: dict) -> bool:
    """Truth of one constraint command directly against a solution grid."""
    if isinstance(command, EntityBind):
        return grid.get(command.entity, {}).get(command.attribute) == command.value

    left = _resolve(grid, command.lhs)
    if left is None:
        return False
    if isinstance(command, Assign):
        return left == command.value
    if isinstance(command, Exclude):
        return left != command.value
    if isinstance(command, Disjunction):
        return left in command.values

    right = _resolve(grid, command.rhs)
    if right is None:
        return False
    if isinstance(command, SameValue):
        return left == right
    if isinstance(command, DiffValue):
        return left != right
    if isinstance(command, Less):
        return int(left) < int(right)
    if isinstance(command, Greater):
        return int(left) > int(right)
    if isinstance(command, Adjacency):
        return abs(int(left) - int(right)) == command.distance
    if isinstance(command, LeftOf):
        return int(right) == int(left) + 1
    if isinstance(command, RightOf):
        return int(right) == int(left) - 1
    raise TypeError(f"not a grid-evaluable command: {command!r}")
