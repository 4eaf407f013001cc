"""Arithmetic problem generation: operand sampling, templates, tagged examples.

Operands are sampled log-uniformly over eight decades (with a small uniform
component), snapped to a random power-of-ten precision between 0.01 and
1000, clamped up to that precision, and rarely negated. All values are exact
rationals; decimal rendering goes through the calculator formatting rules.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .evalkit import format_decimal
from .tagged import AuxBlockSpec, TaggedExample

UNIFORM_SHARE = 0.05
NEGATE_PROB = 0.01
PRECISION_EXPONENTS = (-2, -1, 0, 1, 2, 3)
OPS = ("+", "-", "*", "/")

TEMPLATE_CATEGORIES = (
    "basic", "conversational", "latex", "formal", "casual", "mathematical", "verbose",
)
BASIC_SHARE = 0.90

_TEMPLATES = {
    "basic": "Calculate {lhs} {op} {rhs}",
    "conversational": "Hey, could you work out {lhs} {op} {rhs} for me?",
    "latex": "Compute ${lhs} {op} {rhs}$",
    "formal": "Determine the value of {lhs} {op} {rhs}.",
    "casual": "whats {lhs} {op} {rhs}?",
    "mathematical": "{lhs} {op} {rhs} = ?",
    "verbose": "Please evaluate the expression {lhs} {op} {rhs} and state the final result.",
}

CALC_TOOL_PROMPT = (
    "You operate a calculator. Emit calc(expression) for each arithmetic "
    "step; results come back as =result;"
)


@dataclass(frozen=True)
class ArithProblem:
    lhs: Fraction
    rhs: Fraction
    op: str  # + - * /
    template: str
    text: str

    @property
    def expression(self) -> str:
        return f"{format_decimal(self.lhs)}{self.op}{format_decimal(self.rhs)}"

    @property
    def answer(self) -> Fraction:
        if self.op == "+":
            return self.lhs + self.rhs
        if self.op == "-":
            return self.lhs - self.rhs
        if self.op == "*":
            return self.lhs * self.rhs
        return self.lhs / self.rhs

    @property
    def answer_text(self) -> str:
        return format_decimal(self.answer)


def snap_to_precision(raw: float, k: int) -> Fraction:
    """Round to the nearest multiple of 10^k and clamp up to at least 10^k."""
    factor = Fraction(10) ** k
    value = round(raw / float(factor)) * factor
    if value < factor:
        value = factor
    return value


def sample_operand(rng: random.Random) -> Fraction:
    """One operand: magnitude sample, precision snap, clamp, rare negation."""
    if rng.random() < UNIFORM_SHARE:
        raw = rng.uniform(0.0, 1e8)
    else:
        raw = 10.0 ** rng.uniform(0.0, 8.0)
    value = snap_to_precision(raw, rng.choice(PRECISION_EXPONENTS))
    if rng.random() < NEGATE_PROB:
        value = -value
    return value


def _with_separators(value: Fraction) -> str:
    text = format_decimal(value)
    sign = ""
    if text.startswith("-"):
        sign, text = "-", text[1:]
    whole, dot, frac = text.partition(".")
    grouped = f"{int(whole):,}"
    return sign + grouped + (dot + frac if dot else "")


def sample_problem(rng: random.Random) -> ArithProblem:
    """A full problem: operands, operator, and rendered text.

    Division never sees a zero denominator (operands are clamped away from
    zero); subtraction orders its operands so the answer is nonnegative.
    """
    lhs = sample_operand(rng)
    rhs = sample_operand(rng)
    op = rng.choice(OPS)
    if op == "-" and lhs < rhs:
        lhs, rhs = rhs, lhs
    template = render_template_category(rng)
    text = _TEMPLATES[template].format(lhs=_with_separators(lhs), op=op, rhs=_with_separators(rhs))
    return ArithProblem(lhs=lhs, rhs=rhs, op=op, template=template, text=text)


def render_template_category(rng: random.Random) -> str:
    if rng.random() < BASIC_SHARE:
        return "basic"
    return rng.choice(TEMPLATE_CATEGORIES[1:])


def render_problem(problem: ArithProblem) -> str:
    return problem.text


def make_tagged_arith(problem: ArithProblem) -> TaggedExample:
    """Worked-example layout: question tagged after the first operand, the
    response tagged immediately before the answer, one calc block windowed
    between the two tags."""
    lhs_text = _with_separators(problem.lhs)
    rhs_text = _with_separators(problem.rhs)
    answer = problem.answer_text
    input_text = f"What is {lhs_text} @@QUESTION_END@@{problem.op} {rhs_text}?"
    response_text = f"{lhs_text} {problem.op} {rhs_text} equals @@ANSWER_READY@@{answer}."
    block = AuxBlockSpec(
        content=f"calc({problem.expression})",
        forced=f"={answer};",
        after_tag="QUESTION_END",
        before_tag="ANSWER_READY",
    )
    return TaggedExample(
        input_text=input_text,
        response_text=response_text,
        aux_blocks=(block,),
        aux_prompt=CALC_TOOL_PROMPT,
        meta={"kind": "arith", "template": problem.template},
    )


def problem_to_dict(problem: ArithProblem, problem_id: str) -> dict:
    return {
        "id": problem_id,
        "text": problem.text,
        "expression": problem.expression,
        "answer": problem.answer_text,
        "template": problem.template,
    }
