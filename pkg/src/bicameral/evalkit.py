"""Exact expression evaluation, answer grading, puzzle-size taxonomy, sweep statistics.

All calculator arithmetic is exact-rational; decimal output is rounded
half-even at 5 places with trailing zeros stripped.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction

REL_TOL = 1e-5
ABS_TOL = 1e-8
MAX_DECIMAL_PLACES = 5

SIZE_GROUPS = ("Small", "Medium", "Large", "X-Large")

# (entities, attributes) -> group, all 25 pairs on the 2..6 grid.
_SIZE_TABLE = {
    (2, 2): "Small", (2, 3): "Small", (2, 4): "Small", (2, 5): "Small", (2, 6): "Small",
    (3, 2): "Small", (3, 3): "Small", (3, 4): "Medium", (3, 5): "Medium", (3, 6): "Medium",
    (4, 2): "Small", (4, 3): "Medium", (4, 4): "Medium", (4, 5): "Large", (4, 6): "Large",
    (5, 2): "Medium", (5, 3): "Large", (5, 4): "Large", (5, 5): "X-Large", (5, 6): "X-Large",
    (6, 2): "Medium", (6, 3): "Large", (6, 4): "X-Large", (6, 5): "X-Large", (6, 6): "X-Large",
}


class DivisionByZero(ArithmeticError):
    pass


class MalformedExpression(ValueError):
    pass


class UnparseableAnswer(ValueError):
    pass


class OutOfTaxonomy(KeyError):
    pass


_NUMBER_RE = re.compile(r"\d+(?:\.\d+)?|\.\d+")


def _tokenize_expr(expr: str) -> list[str]:
    tokens = []
    i = 0
    n = len(expr)
    while i < n:
        c = expr[i]
        if c.isspace():
            i += 1
            continue
        if c in "+-*/()":
            tokens.append(c)
            i += 1
            continue
        m = _NUMBER_RE.match(expr, i)
        if m:
            tokens.append(m.group())
            i = m.end()
            continue
        raise MalformedExpression(f"unexpected character {c!r} at offset {i}")
    return tokens


class _ExprParser:
    """Recursive descent over +, -, *, /, unary minus, and parentheses."""

    def __init__(self, tokens: list[str]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> str | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> str:
        tok = self.peek()
        if tok is None:
            raise MalformedExpression("unexpected end of expression")
        self.pos += 1
        return tok

    def parse(self) -> Fraction:
        value = self.expr()
        if self.peek() is not None:
            raise MalformedExpression(f"trailing input at token {self.pos}: {self.peek()!r}")
        return value

    def expr(self) -> Fraction:
        value = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> Fraction:
        value = self.factor()
        while self.peek() in ("*", "/"):
            op = self.take()
            rhs = self.factor()
            if op == "*":
                value = value * rhs
            else:
                if rhs == 0:
                    raise DivisionByZero("division by zero")
                value = value / rhs
        return value

    def factor(self) -> Fraction:
        tok = self.take()
        if tok == "-":
            return -self.factor()
        if tok == "(":
            value = self.expr()
            if self.take() != ")":
                raise MalformedExpression("expected ')'")
            return value
        if tok in "+*/()":
            raise MalformedExpression(f"unexpected token {tok!r}")
        return Fraction(tok)


def eval_expression(expr: str) -> Fraction:
    """Evaluate an arithmetic expression exactly, as a Fraction."""
    tokens = _tokenize_expr(expr)
    if not tokens:
        raise MalformedExpression("empty expression")
    return _ExprParser(tokens).parse()


def format_decimal(value: Fraction, places: int = MAX_DECIMAL_PLACES) -> str:
    """Render a rational as a decimal string.

    Rounds half-even at `places`, strips trailing zeros, never emits
    thousands separators, and normalizes -0 to 0.
    """
    sign = "-" if value < 0 else ""
    mag = -value if value < 0 else value
    scale = 10**places
    scaled = mag * scale
    whole, frac = divmod(scaled.numerator, scaled.denominator)
    # round half to even on the remainder frac/denominator
    double = 2 * frac
    if double > scaled.denominator or (double == scaled.denominator and whole % 2 == 1):
        whole += 1
    int_part, dec_part = divmod(whole, scale)
    if dec_part == 0:
        text = str(int_part)
    else:
        text = f"{int_part}.{dec_part:0{places}d}".rstrip("0")
    if text in ("0", "0."):
        return "0"
    return sign + text


def calc_eval(expr: str) -> str:
    """Evaluate a calculator expression and format the exact result.

    Accepts digits, decimal points, + - * /, and parentheses (whitespace
    tolerated). Raises DivisionByZero or MalformedExpression.
    """
    return format_decimal(eval_expression(expr))


_ANSWER_STRIP_RE = re.compile(r"[,\s$]")


def parse_answer(text: str) -> float:
    """Normalize an answer string (commas, whitespace, currency) and parse it."""
    cleaned = _ANSWER_STRIP_RE.sub("", text.strip())
    if not cleaned:
        raise UnparseableAnswer(f"empty answer: {text!r}")
    try:
        return float(cleaned)
    except ValueError:
        raise UnparseableAnswer(f"not a number: {text!r}") from None


def grade_numeric(predicted: str, truth: str) -> bool:
    """Compare two numeric answers at rel tol 1e-5 / abs tol 1e-8.

    Raises UnparseableAnswer when either side does not parse; callers
    tally that separately and score the item wrong.
    """
    p = parse_answer(predicted)
    t = parse_answer(truth)
    return math.isclose(p, t, rel_tol=REL_TOL, abs_tol=ABS_TOL)


_SEPARATOR_RE = re.compile(r"[\s\-_]+")


def normalize_cell(value: str) -> str:
    """Case-fold and collapse space/hyphen/underscore runs to one separator."""
    return _SEPARATOR_RE.sub("_", value.strip().casefold())


def grade_json_table(predicted: dict, truth: dict) -> bool:
    """Cell-wise comparison of entity -> attribute -> value tables.

    Case-insensitive and separator-normalized; any missing, extra, or
    mismatched cell scores the table wrong.
    """

    def norm_table(table: dict) -> dict:
        out = {}
        for entity, row in table.items():
            if not isinstance(row, dict):
                return {}
            out[normalize_cell(str(entity))] = {
                normalize_cell(str(a)): normalize_cell(str(v)) for a, v in row.items()
            }
        return out

    np_, nt = norm_table(predicted), norm_table(truth)
    if not nt or np_.keys() != nt.keys():
        return False
    for entity, row in nt.items():
        if np_[entity] != row:
            return False
    return True


def size_group(entities: int, attributes: int) -> str:
    """Map a puzzle size to its difficulty group (2..6 on both axes)."""
    try:
        return _SIZE_TABLE[(entities, attributes)]
    except KeyError:
        raise OutOfTaxonomy(f"size ({entities}, {attributes}) outside the 2..6 taxonomy") from None


def bernoulli_sem(p: float, n: int) -> float:
    """Standard error of a Bernoulli mean: sqrt(p(1-p)/n)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return math.sqrt(p * (1.0 - p) / n)


def sweep_stats(p_c: float, n_c: int, p_b: float, s_b: float) -> dict:
    """Two-sample significance vs a baseline with known SEM.

    Combined uncertainty s = sqrt(s_b^2 + p_c(1-p_c)/n_c); the configuration
    is significantly better when (p_c - p_b) > 2s.
    """
    if not (0.0 <= p_c <= 1.0 and 0.0 <= p_b <= 1.0):
        raise ValueError("accuracies must lie in [0, 1]")
    s = math.sqrt(s_b**2 + p_c * (1.0 - p_c) / n_c)
    return {"sem": s, "significant": (p_c - p_b) > 2.0 * s}


@dataclass
class GradeReport:
    """Aggregate grading outcome with per-size-group breakdown."""

    total: int = 0
    correct: int = 0
    unparseable: int = 0
    by_group: dict = field(default_factory=lambda: {g: [0, 0] for g in SIZE_GROUPS})

    def add(self, is_correct: bool, group: str | None = None, unparseable: bool = False) -> None:
        self.total += 1
        if is_correct:
            self.correct += 1
        if unparseable:
            self.unparseable += 1
        if group is not None:
            cell = self.by_group[group]
            cell[0] += 1
            if is_correct:
                cell[1] += 1

    @property
    def accuracy(self) -> float:
        return self.correct / self.total if self.total else 0.0

    @property
    def standard_error(self) -> float:
        return bernoulli_sem(self.accuracy, self.total) if self.total else 0.0

    def to_dict(self) -> dict:
        return {
            "total": self.total,
            "correct": self.correct,
            "accuracy": self.accuracy,
            "standard_error": self.standard_error,
            "unparseable": self.unparseable,
            "by_group": {
                g: {"total": t, "correct": c, "accuracy": (c / t if t else 0.0)}
                for g, (t, c) in self.by_group.items()
            },
        }
