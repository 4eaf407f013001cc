"""Stateful solver session: indexed command log, retraction, forced-value queries.

Assertions never fail eagerly; inconsistency surfaces only through queries.
A queried value is reported only when it is forced: the constraints plus its
negation are unsatisfiable. Full solutions are reported only when unique,
checked with a blocking clause.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from ..dsl.analyzer import (
    AnalysisError,
    DeclarationContext,
    ValidatedCommand,
    analyze,
    decode_value,
)
from ..dsl.ast import (
    CONSTRAINT_TYPES,
    Clear,
    Command,
    QueryAttr,
    QueryEntity,
    QueryJson,
    QuerySat,
    Retract,
    is_query,
)
from ..dsl.lexer import LexError, tokenize
from ..dsl.parser import ParseError, parse_command, skip_to_semicolon
from .compile import EmptyModel, blocking_clause, compile_to_smt, decode_model, var_symbol
from .transport import SmtTransport, SolverTransportError


@dataclass(frozen=True)
class Ack:
    index: int


@dataclass(frozen=True)
class Value:
    entity: str
    attribute: str
    value: str


@dataclass(frozen=True)
class EntityDump:
    entity: str
    values: dict  # attribute -> value text or None when not forced


@dataclass(frozen=True)
class Sat:
    satisfiable: bool


@dataclass(frozen=True)
class JsonSolution:
    table: dict  # entity -> attribute -> value text


@dataclass(frozen=True)
class Unknown:
    reason: str  # "underdetermined" | "unsat"


QueryResult = Ack | Value | EntityDump | Sat | JsonSolution | Unknown


@dataclass
class LogEntry:
    index: int
    vcmd: ValidatedCommand


@dataclass
class SolverSession:
    """One solver conversation; owns a child solver process."""

    transport: SmtTransport = field(default_factory=SmtTransport)
    context: DeclarationContext = field(default_factory=DeclarationContext)
    log: list = field(default_factory=list)
    next_index: int = 1
    _effective: list = field(default_factory=list)

    def close(self) -> None:
        self.transport.close()

    def __enter__(self) -> "SolverSession":
        return self

    def __exit__(self, *exc) -> None:
        self.close()

    # -- command execution ----------------------------------------------

    def analyze(self, command: Command) -> ValidatedCommand:
        return analyze(command, self.context)

    def execute(self, vcmd: ValidatedCommand) -> QueryResult:
        """Execute one validated command; queries are answered, others acked."""
        command = vcmd.command
        if is_query(command):
            return self._run_query(command)
        index = self.next_index
        if isinstance(command, Clear):
            self.log.clear()
            self._effective = []
            self.next_index = 1
            self.context = DeclarationContext()
            return Ack(index)
        self.log.append(LogEntry(index, vcmd))
        self.next_index += 1
        if isinstance(command, Retract):
            self._recompute()
        else:
            self.context.apply(vcmd)
            if isinstance(command, CONSTRAINT_TYPES):
                self._effective.append(vcmd)
        return Ack(index)

    def execute_command(self, command: Command) -> QueryResult:
        """Analyze then execute a parsed command."""
        return self.execute(self.analyze(command))

    def rebuild(self) -> None:
        """Restart the solver process and recompute the effective constraint set.

        Queries replay the effective script on every solve, so this is
        idempotent and observably equal to a fresh session replay.
        """
        self.transport.restart()
        self._recompute()

    def _recompute(self) -> None:
        """Re-derive context and effective constraints honoring retractions.

        A retraction of a retraction revives its target. Commands that no
        longer validate (e.g. constraints whose declarations were retracted)
        are skipped, matching a fresh replay through the error-skipping
        pipeline.
        """
        retracted: set[int] = set()
        for entry in reversed(self.log):
            if entry.index in retracted:
                continue
            if isinstance(entry.vcmd.command, Retract):
                retracted.add(entry.vcmd.command.index)
        ctx = DeclarationContext()
        effective = []
        for entry in self.log:
            command = entry.vcmd.command
            if entry.index in retracted or isinstance(command, Retract):
                continue
            try:
                valid = analyze(command, ctx)
            except AnalysisError:
                continue
            ctx.apply(valid)
            if isinstance(command, CONSTRAINT_TYPES):
                effective.append(valid)
        ctx.next_index = self.next_index
        self.context = ctx
        self._effective = effective

    # -- queries ---------------------------------------------------------

    def _script(self, extra: list[str] = ()) -> list[str]:
        lines = compile_to_smt(self.context, self._effective)
        lines.extend(extra)
        return lines

    def _solve(self, extra: list[str] = (), need_model: bool = False):
        status, model = self.transport.solve(self._script(extra), need_model=need_model)
        if status == "unknown":
            raise SolverTransportError("solver answered unknown on a bounded problem")
        return status, model

    def _run_query(self, command: Command) -> QueryResult:
        if not self.context.entities or not self.context.domains:
            if isinstance(command, QuerySat):
                return Sat(True)
            return Unknown("underdetermined")
        if isinstance(command, QuerySat):
            status, _ = self._solve()
            return Sat(status == "sat")
        if isinstance(command, QueryAttr):
            return self._forced_value(command.entity, command.attribute)
        if isinstance(command, QueryEntity):
            values = {}
            for attr in self.context.domains:
                result = self._forced_value(command.entity, attr)
                values[attr] = result.value if isinstance(result, Value) else None
            return EntityDump(command.entity, values)
        if isinstance(command, QueryJson):
            return self.query_json()
        raise TypeError(f"not a query: {command!r}")

    def _forced_value(self, entity: str, attribute: str) -> QueryResult:
        status, model = self._solve(need_model=True)
        if status == "unsat":
            return Unknown("unsat")
        sym = var_symbol(entity, attribute)
        candidate = model[f"{entity}.{attribute}"]
        lit = str(candidate) if candidate >= 0 else f"(- {-candidate})"
        status2, _ = self._solve(extra=[f"(assert (not (= {sym} {lit})))"])
        if status2 == "unsat":
            domain = self.context.domains[attribute]
            return Value(entity, attribute, decode_value(domain, candidate))
        return Unknown("underdetermined")

    def query_value(self, entity: str, attribute: str) -> QueryResult:
        """Forced-value semantics for one cell."""
        return self._run_query(QueryAttr(entity, attribute))

    def query_json(self) -> QueryResult:
        """Full table iff the model is unique under a blocking-clause check."""
        status, model = self._solve(need_model=True)
        if status == "unsat":
            return Unknown("unsat")
        status2, _ = self._solve(extra=[blocking_clause(self.context, model)])
        if status2 == "sat":
            return Unknown("underdetermined")
        return JsonSolution(decode_model(self.context, model))

    # -- text entry point --------------------------------------------------

    def execute_one_wire(self, command_text: str) -> str:
        """Parse, analyze, and execute one command; always returns a wire response."""
        try:
            tokens = tokenize(command_text)
            command, cursor = parse_command(tokens, 0)
            if cursor != len(tokens):
                return ERROR_WIRE
            return format_wire(self.execute(self.analyze(command)))
        except (LexError, ParseError, AnalysisError, EmptyModel):
            return ERROR_WIRE


ERROR_WIRE = "=> error;"


def format_wire(result: QueryResult) -> str:
    """Render a result in the tool-forcing wire format."""
    if isinstance(result, Ack):
        return f"=> [{result.index}];"
    if isinstance(result, Value):
        return f"=> {result.value};"
    if isinstance(result, EntityDump):
        payload = {a: (v if v is not None else "unknown") for a, v in result.values.items()}
        return f"=> {json.dumps(payload)};"
    if isinstance(result, Sat):
        return "=> sat;" if result.satisfiable else "=> unsat;"
    if isinstance(result, JsonSolution):
        return f"=> {json.dumps(result.table)};"
    if isinstance(result, Unknown):
        return "=> unsat;" if result.reason == "unsat" else "=> unknown;"
    raise TypeError(f"unknown result: {result!r}")


def run_script(session: SolverSession, text: str) -> list[tuple[str, str]]:
    """Execute a whole script, resynchronizing at the next ';' on errors.

    Returns (command text, wire response) pairs in order. Lex errors consume
    their surrounding command only; everything before and after still runs.
    """
    out: list[tuple[str, str]] = []
    offset = 0
    while offset < len(text):
        chunk = text[offset:]
        lex_error_at = None
        try:
            tokens = tokenize(chunk)
        except LexError as exc:
            lex_error_at = exc.offset
            tokens = tokenize(chunk[: exc.offset])

        cursor = 0
        while cursor < len(tokens):
            start = offset + tokens[cursor].span[0]
            try:
                command, new_cursor = parse_command(tokens, cursor)
            except ParseError:
                if lex_error_at is not None:
                    break  # tail tokens belong to the command holding the lex error
                new_cursor = skip_to_semicolon(tokens, cursor)
                end = offset + tokens[new_cursor - 1].span[1] if new_cursor > cursor else len(text)
                out.append((text[start:end].strip(), ERROR_WIRE))
                cursor = new_cursor
                continue
            end = offset + tokens[new_cursor - 1].span[1]
            snippet = text[start:end].strip()
            try:
                result = session.execute(session.analyze(command))
                out.append((snippet, format_wire(result)))
            except (AnalysisError, EmptyModel):
                out.append((snippet, ERROR_WIRE))
            cursor = new_cursor

        if lex_error_at is None:
            break
        bad_start = offset + tokens[cursor].span[0] if cursor < len(tokens) else offset + lex_error_at
        stop = text.find(";", offset + lex_error_at)
        stop = len(text) if stop < 0 else stop + 1
        out.append((text[bad_start:stop].strip(), ERROR_WIRE))
        offset = stop
    return out
