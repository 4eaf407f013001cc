"""Self-contained SMT-LIB2 solver for bounded linear integer problems.

Runs as a child process (``python -m bicameral.smt.minisolver``) speaking
SMT-LIB2 v2.6 over stdin/stdout: set-logic, declare-const/declare-fun,
assert, check-sat, get-model, push/pop, reset, exit. Decides formulas whose
variables all have finite domains derivable from asserted bounds or
or-of-equalities; answers ``unknown`` otherwise.

The search is backtracking with minimum-remaining-values ordering, native
all-different propagation (value removal plus a pigeonhole union check),
guard watching for implications, and forward checking on the last
unassigned variable of each constraint. Constraint bodies are compiled to
three-valued closures once per check-sat.
"""

from __future__ import annotations

import sys

from .sexpr import SexprError, StreamReader, quote_symbol

DOMAIN_CAP = 200_000  # per-variable; larger ranges answer "unknown"

_BOOL_OPS = frozenset({"and", "or", "not", "=>", "=", "distinct", "<", "<=", ">", ">="})
_NON_VARS = _BOOL_OPS | {"+", "-", "*", "true", "false"}


class SolverError(Exception):
    pass


def _flatten_and(term, out: list) -> None:
    if isinstance(term, list) and term and term[0] == "and":
        for sub in term[1:]:
            _flatten_and(sub, out)
    else:
        out.append(term)


def _as_linear_bound(term):
    """Recognize (<= x c) and friends; returns (var, lo, hi) or None."""
    if not (isinstance(term, list) and len(term) == 3):
        return None
    op, a, b = term
    if isinstance(a, int) and isinstance(b, str):
        flip = {"<": ">", "<=": ">=", ">": "<", ">=": "<=", "=": "="}
        if op not in flip:
            return None
        op, a, b = flip[op], b, a
    if not (isinstance(a, str) and isinstance(b, int)):
        return None
    if op == "<=":
        return (a, None, b)
    if op == "<":
        return (a, None, b - 1)
    if op == ">=":
        return (a, b, None)
    if op == ">":
        return (a, b + 1, None)
    if op == "=":
        return (a, b, b)
    return None


def _as_value_set(term):
    """Recognize (or (= x c1) (= x c2) ...); returns (var, values) or None."""
    if not (isinstance(term, list) and term and term[0] == "or"):
        return None
    var = None
    values = set()
    for sub in term[1:]:
        if not (isinstance(sub, list) and len(sub) == 3 and sub[0] == "="):
            return None
        _, a, b = sub
        if isinstance(b, str) and isinstance(a, int):
            a, b = b, a
        if not (isinstance(a, str) and isinstance(b, int)):
            return None
        if var is None:
            var = a
        elif var != a:
            return None
        values.add(b)
    if var is None:
        return None
    return var, values


def _as_guards(term):
    """Split (=> (= x c) body) / (=> (and (= x c) (= y d)) body) into guards+body."""
    if not (isinstance(term, list) and len(term) == 3 and term[0] == "=>"):
        return None
    guard, body = term[1], term[2]
    eqs = guard[1:] if isinstance(guard, list) and guard and guard[0] == "and" else [guard]
    pairs = []
    for eq in eqs:
        if not (isinstance(eq, list) and len(eq) == 3 and eq[0] == "="):
            return None
        _, a, b = eq
        if isinstance(b, str) and isinstance(a, int):
            a, b = b, a
        if not (isinstance(a, str) and isinstance(b, int)):
            return None
        pairs.append((a, b))
    return pairs, body


def _term_vars(term, out: set) -> set:
    """Collect variable names; list heads are always operators in this language."""
    if isinstance(term, str):
        if term not in _NON_VARS:
            out.add(term)
    elif isinstance(term, list):
        for sub in term[1:]:
            _term_vars(sub, out)
    return out


# -- closure compilation -------------------------------------------------


def _compile_int(term):
    """Compile an arithmetic term to assign -> int | None."""
    if isinstance(term, int):
        return lambda assign, _v=term: _v
    if isinstance(term, str):
        return lambda assign, _n=term: assign.get(_n)
    op = term[0]
    subs = [_compile_int(t) for t in term[1:]]
    if op == "+":
        def plus(assign, _subs=tuple(subs)):
            total = 0
            for s in _subs:
                v = s(assign)
                if v is None:
                    return None
                total += v
            return total
        return plus
    if op == "-":
        if len(subs) == 1:
            s0 = subs[0]
            return lambda assign: (lambda v: None if v is None else -v)(s0(assign))
        def minus(assign, _subs=tuple(subs)):
            acc = _subs[0](assign)
            if acc is None:
                return None
            for s in _subs[1:]:
                v = s(assign)
                if v is None:
                    return None
                acc -= v
            return acc
        return minus
    if op == "*":
        def times(assign, _subs=tuple(subs)):
            acc = 1
            for s in _subs:
                v = s(assign)
                if v is None:
                    return None
                acc *= v
            return acc
        return times
    raise SolverError(f"unsupported arithmetic operator {op!r}")


_CMP = {
    "=": lambda x, y: x == y,
    "<": lambda x, y: x < y,
    "<=": lambda x, y: x <= y,
    ">": lambda x, y: x > y,
    ">=": lambda x, y: x >= y,
}


def _compile_bool(term):
    """Compile a boolean term to assign -> True | False | None."""
    if term == "true":
        return lambda assign: True
    if term == "false":
        return lambda assign: False
    if not isinstance(term, list) or not term:
        raise SolverError(f"not a boolean term: {term!r}")
    op = term[0]
    if op == "and":
        subs = tuple(_compile_bool(t) for t in term[1:])
        def f_and(assign):
            result = True
            for s in subs:
                v = s(assign)
                if v is False:
                    return False
                if v is None:
                    result = None
            return result
        return f_and
    if op == "or":
        subs = tuple(_compile_bool(t) for t in term[1:])
        def f_or(assign):
            result = False
            for s in subs:
                v = s(assign)
                if v is True:
                    return True
                if v is None:
                    result = None
            return result
        return f_or
    if op == "not":
        sub = _compile_bool(term[1])
        return lambda assign: (lambda v: None if v is None else not v)(sub(assign))
    if op == "=>":
        a, b = _compile_bool(term[1]), _compile_bool(term[2])
        def f_imp(assign):
            va = a(assign)
            if va is False:
                return True
            vb = b(assign)
            if va is True:
                return vb
            return True if vb is True else None
        return f_imp
    if op == "distinct":
        subs = tuple(_compile_int(t) for t in term[1:])
        def f_distinct(assign):
            seen = set()
            undecided = False
            for s in subs:
                v = s(assign)
                if v is None:
                    undecided = True
                elif v in seen:
                    return False
                else:
                    seen.add(v)
            return None if undecided else True
        return f_distinct
    if op in _CMP:
        cmp = _CMP[op]
        if len(term) == 3:
            a, b = _compile_int(term[1]), _compile_int(term[2])
            def f_cmp2(assign):
                va = a(assign)
                if va is None:
                    return None
                vb = b(assign)
                if vb is None:
                    return None
                return cmp(va, vb)
            return f_cmp2
        subs = tuple(_compile_int(t) for t in term[1:])
        def f_cmpn(assign):
            vals = [s(assign) for s in subs]
            if any(v is None for v in vals):
                return None
            return all(cmp(x, y) for x, y in zip(vals, vals[1:]))
        return f_cmpn
    raise SolverError(f"unsupported boolean operator {op!r}")


class _Constraint:
    __slots__ = ("fn", "vars", "body_vars", "guards", "state")

    # state: 0 = pending, 1 = permanently satisfied, 2 = guard-active
    def __init__(self, fn, variables, body_vars, guards=None):
        self.fn = fn
        self.vars = tuple(variables)
        self.body_vars = tuple(body_vars)
        self.guards = tuple(guards) if guards else None
        self.state = 0


class _Search:
    """One check-sat run over finite domains.

    Queue-driven propagation to a fixpoint after every assignment:
      * all-different groups: peer exclusion, tight value counting, and
        variable-side Hall sets (bitmask subsets)
      * guarded implications: retire on guard mismatch or unreachable guard
        value; with one guard pending, prune its value when the body has no
        support over current domains (domain-level contrapositive)
      * active bodies: full evaluation, or support-based revision for one-
        and two-variable bodies; wider terms fall back to eager three-valued
        evaluation (so disjunctions such as blocking clauses retire early)

    Variable choice is dom/wdeg: smallest domain over accumulated conflict
    weight, so variables implicated in failures get decided early.
    """

    def __init__(self, domains, alldiffs, constraints, watch, groups_of):
        self.domains = domains  # var -> list of candidate ints
        self.alldiffs = alldiffs
        self.constraints = constraints
        self.watch = watch  # var -> tuple of constraints
        self.groups_of = groups_of  # var -> tuple of alldiff groups
        self.assign: dict[str, int] = {}
        self.dom_trail: list = []  # (var, value) removals
        self.state_trail: list = []  # (constraint, previous state)
        self.queue: list[str] = []
        self.queued: set[str] = set()
        self.wdeg = {v: 1 for v in domains}
        self.decl = {v: i for i, v in enumerate(domains)}
        # a group is tight when its variables exactly consume its value union;
        # then every remaining value must be claimed by exactly one variable
        self.tight: dict[tuple, set] = {}
        self.value_bits: dict[tuple, dict[int, int]] = {}
        for group in alldiffs:
            union = set()
            for v in group:
                union.update(domains[v])
            if len(union) == len(group):
                self.tight[group] = union
                self.value_bits[group] = {val: 1 << i for i, val in enumerate(sorted(union))}

    def _bump(self, variables) -> None:
        wdeg = self.wdeg
        for v in variables:
            if v in wdeg:
                wdeg[v] += 1

    def _touch(self, var) -> None:
        if var not in self.queued:
            self.queued.add(var)
            self.queue.append(var)

    def _prune(self, var, value) -> bool:
        dom = self.domains[var]
        try:
            dom.remove(value)
        except ValueError:
            return True
        self.dom_trail.append((var, value))
        self._touch(var)
        return bool(dom)

    def _set_state(self, c: _Constraint, state: int) -> None:
        self.state_trail.append((c, c.state))
        c.state = state

    # -- propagation ------------------------------------------------------

    def _propagate_group(self, group) -> bool:
        """Tight value counting plus Hall-set filtering for one group."""
        assign = self.assign
        domains = self.domains
        values = self.tight.get(group)
        if values is None:
            union: set[int] = set()
            pending = 0
            for peer in group:
                if peer not in assign:
                    pending += 1
                    union.update(domains[peer])
            return pending <= len(union)
        holders: dict[int, str | None] = {}
        for peer in group:
            got = assign.get(peer)
            if got is not None:
                holders[got] = None  # consumed
                continue
            for v in domains[peer]:
                if v in holders:
                    if holders[v] is not None:
                        holders[v] = "*"
                else:
                    holders[v] = peer
        for v in values:
            holder = holders.get(v, "missing")
            if holder == "missing":
                return False
            if holder is None or holder == "*":
                continue
            dom = domains[holder]
            if len(dom) > 1:
                for other in list(dom):
                    if other != v and not self._prune(holder, other):
                        return False
        return self._hall_filter(group)

    def _hall_filter(self, group) -> bool:
        """Variable-side Hall sets: k variables confined to k values claim
        them exclusively; fewer values than variables is a conflict."""
        assign = self.assign
        domains = self.domains
        bits = self.value_bits[group]
        pending = [v for v in group if v not in assign]
        n = len(pending)
        if n <= 1:
            return True
        masks = []
        for v in pending:
            m = 0
            for val in domains[v]:
                m |= bits[val]
            masks.append(m)
        union = [0] * (1 << n)
        for s in range(1, 1 << n):
            low = s & -s
            union[s] = union[s ^ low] | masks[low.bit_length() - 1]
        for s in range(1, (1 << n) - 1):
            size = s.bit_count()
            umask = union[s]
            claimed = umask.bit_count()
            if claimed < size:
                return False
            if claimed == size:
                for i in range(n):
                    if s >> i & 1 or not masks[i] & umask:
                        continue
                    var = pending[i]
                    for val in [x for x in domains[var] if bits[x] & umask]:
                        if not self._prune(var, val):
                            return False
        return True

    def _body_satisfiable(self, c: _Constraint) -> bool:
        """Does the body have any support over current domains?"""
        assign = self.assign
        fn = c.fn
        pending = [v for v in c.body_vars if v not in assign]
        if not pending:
            return fn(assign) is not False
        if len(pending) == 1:
            y = pending[0]
            for val in self.domains[y]:
                assign[y] = val
                ok = fn(assign)
                del assign[y]
                if ok is not False:
                    return True
            return False
        if len(pending) == 2:
            x, y = pending
            for a in self.domains[x]:
                assign[x] = a
                for b in self.domains[y]:
                    assign[y] = b
                    ok = fn(assign)
                    del assign[y]
                    if ok is not False:
                        del assign[x]
                        return True
                del assign[x]
            return False
        return fn(assign) is not False  # wide bodies: three-valued only

    def _revise(self, c: _Constraint, x: str, y: str) -> bool:
        """Remove x values with no supporting y value; conflict if none left."""
        assign = self.assign
        fn = c.fn
        dom_y = self.domains[y]
        removals = []
        for a in self.domains[x]:
            assign[x] = a
            supported = False
            for b in dom_y:
                assign[y] = b
                if fn(assign) is not False:
                    supported = True
                    break
            assign.pop(y, None)
            del assign[x]
            if not supported:
                removals.append(a)
        for a in removals:
            if not self._prune(x, a):
                return False
        return True

    def _ac_check(self, c: _Constraint) -> bool:
        if c.state == 1:
            return True
        assign = self.assign
        if c.guards is not None and c.state == 0:
            pending = []
            for gvar, gval in c.guards:
                got = assign.get(gvar)
                if got is None:
                    if gval not in self.domains[gvar]:
                        self._set_state(c, 1)  # guard can never match
                        return True
                    pending.append((gvar, gval))
                elif got != gval:
                    self._set_state(c, 1)
                    return True
            if len(pending) == 1:
                if not self._body_satisfiable(c):
                    gvar, gval = pending[0]
                    if not self._prune(gvar, gval):
                        self._bump(c.vars)
                        return False
                    self._set_state(c, 1)
                return True
            if pending:
                return True
            self._set_state(c, 2)
        body_pending = [v for v in c.body_vars if v not in assign]
        if not body_pending:
            if c.fn(assign) is False:
                self._bump(c.vars)
                return False
            self._set_state(c, 1)
            return True
        if len(body_pending) == 1:
            y = body_pending[0]
            fn = c.fn
            removals = []
            for candidate in self.domains[y]:
                assign[y] = candidate
                if fn(assign) is False:
                    removals.append(candidate)
            del assign[y]
            for candidate in removals:
                if not self._prune(y, candidate):
                    self._bump(c.vars)
                    return False
            return True
        if len(body_pending) == 2:
            x, y = body_pending
            if not (self._revise(c, x, y) and self._revise(c, y, x)):
                self._bump(c.vars)
                return False
            return True
        verdict = c.fn(assign)
        if verdict is False:
            self._bump(c.vars)
            return False
        if verdict is True:
            self._set_state(c, 1)
        return True

    def _drain(self) -> bool:
        while self.queue:
            var = self.queue.pop()
            self.queued.discard(var)
            for group in self.groups_of.get(var, ()):
                if not self._propagate_group(group):
                    self._bump(group)
                    return False
            for c in self.watch.get(var, ()):
                if not self._ac_check(c):
                    return False
        return True

    # -- search -----------------------------------------------------------

    def run(self) -> dict | None:
        for v in self.domains:
            self._touch(v)
        if not self._drain():
            return None
        return self._solve()

    def _pick(self) -> str | None:
        best = None
        best_key = None
        domains = self.domains
        assign = self.assign
        wdeg = self.wdeg
        for v in domains:
            if v in assign:
                continue
            size = len(domains[v])
            if size <= 1:
                return v
            key = (size / wdeg[v], self.decl[v])
            if best_key is None or key < best_key:
                best, best_key = v, key
        return best

    def _solve(self) -> dict | None:
        var = self._pick()
        if var is None:
            return dict(self.assign)
        for value in sorted(self.domains[var]):
            dom_mark = len(self.dom_trail)
            state_mark = len(self.state_trail)
            self.assign[var] = value
            ok = True
            for group in self.groups_of.get(var, ()):
                for peer in group:
                    if peer != var and peer not in self.assign and not self._prune(peer, value):
                        self._bump(group)
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                self._touch(var)
                ok = self._drain()
            if ok:
                result = self._solve()
                if result is not None:
                    return result
            del self.assign[var]
            self.queue.clear()
            self.queued.clear()
            while len(self.dom_trail) > dom_mark:
                v, val = self.dom_trail.pop()
                self.domains[v].append(val)
            while len(self.state_trail) > state_mark:
                c, state = self.state_trail.pop()
                c.state = state
        return None


class MiniSolver:
    """Assertion store + finite-domain search, one SMT-LIB2 session."""

    def __init__(self) -> None:
        # conflict-weight memory persists across (reset): it is a search
        # heuristic, not logical state, and consecutive problems in one
        # process are usually near-identical
        self._wdeg_memory: dict[str, int] = {}
        self.reset()

    def reset(self) -> None:
        self.variables: list[str] = []
        self.assertions: list = []
        self.frames: list[tuple[int, int]] = []
        self.last_model: dict | None = None
        self.last_status: str | None = None

    def declare(self, name: str) -> None:
        if name in self.variables:
            raise SolverError(f"variable {name!r} already declared")
        self.variables.append(name)

    def push(self, n: int = 1) -> None:
        for _ in range(n):
            self.frames.append((len(self.variables), len(self.assertions)))

    def pop(self, n: int = 1) -> None:
        for _ in range(n):
            if not self.frames:
                raise SolverError("pop on empty assertion stack")
            nvars, nasserts = self.frames.pop()
            del self.variables[nvars:]
            del self.assertions[nasserts:]

    def check_sat(self) -> str:
        conjuncts: list = []
        for a in self.assertions:
            _flatten_and(a, conjuncts)

        bounds = {v: [None, None] for v in self.variables}
        value_sets: dict[str, set] = {}
        rest = []
        for c in conjuncts:
            if c == "true":
                continue
            if c == "false":
                self.last_status = "unsat"
                self.last_model = None
                return "unsat"
            b = _as_linear_bound(c)
            if b is not None and b[0] in bounds:
                var, lo, hi = b
                cur = bounds[var]
                if lo is not None:
                    cur[0] = lo if cur[0] is None else max(cur[0], lo)
                if hi is not None:
                    cur[1] = hi if cur[1] is None else min(cur[1], hi)
                continue
            vs = _as_value_set(c)
            if vs is not None and vs[0] in bounds:
                var, values = vs
                value_sets[var] = values & value_sets[var] if var in value_sets else values
                continue
            rest.append(c)

        alldiff_vars: set[str] = set()
        for group in self._alldiff_groups(rest):
            alldiff_vars.update(group)
        constrained: set[str] = set()
        for c in rest:
            _term_vars(c, constrained)

        domains: dict[str, list[int]] = {}
        for var in self.variables:
            lo, hi = bounds[var]
            if var in value_sets:
                values = value_sets[var]
                if lo is not None:
                    values = {v for v in values if v >= lo}
                if hi is not None:
                    values = {v for v in values if v <= hi}
                domain = sorted(values)
            elif lo is not None and hi is not None:
                if hi - lo + 1 > DOMAIN_CAP:
                    self.last_status = "unknown"
                    return "unknown"
                domain = list(range(lo, hi + 1))
            elif var not in constrained and var not in alldiff_vars:
                domain = [lo if lo is not None else (hi if hi is not None else 0)]
            else:
                self.last_status = "unknown"
                return "unknown"
            if not domain:
                self.last_status = "unsat"
                self.last_model = None
                return "unsat"
            domains[var] = domain

        alldiffs = []
        constraints = []
        for c in rest:
            if isinstance(c, list) and c and c[0] == "distinct" and all(
                isinstance(x, str) for x in c[1:]
            ):
                alldiffs.append(tuple(c[1:]))
                continue
            guards = _as_guards(c)
            if guards is not None:
                gpairs, body = guards
                variables = _term_vars(body, set()) | {g for g, _ in gpairs}
                constraints.append(
                    _Constraint(_compile_bool(body), variables, _term_vars(body, set()), gpairs)
                )
            else:
                body_vars = _term_vars(c, set())
                constraints.append(_Constraint(_compile_bool(c), body_vars, body_vars))

        watch: dict[str, list] = {}
        for c in constraints:
            for v in c.vars:
                watch.setdefault(v, []).append(c)
        groups_of: dict[str, list] = {}
        for group in alldiffs:
            for v in group:
                groups_of.setdefault(v, []).append(group)

        search = _Search(
            domains,
            alldiffs,
            constraints,
            {v: tuple(cs) for v, cs in watch.items()},
            {v: tuple(gs) for v, gs in groups_of.items()},
        )
        memory = self._wdeg_memory
        for v in search.wdeg:
            if v in memory:
                search.wdeg[v] = 1 + (memory[v] - 1) // 2  # decayed carry-over
        model = search.run()
        self._wdeg_memory = dict(search.wdeg)
        if model is None:
            self.last_status = "unsat"
            self.last_model = None
            return "unsat"
        self.last_status = "sat"
        self.last_model = model
        return "sat"

    @staticmethod
    def _alldiff_groups(conjuncts) -> list:
        return [
            c[1:]
            for c in conjuncts
            if isinstance(c, list) and c and c[0] == "distinct" and all(isinstance(x, str) for x in c[1:])
        ]

    def get_model(self) -> str:
        if self.last_status != "sat" or self.last_model is None:
            raise SolverError("get-model without a preceding sat check")
        lines = ["("]
        for var in self.variables:
            value = self.last_model.get(var, 0)
            rendered = str(value) if value >= 0 else f"(- {-value})"
            lines.append(f"  (define-fun {quote_symbol(var)} () Int {rendered})")
        lines.append(")")
        return "\n".join(lines)


def handle(solver: MiniSolver, expr) -> str | None:
    """Execute one command; returns the response text, if any."""
    if not isinstance(expr, list) or not expr:
        raise SolverError(f"malformed command: {expr!r}")
    head = expr[0]
    if head in ("set-logic", "set-option", "set-info"):
        return None
    if head == "declare-const":
        solver.declare(str(expr[1]))
        return None
    if head == "declare-fun":
        if len(expr) >= 3 and expr[2] != []:
            raise SolverError("only 0-ary declare-fun supported")
        solver.declare(str(expr[1]))
        return None
    if head == "assert":
        solver.assertions.append(expr[1])
        return None
    if head == "check-sat":
        return solver.check_sat()
    if head == "get-model":
        return solver.get_model()
    if head == "push":
        solver.push(int(expr[1]) if len(expr) > 1 else 1)
        return None
    if head == "pop":
        solver.pop(int(expr[1]) if len(expr) > 1 else 1)
        return None
    if head == "reset":
        solver.reset()
        return None
    if head == "exit":
        raise SystemExit(0)
    raise SolverError(f"unsupported command {head!r}")


def main() -> int:
    solver = MiniSolver()
    reader = StreamReader()
    out = sys.stdout
    parse_cache: dict[str, list] = {}
    for line in sys.stdin:
        cached = parse_cache.get(line) if reader.empty else None
        if cached is not None:
            exprs = cached
        else:
            try:
                exprs = reader.feed(line)
            except SexprError as exc:
                print(f'(error "{exc}")', file=out, flush=True)
                reader = StreamReader()
                continue
            if reader.empty and exprs and len(parse_cache) < 100_000:
                # terms are never mutated, so sharing parsed structure is safe
                parse_cache[line] = exprs
        for expr in exprs:
            try:
                response = handle(solver, expr)
            except SystemExit:
                return 0
            except SolverError as exc:
                print(f'(error "{exc}")', file=out, flush=True)
            else:
                if response is not None:
                    print(response, file=out, flush=True)
    return 0


if __name__ == "__main__":
    sys.exit(main())
