"""Child-process solver transport over SMT-LIB2 stdin/stdout.

The default child is this package's own solver (``python -m
bicameral.smt.minisolver``); any conforming binary can be substituted via
the BICAMERAL_SMT_SOLVER environment variable or an explicit command, e.g.
``BICAMERAL_SMT_SOLVER="z3 -in"``.

Every solve is stateless: (reset), the full script, (check-sat), and
optionally (get-model). Retraction therefore needs no solver-side support.
"""

from __future__ import annotations

import os
import shlex
import subprocess
import sys

from . import sexpr

SOLVER_ENV_VAR = "BICAMERAL_SMT_SOLVER"


class SolverTransportError(RuntimeError):
    pass


def default_solver_command() -> list[str]:
    override = os.environ.get(SOLVER_ENV_VAR)
    if override:
        return shlex.split(override)
    return [sys.executable, "-m", "bicameral.smt.minisolver"]


class SmtTransport:
    """Owns one solver child process; not thread-safe, one per session."""

    def __init__(self, command: list[str] | None = None):
        self.command = list(command) if command else default_solver_command()
        self._proc: subprocess.Popen | None = None

    def _ensure(self) -> subprocess.Popen:
        if self._proc is None or self._proc.poll() is not None:
            try:
                self._proc = subprocess.Popen(
                    self.command,
                    stdin=subprocess.PIPE,
                    stdout=subprocess.PIPE,
                    stderr=subprocess.DEVNULL,
                    text=True,
                    bufsize=1,
                )
            except OSError as exc:
                raise SolverTransportError(f"cannot start solver {self.command}: {exc}") from exc
        return self._proc

    def _send(self, text: str) -> None:
        proc = self._ensure()
        try:
            proc.stdin.write(text)
            proc.stdin.flush()
        except (BrokenPipeError, OSError) as exc:
            raise SolverTransportError(f"solver process died: {exc}") from exc

    def _read_response(self) -> str:
        """Read one response: a bare status word or a balanced s-expression."""
        proc = self._ensure()
        lines: list[str] = []
        while True:
            line = proc.stdout.readline()
            if line == "":
                raise SolverTransportError("solver process closed its output")
            lines.append(line)
            text = "".join(lines).strip()
            if not text:
                lines = []
                continue
            if not text.startswith("(") or sexpr.balanced(text):
                return text

    def solve(self, script: list[str], need_model: bool = False):
        """Run check-sat on a fresh state; returns (status, model-or-None).

        The model maps unquoted symbol names to ints. Raises
        SolverTransportError on process failure or solver-reported errors.
        """
        payload = "(reset)\n" + "\n".join(script) + "\n(check-sat)\n"
        self._send(payload)
        status = self._read_response()
        if status.startswith("(error"):
            raise SolverTransportError(f"solver error: {status}")
        if status not in ("sat", "unsat", "unknown"):
            raise SolverTransportError(f"unexpected solver status: {status!r}")
        model = None
        if need_model and status == "sat":
            self._send("(get-model)\n")
            response = self._read_response()
            if response.startswith("(error"):
                raise SolverTransportError(f"solver error: {response}")
            model = _parse_model(response)
        return status, model

    def restart(self) -> None:
        self.close()
        self._ensure()

    def close(self) -> None:
        if self._proc is not None:
            try:
                if self._proc.poll() is None:
                    try:
                        self._proc.stdin.write("(exit)\n")
                        self._proc.stdin.flush()
                    except (BrokenPipeError, OSError):
                        pass
                    self._proc.terminate()
                self._proc.wait(timeout=5)
            except Exception:
                self._proc.kill()
            self._proc = None

    def __enter__(self) -> "SmtTransport":
        return self

    def __exit__(self, *exc) -> None:
        self.close()


def _parse_model(text: str) -> dict[str, int]:
    """Accepts both ((define-fun ...)) and (model (define-fun ...)) forms."""
    try:
        tree = sexpr.parse_one(text)
    except sexpr.SexprError as exc:
        raise SolverTransportError(f"unparseable model: {exc}") from exc
    if not isinstance(tree, list):
        raise SolverTransportError(f"unexpected model shape: {text!r}")
    entries = tree[1:] if tree and tree[0] == "model" else tree
    model: dict[str, int] = {}
    for entry in entries:
        if not (isinstance(entry, list) and len(entry) >= 5 and entry[0] == "define-fun"):
            continue
        name, value = entry[1], entry[4]
        if isinstance(value, list) and len(value) == 2 and value[0] == "-":
            value = -int(value[1])
        if not isinstance(value, int):
            raise SolverTransportError(f"non-integer model value for {name}: {value!r}")
        model[str(name)] = value
    return model
