"""Solver backend: SMT-LIB2 compilation, child-process transport, session state."""

from .compile import EmptyModel, compile_to_smt
from .session import (
    Ack,
    EntityDump,
    JsonSolution,
    QueryResult,
    Sat,
    SolverSession,
    Unknown,
    Value,
    format_wire,
)
from .transport import SmtTransport, SolverTransportError

__all__ = [
    "Ack", "EmptyModel", "EntityDump", "JsonSolution", "QueryResult", "Sat",
    "SmtTransport", "SolverSession", "SolverTransportError", "Unknown", "Value",
    "compile_to_smt", "format_wire",
]
