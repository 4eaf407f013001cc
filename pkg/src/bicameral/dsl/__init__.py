"""Constraint DSL front end: lexing, parsing, semantic analysis, rendering."""

from .ast import (
    Adjacency,
    Assign,
    Clear,
    Command,
    DeclareDomain,
    DeclareEntities,
    DeclareNonUnique,
    DiffValue,
    Direct,
    Discrete,
    Disjunction,
    DomainSpec,
    EntityBind,
    Exclude,
    Greater,
    Indirect,
    IntRange,
    LeftOf,
    Less,
    Operand,
    QueryAttr,
    QueryEntity,
    QueryJson,
    QuerySat,
    Retract,
    RightOf,
    SameValue,
)
from .analyzer import (
    AnalysisError,
    DeclarationContext,
    DuplicateDeclaration,
    OrdinalRequired,
    RetractIndexOutOfRange,
    UndeclaredAttribute,
    UndeclaredEntity,
    ValidatedCommand,
    ValueNotInDomain,
    analyze,
)
from .lexer import LexError, SourceToken, tokenize
from .parser import ParseError, parse_command, parse_script, skip_to_semicolon
from .render import render_command

__all__ = [
    "Adjacency", "Assign", "Clear", "Command", "DeclareDomain", "DeclareEntities",
    "DeclareNonUnique", "DiffValue", "Direct", "Discrete", "Disjunction", "DomainSpec",
    "EntityBind", "Exclude", "Greater", "Indirect", "IntRange", "LeftOf", "Less",
    "Operand", "QueryAttr", "QueryEntity", "QueryJson", "QuerySat", "Retract",
    "RightOf", "SameValue",
    "AnalysisError", "DeclarationContext", "DuplicateDeclaration", "OrdinalRequired",
    "RetractIndexOutOfRange", "UndeclaredAttribute", "UndeclaredEntity",
    "ValidatedCommand", "ValueNotInDomain", "analyze",
    "LexError", "SourceToken", "tokenize",
    "ParseError", "parse_command", "parse_script", "skip_to_semicolon",
    "render_command",
]
