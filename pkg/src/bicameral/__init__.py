"""Dual-stream coupling toolkit.

Subpackages:
    dsl        -- constraint language: lexer, parser, semantic analyzer, renderer
    smt        -- SMT-LIB2 compilation, solver session, built-in QF_LIA solver
    puzzles    -- logic-grid puzzle generator with uniqueness and minimality
    alignment  -- dual-stream token alignment, scheduling, loss masks
    coupling   -- gated coupling operators, adapters, wiring, trainable interface
    runtime    -- lockstep generation orchestrator and tool backends
    evalkit    -- exact calculator, answer grading, size taxonomy, sweep stats
    cli        -- command-line entry points
"""

__version__ = "0.1.0"
