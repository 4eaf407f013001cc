"""Logic-grid puzzle generation with verified uniqueness and minimal clue sets."""

from .clues import Clue, NoApplicableClueType, clue_holds, sample_clue
from .config import GenConfig, load_categories
from .generator import GenerationBudgetExceeded, check_unique, generate_puzzle
from .grid import AttributeSpec, PuzzleSpec, evaluate_command, sample_solution
from .render import make_tagged_puzzle, render_puzzle

__all__ = [
    "AttributeSpec", "Clue", "GenConfig", "GenerationBudgetExceeded",
    "NoApplicableClueType", "PuzzleSpec", "check_unique", "clue_holds",
    "evaluate_command", "generate_puzzle", "load_categories",
    "make_tagged_puzzle", "render_puzzle", "sample_clue", "sample_solution",
]
