"""Words over named generators.

A word is a string of space-separated tokens; a token is a generator
name, optionally suffixed ``^-1``.  The empty string is the identity.
Evaluation multiplies with balanced bracketing: for long words with
large-norm letters this keeps the rounding amplification near the
minimum attainable (intermediate subproducts, not running prefixes).
"""

from __future__ import annotations

from .core import Isometry
from .errors import DomainError

Letter = tuple[str, int]


def parse_word(word: str) -> tuple[Letter, ...]:
    letters = []
    for tok in word.split():
        if tok.endswith("^-1"):
            letters.append((tok[:-3], -1))
        else:
            letters.append((tok, 1))
    return tuple(letters)


def format_word(letters) -> str:
    return " ".join(name if e == 1 else f"{name}^-1" for name, e in letters)


def invert_word(letters) -> tuple[Letter, ...]:
    return tuple((name, -e) for name, e in reversed(letters))


def reduce_word(letters) -> tuple[Letter, ...]:
    out: list[Letter] = []
    for let in letters:
        if out and out[-1][0] == let[0] and out[-1][1] == -let[1]:
            out.pop()
        else:
            out.append(let)
    return tuple(out)


def evaluate_word(generators: dict[str, Isometry], word) -> Isometry:
    """Evaluate a word (string or letter tuple) over named isometries."""
    letters = parse_word(word) if isinstance(word, str) else tuple(word)
    if not letters:
        names = next(iter(generators.values()), None)
        if names is None:
            raise DomainError("empty generator set")
        return Isometry.identity(names.form)
    mats = []
    for name, e in letters:
        if name not in generators:
            raise DomainError(f"unknown generator {name!r}")
        g = generators[name]
        mats.append(g if e == 1 else g.inverse())
    return _balanced_product(mats)


def _balanced_product(mats: list[Isometry]) -> Isometry:
    if len(mats) == 1:
        return mats[0]
    mid = len(mats) // 2
    return _balanced_product(mats[:mid]) @ _balanced_product(mats[mid:])
