"""Codeword-set rotations, digit relabeling, and disjointness tests.

The three disjoint built-in codes are rotations of one another: shifting
every codeword (r, s, c) to (s, c, r) turns one valid table into another.
Rotation is defined on the codeword set, not by transposing the matrix;
the result is only a well-formed table when each output cell is hit
exactly once, which the Latin invariants of the input guarantee.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .tables import DIGITS, CodeTable, Codeword, _check_digit_value


@dataclass(frozen=True)
class DigitPermutation:
    """A bijection on the digits 0..9; ``images[d]`` is the image of d."""

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(self.images)
        if sorted(images) != list(DIGITS):
            raise ValueError(
                f"digit permutation must list each of 0..9 once, got {images!r}"
            )
        object.__setattr__(self, "images", images)

    def __call__(self, digit: int) -> int:
        return self.images[_check_digit_value(digit, "digit")]

    def map_word(self, word: Codeword) -> Codeword:
        return Codeword(self(word.r), self(word.s), self(word.c))

    def inverse(self) -> "DigitPermutation":
        inv = [0] * 10
        for d, img in enumerate(self.images):
            inv[img] = d
        return DigitPermutation(tuple(inv))

    @property
    def fixes_zero_one(self) -> bool:
        """Whether 0 and 1 stay put (the phonetic patterns single them out)."""
        return self.images[0] == 0 and self.images[1] == 1

    @classmethod
    def identity(cls) -> "DigitPermutation":
        return cls(DIGITS)

    @classmethod
    def from_string(cls, text: str) -> "DigitPermutation":
        """Parse "2301456789"-style notation: position d holds the image of d."""
        if len(text) != 10 or not text.isdigit():
            raise ValueError(f"a digit permutation is exactly 10 digits, got {text!r}")
        return cls(tuple(int(ch) for ch in text))

    def __str__(self) -> str:
        return "".join(str(d) for d in self.images)


def _rebuild(words: Iterable[Codeword], name: Optional[str]) -> CodeTable:
    grid: list[list[Optional[int]]] = [[None] * 10 for _ in DIGITS]
    for w in words:
        if grid[w.r][w.c] is not None:
            raise ValueError(
                f"rotation is not well defined: cell ({w.r},{w.c}) assigned twice"
                " (input rows/columns are not permutations)"
            )
        grid[w.r][w.c] = w.s
    # 100 input words into 100 cells with no collision: all cells assigned
    return CodeTable(tuple(tuple(row) for row in grid), name=name)  # type: ignore[arg-type]


def rotate_left(table: CodeTable) -> CodeTable:
    """Table whose codewords are the left shifts (s, c, r) of the input's.

    Requires every row of the input to be a permutation, otherwise two
    shifted words land in the same cell.
    """
    return _rebuild((w.shift_left() for w in table.codewords()), name=None)


def rotate_right(table: CodeTable) -> CodeTable:
    """Table whose codewords are the right shifts (c, r, s) of the input's.

    Requires every column of the input to be a permutation.
    """
    return _rebuild((w.shift_right() for w in table.codewords()), name=None)


def permute_digits(table: CodeTable, perm: DigitPermutation) -> CodeTable:
    """Relabel every digit of every codeword through ``perm``.

    The output satisfies S'(p(r), p(c)) = p(S(r, c)); relabeling never
    collides, so this works on arbitrary tables.
    """
    grid = [[0] * 10 for _ in DIGITS]
    for r in DIGITS:
        for c in DIGITS:
            grid[perm(r)][perm(c)] = perm(table.rows[r][c])
    return CodeTable(tuple(tuple(row) for row in grid), name=None)


def common_codewords(t1: CodeTable, t2: CodeTable) -> list[Codeword]:
    """Codewords valid in both tables; empty exactly when they are disjoint."""
    return sorted(
        Codeword(r, t1.rows[r][c], c)
        for r in DIGITS
        for c in DIGITS
        if t1.rows[r][c] == t2.rows[r][c]
    )
