"""Core data model for 3-digit decimal check-digit codes.

A code is a 10x10 table S.  Cell S(r, c) holds the middle (check) digit s
of the codeword (r, s, c), so the table row index is the first digit of a
word and the column index is the last digit.  A good code table is a Latin
square: every row and every column contains each digit exactly once, which
is what makes single errors in the outer positions detectable.

Four published tables ship as built-ins:

* ``verhoeff`` - Verhoeff's 1969 irregular code (contains all ten triple
  words xxx, misses 16 cyclic errors, catches phonetic errors),
* ``disjoint_a`` / ``disjoint_b`` / ``disjoint_c`` - three pairwise
  disjoint permutation-free codes; each is a rotation of the others.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Optional

DIGITS = tuple(range(10))


class AmbiguousMultisetError(ValueError):
    """Two or more codewords of a table share the same digit multiset."""

    def __init__(self, multiset: tuple[int, int, int], words: "tuple[Codeword, ...]"):
        self.multiset = multiset
        self.words = words
        shown = ", ".join(str(w) for w in words)
        super().__init__(
            f"multiset {multiset} is ambiguous: codewords {shown} all match"
        )


class UnknownTableError(ValueError):
    """Requested built-in table name does not exist."""

    def __init__(self, name: str):
        self.name = name
        super().__init__(
            f"unknown table {name!r}; built-ins are: {', '.join(BUILTIN_NAMES)}"
        )


def _check_digit_value(value: int, what: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool) or not 0 <= value <= 9:
        raise ValueError(f"{what} must be an integer in 0..9, got {value!r}")
    return value


class Codeword(NamedTuple):
    """An ordered digit triple (r, s, c); s is the middle check digit."""

    r: int
    s: int
    c: int

    def multiset(self) -> tuple[int, int, int]:
        """The digits of the word with multiplicity, in ascending order."""
        a, b, d = sorted(self)
        return (a, b, d)

    def digit_set(self) -> frozenset[int]:
        return frozenset(self)

    def shift_left(self) -> "Codeword":
        """Cyclic left shift: (r, s, c) -> (s, c, r)."""
        return Codeword(self.s, self.c, self.r)

    def shift_right(self) -> "Codeword":
        """Cyclic right shift: (r, s, c) -> (c, r, s)."""
        return Codeword(self.c, self.r, self.s)

    def __str__(self) -> str:
        return f"{self.r}{self.s}{self.c}"

    @classmethod
    def from_string(cls, text: str) -> "Codeword":
        """Parse a word written positionally, e.g. "588" -> (5, 8, 8)."""
        if len(text) != 3 or not text.isdigit():
            raise ValueError(f"a codeword is exactly 3 digits, got {text!r}")
        return cls(int(text[0]), int(text[1]), int(text[2]))


def make_codeword(r: int, s: int, c: int) -> Codeword:
    """Construct a codeword, validating the digit range of each position."""
    return Codeword(
        _check_digit_value(r, "first digit"),
        _check_digit_value(s, "middle digit"),
        _check_digit_value(c, "last digit"),
    )


@dataclass(frozen=True)
class CodeTable:
    """A 10x10 middle-digit table.

    ``rows[r][c]`` is the check digit of the word whose first digit is r and
    last digit is c.  The Latin-square invariants are *not* enforced here:
    auditing defective tables is a supported use, so construction only
    checks shape and digit range.  ``is_latin`` reports the invariants.
    """

    rows: tuple[tuple[int, ...], ...]
    name: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        rows = tuple(tuple(row) for row in self.rows)
        if len(rows) != 10 or any(len(row) != 10 for row in rows):
            raise ValueError("a code table is exactly 10 rows of 10 digits")
        for r, row in enumerate(rows):
            for c, s in enumerate(row):
                _check_digit_value(s, f"cell ({r},{c})")
        object.__setattr__(self, "rows", rows)

    def check_digit(self, r: int, c: int) -> int:
        """The middle digit completing info digits r (first) and c (last)."""
        _check_digit_value(r, "first digit")
        _check_digit_value(c, "last digit")
        return self.rows[r][c]

    def is_codeword(self, word: Codeword) -> bool:
        word = make_codeword(*word)
        return self.rows[word.r][word.c] == word.s

    def codewords(self) -> frozenset[Codeword]:
        """All 100 codewords, one per (first digit, last digit) pair."""
        return frozenset(
            Codeword(r, self.rows[r][c], c) for r in DIGITS for c in DIGITS
        )

    @property
    def is_latin(self) -> bool:
        """True when every row and every column is a permutation of 0..9."""
        full = set(DIGITS)
        return all(set(row) == full for row in self.rows) and all(
            {self.rows[r][c] for r in DIGITS} == full for c in DIGITS
        )

    @property
    def triple_count(self) -> int:
        """Number of digits a with S(a, a) = a, i.e. codewords aaa."""
        return sum(1 for a in DIGITS if self.rows[a][a] == a)

    @classmethod
    def from_codewords(
        cls, words: Iterable[Codeword], name: Optional[str] = None
    ) -> "CodeTable":
        """Rebuild a table from its codeword set (inverse of codewords())."""
        grid: list[list[Optional[int]]] = [[None] * 10 for _ in DIGITS]
        for word in words:
            r, s, c = make_codeword(*word)
            if grid[r][c] is not None and grid[r][c] != s:
                raise ValueError(
                    f"conflicting codewords for cell ({r},{c}): "
                    f"middle digit {grid[r][c]} vs {s}"
                )
            grid[r][c] = s
        missing = [(r, c) for r in DIGITS for c in DIGITS if grid[r][c] is None]
        if missing:
            raise ValueError(f"codeword set leaves {len(missing)} cells undefined")
        return cls(tuple(tuple(row) for row in grid), name=name)  # type: ignore[arg-type]


def decode_multiset(table: CodeTable, digits: Iterable[int]) -> Optional[Codeword]:
    """Recover the codeword whose digits form the given multiset.

    Returns the unique matching codeword, or None when no codeword has that
    multiset.  Raises AmbiguousMultisetError when several codewords share it
    (the table is then not permutation-free).
    """
    key = tuple(sorted(_check_digit_value(d, "multiset digit") for d in digits))
    if len(key) != 3:
        raise ValueError(f"a codeword multiset has exactly 3 digits, got {key!r}")
    matches = tuple(sorted(w for w in table.codewords() if w.multiset() == key))
    if not matches:
        return None
    if len(matches) > 1:
        raise AmbiguousMultisetError(key, matches)  # type: ignore[arg-type]
    return matches[0]


# Published table data, transcribed row-major exactly as printed (row label =
# first digit, column label = last digit, cell = middle digit).

_VERHOEFF = (
    (0, 3, 4, 9, 6, 7, 5, 8, 2, 1),
    (5, 1, 0, 2, 8, 3, 9, 6, 7, 4),
    (7, 6, 2, 4, 1, 0, 8, 9, 3, 5),
    (1, 5, 8, 3, 7, 6, 4, 0, 9, 2),
    (2, 9, 7, 5, 4, 8, 1, 3, 0, 6),
    (6, 7, 9, 0, 3, 5, 2, 4, 1, 8),
    (3, 8, 1, 7, 5, 9, 6, 2, 4, 0),
    (9, 4, 5, 8, 2, 1, 0, 7, 6, 3),
    (4, 0, 6, 1, 9, 2, 3, 5, 8, 7),
    (8, 2, 3, 6, 0, 4, 7, 1, 5, 9),
)

_DISJOINT_A = (
    (2, 7, 4, 8, 0, 6, 3, 5, 1, 9),
    (0, 8, 5, 1, 9, 3, 4, 6, 2, 7),
    (9, 1, 7, 4, 5, 0, 2, 8, 3, 6),
    (1, 9, 2, 5, 6, 4, 8, 3, 7, 0),
    (6, 5, 8, 3, 1, 7, 9, 2, 0, 4),
    (3, 0, 6, 2, 4, 9, 7, 1, 5, 8),
    (8, 6, 3, 7, 2, 5, 0, 9, 4, 1),
    (7, 3, 1, 0, 8, 2, 6, 4, 9, 5),
    (5, 4, 0, 9, 3, 8, 1, 7, 6, 2),
    (4, 2, 9, 6, 7, 1, 5, 0, 8, 3),
)

_DISJOINT_B = (
    (1, 3, 0, 5, 9, 8, 4, 7, 6, 2),
    (5, 2, 9, 7, 8, 4, 6, 0, 1, 3),
    (8, 7, 3, 6, 0, 1, 5, 2, 4, 9),
    (7, 1, 5, 4, 2, 3, 9, 6, 0, 8),
    (0, 4, 6, 8, 5, 2, 3, 9, 7, 1),
    (2, 9, 7, 1, 3, 6, 0, 4, 8, 5),
    (6, 8, 2, 0, 1, 9, 7, 5, 3, 4),
    (9, 5, 4, 3, 7, 0, 1, 8, 2, 6),
    (4, 0, 1, 2, 6, 5, 8, 3, 9, 7),
    (3, 6, 8, 9, 4, 7, 2, 1, 5, 0),
)

_DISJOINT_C = (
    (4, 0, 5, 9, 8, 1, 6, 3, 2, 7),
    (8, 3, 1, 0, 4, 7, 9, 2, 6, 5),
    (0, 8, 6, 2, 7, 3, 4, 5, 9, 1),
    (6, 5, 8, 7, 3, 0, 2, 1, 4, 9),
    (2, 6, 3, 5, 9, 4, 8, 7, 1, 0),
    (7, 2, 4, 3, 1, 8, 5, 9, 0, 6),
    (5, 7, 9, 4, 0, 2, 1, 6, 8, 3),
    (1, 9, 2, 8, 5, 6, 3, 0, 7, 4),
    (3, 1, 7, 6, 2, 9, 0, 4, 5, 8),
    (9, 4, 0, 1, 6, 5, 7, 8, 3, 2),
)

_BUILTINS = {
    "verhoeff": _VERHOEFF,
    "disjoint_a": _DISJOINT_A,
    "disjoint_b": _DISJOINT_B,
    "disjoint_c": _DISJOINT_C,
}

BUILTIN_NAMES = tuple(_BUILTINS)


def builtin(name: str) -> CodeTable:
    """Return a built-in published table by name.

    The table data is re-checked against the Latin invariants on every call;
    a transcription defect in the embedded constants is the dominant risk
    and should fail loudly rather than validate garbage.
    """
    try:
        rows = _BUILTINS[name]
    except KeyError:
        raise UnknownTableError(name) from None
    table = CodeTable(rows, name=name)
    if not table.is_latin:
        raise AssertionError(f"built-in table {name!r} fails the Latin invariants")
    return table
