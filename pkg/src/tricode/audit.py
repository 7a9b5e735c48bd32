"""Error-class detectors over code tables.

Each detector finds pairs of distinct valid codewords that are confusable
under one error pattern, reading the pattern straight off the table
structure (duplicate values in a row, 2-cycles, fixed points, ...).
``brute_force_scan`` is the independent cross-check: it enumerates pairs of
codewords and classifies the transformation between them, knowing nothing
about table structure.  Both routes must agree on every table.

Detectors work on partially defined grids as well (cells may be None), so
the same code audits full tables and 30-word construction skeletons.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, NamedTuple, Optional, Sequence

from .tables import DIGITS, CodeTable, Codeword

Grid = Sequence[Sequence[Optional[int]]]


class ErrorClass(Enum):
    """One row of the detection-condition catalogue.

    The ``_row``/``_col`` suffix names the table condition, not the word
    position: single_row failures are duplicate values within a row, which
    make two words differing only in the *last* digit collide.
    """

    SINGLE_ROW = "single_row"                    # abc <-> abd
    SINGLE_COL = "single_col"                    # acd <-> bcd
    TRANSPOSITION_ROW = "transposition_row"      # abc <-> acb
    TRANSPOSITION_COL = "transposition_col"      # abc <-> bac
    TWIN_ROW = "twin_row"                        # abb <-> acc
    TWIN_COL = "twin_col"                        # aac <-> bbc
    JUMP_TRANSPOSITION = "jump_transposition"    # abc <-> cba
    JUMP_TWIN = "jump_twin"                      # aca <-> bcb
    TRIPLE = "triple"                            # aaa <-> bbb
    PHONETIC_LEFT = "phonetic_left"              # 1xe <-> x0e, x >= 2
    PHONETIC_RIGHT = "phonetic_right"            # r1x <-> rx0, x >= 2
    PHONETIC_END = "phonetic_end"                # rs1 <-> 0sr, r,s >= 2
    CYCLIC = "cyclic"                            # axb <-> xba
    PERMUTATION_MULTISET = "permutation_multiset"
    PERMUTATION_SET = "permutation_set"

    @property
    def tag(self) -> str:
        return self.value


# permutation_set is informational (set-level collisions can exist in a
# perfectly good multiset-permutation-free code); every other class must be
# zero for a table to count as clean.
DETECTION_CLASSES = tuple(k for k in ErrorClass if k is not ErrorClass.PERMUTATION_SET)


class FailureWitness(NamedTuple):
    """Two distinct valid codewords confusable under one error class."""

    error_class: ErrorClass
    words: tuple[Codeword, Codeword]


def _pair(cls: ErrorClass, u: Codeword, v: Codeword) -> FailureWitness:
    # canonical orientation: lexicographically smaller word first
    return FailureWitness(cls, (u, v) if u <= v else (v, u))


def _defined_words(grid: Grid) -> list[Codeword]:
    return [
        Codeword(r, grid[r][c], c)  # type: ignore[arg-type]
        for r in DIGITS
        for c in DIGITS
        if grid[r][c] is not None
    ]


# --- structural detectors -------------------------------------------------

def _single_row(grid: Grid) -> Iterator[FailureWitness]:
    cls = ErrorClass.SINGLE_ROW
    for r in DIGITS:
        for s in DIGITS:
            cols = [c for c in DIGITS if grid[r][c] == s]
            for c1, c2 in itertools.combinations(cols, 2):
                yield _pair(cls, Codeword(r, s, c1), Codeword(r, s, c2))


def _single_col(grid: Grid) -> Iterator[FailureWitness]:
    cls = ErrorClass.SINGLE_COL
    for c in DIGITS:
        for s in DIGITS:
            rows = [r for r in DIGITS if grid[r][c] == s]
            for r1, r2 in itertools.combinations(rows, 2):
                yield _pair(cls, Codeword(r1, s, c), Codeword(r2, s, c))


def _transposition_row(grid: Grid) -> Iterator[FailureWitness]:
    # 2-cycle in a row: S(a,b)=c and S(a,c)=b with b != c
    cls = ErrorClass.TRANSPOSITION_ROW
    for a in DIGITS:
        for b, c in itertools.combinations(DIGITS, 2):
            if grid[a][b] == c and grid[a][c] == b:
                yield _pair(cls, Codeword(a, b, c), Codeword(a, c, b))


def _transposition_col(grid: Grid) -> Iterator[FailureWitness]:
    cls = ErrorClass.TRANSPOSITION_COL
    for e in DIGITS:
        for a, b in itertools.combinations(DIGITS, 2):
            if grid[a][e] == b and grid[b][e] == a:
                yield _pair(cls, Codeword(a, b, e), Codeword(b, a, e))


def _twin_row(grid: Grid) -> Iterator[FailureWitness]:
    # two row fixed points S(a,b)=b, S(a,c)=c give codewords abb and acc
    cls = ErrorClass.TWIN_ROW
    for a in DIGITS:
        fixed = [b for b in DIGITS if grid[a][b] == b]
        for b, c in itertools.combinations(fixed, 2):
            yield _pair(cls, Codeword(a, b, b), Codeword(a, c, c))


def _twin_col(grid: Grid) -> Iterator[FailureWitness]:
    cls = ErrorClass.TWIN_COL
    for e in DIGITS:
        fixed = [a for a in DIGITS if grid[a][e] == a]
        for a, b in itertools.combinations(fixed, 2):
            yield _pair(cls, Codeword(a, a, e), Codeword(b, b, e))


def _jump_transposition(grid: Grid) -> Iterator[FailureWitness]:
    # symmetric pair S(a,b) = S(b,a) gives amb <-> bma
    cls = ErrorClass.JUMP_TRANSPOSITION
    for a, b in itertools.combinations(DIGITS, 2):
        m = grid[a][b]
        if m is not None and grid[b][a] == m:
            yield _pair(cls, Codeword(a, m, b), Codeword(b, m, a))


def _jump_twin(grid: Grid) -> Iterator[FailureWitness]:
    # duplicate value on the main diagonal gives aca <-> bcb
    cls = ErrorClass.JUMP_TWIN
    for m in DIGITS:
        hits = [a for a in DIGITS if grid[a][a] == m]
        for a, b in itertools.combinations(hits, 2):
            yield _pair(cls, Codeword(a, m, a), Codeword(b, m, b))


def _triple(grid: Grid) -> Iterator[FailureWitness]:
    cls = ErrorClass.TRIPLE
    fixed = [a for a in DIGITS if grid[a][a] == a]
    for a, b in itertools.combinations(fixed, 2):
        yield _pair(cls, Codeword(a, a, a), Codeword(b, b, b))


def _phonetic_left(grid: Grid) -> Iterator[FailureWitness]:
    # 1xe <-> x0e; x >= 2 because 10/11 have no "-teen/-ty" confusion
    cls = ErrorClass.PHONETIC_LEFT
    for e in DIGITS:
        x = grid[1][e]
        if x is not None and x >= 2 and grid[x][e] == 0:
            yield _pair(cls, Codeword(1, x, e), Codeword(x, 0, e))


def _phonetic_right(grid: Grid) -> Iterator[FailureWitness]:
    # r1x <-> rx0; x >= 2
    cls = ErrorClass.PHONETIC_RIGHT
    for r in DIGITS:
        x = grid[r][0]
        if x is not None and x >= 2 and grid[r][x] == 1:
            yield _pair(cls, Codeword(r, 1, x), Codeword(r, x, 0))


def _phonetic_end(grid: Grid) -> Iterator[FailureWitness]:
    # rs1 <-> 0sr with r, s >= 2: the phonetic pattern pushed to the outer
    # positions, which is what a rotated code sees as a left/right phonetic
    cls = ErrorClass.PHONETIC_END
    for r in range(2, 10):
        s = grid[r][1]
        if s is not None and s >= 2 and grid[0][r] == s:
            yield _pair(cls, Codeword(r, s, 1), Codeword(0, s, r))


def _cyclic(grid: Grid) -> Iterator[FailureWitness]:
    # axb <-> xba: S(S(a,b),a) = b, skipping the self-image aaa
    cls = ErrorClass.CYCLIC
    for a in DIGITS:
        for b in DIGITS:
            x = grid[a][b]
            if x is None or grid[x][a] != b:
                continue
            if a == b == x:
                continue
            yield _pair(cls, Codeword(a, x, b), Codeword(x, b, a))


def _collisions(
    grid: Grid, cls: ErrorClass, key
) -> Iterator[FailureWitness]:
    buckets: dict[object, list[Codeword]] = {}
    for w in _defined_words(grid):
        buckets.setdefault(key(w), []).append(w)
    for bucket in buckets.values():
        for u, v in itertools.combinations(sorted(bucket), 2):
            yield _pair(cls, u, v)


def _permutation_multiset(grid: Grid) -> Iterator[FailureWitness]:
    return _collisions(grid, ErrorClass.PERMUTATION_MULTISET, Codeword.multiset)


def _permutation_set(grid: Grid) -> Iterator[FailureWitness]:
    return _collisions(grid, ErrorClass.PERMUTATION_SET, Codeword.digit_set)


_DETECTORS = {
    ErrorClass.SINGLE_ROW: _single_row,
    ErrorClass.SINGLE_COL: _single_col,
    ErrorClass.TRANSPOSITION_ROW: _transposition_row,
    ErrorClass.TRANSPOSITION_COL: _transposition_col,
    ErrorClass.TWIN_ROW: _twin_row,
    ErrorClass.TWIN_COL: _twin_col,
    ErrorClass.JUMP_TRANSPOSITION: _jump_transposition,
    ErrorClass.JUMP_TWIN: _jump_twin,
    ErrorClass.TRIPLE: _triple,
    ErrorClass.PHONETIC_LEFT: _phonetic_left,
    ErrorClass.PHONETIC_RIGHT: _phonetic_right,
    ErrorClass.PHONETIC_END: _phonetic_end,
    ErrorClass.CYCLIC: _cyclic,
    ErrorClass.PERMUTATION_MULTISET: _permutation_multiset,
    ErrorClass.PERMUTATION_SET: _permutation_set,
}


def detect_failures_in_grid(grid: Grid, cls: ErrorClass) -> list[FailureWitness]:
    """Witnesses for one class over a (possibly partial) grid, sorted."""
    return sorted(set(_DETECTORS[cls](grid)), key=lambda w: w.words)


def detect_failures(table: CodeTable, cls: ErrorClass) -> list[FailureWitness]:
    """All confusable codeword pairs of ``table`` under one error class."""
    return detect_failures_in_grid(table.rows, cls)


def grid_is_clean(grid: Grid) -> bool:
    """True when no detection class has a witness (set collisions aside).

    Short-circuits on the first witness, so it is cheap enough to call
    inside search loops.
    """
    for cls in DETECTION_CLASSES:
        for _ in _DETECTORS[cls](grid):
            return False
    return True


@dataclass(frozen=True)
class AuditReport:
    """Failure counts and witnesses for every error class of one table."""

    table_name: Optional[str]
    counts: dict[ErrorClass, int]
    witnesses: dict[ErrorClass, tuple[FailureWitness, ...]]
    is_latin: bool
    is_permutation_free: bool
    triple_count: int

    @property
    def is_clean(self) -> bool:
        """True when every class except permutation_set has zero failures."""
        return all(self.counts[k] == 0 for k in DETECTION_CLASSES)

    def count(self, cls: ErrorClass) -> int:
        return self.counts[cls]


def audit_grid(grid: Grid, name: Optional[str] = None) -> AuditReport:
    """Audit a grid that may contain undefined cells.

    On a partial grid only the defined codewords are considered, and
    ``is_latin`` means merely "no duplicate value in any row or column so
    far" (zero single-error failures).
    """
    witnesses = {
        cls: tuple(detect_failures_in_grid(grid, cls)) for cls in ErrorClass
    }
    counts = {cls: len(ws) for cls, ws in witnesses.items()}
    # A fully defined grid with duplicate-free rows and columns is a Latin
    # square; on a partial grid the same condition means "Latin so far".
    no_dups = (
        counts[ErrorClass.SINGLE_ROW] == 0 and counts[ErrorClass.SINGLE_COL] == 0
    )
    return AuditReport(
        table_name=name,
        counts=counts,
        witnesses=witnesses,
        is_latin=no_dups,
        is_permutation_free=counts[ErrorClass.PERMUTATION_MULTISET] == 0,
        triple_count=sum(1 for a in DIGITS if grid[a][a] == a),
    )


def audit(table: CodeTable) -> AuditReport:
    """Full audit of a code table across every error class."""
    return audit_grid(table.rows, name=table.name)


# --- independent brute-force oracle ---------------------------------------
#
# Ordered-pair predicates: does the error pattern turn word u into word v?
# These look only at the words themselves, never at the table.

def _p_single_row(u: Codeword, v: Codeword) -> bool:
    return u.r == v.r and u.s == v.s and u.c != v.c


def _p_single_col(u: Codeword, v: Codeword) -> bool:
    return u.s == v.s and u.c == v.c and u.r != v.r


def _p_transposition_row(u: Codeword, v: Codeword) -> bool:
    return v == (u.r, u.c, u.s) and u.s != u.c


def _p_transposition_col(u: Codeword, v: Codeword) -> bool:
    return v == (u.s, u.r, u.c) and u.r != u.s


def _p_twin_row(u: Codeword, v: Codeword) -> bool:
    return u.s == u.c and v.s == v.c and u.r == v.r and u.s != v.s


def _p_twin_col(u: Codeword, v: Codeword) -> bool:
    return u.r == u.s and v.r == v.s and u.c == v.c and u.r != v.r


def _p_jump_transposition(u: Codeword, v: Codeword) -> bool:
    return v == (u.c, u.s, u.r) and u.r != u.c


def _p_jump_twin(u: Codeword, v: Codeword) -> bool:
    return u.r == u.c and v.r == v.c and u.s == v.s and u.r != v.r


def _p_triple(u: Codeword, v: Codeword) -> bool:
    return u.r == u.s == u.c and v.r == v.s == v.c and u.r != v.r


def _p_phonetic_left(u: Codeword, v: Codeword) -> bool:
    return u.r == 1 and u.s >= 2 and v == (u.s, 0, u.c)


def _p_phonetic_right(u: Codeword, v: Codeword) -> bool:
    return u.s == 1 and u.c >= 2 and v == (u.r, u.c, 0)


def _p_phonetic_end(u: Codeword, v: Codeword) -> bool:
    return u.c == 1 and u.r >= 2 and u.s >= 2 and v == (0, u.s, u.r)


def _p_cyclic(u: Codeword, v: Codeword) -> bool:
    return v == u.shift_left()


def _p_permutation_multiset(u: Codeword, v: Codeword) -> bool:
    return u.multiset() == v.multiset()


def _p_permutation_set(u: Codeword, v: Codeword) -> bool:
    return u.digit_set() == v.digit_set()


_PAIR_PREDICATES = {
    ErrorClass.SINGLE_ROW: _p_single_row,
    ErrorClass.SINGLE_COL: _p_single_col,
    ErrorClass.TRANSPOSITION_ROW: _p_transposition_row,
    ErrorClass.TRANSPOSITION_COL: _p_transposition_col,
    ErrorClass.TWIN_ROW: _p_twin_row,
    ErrorClass.TWIN_COL: _p_twin_col,
    ErrorClass.JUMP_TRANSPOSITION: _p_jump_transposition,
    ErrorClass.JUMP_TWIN: _p_jump_twin,
    ErrorClass.TRIPLE: _p_triple,
    ErrorClass.PHONETIC_LEFT: _p_phonetic_left,
    ErrorClass.PHONETIC_RIGHT: _p_phonetic_right,
    ErrorClass.PHONETIC_END: _p_phonetic_end,
    ErrorClass.CYCLIC: _p_cyclic,
    ErrorClass.PERMUTATION_MULTISET: _p_permutation_multiset,
    ErrorClass.PERMUTATION_SET: _p_permutation_set,
}


def scan_words(words: Iterable[Codeword]) -> dict[ErrorClass, list[FailureWitness]]:
    """Classify every ordered pair of distinct words against all patterns."""
    ws = sorted(set(words))
    found: dict[ErrorClass, set[FailureWitness]] = {cls: set() for cls in ErrorClass}
    for u, v in itertools.permutations(ws, 2):
        for cls, pred in _PAIR_PREDICATES.items():
            if pred(u, v):
                found[cls].add(_pair(cls, u, v))
    return {
        cls: sorted(hits, key=lambda w: w.words) for cls, hits in found.items()
    }


def brute_force_scan(table: CodeTable, cls: ErrorClass) -> list[FailureWitness]:
    """Oracle route for ``detect_failures``: classify all codeword pairs."""
    return scan_words(table.codewords())[cls]
