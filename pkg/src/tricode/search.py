"""Reconstruction of disjoint permutation-free codes by constraint search.

The construction runs in two stages.  A *skeleton* fixes the 30 codewords
that contain a doubled digit: for every digit a, one word of each of the
forms (x a a), (a x a) and (a a x) with x != a.  A skeleton is valid when
its 30 words, viewed as a partial table, already trip none of the error
detectors.  The remaining 70 cells are then completed with words of three
distinct digits, subject to:

* Latin closure - each row and column receives every digit exactly once,
* set distinctness - each of the 120 three-element digit subsets is used
  by at most one completion word (together with the skeleton's multiset
  distinctness this makes the whole code permutation-free),
* the three phonetic pair constraints (left, right, end), so the finished
  code and both of its rotations are free of phonetic confusions.

The completion solver is a deterministic backtracker: most-constrained
cell first, candidate digits filtered by bitmask availability and tried in
a seed-relabeled order, wall-clock budget honored at every step.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from enum import Enum
from random import Random
from typing import Iterable, Optional

from .audit import (
    AuditReport,
    DETECTION_CLASSES,
    ErrorClass,
    audit,
    audit_grid,
    grid_is_clean,
)
from .tables import DIGITS, CodeTable, Codeword
from .transform import rotate_left, rotate_right


class SkeletonError(ValueError):
    """The given words do not form a well-shaped skeleton."""


class SkeletonCensusError(SkeletonError):
    """Doubled-word census of a table does not match 10 words per form."""

    def __init__(self, census: dict, triples: int):
        self.census = census
        self.triples = triples
        parts = ", ".join(f"{form.value}: {n}" for form, n in census.items())
        super().__init__(
            f"table is not skeleton-bearing: doubled-word census {{{parts}}}"
            f" (need 10 per form, one per doubled digit), {triples} triple words"
        )


class SearchTimeout(Exception):
    """Completion ran out of wall-clock budget."""

    def __init__(self, budget: float, elapsed: float, nodes: int, best_filled: int):
        self.budget = budget
        self.elapsed = elapsed
        self.nodes = nodes
        self.best_filled = best_filled
        super().__init__(
            f"search budget of {budget:.0f}s exceeded after {elapsed:.1f}s,"
            f" {nodes} nodes expanded, deepest partial assignment"
            f" filled {best_filled} cells"
        )


class SearchExhausted(Exception):
    """The search space was fully explored without finding a solution."""

    def __init__(self, what: str, elapsed: float, nodes: int):
        self.elapsed = elapsed
        self.nodes = nodes
        super().__init__(
            f"{what}: search space exhausted after {nodes} nodes"
            f" ({elapsed:.1f}s); no solution exists under the constraints"
        )


class DisjointTripleError(ValueError):
    """Input table does not qualify for the three-rotation construction."""


class FormTag(Enum):
    """Position of the odd digit x in a doubled word."""

    R = "r"  # (x a a)
    C = "c"  # (a x a)
    L = "l"  # (a a x)


def form_of(word: Codeword) -> Optional[FormTag]:
    """Form of a doubled word, or None if its digits are not exactly two."""
    if len(set(word)) != 2:
        return None
    if word.s == word.c:
        return FormTag.R
    if word.r == word.c:
        return FormTag.C
    return FormTag.L


def _word_for(form: FormTag, a: int, x: int) -> Codeword:
    if form is FormTag.R:
        return Codeword(x, a, a)
    if form is FormTag.C:
        return Codeword(a, x, a)
    return Codeword(a, a, x)


@dataclass(frozen=True)
class Skeleton:
    """The 30 doubled-digit codewords seeding a construction.

    ``r_map[a]``, ``c_map[a]``, ``l_map[a]`` give the odd digit x of the
    form-r/c/l word doubling digit a.  The maps need not be bijections
    (defects show up as detector failures in ``validate_skeleton``), but
    x != a always holds and the 30 words must occupy 30 distinct cells.
    """

    r_map: tuple[int, ...]
    c_map: tuple[int, ...]
    l_map: tuple[int, ...]

    def __post_init__(self):
        for form, xs in (("r", self.r_map), ("c", self.c_map), ("l", self.l_map)):
            xs = tuple(xs)
            if len(xs) != 10 or any(x not in DIGITS for x in xs):
                raise SkeletonError(f"{form}-form map must assign a digit to each a")
            if any(x == a for a, x in enumerate(xs)):
                raise SkeletonError(f"{form}-form word must have x != a")
        object.__setattr__(self, "r_map", tuple(self.r_map))
        object.__setattr__(self, "c_map", tuple(self.c_map))
        object.__setattr__(self, "l_map", tuple(self.l_map))
        self.grid()  # raises on cell conflicts

    def form_map(self, form: FormTag) -> tuple[int, ...]:
        return {FormTag.R: self.r_map, FormTag.C: self.c_map, FormTag.L: self.l_map}[form]

    @property
    def entries(self) -> tuple[tuple[Codeword, FormTag], ...]:
        """The 30 (word, form) pairs, ordered by doubled digit then form."""
        out = []
        for a in DIGITS:
            for form in FormTag:
                out.append((_word_for(form, a, self.form_map(form)[a]), form))
        return tuple(out)

    def words(self) -> tuple[Codeword, ...]:
        return tuple(sorted(w for w, _ in self.entries))

    def grid(self) -> tuple[tuple[Optional[int], ...], ...]:
        """The partial 10x10 table holding just the 30 skeleton words."""
        grid: list[list[Optional[int]]] = [[None] * 10 for _ in DIGITS]
        for word, _form in self.entries:
            held = grid[word.r][word.c]
            if held is not None and held != word.s:
                raise SkeletonError(
                    f"cell ({word.r},{word.c}) claimed by two skeleton words"
                )
            grid[word.r][word.c] = word.s
        return tuple(tuple(row) for row in grid)

    @classmethod
    def from_words(cls, words: Iterable[Codeword]) -> "Skeleton":
        """Build a skeleton from 30 doubled words, classifying their forms."""
        maps: dict[FormTag, dict[int, int]] = {form: {} for form in FormTag}
        census = {form: 0 for form in FormTag}
        triples = 0
        for word in set(words):
            form = form_of(word)
            if form is None:
                if len(set(word)) == 1:
                    triples += 1
                    continue
                raise SkeletonError(f"word {word} has three distinct digits")
            census[form] += 1
            a, x = (word.s, word.r) if form is FormTag.R else (word.r, word.s)
            if form is FormTag.L:
                a, x = word.r, word.c
            if a in maps[form]:
                raise SkeletonCensusError(census, triples)
            maps[form][a] = x
        if triples or any(census[form] != 10 for form in FormTag):
            raise SkeletonCensusError(census, triples)
        return cls(
            tuple(maps[FormTag.R][a] for a in DIGITS),
            tuple(maps[FormTag.C][a] for a in DIGITS),
            tuple(maps[FormTag.L][a] for a in DIGITS),
        )


def extract_skeleton(table: CodeTable) -> Skeleton:
    """Pull the doubled-digit words out of a table as a skeleton.

    Raises SkeletonCensusError when the table does not carry exactly one
    doubled word per digit per form (a table with triple codewords, for
    instance, has no skeleton at all).
    """
    doubled = [w for w in table.codewords() if len(set(w)) == 2]
    triples = sum(1 for w in table.codewords() if len(set(w)) == 1)
    census = {form: 0 for form in FormTag}
    for w in doubled:
        census[form_of(w)] += 1  # type: ignore[index]
    if triples or any(census[form] != 10 for form in FormTag):
        raise SkeletonCensusError(census, triples)
    return Skeleton.from_words(doubled)


def validate_skeleton(skeleton: Skeleton) -> AuditReport:
    """Audit the skeleton's 30 words as a partial table.

    The skeleton is valid exactly when the report ``is_clean``: every
    detection class (set-level collisions aside) has zero witnesses among
    the defined cells.
    """
    return audit_grid(skeleton.grid(), name="skeleton")


@dataclass(frozen=True)
class TripleClassIndex:
    """The 120 three-element digit subsets, indexable from any word."""

    classes: tuple[frozenset[int], ...]

    @classmethod
    def build(cls) -> "TripleClassIndex":
        return cls(tuple(frozenset(c) for c in itertools.combinations(DIGITS, 3)))

    def __len__(self) -> int:
        return len(self.classes)

    def index_of(self, digits: Iterable[int]) -> int:
        """Index of the subset equal to ``digits`` (which must be 3 distinct)."""
        key = frozenset(digits)
        if len(key) != 3:
            raise ValueError(f"not a three-element digit set: {sorted(key)}")
        return self.classes.index(key)


@dataclass(frozen=True)
class CompletionResult:
    """A finished table plus the parts and statistics of its search."""

    table: CodeTable
    skeleton: Skeleton
    completion: tuple[Codeword, ...]  # the 70 distinct-digit words
    seed: int
    nodes_expanded: int
    elapsed: float


def _grid_clean(grid) -> bool:
    """No witnesses for any detection class (partial-table semantics)."""
    return not any(
        next(iter(_DETECTORS[cls](grid)), None) is not None
        for cls in DETECTION_CLASSES
    )


def _phonetic_clear(grid, r: int, s: int, c: int) -> bool:
    """Would placing word (r,s,c) complete a phonetic pair already on the grid?

    Each pattern involves two cells; it is enough to test the patterns the
    new word could participate in against currently defined cells.
    """
    # left pair: (1,x,e) and (x,0,e) with x >= 2
    if r == 1 and s >= 2 and grid[s][c] == 0:
        return False
    if s == 0 and r >= 2 and grid[1][c] == r:
        return False
    # right pair: (r,1,x) and (r,x,0) with x >= 2
    if s == 1 and c >= 2 and grid[r][0] == c:
        return False
    if c == 0 and s >= 2 and grid[r][s] == 1:
        return False
    # end pair: (a,b,1) and (0,b,a) with a,b >= 2
    if c == 1 and r >= 2 and s >= 2 and grid[0][r] == s:
        return False
    if r == 0 and s >= 2 and c >= 2 and grid[c][1] == s:
        return False
    return True


def _seeded_digit_order(seed: int) -> list[int]:
    order = list(DIGITS)
    Random(seed).shuffle(order)
    return order


def complete_skeleton(
    skeleton: Skeleton, seed: int = 0, time_budget: float = 300.0
) -> CompletionResult:
    """Complete a valid skeleton into a full permutation-free code table.

    Deterministic for a fixed (skeleton, seed).  Raises SearchTimeout when
    the budget runs out and SearchExhausted when no completion exists.
    """
    report = validate_skeleton(skeleton)
    if not report.is_clean:
        bad = {k.tag: n for k, n in report.counts.items() if n and k in DETECTION_CLASSES}
        raise SkeletonError(f"skeleton fails validation: {bad}")

    grid = [list(row) for row in skeleton.grid()]
    full_mask = (1 << 10) - 1
    row_mask = [full_mask] * 10  # bit set = digit still available
    col_mask = [full_mask] * 10
    for r in DIGITS:
        for c in DIGITS:
            s = grid[r][c]
            if s is not None:
                row_mask[r] &= ~(1 << s)
                col_mask[c] &= ~(1 << s)

    index = TripleClassIndex.build()
    used_classes: set[int] = set()
    # pair_excl[(lo, hi)] = digits s whose set {lo, s, hi} is already used
    pair_excl: dict[tuple[int, int], int] = {}

    digit_order = _seeded_digit_order(seed)
    empty = [(r, c) for r in DIGITS for c in DIGITS if grid[r][c] is None]

    t0 = time.monotonic()
    nodes = 0
    best_filled = 0
    total = len(empty)

    def cell_mask(r: int, c: int) -> int:
        m = row_mask[r] & col_mask[c] & ~(1 << r) & ~(1 << c)
        key = (r, c) if r < c else (c, r)
        return m & ~pair_excl.get(key, 0)

    def place(r: int, c: int, s: int) -> int:
        grid[r][c] = s
        row_mask[r] &= ~(1 << s)
        col_mask[c] &= ~(1 << s)
        ci = index.index_of((r, s, c))
        used_classes.add(ci)
        lo, mid, hi = sorted((r, s, c))
        for pair, third in (((lo, mid), hi), ((lo, hi), mid), ((mid, hi), lo)):
            pair_excl[pair] = pair_excl.get(pair, 0) | (1 << third)
        return ci

    def unplace(r: int, c: int, s: int, ci: int) -> None:
        grid[r][c] = None
        row_mask[r] |= 1 << s
        col_mask[c] |= 1 << s
        used_classes.discard(ci)
        lo, mid, hi = sorted((r, s, c))
        for pair, third in (((lo, mid), hi), ((lo, hi), mid), ((mid, hi), lo)):
            pair_excl[pair] &= ~(1 << third)

    def backtrack(remaining: list[tuple[int, int]]) -> bool:
        nonlocal nodes, best_filled
        best_filled = max(best_filled, total - len(remaining))
        if not remaining:
            return True
        if time.monotonic() - t0 > time_budget:
            raise SearchTimeout(
                time_budget, time.monotonic() - t0, nodes, best_filled
            )
        # most-constrained cell first; a 0-candidate cell fails immediately
        best_i = -1
        best_count = 11
        for i, (r, c) in enumerate(remaining):
            count = cell_mask(r, c).bit_count()
            if count == 0:
                return False
            if count < best_count:
                best_i, best_count = i, count
                if count == 1:
                    break
        r, c = remaining[best_i]
        rest = remaining[:best_i] + remaining[best_i + 1 :]
        mask = cell_mask(r, c)
        for s in digit_order:
            if not (mask >> s) & 1:
                continue
            if not _phonetic_clear(grid, r, s, c):
                continue
            nodes += 1
            ci = place(r, c, s)
            if backtrack(rest):
                return True
            unplace(r, c, s, ci)
        return False

    if not backtrack(empty):
        raise SearchExhausted(
            "skeleton completion", time.monotonic() - t0, nodes
        )

    table = CodeTable(tuple(tuple(row) for row in grid))  # type: ignore[arg-type]
    result = CompletionResult(
        table=table,
        skeleton=skeleton,
        completion=tuple(
            sorted(w for w in table.codewords() if len(set(w)) == 3)
        ),
        seed=seed,
        nodes_expanded=nodes,
        elapsed=time.monotonic() - t0,
    )
    # the constraints above are supposed to make this unreachable; audit
    # anyway so a solver defect can never hand out a defective code
    final = audit(table)
    if not final.is_clean or final.triple_count:
        bad = {k.tag: n for k, n in final.counts.items() if n}
        raise AssertionError(f"completion produced a defective table: {bad}")
    return result


def find_skeleton(seed: int = 0) -> Skeleton:
    """Search for a valid skeleton from scratch; deterministic per seed.

    Levels of the backtracking assign, for one doubled digit a at a time,
    the odd digits of its three words.  After each placement the partial
    grid must stay free of detector witnesses, which prunes hard: the three
    maps are forced toward fixed-point-free bijections with per-digit
    distinct odd digits.
    """
    digit_order = _seeded_digit_order(seed)
    grid: list[list[Optional[int]]] = [[None] * 10 for _ in DIGITS]
    used = {form: set() for form in FormTag}
    maps: dict[FormTag, list[Optional[int]]] = {form: [None] * 10 for form in FormTag}
    t0 = time.monotonic()
    nodes = 0

    def place(words: list[Codeword]) -> bool:
        for w in words:
            if grid[w.r][w.c] is not None:
                for placed in words[: words.index(w)]:
                    grid[placed.r][placed.c] = None
                return False
            grid[w.r][w.c] = w.s
        return True

    def unplace(words: list[Codeword]) -> None:
        for w in words:
            grid[w.r][w.c] = None

    def backtrack(a: int) -> bool:
        nonlocal nodes
        if a == 10:
            return True
        for xr in digit_order:
            if xr == a or xr in used[FormTag.R]:
                continue
            for xc in digit_order:
                if xc in (a, xr) or xc in used[FormTag.C]:
                    continue
                for xl in digit_order:
                    if xl in (a, xr, xc) or xl in used[FormTag.L]:
                        continue
                    nodes += 1
                    words = [
                        Codeword(xr, a, a),
                        Codeword(a, xc, a),
                        Codeword(a, a, xl),
                    ]
                    if not place(words):
                        continue
                    if _grid_clean(grid):
                        for form, x in ((FormTag.R, xr), (FormTag.C, xc), (FormTag.L, xl)):
                            used[form].add(x)
                            maps[form][a] = x
                        if backtrack(a + 1):
                            return True
                        for form, x in ((FormTag.R, xr), (FormTag.C, xc), (FormTag.L, xl)):
                            used[form].discard(x)
                            maps[form][a] = None
                    unplace(words)
        return False

    if not backtrack(0):
        raise SearchExhausted("skeleton search", time.monotonic() - t0, nodes)
    skeleton = Skeleton(
        tuple(maps[FormTag.R]),  # type: ignore[arg-type]
        tuple(maps[FormTag.C]),  # type: ignore[arg-type]
        tuple(maps[FormTag.L]),  # type: ignore[arg-type]
    )
    assert validate_skeleton(skeleton).is_clean
    return skeleton


def construct_disjoint_triple(
    table: CodeTable,
) -> tuple[CodeTable, CodeTable, CodeTable]:
    """The (left rotation, table, right rotation) triple of a good code.

    Requires the input to be multiset-permutation-free with no triple
    codewords; under those conditions a codeword shared between rotations
    would be a cyclic shift of itself, forcing a triple, so the three
    tables are pairwise disjoint.
    """
    report = audit(table)
    problems = []
    if report.counts[ErrorClass.PERMUTATION_MULTISET]:
        problems.append(
            f"permutation_multiset={report.counts[ErrorClass.PERMUTATION_MULTISET]}"
        )
    if report.triple_count:
        problems.append(f"triple_count={report.triple_count}")
    if problems:
        raise DisjointTripleError(
            f"table does not qualify for the rotation triple: {', '.join(problems)}"
        )
    return rotate_left(table), table, rotate_right(table)
