"""Data model for q-ary codes: words, codes, coalitions, descendants.

Words are plain tuples of symbols drawn from {0, .., q-1}.  A Code fixes the
length N and alphabet size q and owns an ordered tuple of distinct words; all
index-based structures (coalitions, parent-set families, witnesses) refer to
positions in that tuple.  Everything is immutable and hashable.

For binary codes a packed representation is available: a word becomes an
N-bit integer (``packed_words``) and a coordinate becomes an n-bit integer
over the codewords (``packed_rows``).  The packed paths must agree bit for
bit with the generic ones; the test suite enforces this.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Iterator, Sequence

__all__ = [
    "Code",
    "Coalition",
    "DescProfile",
    "DescendantSetTooLarge",
    "DEFAULT_DESCENDANT_CAP",
    "INFINITE_DISTANCE",
    "MAX_ALPHABET",
    "ParentSetFamily",
    "Word",
    "desc_profile",
    "enumerate_descendants",
    "group_distance",
    "hamming_distance",
    "identical_count",
    "is_descendant",
    "iter_coalitions",
    "min_distance",
    "packed_rows",
    "packed_words",
    "parent_sets",
    "profile_size",
]

Word = tuple[int, ...]
Coalition = tuple[int, ...]  # sorted code indices
DescProfile = tuple[tuple[int, ...], ...]  # per coordinate, sorted symbols

#: Minimum distance of a code with fewer than two words.  ``math.inf``
#: compares above every integer, which is exactly the ordering we need.
INFINITE_DISTANCE = math.inf

#: Guard against enumerating descendant sets with more members than this.
DEFAULT_DESCENDANT_CAP = 2**32

#: Symbols are kept as small non-negative integers.
MAX_ALPHABET = 2**16


class DescendantSetTooLarge(RuntimeError):
    """An exact descendant enumeration would exceed the configured cap."""


@dataclass(frozen=True)
class Code:
    """An (N, n, q) code: ``n`` distinct length-``N`` words over {0..q-1}.

    Word order is significant (file order / construction order); every
    tie-break in the package resolves to the lowest index.
    """

    words: tuple[Word, ...]
    q: int

    def __post_init__(self) -> None:
        words = tuple(tuple(int(s) for s in w) for w in self.words)
        object.__setattr__(self, "words", words)
        if not isinstance(self.q, int) or self.q < 2:
            raise ValueError(f"alphabet size must be an integer >= 2, got {self.q}")
        if self.q > MAX_ALPHABET:
            raise ValueError(f"alphabet size {self.q} exceeds supported maximum {MAX_ALPHABET}")
        if not words:
            raise ValueError("a code needs at least one word")
        n0 = len(words[0])
        if n0 < 1:
            raise ValueError("words must have length >= 1")
        for w in words:
            if len(w) != n0:
                raise ValueError(f"ragged word lengths: {len(w)} vs {n0}")
            for s in w:
                if not 0 <= s < self.q:
                    raise ValueError(f"symbol {s} out of range for q={self.q}")
        if len(set(words)) != len(words):
            raise ValueError("duplicate words are not allowed")

    @property
    def length(self) -> int:
        return len(self.words[0])

    @property
    def size(self) -> int:
        return len(self.words)

    @classmethod
    def from_strings(cls, rows: Iterable[str], q: int) -> "Code":
        """Build a code from digit strings like ``"0110"`` (requires q <= 10)."""
        if q > 10:
            raise ValueError("digit-string construction only supports q <= 10")
        return cls(tuple(tuple(int(ch) for ch in row) for row in rows), q)

    def matrix_rows(self) -> tuple[tuple[int, ...], ...]:
        """The N x n representation matrix: row i lists coordinate i of every word."""
        return tuple(tuple(w[i] for w in self.words) for i in range(self.length))

    def coalition_words(self, indices: Iterable[int]) -> tuple[Word, ...]:
        return tuple(self.words[i] for i in indices)


@dataclass(frozen=True)
class ParentSetFamily:
    """All coalitions of size <= t that could have produced a word.

    Coalitions are index tuples into the owning code, ordered by size and
    then lexicographically.
    """

    word: Word
    t: int
    coalitions: tuple[Coalition, ...]

    def __len__(self) -> int:
        return len(self.coalitions)

    def __iter__(self) -> Iterator[Coalition]:
        return iter(self.coalitions)

    def common_members(self) -> tuple[int, ...]:
        """Indices present in every parent set (empty when none or no parents)."""
        if not self.coalitions:
            return ()
        common = set(self.coalitions[0])
        for coalition in self.coalitions[1:]:
            common &= set(coalition)
            if not common:
                break
        return tuple(sorted(common))


def hamming_distance(x: Sequence[int], y: Sequence[int]) -> int:
    """Number of coordinates where the two words differ."""
    if len(x) != len(y):
        raise ValueError(f"length mismatch: {len(x)} vs {len(y)}")
    return sum(a != b for a, b in zip(x, y))


def identical_count(x: Sequence[int], y: Sequence[int]) -> int:
    """Number of agreeing coordinates, N - d(x, y)."""
    return len(x) - hamming_distance(x, y)


def min_distance(code: Code) -> int | float:
    """Smallest pairwise distance; INFINITE_DISTANCE for codes with < 2 words."""
    if code.size < 2:
        return INFINITE_DISTANCE
    if code.q == 2:
        masks = packed_words(code)
        best = code.length + 1
        for i, j in combinations(range(code.size), 2):
            d = (masks[i] ^ masks[j]).bit_count()
            if d < best:
                best = d
                if best == 1:
                    return 1
        return best
    best = code.length + 1
    for x, y in combinations(code.words, 2):
        d = hamming_distance(x, y)
        if d < best:
            best = d
            if best == 1:
                break
    return best


def desc_profile(members: Iterable[Word]) -> DescProfile:
    """Per-coordinate symbol sets available to a coalition, sorted tuples."""
    members = tuple(members)
    if not members:
        raise ValueError("empty coalition")
    n0 = len(members[0])
    for m in members:
        if len(m) != n0:
            raise ValueError("length mismatch inside coalition")
    return tuple(tuple(sorted(set(col))) for col in zip(*members))


def profile_size(profile: DescProfile) -> int:
    """Number of words the profile describes (product of coordinate choices)."""
    size = 1
    for col in profile:
        size *= len(col)
    return size


def is_descendant(x: Sequence[int], members: Iterable[Word]) -> bool:
    """True when every coordinate of ``x`` occurs in some coalition member there."""
    members = tuple(members)
    if not members:
        raise ValueError("empty coalition")
    if len(x) != len(members[0]):
        raise ValueError(f"length mismatch: {len(x)} vs {len(members[0])}")
    return all(any(m[i] == s for m in members) for i, s in enumerate(x))


def group_distance(x: Sequence[int], members: Iterable[Word]) -> tuple[int, int]:
    """Distance from ``x`` to a word set and its complement agreement count.

    Returns ``(d, i)`` where ``d`` counts coordinates of ``x`` matched by no
    member and ``i = N - d`` counts coordinates matched by at least one.
    """
    members = tuple(members)
    if not members:
        raise ValueError("empty coalition")
    if len(x) != len(members[0]):
        raise ValueError(f"length mismatch: {len(x)} vs {len(members[0])}")
    d = sum(1 for i, s in enumerate(x) if all(m[i] != s for m in members))
    return d, len(x) - d


def iter_coalitions(pool: Iterable[int], max_size: int) -> Iterator[Coalition]:
    """Index tuples of sizes 1..max_size: smaller sizes first, lexicographic within."""
    pool = tuple(pool)
    for size in range(1, min(max_size, len(pool)) + 1):
        yield from combinations(pool, size)


def parent_sets(x: Sequence[int], code: Code, t: int) -> ParentSetFamily:
    """Every coalition of size <= t whose descendant set contains ``x``."""
    if t < 1:
        raise ValueError(f"coalition bound must be >= 1, got {t}")
    x = tuple(x)
    if len(x) != code.length:
        raise ValueError(f"length mismatch: {len(x)} vs {code.length}")
    full = (1 << code.length) - 1
    match_masks = []
    for w in code.words:
        mask = 0
        for i in range(code.length):
            if w[i] == x[i]:
                mask |= 1 << i
        match_masks.append(mask)
    found = []
    for coalition in iter_coalitions(range(code.size), t):
        covered = 0
        for idx in coalition:
            covered |= match_masks[idx]
        if covered == full:
            found.append(coalition)
    return ParentSetFamily(word=x, t=t, coalitions=tuple(found))


def enumerate_descendants(
    members: Iterable[Word], cap: int = DEFAULT_DESCENDANT_CAP
) -> Iterator[Word]:
    """All words a coalition can assemble, in lexicographic order.

    The stream is single-consumer; stop iterating to abort early.  Raises
    DescendantSetTooLarge before yielding anything if the full set would
    exceed ``cap`` members.
    """
    profile = desc_profile(members)
    size = profile_size(profile)
    if size > cap:
        raise DescendantSetTooLarge(f"descendant set too large: {size} words exceed cap {cap}")
    return product(*profile)


def packed_words(code: Code) -> tuple[int, ...]:
    """Binary codewords as N-bit integers, bit i = coordinate i."""
    if code.q != 2:
        raise ValueError("packed words require a binary code")
    return tuple(sum(w[i] << i for i in range(code.length)) for w in code.words)


def packed_rows(code: Code) -> tuple[int, ...]:
    """Binary coordinates as n-bit integers, bit j = word j's symbol there."""
    if code.q != 2:
        raise ValueError("packed rows require a binary code")
    rows = code.matrix_rows()
    return tuple(sum(row[j] << j for j in range(code.size)) for row in rows)
