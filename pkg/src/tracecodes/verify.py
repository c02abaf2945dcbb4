"""Exact property checkers returning verdicts with re-checkable witnesses.

Frameproofness, cover-freeness and traceability are checked straight off
their definitions.  Parent identifiability needs a word-free reformulation
to stay exact without enumerating the whole ambient space: a code fails the
t-check exactly when some family of at most t+1 coalitions (each of size at
most t) has empty common intersection while their descendant profiles still
intersect coordinate-wise.  Sufficiency is immediate (any word assembled
from the coordinate intersections has all family members as parents);
necessity follows because, given a bad word, one starts from any of its
parent sets and adds, at most once per member, a parent set avoiding that
member — after at most t steps the running intersection is empty.

Every checker scans candidates in a fixed order (coalitions by size then
lexicographically, words lexicographically) and reports the first violation
it meets, so verdicts and witnesses are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from . import core
from .core import Coalition, Code, Word
from .transform import SetFamily

__all__ = [
    "Counters",
    "CoverViolation",
    "FramedWord",
    "IppViolation",
    "TaViolation",
    "Verdict",
    "Witness",
    "check_cff",
    "check_frameproof",
    "check_ipp",
    "check_ta",
    "ta_distance_sufficient",
]


@dataclass(frozen=True)
class Counters:
    """How much work a check performed (deterministic for a given input)."""

    subsets_examined: int = 0
    words_examined: int = 0


@dataclass(frozen=True)
class FramedWord:
    """Codeword ``framed`` lies in the descendant set of a coalition excluding it."""

    framed: int
    coalition: Coalition


@dataclass(frozen=True)
class CoverViolation:
    """Member ``covered`` is contained in the union of the ``covering`` members."""

    covered: int
    covering: tuple[int, ...]


@dataclass(frozen=True)
class IppViolation:
    """Coalitions of size <= t that all explain ``word`` yet share no member."""

    word: Word
    coalitions: tuple[Coalition, ...]


@dataclass(frozen=True)
class TaViolation:
    """A pirate word an outsider matches at least as well as every insider."""

    coalition: Coalition
    pirate: Word
    outsider: int
    insider_distance: int
    outsider_distance: int


Witness = FramedWord | CoverViolation | IppViolation | TaViolation


@dataclass(frozen=True)
class Verdict:
    property: str  # "FP" | "CFF" | "IPP" | "TA"
    t: int
    holds: bool
    witness: Witness | None
    counters: Counters


def _require_strength(t: int) -> None:
    if t < 1:
        raise ValueError(f"coalition bound must be >= 1, got {t}")


def check_frameproof(
    code: Code, t: int, mode: str = "def3", use_packed: bool | None = None
) -> Verdict:
    """Is no codeword producible by a coalition of <= t others?

    ``def3`` iterates (codeword, coalition) pairs directly; ``def1`` checks
    desc(D) n C = D over all coalitions.  Both modes agree on the verdict
    (the witness may differ since the scan order differs).  Binary codes use
    packed words unless ``use_packed=False``.
    """
    _require_strength(t)
    if mode not in ("def1", "def3"):
        raise ValueError(f"unknown mode {mode!r}")
    packed = code.q == 2 if use_packed is None else use_packed
    if packed and code.q != 2:
        raise ValueError("packed checking requires a binary code")
    n = code.size

    if packed:
        masks = core.packed_words(code)
        full = (1 << code.length) - 1

        def contains(ci: int, coalition: Coalition) -> bool:
            union = 0
            inter = full
            for d in coalition:
                union |= masks[d]
                inter &= masks[d]
            m = masks[ci]
            return (m & ~union & full) == 0 and (inter & ~m & full) == 0

    else:
        words = code.words

        def contains(ci: int, coalition: Coalition) -> bool:
            return core.is_descendant(words[ci], [words[d] for d in coalition])

    subsets = tested = 0
    if mode == "def3":
        for ci in range(n):
            pool = [j for j in range(n) if j != ci]
            for coalition in core.iter_coalitions(pool, min(t, n - 1)):
                subsets += 1
                tested += 1
                if contains(ci, coalition):
                    return Verdict(
                        "FP", t, False, FramedWord(ci, coalition), Counters(subsets, tested)
                    )
    else:
        for coalition in core.iter_coalitions(range(n), min(t, n)):
            subsets += 1
            inside = set(coalition)
            for ci in range(n):
                if ci in inside:
                    continue
                tested += 1
                if contains(ci, coalition):
                    return Verdict(
                        "FP", t, False, FramedWord(ci, coalition), Counters(subsets, tested)
                    )
    return Verdict("FP", t, True, None, Counters(subsets, tested))


def check_cff(family: SetFamily, t: int) -> Verdict:
    """Is no member contained in the union of at most t other members?

    The "at most" reading makes the empty set always covered (by the union
    of zero members) and matches the frameproof correspondence for families
    with fewer than t+1 members.
    """
    _require_strength(t)
    members = family.members
    n = len(members)
    subsets = 0
    for a0 in range(n):
        m = members[a0]
        if m == 0:
            return Verdict(
                "CFF", t, False, CoverViolation(a0, ()), Counters(subsets, 0)
            )
        pool = [j for j in range(n) if j != a0]
        for size in range(1, min(t, len(pool)) + 1):
            for combo in combinations(pool, size):
                subsets += 1
                union = 0
                for j in combo:
                    union |= members[j]
                if m & ~union == 0:
                    return Verdict(
                        "CFF", t, False, CoverViolation(a0, combo), Counters(subsets, 0)
                    )
    return Verdict("CFF", t, True, None, Counters(subsets, 0))


def check_ipp(code: Code, t: int) -> Verdict:
    """Can every traceable word be pinned on at least one shared parent?

    Enumerates families of 2..t+1 coalitions (size <= t each, ordered by
    size then lexicographically) whose index sets have empty intersection;
    the code fails exactly when some such family's descendant profiles still
    intersect on every coordinate.  The witness word takes the smallest
    symbol from each coordinate intersection.
    """
    _require_strength(t)
    n = code.size
    N = code.length
    coalitions = list(core.iter_coalitions(range(n), min(t, n)))
    index_sets = [set(c) for c in coalitions]
    profiles = [
        [set(code.words[i][coord] for i in c) for coord in range(N)] for c in coalitions
    ]
    families = 0
    intersections = 0
    top = min(t + 1, len(coalitions))
    for k in range(2, top + 1):
        for fam in combinations(range(len(coalitions)), k):
            families += 1
            common = set(index_sets[fam[0]])
            for f in fam[1:]:
                common &= index_sets[f]
                if not common:
                    break
            if common:
                continue
            symbols = []
            for coord in range(N):
                inter = set(profiles[fam[0]][coord])
                for f in fam[1:]:
                    inter &= profiles[f][coord]
                    if not inter:
                        break
                intersections += 1
                if not inter:
                    break
                symbols.append(min(inter))
            else:
                witness = IppViolation(
                    tuple(symbols), tuple(coalitions[f] for f in fam)
                )
                return Verdict(
                    "IPP", t, False, witness, Counters(families, intersections)
                )
    return Verdict("IPP", t, True, None, Counters(families, intersections))


def _ta_coalition_violation(
    code: Code, coalition: Coalition, profile: core.DescProfile, outsiders: list[int]
) -> tuple[TaViolation | None, int]:
    """Depth-first scan of the coalition's descendants for a tracing failure.

    Partial distances prune a branch as soon as every completion keeps some
    insider strictly closer than every outsider.
    """
    words = code.words
    N = code.length
    members = [words[i] for i in coalition]
    ins = [0] * len(members)
    outs = [0] * len(outsiders)
    x = [0] * N
    leaves = 0

    def rec(depth: int) -> TaViolation | None:
        nonlocal leaves
        if depth == N:
            leaves += 1
            best_in = min(ins)
            k = min(range(len(outsiders)), key=outs.__getitem__)
            if best_in >= outs[k]:
                return TaViolation(
                    coalition, tuple(x), outsiders[k], best_in, outs[k]
                )
            return None
        if min(ins) + (N - depth) < min(outs):
            return None  # insiders stay strictly closer whatever we append
        for s in profile[depth]:
            x[depth] = s
            bumped_in = [i for i, m in enumerate(members) if m[depth] != s]
            bumped_out = [i for i, o in enumerate(outsiders) if words[o][depth] != s]
            for i in bumped_in:
                ins[i] += 1
            for i in bumped_out:
                outs[i] += 1
            hit = rec(depth + 1)
            for i in bumped_in:
                ins[i] -= 1
            for i in bumped_out:
                outs[i] -= 1
            if hit is not None:
                return hit
        return None

    return rec(0), leaves


def check_ta(code: Code, t: int, cap: int = core.DEFAULT_DESCENDANT_CAP) -> Verdict:
    """Is the nearest codeword to any coalition's forgery always an insider?

    Coalitions covering the whole code are vacuous (nobody to misaccuse) and
    skipped.  Raises DescendantSetTooLarge when some coalition's descendant
    set exceeds ``cap``.
    """
    _require_strength(t)
    n = code.size
    subsets = 0
    leaves_total = 0
    for coalition in core.iter_coalitions(range(n), min(t, n)):
        if len(coalition) == n:
            continue
        subsets += 1
        profile = core.desc_profile(code.coalition_words(coalition))
        if core.profile_size(profile) > cap:
            raise core.DescendantSetTooLarge(
                f"instance too large for exact TA check: coalition {coalition} "
                f"spans {core.profile_size(profile)} words (cap {cap})"
            )
        inside = set(coalition)
        outsiders = [i for i in range(n) if i not in inside]
        violation, leaves = _ta_coalition_violation(code, coalition, profile, outsiders)
        leaves_total += leaves
        if violation is not None:
            return Verdict("TA", t, False, violation, Counters(subsets, leaves_total))
    return Verdict("TA", t, True, None, Counters(subsets, leaves_total))


def ta_distance_sufficient(code: Code, t: int) -> bool:
    """Exact integer test of the sufficient condition d > N(1 - 1/t**2)."""
    _require_strength(t)
    if code.size < 2:
        raise ValueError("need at least two codewords to speak of a minimum distance")
    d = int(core.min_distance(code))
    return d * t * t > code.length * (t * t - 1)
