"""Exhaustive extremal searches by depth-first lexicographic extension.

Codes grow one word at a time in ascending base-q order (first coordinate
most significant, so numeric order is word order).  All the properties
searched here are hereditary — every subcode of a good code is good — so a
prefix that fails the property prunes its whole subtree.  Code searches fix
the all-zero word at the root: relabelling symbols coordinate-wise maps any
code onto one containing it and preserves frameproofness, identifiability
and traceability alike.  Set families get no such relabelling (covering is
not invariant under it), so family searches enumerate candidate members in
plain ascending mask order with no normalisation.

Frameproof extension steps are checked incrementally (only coalitions
involving the incoming word need a look; binary instances use packed
words).  The other properties re-run their full verifier on the extended
prefix: correctness first, these searches live at desk scale.

Node counts are deterministic: one node per attempted extension, no
parallelism, no randomness.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from . import core, verify
from .core import Code, Word
from .transform import SetFamily

__all__ = [
    "LengthProbe",
    "MinLengthResult",
    "RegionEntry",
    "RegionReport",
    "SandwichReport",
    "SearchProblem",
    "SearchResult",
    "max_code_search",
    "min_length_sandwich",
    "min_length_search",
    "verify_upper_bound_region",
]

PROPERTIES = ("FP", "IPP", "TA", "CFF")

#: Refuse to enumerate candidate spaces larger than this.
DEFAULT_ENUMERATION_CAP = 2**22


@dataclass(frozen=True)
class SearchProblem:
    property: str
    N: int
    t: int
    q: int = 2
    mode: str = "maximize"  # or "decide"
    goal: int | None = None

    def __post_init__(self) -> None:
        if self.property not in PROPERTIES:
            raise ValueError(f"unknown property {self.property!r}")
        if self.N < 1:
            raise ValueError(f"need N >= 1, got {self.N}")
        if self.t < 1:
            raise ValueError(f"need t >= 1, got {self.t}")
        if self.q < 2:
            raise ValueError(f"need q >= 2, got {self.q}")
        if self.property == "CFF" and self.q != 2:
            raise ValueError("family searches are binary by nature; leave q=2")
        if self.mode not in ("maximize", "decide"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.mode == "decide":
            if self.goal is None or self.goal < 1:
                raise ValueError("decide mode needs a positive goal")
        elif self.goal is not None:
            raise ValueError("goal only makes sense in decide mode")


@dataclass(frozen=True)
class SearchResult:
    problem: SearchProblem
    optimum: int
    decided: bool | None
    witness: Code | SetFamily | None
    nodes: int
    elapsed: float
    complete: bool
    budget: int | None


class _Stop(Exception):
    pass


class _Found(Exception):
    pass


def _decode_word(value: int, N: int, q: int) -> Word:
    digits = []
    for _ in range(N):
        digits.append(value % q)
        value //= q
    return tuple(reversed(digits))


def _fp_ok_words(words: list[Word], new: Word, t: int) -> bool:
    """Does adding ``new`` keep the code t-frameproof, given ``words`` is?"""
    k = len(words)
    for coalition in core.iter_coalitions(range(k), min(t, k)):
        if core.is_descendant(new, [words[i] for i in coalition]):
            return False
    for ci in range(k):
        target = words[ci]
        others = [j for j in range(k) if j != ci]
        for size in range(1, min(t - 1, len(others)) + 1):
            for group in combinations(others, size):
                if core.is_descendant(target, [words[j] for j in group] + [new]):
                    return False
    return True


def _fp_ok_masks(masks: list[int], new_mask: int, t: int, full: int) -> bool:
    def framed(target: int, union: int, inter: int) -> bool:
        return (target & ~union & full) == 0 and (inter & ~target & full) == 0

    k = len(masks)
    for coalition in core.iter_coalitions(range(k), min(t, k)):
        union, inter = 0, full
        for i in coalition:
            union |= masks[i]
            inter &= masks[i]
        if framed(new_mask, union, inter):
            return False
    for ci in range(k):
        target = masks[ci]
        others = [j for j in range(k) if j != ci]
        for size in range(1, min(t - 1, len(others)) + 1):
            for group in combinations(others, size):
                union, inter = new_mask, new_mask
                for j in group:
                    union |= masks[j]
                    inter &= masks[j]
                if framed(target, union, inter):
                    return False
    return True


def max_code_search(
    problem: SearchProblem,
    budget: int | None = None,
    enumeration_cap: int = DEFAULT_ENUMERATION_CAP,
) -> SearchResult:
    """Run the search to completion, a decision, or budget exhaustion.

    ``optimum`` is the largest size reached (a lower bound when truncated);
    ``complete`` certifies the tree was exhausted, which for maximize mode
    is the proof of optimality.  Decide mode reports ``decided=None`` when
    the budget ran out before either answer.
    """
    start = time.perf_counter()
    if problem.property == "CFF":
        result = _family_search(problem, budget, enumeration_cap)
    else:
        result = _code_search(problem, budget, enumeration_cap)
    optimum, decided, witness, nodes, complete = result
    return SearchResult(
        problem=problem,
        optimum=optimum,
        decided=decided,
        witness=witness,
        nodes=nodes,
        elapsed=time.perf_counter() - start,
        complete=complete,
        budget=budget,
    )


def _code_search(problem: SearchProblem, budget: int | None, cap: int):
    N, q, t = problem.N, problem.q, problem.t
    total = q**N
    if total > cap:
        raise ValueError(f"candidate space {q}**{N} exceeds enumeration cap {cap}")
    deciding = problem.mode == "decide"
    goal = problem.goal or 0
    prop = problem.property
    use_masks = prop == "FP" and q == 2
    full = (1 << N) - 1

    words: list[Word] = [(0,) * N]
    masks: list[int] = [0]
    chosen: list[int] = [0]
    best: list[int] = [0]
    nodes = 0

    def extend_ok(w: Word, wmask: int) -> bool:
        if prop == "FP":
            if use_masks:
                return _fp_ok_masks(masks, wmask, t, full)
            return _fp_ok_words(words, w, t)
        candidate = Code(tuple(words) + (w,), q)
        if prop == "IPP":
            return verify.check_ipp(candidate, t).holds
        return verify.check_ta(candidate, t).holds

    def rec(begin: int) -> None:
        nonlocal nodes, best
        for cand in range(begin, total):
            room = len(words) + (total - cand)
            if deciding:
                if room < goal:
                    break
            elif room <= len(best):
                break
            nodes += 1
            if budget is not None and nodes > budget:
                raise _Stop
            w = _decode_word(cand, N, q)
            wmask = cand if use_masks else 0
            if not extend_ok(w, wmask):
                continue
            words.append(w)
            masks.append(wmask)
            chosen.append(cand)
            if len(chosen) > len(best):
                best = list(chosen)
            if deciding and len(words) >= goal:
                raise _Found
            rec(cand + 1)
            words.pop()
            masks.pop()
            chosen.pop()

    decided: bool | None = None
    complete = True
    try:
        if deciding and goal <= 1:
            decided = True
        else:
            rec(1)
            if deciding:
                decided = False
    except _Found:
        decided = True
        best = list(chosen)
    except _Stop:
        complete = False
        if deciding:
            decided = None

    witness_words = tuple(_decode_word(c, N, q) for c in best)
    witness = Code(witness_words, q)
    if deciding and decided is not True:
        witness = None
    return len(best), decided, witness, nodes, complete


def _family_search(problem: SearchProblem, budget: int | None, cap: int):
    N, t = problem.N, problem.t
    total = 1 << N
    if total > cap:
        raise ValueError(f"candidate space 2**{N} exceeds enumeration cap {cap}")
    deciding = problem.mode == "decide"
    goal = problem.goal or 0

    members: list[int] = []
    best: list[int] = []
    nodes = 0

    def extend_ok(mask: int) -> bool:
        fam = SetFamily(N, tuple(members) + (mask,))
        return verify.check_cff(fam, t).holds

    def rec(begin: int) -> None:
        nonlocal nodes, best
        for mask in range(begin, total):
            room = len(members) + (total - mask)
            if deciding:
                if room < goal:
                    break
            elif room <= len(best):
                break
            nodes += 1
            if budget is not None and nodes > budget:
                raise _Stop
            if not extend_ok(mask):
                continue
            members.append(mask)
            if len(members) > len(best):
                best = list(members)
            if deciding and len(members) >= goal:
                raise _Found
            rec(mask + 1)
            members.pop()

    decided: bool | None = None
    complete = True
    try:
        if deciding and goal < 1:
            decided = True
        else:
            rec(1)  # the empty member is covered by the empty union, skip it
            if deciding:
                decided = False
    except _Found:
        decided = True
        best = list(members)
    except _Stop:
        complete = False
        if deciding:
            decided = None

    witness = SetFamily(N, tuple(best)) if best else None
    if deciding and decided is not True:
        witness = None
    return len(best), decided, witness, nodes, complete


@dataclass(frozen=True)
class RegionEntry:
    N: int
    in_window: bool  # within the guaranteed band t+1 <= N <= 3t (t >= 3)
    confirmed: bool | None
    nodes: int
    witness: Code | None


@dataclass(frozen=True)
class RegionReport:
    t: int
    entries: tuple[RegionEntry, ...]

    @property
    def all_confirmed(self) -> bool:
        return all(e.confirmed is True for e in self.entries)


def verify_upper_bound_region(
    t: int, lengths: Iterable[int], budget: int | None = None
) -> RegionReport:
    """Decide, per length, whether any binary t-frameproof code beats N words.

    ``confirmed=True`` means the cap M <= N holds by exhaustion; a
    counterexample (confirmed=False) comes with its witness.  Lengths
    outside the guaranteed band are still decided and flagged as
    search-only facts.
    """
    entries = []
    for N in lengths:
        problem = SearchProblem("FP", N=N, t=t, q=2, mode="decide", goal=N + 1)
        res = max_code_search(problem, budget)
        confirmed = None if res.decided is None else not res.decided
        entries.append(
            RegionEntry(
                N=N,
                in_window=t >= 3 and t + 1 <= N <= 3 * t,
                confirmed=confirmed,
                nodes=res.nodes,
                witness=res.witness if res.decided else None,
            )
        )
    return RegionReport(t=t, entries=tuple(entries))


@dataclass(frozen=True)
class LengthProbe:
    N: int
    decided: bool | None
    nodes: int


@dataclass(frozen=True)
class MinLengthResult:
    property: str
    t: int
    value: int | None
    lower_bound: int
    probes: tuple[LengthProbe, ...]
    witness: Code | SetFamily | None
    complete: bool


def min_length_search(
    t: int,
    property: str = "CFF",
    budget: int | None = None,
    start_length: int = 1,
    max_length: int = 16,
) -> MinLengthResult:
    """Smallest length where the property admits more objects than coordinates.

    Scans N upward, deciding "size N+1 achievable?" at each length.  On
    budget exhaustion the first undecided length is reported as a lower
    bound on the answer.  Note the degenerate fact at length 1 for codes:
    the two-word binary line is t-frameproof for every t, so the literal
    answer for FP is 1; pass ``start_length=2`` to ask about longer lengths.
    """
    if property not in ("FP", "CFF"):
        raise ValueError(f"min-length search covers FP and CFF, got {property!r}")
    if t < 1:
        raise ValueError(f"need t >= 1, got {t}")
    probes: list[LengthProbe] = []
    for N in range(start_length, max_length + 1):
        problem = SearchProblem(property, N=N, t=t, q=2, mode="decide", goal=N + 1)
        res = max_code_search(problem, budget)
        probes.append(LengthProbe(N=N, decided=res.decided, nodes=res.nodes))
        if res.decided:
            return MinLengthResult(
                property=property,
                t=t,
                value=N,
                lower_bound=N,
                probes=tuple(probes),
                witness=res.witness,
                complete=True,
            )
        if res.decided is None:
            return MinLengthResult(
                property=property,
                t=t,
                value=None,
                lower_bound=N,
                probes=tuple(probes),
                witness=None,
                complete=False,
            )
    return MinLengthResult(
        property=property,
        t=t,
        value=None,
        lower_bound=max_length + 1,
        probes=tuple(probes),
        witness=None,
        complete=False,
    )


@dataclass(frozen=True)
class SandwichReport:
    t: int
    code: MinLengthResult
    family_lower: MinLengthResult
    family_upper: MinLengthResult
    consistent: bool | None


def min_length_sandwich(
    t: int,
    budget: int | None = None,
    start_length: int = 2,
    max_length: int = 12,
) -> SandwichReport:
    """Bracket the code min-length between the family answers at t-2 and t.

    Only meaningful for t >= 3.  The code scan starts at length 2 by default
    to step over the degenerate two-word line.  ``consistent`` stays None
    unless both inequalities could actually be evaluated.
    """
    if t < 3:
        raise ValueError(f"the sandwich needs t >= 3, got {t}")
    code_res = min_length_search(t, "FP", budget, start_length, max_length)
    fam_lo = min_length_search(t - 2, "CFF", budget, 1, max_length)
    fam_hi = min_length_search(t, "CFF", budget, 1, max_length)
    consistent: bool | None = None
    if code_res.value is not None:
        if fam_hi.value is not None and code_res.value > fam_hi.value:
            consistent = False
        elif fam_lo.value is not None and code_res.value < fam_lo.value:
            consistent = False
        elif fam_hi.value is not None and fam_lo.value is not None:
            consistent = True
    return SandwichReport(
        t=t,
        code=code_res,
        family_lower=fam_lo,
        family_upper=fam_hi,
        consistent=consistent,
    )
