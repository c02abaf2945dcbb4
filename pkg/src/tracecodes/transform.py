"""Constructive transforms between codes and set families.

Besides the simple rewrites (binary code <-> set family, padding, block
composition) this module houses the two constructive routines behind the
package's structural results: pruning codewords that own a private pattern
on a row partition, and assembling an explicit parent-identifiability
violation for any code that survives pruning.  Both produce certificates
that are re-checked against first principles before they are returned.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

from . import core
from .core import Code, Word

__all__ = [
    "IppViolationCertificate",
    "PairDiagnostics",
    "PatternPartition",
    "PruneResult",
    "PruneStep",
    "Restriction",
    "SetFamily",
    "StripTrace",
    "block_compose",
    "build_ipp_violation",
    "certificate_problems",
    "cff_restrict",
    "cff_to_fpc",
    "distance_strip",
    "fpc_to_cff",
    "make_row_partition",
    "pad_code",
    "pattern_frequency",
    "prune_special_codewords",
]


@dataclass(frozen=True)
class SetFamily:
    """An ordered family of distinct subsets of {0..ground_size-1}.

    Members are stored as bitmasks (bit e set = element e present), which
    makes union/containment checks single integer operations.
    """

    ground_size: int
    members: tuple[int, ...]

    def __post_init__(self) -> None:
        members = tuple(int(m) for m in self.members)
        object.__setattr__(self, "members", members)
        if self.ground_size < 1:
            raise ValueError("ground set must be non-empty")
        if not members:
            raise ValueError("a family needs at least one member")
        limit = 1 << self.ground_size
        for m in members:
            if not 0 <= m < limit:
                raise ValueError("member outside the ground set")
        if len(set(members)) != len(members):
            raise ValueError("duplicate members are not allowed")

    @property
    def size(self) -> int:
        return len(self.members)

    @classmethod
    def from_sets(cls, ground_size: int, sets: Iterable[Iterable[int]]) -> "SetFamily":
        masks = []
        for s in sets:
            mask = 0
            for e in s:
                mask |= 1 << e
            masks.append(mask)
        return cls(ground_size, tuple(masks))

    def member_elements(self, i: int) -> tuple[int, ...]:
        m = self.members[i]
        return tuple(e for e in range(self.ground_size) if m >> e & 1)

    def member_size(self, i: int) -> int:
        return self.members[i].bit_count()


def fpc_to_cff(code: Code) -> SetFamily:
    """Double a binary code into a set family: 0 -> rows (1,0), 1 -> rows (0,1).

    Each codeword becomes the member containing, for every coordinate i, row
    2i when the symbol is 0 and row 2i+1 when it is 1, so every member has
    exactly N elements over a 2N ground set.
    """
    if code.q != 2:
        raise ValueError("doubling requires a binary code")
    masks = []
    for w in code.words:
        mask = 0
        for i, s in enumerate(w):
            mask |= 1 << (2 * i + s)
        masks.append(mask)
    return SetFamily(2 * code.length, tuple(masks))


def cff_to_fpc(family: SetFamily) -> Code:
    """Members as incidence vectors give the columns of a binary code."""
    words = tuple(
        tuple(family.members[j] >> e & 1 for e in range(family.ground_size))
        for j in range(family.size)
    )
    return Code(words, 2)


@dataclass(frozen=True)
class Restriction:
    """Outcome of restricting a family away from one member.

    Empty or repeated members are kept visible here rather than silently
    dropped; ``family()`` refuses to build a SetFamily while any flag is set.
    """

    ground_size: int
    members: tuple[int, ...]
    removed_member: int
    empty_indices: tuple[int, ...]
    duplicate_indices: tuple[int, ...]

    @property
    def clean(self) -> bool:
        return not self.empty_indices and not self.duplicate_indices

    def family(self) -> SetFamily:
        if not self.clean:
            raise ValueError(
                "restriction is not a valid family: "
                f"empty members at {self.empty_indices}, duplicates at {self.duplicate_indices}"
            )
        return SetFamily(self.ground_size, self.members)


def cff_restrict(family: SetFamily, a: int) -> Restriction:
    """Remove member ``a`` and its elements: survivors become B \\ A.

    The surviving ground elements are renumbered in increasing order.
    """
    if not 0 <= a < family.size:
        raise ValueError(f"member index {a} out of range")
    removed = family.members[a]
    kept = [e for e in range(family.ground_size) if not removed >> e & 1]
    position = {e: p for p, e in enumerate(kept)}
    new_members = []
    for j in range(family.size):
        if j == a:
            continue
        mask = 0
        m = family.members[j]
        for e in kept:
            if m >> e & 1:
                mask |= 1 << position[e]
        new_members.append(mask)
    empties = tuple(i for i, m in enumerate(new_members) if m == 0)
    seen: dict[int, int] = {}
    duplicates = []
    for i, m in enumerate(new_members):
        if m in seen:
            duplicates.append(i)
        else:
            seen[m] = i
    return Restriction(
        ground_size=len(kept),
        members=tuple(new_members),
        removed_member=a,
        empty_indices=empties,
        duplicate_indices=tuple(duplicates),
    )


def pad_code(code: Code, r: int) -> Code:
    """Append ``r`` zero coordinates to every word."""
    if r < 0:
        raise ValueError("padding length must be >= 0")
    if r == 0:
        return code
    tail = (0,) * r
    return Code(tuple(w + tail for w in code.words), code.q)


def block_compose(code: Code, a: int) -> Code:
    """Fuse blocks of ``a`` coordinates into single symbols over q**a.

    Block (s_0, .., s_{a-1}) becomes the symbol sum(s_j * q**j), so a code of
    length a*L over q turns into one of length L over q**a.
    """
    if a < 1:
        raise ValueError("block width must be >= 1")
    if code.length % a:
        raise ValueError(f"length {code.length} is not divisible by block width {a}")
    q_new = code.q**a
    if q_new > core.MAX_ALPHABET:
        raise ValueError(f"composed alphabet {q_new} exceeds supported maximum {core.MAX_ALPHABET}")
    words = []
    for w in code.words:
        fused = []
        for b in range(code.length // a):
            block = w[b * a : (b + 1) * a]
            fused.append(sum(s * code.q**j for j, s in enumerate(block)))
        words.append(tuple(fused))
    return Code(tuple(words), q_new)


@dataclass(frozen=True)
class PatternPartition:
    """Consecutive parts V_1..V_{v-1} of the coordinate set, first r larger."""

    parts: tuple[tuple[int, ...], ...]
    v: int
    r: int

    def __post_init__(self) -> None:
        parts = tuple(tuple(p) for p in self.parts)
        object.__setattr__(self, "parts", parts)
        if len(parts) != self.v - 1:
            raise ValueError(f"expected v-1={self.v - 1} parts, got {len(parts)}")
        flat = [i for part in parts for i in part]
        if not flat or sorted(flat) != list(range(len(flat))):
            raise ValueError("parts must partition 0..N-1")
        if any(not part for part in parts):
            raise ValueError("empty part")

    @property
    def length(self) -> int:
        return sum(len(p) for p in self.parts)


def make_row_partition(N: int, t: int) -> PatternPartition:
    """Split 0..N-1 into v-1 consecutive parts, v = floor((t/2 + 1)**2).

    ``N mod (v-1)`` parts of size ceil(N/(v-1)) come first, the rest take the
    floor; every part must be non-empty.
    """
    if t < 2:
        raise ValueError(f"coalition bound must be >= 2, got {t}")
    v = (t + 2) ** 2 // 4
    k = v - 1
    if N < k:
        raise ValueError(f"need N >= {k} coordinates for {k} non-empty parts")
    r = N % k
    hi, lo = -(-N // k), N // k
    parts = []
    at = 0
    for p in range(k):
        size = hi if p < r else lo
        parts.append(tuple(range(at, at + size)))
        at += size
    return PatternPartition(tuple(parts), v, r)


def _pattern(word: Word, part: Sequence[int]) -> tuple[int, ...]:
    return tuple(word[i] for i in part)


def pattern_frequency(code: Code, x: Sequence[int], positions: Iterable[int]) -> int:
    """How many codewords agree with ``x`` on every listed coordinate."""
    positions = tuple(positions)
    target = tuple(x[i] for i in positions)
    return sum(1 for w in code.words if _pattern(w, positions) == target)


@dataclass(frozen=True)
class PruneStep:
    removed: int
    part: int
    pattern: tuple[int, ...]


@dataclass(frozen=True)
class PruneResult:
    """Surviving indices (ascending) plus the ordered deletion log."""

    survivors: tuple[int, ...]
    steps: tuple[PruneStep, ...]

    def subcode(self, code: Code) -> Code | None:
        if not self.survivors:
            return None
        return Code(tuple(code.words[i] for i in self.survivors), code.q)


def _require_partition_fits(code: Code, partition: PatternPartition) -> None:
    if partition.length != code.length:
        raise ValueError(
            f"partition covers {partition.length} coordinates, code has {code.length}"
        )


def prune_special_codewords(code: Code, partition: PatternPartition) -> PruneResult:
    """Iteratively delete codewords owning a pattern nobody else shows.

    A codeword is special when, on some part, no other surviving codeword
    matches its pattern.  Each round removes the lowest-index special
    codeword (parts scanned in order to find its witnessing pattern), so the
    outcome is deterministic.  The result may be empty.
    """
    _require_partition_fits(code, partition)
    words = code.words
    alive = list(range(code.size))
    steps: list[PruneStep] = []
    while alive:
        special: PruneStep | None = None
        for ci in alive:
            for p, part in enumerate(partition.parts):
                pat = _pattern(words[ci], part)
                if all(_pattern(words[cj], part) != pat for cj in alive if cj != ci):
                    special = PruneStep(removed=ci, part=p, pattern=pat)
                    break
            if special is not None:
                break
        if special is None:
            break
        alive.remove(special.removed)
        steps.append(special)
    return PruneResult(tuple(alive), tuple(steps))


@dataclass(frozen=True)
class IppViolationCertificate:
    """Explicit evidence that a code is not t-parent-identifiable.

    ``chain`` lists the backbone codewords x_1..x_k (indices), ``milestones``
    the positions into the partition's parts where consecutive backbone
    members agree, ``descendant`` the word assembled blockwise from the
    backbone.  ``coalitions`` holds X_0 = chain plus, per backbone member,
    the coalition with that member swapped for its replacement family; all
    have size <= t, all can produce ``descendant``, and their intersection
    is empty.
    """

    chain: tuple[int, ...]
    milestones: tuple[int, ...]
    descendant: Word
    replacements: tuple[tuple[int, ...], ...]
    coalitions: tuple[tuple[int, ...], ...]


def certificate_problems(
    cert: IppViolationCertificate, code: Code, t: int
) -> list[str]:
    """Check a violation certificate from first principles; [] when sound."""
    problems: list[str] = []
    if len(set(cert.chain)) != len(cert.chain):
        problems.append("chain members repeat")
    if len(cert.coalitions) != len(cert.chain) + 1:
        problems.append("expected one coalition per chain member plus the chain itself")
    for which, coalition in enumerate(cert.coalitions):
        if not coalition:
            problems.append(f"coalition {which} is empty")
            continue
        if len(coalition) > t:
            problems.append(f"coalition {which} has {len(coalition)} members, cap is {t}")
        if not core.is_descendant(cert.descendant, code.coalition_words(coalition)):
            problems.append(f"coalition {which} cannot produce the descendant")
    for i, (member, repl) in enumerate(zip(cert.chain, cert.replacements)):
        if member in repl:
            problems.append(f"replacement family {i} contains the member it replaces")
    if cert.coalitions:
        common = set(cert.coalitions[0])
        for coalition in cert.coalitions[1:]:
            common &= set(coalition)
        if common:
            problems.append(f"coalitions share members {sorted(common)}")
    return problems


def build_ipp_violation(
    code: Code, partition: PatternPartition, t: int
) -> IppViolationCertificate:
    """Assemble a t-identifiability violation for a code with no private patterns.

    Walk a backbone through the code: start at the lowest-index word, and
    repeatedly jump at least ``t//2 + 1`` parts ahead to the first part where
    the current word's pattern differs from every earlier backbone member;
    some other codeword shares that pattern (nothing is private), and the
    lowest-index sharer becomes the next member.  Reading the descendant
    blockwise off the backbone, each member x_i can be swapped for a small
    replacement family covering the few patterns only x_i contributed, which
    yields pairwise intersection-free coalitions of size <= t that all
    explain the same descendant.
    """
    if t < 2:
        raise ValueError(f"coalition bound must be >= 2, got {t}")
    _require_partition_fits(code, partition)
    v = (t + 2) ** 2 // 4
    if partition.v != v or len(partition.parts) != v - 1:
        raise ValueError(
            f"partition was built for v={partition.v}, coalition bound {t} needs v={v}"
        )
    words = code.words
    n = code.size
    parts = partition.parts
    P = len(parts)

    for ci in range(n):
        for p, part in enumerate(parts):
            pat = _pattern(words[ci], part)
            if all(_pattern(words[cj], part) != pat for cj in range(n) if cj != ci):
                raise ValueError(
                    f"codeword {ci} owns a private pattern on part {p}; prune first"
                )

    step = t // 2 + 1
    chain = [0]
    milestones_1b: list[int] = []
    while True:
        cur = chain[-1]
        prev_m = milestones_1b[-1] if milestones_1b else 0
        found = None
        for m in range(prev_m + step, P + 1):
            pat = _pattern(words[cur], parts[m - 1])
            if all(_pattern(words[e], parts[m - 1]) != pat for e in chain[:-1]):
                found = m
                break
        if found is None:
            break
        pat = _pattern(words[cur], parts[found - 1])
        nxt = min(
            j for j in range(n) if j != cur and _pattern(words[j], parts[found - 1]) == pat
        )
        milestones_1b.append(found)
        chain.append(nxt)

    k = len(chain)
    seg_ends = milestones_1b + [P]
    descendant = [0] * code.length
    prev = 0
    for i in range(k):
        for m in range(prev + 1, seg_ends[i] + 1):
            for coord in parts[m - 1]:
                descendant[coord] = words[chain[i]][coord]
        prev = seg_ends[i]

    replacements: list[tuple[int, ...]] = []
    prev = 0
    for i in range(k):
        end = seg_ends[i]
        ys: set[int] = set()
        for m in range(prev + 1, min(prev + step - 1, end) + 1):
            pat = _pattern(words[chain[i]], parts[m - 1])
            y = min(
                j
                for j in range(n)
                if j != chain[i] and _pattern(words[j], parts[m - 1]) == pat
            )
            ys.add(y)
        replacements.append(tuple(sorted(ys)))
        prev = end

    coalitions = [tuple(sorted(chain))]
    for i in range(k):
        swapped = (set(chain) - {chain[i]}) | set(replacements[i])
        coalitions.append(tuple(sorted(swapped)))

    cert = IppViolationCertificate(
        chain=tuple(chain),
        milestones=tuple(m - 1 for m in milestones_1b),
        descendant=tuple(descendant),
        replacements=tuple(replacements),
        coalitions=tuple(coalitions),
    )
    problems = certificate_problems(cert, code, t)
    if problems:
        raise RuntimeError("violation certificate failed self-check: " + "; ".join(problems))
    return cert


@dataclass(frozen=True)
class PairDiagnostics:
    """Audit record for a minimum-distance pair that survived a strip.

    Such a pair can only exist when the input was not 3-traceable.  For a
    low-distance strip (case B) ``i1``/``i2`` split a cover of the pair's
    disagreements and ``partners`` holds codewords matching the first pair
    member on each half — together they frame it.  For a mid-distance strip
    (case C) ``i1`` is the pair's agreement set and the remaining fields
    follow the removal analysis as far as the partner hunts succeed.
    """

    pair: tuple[int, int]
    i1: tuple[int, ...] | None = None
    i2: tuple[int, ...] | None = None
    i3: tuple[int, ...] | None = None
    e: tuple[int, ...] | None = None
    j: tuple[int, ...] | None = None
    h: tuple[int, ...] | None = None
    delta2: int | None = None
    delta3: int | None = None
    partners: tuple[int, ...] = ()


@dataclass(frozen=True)
class StripTrace:
    """What a distance strip did and why."""

    case: str  # "A" (d > N-t), "B" (d <= 2t), "C" (otherwise)
    d_before: int
    d_after: int | float
    delta: int | None
    threshold: int | None
    removed: tuple[int, ...]
    survivors: tuple[int, ...]
    diagnostics: PairDiagnostics | None


def _min_pattern_frequency(code: Code, t: int) -> list[int]:
    """Per codeword, the smallest t-coordinate pattern frequency."""
    n = code.size
    best = [n + 1] * n
    for positions in combinations(range(code.length), t):
        counts: dict[tuple[int, ...], int] = {}
        pats = [_pattern(w, positions) for w in code.words]
        for pat in pats:
            counts[pat] = counts.get(pat, 0) + 1
        for idx, pat in enumerate(pats):
            c = counts[pat]
            if c < best[idx]:
                best[idx] = c
    return best


def _case_b_diagnostics(code: Code, pair: tuple[int, int], t: int) -> PairDiagnostics:
    x, y = code.words[pair[0]], code.words[pair[1]]
    N = code.length
    disagree = [i for i in range(N) if x[i] != y[i]]
    cover = list(disagree)
    for i in range(N):
        if len(cover) == 2 * t:
            break
        if i not in disagree:
            cover.append(i)
    cover.sort()
    i1, i2 = tuple(cover[:t]), tuple(cover[t:])
    partners = []
    for positions in (i1, i2):
        target = _pattern(x, positions)
        found = next(
            (
                j
                for j in range(code.size)
                if j != pair[0] and _pattern(code.words[j], positions) == target
            ),
            None,
        )
        if found is not None:
            partners.append(found)
    return PairDiagnostics(pair=pair, i1=i1, i2=i2, partners=tuple(partners))


def _case_c_diagnostics(
    code: Code, pair: tuple[int, int], t: int, delta: int
) -> PairDiagnostics:
    y0, y1 = code.words[pair[0]], code.words[pair[1]]
    N = code.length
    i1 = tuple(i for i in range(N) if y0[i] == y1[i])
    outside = [i for i in range(N) if i not in i1]
    probe2 = tuple(outside[:t])
    target = _pattern(y0, probe2)
    y2_idx = next(
        (
            jdx
            for jdx in range(code.size)
            if jdx not in pair
            and _pattern(code.words[jdx], probe2) == target
            and core.identical_count(code.words[jdx], y1) <= delta
        ),
        None,
    )
    if y2_idx is None:
        return PairDiagnostics(pair=pair, i1=i1)
    y2 = code.words[y2_idx]
    i2 = tuple(i for i in outside if y0[i] == y2[i])
    delta2 = len(i2) - t
    j_set = tuple(i for i in range(N) if i not in i1 and y1[i] == y2[i])
    taken = set(i1) | set(i2)
    pool = [i for i in j_set if i not in taken]
    pool += [i for i in range(N) if i not in taken and i not in pool]
    probe3 = tuple(sorted(pool[:t]))
    target3 = _pattern(y0, probe3)
    y3_idx = next(
        (
            jdx
            for jdx in range(code.size)
            if jdx not in pair
            and jdx != y2_idx
            and _pattern(code.words[jdx], probe3) == target3
            and core.group_distance(code.words[jdx], (y1, y2))[1] <= delta
        ),
        None,
    )
    if y3_idx is None:
        return PairDiagnostics(
            pair=pair, i1=i1, i2=i2, j=j_set, delta2=delta2, partners=(y2_idx,)
        )
    y3 = code.words[y3_idx]
    i3 = tuple(i for i in range(N) if i not in taken and y0[i] == y3[i])
    delta3 = len(i3) - t
    used = taken | set(i3)
    e_set = tuple(i for i in range(N) if i not in used)
    pairwise = set()
    for wa, wb in ((y1, y2), (y1, y3), (y2, y3)):
        pairwise |= {i for i in e_set if wa[i] == wb[i]}
    h_set = tuple(i for i in e_set if i not in pairwise)
    return PairDiagnostics(
        pair=pair,
        i1=i1,
        i2=i2,
        i3=i3,
        e=e_set,
        j=j_set,
        h=h_set,
        delta2=delta2,
        delta3=delta3,
        partners=(y2_idx, y3_idx),
    )


def distance_strip(
    code: Code, t: int
) -> tuple[tuple[Word, ...], Code | None, StripTrace]:
    """Remove rare-pattern codewords so the minimum distance must rise.

    The length must equal 9t.  With d = d(C): when d > N - t everything is
    removed; when d <= 2t every codeword showing some t-coordinate pattern
    exactly once is removed; otherwise, with delta = N - t - d, every
    codeword showing some t-coordinate pattern at most
    2**(delta+1) * C(N-t, delta+1) times is removed.  For 3-traceable inputs
    the survivors satisfy d(C') >= d + 1 (infinite when fewer than two
    survive); on other inputs only the partition of the word set is
    guaranteed, and any surviving minimum-distance pair is documented in the
    trace diagnostics.
    """
    if t < 1:
        raise ValueError(f"strip parameter must be >= 1, got {t}")
    N = code.length
    if N % 9:
        raise ValueError(f"length {N} is not a multiple of 9")
    if N != 9 * t:
        raise ValueError(f"length {N} does not equal 9*{t}")
    if code.size < 3:
        raise ValueError(f"need at least three codewords, got {code.size}")
    d = int(core.min_distance(code))  # finite: at least three distinct words

    delta: int | None = None
    threshold: int | None = None
    if d > N - t:
        case = "A"
        removed_idx = tuple(range(code.size))
    elif d <= 2 * t:
        case = "B"
        threshold = 1
        freq = _min_pattern_frequency(code, t)
        removed_idx = tuple(i for i in range(code.size) if freq[i] <= threshold)
    else:
        case = "C"
        delta = N - t - d
        threshold = 2 ** (delta + 1) * comb(N - t, delta + 1)
        freq = _min_pattern_frequency(code, t)
        removed_idx = tuple(i for i in range(code.size) if freq[i] <= threshold)

    removed_set = set(removed_idx)
    survivors = tuple(i for i in range(code.size) if i not in removed_set)
    survivor_code = (
        Code(tuple(code.words[i] for i in survivors), code.q) if survivors else None
    )
    d_after = core.min_distance(survivor_code) if survivor_code else core.INFINITE_DISTANCE

    diagnostics = None
    if survivor_code is not None and survivor_code.size >= 2 and d_after == d:
        pair = next(
            (a, b)
            for a, b in combinations(survivors, 2)
            if core.hamming_distance(code.words[a], code.words[b]) == d
        )
        if case == "B":
            diagnostics = _case_b_diagnostics(code, pair, t)
        else:
            diagnostics = _case_c_diagnostics(code, pair, t, delta if delta is not None else 0)

    trace = StripTrace(
        case=case,
        d_before=d,
        d_after=d_after,
        delta=delta,
        threshold=threshold,
        removed=removed_idx,
        survivors=survivors,
        diagnostics=diagnostics,
    )
    return tuple(code.words[i] for i in removed_idx), survivor_code, trace
