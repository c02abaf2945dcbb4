"""Command-line front end: file formats, subcommand dispatch, rendering.

File formats
------------
Code files carry a header line ``N n q`` followed by n lines of N
space-separated integers, one codeword per line (the transpose of the
N x n matrix view, which is column-per-codeword).  Family files carry a
header ``N n`` followed by n rows of N binary digits (each row is one
member's incidence vector over the ground set).  Blank lines and lines
starting with ``#`` are ignored everywhere; duplicate rows are rejected.

Exit codes
----------
0  success / property holds
1  property fails (witness emitted) / witness did not re-verify
2  usage error (bad flags or parameters)
3  malformed input file
4  search budget exhausted before an answer

Reports
-------
``--format text`` renders aligned tables; ``--format machine`` emits one
JSON document tagged ``"schema": "tracecodes/1"`` with stable field names
(property, t, holds, witness{...}, counters{...}, bounds[{source, value,
exponent}, ...]).  Infinite distances appear as the string ``"inf"``.
Seeds always surface in reports; the fallback is a fixed constant, never
the clock.  ``--threads`` is accepted for compatibility and validated, but
execution is sequential either way — checks are deterministic and their
counters are part of the tested contract.  If ``TRACECODES_CACHE`` names a
directory, search results are checkpointed there and reused.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import os
import sys
from pathlib import Path
from typing import Any, Sequence

from . import bounds as bounds_mod
from . import core
from . import search as search_mod
from . import trace as trace_mod
from . import transform
from . import verify
from .core import Code
from .transform import SetFamily

__all__ = [
    "EXIT_BAD_FILE",
    "EXIT_BUDGET",
    "EXIT_OK",
    "EXIT_USAGE",
    "EXIT_VIOLATION",
    "FileFormatError",
    "SCHEMA",
    "console_entry",
    "main",
    "parse_code_text",
    "parse_family_text",
    "parse_word",
    "recheck_witness",
    "render_code_text",
    "render_family_text",
    "witness_to_json",
]

SCHEMA = "tracecodes/1"

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_BAD_FILE = 3
EXIT_BUDGET = 4


class FileFormatError(ValueError):
    """An input file does not conform to the documented format."""


# --------------------------------------------------------------------------
# file formats


def _data_lines(text: str) -> list[str]:
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def parse_code_text(text: str) -> Code:
    lines = _data_lines(text)
    if not lines:
        raise FileFormatError("empty code file")
    header = lines[0].split()
    if len(header) != 3:
        raise FileFormatError(f"code header must read 'N n q', got {lines[0]!r}")
    try:
        N, n, q = (int(x) for x in header)
    except ValueError:
        raise FileFormatError(f"non-integer code header {lines[0]!r}") from None
    body = lines[1:]
    if len(body) != n:
        raise FileFormatError(f"header promises {n} codewords, file has {len(body)}")
    words = []
    for ln in body:
        parts = ln.split()
        if len(parts) != N:
            raise FileFormatError(f"expected {N} symbols per row, got {len(parts)} in {ln!r}")
        try:
            words.append(tuple(int(p) for p in parts))
        except ValueError:
            raise FileFormatError(f"non-integer symbol in row {ln!r}") from None
    try:
        return Code(tuple(words), q)
    except ValueError as exc:
        raise FileFormatError(str(exc)) from None


def render_code_text(code: Code) -> str:
    lines = [f"{code.length} {code.size} {code.q}"]
    lines.extend(" ".join(str(s) for s in w) for w in code.words)
    return "\n".join(lines) + "\n"


def parse_family_text(text: str) -> SetFamily:
    lines = _data_lines(text)
    if not lines:
        raise FileFormatError("empty family file")
    header = lines[0].split()
    if len(header) != 2:
        raise FileFormatError(f"family header must read 'N n', got {lines[0]!r}")
    try:
        N, n = (int(x) for x in header)
    except ValueError:
        raise FileFormatError(f"non-integer family header {lines[0]!r}") from None
    body = lines[1:]
    if len(body) != n:
        raise FileFormatError(f"header promises {n} members, file has {len(body)}")
    masks = []
    for ln in body:
        digits = ln.replace(" ", "")
        if len(digits) != N:
            raise FileFormatError(f"expected {N} binary digits per row, got {len(digits)} in {ln!r}")
        if any(ch not in "01" for ch in digits):
            raise FileFormatError(f"non-binary digit in row {ln!r}")
        masks.append(sum(1 << e for e, ch in enumerate(digits) if ch == "1"))
    try:
        return SetFamily(N, tuple(masks))
    except ValueError as exc:
        raise FileFormatError(str(exc)) from None


def render_family_text(family: SetFamily) -> str:
    N = family.ground_size
    lines = [f"{N} {family.size}"]
    for m in family.members:
        lines.append("".join("1" if m >> e & 1 else "0" for e in range(N)))
    return "\n".join(lines) + "\n"


def _load(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise FileFormatError(f"cannot read {path}: {exc}") from None


def load_code(path: str) -> Code:
    return parse_code_text(_load(path))


def load_family(path: str) -> SetFamily:
    return parse_family_text(_load(path))


def parse_word(raw: str, N: int, q: int) -> core.Word:
    """A word argument: ``"0110"`` digit run (q <= 10) or ``"0,1,1,0"``."""
    raw = raw.strip()
    if "," in raw:
        parts = [p.strip() for p in raw.split(",")]
    elif q <= 10:
        parts = list(raw)
    else:
        raise ValueError(f"alphabet {q} needs the comma-separated word form")
    try:
        word = tuple(int(p) for p in parts)
    except ValueError:
        raise ValueError(f"cannot parse word {raw!r}") from None
    if len(word) != N:
        raise ValueError(f"word {raw!r} has {len(word)} symbols, the code has length {N}")
    for s in word:
        if not 0 <= s < q:
            raise ValueError(f"symbol {s} out of range for q={q}")
    return word


# --------------------------------------------------------------------------
# report plumbing


def _jsonable(value: Any) -> Any:
    if isinstance(value, float) and math.isinf(value):
        return "inf"
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    return value


def _fmt(value: Any) -> str:
    if value is None:
        return "-"
    if value is True:
        return "yes"
    if value is False:
        return "no"
    if isinstance(value, float) and math.isinf(value):
        return "inf"
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_fmt(v) for v in value) + "]"
    return str(value)


def _kv_lines(pairs: list[tuple[str, Any]]) -> list[str]:
    width = max(len(k) for k, _ in pairs)
    return [f"{k:<{width}}  {_fmt(v)}" for k, v in pairs]


def _table_lines(headers: list[str], rows: list[list[Any]]) -> list[str]:
    cells = [[_fmt(c) for c in row] for row in rows]
    widths = [len(h) for h in headers]
    for row in cells:
        for i, c in enumerate(row):
            widths[i] = max(widths[i], len(c))
    out = ["  ".join(h.ljust(widths[i]) for i, h in enumerate(headers))]
    for row in cells:
        out.append("  ".join(c.ljust(widths[i]) for i, c in enumerate(row)).rstrip())
    return out


def _emit(args: argparse.Namespace, report: dict, text_lines: list[str]) -> None:
    if args.format == "machine":
        print(json.dumps(_jsonable(report), indent=2, sort_keys=False))
    else:
        print("\n".join(text_lines))


def _code_json(code: Code) -> dict:
    return {
        "N": code.length,
        "n": code.size,
        "q": code.q,
        "words": [list(w) for w in code.words],
    }


def _family_json(family: SetFamily) -> dict:
    return {
        "ground_size": family.ground_size,
        "n": family.size,
        "members": [list(family.member_elements(i)) for i in range(family.size)],
    }


def witness_to_json(witness: verify.Witness, subject: Code | SetFamily) -> dict:
    if isinstance(witness, verify.FramedWord):
        assert isinstance(subject, Code)
        return {
            "kind": "framed-word",
            "framed": witness.framed,
            "framed_word": list(subject.words[witness.framed]),
            "coalition": list(witness.coalition),
        }
    if isinstance(witness, verify.CoverViolation):
        return {
            "kind": "cover-violation",
            "covered": witness.covered,
            "covering": list(witness.covering),
        }
    if isinstance(witness, verify.IppViolation):
        return {
            "kind": "ipp-violation",
            "word": list(witness.word),
            "coalitions": [list(c) for c in witness.coalitions],
        }
    if isinstance(witness, verify.TaViolation):
        return {
            "kind": "ta-violation",
            "coalition": list(witness.coalition),
            "pirate": list(witness.pirate),
            "outsider": witness.outsider,
            "insider_distance": witness.insider_distance,
            "outsider_distance": witness.outsider_distance,
        }
    raise TypeError(f"unknown witness {witness!r}")


def _witness_text(data: dict) -> str:
    kind = data["kind"]
    if kind == "framed-word":
        return f"codeword {data['framed']} framed by coalition {data['coalition']}"
    if kind == "cover-violation":
        return f"member {data['covered']} covered by union of {data['covering']}"
    if kind == "ipp-violation":
        return (
            f"word {data['word']} explained by disjoint coalitions "
            + ", ".join(str(c) for c in data["coalitions"])
        )
    if kind == "ta-violation":
        return (
            f"coalition {data['coalition']} forges {data['pirate']}: outsider "
            f"{data['outsider']} at distance {data['outsider_distance']} matches "
            f"the best insider distance {data['insider_distance']}"
        )
    return str(data)


def _distinct_indices(values: Any, n: int, label: str, problems: list[str]) -> list[int]:
    if not isinstance(values, (list, tuple)):
        problems.append(f"{label} is not a list")
        return []
    out = []
    for v in values:
        if not isinstance(v, int) or not 0 <= v < n:
            problems.append(f"{label} index {v!r} out of range")
            return []
        out.append(v)
    if len(set(out)) != len(out):
        problems.append(f"{label} repeats indices")
    return out


def recheck_witness(data: dict, subject: Code | SetFamily, t: int) -> list[str]:
    """Re-derive a violation witness from first principles; [] when it holds up."""
    problems: list[str] = []
    kind = data.get("kind")
    if kind == "framed-word":
        if not isinstance(subject, Code):
            return ["framed-word witnesses apply to codes"]
        framed = data.get("framed")
        if not isinstance(framed, int) or not 0 <= framed < subject.size:
            return [f"framed index {framed!r} out of range"]
        coalition = _distinct_indices(data.get("coalition"), subject.size, "coalition", problems)
        if problems:
            return problems
        if framed in coalition:
            problems.append("framed word sits inside the coalition")
        if len(coalition) > t or not coalition:
            problems.append(f"coalition size {len(coalition)} outside 1..{t}")
        if not problems and not core.is_descendant(
            subject.words[framed], subject.coalition_words(coalition)
        ):
            problems.append("coalition cannot produce the framed word")
        return problems
    if kind == "cover-violation":
        if not isinstance(subject, SetFamily):
            return ["cover-violation witnesses apply to families"]
        covered = data.get("covered")
        if not isinstance(covered, int) or not 0 <= covered < subject.size:
            return [f"covered index {covered!r} out of range"]
        covering = _distinct_indices(data.get("covering"), subject.size, "covering", problems)
        if problems:
            return problems
        if covered in covering:
            problems.append("covered member listed among the covering members")
        if len(covering) > t:
            problems.append(f"covering uses {len(covering)} members, cap is {t}")
        union = 0
        for j in covering:
            union |= subject.members[j]
        if not problems and subject.members[covered] & ~union:
            problems.append("union does not contain the covered member")
        return problems
    if kind == "ipp-violation":
        if not isinstance(subject, Code):
            return ["ipp-violation witnesses apply to codes"]
        word = data.get("word")
        if not isinstance(word, (list, tuple)) or len(word) != subject.length:
            return ["witness word has the wrong length"]
        word = tuple(word)
        raw = data.get("coalitions")
        if not isinstance(raw, (list, tuple)) or len(raw) < 2:
            return ["need at least two coalitions"]
        coalitions = []
        for which, c in enumerate(raw):
            idx = _distinct_indices(c, subject.size, f"coalition {which}", problems)
            if problems:
                return problems
            if not 1 <= len(idx) <= t:
                problems.append(f"coalition {which} size {len(idx)} outside 1..{t}")
            coalitions.append(idx)
        for which, c in enumerate(coalitions):
            if not core.is_descendant(word, subject.coalition_words(c)):
                problems.append(f"coalition {which} cannot produce the word")
        common = set(coalitions[0])
        for c in coalitions[1:]:
            common &= set(c)
        if common:
            problems.append(f"coalitions share members {sorted(common)}")
        return problems
    if kind == "ta-violation":
        if not isinstance(subject, Code):
            return ["ta-violation witnesses apply to codes"]
        coalition = _distinct_indices(data.get("coalition"), subject.size, "coalition", problems)
        if problems:
            return problems
        if not 1 <= len(coalition) <= t:
            problems.append(f"coalition size {len(coalition)} outside 1..{t}")
        pirate = data.get("pirate")
        if not isinstance(pirate, (list, tuple)) or len(pirate) != subject.length:
            return ["pirate word has the wrong length"]
        pirate = tuple(pirate)
        outsider = data.get("outsider")
        if not isinstance(outsider, int) or not 0 <= outsider < subject.size:
            return [f"outsider index {outsider!r} out of range"]
        if outsider in coalition:
            problems.append("outsider sits inside the coalition")
        if problems:
            return problems
        if not core.is_descendant(pirate, subject.coalition_words(coalition)):
            problems.append("coalition cannot produce the pirate word")
        best_in = min(core.hamming_distance(pirate, subject.words[i]) for i in coalition)
        d_out = core.hamming_distance(pirate, subject.words[outsider])
        if best_in != data.get("insider_distance"):
            problems.append(f"insider distance recomputes to {best_in}")
        if d_out != data.get("outsider_distance"):
            problems.append(f"outsider distance recomputes to {d_out}")
        if best_in < d_out:
            problems.append("every insider is strictly closer; no violation")
        return problems
    return [f"unknown witness kind {kind!r}"]


# --------------------------------------------------------------------------
# subcommands


def _cmd_verify(args: argparse.Namespace) -> int:
    subject: Code | SetFamily
    if args.property == "cff":
        subject = load_family(args.file)
        verdict = verify.check_cff(subject, args.t)
    else:
        subject = load_code(args.file)
        if args.property == "fp":
            verdict = verify.check_frameproof(subject, args.t, mode=args.mode)
        elif args.property == "ipp":
            verdict = verify.check_ipp(subject, args.t)
        else:
            verdict = verify.check_ta(subject, args.t)
    witness = (
        witness_to_json(verdict.witness, subject) if verdict.witness is not None else None
    )
    report = {
        "schema": SCHEMA,
        "command": "verify",
        "property": verdict.property,
        "t": verdict.t,
        "holds": verdict.holds,
        "witness": witness,
        "counters": {
            "subsets_examined": verdict.counters.subsets_examined,
            "words_examined": verdict.counters.words_examined,
        },
    }
    pairs = [
        ("property", verdict.property),
        ("t", verdict.t),
        ("holds", verdict.holds),
        ("subsets examined", verdict.counters.subsets_examined),
        ("words examined", verdict.counters.words_examined),
    ]
    if witness is not None:
        pairs.append(("witness", _witness_text(witness)))
    _emit(args, report, _kv_lines(pairs))
    return EXIT_OK if verdict.holds else EXIT_VIOLATION


def _cmd_trace(args: argparse.Namespace) -> int:
    code = load_code(args.file)
    word = parse_word(args.pirate, code.length, code.q)
    if args.scheme == "ta":
        accusation = trace_mod.trace_ta(code, word)
    else:
        if args.t is None:
            raise ValueError("--t is required for the parent-set scheme")
        accusation = trace_mod.trace_ipp(code, word, args.t)
    report = {
        "schema": SCHEMA,
        "command": "trace",
        "scheme": args.scheme,
        "pirate": list(word),
        "accused": list(accusation.accused),
        "status": accusation.status,
        "min_distance": accusation.min_distance,
        "family_size": accusation.family_size,
    }
    pairs = [
        ("scheme", args.scheme),
        ("pirate", list(word)),
        ("accused", list(accusation.accused)),
        ("status", accusation.status),
    ]
    if accusation.min_distance is not None:
        pairs.append(("min distance", accusation.min_distance))
    if accusation.family_size is not None:
        pairs.append(("parent sets", accusation.family_size))
    _emit(args, report, _kv_lines(pairs))
    return EXIT_OK if accusation.status == "ok" else EXIT_VIOLATION


def _bound_entry_json(entry: bounds_mod.BoundEntry) -> dict:
    return {
        "source": entry.source,
        "value": entry.value,
        "coefficient": entry.coefficient,
        "exponent": entry.exponent,
        "usable": entry.usable,
        "note": entry.note,
    }


def _cmd_bounds(args: argparse.Namespace) -> int:
    report_obj = bounds_mod.bound_report(args.N, args.q, args.t, evaluate_symbolic=args.evaluate)
    report = {
        "schema": SCHEMA,
        "command": "bounds",
        "N": args.N,
        "q": args.q,
        "t": args.t,
        "bounds": [_bound_entry_json(e) for e in report_obj.entries],
    }
    lines = [f"bounds at N={args.N} q={args.q} t={args.t}", ""]
    lines.extend(
        _table_lines(
            ["source", "value", "coefficient", "exponent", "usable", "note"],
            [
                [e.source, e.value, e.coefficient, e.exponent, e.usable, e.note]
                for e in report_obj.entries
            ],
        )
    )
    if args.q == 2 and args.t >= 3:
        status = bounds_mod.binary_fp_status(args.N, args.t)
        report["binary_fp_status"] = {
            "guaranteed": status.guaranteed,
            "reason": status.reason,
            "binomial_lower": status.binomial_lower,
            "quadratic_lower": status.quadratic_lower,
            "conjectured": status.conjectured,
        }
        lines.append("")
        lines.extend(
            _kv_lines(
                [
                    ("size cap guaranteed", status.guaranteed),
                    ("reason", status.reason),
                    ("cap can break from length (classical)", status.binomial_lower),
                    ("cap can break from length (quadratic)", status.quadratic_lower),
                    ("cap can break from length (conjectured)", status.conjectured),
                ]
            )
        )
    _emit(args, report, lines)
    return EXIT_OK


def _parse_op(raw: str) -> tuple[str, int | None]:
    name, _, arg = raw.partition("=")
    plain = {"double", "tocode", "prune", "violate", "strip"}
    valued = {"restrict", "pad", "compose"}
    if name in plain:
        if arg:
            raise ValueError(f"op {name} takes no =VALUE")
        return name, None
    if name in valued:
        if not arg:
            raise ValueError(f"op {name} needs =VALUE")
        try:
            return name, int(arg)
        except ValueError:
            raise ValueError(f"op {name} needs an integer value, got {arg!r}") from None
    raise ValueError(f"unknown op {raw!r}")


def _require_t(args: argparse.Namespace, op: str) -> int:
    if args.t is None:
        raise ValueError(f"op {op} requires --t")
    return args.t


def _cmd_transform(args: argparse.Namespace) -> int:
    op, value = _parse_op(args.op)
    report: dict = {"schema": SCHEMA, "command": "transform", "op": args.op}
    lines: list[str]

    if op == "double":
        family = transform.fpc_to_cff(load_code(args.file))
        report["family"] = _family_json(family)
        lines = [f"# doubled code -> family over {family.ground_size} rows"]
        lines.append(render_family_text(family).rstrip("\n"))
    elif op == "tocode":
        code = transform.cff_to_fpc(load_family(args.file))
        report["code"] = _code_json(code)
        lines = ["# family members as incidence words"]
        lines.append(render_code_text(code).rstrip("\n"))
    elif op == "restrict":
        restriction = transform.cff_restrict(load_family(args.file), value)
        report["restriction"] = {
            "ground_size": restriction.ground_size,
            "removed_member": restriction.removed_member,
            "clean": restriction.clean,
            "empty_indices": list(restriction.empty_indices),
            "duplicate_indices": list(restriction.duplicate_indices),
            "members": [
                [e for e in range(restriction.ground_size) if m >> e & 1]
                for m in restriction.members
            ],
        }
        lines = [
            f"# removed member {restriction.removed_member}; "
            f"ground set now {restriction.ground_size} elements",
        ]
        if restriction.clean:
            lines.append(render_family_text(restriction.family()).rstrip("\n"))
        else:
            lines.append(
                f"# not a valid family: empty members at {list(restriction.empty_indices)}, "
                f"duplicates at {list(restriction.duplicate_indices)}"
            )
    elif op == "pad":
        code = transform.pad_code(load_code(args.file), value)
        report["code"] = _code_json(code)
        lines = [render_code_text(code).rstrip("\n")]
    elif op == "compose":
        code = transform.block_compose(load_code(args.file), value)
        report["code"] = _code_json(code)
        lines = [render_code_text(code).rstrip("\n")]
    elif op == "prune":
        t = _require_t(args, op)
        code = load_code(args.file)
        partition = transform.make_row_partition(code.length, t)
        result = transform.prune_special_codewords(code, partition)
        subcode = result.subcode(code)
        report["prune"] = {
            "survivors": list(result.survivors),
            "steps": [
                {"removed": s.removed, "part": s.part, "pattern": list(s.pattern)}
                for s in result.steps
            ],
            "code": _code_json(subcode) if subcode else None,
        }
        lines = [f"# pruned {len(result.steps)} codeword(s); survivors {list(result.survivors)}"]
        for s in result.steps:
            lines.append(f"# removed {s.removed}: private pattern {list(s.pattern)} on part {s.part}")
        if subcode:
            lines.append(render_code_text(subcode).rstrip("\n"))
        else:
            lines.append("# every codeword was pruned")
    elif op == "violate":
        t = _require_t(args, op)
        code = load_code(args.file)
        partition = transform.make_row_partition(code.length, t)
        result = transform.prune_special_codewords(code, partition)
        subcode = result.subcode(code)
        if subcode is None:
            report["certificate"] = None
            report["reason"] = "every codeword was pruned; nothing to build on"
            _emit(args, report, ["# " + report["reason"]])
            return EXIT_OK
        cert = transform.build_ipp_violation(subcode, partition, t)
        report["survivors"] = list(result.survivors)
        report["certificate"] = {
            "chain": list(cert.chain),
            "milestones": list(cert.milestones),
            "descendant": list(cert.descendant),
            "replacements": [list(r) for r in cert.replacements],
            "coalitions": [list(c) for c in cert.coalitions],
        }
        lines = [
            f"# certificate indices refer to the {subcode.size} surviving codeword(s)",
            f"# survivors (original rows): {list(result.survivors)}",
        ]
        lines.extend(
            _kv_lines(
                [
                    ("chain", list(cert.chain)),
                    ("milestone parts", list(cert.milestones)),
                    ("descendant", list(cert.descendant)),
                    ("replacements", [list(r) for r in cert.replacements]),
                    ("coalitions", [list(c) for c in cert.coalitions]),
                ]
            )
        )
    elif op == "strip":
        t = _require_t(args, op)
        code = load_code(args.file)
        removed, survivor_code, strace = transform.distance_strip(code, t)
        report["strip"] = {
            "case": strace.case,
            "d_before": strace.d_before,
            "d_after": strace.d_after,
            "delta": strace.delta,
            "threshold": strace.threshold,
            "removed": list(strace.removed),
            "survivors": list(strace.survivors),
            "code": _code_json(survivor_code) if survivor_code else None,
            "diagnostics": None
            if strace.diagnostics is None
            else {"pair": list(strace.diagnostics.pair)},
        }
        lines = [
            f"# case {strace.case}: distance {strace.d_before} -> {_fmt(strace.d_after)}",
            f"# removed rows {list(strace.removed)}",
        ]
        if survivor_code:
            lines.append(render_code_text(survivor_code).rstrip("\n"))
        else:
            lines.append("# every codeword was removed")
    else:  # pragma: no cover - _parse_op filters
        raise ValueError(f"unknown op {op!r}")

    _emit(args, report, lines)
    return EXIT_OK


def _cache_path(problem: search_mod.SearchProblem, budget: int | None) -> Path | None:
    root = os.environ.get("TRACECODES_CACHE")
    if not root:
        return None
    key = json.dumps(
        {
            "property": problem.property,
            "N": problem.N,
            "q": problem.q,
            "t": problem.t,
            "mode": problem.mode,
            "goal": problem.goal,
            "budget": budget,
        },
        sort_keys=True,
    )
    digest = hashlib.sha256(key.encode()).hexdigest()[:24]
    directory = Path(root)
    directory.mkdir(parents=True, exist_ok=True)
    return directory / f"search-{digest}.json"


def _witness_json(witness: Code | SetFamily | None) -> dict | None:
    if witness is None:
        return None
    if isinstance(witness, Code):
        return {"type": "code", **_code_json(witness)}
    return {"type": "family", **_family_json(witness)}


def _search_payload(res: search_mod.SearchResult) -> dict:
    return {
        "optimum": res.optimum,
        "decided": res.decided,
        "complete": res.complete,
        "nodes": res.nodes,
        "elapsed": res.elapsed,
        "budget": res.budget,
        "witness": _witness_json(res.witness),
    }


def _cmd_search(args: argparse.Namespace) -> int:
    prop = args.property.upper()
    report: dict = {"schema": SCHEMA, "command": "search", "property": prop, "t": args.t}

    if args.min_length:
        res = search_mod.min_length_search(
            args.t, prop, args.budget, args.start_length, args.max_length
        )
        truncated = bool(res.probes) and res.probes[-1].decided is None
        report["min_length"] = {
            "value": res.value,
            "lower_bound": res.lower_bound,
            "complete": res.complete,
            "probes": [
                {"N": p.N, "decided": p.decided, "nodes": p.nodes} for p in res.probes
            ],
            "witness": _witness_json(res.witness),
        }
        pairs = [
            ("property", prop),
            ("t", args.t),
            ("min length", res.value),
            ("lower bound", res.lower_bound),
            ("complete", res.complete),
            ("lengths probed", [p.N for p in res.probes]),
        ]
        _emit(args, report, _kv_lines(pairs))
        return EXIT_BUDGET if truncated else EXIT_OK

    if args.N is None:
        raise ValueError("--N is required unless --min-length is given")
    mode, goal = "maximize", None
    if args.decide_exceeds_N:
        mode, goal = "decide", args.N + 1
    if args.goal is not None:
        mode, goal = "decide", args.goal
    problem = search_mod.SearchProblem(prop, N=args.N, t=args.t, q=args.q, mode=mode, goal=goal)

    cache_file = _cache_path(problem, args.budget)
    cached = None
    if cache_file is not None and cache_file.exists():
        cached = json.loads(cache_file.read_text())

    if cached is not None:
        payload = dict(cached)
        payload["cached"] = True
        exit_needs_budget = payload["decided"] is None and mode == "decide" or (
            mode == "maximize" and not payload["complete"]
        )
    else:
        res = search_mod.max_code_search(problem, args.budget)
        payload = _search_payload(res)
        payload["cached"] = False
        if cache_file is not None:
            cache_file.write_text(json.dumps(_jsonable(payload), indent=2))
        exit_needs_budget = (mode == "decide" and res.decided is None) or (
            mode == "maximize" and not res.complete
        )

    report.update(
        {
            "N": args.N,
            "q": args.q,
            "mode": mode,
            "goal": goal,
            **payload,
        }
    )
    pairs = [
        ("property", prop),
        ("N", args.N),
        ("q", args.q),
        ("t", args.t),
        ("mode", mode),
    ]
    if goal is not None:
        pairs.append(("goal", goal))
    pairs.extend(
        [
            ("optimum", payload["optimum"]),
            ("decided", payload["decided"]),
            ("complete", payload["complete"]),
            ("nodes", payload["nodes"]),
            ("cached", payload["cached"]),
        ]
    )
    if payload["witness"]:
        pairs.append(("witness size", payload["witness"]["n"]))
    _emit(args, report, _kv_lines(pairs))
    return EXIT_BUDGET if exit_needs_budget else EXIT_OK


def _cmd_simulate(args: argparse.Namespace) -> int:
    code = load_code(args.file)
    strategy = trace_mod.PirateStrategy(args.strategy)
    rep = trace_mod.simulate_tracing(code, args.t, args.trials, strategy, args.seed)

    def stats_json(s: trace_mod.MethodStats) -> dict:
        return {
            "subset_rate": s.subset_rate,
            "overlap_rate": s.overlap_rate,
            "mean_accused": s.mean_accused,
        }

    report = {
        "schema": SCHEMA,
        "command": "simulate",
        "trials": rep.trials,
        "t": rep.t,
        "strategy": rep.strategy.kind,
        "seed": rep.seed,
        "ta": stats_json(rep.ta),
        "ipp": stats_json(rep.ipp),
        "elapsed": rep.elapsed,
    }
    lines = _kv_lines(
        [
            ("trials", rep.trials),
            ("t", rep.t),
            ("strategy", rep.strategy.kind),
            ("seed", rep.seed),
        ]
    )
    lines.append("")
    lines.extend(
        _table_lines(
            ["method", "subset rate", "overlap rate", "mean accused"],
            [
                ["TA", rep.ta.subset_rate, rep.ta.overlap_rate, rep.ta.mean_accused],
                ["IPP", rep.ipp.subset_rate, rep.ipp.overlap_rate, rep.ipp.mean_accused],
            ],
        )
    )
    _emit(args, report, lines)
    return EXIT_OK


def _cmd_recheck(args: argparse.Namespace) -> int:
    try:
        data = json.loads(Path(args.witness).read_text())
    except OSError as exc:
        raise FileFormatError(f"cannot read {args.witness}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"witness file is not JSON: {exc}") from None
    if isinstance(data, dict) and isinstance(data.get("witness"), dict):
        data = data["witness"]
    if not isinstance(data, dict):
        raise FileFormatError("witness document must be a JSON object")
    subject: Code | SetFamily
    if args.property == "cff":
        subject = load_family(args.file)
    else:
        subject = load_code(args.file)
    problems = recheck_witness(data, subject, args.t)
    report = {
        "schema": SCHEMA,
        "command": "recheck",
        "property": args.property.upper(),
        "t": args.t,
        "confirmed": not problems,
        "problems": problems,
    }
    pairs: list[tuple[str, Any]] = [
        ("property", args.property.upper()),
        ("t", args.t),
        ("confirmed", not problems),
    ]
    for p in problems:
        pairs.append(("problem", p))
    _emit(args, report, _kv_lines(pairs))
    return EXIT_OK if not problems else EXIT_VIOLATION


# --------------------------------------------------------------------------
# parser


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format", choices=("text", "machine"), default="text", help="report rendering"
    )
    common.add_argument(
        "--threads",
        type=int,
        default=1,
        help="worker cap (accepted for compatibility; execution is sequential)",
    )

    parser = argparse.ArgumentParser(
        prog="tracecodes",
        description="Verify, trace, bound, transform and search collusion-resistant codes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="check a property, emit a witness on failure")
    p.add_argument("--property", choices=("fp", "ipp", "ta", "cff"), required=True)
    p.add_argument("--t", type=int, required=True, help="coalition size bound")
    p.add_argument("--mode", choices=("def1", "def3"), default="def3", help="frameproof scan order")
    p.add_argument("file")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("trace", parents=[common], help="accuse codewords from a pirate word")
    p.add_argument("--scheme", choices=("ta", "ipp"), required=True)
    p.add_argument("--t", type=int, help="coalition size bound (parent-set scheme)")
    p.add_argument("--pirate", required=True, help="word, e.g. 0110 or 0,1,1,0")
    p.add_argument("file")
    p.set_defaults(func=_cmd_trace)

    p = sub.add_parser("bounds", parents=[common], help="closed-form size caps at (N, q, t)")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--evaluate", action="store_true", help="multiply symbolic entries out")
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("transform", parents=[common], help="rewrite codes and families")
    p.add_argument(
        "--op",
        required=True,
        help="double | tocode | restrict=IDX | pad=R | compose=A | prune | violate | strip",
    )
    p.add_argument("--t", type=int, help="coalition size bound (prune/violate/strip)")
    p.add_argument("file")
    p.set_defaults(func=_cmd_transform)

    p = sub.add_parser("search", parents=[common], help="exhaustive extremal search")
    p.add_argument("--property", choices=("fp", "ipp", "ta", "cff"), required=True)
    p.add_argument("--N", type=int, help="length (ground size for cff)")
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--goal", type=int, help="decide: does a code of this size exist?")
    p.add_argument(
        "--decide-exceeds-N",
        action="store_true",
        help="decide: does some code beat N words?",
    )
    p.add_argument("--budget", type=int, help="node budget; exhaustion exits 4")
    p.add_argument("--min-length", action="store_true", help="scan lengths for the first excess")
    p.add_argument("--start-length", type=int, default=1)
    p.add_argument("--max-length", type=int, default=16)
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("simulate", parents=[common], help="forge pirates, trace them, tally rates")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--strategy", choices=trace_mod.STRATEGY_KINDS, default="interleave")
    p.add_argument("--seed", type=int, help="master seed (fixed default when omitted)")
    p.add_argument("file")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("recheck", parents=[common], help="re-verify an emitted witness")
    p.add_argument("--property", choices=("fp", "ipp", "ta", "cff"), required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--witness", required=True, help="JSON report or bare witness object")
    p.add_argument("file")
    p.set_defaults(func=_cmd_recheck)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.threads < 1:
        print("error: --threads must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except FileFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_FILE
    except core.DescendantSetTooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def console_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    console_entry()
