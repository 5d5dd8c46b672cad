"""Command-line front end: ``tiebreak gate|orbits|count|build|check``.

Exit codes: 0 on success, 2 when no refinement exists (the report names the
obstructing orbit), 1 on malformed input or unmet preconditions.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from typing import Sequence

from .errors import (
    GroupTooLarge,
    NoRefinement,
    ParseError,
    ProfileSpaceTooLarge,
    TieBreakError,
)
from .perms import DEFAULT_GROUP_CAP, Perm
from .profiles import (
    DEFAULT_PROFILE_CAP,
    SymmetryGroup,
    is_regular,
    orbit_decomposition,
    parse_group_element,
)
from .refine import (
    GATE_MODES,
    ChoicePolicy,
    build_consistent_refinement,
    build_symmetric_refinement,
    count_consistent_refinements,
    count_symmetric_refinements,
    existence_gate,
    uk_correspondence,
)
from .relations import Relation, load_relation, president_order
from .rules import (
    Correspondence,
    check_consistent,
    check_symmetric,
    induce_kscc,
    load_custom_table,
    named_group,
    spc_table,
)

SCHEMA = 1
TABLE_LIMIT = 10**5
GROUP_HELP = ("comma-joined presets: anonymity, neutrality, reversal, full, trivial, "
              "R_anon:<rel>, Q_neut:<rel>, file:<grp>")


# ---------------------------------------------------------------- input helpers


def parse_group_text(text: str, h: int, n: int, source: str = "<string>",
                     cap: int = DEFAULT_GROUP_CAP) -> SymmetryGroup:
    """One generator per line: ``phi:<cycles> psi:<cycles> rho:id|rho0``."""
    gens = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            gens.append(parse_group_element(line, h, n))
        except ValueError as exc:
            raise ParseError(source, lineno, str(exc)) from None
    return SymmetryGroup.from_generators(h, n, gens, cap)


def parse_group_file(path, h: int, n: int, cap: int = DEFAULT_GROUP_CAP) -> SymmetryGroup:
    path = Path(path)
    return parse_group_text(path.read_text(encoding="utf-8"), h, n, str(path), cap)


def resolve_relation(text: str, m: int) -> Relation:
    """Preset ``total``, ``president``, ``linear`` or ``empty``, else a relation file."""
    if text == "total":
        return Relation.total(m)
    if text == "president":
        return president_order(m)
    if text == "linear":
        return Relation.from_linear_order(Perm.identity(m))
    if text == "empty":
        return Relation.empty(m)
    R = load_relation(text)
    if R.m != m:
        raise ValueError(f"relation in {text} has degree {R.m}, expected {m}")
    return R


def resolve_group(text: str, h: int, n: int, cap: int) -> SymmetryGroup:
    """Comma-joined presets: anonymity, neutrality, reversal, full, trivial,
    R_anon:<rel>, Q_neut:<rel>, file:<grp>."""
    parts = []
    for token in [t.strip() for t in text.split(",") if t.strip()]:
        name, _, arg = token.partition(":")
        low = name.lower()
        if low in ("anonymity", "neutrality", "reversal", "full", "full_g", "trivial"):
            parts.append(named_group(h, n, low))
        elif low == "r_anon":
            parts.append(named_group(h, n, "R_anon", resolve_relation(arg, h)))
        elif low == "q_neut":
            parts.append(named_group(h, n, "Q_neut", resolve_relation(arg, n)))
        elif low == "file":
            parts.append(parse_group_file(arg, h, n, cap))
        else:
            raise ValueError(f"unknown group preset {token!r}")
    if not parts:
        raise ValueError("empty group specification")
    if len(parts) == 1 and parts[0].order <= cap:
        return parts[0]
    return SymmetryGroup.from_generators(h, n, [g for p in parts for g in p.generators], cap)


def resolve_rule(text: str, U: SymmetryGroup | None, h: int, n: int, k: int | None,
                 cap: int) -> Correspondence:
    if text == "uk":
        if k is None:
            raise ValueError("--rule uk needs --k")
        if U is None:
            raise ValueError("--rule uk needs --U")
        return uk_correspondence(U, k)
    if text.startswith("custom:"):
        C = load_custom_table(text[len("custom:"):], h, n)
    else:
        C = spc_table(text, h, n, cap)
    return induce_kscc(C, k) if k is not None else C


# ---------------------------------------------------------------- argument parsing


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tiebreak", description=(
        "Existence, construction and counting of symmetric and consistent "
        "resolute refinements of voting correspondences."))
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--h", type=int, required=True, help="number of voters")
        p.add_argument("--n", type=int, required=True, help="number of alternatives")
        p.add_argument("--k", type=int, default=None, help="committee size (k-SCC modes)")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--threads", type=int, default=1, help="worker threads; results do not depend on it")
        p.add_argument("--group-cap", type=int, default=DEFAULT_GROUP_CAP, help="largest group to enumerate")
        p.add_argument("--profile-cap", type=int, default=DEFAULT_PROFILE_CAP, help="largest profile space")
        p.add_argument("--no-timings", action="store_true", help="omit wall-clock timings")

    g = sub.add_parser("gate", help="decide existence from Aut(R) and Aut(Q)")
    common(g)
    g.add_argument("--R", default="total", help="voter relation: total|president|linear|empty|<file>")
    g.add_argument("--Q", default="total", help="alternative relation: same choices as --R")
    g.add_argument("--mode", choices=GATE_MODES, default="sym_id")

    o = sub.add_parser("orbits", help="orbit decomposition summary")
    common(o)
    o.add_argument("--U", required=True, help=GROUP_HELP)
    o.add_argument("--emit-table", default=None, help="write the orbit table as JSON")

    for name, helptext in (("count", "count resolute refinements"),
                           ("build", "construct a resolute refinement"),
                           ("check", "check symmetry and consistency of a rule")):
        p = sub.add_parser(name, help=helptext)
        common(p)
        p.add_argument("--U", required=True, help=GROUP_HELP)
        p.add_argument("--rule", default="borda", help="borda|copeland|minimax|kemeny|custom:<file>|uk")
        if name != "check":
            p.add_argument("--target", choices=("symmetric", "consistent"), default="consistent")
        if name == "build":
            p.add_argument("--policy", choices=("min", "max", "random"), default="min")
            p.add_argument("--seed", type=int, default=None, help="seed for --policy random")
            p.add_argument("--emit-table", default=None, help="write the table (.json or .tsv)")
    return ap


# ---------------------------------------------------------------- commands


class _Timer:
    def __init__(self):
        self.phases: dict[str, float] = {}

    def run(self, phase: str, fn, *args, **kw):
        t0 = time.perf_counter()
        out = fn(*args, **kw)
        self.phases[phase] = round(time.perf_counter() - t0, 6)
        return out


def _validate(args) -> None:
    if args.h < 2 or args.n < 2:
        raise ValueError("need h >= 2 and n >= 2")
    if args.k is not None and not 1 <= args.k <= args.n - 1:
        raise ValueError(f"--k must lie in 1..{args.n - 1}")
    if args.threads < 1 or args.group_cap < 1 or args.profile_cap < 1:
        raise ValueError("threads and caps must be positive")


def _config(args) -> dict:
    # threads cannot change results, so it stays out of the echoed config
    return {k: v for k, v in sorted(vars(args).items()) if k not in ("command", "format", "no_timings", "threads")}


def _orbit_stats(table) -> dict:
    return {"orbits": table.num_orbits, "P1": len(table.p1), "P2": len(table.p2)}


def cmd_gate(args, timer) -> tuple[int, dict]:
    R = resolve_relation(args.R, args.h)
    Q = resolve_relation(args.Q, args.n)
    v = timer.run("gate", existence_gate, R, Q, args.mode, args.k)
    return 0, {"gate": v.to_json()}


def cmd_orbits(args, timer) -> tuple[int, dict]:
    U = timer.run("closure", resolve_group, args.U, args.h, args.n, args.group_cap)
    table = timer.run("orbits", orbit_decomposition, U, args.threads, args.profile_cap)
    reg = is_regular(U, args.profile_cap)
    out = {
        "group": U.to_json(),
        "profiles": table.space.size,
        "orbit_stats": _orbit_stats(table),
        "regular": reg.verdict,
        "witness": None if reg.witness is None else reg.witness.index,
        "gcd_criterion": reg.criterion,
        "criterion_agreement": reg.criterion_agreement,
    }
    if args.emit_table:
        Path(args.emit_table).write_text(json.dumps(table.to_json(), indent=1) + "\n", encoding="utf-8")
        out["table_path"] = args.emit_table
    return 0, out


def _setup(args, timer):
    U = timer.run("closure", resolve_group, args.U, args.h, args.n, args.group_cap)
    table = timer.run("orbits", orbit_decomposition, U, args.threads, args.profile_cap)
    C = timer.run("rule", resolve_rule, args.rule, U, args.h, args.n, args.k, args.profile_cap)
    return U, table, C


def _no_refinement(exc: NoRefinement, table) -> tuple[int, dict]:
    cls = table.class_of_orbit[exc.orbit] if 0 <= exc.orbit < table.num_orbits else None
    return 2, {"refinement": None, "no_refinement": {
        "reason": exc.reason, "orbit": exc.orbit, "orbit_class": cls, "rep_index": exc.rep_index}}


def cmd_count(args, timer) -> tuple[int, dict]:
    U, table, C = _setup(args, timer)
    fn = count_symmetric_refinements if args.target == "symmetric" else count_consistent_refinements
    cnt = timer.run("count", fn, U, C)
    out = {"group": U.to_json(), "orbit_stats": _orbit_stats(table), "target": args.target,
           "count": cnt.to_json(full=False)}
    return 0, out


def cmd_build(args, timer) -> tuple[int, dict]:
    U, table, C = _setup(args, timer)
    policy = ChoicePolicy(args.policy, args.seed)
    fn = build_symmetric_refinement if args.target == "symmetric" else build_consistent_refinement
    base = {"group": U.to_json(), "orbit_stats": _orbit_stats(table), "target": args.target}
    try:
        f, cnt = timer.run("build", fn, U, C, policy)
    except NoRefinement as exc:
        code, extra = _no_refinement(exc, table)
        return code, {**base, **extra}
    out = {**base, "count": cnt.to_json(full=False), "policy": f.policy, "kind": f.kind}
    if args.emit_table:
        if table.space.size > TABLE_LIMIT:
            raise ValueError(f"table emission is limited to {TABLE_LIMIT} profiles")
        path = Path(args.emit_table)
        if path.suffix == ".tsv":
            path.write_text(f.to_tsv(), encoding="utf-8")
        else:
            path.write_text(json.dumps(f.to_json(), indent=1) + "\n", encoding="utf-8")
        out["table_path"] = str(path)
    return 0, out


def cmd_check(args, timer) -> tuple[int, dict]:
    U, table, C = _setup(args, timer)

    def ce(res):
        if res.ok:
            return None
        p, g = res.counterexample
        return {"profile_index": p.index, "profile": str(p), "element": str(g)}

    out = {"group": U.to_json(), "orbit_stats": _orbit_stats(table), "kind": C.kind,
           "decisive": C.is_decisive(), "resolute": C.is_resolute()}
    if C.kind == "spc":
        sym = timer.run("symmetric", check_symmetric, C, U)
        out["symmetric"] = {"ok": sym.ok, "counterexample": ce(sym)}
    con = timer.run("consistent", check_consistent, C, U)
    out["consistent"] = {"ok": con.ok, "counterexample": ce(con)}
    return 0, out


COMMANDS = {"gate": cmd_gate, "orbits": cmd_orbits, "count": cmd_count, "build": cmd_build,
            "check": cmd_check}


# ---------------------------------------------------------------- output


def _render_text(report: dict, indent: int = 0) -> str:
    lines = []
    pad = "  " * indent
    for key, val in report.items():
        if isinstance(val, dict):
            lines.append(f"{pad}{key}:")
            lines.append(_render_text(val, indent + 1))
        else:
            lines.append(f"{pad}{key}: {val}")
    return "\n".join(lines)


def run(argv: Sequence[str] | None = None, stdout=None) -> tuple[int, dict]:
    """Parse ``argv``, run the command, print the report and return ``(code, report)``."""
    stdout = stdout or sys.stdout
    ap = build_parser()
    args = ap.parse_args(argv)
    timer = _Timer()
    report: dict = {"schema": SCHEMA, "command": args.command}
    try:
        _validate(args)
        report["config"] = _config(args)
        code, body = COMMANDS[args.command](args, timer)
        report.update(body)
    except GroupTooLarge as exc:
        code, report["error"] = 1, f"{exc}; raise --group-cap"
    except ProfileSpaceTooLarge as exc:
        code, report["error"] = 1, f"{exc}; raise --profile-cap"
    except (TieBreakError, ValueError, OSError) as exc:
        code, report["error"] = 1, f"{type(exc).__name__}: {exc}"
    report["exit_code"] = code
    if not args.no_timings:
        report["timings"] = timer.phases
    if args.format == "json":
        stdout.write(json.dumps(report, indent=1, sort_keys=False) + "\n")
    else:
        stdout.write(_render_text(report) + "\n")
    return code, report


def main(argv: Sequence[str] | None = None) -> int:
    code, _ = run(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
