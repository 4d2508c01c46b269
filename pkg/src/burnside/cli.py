"""Command-line interface: ``burnside <command> <group> [options]``.

Group grammar::

    S<n> | A<n> | C<n> | D<order> | EA<k>      named families
    F1xF2x...                                direct products
    inv(C<m1>xC<m2>...)                       odd abelian group ⋊ inversion
    perm:<path>                               one generator per line
    lattice:<path>                            validated lattice import

Exit codes: 0 success, 1 usage or parse error, 2 cap exceeded,
3 internal verification failure, 4 oracle mismatch.
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import groups
from .lattice import SubgroupClassList, class_list, load_lattice
from .marks import MarksError, marks_table
from .perm import DEFAULT_ORDER_CAP, OrderCapExceeded, PermGroup, format_cycles, parse_cycles
from .units import (
    CapExceeded,
    InternalError,
    VerificationFailed,
    brute_force_units,
    conjecture_check,
    unit_group,
)

EXIT_OK, EXIT_USAGE, EXIT_CAP, EXIT_INTERNAL, EXIT_MISMATCH = 0, 1, 2, 3, 4


class GroupSpecError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos} in {text!r}")
        self.pos = pos


@dataclass
class GroupSpec:
    source: str  # "family", "perm" or "lattice"
    text: str
    factors: list[tuple[str, tuple[int, ...]]] = field(default_factory=list)
    path: str | None = None

    def build(self, cap: int = DEFAULT_ORDER_CAP) -> tuple[PermGroup, SubgroupClassList | None]:
        if self.source == "lattice":
            cl = load_lattice(Path(self.path).read_text(), cap=cap, name=self.text)
            return cl.parent, cl
        if self.source == "perm":
            G = read_generators(self.path, cap)
            G.name = self.text
            return G, None
        G = None
        for kind, args in self.factors:
            F = _FAMILIES[kind](*args, cap=cap) if kind != "inv" else groups.semidirect_inversion(args, cap=cap)
            G = F if G is None else groups.direct_product(G, F, cap=cap)
        G.name = self.text
        return G, None


_FAMILIES = {
    "S": groups.symmetric,
    "A": groups.alternating,
    "C": groups.cyclic,
    "D": groups.dihedral,
    "EA": groups.elementary_abelian,
}

_ATOM = re.compile(r"(EA|S|A|C|D)(\d+)")


def parse_group_spec(text: str) -> GroupSpec:
    s = text.strip()
    if not s:
        raise GroupSpecError("empty group specification", text, 0)
    for prefix in ("perm:", "lattice:"):
        if s.startswith(prefix):
            path = s[len(prefix):]
            if not path:
                raise GroupSpecError("missing path", text, len(prefix))
            return GroupSpec(prefix[:-1], s, path=path)
    factors = []
    pos = 0
    while True:
        if s.startswith("inv(", pos):
            close = s.find(")", pos)
            if close < 0:
                raise GroupSpecError("unclosed inv(", text, pos)
            orders = []
            inner = pos + 4
            for part in s[inner:close].split("x"):
                m = re.fullmatch(r"C(\d+)", part)
                if not m:
                    raise GroupSpecError("inv(...) takes cyclic factors C<m>", text, inner)
                k = int(m.group(1))
                if k % 2 == 0 or k < 3:
                    raise GroupSpecError(f"factor C{k} must have odd order >= 3", text, inner)
                orders.append(k)
                inner += len(part) + 1
            factors.append(("inv", tuple(orders)))
            pos = close + 1
        else:
            m = _ATOM.match(s, pos)
            if not m:
                raise GroupSpecError("expected S, A, C, D, EA or inv(", text, pos)
            kind, n = m.group(1), int(m.group(2))
            if kind == "D" and (n < 2 or n % 2):
                raise GroupSpecError("dihedral order must be even", text, pos)
            if kind in ("S", "A", "C") and n < 1:
                raise GroupSpecError("degree must be positive", text, pos)
            factors.append((kind, (n,)))
            pos = m.end()
        if pos == len(s):
            return GroupSpec("family", s, factors)
        if s[pos] != "x":
            raise GroupSpecError("expected 'x' between factors", text, pos)
        pos += 1


def read_generators(path: str | Path, cap: int = DEFAULT_ORDER_CAP) -> PermGroup:
    """Generator file: one cycle-notation permutation per line, ``#`` comments."""
    lines = []
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise ValueError(f"{path}: no generators")
    degree = max(parse_cycles(line).degree for line in lines)
    return PermGroup([parse_cycles(line, degree) for line in lines], cap=cap)


def _label(cl: SubgroupClassList, i: int) -> str:
    hint = cl.describe(i)
    return f"{cl.reps[i].order}{'/' + hint if hint else ''}"


def lattice_text(cl: SubgroupClassList) -> str:
    G = cl.parent
    out = [f"G = {G.name}, |G| = {G.order}, r = {cl.r}"]
    for i, (H, size) in enumerate(zip(cl.reps, cl.class_sizes)):
        gens = ", ".join(format_cycles(G.elements[g]) for g in H.generators) or "()"
        hint = cl.describe(i)
        out.append(f"H{i + 1:<4} order {H.order:<6} size {size:<5} {hint:<8} <{gens}>")
    return "\n".join(out) + "\n"


def units_text(res, quiet: bool = False) -> str:
    cl = res.classes
    head = f"r = {res.r}, rank Ω*(G) = {res.rank}"
    if quiet:
        return head + "\n"
    out = [f"G = {cl.parent.name}, |G| = {cl.parent.order}", head,
           "class orders: " + " ".join(_label(cl, i) for i in range(cl.r)), "basis:"]
    out += ["  " + " ".join("+" if v > 0 else "-" for v in u) for u in res.basis]
    out.append("verified: " + ("every basis unit lies in the Burnside ring" if res.all_verified else "NO"))
    return "\n".join(out) + "\n"


def run_oracle(G: PermGroup, res, M, cap_r: int) -> dict:
    found = brute_force_units(G, cap_r, marks=M)
    computed = res.units()
    return {"units": len(found), "computed": len(computed), "agrees": found == computed}


def oracle_text(report: dict) -> str:
    if report["agrees"]:
        return f"{report['units']} units, algorithm agrees with oracle\n"
    return f"MISMATCH: oracle finds {report['units']} units, algorithm gives {report['computed']}\n"


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="burnside", description="Units of the Burnside ring of a small finite group.")
    p.add_argument("command", choices=["units", "marks", "lattice", "oracle", "conjecture", "all"])
    p.add_argument("group", help="group specification, e.g. S4, C2xC4, inv(C3xC5), perm:gens.txt")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--out", help="write output to this file instead of stdout")
    p.add_argument("--max-order", type=int, default=DEFAULT_ORDER_CAP, help="element enumeration cap")
    p.add_argument("--oracle-cap", type=int, default=20, help="largest r for the brute-force oracle")
    p.add_argument("--seed", type=int, help="randomize basis and coset choices")
    p.add_argument("--jobs", type=int, default=1, help="worker threads for per-class equations")
    p.add_argument("--quiet", action="store_true", help="summary lines only")
    return p


def _run(args) -> tuple[str, int]:
    spec = parse_group_spec(args.group)
    G, cl = spec.build(args.max_order)
    if cl is None:
        cl = class_list(G)
    cmd = args.command
    if cmd == "lattice":
        return (cl.dumps() + "\n" if args.json else lattice_text(cl)), EXIT_OK

    M = marks_table(cl)
    if cmd == "marks":
        return (M.dumps() + "\n" if args.json else M.to_text()), EXIT_OK

    rng = random.Random(args.seed) if args.seed is not None else None
    res = unit_group(G, rng=rng, jobs=args.jobs, classes=cl, marks=M)
    if cmd == "units":
        return (res.dumps() + "\n" if args.json else units_text(res, args.quiet)), EXIT_OK

    if cmd == "oracle":
        report = run_oracle(G, res, M, args.oracle_cap)
        code = EXIT_OK if report["agrees"] else EXIT_MISMATCH
        return (json.dumps(report) + "\n" if args.json else oracle_text(report)), code

    conj = conjecture_check(G, res)
    if cmd == "conjecture":
        text = json.dumps(conj.to_json()) + "\n" if args.json else f"rank Ω*(G) - 1 ≤ dim Ω₂(G) - dim Ω(G): {conj}\n"
        return text, EXIT_OK

    # all
    if cl.r <= args.oracle_cap:
        oracle = run_oracle(G, res, M, args.oracle_cap)
    else:
        oracle = {"skipped": f"r = {cl.r} exceeds oracle cap {args.oracle_cap}"}
    code = EXIT_MISMATCH if oracle.get("agrees") is False else EXIT_OK
    if args.json:
        doc = {
            "group": G.name,
            "order": G.order,
            "r": cl.r,
            "lattice": cl.to_json(),
            "marks": M.to_json(),
            "units": res.to_json(conjecture=conj),
            "oracle": oracle,
        }
        return json.dumps(doc) + "\n", code
    parts = [lattice_text(cl), "table of marks:\n" + M.to_text(), units_text(res, args.quiet),
             oracle_text(oracle) if "agrees" in oracle else f"oracle skipped: {oracle['skipped']}\n",
             f"conjecture: {conj}\n"]
    return "\n".join(parts), code


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        text, code = _run(args)
    except (ValueError, OSError) as exc:
        print(f"burnside: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OrderCapExceeded, CapExceeded) as exc:
        print(f"burnside: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (VerificationFailed, InternalError, MarksError) as exc:
        print(f"burnside: internal verification failed: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
