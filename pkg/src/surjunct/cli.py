"""Command-line interface: ``surjunct <command> [options]``.

Exit codes: 0 success, 1 parse error, 2 budget exceeded, 3 property
violation.  Outputs are deterministic; wall-clock timing is only written
with ``--timing``.
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import io as _io
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from . import __version__
from . import io as sio
from .analysis import (
    Injective,
    PostSurjective,
    classify,
    consistency_violations,
    decide_injectivity,
    find_inverse_injectivity_set,
    goe_search,
    image_sft,
    synthesize_inverse,
)
from .analysis.decide import RADIUS_CAP, SHIFT_BUDGET
from .errors import BudgetExceeded, PropertyViolation
from .group import Group
from .groupring import (
    PROBE_COLUMNS,
    GroupRingElement,
    direct_finiteness_scan,
    hamming_norm,
    metric_probe,
    norm_S,
    probe_rows,
    probe_summary,
    verify_unit_claims,
)
from .symbolic import WINDOW_BUDGET, CellularAutomaton, LocalRule

EXIT_OK, EXIT_PARSE, EXIT_BUDGET, EXIT_VIOLATION = 0, 1, 2, 3

CENSUS_COLUMNS = (
    "rule_id", "injective", "surjective", "pre_injective", "post_surjective", "N_radius", "M_radius", "method",
)


class CliError(Exception):
    """Bad command-line input (exit 1)."""


def threads() -> int:
    raw = os.environ.get("SURJUNCT_THREADS", "")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            raise CliError(f"SURJUNCT_THREADS must be an integer, got {raw!r}") from None
    return os.cpu_count() or 1


# --- input helpers -----------------------------------------------------------------


def _read_json(path: str, inputs: dict):
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}") from None
    inputs[path] = hashlib.sha256(raw).hexdigest()
    try:
        return json.loads(raw)
    except json.JSONDecodeError as exc:
        raise CliError(f"{path}: invalid JSON: {exc}") from None


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(sorted({int(t) for t in text.split(",") if t.strip()}))
    except ValueError:
        raise CliError(f"expected comma-separated integers, got {text!r}") from None


def _group(spec: str, inputs: dict) -> Group:
    if spec.endswith(".json"):
        return sio.group_from_json(_read_json(spec, inputs))
    return sio.parse_group_spec(spec)


def _element(text: str, inputs: dict) -> GroupRingElement:
    return sio.ring_from_json(_read_json(text, inputs))


# --- output helpers ----------------------------------------------------------------


def _report(args, inputs: dict, result, started: float) -> dict:
    echo = {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "out", "timing")}
    rep = {"command": echo, "version": __version__, "inputs": inputs, "result": result}
    if args.timing:
        rep["timing"] = round(time.perf_counter() - started, 6)
    return rep


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv_text(header, rows) -> str:
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


# --- analyze -----------------------------------------------------------------------


def cmd_analyze(args, inputs, started) -> int:
    T = sio.ca_from_json(_read_json(args.ca, inputs))
    c = classify(T, args.max_radius, args.budget_window, args.budget_shift, check=False)
    _emit(args, sio.dumps(_report(args, inputs, sio.to_json(c), started)))
    if c.violations:
        print(f"property violation: {'; '.join(c.violations)}", file=sys.stderr)
        return EXIT_VIOLATION
    if any(v is None for v in c.flags().values()):
        print("budget exceeded: some properties are unknown", file=sys.stderr)
        return EXIT_BUDGET
    return EXIT_OK


# --- census ------------------------------------------------------------------------


def _fmt(v) -> str:
    return "" if v is None else str(v).lower() if isinstance(v, bool) else str(v)


def census_row(
    T: CellularAutomaton, rule_id: int, max_radius: int, budget: int | None, shift_budget: int = SHIFT_BUDGET
) -> tuple[list[str], list[str]]:
    """One CSV row and the consistency violations of one rule."""
    c = classify(T, max_radius, budget, shift_budget, check=False)
    g = T.group
    inj, post = c.results.get("injective"), c.results.get("post_surjective")
    n_rad = g.radius(inj.certificate.set) if isinstance(inj, Injective) else None
    m_rad = g.radius(post.certificate.minimal) if isinstance(post, PostSurjective) else None
    row = [
        str(rule_id),
        _fmt(c.injective), _fmt(c.surjective), _fmt(c.pre_injective), _fmt(c.post_surjective),
        _fmt(n_rad), _fmt(m_rad), c.methods.get("injective", "unknown"),
    ]
    return row, consistency_violations(c)


def _rule_table(rule_id: int, k: int, size: int) -> tuple[int, ...]:
    return tuple((rule_id // k**c) % k for c in range(size))


def _census_chunk(job):
    group, k, memory, ids, max_radius, budget, shift_budget = job
    out = []
    for rid in ids:
        T = CellularAutomaton(group, LocalRule(k, memory, _rule_table(rid, k, k ** len(memory))))
        out.append(census_row(T, rid, max_radius, budget, shift_budget))
    return out


def run_census(group: Group, k: int, memory, max_radius: int = RADIUS_CAP, budget: int | None = None,
               workers: int = 1, rule_budget: int = WINDOW_BUDGET, shift_budget: int = SHIFT_BUDGET):
    """Rows for every rule with alphabet ``k`` and memory ``memory``, by rule id.

    ``rule_id`` is ``sum(table[c] * k**c)`` over pattern codes ``c``.
    """
    n_rules = k ** (k ** len(memory))
    if n_rules > rule_budget:
        raise BudgetExceeded("census rule count", n_rules, rule_budget)
    chunk = max(1, min(512, n_rules // (4 * workers) or 1))
    jobs = [(group, k, tuple(memory), range(s, min(s + chunk, n_rules)), max_radius, budget, shift_budget)
            for s in range(0, n_rules, chunk)]
    if workers <= 1 or len(jobs) == 1:
        parts = map(_census_chunk, jobs)
        return [r for part in parts for r in part]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return [r for part in ex.map(_census_chunk, jobs) for r in part]


def cmd_census(args, inputs, started) -> int:
    g = _group(args.group, inputs)
    if args.memory == "all":
        if not g.is_finite:
            raise CliError("memory 'all' needs a finite group")
        memory = tuple(g.elements())
    else:
        memory = tuple(g.check(e) for e in _int_list(args.memory))
    if not memory:
        raise CliError("memory must be nonempty")
    results = run_census(
        g, args.k, memory, args.max_radius, args.budget_window, threads(), args.budget_window, args.budget_shift
    )
    rows = [r for r, _ in results]
    bad = [(r[0], v) for r, vs in results for v in vs]
    if args.format == "csv":
        _emit(args, _csv_text(CENSUS_COLUMNS, rows))
    else:
        result = {
            "columns": list(CENSUS_COLUMNS),
            "rows": rows,
            "violations": [{"rule_id": rid, "message": m} for rid, m in bad],
        }
        _emit(args, sio.dumps(_report(args, inputs, result, started)))
    if bad:
        for rid, m in bad:
            print(f"rule {rid}: {m}", file=sys.stderr)
        return EXIT_VIOLATION
    if any("" in r[1:5] for r in rows):
        return EXIT_BUDGET
    return EXIT_OK


# --- invert / image-sft / goe ---------------------------------------------------------------


def _certified_inverse(T, args):
    inj = decide_injectivity(T, args.max_radius, args.budget_window, args.budget_shift)
    if not isinstance(inj, Injective):
        raise PropertyViolation("automaton is not injective; no inverse exists", inj.witness)
    N = inj.certificate.set
    return N, synthesize_inverse(T, N, args.budget_window)


def cmd_invert(args, inputs, started) -> int:
    T = sio.ca_from_json(_read_json(args.ca, inputs))
    _, inv = _certified_inverse(T, args)
    _emit(args, sio.dumps(sio.ca_to_json(inv)))
    return EXIT_OK


def cmd_image_sft(args, inputs, started) -> int:
    T = sio.ca_from_json(_read_json(args.ca, inputs))
    N, inv = _certified_inverse(T, args)
    M = find_inverse_injectivity_set(T, N, inv, args.max_radius, args.budget_window)
    if not M:
        raise PropertyViolation(f"no injectivity set for the inverse within radius {args.max_radius}", T)
    S = image_sft(T, N, M.set, args.budget_window)
    _emit(args, sio.dumps(sio.sft_to_json(S)))
    return EXIT_OK


def cmd_goe(args, inputs, started) -> int:
    T = sio.ca_from_json(_read_json(args.ca, inputs))
    window = tuple(T.group.check(e) for e in _int_list(args.window))
    if not window:
        raise CliError("window must be nonempty")
    pats = goe_search(T, window, args.budget_window)
    _emit(args, sio.dumps(sio.goe_to_json(window, pats)))
    return EXIT_OK


# --- ring ------------------------------------------------------------------------------


def cmd_ring_scan(args, inputs, started) -> int:
    g = _group(args.group, inputs)
    rep = direct_finiteness_scan(args.p, g, args.budget_window)
    result = {
        "p": rep.p,
        "group": rep.group,
        "pairs_checked": rep.pairs_checked,
        "unit_pairs": len(rep.unit_pairs),
        "violations": [list(map(list, v)) for v in rep.violations],
    }
    _emit(args, sio.dumps(_report(args, inputs, result, started)))
    return EXIT_VIOLATION if rep.violations else EXIT_OK


def cmd_ring_claims(args, inputs, started) -> int:
    a, b = _element(args.a, inputs), _element(args.b, inputs)
    if a.group != b.group or a.p != b.p:
        raise CliError("a and b must live in the same group ring")
    if a * b != GroupRingElement.one(a.group, a.p):
        raise CliError("claims need ab = 1")
    rep = verify_unit_claims(a, b, args.max_radius, args.budget_window)
    result = {"injectivity_set": sio.to_json(rep.injectivity), "postsurjectivity_set": sio.to_json(rep.postsurjectivity)}
    _emit(args, sio.dumps(_report(args, inputs, result, started)))
    return EXIT_OK


def cmd_ring_norm(args, inputs, started) -> int:
    f = _element(args.element, inputs)
    perms = getattr(f.group, "permutations", None)
    if perms is None:
        raise CliError("norm needs an element of a symmetric group ring")
    value = norm_S(f, hamming_norm(len(perms[0])))
    _emit(args, sio.dumps(_report(args, inputs, {"norm_S": str(value), "norm": "hamming"}, started)))
    return EXIT_OK


def cmd_ring_probe(args, inputs, started) -> int:
    if args.seed is None:
        raise CliError("probe needs --seed")
    records = metric_probe(args.n, args.N, args.samples, args.seed, args.p)
    if args.format == "csv":
        _emit(args, _csv_text(PROBE_COLUMNS, probe_rows(records)))
    else:
        result = {"columns": list(PROBE_COLUMNS), "rows": probe_rows(records), "summary": sio.to_json(probe_summary(records))}
        _emit(args, sio.dumps(_report(args, inputs, result, started)))
    return EXIT_OK


# --- parser ------------------------------------------------------------------------------


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _common(p: argparse.ArgumentParser, fmt: str = "json") -> None:
    p.add_argument("--budget-window", type=_positive, default=WINDOW_BUDGET,
                   help="largest number of window patterns enumerated")
    p.add_argument("--budget-shift", type=_positive, default=SHIFT_BUDGET,
                   help="largest finite-group full shift enumerated")
    p.add_argument("--max-radius", type=_positive, default=RADIUS_CAP, help="radius cap for set searches")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", default=None, help="output path (default stdout)")
    p.add_argument("--format", choices=("json", "csv"), default=fmt)
    p.add_argument("--timing", action="store_true", help="record wall-clock time in reports")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="surjunct", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"surjunct {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="classify one cellular automaton")
    p.add_argument("ca", help="CA JSON file")
    _common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("census", help="classify every rule for an alphabet and memory set")
    p.add_argument("--k", type=_positive, default=2)
    p.add_argument("--memory", required=True, help="comma-separated element ids, or 'all'")
    p.add_argument("--group", default="Z", help="Z, cyclic:n, dihedral:n, symmetric:n, or a JSON file")
    _common(p, fmt="csv")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("invert", help="synthesize the inverse of an injective automaton")
    p.add_argument("ca")
    _common(p)
    p.set_defaults(func=cmd_invert)

    p = sub.add_parser("image-sft", help="forbidden patterns of the image of an injective automaton")
    p.add_argument("ca")
    _common(p)
    p.set_defaults(func=cmd_image_sft)

    p = sub.add_parser("goe", help="Garden-of-Eden patterns on a window")
    p.add_argument("ca")
    p.add_argument("--window", required=True, help="comma-separated element ids")
    _common(p)
    p.set_defaults(func=cmd_goe)

    ring = sub.add_parser("ring", help="group-ring tools").add_subparsers(dest="ring_command", required=True)
    p = ring.add_parser("scan", help="direct-finiteness scan of F_p[G]")
    p.add_argument("--p", type=_positive, default=2)
    p.add_argument("--group", required=True)
    _common(p)
    p.set_defaults(func=cmd_ring_scan)

    p = ring.add_parser("claims", help="certificates for a unit pair ab = 1")
    p.add_argument("a", help="group-ring element JSON")
    p.add_argument("b", help="group-ring element JSON")
    _common(p)
    p.set_defaults(func=cmd_ring_claims)

    p = ring.add_parser("norm", help="support pseudonorm under the Hamming norm")
    p.add_argument("element")
    _common(p)
    p.set_defaults(func=cmd_ring_norm)

    p = ring.add_parser("probe", help="seeded metric probe in F_p[S_n]")
    p.add_argument("--n", type=_positive, default=4)
    p.add_argument("--N", type=_positive, default=3)
    p.add_argument("--samples", type=_positive, default=500)
    p.add_argument("--p", type=_positive, default=2)
    _common(p, fmt="csv")
    p.set_defaults(func=cmd_ring_probe)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_PARSE
    started = time.perf_counter()
    try:
        return args.func(args, {}, started)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except PropertyViolation as exc:
        print(f"property violation: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except (CliError, ValueError) as exc:  # includes parse, rule and group errors
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
