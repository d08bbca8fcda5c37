"""Alexander polynomials and genera of doubly primitive knots from lens space surgery triples."""

import argparse
import json
import logging
import sys
from collections import defaultdict

from catalog import FILTERS, SearchSummary, build_record, scan_w1, search, status_line, sweep_quotients
from checks import FAIL, check_descriptors, run_checks
from configs import RUN_DEFAULTS, WORKED_EXAMPLES, fetch_run_params
from export import record_to_json, write_catalog
from knots.alexander import (CrossCheckMismatch, NotAlternatingForm, OddSpan, alexander_polynomial, f_formula,
                             f_x_closed, f_y_closed, form_decomposition, genus)
from knots.fox import alexander_matrix, oracle_alexander, relator
from knots.laurent import LaurentPoly, NotDivisible, canonicalize, divide_bracket
from knots.params import TripleError, compute_tables, saito_condition, validate_triple
from utils import save_config, setup_logging, strict_int

DOMAIN_ERRORS = (TripleError, NotDivisible, CrossCheckMismatch, NotAlternatingForm, OddSpan)


def parse_args(argv=None):
    # Flags shared by every subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", choices=["text", "json"], default="text", help="Render results as text or JSON.")
    common.add_argument("--out", type=str, default=None, help="Write results to this file instead of stdout.")
    common.add_argument("--logdir", type=str, default=None, help="If set, also writes the log to <logdir>/<command>.log")
    common.add_argument("--verbose", action="store_true", help="If set, logs at DEBUG level.")
    common.add_argument("--quiet", action="store_true", help="If set, hides progress bars and INFO logs.")

    triple = argparse.ArgumentParser(add_help=False)
    triple.add_argument("-p", "--p", type=strict_int, required=True, help="Lens space order p.")
    triple.add_argument("-q", "--q", type=strict_int, required=True, help="Lens space twisting q, 0 < q < p.")
    triple.add_argument("-k", "--k", type=strict_int, required=True, help="Dual knot parameter k, 1 <= k < p.")

    parser = argparse.ArgumentParser(description=__doc__)
    commands = parser.add_subparsers(dest="command", required=True)

    compute = commands.add_parser("compute", parents=[common, triple], help="Δ, genus, n-sequence and Saito status.")
    compute.add_argument("--oracle-limit", type=strict_int, default=RUN_DEFAULTS["oracle_limit"],
                         help="Run the Fox-calculus oracle in the record checks only when p is at most this.")
    commands.add_parser("verify", parents=[common, triple], help="Run the full invariant suite on one triple.")
    commands.add_parser("oracle", parents=[common, triple], help="Closed formulas next to the Fox-calculus result.")

    search_parser = commands.add_parser("search", parents=[common], help="Catalog every valid triple with p <= pmax.")
    search_parser.add_argument("--pmax", type=strict_int, default=None, help="Largest p to enumerate.")
    search_parser.add_argument("--filter", choices=FILTERS, default=None, help="Emit all triples or Saito passes only.")
    search_parser.add_argument("--oracle-limit", type=strict_int, default=None,
                               help="Largest p for which the Fox-calculus oracle runs (default 60).")
    search_parser.add_argument("--processes", type=strict_int, default=None, help="Worker processes, 0 = cpu count.")
    search_parser.add_argument("--checks", nargs="+", choices=list(check_descriptors), default=None,
                               help="Run only these checks on every record (default: all).")
    search_parser.add_argument("--config", type=str, default=None, help="Run config name under configs/ or a .json path.")

    sweep = commands.add_parser("sweep", parents=[common],
                                help="Divisibility and quotient agreement for every triple with p <= pmax.")
    sweep.add_argument("--pmax", type=strict_int, default=None, help="Largest p to sweep.")
    sweep.add_argument("--processes", type=strict_int, default=None, help="Worker processes, 0 = cpu count.")
    sweep.add_argument("--config", type=str, default=None, help="Run config name under configs/ or a .json path.")

    scan = commands.add_parser("scan-w1", parents=[common], help="Look for excessive terms beyond W(1).")
    scan.add_argument("--pmax", type=strict_int, default=None, help="Largest p to scan.")
    scan.add_argument("--processes", type=strict_int, default=None, help="Worker processes, 0 = cpu count.")
    scan.add_argument("--config", type=str, default=None, help="Run config name under configs/ or a .json path.")

    commands.add_parser("examples", parents=[common], help="Replay the two worked examples and diff them.")

    return parser.parse_args(argv)


def _emit(args, text):
    if args.out:
        with open(args.out, "w", encoding="utf-8") as f:
            f.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def _dumps(obj):
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False)


def _n_text(n_seq):
    return "(" + ", ".join(str(n) for n in n_seq) + ")"


def run_compute(args):
    triple = validate_triple(args.p, args.q, args.k)
    # single-triple mode: a missing quotient is an error, not a status
    alexander_polynomial(compute_tables(triple))
    record = build_record(triple, oracle_limit=args.oracle_limit)
    if args.output == "json":
        _emit(args, _dumps(record_to_json(record)))
        return 0
    lines = [f"Δ(t) = {record.delta}, {record.genus_label} {record.genus}"]
    lines.append(f"n = {_n_text(record.n_seq)}" if record.form_pass else "n = none (not in alternating form)")
    lines.append(f"Saito: {record.saito_value} ({'pass' if record.saito_pass else 'fail'})")
    _emit(args, "\n".join(lines))
    return 0


def run_verify(args):
    triple = validate_triple(args.p, args.q, args.k)
    tables = compute_tables(triple)
    memo = {}
    statuses = run_checks(tables, memo=memo)
    saito = saito_condition(triple, tables)

    form_status = "skipped"
    if "delta" in memo:
        try:
            form_decomposition(memo["delta"])
            form_status = "pass"
        except (NotAlternatingForm, OddSpan) as e:
            form_status = FAIL if saito.passes else "not applicable"
            memo.setdefault("messages", {})["form"] = str(e)
    statuses["form"] = form_status

    messages = memo.get("messages", {})
    if args.output == "json":
        _emit(args, _dumps({"p": triple.p, "q": triple.q, "k": triple.k, "saito_pass": saito.passes,
                            "checks": statuses, "messages": messages}))
    else:
        lines = [f"{name}: {status}" for name, status in statuses.items()]
        lines += [f"  {name}: {message}" for name, message in messages.items()]
        _emit(args, "\n".join(lines))
    return 1 if FAIL in statuses.values() else 0


def run_oracle(args):
    triple = validate_triple(args.p, args.q, args.k)
    tables = compute_tables(triple)
    closed_x, closed_y = f_x_closed(tables), f_y_closed(tables)
    fox_x, fox_y = alexander_matrix(tables)
    formula = alexander_polynomial(tables)
    oracle = oracle_alexander(tables)
    agree = formula == oracle and closed_x == fox_x and closed_y == fox_y

    if args.output == "json":
        _emit(args, _dumps({
            "p": triple.p, "q": triple.q, "k": triple.k,
            "relator": str(relator(tables)),
            "f_x": {"closed": closed_x.to_text(), "fox": fox_x.to_text()},
            "f_y": {"closed": closed_y.to_text(), "fox": fox_y.to_text()},
            "delta": {"formula": formula.to_text(), "fox_gcd": oracle.to_text()},
            "agree": agree,
        }))
    else:
        _emit(args, "\n".join([
            f"relator:        {relator(tables)}",
            f"F_X closed:     {closed_x}",
            f"F_X Fox:        {fox_x}",
            f"F_Y closed:     {closed_y}",
            f"F_Y Fox:        {fox_y}",
            f"Δ formula:      {formula}",
            f"Δ gcd(F_X,F_Y): {oracle}",
            f"agree: {'yes' if agree else 'no'}",
        ]))
    return 0 if agree else 1


def _resolve_params(args, keys):
    params = fetch_run_params(args.config) if args.config else defaultdict(lambda: None, RUN_DEFAULTS)
    for key in keys:
        value = getattr(args, key, None)
        if value is not None:
            params[key] = value
    if args.pmax is not None:
        params["p_max"] = args.pmax
    return params


def run_search(args):
    params = _resolve_params(args, ["filter", "oracle_limit", "processes", "checks"])
    if params["p_max"] is None:
        logging.error("search needs --pmax or a --config that sets p_max")
        return 2
    if args.logdir:
        save_config(params, args.logdir)

    summary = SearchSummary()

    def tracked(records):
        for record in records:
            summary.add(record)
            yield record

    records = tracked(search(params["p_max"], filter=params["filter"], oracle_limit=params["oracle_limit"],
                             processes=params["processes"], chunksize=params["chunksize"] or 64,
                             progress=not args.quiet, checks=params["checks"]))
    out = open(args.out, "w", encoding="utf-8") if args.out else sys.stdout
    try:
        if args.output == "json":
            write_catalog(records, out)
        else:
            for record in records:
                n_text = _n_text(record.n_seq) if record.form_pass else "-"
                out.write(f"{record.triple}  Δ = {record.delta}  {record.genus_label} {record.genus}  n = {n_text}  "
                          f"saito {'pass' if record.saito_pass else 'fail'}  [{status_line(record.checks)}]\n")
    finally:
        if args.out:
            out.close()

    logging.info(f"Search summary: {json.dumps(summary.to_dict())}")
    if not summary.ok():
        logging.error("Some records failed their checks")
        return 1
    return 0


def run_sweep(args):
    params = _resolve_params(args, ["processes"])
    if params["p_max"] is None:
        logging.error("sweep needs --pmax or a --config that sets p_max")
        return 2
    if args.logdir:
        save_config(params, args.logdir)
    report = sweep_quotients(params["p_max"], processes=params["processes"], progress=not args.quiet)
    if args.output == "json":
        _emit(args, _dumps(report.to_dict()))
    else:
        lines = [f"checked {report.checked} triples with p <= {report.p_max}; {len(report.failures)} failures"]
        lines += [f"  ({f['p']},{f['q']},{f['k']}): {f['message']}" for f in report.failures]
        _emit(args, "\n".join(lines))
    return 0 if report.ok() else 1


def run_scan(args):
    params = _resolve_params(args, ["processes"])
    if params["p_max"] is None:
        logging.error("scan-w1 needs --pmax or a --config that sets p_max")
        return 2
    if args.logdir:
        save_config(params, args.logdir)
    report = scan_w1(params["p_max"], processes=params["processes"], progress=not args.quiet)
    if args.output == "json":
        _emit(args, _dumps(report.to_dict()))
    else:
        lines = [f"scanned {report.scanned} triples with p <= {report.p_max}; "
                 f"{report.violations} with excessive terms beyond W(1)"]
        lines += [f"  ({c['p']},{c['q']},{c['k']}): reaches W({c['ell']})" for c in report.counterexamples]
        _emit(args, "\n".join(lines))
    return 0


def replay_example(example):
    """Differences between a stored worked example and a fresh computation (empty when it reproduces)."""
    triple = validate_triple(example["p"], example["q"], example["k"])
    tables = compute_tables(triple)
    diffs = []

    basic = [int(r) for r in tables.residues[1:]]
    if basic != example["basic_sequence"]:
        diffs.append(f"basic sequence: expected {example['basic_sequence']}, got {basic}")
    for row in example["rows"]:
        i = row["i"]
        psi, phi = int(tables.psi[i]), int(tables.phi[i])
        exponent = phi * triple.p - psi * triple.k
        for name, expected, actual in (("Ψ", row["psi"], psi), ("Φ", row["phi"], phi),
                                       ("exponent", row["exponent"], exponent)):
            if expected != actual:
                diffs.append(f"{name}({i}): expected {expected}, got {actual}")

    expected_delta = LaurentPoly.from_struct(example["delta"])
    delta = alexander_polynomial(tables)
    if delta != expected_delta:
        diffs.append(f"Δ: expected {expected_delta}, got {delta}")
    # generic long-division route through F(t)
    via_f = canonicalize(divide_bracket(f_formula(tables), triple.k))
    if via_f != expected_delta:
        diffs.append(f"F/[k]: expected {expected_delta}, got {via_f}")
    if genus(delta) != example["genus"]:
        diffs.append(f"genus: expected {example['genus']}, got {genus(delta)}")
    return diffs


def run_examples(args):
    results = {}
    lines = []
    for example_id, example in WORKED_EXAMPLES.items():
        diffs = replay_example(example)
        results[example_id] = {"name": example["name"], "ok": not diffs, "diffs": diffs}
        status = "ok" if not diffs else "MISMATCH"
        lines.append(f"{example_id} ({example['name']}, p={example['p']} q={example['q']} k={example['k']}): {status}")
        lines += [f"  {diff}" for diff in diffs]
    if args.output == "json":
        _emit(args, _dumps(results))
    else:
        _emit(args, "\n".join(lines))
    return 0 if all(r["ok"] for r in results.values()) else 1


COMMANDS = {
    "compute": run_compute,
    "verify": run_verify,
    "oracle": run_oracle,
    "search": run_search,
    "sweep": run_sweep,
    "scan-w1": run_scan,
    "examples": run_examples,
}


def main(args):
    setup_logging(args)
    try:
        return COMMANDS[args.command](args)
    except DOMAIN_ERRORS as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main(parse_args()))
