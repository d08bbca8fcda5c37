"""Bounded enumeration of surgery triples: catalog records, the quotient sweep and the E = W(1) scan."""

import logging
from dataclasses import dataclass, field
from functools import partial
from math import gcd
from multiprocessing import Pool, cpu_count

from tqdm import tqdm

from checks import FAIL, PASS, SKIPPED, check_descriptors, run_checks
from knots.alexander import (CrossCheckMismatch, NotAlternatingForm, OddSpan, alexander_polynomial,
                             excess_levels, form_decomposition, genus, quotient_disagreement, structure_analysis)
from knots.laurent import NotDivisible
from knots.params import SurgeryTriple, compute_tables, saito_condition, valid_triples

FILTERS = ("all", "saito_only")

# status key for a triple whose record could not be built at all
RECORD_CHECK = "record"


@dataclass
class CatalogRecord:
    p: int
    q: int
    k: int
    saito_value: int
    saito_pass: bool
    delta: object = None
    genus: object = None
    formal_genus: bool = True
    n_seq: tuple = ()
    form_pass: bool = False
    w1_only: object = None
    checks: dict = field(default_factory=dict)

    @property
    def triple(self):
        return SurgeryTriple(self.p, self.q, self.k)

    def failed_checks(self):
        return [name for name, status in self.checks.items() if status == FAIL]

    @property
    def genus_label(self):
        return "formal genus" if self.formal_genus else "genus"


def build_record(triple, oracle_limit=60, checks=None):
    """
    Every quantity the catalog stores for one triple; failures become statuses.

    `checks` names the checks to run (all of them by default).
    """
    tables = compute_tables(triple)
    saito = saito_condition(triple, tables)
    memo = {}
    skip = ("oracle",) if triple.p > oracle_limit else ()
    statuses = run_checks(tables, names=checks, skip=skip, memo=memo)

    record = CatalogRecord(p=triple.p, q=triple.q, k=triple.k, saito_value=saito.value, saito_pass=saito.passes,
                           formal_genus=not saito.passes, checks=statuses)

    try:
        record.delta = memo["delta"] if "delta" in memo else alexander_polynomial(tables)
    except (NotDivisible, CrossCheckMismatch) as e:
        logging.warning(f"{triple}: no Alexander polynomial ({type(e).__name__}: {e})")
        return record

    try:
        record.genus = genus(record.delta)
        decomposition = form_decomposition(record.delta)
        record.n_seq = decomposition.n_seq
        record.form_pass = decomposition.reconstruct().shift(record.genus) == _signed(record.delta)
    except (OddSpan, NotAlternatingForm) as e:
        logging.debug(f"{triple}: not in alternating form ({e})")

    report = memo.get("structure")
    if report is None:
        report = structure_analysis(tables, verify=False)
    record.w1_only = report.w1_only
    return record


def _signed(delta):
    # Δ scaled by the sign that makes its centre coefficient positive
    g = genus(delta)
    return -delta if delta.coefficient(delta.min_exp() + g) < 0 else delta


def failed_record(triple):
    """Placeholder for a triple whose record construction raised: only the Saito data and a failed status."""
    saito = saito_condition(triple)
    return CatalogRecord(p=triple.p, q=triple.q, k=triple.k, saito_value=saito.value, saito_pass=saito.passes,
                         formal_genus=not saito.passes, checks={RECORD_CHECK: FAIL})


def _record_worker(triple, oracle_limit, saito_only, checks):
    try:
        record = build_record(triple, oracle_limit, checks)
    except Exception:
        logging.warning(f"{triple}: record construction failed", exc_info=True)
        record = failed_record(triple)
    if saito_only and not record.saito_pass:
        return None
    return record


def search(p_max, filter="all", oracle_limit=60, processes=1, chunksize=64, progress=False, checks=None):
    """
    Stream CatalogRecords for every valid triple with p <= p_max, in
    lexicographic (p, q, k) order regardless of the number of processes.
    """
    assert filter in FILTERS, f"filter must be one of {FILTERS}, got '{filter}'"
    assert checks is None or set(checks) <= set(check_descriptors), f"unknown checks in {checks}"
    saito_only = filter == "saito_only"
    if p_max < 2:
        return
    worker = partial(_record_worker, oracle_limit=oracle_limit, saito_only=saito_only, checks=checks)
    triples = valid_triples(p_max)
    total = count_triples(p_max)
    processes = processes or cpu_count()
    logging.info(f"Searching {total} triples with p <= {p_max} ({filter}, oracle up to p = {oracle_limit}, "
                 f"{processes} processes)")

    if processes == 1:
        for record in tqdm(map(worker, triples), total=total, disable=not progress, desc="search"):
            if record is not None:
                yield record
        return

    with Pool(processes=processes) as pool:
        for record in tqdm(pool.imap(worker, triples, chunksize=chunksize), total=total,
                           disable=not progress, desc="search"):
            if record is not None:
                yield record


def count_triples(p_max):
    total = 0
    for p in range(2, p_max + 1):
        units = sum(1 for x in range(1, p) if gcd(p, x) == 1)
        total += units * units
    return total


@dataclass
class SearchSummary:
    emitted: int = 0
    saito_pass: int = 0
    failed_checks: dict = field(default_factory=dict)
    saito_without_form: list = field(default_factory=list)
    missing_delta: list = field(default_factory=list)

    def add(self, record):
        self.emitted += 1
        self.saito_pass += record.saito_pass
        for name in record.failed_checks():
            self.failed_checks.setdefault(name, []).append(str(record.triple))
        if record.saito_pass and not record.form_pass:
            self.saito_without_form.append(str(record.triple))
        if record.delta is None:
            self.missing_delta.append(str(record.triple))

    def ok(self):
        return not (self.failed_checks or self.saito_without_form or self.missing_delta)

    def to_dict(self):
        return {
            "emitted": self.emitted,
            "saito_pass": self.saito_pass,
            "failed_checks": self.failed_checks,
            "saito_without_form": self.saito_without_form,
            "missing_delta": self.missing_delta,
        }


def coprime_pairs(p_max):
    return [(p, q) for p in range(2, p_max + 1) for q in range(1, p) if gcd(p, q) == 1]


def _map_pairs(worker, pairs, processes, progress, desc):
    # one task per (p, q) pair, results in pair order
    if processes == 1:
        yield from tqdm(map(worker, pairs), total=len(pairs), disable=not progress, desc=desc)
        return
    with Pool(processes=processes) as pool:
        yield from tqdm(pool.imap(worker, pairs, chunksize=16), total=len(pairs), disable=not progress, desc=desc)


# divisibility and quotient agreement

@dataclass
class SweepReport:
    p_max: int
    checked: int = 0
    failures: list = field(default_factory=list)

    def ok(self):
        return not self.failures

    def to_dict(self):
        return {
            "p_max": self.p_max,
            "checked": self.checked,
            "failures": self.failures,
        }


def _sweep_worker(pq):
    p, q = pq
    checked, failures = 0, []
    for k in range(1, p):
        if gcd(p, k) != 1:
            continue
        checked += 1
        message = quotient_disagreement(compute_tables(SurgeryTriple(p, q, k)))
        if message is not None:
            failures.append({"p": p, "q": q, "k": k, "message": message})
    return checked, failures


def sweep_quotients(p_max, processes=1, progress=False):
    """
    For every valid triple with p <= p_max: [k] divides F_Y, [p] divides F_X,
    and F_Y/[k], F_X/[p], F/[k] coincide up to units. Works on dense arrays
    only, without building catalog records.
    """
    report = SweepReport(p_max=p_max)
    if p_max < 2:
        return report
    pairs = coprime_pairs(p_max)
    processes = processes or cpu_count()
    logging.info(f"Sweeping {count_triples(p_max)} triples with p <= {p_max} ({processes} processes)")
    for checked, failures in _map_pairs(_sweep_worker, pairs, processes, progress, "sweep"):
        report.checked += checked
        for failure in failures:
            logging.warning(f"({failure['p']},{failure['q']},{failure['k']}): {failure['message']}")
        report.failures.extend(failures)
    logging.info(f"Swept {report.checked} triples, {len(report.failures)} failures")
    return report


# E = W(1) scan

@dataclass
class W1Report:
    p_max: int
    scanned: int = 0
    violations: int = 0
    counterexamples: list = field(default_factory=list)

    def to_dict(self):
        return {
            "p_max": self.p_max,
            "scanned": self.scanned,
            "violations": self.violations,
            "counterexamples": self.counterexamples,
        }


def _scan_worker(pq):
    p, q = pq
    levels = excess_levels(p, q)
    return p, q, [(k, int(levels[k])) for k in range(1, p) if gcd(p, k) == 1]


def scan_w1(p_max, processes=1, progress=False):
    """
    Count triples whose excessive terms reach beyond W(1). Counterexamples
    are collected and reported; none is treated as an error.
    """
    report = W1Report(p_max=p_max)
    if p_max < 2:
        return report
    pairs = coprime_pairs(p_max)
    processes = processes or cpu_count()
    logging.info(f"Scanning {len(pairs)} (p, q) pairs with p <= {p_max} for excess beyond W(1)")

    for p, q, levels in _map_pairs(_scan_worker, pairs, processes, progress, "scan-w1"):
        for k, ell in levels:
            report.scanned += 1
            if ell > 1:
                report.violations += 1
                report.counterexamples.append({"p": p, "q": q, "k": k, "ell": ell})
                logging.warning(f"({p},{q},{k}): excessive terms reach W({ell})")

    logging.info(f"Scanned {report.scanned} triples, {report.violations} outside E = W(1)")
    return report


def status_line(statuses):
    return ", ".join(f"{name}: {status}" for name, status in statuses.items())


def all_passed(statuses):
    return all(status in (PASS, SKIPPED) for status in statuses.values())
