"""
Closed formulas for the Alexander polynomial of a doubly primitive knot with
dual parameters (p, q, k), and the degree-sequence analysis behind them.

The relator of the dual knot group abelianizes to

    F_X(t) = sum_{i=1..p} t^c(i)        F_Y(t) = sum_j t^(c(i_j) - p)

and Δ = F_Y / [k] = F_X / [p] up to units. structure_analysis rebuilds Δ in
product form 1 + (t - 1) * sum_{m(i_j) > 0} t^d(i_j) [m(i_j)]^k and checks the
identities that make the two quotients agree.
"""

from dataclasses import dataclass, field

import numpy as np

from knots.laurent import LaurentPoly, NotDivisible, canonicalize


class CrossCheckMismatch(ArithmeticError):
    pass


class OddSpan(ValueError):
    pass


class NotAlternatingForm(ValueError):
    def __init__(self, failed_property, message):
        super().__init__(f"{failed_property}: {message}")
        self.failed_property = failed_property


class IdentityViolation(AssertionError):
    pass


# exponent arrays

def f_exponents(tables):
    """Exponents Φ(i)p - Ψ(i)k of F, i = 0..k-1."""
    p, k = tables.p, tables.k
    return tables.phi[:k] * p - tables.psi[:k] * k


def f_x_exponents(tables):
    return tables.c_val[1:]


def f_y_exponents(tables):
    return tables.c_val[1:][tables.e_ind[1:] == 1] - tables.p


# closed forms

def f_formula(tables):
    return LaurentPoly.from_exponents(f_exponents(tables))


def f_x_closed(tables):
    return LaurentPoly.from_exponents(f_x_exponents(tables))


def f_y_closed(tables):
    return LaurentPoly.from_exponents(f_y_exponents(tables))


def f_x_permuted(tables):
    """F_X rewritten over the basic sequence: sum_{i=0..p-1} t^((1 - Ψ(i))k + Φ(i)p)."""
    p, k = tables.p, tables.k
    return LaurentPoly.from_exponents((1 - tables.psi[:p]) * k + tables.phi[:p] * p)


# bracket quotients on dense arrays

def bracket_quotient(exponents, h):
    """
    (sum_j t^a_j) / [h] for integer exponents a_j (repeats accumulate).

    Works on the dense coefficient array through [h](t - 1) = t^h - 1: the
    quotient by t^h - 1 is a running sum down each residue class mod h, and it
    exists exactly when the top h running sums vanish. Returns the lowest
    exponent and the int64 coefficients from there upward; raises NotDivisible.
    """
    assert h >= 1, f"bracket size must be positive, got {h}"
    a = np.asarray(exponents, dtype=np.int64)
    if a.size == 0:
        return 0, np.zeros(0, dtype=np.int64)
    lo = int(a.min())
    a = a - lo
    n = int(a.max()) + 2
    if n <= h:
        raise NotDivisible(f"[{h}] does not divide a polynomial of span {n - 2}")
    rows = -(-n // h)
    numerator = np.zeros(rows * h, dtype=np.int64)
    numerator[:n] = np.bincount(a + 1, minlength=n) - np.bincount(a, minlength=n)
    quotient = -np.cumsum(numerator.reshape(rows, h), axis=0).ravel()[:n]
    if quotient[n - h:].any():
        raise NotDivisible(f"[{h}] does not divide the polynomial with exponents from {lo}")
    return lo, quotient[:n - h]


def canonical_dense(coeffs):
    """Dense canonical representative: zeros trimmed at both ends, first coefficient positive."""
    nonzero = np.flatnonzero(coeffs)
    if nonzero.size == 0:
        return coeffs[:0]
    trimmed = coeffs[nonzero[0]:nonzero[-1] + 1]
    return -trimmed if trimmed[0] < 0 else trimmed


def canonical_quotient(exponents, h):
    return canonical_dense(bracket_quotient(exponents, h)[1])


def canonical_quotients(tables):
    """Canonical F_Y/[k], F_X/[p] and F/[k] as dense arrays; raises NotDivisible."""
    return (canonical_quotient(f_y_exponents(tables), tables.k),
            canonical_quotient(f_x_exponents(tables), tables.p),
            canonical_quotient(f_exponents(tables), tables.k))


def quotient_disagreement(tables):
    """None when all three quotients exist and agree up to units, otherwise what went wrong."""
    try:
        via_y, via_x, via_f = canonical_quotients(tables)
    except NotDivisible as e:
        return str(e)
    if not np.array_equal(via_y, via_x):
        return "F_Y/[k] and F_X/[p] differ"
    if not np.array_equal(via_y, via_f):
        return "F_Y/[k] and F/[k] differ"
    return None


def alexander_polynomial(tables):
    """Canonical F_Y/[k], checked against F_X/[p]."""
    delta_y = canonical_quotient(f_y_exponents(tables), tables.k)
    delta_x = canonical_quotient(f_x_exponents(tables), tables.p)
    if not np.array_equal(delta_x, delta_y):
        raise CrossCheckMismatch(f"{tables.triple}: F_Y/[k] = {LaurentPoly.from_dense(0, delta_y)} "
                                 f"but F_X/[p] = {LaurentPoly.from_dense(0, delta_x)}")
    return LaurentPoly.from_dense(0, delta_y)


def genus(delta):
    if delta.is_zero():
        raise ValueError("the zero polynomial has no genus")
    span = delta.span()
    if span % 2:
        raise OddSpan(f"{delta} has odd span {span}")
    return span // 2


# alternating form: 1 + sum_i (-1)^i (t^n_i + t^-n_i)

@dataclass(frozen=True)
class FormDecomposition:
    m_count: int
    n_seq: tuple

    def reconstruct(self):
        terms = {0: 1}
        for i, n in enumerate(self.n_seq, 1):
            terms[n] = terms[-n] = -1 if i % 2 else 1
        return LaurentPoly(terms)


def symmetrize(delta):
    """Δ shifted to be centred at exponent 0, signed so the constant term is positive."""
    g = genus(delta)
    centred = delta.shift(-(delta.min_exp() + g))
    return -centred if centred.coefficient(0) < 0 else centred


def form_decomposition(delta):
    centred = symmetrize(delta)
    if centred.coefficient(0) != 1:
        raise NotAlternatingForm("constant", f"centre coefficient of {delta} is {centred.coefficient(0)}, not +-1")
    coeffs = centred.terms
    if any(abs(c) != 1 for c in coeffs.values()):
        raise NotAlternatingForm("coefficients", f"{delta} has a coefficient other than +-1")
    if centred != centred.reciprocal():
        raise NotAlternatingForm("reciprocity", f"{delta} is not symmetric under t -> 1/t")
    exps = centred.exponents()
    if any(coeffs[a] != -coeffs[b] for a, b in zip(exps, exps[1:])):
        raise NotAlternatingForm("alternation", f"signs of {delta} do not alternate")
    if len(exps) % 2 == 0:
        raise NotAlternatingForm("parity", f"{delta} has an even number of terms")
    n_seq = tuple(e for e in exps if e > 0)
    return FormDecomposition(m_count=len(n_seq), n_seq=n_seq)


# degree sequences

@dataclass(frozen=True)
class StructureEntry:
    index: int          # i_j
    residue: int        # d(i_j), in [0, k)
    multiplicity: int   # m(i_j)


@dataclass(frozen=True)
class StructureReport:
    d_min: int
    e_min: int
    entries: tuple
    excess_partition: dict = field(hash=False)
    ell: int
    product_form: LaurentPoly
    w1_only: bool

    def excessive(self):
        return sorted(i for level in self.excess_partition.values() for i in level)

    def level_of(self, i):
        for h, level in self.excess_partition.items():
            if i in level:
                return h
        return 0


def structure_analysis(tables, verify=True):
    p, k = tables.p, tables.k
    c = tables.c_val.tolist()
    d_min = min(c[1:])
    e_min = min(c[i] - p for i in tables.hit_indices)

    entries = []
    for i in tables.hit_indices:
        shifted = c[i] - p - e_min
        entries.append(StructureEntry(index=i, residue=shifted % k, multiplicity=shifted // k))

    partition = {}
    for i in range(1, p + 1):
        h = (c[i] - d_min) // p
        if h >= 1:
            partition.setdefault(h, []).append(i)
    partition = {h: tuple(level) for h, level in sorted(partition.items())}
    ell = max(partition, default=0)

    report = StructureReport(d_min=d_min, e_min=e_min, entries=tuple(entries), excess_partition=partition,
                             ell=ell, product_form=_product_form(entries, k), w1_only=ell <= 1)
    if verify:
        _verify_product_identities(tables, report)
    return report


def _tail_exponents(entries, k):
    # exponents of sum_{m(i_j) > 0} t^d(i_j) [m(i_j)]^k
    for entry in entries:
        for j in range(entry.multiplicity):
            yield entry.residue + j * k


def _tail_sum(entries, k):
    return LaurentPoly.from_exponents(_tail_exponents(entries, k))


def _product_form(entries, k):
    # 1 + (t - 1) * tail, accumulated in one dict
    terms = {0: 1}
    for e in _tail_exponents(entries, k):
        terms[e + 1] = terms.get(e + 1, 0) + 1
        terms[e] = terms.get(e, 0) - 1
    return LaurentPoly(terms)


def level_sum(tables, report):
    """sum_h S_h(t) with S_h = [h]^p * sum_{i in W(h)} t^(c(i) - d - hp)."""
    p, d = tables.p, report.d_min
    exponents = []
    for h, level in report.excess_partition.items():
        for i in level:
            base = tables.c(i) - d - h * p
            exponents.extend(base + j * p for j in range(h))
    return LaurentPoly.from_exponents(exponents)


def product_form_matches(report, delta):
    return report.product_form == canonicalize(delta)


def _verify_product_identities(tables, report):
    p, k = tables.p, tables.k
    for name, exponents, h in (("t^-e F_Y", f_y_exponents(tables) - report.e_min, k),
                               ("t^-d F_X", f_x_exponents(tables) - report.d_min, p)):
        quotient = LaurentPoly.from_dense(*bracket_quotient(exponents, h))
        if quotient != report.product_form:
            raise IdentityViolation(f"{tables.triple}: {name} over [{h}] is {quotient} "
                                    f"but product form is {report.product_form}")
    levels = level_sum(tables, report)
    tails = _tail_sum(report.entries, k)
    if levels != tails:
        raise IdentityViolation(f"{tables.triple}: sum of S_h is {levels} but sum t^d [m]^k is {tails}")


def cover_counts(entries, p):
    """
    For i = 1..p, how many cyclic intervals [i_j, i_j + m(i_j) - 1] on {1, ..., p}
    contain i; entry i - 1 of the result.
    """
    active = [entry for entry in entries if entry.multiplicity > 0]
    if not active:
        return np.zeros(p, dtype=np.int64)
    starts = np.array([entry.index for entry in active], dtype=np.int64)
    lengths = np.minimum([entry.multiplicity for entry in active], p)
    marks = np.zeros(2 * p + 1, dtype=np.int64)
    np.add.at(marks, starts, 1)
    np.add.at(marks, starts + lengths, -1)
    running = np.cumsum(marks)
    return running[1:p + 1] + running[p + 1:]


def structure_violations(tables, report):
    """Invariants of the degree-sequence analysis that fail for this triple (empty when all hold)."""
    p, k = tables.p, tables.k
    c = tables.c_val
    d = report.d_min
    failures = []

    if d != report.e_min + k:
        failures.append(f"d = {d} but e + k = {report.e_min + k}")
    if sorted(entry.residue for entry in report.entries) != list(range(k)):
        failures.append("residues d(i_j) are not a permutation of 0..k-1")
    if all(entry.multiplicity > 0 for entry in report.entries):
        failures.append("no entry has multiplicity 0")
    if report.ell > k - 1:
        failures.append(f"height {report.ell} exceeds k - 1 = {k - 1}")
    if int(c[1:].max()) - d > k * (p - k):
        failures.append(f"deg G_X = {int(c[1:].max()) - d} exceeds k(p - k) = {k * (p - k)}")

    # c(i_j) - d - nk >= p exactly for n <= m(i_j) - 1; monotone in n, so the ends decide
    for entry in report.entries:
        m = entry.multiplicity
        top = int(c[entry.index]) - d
        if m and (top - (m - 1) * k < p or top - m * k >= p):
            failures.append(f"impact criterion fails at i_j = {entry.index}")

    levels = (c[1:] - d) // p
    counts = cover_counts(report.entries, p)
    excessive = np.flatnonzero(levels >= 1)
    for pos in excessive[counts[excessive] != levels[excessive]]:
        failures.append(f"index {pos + 1} lies in W({levels[pos]}) but is covered {counts[pos]} times")

    return failures


def uv_sequence(report, k):
    """
    Degrees u_1 < v_1 < ... < u_m < v_m of the non-constant terms of Δ.

    U collects t^d(a) [m(a)]^k exponents, V the same shifted by one; the
    symmetric difference must alternate starting in U.
    """
    u_sets = []
    for entry in report.entries:
        if entry.multiplicity > 0:
            u_sets.append({entry.residue + j * k for j in range(entry.multiplicity)})
    union = set()
    for u in u_sets:
        if union & u:
            raise IdentityViolation("U-sets of distinct hit indices overlap")
        union |= u
    u_all = union
    v_all = {u + 1 for u in u_all}
    degrees = sorted(u_all ^ v_all)
    for pos, deg in enumerate(degrees):
        expected = u_all if pos % 2 == 0 else v_all
        if deg not in expected:
            raise IdentityViolation(f"degree {deg} breaks the u < v alternation")
    return tuple(zip(degrees[0::2], degrees[1::2]))


def excess_levels(p, q):
    """
    Height ℓ of the excess partition for every k in 0..p-1 at once.

    Row k of the matrices is the c-array of (p, q, k); ℓ is the largest h with
    W(h) nonempty, i.e. floor((max c - min c) / p). Row 0 is padding.
    """
    n = np.arange(1, p + 1, dtype=np.int64)
    basic = (n * q) % p
    ks = np.arange(p, dtype=np.int64)[:, None]
    s = np.cumsum(basic[None, :] < ks, axis=1, dtype=np.int64)
    c = -n[None, :] * ks + p * s
    return (c.max(axis=1) - c.min(axis=1)) // p
