"""Surgery triples (p, q, k) and the combinatorial tables derived from them."""

from collections import namedtuple
from dataclasses import dataclass
from math import gcd

import numpy as np

# int64 tables hold values up to p*p in magnitude
INT64_SAFE_P = 2 ** 31 - 1


class TripleError(ValueError):
    pass


class RangeError(TripleError):
    pass


class NotCoprimePQ(TripleError):
    pass


class NotCoprimePK(TripleError):
    pass


class TableOverflow(OverflowError):
    pass


@dataclass(frozen=True, order=True)
class SurgeryTriple:
    p: int
    q: int
    k: int

    def __str__(self):
        return f"({self.p},{self.q},{self.k})"


@dataclass(frozen=True, eq=False)
class SequenceTables:
    """
    All arrays consumed by the closed formulas for one triple.

    psi and phi are indexed by i = 0..p. e_ind, s_partial and c_val are
    indexed by i = 1..p; their index 0 is padding and holds 0.
    """
    triple: SurgeryTriple
    residues: np.ndarray
    psi: np.ndarray
    phi: np.ndarray
    e_ind: np.ndarray
    s_partial: np.ndarray
    c_val: np.ndarray
    hit_indices: tuple

    @property
    def p(self):
        return self.triple.p

    @property
    def q(self):
        return self.triple.q

    @property
    def k(self):
        return self.triple.k

    def c(self, i):
        return int(self.c_val[i])


SaitoResult = namedtuple("SaitoResult", ["value", "passes"])


def validate_triple(p, q, k):
    for name, value in (("p", p), ("q", q), ("k", k)):
        if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
            raise TypeError(f"{name} must be an integer, got {value!r}")
    p, q, k = int(p), int(q), int(k)
    if not 0 < q < p:
        raise RangeError(f"q must satisfy 0 < q < p, got p={p}, q={q}")
    if not 1 <= k < p:
        raise RangeError(f"k must satisfy 1 <= k < p, got p={p}, k={k}")
    if gcd(p, q) != 1:
        raise NotCoprimePQ(f"p={p} and q={q} share the factor {gcd(p, q)}")
    if gcd(p, k) != 1:
        raise NotCoprimePK(f"p={p} and k={k} share the factor {gcd(p, k)}")
    return SurgeryTriple(p, q, k)


def compute_tables(triple):
    p, q, k = triple.p, triple.q, triple.k
    if p > INT64_SAFE_P:
        raise TableOverflow(f"p={p} is too large for int64 sequence tables")

    n = np.arange(p + 1, dtype=np.int64)
    # residues[n] = n*q mod p; positions 1..p form the basic sequence
    residues = (n * q) % p
    basic = residues[1:]

    psi = np.empty(p + 1, dtype=np.int64)
    psi[basic] = n[1:]
    psi[p] = p

    # Φ counts the terms 1..k-1 strictly before each position of the basic sequence
    small = ((basic >= 1) & (basic <= k - 1)).astype(np.int64)
    seen_before = np.cumsum(small) - small
    phi = np.empty(p + 1, dtype=np.int64)
    phi[basic] = seen_before
    phi[p] = k - 1

    e_ind = np.zeros(p + 1, dtype=np.int64)
    e_ind[1:] = basic < k
    s_partial = np.cumsum(e_ind)
    c_val = -n * k + p * s_partial

    hit_indices = tuple(int(i) for i in np.flatnonzero(e_ind))
    return SequenceTables(triple=triple, residues=residues, psi=psi, phi=phi, e_ind=e_ind,
                          s_partial=s_partial, c_val=c_val, hit_indices=hit_indices)


def saito_condition(triple, tables=None):
    """p*Φ(k) - k*Ψ(k), which must lie in {1, -1, 1-p, -1-p} for a dual knot of S^3 surgery."""
    if tables is None:
        tables = compute_tables(triple)
    p, k = triple.p, triple.k
    value = p * int(tables.phi[k]) - k * int(tables.psi[k])
    return SaitoResult(value, value in (1, -1, 1 - p, -1 - p))


def valid_triples(p_max):
    """All valid triples with p <= p_max in lexicographic (p, q, k) order."""
    for p in range(2, p_max + 1):
        coprime = [x for x in range(1, p) if gcd(p, x) == 1]
        for q in coprime:
            for k in coprime:
                yield SurgeryTriple(p, q, k)
