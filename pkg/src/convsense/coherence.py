"""Coherence of circulant operators and verification of the bound table.

For a circulant A with filter a, the coherence is mu(A) = max_k |a_k|;
for a basis Psi it is the largest entry magnitude of A @ Psi.  Each
deterministic spectrum family carries a closed-form bound:

=====================  ==========================  =====================
kind                   admissible N                bound on mu(A)
=====================  ==========================  =====================
fzc                    gcd(gamma, N) = 1           1
m_sequence             2^d - 1 (d in table)        sqrt(1 + 1/N)
golay                  2^k1 * 10^k2 * 26^k3        sqrt(2)
extended_polyphase     even N                      4 + 4/sqrt(N)
                       odd N                       2.69 + 8.15/sqrt(N)
extended_golay         even N, N/2 Golay           2 + 2/sqrt(N)
                       odd N, (N-1)/2 Golay        2 + 1/sqrt(N)
=====================  ==========================  =====================

Bounds are checked as non-strict inequalities with +1e-9 slack.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Union

import numpy as np

from . import sequences as seqs
from .operators import Basis, CirculantOperator, _DENSE_GUARD
from .sequences import Sequence

_PASS_SLACK = 1e-9


@dataclass(frozen=True)
class CoherenceReport:
    """One (kind, N) row: observed coherence against its bound."""

    kind: str
    n: int
    mu_observed: float
    bound: float
    bound_label: str
    note: str = ""
    skipped: bool = False

    @property
    def margin(self) -> float:
        return self.bound - self.mu_observed

    @property
    def passed(self) -> bool:
        if self.skipped:
            return True
        return self.mu_observed <= self.bound + _PASS_SLACK


def coherence_circulant(a: CirculantOperator) -> float:
    """mu(A) = max |a_k| over the filter (first-column) entries."""
    return float(np.max(np.abs(a.filter)))


def mutual_coherence(a: CirculantOperator, psi: Basis,
                     block: int = 128) -> float:
    """Largest entry magnitude of A @ Psi, streamed in column blocks of
    Psi so memory stays O(N * block) at any size."""
    n = a.n
    worst = 0.0
    for lo in range(0, n, block):
        hi = min(lo + block, n)
        cols = np.zeros((n, hi - lo), dtype=np.complex128)
        cols[lo:hi] = np.eye(hi - lo)
        prod = a.apply_batch(psi.apply(cols))
        worst = max(worst, float(np.max(np.abs(prod))))
    return worst


def autocorrelation_bound_check(s: Sequence) -> CoherenceReport:
    """For a unimodular sequence used as spectrum, verify
    mu(A) <= sqrt(1 + epsilon_observed) with epsilon_observed the worst
    off-peak periodic autocorrelation magnitude."""
    a = CirculantOperator.from_spectrum(s)
    rep = seqs.classify(s)
    eps = rep.epsilon_observed
    return CoherenceReport(
        kind=s.kind.value, n=s.values.size,
        mu_observed=coherence_circulant(a),
        bound=math.sqrt(1.0 + eps),
        bound_label="sqrt(1 + epsilon_observed)",
        note=f"label={rep.label}, epsilon_observed={eps:.6g}")


# ---------------------------------------------------------------------------
# the bound table
# ---------------------------------------------------------------------------

_TABLE_KINDS = ("fzc", "m_sequence", "golay", "extended_polyphase",
                "extended_golay")


def _build_and_bound(kind: str, n: int, fzc_gamma: int):
    """Return (sequence, bound, label) or a skip reason string."""
    if kind == "fzc":
        if math.gcd(fzc_gamma, n) != 1:
            return f"gcd(gamma={fzc_gamma}, N={n}) != 1"
        return seqs.fzc(n, fzc_gamma), 1.0, "1"
    if kind == "m_sequence":
        deg = (n + 1).bit_length() - 1
        if (1 << deg) - 1 != n or deg not in seqs.PRIMITIVE_POLYNOMIALS:
            return f"N={n} is not 2^d - 1 for a tabulated degree"
        return (seqs.m_sequence(deg), math.sqrt(1.0 + 1.0 / n),
                "sqrt(1 + 1/N)")
    if kind == "golay":
        if not seqs.admissible_golay_length(n):
            return f"N={n} is not of the form 2^k1 * 10^k2 * 26^k3"
        return seqs.golay(n), math.sqrt(2.0), "sqrt(2)"
    if kind == "extended_polyphase":
        if n < 2:
            return "N must be >= 2"
        if n % 2 == 0:
            return (seqs.extended_polyphase(n), 4.0 + 4.0 / math.sqrt(n),
                    "4 + 4/sqrt(N)")
        return (seqs.extended_polyphase(n), 2.69 + 8.15 / math.sqrt(n),
                "2.69 + 8.15/sqrt(N)")
    if kind == "extended_golay":
        n0 = n // 2
        if not seqs.admissible_golay_length(n0) or n0 < 1:
            return f"half-length {n0} is not a Golay length"
        if n % 2 == 0:
            return (seqs.extended_golay(n), 2.0 + 2.0 / math.sqrt(n),
                    "2 + 2/sqrt(N)")
        return (seqs.extended_golay(n), 2.0 + 1.0 / math.sqrt(n),
                "2 + 1/sqrt(N)")
    raise ValueError(f"unknown kind {kind!r}; expected one of {_TABLE_KINDS}")


def bound_table_report(n_lists: Dict[str, Iterable[int]],
                  fzc_gamma: int = 1) -> List[CoherenceReport]:
    """One CoherenceReport per (kind, N).  Inadmissible sizes produce
    a skipped row (note says why, never counted as a failure)."""
    reports = []
    for kind, ns in n_lists.items():
        for n in ns:
            built = _build_and_bound(kind, int(n), fzc_gamma)
            if isinstance(built, str):
                reports.append(CoherenceReport(
                    kind=kind, n=int(n), mu_observed=float("nan"),
                    bound=float("nan"), bound_label="",
                    note=f"skipped: {built}", skipped=True))
                continue
            s, bound, label = built
            mu = coherence_circulant(CirculantOperator.from_spectrum(s))
            reports.append(CoherenceReport(kind=kind, n=int(n),
                                           mu_observed=mu, bound=bound,
                                           bound_label=label))
    return reports


def dct_coherence_report(n_list: Iterable[int],
                    gammas: Union[Iterable[int], int] = 1
                    ) -> List[CoherenceReport]:
    """mu(A @ InverseDCT2) for FZC spectra against the 6*sqrt(2) bound;
    one row per (N, gamma), non-coprime pairs skipped."""
    if isinstance(gammas, int):
        gammas = [gammas]
    gammas = list(gammas)
    psi = Basis.inverse_dct2()
    reports = []
    for n in n_list:
        for g in gammas:
            kind = f"fzc(gamma={g})+inverse_dct2"
            if math.gcd(g, n) != 1:
                reports.append(CoherenceReport(
                    kind=kind, n=int(n), mu_observed=float("nan"),
                    bound=float("nan"), bound_label="",
                    note=f"skipped: gcd(gamma={g}, N={n}) != 1",
                    skipped=True))
                continue
            a = CirculantOperator.from_spectrum(seqs.fzc(int(n), g))
            mu = mutual_coherence(a, psi)
            reports.append(CoherenceReport(
                kind=kind, n=int(n), mu_observed=mu,
                bound=6.0 * math.sqrt(2.0), bound_label="6*sqrt(2)"))
    return reports


# ---------------------------------------------------------------------------
# CSV emission (frozen schema: kind,N,mu_observed,bound,margin,pass)
# ---------------------------------------------------------------------------

def _fmt(x: float) -> str:
    return "%.12g" % x


def bound_table_csv(reports: Iterable[CoherenceReport]) -> str:
    """Skipped rows are not emitted; pass is lowercase true/false."""
    lines = ["kind,N,mu_observed,bound,margin,pass"]
    for r in reports:
        if r.skipped:
            continue
        lines.append(",".join([
            r.kind, str(r.n), _fmt(r.mu_observed), _fmt(r.bound),
            _fmt(r.margin), "true" if r.passed else "false"]))
    return "\n".join(lines) + "\n"
