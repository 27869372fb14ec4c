"""Deterministic and random sequence generators with autocorrelation checks.

Every sequence here is meant to serve as either the spectral (diagonal)
sequence ``sigma`` or the filter vector ``a`` of a circulant sensing
operator.  Generators validate their own defining properties at build time
(unimodularity, bipolarity, conjugate symmetry, two-valued autocorrelation,
complementarity), so a bad embedded constant or a bad argument fails loudly
instead of producing a silently wrong operator.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np


class SequenceKind(str, Enum):
    FZC = "fzc"
    EXTENDED_POLYPHASE = "extended_polyphase"
    M_SEQUENCE = "m_sequence"
    PERFECT_BINARY_FROM_M = "perfect_binary_from_m"
    GOLAY = "golay"
    EXTENDED_GOLAY = "extended_golay"
    LEGENDRE = "legendre"
    RANDOM_PHASE = "random_phase"
    RANDOM_BINARY = "random_binary"


UNIMODULAR_KINDS = {
    SequenceKind.FZC,
    SequenceKind.EXTENDED_POLYPHASE,
    SequenceKind.RANDOM_PHASE,
}
BIPOLAR_KINDS = {
    SequenceKind.M_SEQUENCE,
    SequenceKind.GOLAY,
    SequenceKind.EXTENDED_GOLAY,
    SequenceKind.LEGENDRE,
    SequenceKind.RANDOM_BINARY,
}
CONJUGATE_SYMMETRIC_KINDS = {
    SequenceKind.EXTENDED_POLYPHASE,
    SequenceKind.EXTENDED_GOLAY,
}

_UNIMODULAR_TOL = 1e-12
_SYMMETRY_TOL = 1e-12
_PERFECT_TOL = 1e-9


@dataclass(frozen=True)
class Sequence:
    """A length-N complex vector tagged with how it was generated.

    Attributes
    ----------
    values : ndarray
        Complex vector of length N.  Immutable (the array is set
        non-writeable on construction).
    kind : SequenceKind
        Generator family.
    params : dict
        Kind-specific generation parameters (e.g. ``gamma`` for fzc,
        ``degree/taps/init`` for m_sequence, ``seed`` for random kinds).
    epsilon_claim : float or None
        Off-peak periodic-autocorrelation magnitude the kind promises
        (0 for perfect kinds, 1 for m-sequences, None when no claim is
        made and only the observed value is reported).
    """

    values: np.ndarray
    kind: SequenceKind
    params: dict = field(default_factory=dict)
    epsilon_claim: Optional[float] = None

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=np.complex128)
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)
        _validate_sequence(self)

    def __len__(self) -> int:
        return self.values.shape[0]

    @property
    def n(self) -> int:
        return self.values.shape[0]

    # -- serialization ----------------------------------------------------

    def to_json(self) -> str:
        """Serialize to a JSON record {kind, N, params, values:[[re, im], ...]}."""
        rec = {
            "kind": self.kind.value,
            "N": self.n,
            "params": self.params,
            "epsilon_claim": self.epsilon_claim,
            "values": [[float(v.real), float(v.imag)] for v in self.values],
        }
        return json.dumps(rec, sort_keys=True)

    @staticmethod
    def from_json(text: str) -> "Sequence":
        rec = json.loads(text)
        vals = np.array([complex(re, im) for re, im in rec["values"]])
        return Sequence(
            values=vals,
            kind=SequenceKind(rec["kind"]),
            params=rec.get("params", {}),
            epsilon_claim=rec.get("epsilon_claim"),
        )

    def to_csv(self) -> str:
        """Two-column CSV (re, im).  Bit-exact round trip for bipolar kinds."""
        lines = ["re,im"]
        for v in self.values:
            lines.append(f"{float(v.real)!r},{float(v.imag)!r}")
        return "\n".join(lines) + "\n"

    @staticmethod
    def values_from_csv(text: str) -> np.ndarray:
        rows = [ln for ln in text.strip().splitlines()[1:] if ln]
        return np.array([complex(float(a), float(b))
                         for a, b in (ln.split(",") for ln in rows)])


def _validate_sequence(seq: Sequence) -> None:
    vals = seq.values
    n = vals.shape[0]
    if n < 1:
        raise ValueError("sequence must have length >= 1")
    if not np.all(np.isfinite(vals)):
        raise ValueError("sequence entries must be finite")
    if seq.kind in UNIMODULAR_KINDS:
        dev = np.max(np.abs(np.abs(vals) - 1.0))
        if dev > _UNIMODULAR_TOL:
            raise ValueError(
                f"{seq.kind.value} sequence must be unimodular "
                f"(max deviation {dev:.3e})")
    if seq.kind in BIPOLAR_KINDS:
        if not np.all((vals == 1.0) | (vals == -1.0)):
            raise ValueError(f"{seq.kind.value} sequence must be exactly +/-1")
    if seq.kind in CONJUGATE_SYMMETRIC_KINDS and n >= 2:
        dev = np.max(np.abs(vals[1:] - np.conj(vals[::-1][: n - 1])))
        if dev > _SYMMETRY_TOL:
            raise ValueError(
                f"{seq.kind.value} sequence must satisfy "
                f"sigma_k = conj(sigma_(N-k)) (max deviation {dev:.3e})")


def _values(s) -> np.ndarray:
    return s.values if isinstance(s, Sequence) else np.asarray(s, dtype=np.complex128)


# ---------------------------------------------------------------------------
# polyphase generators
# ---------------------------------------------------------------------------

def fzc(n: int, gamma: int) -> Sequence:
    """Quadratic-phase polyphase sequence (constant amplitude, zero
    autocorrelation at every nonzero lag).

    s_k = exp(-j*pi*gamma*k^2/N) for even N, exp(-j*pi*gamma*k*(k+1)/N)
    for odd N, with gcd(gamma, N) = 1.

    Phases are reduced in integer arithmetic modulo 2N before the complex
    exponential is taken, so unimodularity and periodicity are exact at any
    supported length.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if math.gcd(gamma, n) != 1:
        raise ValueError(f"gamma={gamma} must be coprime with n={n}")
    k = np.arange(n, dtype=np.int64)
    if n % 2 == 0:
        quad = (k * k) % (2 * n)
    else:
        quad = (k * (k + 1)) % (2 * n)
    g = gamma % (2 * n)
    phase = (g * quad) % (2 * n)
    vals = np.exp(-1j * np.pi * phase / n)
    return Sequence(vals, SequenceKind.FZC, {"gamma": int(gamma)}, epsilon_claim=0.0)


def extended_polyphase(n: int) -> Sequence:
    """Conjugate-symmetric quadratic-phase sequence whose circulant filter
    is real.

    Even N:  [1, e^{-j pi k^2/N} (1 <= k <= N/2-1), 1 at k=N/2,
              e^{+j pi k^2/N} (upper half)].
    Odd N:   [1, e^{-j pi k^2/N} (1 <= k <= (N-1)/2),
              -e^{+j pi k^2/N} (upper half)].
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    k = np.arange(n, dtype=np.int64)
    quad = (k * k) % (2 * n)
    lower = np.exp(-1j * np.pi * quad / n)
    upper = np.exp(+1j * np.pi * quad / n)
    vals = np.empty(n, dtype=np.complex128)
    vals[0] = 1.0
    if n % 2 == 0:
        half = n // 2
        vals[1:half] = lower[1:half]
        vals[half] = 1.0
        vals[half + 1:] = upper[half + 1:]
    else:
        half = (n - 1) // 2
        vals[1:half + 1] = lower[1:half + 1]
        vals[half + 1:] = -upper[half + 1:]
    return Sequence(vals, SequenceKind.EXTENDED_POLYPHASE, {}, epsilon_claim=None)


# ---------------------------------------------------------------------------
# shift-register sequences
# ---------------------------------------------------------------------------

# Primitive polynomial bitmasks over GF(2), degree -> mask with bit i the
# coefficient of x^i (bit `degree` always set).  Each entry was validated by
# a full-period run plus the exact two-valued autocorrelation check that
# m_sequence() re-runs on every construction.
PRIMITIVE_POLYNOMIALS = {
    2: 0x7, 3: 0xB, 4: 0x13, 5: 0x25, 6: 0x43, 7: 0x83, 8: 0x11D,
    9: 0x211, 10: 0x409, 11: 0x805, 12: 0x1053, 13: 0x201B, 14: 0x4443,
    15: 0x8003, 16: 0x1100B, 17: 0x20009, 18: 0x40081, 19: 0x80027,
    20: 0x100009,
}


def m_sequence(degree: int, taps: Optional[int] = None, init: int = 1) -> Sequence:
    """Maximum-length +/-1 sequence of period 2^degree - 1 from a Fibonacci
    linear feedback shift register.

    Parameters
    ----------
    degree : int in [2, 20]
        Register length; output length is N = 2^degree - 1.
    taps : int, optional
        Feedback polynomial bitmask (bit i = coefficient of x^i).  Defaults
        to the embedded primitive polynomial for the degree.  Non-primitive
        masks are rejected post hoc by the exact autocorrelation check
        (off-peak R(l) must equal -1).
    init : int
        Initial register state, bit i = state cell i; must be nonzero.

    Output bit b is mapped to (-1)^b, so the sequence sums to -1.
    """
    if not (2 <= degree <= 20):
        raise ValueError("degree must be in [2, 20]")
    if taps is None:
        taps = PRIMITIVE_POLYNOMIALS[degree]
    if taps >> (degree + 1):
        raise ValueError("taps mask has bits above the stated degree")
    if not (taps >> degree) & 1:
        raise ValueError("taps mask must include the x^degree term")
    n = (1 << degree) - 1
    init = int(init)
    if init <= 0 or init >= (1 << degree):
        raise ValueError("init must be a nonzero state of `degree` bits")
    state = [(init >> i) & 1 for i in range(degree)]
    tap_idx = [i for i in range(degree) if (taps >> i) & 1]
    bits = np.empty(n, dtype=np.int64)
    for t in range(n):
        bits[t] = state[0]
        fb = 0
        for i in tap_idx:
            fb ^= state[i]
        state = state[1:] + [fb]
    vals = 1.0 - 2.0 * bits
    # exact two-valued autocorrelation gate: peak N, off-peak -1
    spec = np.fft.fft(vals)
    corr = np.fft.ifft(spec * np.conj(spec)).real
    corr_int = np.rint(corr).astype(np.int64)
    if np.max(np.abs(corr - corr_int)) > 1e-6 or corr_int[0] != n or \
            not np.all(corr_int[1:] == -1):
        raise ValueError(
            f"taps=0x{taps:X} do not generate a maximum-length sequence "
            f"(off-peak autocorrelation is not uniformly -1)")
    params = {"degree": int(degree), "taps": int(taps), "init": init}
    return Sequence(vals, SequenceKind.M_SEQUENCE, params, epsilon_claim=1.0)


def perfect_binary_from_m(m: Sequence) -> Sequence:
    """Two-valued real perfect sequence obtained by an affine remap of a
    maximum-length sequence.

    With a the +/-1 input of length N and S = sum(a) (= -1 for the standard
    bit mapping), the output is

        a~ = sqrt(N/(N+1)) * a + S * (1 - 1/sqrt(N+1)) / sqrt(N) * ones(N).

    The result has periodic autocorrelation exactly zero at every nonzero
    lag, energy ||a~||^2 = N, and a unimodular spectrum; the zero-lag
    perfectness is verified at build time to 1e-9.
    """
    if not isinstance(m, Sequence) or m.kind is not SequenceKind.M_SEQUENCE:
        raise ValueError("input must be a Sequence of kind m_sequence")
    a = m.values.real
    n = a.shape[0]
    s_total = float(np.sum(a))
    alpha = math.sqrt(n / (n + 1))
    beta = s_total * (1.0 - 1.0 / math.sqrt(n + 1)) / math.sqrt(n)
    vals = alpha * a + beta
    seq = Sequence(vals.astype(np.complex128), SequenceKind.PERFECT_BINARY_FROM_M,
                   {"degree": m.params.get("degree")}, epsilon_claim=0.0)
    report = classify(seq)
    if report.label != "perfect":
        raise AssertionError(
            f"perfect_binary_from_m produced a non-perfect sequence "
            f"(max off-peak |R| = {report.epsilon_observed:.3e})")
    return seq


# ---------------------------------------------------------------------------
# complementary (Golay) sequences
# ---------------------------------------------------------------------------

# Kernels of the two non-doubling lengths.  Each was found by an exact
# backtracking search and is re-verified by the integer complementarity
# check on every use.
_GOLAY_KERNELS = {
    1: ([1], [1]),
    10: ([1, 1, -1, 1, -1, 1, -1, -1, 1, 1],
         [1, 1, -1, 1, 1, 1, 1, 1, -1, -1]),
    26: ([1, 1, 1, 1, -1, 1, 1, -1, -1, 1, -1, 1, -1, 1, -1, -1, 1, -1,
          1, 1, 1, -1, -1, 1, 1, 1],
         [1, 1, 1, 1, -1, 1, 1, -1, -1, 1, -1, 1, 1, 1, 1, 1, -1, 1,
          -1, -1, -1, 1, 1, -1, -1, -1]),
}


@dataclass(frozen=True)
class GolayPair:
    """Two +/-1 sequences whose aperiodic autocorrelations cancel exactly
    at every nonzero lag (and sum to 2N at lag zero)."""

    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.a, dtype=np.int64)
        b = np.asarray(self.b, dtype=np.int64)
        if a.shape != b.shape or a.ndim != 1:
            raise ValueError("pair members must be 1-D of equal length")
        if not (np.all(np.abs(a) == 1) and np.all(np.abs(b) == 1)):
            raise ValueError("pair members must be exactly +/-1")
        if not _complementary_exact(a, b):
            raise ValueError("sequences are not a complementary pair "
                             "(aperiodic autocorrelations do not cancel)")
        a.setflags(write=False)
        b.setflags(write=False)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def n(self) -> int:
        return self.a.shape[0]


def _complementary_exact(a: np.ndarray, b: np.ndarray) -> bool:
    """Integer-exact complementarity test: r_a(l) + r_b(l) = 0 for l >= 1."""
    n = a.shape[0]
    ra = np.correlate(a, a, mode="full")[n:]      # lags 1 .. n-1
    rb = np.correlate(b, b, mode="full")[n:]
    return bool(np.all(ra + rb == 0))


def admissible_golay_length(n0: int) -> bool:
    """True when n0 factors as 2^k1 * 10^k2 * 26^k3."""
    try:
        _golay_factorization(n0)
        return True
    except ValueError:
        return False


def _golay_factorization(n0: int) -> tuple:
    if n0 < 1:
        raise ValueError("length must be >= 1")
    k2 = 0
    m = n0
    while m % 5 == 0:
        m //= 5
        k2 += 1
    k3 = 0
    while m % 13 == 0:
        m //= 13
        k3 += 1
    # remaining must be a power of two covering the 2s of every 10 and 26
    if m & (m - 1):
        raise ValueError(f"{n0} is not of the form 2^k1*10^k2*26^k3")
    k1 = m.bit_length() - 1 - k2 - k3
    if k1 < 0:
        raise ValueError(f"{n0} is not of the form 2^k1*10^k2*26^k3")
    return k1, k2, k3


def _turyn_compose(inner: GolayPair, outer: GolayPair) -> GolayPair:
    """Compose a length-r pair (a,b) with a length-s pair (c,d) into a
    length r*s pair.  Entries stay +/-1 because (a+b)/2 and (a-b)/2 have
    disjoint support."""
    a, b = outer.a, outer.b
    c, d = inner.a, inner.b
    r = a.shape[0]
    s = c.shape[0]
    half_sum = (a + b) // 2
    half_diff = (a - b) // 2
    e = np.empty(r * s, dtype=np.int64)
    f = np.empty(r * s, dtype=np.int64)
    for i in range(s):
        e[i * r:(i + 1) * r] = c[i] * half_sum + d[s - 1 - i] * half_diff
        f[i * r:(i + 1) * r] = d[i] * half_sum - c[s - 1 - i] * half_diff
    return GolayPair(e, f)


def golay_pair(n0: int) -> GolayPair:
    """Complementary pair of length n0 = 2^k1 * 10^k2 * 26^k3.

    Built by recursive doubling (a,b) -> (a||b, a||-b) from kernels of
    length 1, 10 and 26; mixed 10/26 contents are combined by the
    product composition.  The exact integer complementarity check gates
    every returned pair.
    """
    k1, k2, k3 = _golay_factorization(n0)
    pair = GolayPair(*_GOLAY_KERNELS[1])
    for _ in range(k3):
        pair = _combine(pair, GolayPair(*_GOLAY_KERNELS[26]))
    for _ in range(k2):
        pair = _combine(pair, GolayPair(*_GOLAY_KERNELS[10]))
    for _ in range(k1):
        a = np.concatenate([pair.a, pair.b])
        b = np.concatenate([pair.a, -pair.b])
        pair = GolayPair(a, b)
    return pair


def _combine(pair: GolayPair, kernel: GolayPair) -> GolayPair:
    if pair.n == 1:
        return kernel
    return _turyn_compose(kernel, pair)


def golay(n0: int) -> Sequence:
    """The first member of the complementary pair of length n0, as a
    +/-1 sequence."""
    pair = golay_pair(n0)
    return Sequence(pair.a.astype(np.complex128), SequenceKind.GOLAY,
                    {"n0": int(n0)}, epsilon_claim=None)


def extended_golay(n: int) -> Sequence:
    """Bipolar palindromic sequence built from a complementary sequence of
    length N0, for N = 2*N0 (even) or N = 2*N0 + 1 (odd).

    Even N:  [s_0..s_{N0-1}, s_0, s_{N0-1}..s_1].
    Odd N:   [s_0..s_{N0-1}, -s_0, -s_0, s_{N0-1}..s_1]  (the two adjacent
    middle entries are forced equal by conjugate symmetry; -s_0 is the
    value that keeps the circulant coherence below 2 + 1/sqrt(N) at every
    admissible size).

    The result is exactly +/-1 and conjugate-symmetric, so its circulant
    filter is real.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    if n % 2 == 0:
        n0 = n // 2
    else:
        if (n - 1) % 2 != 0:
            raise ValueError("odd n must be 2*N0 + 1")
        n0 = (n - 1) // 2
    if n0 < 1 or not admissible_golay_length(n0):
        raise ValueError(
            f"n={n} does not come from an admissible half-length "
            f"(2^k1*10^k2*26^k3)")
    s = golay_pair(n0).a
    if n % 2 == 0:
        vals = np.concatenate([s, [s[0]], s[1:][::-1]])
    else:
        vals = np.concatenate([s, [-s[0], -s[0]], s[1:][::-1]])
    return Sequence(vals.astype(np.complex128), SequenceKind.EXTENDED_GOLAY,
                    {"n0": int(n0)}, epsilon_claim=None)


# ---------------------------------------------------------------------------
# number-theoretic and random generators
# ---------------------------------------------------------------------------

def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def legendre(n: int) -> Sequence:
    """+/-1 sequence over an odd prime length from quadratic residues.

    s_0 = +1 and s_k = +1 exactly when k is a nonzero square modulo N.
    No off-peak autocorrelation level is claimed; classify() reports the
    observed one (it is 1 for N congruent to 3 mod 4).
    """
    if n < 3 or not _is_prime(n):
        raise ValueError("n must be an odd prime")
    residues = np.zeros(n, dtype=bool)
    for k in range(1, n):
        residues[(k * k) % n] = True
    vals = np.where(residues, 1.0, -1.0)
    vals[0] = 1.0
    return Sequence(vals.astype(np.complex128), SequenceKind.LEGENDRE, {},
                    epsilon_claim=None)


def random_phase(n: int, seed: int) -> Sequence:
    """Unimodular sequence sigma_k = exp(j*theta_k), theta_k ~ U[0, 2*pi).

    PRNG: numpy default_rng (PCG64) seeded with `seed`; one uniform draw
    per element in index order.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = np.random.default_rng(seed)
    theta = rng.uniform(0.0, 2.0 * np.pi, size=n)
    return Sequence(np.exp(1j * theta), SequenceKind.RANDOM_PHASE,
                    {"seed": int(seed)}, epsilon_claim=None)


def random_binary(n: int, seed: int) -> Sequence:
    """+/-1 sequence with equiprobable entries.

    PRNG: numpy default_rng (PCG64) seeded with `seed`; one integers(0, 2)
    draw per element in index order, bit b mapped to 1 - 2*b.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = np.random.default_rng(seed)
    bits = rng.integers(0, 2, size=n)
    vals = 1.0 - 2.0 * bits
    return Sequence(vals.astype(np.complex128), SequenceKind.RANDOM_BINARY,
                    {"seed": int(seed)}, epsilon_claim=None)


# ---------------------------------------------------------------------------
# autocorrelation and classification
# ---------------------------------------------------------------------------

def autocorr_periodic(s, l: int) -> complex:
    """Periodic autocorrelation R(l) = sum_k s_k * conj(s_{(k+l) mod N})."""
    vals = _values(s)
    n = vals.shape[0]
    if not (0 <= l <= n - 1):
        raise ValueError(f"lag {l} out of range [0, {n - 1}]")
    return complex(np.sum(vals * np.conj(np.roll(vals, -l))))


def autocorr_aperiodic(s, l: int) -> complex:
    """Aperiodic autocorrelation r(l) = sum_{k=0}^{N-l-1} s_k * conj(s_{k+l})."""
    vals = _values(s)
    n = vals.shape[0]
    if not (0 <= l <= n - 1):
        raise ValueError(f"lag {l} out of range [0, {n - 1}]")
    if l == 0:
        return complex(np.sum(vals * np.conj(vals)))
    return complex(np.sum(vals[:n - l] * np.conj(vals[l:])))


def autocorr_periodic_all(s) -> np.ndarray:
    """All periodic autocorrelation values [R(0), ..., R(N-1)] via FFT."""
    vals = _values(s)
    spec = np.fft.fft(vals)
    return np.conj(np.fft.ifft(np.abs(spec) ** 2))


@dataclass(frozen=True)
class ClassifyReport:
    label: str                 # "perfect" | "nearly_perfect" | "neither"
    epsilon_observed: float
    claim_consistent: Optional[bool]


def classify(s: Sequence, nearly_threshold: float = 4.0) -> ClassifyReport:
    """Classify a sequence by its worst off-peak periodic autocorrelation.

    perfect when max_{l != 0} |R(l)| <= 1e-9; nearly_perfect when it is at
    most `nearly_threshold`; neither otherwise.  When the sequence carries
    an epsilon claim, consistency (observed <= claim + 1e-9) is reported.
    """
    corr = autocorr_periodic_all(s)
    n = corr.shape[0]
    eps = 0.0 if n == 1 else float(np.max(np.abs(corr[1:])))
    if eps <= _PERFECT_TOL:
        label = "perfect"
    elif eps <= nearly_threshold:
        label = "nearly_perfect"
    else:
        label = "neither"
    consistent = None
    if isinstance(s, Sequence) and s.epsilon_claim is not None:
        if s.epsilon_claim == 0.0:
            consistent = label == "perfect"
        else:
            consistent = eps <= s.epsilon_claim + 1e-9
    return ClassifyReport(label, eps, consistent)
