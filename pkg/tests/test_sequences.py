"""Sequence generators against brute-force autocorrelation oracles."""

import math

import numpy as np
import pytest

import oracles
from convsense import sequences as seqs


def _offpeak_max(values) -> float:
    n = len(values)
    return max(abs(oracles.periodic_autocorr(values, lag))
               for lag in range(1, n))


# ---------------------------------------------------------------------------
# perfect (zero off-peak autocorrelation) kinds
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("n,gamma", [(16, 1), (17, 1), (64, 3), (63, 2),
                                     (121, 5)])
def test_fzc_perfect_autocorrelation(n, gamma):
    s = seqs.fzc(n, gamma)
    assert np.allclose(np.abs(s.values), 1.0, atol=1e-12)
    assert _offpeak_max(s.values) < 1e-9
    assert seqs.classify(s).label == "perfect"


def test_fzc_rejects_non_coprime_gamma():
    with pytest.raises(ValueError):
        seqs.fzc(12, 3)


@pytest.mark.parametrize("n", [16, 25, 36, 49, 100, 101])
def test_extended_polyphase_unimodular_real_filter(n):
    # quadratic-phase spectrum: unimodular, and conjugate-symmetric so
    # the circulant filter it induces is real
    s = seqs.extended_polyphase(n)
    assert np.allclose(np.abs(s.values), 1.0, atol=1e-12)
    filt = np.fft.ifft(s.values)
    assert np.max(np.abs(filt.imag)) < 1e-10
    # spot-check entries against the stated formula
    import cmath
    for k in (1, n // 2 - 1 if n % 2 == 0 else (n - 1) // 2):
        want = cmath.exp(-1j * cmath.pi * k * k / n)
        assert abs(s.values[k] - want) < 1e-10


@pytest.mark.parametrize("degree", [3, 4, 5, 6])
def test_perfect_binary_from_m_autocorrelation(degree):
    base = seqs.m_sequence(degree)
    s = seqs.perfect_binary_from_m(base)
    n = s.values.size
    assert n == 2 ** degree - 1
    # off-peak periodic autocorrelation is exactly zero
    assert _offpeak_max(s.values) < 1e-9
    # two amplitude levels only (the flipped construction is not bipolar)
    levels = np.unique(np.round(np.abs(s.values), 9))
    assert levels.size <= 2


# ---------------------------------------------------------------------------
# m-sequences
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("degree", [3, 4, 5, 7, 9])
def test_m_sequence_two_level_autocorrelation(degree):
    s = seqs.m_sequence(degree)
    n = 2 ** degree - 1
    assert s.values.size == n
    vals = s.values.real
    assert np.array_equal(np.abs(vals), np.ones(n))  # bipolar
    assert abs(int(np.sum(vals))) == 1               # balanced
    for lag in range(1, n):
        r = oracles.periodic_autocorr(vals, lag)
        assert abs(r.imag) < 1e-12
        assert round(r.real) == -1                   # two-level: N and -1


def test_m_sequence_period_is_maximal():
    # the LFSR state must not repeat before 2^d - 1 steps: all cyclic
    # shifts of the sequence are distinct
    s = seqs.m_sequence(5).values.real.astype(int)
    shifts = {tuple(np.roll(s, k)) for k in range(s.size)}
    assert len(shifts) == s.size


# ---------------------------------------------------------------------------
# Golay pairs
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("n", [2, 8, 10, 16, 20, 26, 52, 104])
def test_golay_pair_complementary_exact(n):
    pair = seqs.golay_pair(n)
    assert oracles.is_complementary_pair(pair.a, pair.b)


def test_golay_sequence_is_pair_member():
    pair = seqs.golay_pair(20)
    s = seqs.golay(20)
    assert np.array_equal(s.values.real.astype(int), pair.a)


@pytest.mark.parametrize("n", [3, 6, 12, 15, 50])
def test_golay_inadmissible_lengths_rejected(n):
    assert not seqs.admissible_golay_length(n)
    with pytest.raises(ValueError):
        seqs.golay_pair(n)


@pytest.mark.parametrize("n", [20, 21, 52, 53])
def test_extended_golay_lengths(n):
    s = seqs.extended_golay(n)
    assert s.values.size == n
    assert np.array_equal(np.abs(s.values.real), np.ones(n))


# ---------------------------------------------------------------------------
# Legendre
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("p", [7, 11, 19, 31, 103])
def test_legendre_matches_euler_criterion(p):
    s = seqs.legendre(p)
    vals = s.values.real.astype(int)
    assert vals[0] == 1  # index 0 convention: +1
    for a in range(1, p):
        assert vals[a] == oracles.legendre_symbol(a, p)


def test_legendre_rejects_composite():
    with pytest.raises(ValueError):
        seqs.legendre(15)


# ---------------------------------------------------------------------------
# random baselines
# ---------------------------------------------------------------------------

def test_random_phase_reproducible_and_unimodular():
    a = seqs.random_phase(64, 7)
    b = seqs.random_phase(64, 7)
    c = seqs.random_phase(64, 8)
    assert np.array_equal(a.values, b.values)
    assert not np.array_equal(a.values, c.values)
    assert np.allclose(np.abs(a.values), 1.0, atol=1e-12)


def test_random_binary_reproducible_and_bipolar():
    a = seqs.random_binary(64, 3)
    b = seqs.random_binary(64, 3)
    assert np.array_equal(a.values, b.values)
    assert set(np.unique(a.values.real)) <= {-1.0, 1.0}


# ---------------------------------------------------------------------------
# autocorrelation helpers and classification
# ---------------------------------------------------------------------------

def test_autocorr_periodic_matches_loops():
    rng = np.random.default_rng(0)
    x = rng.standard_normal(17) + 1j * rng.standard_normal(17)
    full = seqs.autocorr_periodic_all(x)
    for lag in range(17):
        want = oracles.periodic_autocorr(x, lag)
        got = seqs.autocorr_periodic(x, lag)
        assert abs(got - want) < 1e-9 * max(1.0, abs(want))
        assert abs(full[lag] - want) < 1e-9 * max(1.0, abs(want))


def test_autocorr_aperiodic_matches_loops():
    rng = np.random.default_rng(1)
    x = rng.standard_normal(13) + 1j * rng.standard_normal(13)
    for lag in range(13):
        want = oracles.aperiodic_autocorr(x, lag)
        got = seqs.autocorr_aperiodic(x, lag)
        assert abs(got - want) < 1e-9 * max(1.0, abs(want))


def test_classify_labels():
    assert seqs.classify(seqs.fzc(32, 1)).label == "perfect"
    assert seqs.classify(seqs.m_sequence(5)).label == "nearly_perfect"
    rep = seqs.classify(seqs.random_phase(256, 0))
    assert rep.label == "neither"
    assert rep.claim_consistent is None


def test_m_sequence_epsilon_claim_consistent():
    rep = seqs.classify(seqs.m_sequence(6))
    assert rep.epsilon_observed == pytest.approx(1.0, abs=1e-9)
    assert rep.claim_consistent is True


def test_sequence_values_immutable():
    s = seqs.fzc(8, 1)
    with pytest.raises((ValueError, RuntimeError)):
        s.values[0] = 0.0
