"""Partial normalization constants along growing diagonal towers."""

import numpy as np
import pytest

from fockops import CaSequence, RealLinearMap, TruncationSpec, build_context, ca_sequence
from fockops.errors import ConfigError
from fockops.truncation import scalar_log_ca_inv


def test_equal_blocks_stay_at_one_and_bounded():
    seq = ca_sequence(TruncationSpec.constant(1.0, 1.0, 50))
    assert np.allclose(seq.ca_inv(), 1.0, atol=1e-15)
    assert seq.bounded
    assert seq.tail_bound == 0.0


def test_constant_unequal_blocks_follow_power_law_and_diverge():
    seq = ca_sequence(TruncationSpec.constant(4.0, 1.0, 20))
    for n in range(1, 21):
        want = 1.25 ** (n / 2.0)
        assert seq.ca_inv()[n - 1] == pytest.approx(want, rel=1e-12)
        assert seq.log_ca_inv[n - 1] == pytest.approx(
            scalar_log_ca_inv(4.0, 1.0, n), rel=1e-13
        )
    assert not seq.bounded


def test_decaying_perturbation_is_bounded_with_small_tail():
    # r_k = 1 + 1/k^2: increments fall like 1/(8 k^4) per the local
    # quadratic model; the long partial product is the oracle
    spec = TruncationSpec.perturbation(1.0, 1.0, 2.0, 200)
    seq = ca_sequence(spec)
    assert seq.bounded
    assert seq.tail_bound is not None and seq.tail_bound <= 1e-3

    oracle = ca_sequence(TruncationSpec.perturbation(1.0, 1.0, 2.0, 10_000))
    limit = oracle.log_ca_inv[-1]
    assert seq.log_ca_inv[-1] + seq.tail_bound >= limit - 1e-6
    assert limit - seq.log_ca_inv[-1] <= max(seq.tail_bound * 3.0, 1e-6)


def test_increments_nonnegative_and_monotone_partial_sums():
    rng = np.random.default_rng(2)
    r = rng.uniform(0.5, 3.0, size=64)
    t = rng.uniform(0.5, 3.0, size=64)
    seq = ca_sequence(TruncationSpec(tuple(r), tuple(t), 64))
    assert np.all(seq.increments >= 0.0)
    assert np.all(np.diff(seq.log_ca_inv) >= 0.0)


def test_per_term_factor_reaches_one_only_at_equality():
    spec = TruncationSpec((2.0, 3.0, 1.5), (2.0, 1.0, 1.5), 3)
    seq = ca_sequence(spec)
    assert seq.increments[0] == pytest.approx(0.0, abs=1e-15)
    assert seq.increments[1] > 1e-2
    assert seq.increments[2] == pytest.approx(0.0, abs=1e-15)


def test_matches_operator_context_constant_for_explicit_blocks():
    rng = np.random.default_rng(3)
    r = rng.uniform(0.5, 3.0, size=10)
    t = rng.uniform(0.5, 3.0, size=10)
    seq = ca_sequence(TruncationSpec(tuple(r), tuple(t), 10))
    for n in range(1, 11):
        ctx = build_context(
            RealLinearMap.from_blocks(np.diag(r[:n]), np.diag(t[:n]))
        )
        assert seq.log_ca_inv[n - 1] == pytest.approx(
            -np.log(ctx.c_a), rel=1e-12, abs=1e-12
        )


def test_validation_rejects_bad_specs():
    with pytest.raises(ConfigError):
        TruncationSpec((1.0,), (1.0,), 2)
    with pytest.raises(ConfigError):
        TruncationSpec((1.0, -1.0), (1.0, 1.0), 2)


def test_json_payload_shape():
    seq = ca_sequence(TruncationSpec.constant(2.0, 1.0, 5))
    data = seq.to_json()
    assert set(data) == {"logCaInv", "increments", "bounded", "tailBound", "note"}
    assert isinstance(seq, CaSequence)
    assert len(data["logCaInv"]) == 5
