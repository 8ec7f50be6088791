from collections import Counter

import numpy as np
import pytest

from diva.orders import PartialPreference, TotalOrder, ValidationError, initial_extension
from diva.sampling import SamplerConfig, make_rng, sample_extension, sample_extensions

from conftest import FIXTURE_POSETS


def test_config_validation():
    with pytest.raises(ValidationError):
        SamplerConfig(num_extensions=0)
    with pytest.raises(ValidationError):
        SamplerConfig(num_iterations=-1)
    with pytest.raises(ValidationError):
        SamplerConfig(position_weighting="cubic")


def test_unique_extension_is_fixed_point():
    chain = FIXTURE_POSETS["chain3"]
    start = initial_extension(chain)
    for iterations in (0, 1, 57):
        out = sample_extension(chain, start, iterations, make_rng(3))
        assert out.sequence == ("a", "b", "c")


def test_zero_iterations_is_identity():
    for p in FIXTURE_POSETS.values():
        start = initial_extension(p)
        assert sample_extension(p, start, 0, make_rng(0)).sequence == start.sequence


def test_bad_start_rejected():
    p = FIXTURE_POSETS["v3"]
    with pytest.raises(ValidationError):
        sample_extension(p, TotalOrder(("b", "a", "c")), 5, make_rng(0))
    with pytest.raises(ValidationError):
        sample_extension(p, TotalOrder(("a", "b")), 5, make_rng(0))


def test_every_sample_is_an_extension():
    rng = make_rng(11)
    for name, p in FIXTURE_POSETS.items():
        for ext in sample_extensions(p, 100, 40, rng):
            assert ext.extends(p), name


def test_antichain_two_is_a_fair_coin():
    anti = FIXTURE_POSETS["antichain2"]
    counts = Counter(
        e.sequence for e in sample_extensions(anti, 10_000, 20, make_rng(5))
    )
    assert abs(counts[("a", "b")] / 10_000 - 0.5) <= 0.02


def test_v3_uniform_over_three_extensions():
    p = FIXTURE_POSETS["v3"]
    counts = Counter(e.sequence for e in sample_extensions(p, 10_000, 50, make_rng(6)))
    assert set(counts) == {("a", "b", "c"), ("a", "c", "b"), ("c", "a", "b")}
    for seq, c in counts.items():
        assert abs(c / 10_000 - 1 / 3) <= 0.02, seq


def test_quadratic_weighting_also_uniform():
    p = FIXTURE_POSETS["two_plus_two"]
    counts = Counter(
        e.sequence for e in sample_extensions(p, 12_000, 60, make_rng(8),
                                              position_weighting="quadratic")
    )
    assert len(counts) == 6
    for seq, c in counts.items():
        assert abs(c / 12_000 - 1 / 6) <= 0.02, seq


def test_restart_independence_from_explicit_start():
    # restarting from a non-default start still yields valid, well-spread samples
    p = FIXTURE_POSETS["antichain3"]
    start = TotalOrder(("c", "b", "a"))
    seen = {e.sequence for e in sample_extensions(p, 500, 60, make_rng(9), start=start)}
    assert len(seen) == 6


def test_single_item_and_empty_domains():
    single = PartialPreference(["only"])
    assert sample_extension(single, initial_extension(single), 10, make_rng(0)).sequence == ("only",)
    empty = PartialPreference()
    assert sample_extension(empty, initial_extension(empty), 10, make_rng(0)).sequence == ()


def test_seeded_reproducibility():
    p = FIXTURE_POSETS["layers222"]
    a = [e.sequence for e in sample_extensions(p, 50, 30, make_rng(123))]
    b = [e.sequence for e in sample_extensions(p, 50, 30, make_rng(123))]
    assert a == b
