import pytest
from hypothesis import given, settings, strategies as st

from qpfaff.partitions import (Partition, boulet_bijection, boulet_merge, boulet_split, count_ordinary_dp,
                               enumerate_partitions, omega, omega_weight, stats)

partitions = st.lists(st.integers(1, 8), max_size=8).map(lambda ps: Partition.of(*ps))


def test_text_format():
    assert str(Partition.parse("5,4,4,1")) == "5,4,4,1"
    assert str(Partition.parse("-")) == "-"
    assert Partition.parse("-").size == 0
    with pytest.raises(ValueError):
        Partition.parse("3,x")
    with pytest.raises(ValueError):
        Partition((1, 3))


def test_weight_of_sample():
    assert omega(Partition.of(5, 4, 4, 1)).render() == "a^5*b^4*c^3*d^2"
    assert omega_weight(Partition()).degree == 0


@given(partitions)
def test_weight_degree_is_size(lam):
    assert omega_weight(lam).degree == lam.size


def test_conjugation_is_an_involution():
    for n in range(21):
        for lam in enumerate_partitions("ordinary", n, max_size=20):
            if lam.size == n:
                assert lam.conjugate().conjugate().parts == lam.parts


def test_enumeration_matches_dp_count():
    for N in range(7):
        counts = [0] * 13
        for lam in enumerate_partitions("ordinary", N, max_size=12):
            counts[lam.size] += 1
        assert counts == count_ordinary_dp(N, 12)


def test_enumeration_starts_with_empty_and_is_duplicate_free():
    out = list(enumerate_partitions("strict", 5))
    assert str(out[0]) == "-"
    assert len(out) == len(set(out)) == 32


@given(partitions)
@settings(max_examples=80)
def test_bijection_roundtrip_and_multiplicativity(lam):
    mu, nu = boulet_split(lam)
    assert mu.strict
    assert boulet_merge(mu, nu).parts == lam.parts
    assert omega(lam) == omega(mu) * omega(nu)
    assert lam.length == mu.length + nu.length
    assert boulet_bijection(boulet_bijection(lam), "inverse").parts == lam.parts


def test_stats_is_well_formed():
    conj, odd, odd_conj = stats(Partition.of(5, 4, 4, 1))
    assert conj.parts == (4, 3, 3, 3, 1)
    # the conjugate 4,3,3,3,1 has four odd parts
    assert (odd, odd_conj) == (2, 4)


def test_enumeration_order_is_decreasing_lexicographic_after_empty():
    out = [p.parts for p in enumerate_partitions("ordinary", 3, max_size=4)]
    assert out[0] == ()
    assert out[1:] == sorted(out[1:], reverse=True)
    assert [str(p) for p in enumerate_partitions("strict", 2)] == ["-", "2,1", "2", "1"]
