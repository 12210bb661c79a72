import pytest

from benelux_pairs import Kind, brute_force_pairs, radical_oracle


def test_small_bound():
    pairs = brute_force_pairs(10)
    assert [(int(p.kind), p.m, p.n) for p in pairs] == [
        (2, 2, 3),
        (1, 2, 8),
        (2, 3, 8),
    ]


def test_sorted_by_m_then_n():
    keys = [p.key for p in brute_force_pairs(5000)]
    assert keys == sorted(keys)


def test_pairs_verify_by_definition():
    for pair in brute_force_pairs(5000):
        rm, rm1 = radical_oracle(pair.m), radical_oracle(pair.m + 1)
        rn, rn1 = radical_oracle(pair.n), radical_oracle(pair.n + 1)
        assert (pair.rad_m, pair.rad_m_plus_1) == (rm, rm1)
        if pair.kind is Kind.FIRST:
            assert rm == rn and rm1 == rn1
        else:
            assert rm == rn1 and rm1 == rn


def test_limit_too_small():
    with pytest.raises(ValueError):
        brute_force_pairs(2)
