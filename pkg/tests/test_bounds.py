import warnings
from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, strategies as st

from moore_scope import bounds
from moore_scope.bounds import (
    KNOWN_DEFECT2,
    DomainError,
    DomainWarning,
    Reason,
    Status,
    feasibility,
    moore_bound,
    n2d1_count_deg4,
    n2d_count,
    order,
    rational_str,
    reduced_order,
    regularity_threshold,
    residue_modulus,
    residue_table,
)


def naive_moore(delta, diam):
    # count vertices of the ideal BFS tree layer by layer
    total, layer = 1, delta
    for _ in range(diam):
        total += layer
        layer *= delta - 1
    return total


def test_moore_examples():
    assert moore_bound(2, 4) == 9
    assert moore_bound(3, 2) == 10
    assert moore_bound(4, 3) == 53
    assert order(4, 3, 2) == 51
    assert moore_bound(7, 2) == 50
    assert moore_bound(57, 2) == 3250


def test_moore_is_exact_at_large_diameter():
    assert moore_bound(3, 64) == 1 + 3 * (2**64 - 1)


@given(st.integers(2, 40), st.integers(1, 30))
def test_moore_matches_layer_count(delta, diam):
    assert moore_bound(delta, diam) == naive_moore(delta, diam)
    assert moore_bound(delta, 1) == delta + 1
    assert moore_bound(2, diam) == 2 * diam + 1


def test_domain_errors():
    for args in [(1, 2), (3, 0)]:
        with pytest.raises(DomainError):
            moore_bound(*args)
    with pytest.raises(DomainError):
        order(3, 2, 10)
    with pytest.raises(DomainError):
        regularity_threshold(2, 3)
    with pytest.raises(DomainError):
        n2d1_count_deg4(2)
    with pytest.raises(DomainError):
        feasibility(1, 2)


def test_regularity_threshold_examples():
    assert regularity_threshold(4, 3) == 13
    assert regularity_threshold(3, 2) == 3
    assert regularity_threshold(5, 4) == 85
    assert bounds.forces_regular(4, 3, 2)
    assert not bounds.forces_regular(3, 2, 4)
    assert not bounds.forces_regular(2, 5, 0)


def test_n2d_examples():
    assert n2d_count(4, 4) == Fraction(159, 4)
    assert n2d_count(5, 4) == 106
    assert n2d_count(5, 5) == Fraction(1704, 5)
    assert reduced_order(7, 5) == 10884
    assert reduced_order(7, 5) % 5 == 4


def test_n2d_warns_outside_domain():
    with pytest.warns(DomainWarning):
        assert n2d_count(3, 3) == Fraction(20, 3)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        n2d_count(4, 4)


def test_n2d1_examples():
    assert n2d1_count_deg4(3) == Fraction(2754, 7)
    assert n2d1_count_deg4(4) == 2862
    assert n2d1_count_deg4(5) == Fraction(234738, 11)
    assert rational_str(n2d1_count_deg4(3)) == "2754/7"
    assert rational_str(n2d1_count_deg4(4)) == "2862"


@given(st.integers(4, 60), st.integers(4, 20))
def test_rationals_are_reduced(d, diam):
    q = n2d_count(d, diam)
    assert q.denominator > 0 and gcd(q.numerator, q.denominator) == 1


@given(st.integers(2, 30).map(lambda k: 2 * k), st.integers(4, 30))
def test_even_degree_count_is_never_an_even_integer(d, diam):
    q = n2d_count(d, diam)
    assert q.denominator != 1 or q.numerator % 2 == 1
    assert feasibility(d, diam).status is Status.RULED_OUT


def test_feasibility_examples():
    v = feasibility(6, 4)
    assert v.status is Status.RULED_OUT
    assert Reason.EVEN_DEGREE in v.reasons
    assert v.upper_bound_defect >= 3

    v = feasibility(4, 3)
    assert v.status is Status.RULED_OUT and v.reasons == [Reason.FOUR_THREE]

    v = feasibility(7, 5)
    assert v.status is Status.RULED_OUT
    assert Reason.RESIDUE_ZERO_TWO in v.reasons
    assert Reason.ORDER_RESIDUE in v.reasons
    assert v.upper_bound_defect == 4

    assert feasibility(4, 2).status is Status.KNOWN_EXISTS


def test_catalogue_pairs_are_known():
    for (d, diam) in KNOWN_DEFECT2:
        v = feasibility(d, diam)
        assert v.status is Status.KNOWN_EXISTS and not v.reasons
    assert feasibility(2, 2).notes


def test_small_cases():
    assert feasibility(5, 1).reasons == [Reason.DIAMETER_ONE]
    assert Reason.DEGREE_TWO in feasibility(2, 5).reasons
    assert Reason.CUBIC_CATALOGUE in feasibility(3, 4).reasons
    assert feasibility(3, 4).upper_bound_defect == 3
    # Moore graphs may exist here, so no bound beyond the Moore bound itself
    assert feasibility(57, 2).upper_bound_defect == 0
    assert feasibility(6, 2).status is Status.OPEN
    assert feasibility(6, 2).conjectures


def test_open_cases_carry_conjectures():
    v = feasibility(11, 5)
    assert v.status is Status.OPEN
    assert v.upper_bound_defect == 2
    assert len(v.conjectures) == 2


def test_verdict_dict_shape():
    d = feasibility(4, 3).to_dict()
    assert d["status"] == "RuledOut"
    assert d["reasons"] == [{"code": "four_three", "anchor": Reason.FOUR_THREE.anchor}]
    with pytest.raises(ValueError):
        bounds.FeasibilityVerdict(3, 3, Status.RULED_OUT)


TABLE = {
    4: ({1, 3}, 4),
    5: ({1}, 10),
    6: ({1}, 6),
    7: ({1}, 14),
    8: ({1, 5}, 8),
    9: ({1}, 18),
    10: ({1, 9}, 10),
    11: ({1}, 22),
    12: ({1, 7}, 12),
    13: ({1}, 26),
    14: ({1, 13}, 14),
    15: ({1, 13}, 30),
    16: ({1, 9}, 16),
}


@pytest.mark.parametrize("diam", sorted(TABLE))
def test_residue_table_rows(diam):
    residues, modulus = TABLE[diam]
    assert residue_modulus(diam) == modulus
    assert set(residue_table(diam)) == residues


def test_residue_row_text():
    row = bounds.residue_rows(15, 15)[0]
    assert bounds.format_row(row) == "d≡1,13 (mod 30)"
    with pytest.raises(DomainError):
        residue_table(3)


def test_odd_prime_power_base():
    assert [bounds.odd_prime_power_base(m) for m in (3, 9, 15, 25, 27, 49, 2, 1)] == [
        3, 3, None, 5, 3, 7, None, None,
    ]
