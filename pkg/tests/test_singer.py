from itertools import combinations

import pytest

from sidonpds.sidon import verify_pds
from sidonpds.singer import (
    METHOD_RECURRENCE,
    METHOD_TRACE,
    InvalidCoefficientsError,
    RecurrenceCoeffs,
    affine_equivalent,
    find_primitive_coeffs,
    singer_pds_recurrence,
    singer_pds_trace,
)


def test_trace_q3_is_the_classical_set():
    spds = singer_pds_trace(3)
    assert spds.v == 13 and spds.method == METHOD_TRACE
    assert verify_pds(spds.elems, 13)
    assert affine_equivalent(13, spds.elems, (0, 1, 3, 9)) is not None


def test_trace_q2_lands_in_the_fano_orbit():
    # oracle: enumerate every 3-subset of Z_7 and keep the PDSs
    all_pds = [s for s in combinations(range(7), 3) if verify_pds(s, 7)]
    spds = singer_pds_trace(2)
    assert spds.elems in all_pds
    assert affine_equivalent(7, spds.elems, (0, 1, 3)) is not None


def test_trace_q4():
    spds = singer_pds_trace(4)
    assert spds.v == 21 and len(spds.elems) == 5
    assert verify_pds(spds.elems, 21)


def test_trace_rejects_non_prime_power():
    with pytest.raises(ValueError):
        singer_pds_trace(6)


def test_trace_is_deterministic():
    assert singer_pds_trace(5) == singer_pds_trace(5)


def test_affine_images_stay_pds():
    spds = singer_pds_trace(4)
    v = spds.v
    for a in (2, 5, 8):  # units mod 21
        for b in (0, 1, 17):
            img = tuple(sorted((a * x + b) % v for x in spds.elems))
            assert verify_pds(img, v)


def test_find_primitive_coeffs_q2_first_in_scan_order():
    coeffs = find_primitive_coeffs(2)
    assert (coeffs.a1, coeffs.a2, coeffs.a3) == (0, 1, 1)


def test_find_primitive_coeffs_a3_nonzero():
    for q in (2, 3, 4, 5, 7, 9):
        assert find_primitive_coeffs(q).a3 != 0


def test_find_primitive_coeffs_random_mode():
    import random

    coeffs = find_primitive_coeffs(5, rng=random.Random(11))
    # whatever triple came out must drive a valid construction
    assert verify_pds(singer_pds_recurrence(5, coeffs).elems, 31)


def test_recurrence_q2_zero_positions_by_hand():
    # x_k = x_{k-2} + x_{k-3} over GF(2), seed 0,0,1:
    # 0 0 1 0 1 1 1 and period 7, zeros at 0, 1, 3
    spds = singer_pds_recurrence(2, RecurrenceCoeffs(2, 0, 1, 1))
    assert spds.elems == (0, 1, 3)
    assert spds.method == METHOD_RECURRENCE


def test_recurrence_seed_puts_0_and_1_in_the_set():
    for q in (2, 3, 4, 5):
        spds = singer_pds_recurrence(q, find_primitive_coeffs(q))
        assert 0 in spds.elems and 1 in spds.elems


def test_recurrence_agrees_with_trace_q3():
    rec = singer_pds_recurrence(3, find_primitive_coeffs(3))
    tr = singer_pds_trace(3)
    assert affine_equivalent(13, tr.elems, rec.elems) is not None


def test_recurrence_rejects_non_primitive_coeffs():
    # t^3 - t^2 - t - 1 = (t+1)^3 over GF(2): reducible
    with pytest.raises(InvalidCoefficientsError):
        singer_pds_recurrence(2, RecurrenceCoeffs(2, 1, 1, 1))


def test_recurrence_rejects_mismatched_q():
    with pytest.raises(ValueError):
        singer_pds_recurrence(3, RecurrenceCoeffs(2, 0, 1, 1))


def test_zero_count_law():
    # q^2 - 1 zeros over the full period, collapsing to q + 1 residues:
    # both counts are asserted inside the constructor, so success here is
    # the law holding; recompute the residue count for explicitness
    for q in (2, 3, 4, 5, 7, 8, 9):
        spds = singer_pds_recurrence(q, find_primitive_coeffs(q))
        assert len(spds.elems) == q + 1
        assert verify_pds(spds.elems, spds.v)


def test_constructions_agree_small_range():
    for q in (2, 3, 4, 5, 7, 8, 9, 11, 13, 16):
        tr = singer_pds_trace(q)
        rec = singer_pds_recurrence(q, find_primitive_coeffs(q))
        assert affine_equivalent(tr.v, tr.elems, rec.elems) is not None


def test_affine_equivalent_identity_and_shift():
    b = (0, 1, 3, 9)
    assert affine_equivalent(13, b, b) == (1, 0)
    shifted = tuple(sorted((x + 5) % 13 for x in b))
    assert affine_equivalent(13, b, shifted) == (1, 5)


def test_affine_equivalent_none_cases():
    assert affine_equivalent(13, (0, 1, 3, 9), (0, 1, 2, 3)) is None
    assert affine_equivalent(13, (0, 1), (0, 1, 2)) is None


def test_affine_equivalent_witness_is_sound():
    tr = singer_pds_trace(5)
    rec = singer_pds_recurrence(5, find_primitive_coeffs(5))
    a, b = affine_equivalent(31, tr.elems, rec.elems)
    image = sorted((a * x + b) % 31 for x in tr.elems)
    assert tuple(image) == rec.elems
