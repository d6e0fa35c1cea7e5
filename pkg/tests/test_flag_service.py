import numpy
import pytest

from services.extensions.polynomial import IntPolynomial
from services.extensions.rpoly_service import rpoly_service_for
from services.oracle.finite_field import PrimeField
from services.oracle.flag_service import (
    BudgetExceeded,
    DimensionUnsupported,
    FlagService,
    InsufficientPoints,
    TypeUnsupported,
    flag_count,
    opposite_flag,
    standard_flag,
)
from tests.conftest import element


@pytest.mark.parametrize("n, p, count", [(2, 2, 3), (2, 3, 4), (3, 2, 21), (3, 3, 52), (4, 2, 315)])
def test_flag_count(n, p, count):
    assert flag_count(n, p) == count


@pytest.mark.parametrize("n, p", [(2, 2), (2, 5), (3, 2), (3, 3), (4, 2)])
def test_enumeration_visits_each_flag_once(flag_service, n, p):
    flags = flag_service.all_flags(n, PrimeField(p))
    assert len(flags) == flag_count(n, p)
    steps = {tuple(tuple(map(tuple, s)) for s in flag.steps) for flag in flags}
    assert len(steps) == len(flags)


def test_enumeration_shards_partition(flag_service):
    field = PrimeField(3)
    sizes = [sum(1 for _ in flag_service.enumerate_flags(3, field, first_pivot=c)) for c in range(3)]
    assert sum(sizes) == flag_count(3, 3)
    assert sizes == [36, 12, 4]


def test_prime_field_validation():
    for bad in (1, 4, 9, 11):
        with pytest.raises(ValueError):
            PrimeField(bad)


def test_row_reduce():
    field = PrimeField(2)
    reduced = field.row_reduce(numpy.array([[1, 1, 0], [1, 1, 0], [0, 1, 1]]))
    assert reduced.tolist() == [[1, 0, 1], [0, 1, 1]]
    assert field.rank(numpy.array([[1, 1], [1, 1]])) == 1
    assert PrimeField(3).rank(numpy.array([[1, 2], [2, 1]])) == 1
    assert PrimeField(5).rank(numpy.array([[1, 2], [2, 1]])) == 2
    assert PrimeField(7).inv(3) == 5


def test_budget_exceeded():
    service = FlagService(budget=10)
    with pytest.raises(BudgetExceeded) as info:
        service.all_flags(3, PrimeField(2))
    assert info.value.predicted == 21
    assert info.value.budget == 10


@pytest.mark.parametrize("n", [1, 5])
def test_dimension_unsupported(flag_service, n):
    with pytest.raises(DimensionUnsupported):
        flag_service.all_flags(n, PrimeField(2))


def test_relative_position_of_coordinate_flags(flag_service, a2):
    std, opp = standard_flag(3, 2), opposite_flag(3, 2)
    assert flag_service.relative_position(a2, std, std) == a2.identity
    assert flag_service.relative_position(a2, std, opp) == a2.longest_element()
    assert flag_service.relative_position(a2, opp, std) == a2.longest_element()


def test_cells_partition_flags(flag_service, a2):
    field = PrimeField(3)
    std = standard_flag(3, 3)
    sizes = {}
    for flag in flag_service.enumerate_flags(3, field):
        w = flag_service.relative_position(a2, std, flag)
        sizes[w] = sizes.get(w, 0) + 1
    for w in a2.enumerate_group():
        assert sizes[w] == 3 ** a2.length(w)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_a1_counts(flag_service, a1, p):
    field = PrimeField(p)
    e, s = a1.identity, a1.simple(0)
    assert flag_service.count_richardson(a1, e, s, field) == p - 1
    assert flag_service.count_richardson(a1, s, s, field) == 1
    assert flag_service.count_richardson(a1, e, e, field) == 1
    assert flag_service.count_richardson(a1, s, e, field) == 0


def test_a2_longest_counts(flag_service, a2):
    w0 = a2.longest_element()
    assert flag_service.count_richardson(a2, a2.identity, w0, PrimeField(2)) == 3
    assert flag_service.count_richardson(a2, a2.identity, w0, PrimeField(3)) == 14


@pytest.mark.parametrize("p", [2, 3, 5])
def test_a2_counts_match_r_polynomials(flag_service, a2, p):
    field = PrimeField(p)
    rpoly = rpoly_service_for(a2)
    for v in a2.enumerate_group():
        for w in a2.enumerate_group():
            assert flag_service.count_richardson(a2, v, w, field) == rpoly.r_polynomial(v, w).evaluate(p)


def test_counts_independent_of_threads(a2):
    field = PrimeField(3)
    assert FlagService(threads=3).richardson_counts(a2, field) == FlagService(threads=1).richardson_counts(a2, field)


def test_type_unsupported(flag_service, b2):
    with pytest.raises(TypeUnsupported):
        flag_service.count_richardson(b2, b2.identity, b2.longest_element(), PrimeField(2))


def test_interpolation(flag_service, a2):
    fields = [PrimeField(p) for p in (2, 3, 5, 7)]
    w0 = a2.longest_element()
    r = flag_service.interpolate_r(a2, a2.identity, w0, fields)
    assert r == IntPolynomial.from_list([-1, 2, -2, 1])
    rpoly = rpoly_service_for(a2)
    for v, w in a2.comparable_pairs():
        assert flag_service.interpolate_r(a2, v, w, fields) == rpoly.r_polynomial(v, w)


def test_interpolation_needs_enough_primes(flag_service, a2):
    with pytest.raises(InsufficientPoints):
        flag_service.interpolate_r(a2, a2.identity, a2.longest_element(), [PrimeField(2), PrimeField(2)])
    s1 = element(a2, "1")
    assert flag_service.interpolate_r(a2, s1, s1, [PrimeField(5)]) == IntPolynomial.constant(1)


@pytest.mark.slow
def test_a3_counts_over_f2(flag_service, a3):
    field = PrimeField(2)
    rpoly = rpoly_service_for(a3)
    counts = flag_service.richardson_counts(a3, field)
    assert sum(counts.values()) == 315
    for v in a3.enumerate_group():
        for w in a3.enumerate_group():
            assert counts.get((v, w), 0) == rpoly.r_polynomial(v, w).evaluate(2)


def test_counts_kept_apart_for_unlabelled_matrices(coxeter_service, tmp_path):
    (tmp_path / "rank1.json").write_text("[[2]]")
    (tmp_path / "rank2.json").write_text("[[2, -1], [-1, 2]]")
    small = coxeter_service.group_from_file(tmp_path / "rank1.json")
    large = coxeter_service.group_from_file(tmp_path / "rank2.json")
    assert small.label == large.label == "custom"
    service = FlagService()
    field = PrimeField(2)
    assert service.count_richardson(small, small.identity, small.simple(0), field) == 1
    assert service.count_richardson(large, large.identity, large.longest_element(), field) == 3
