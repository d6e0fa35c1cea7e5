import pytest
from hypothesis import given
from hypothesis import strategies as st

from services.coxeter.coxeter_service import CoxeterService
from services.coxeter.root_system_service import RootSystemService
from services.coxeter.weyl_group_service import BadIndex, BadSyntax, WeylGroup
from services.extensions.ext_service import ext_service_for
from services.extensions.polynomial import IntPolynomial
from services.extensions.rpoly_service import rpoly_service_for
from tests.property.settings import QUICK_SETTINGS, SLOW_SETTINGS, STANDARD_SETTINGS

_service = CoxeterService(RootSystemService())
A3 = _service.group("A3")
B3 = _service.group("B3")
G2 = _service.group("G2")
GROUPS = st.sampled_from([A3, B3, G2])


def words(group: WeylGroup, max_size: int = 14):
    return st.lists(st.integers(min_value=0, max_value=group.rank - 1), max_size=max_size)


@st.composite
def group_and_word(draw):
    group = draw(GROUPS)
    return group, draw(words(group))


@st.composite
def group_and_two_words(draw):
    group = draw(GROUPS)
    return group, draw(words(group)), draw(words(group))


coefficient_lists = st.lists(st.integers(min_value=-50, max_value=50), max_size=6)


@given(group_and_word())
@STANDARD_SETTINGS
def test_length_parity_and_bound(case):
    group, word = case
    w = group.from_word(word)
    assert group.length(w) <= len(word)
    assert group.length(w) % 2 == len(word) % 2


@given(group_and_word())
@STANDARD_SETTINGS
def test_reduced_word_round_trip(case):
    group, word = case
    w = group.from_word(word)
    reduced = group.to_reduced_word(w)
    assert len(reduced) == group.length(w)
    assert group.from_word([i - 1 for i in reduced]) == w
    assert group.parse_element(group.format_element(w)) == w


@given(group_and_word())
@STANDARD_SETTINGS
def test_inverse_reverses_words(case):
    group, word = case
    w = group.from_word(word)
    assert group.inverse(w) == group.from_word(list(reversed(word)))
    assert group.inverse(group.inverse(w)) == w


@given(group_and_two_words())
@STANDARD_SETTINGS
def test_multiplication_is_concatenation(case):
    group, left, right = case
    product = group.multiply(group.from_word(left), group.from_word(right))
    assert product == group.from_word(left + right)


@given(group_and_word())
@STANDARD_SETTINGS
def test_descents_shorten(case):
    group, word = case
    w = group.from_word(word)
    for i in range(group.rank):
        shorter = group.length(group.mult_simple_right(w, i)) < group.length(w)
        assert group.right_descent(w, i) == shorter


@given(group_and_word(), st.data())
@STANDARD_SETTINGS
def test_subwords_are_below(case, data):
    group, word = case
    w = group.from_word(word)
    reduced = [i - 1 for i in group.to_reduced_word(w)]
    mask = data.draw(st.lists(st.booleans(), min_size=len(reduced), max_size=len(reduced)))
    v = group.from_word([i for i, keep in zip(reduced, mask) if keep])
    assert group.bruhat_leq(v, w)
    assert group.bruhat_leq(group.identity, w)
    assert group.bruhat_leq(w, group.longest_element())


@given(group_and_two_words())
@SLOW_SETTINGS
def test_ext_and_r_agree(case):
    group, left, right = case
    v, w = group.from_word(left), group.from_word(right)
    ext, rpoly = ext_service_for(group), rpoly_service_for(group)
    r = rpoly.r_polynomial(v, w)
    assert abs(r.coefficient(1)) == ext.ext1_dim(v, w)
    if group.bruhat_leq(v, w):
        assert ext.hom_dim(v, w) == 1
        assert 0 <= ext.ext1_dim(v, w) <= group.length(w) - group.length(v)
        if v != w:
            assert r.evaluate(1) == 0
    else:
        assert r.is_zero()


@given(coefficient_lists, coefficient_lists, coefficient_lists)
@STANDARD_SETTINGS
def test_polynomial_ring_laws(a, b, c):
    x, y, z = IntPolynomial.from_list(a), IntPolynomial.from_list(b), IntPolynomial.from_list(c)
    assert (x + y) * z == x * z + y * z
    assert x * y == y * x
    assert (x - y) + y == x


@given(coefficient_lists, coefficient_lists, st.integers(min_value=-5, max_value=10))
@STANDARD_SETTINGS
def test_evaluation_is_a_homomorphism(a, b, point):
    x, y = IntPolynomial.from_list(a), IntPolynomial.from_list(b)
    assert (x * y).evaluate(point) == x.evaluate(point) * y.evaluate(point)
    assert (x + y).evaluate(point) == x.evaluate(point) + y.evaluate(point)


@given(st.integers(min_value=4, max_value=1000))
@QUICK_SETTINGS
def test_out_of_range_generators_rejected(index):
    with pytest.raises(BadIndex):
        A3.parse_element(f"1 {index}")


@given(st.text(alphabet="abcxyz!?", min_size=1, max_size=5))
@QUICK_SETTINGS
def test_garbage_rejected(text):
    with pytest.raises(BadSyntax):
        A3.parse_element(text)
