import pytest

from services.extensions.ext_service import ExtService, ext_service_for, fill_pairs
from services.extensions.memo import MemoConflict, PairMemo
from services.extensions.rpoly_service import rpoly_service_for
from tests.conftest import element


def test_a1_values(a1):
    ext = ExtService(a1)
    e, s = a1.identity, a1.simple(0)
    assert ext.ext1_dim(e, s) == 1
    assert ext.ext1_dim(e, e) == 0
    assert ext.ext1_dim(s, e) == 0
    assert [value for _, _, value in ext.ext1_table()] == [0, 1, 0]


def test_a2_values(a2):
    ext = ExtService(a2)
    w0 = a2.longest_element()
    assert ext.ext1_dim(a2.identity, w0) == 2
    assert ext.ext1_dim(element(a2, "1"), w0) == 2
    assert ext.ext1_dim(a2.identity, element(a2, "1 2")) == 2
    assert ext.ext1_dim(element(a2, "1"), element(a2, "1 2")) == 1
    assert ext.ext1_dim(element(a2, "1"), element(a2, "2")) == 0


def test_hom_dim(a2):
    ext = ExtService(a2)
    assert ext.hom_dim(a2.identity, a2.longest_element()) == 1
    assert ext.hom_dim(a2.longest_element(), a2.identity) == 0
    assert ext.hom_dim(element(a2, "1"), element(a2, "2")) == 0


def test_covering_pairs_have_dimension_one(b3):
    ext = ext_service_for(b3)
    for v, w in b3.comparable_pairs():
        if b3.length(w) - b3.length(v) == 1:
            assert ext.ext1_dim(v, w) == 1


def test_dimension_bounded_by_length_difference(b3):
    ext = ext_service_for(b3)
    for v, w, value in ext.ext1_table():
        assert 0 <= value <= b3.length(w) - b3.length(v)


@pytest.mark.parametrize("label", ["A3", "B2", "B3"])
def test_descent_independence(coxeter_service, label):
    group = coxeter_service.group(label)
    ext = ext_service_for(group)
    for v, w in group.comparable_pairs():
        if v == w:
            continue
        for i in group.right_descents(w):
            assert ext.ext1_dim_via(v, w, i) == ext.ext1_dim(v, w)


def test_via_requires_a_descent(a2):
    ext = ExtService(a2)
    with pytest.raises(ValueError):
        ext.ext1_dim_via(a2.identity, element(a2, "1"), 1)


def test_matches_linear_coefficient(coxeter_service):
    for label in ("A3", "B2", "G2"):
        group = coxeter_service.group(label)
        ext, rpoly = ext_service_for(group), rpoly_service_for(group)
        for v, w in group.comparable_pairs():
            assert abs(rpoly.r_polynomial(v, w).coefficient(1)) == ext.ext1_dim(v, w)


def test_table_is_sorted_and_complete(a2):
    rows = ExtService(a2).ext1_table()
    assert len(rows) == 19
    keys = [(a2.sort_key(v), a2.sort_key(w)) for v, w, _ in rows]
    assert keys == sorted(keys)
    assert all(a2.bruhat_leq(v, w) for v, w, _ in rows)


def test_table_independent_of_threads(coxeter_service):
    group = coxeter_service.group("B3")
    single = ExtService(group).ext1_table(threads=1)
    threaded = ExtService(group).ext1_table(threads=4)
    assert single == threaded


def test_memo_free_recomputation(a3):
    cached = ExtService(a3)
    fresh = ExtService(a3, PairMemo(enabled=False))
    for v, w in a3.comparable_pairs():
        assert fresh.ext1_dim(v, w) == cached.ext1_dim(v, w)
    assert len(fresh.memo) == 0
    assert len(cached.memo) > 0


def test_memo_is_write_once(a2):
    memo = PairMemo()
    e, w0 = a2.identity, a2.longest_element()
    assert memo.store(e, w0, 2) == 2
    assert memo.store(e, w0, 2) == 2
    assert (e, w0) in memo
    assert memo.get(e, w0) == 2
    with pytest.raises(MemoConflict):
        memo.store(e, w0, 3)


def test_shared_service_per_group(a2):
    assert ext_service_for(a2) is ext_service_for(a2)


def test_fill_pairs_generic(a1):
    rows = fill_pairs(a1, lambda v, w: a1.length(w) - a1.length(v))
    assert [value for _, _, value in rows] == [0, 1, 0]


@pytest.mark.slow
def test_a4_table(coxeter_service):
    group = coxeter_service.group("A4")
    rows = ext_service_for(group).ext1_table()
    assert len(rows) == len(group.comparable_pairs())
    w0 = group.longest_element()
    assert ext_service_for(group).ext1_dim(w0, w0) == 0
