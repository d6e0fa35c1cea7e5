import json

import pytest

from services.coxeter.cartan import (
    CartanDatum,
    MalformedCartan,
    NonFiniteType,
    UnknownType,
    load_cartan_file,
    parse_label,
    validate_matrix,
)
from services.coxeter.root_system_service import RootSystemService


@pytest.fixture
def root_service():
    return RootSystemService()


def test_parse_label_type_a():
    datum = parse_label("A3")
    assert datum.label == "A3"
    assert datum.rank == 3
    assert datum.matrix == ((2, -1, 0), (-1, 2, -1), (0, -1, 2))
    assert datum.is_type_a()


def test_parse_label_bourbaki_double_bonds():
    assert parse_label("B2").matrix == ((2, -1), (-2, 2))
    assert parse_label("C2").matrix == ((2, -2), (-1, 2))
    assert parse_label("G2").matrix == ((2, -3), (-1, 2))
    assert parse_label("F4").matrix[2][1] == -2
    assert parse_label("B3").matrix[2][1] == -2
    assert parse_label("C3").matrix[1][2] == -2


def test_parse_label_d_and_e_branches():
    d4 = parse_label("D4").matrix
    assert d4[1][3] == -1 and d4[2][3] == 0
    e6 = parse_label("E6").matrix
    assert e6[0][2] == -1 and e6[1][3] == -1 and e6[0][1] == 0


def test_parse_label_products():
    datum = parse_label("a1xa1")
    assert datum.label == "A1xA1"
    assert datum.matrix == ((2, 0), (0, 2))
    assert datum.components == (("A", 1), ("A", 1))
    assert not datum.is_type_a()
    assert parse_label("A1xB2").rank == 3


@pytest.mark.parametrize("label", ["Z9", "B1", "C1", "D2", "E5", "E9", "F3", "G3", "A0", "", "A", "3", "A2x"])
def test_parse_label_rejects_unknown(label):
    with pytest.raises(UnknownType):
        parse_label(label)


@pytest.mark.parametrize(
    "matrix",
    [
        [],
        [[2, -1], [-1]],
        [[3, -1], [-1, 2]],
        [[2, 1], [1, 2]],
        [[2, -1], [0, 2]],
        [[2, -1.5], [-1, 2]],
        [[2, True], [-1, 2]],
    ],
)
def test_validate_matrix_rejects(matrix):
    with pytest.raises(MalformedCartan):
        validate_matrix(matrix)


def test_load_cartan_file_list(tmp_path):
    path = tmp_path / "a2.json"
    path.write_text(json.dumps([[2, -1], [-1, 2]]))
    datum = load_cartan_file(path)
    assert datum.label == "custom"
    assert datum.matrix == parse_label("A2").matrix


def test_load_cartan_file_object(tmp_path):
    path = tmp_path / "g2.json"
    path.write_text(json.dumps({"label": "my-g2", "matrix": [[2, -3], [-1, 2]]}))
    datum = load_cartan_file(path)
    assert datum.label == "my-g2"
    assert datum.rank == 2


@pytest.mark.parametrize("content", ["not json", "{}", "[[2, 1], [1, 2]]"])
def test_load_cartan_file_rejects(tmp_path, content):
    path = tmp_path / "bad.json"
    path.write_text(content)
    with pytest.raises(MalformedCartan):
        load_cartan_file(path)


def test_load_cartan_file_missing(tmp_path):
    with pytest.raises(MalformedCartan):
        load_cartan_file(tmp_path / "missing.json")


@pytest.mark.parametrize(
    "label, count",
    [
        ("A1", 2), ("A2", 6), ("A3", 12), ("B2", 8), ("B3", 18), ("C3", 18),
        ("D4", 24), ("G2", 12), ("F4", 48), ("E6", 72), ("E7", 126), ("E8", 240),
        ("A1xA1", 4),
    ],
)
def test_root_counts(root_service, label, count):
    system = root_service.build_root_system(parse_label(label))
    assert len(system.roots) == count
    assert system.positive_count == count // 2


def test_root_indexing(root_service):
    system = root_service.build_root_system(parse_label("B3"))
    n = system.positive_count
    for k in range(n):
        assert system.roots[k + n] == tuple(-c for c in system.roots[k])
        assert system.negate(k) == k + n
        assert system.negate(k + n) == k
        assert system.lookup(system.roots[k]) == k
    for i in range(system.rank):
        assert system.roots[i] == tuple(1 if j == i else 0 for j in range(system.rank))
        assert system.height(i) == 1


def test_highest_roots(root_service):
    g2 = root_service.build_root_system(parse_label("G2"))
    assert g2.roots[g2.positive_count - 1] == (3, 2)
    b2 = root_service.build_root_system(parse_label("B2"))
    assert b2.roots[b2.positive_count - 1] == (1, 2)


def test_simple_action_is_involution(root_service):
    system = root_service.build_root_system(parse_label("G2"))
    for i, action in enumerate(system.simple_action):
        assert action[i] == system.negate(i)
        for k in range(len(system.roots)):
            assert action[action[k]] == k


def test_simple_reflection_formula(root_service):
    system = root_service.build_root_system(parse_label("B2"))
    # s_2(alpha_1) = alpha_1 - a_21 alpha_2 = alpha_1 + 2 alpha_2
    assert system.roots[system.simple_action[1][0]] == (1, 2)
    # s_1(alpha_2) = alpha_2 + alpha_1
    assert system.roots[system.simple_action[0][1]] == (1, 1)


def test_root_system_cached(root_service):
    datum = parse_label("A2")
    assert root_service.build_root_system(datum) is root_service.build_root_system(datum)


@pytest.mark.parametrize("matrix", [((2, -2), (-2, 2)), ((2, -3), (-3, 2)), ((2, -1, -1), (-1, 2, -1), (-1, -1, 2))])
def test_non_finite_type(matrix):
    service = RootSystemService(root_cap=60)
    with pytest.raises(NonFiniteType):
        service.build_root_system(CartanDatum(label="custom", matrix=matrix))
