import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

import oracles
from inertia.groups import (GroupError, abelianization, centralizer, class_index,
                            conjugacy_classes, from_cayley, from_permutations, load_group,
                            p_part_decomposition, power_class_map)
from inertia.zoo import parse_zoo, standard_zoo, zoo

ORDERS = {"sym:4": 24, "alt:5": 60, "dihedral:5": 10, "quaternion_generalized:4": 16,
          "binary_dihedral:3": 12, "binary_tetrahedral": 24, "binary_octahedral": 48,
          "binary_icosahedral": 120, "heisenberg_p:3": 27,
          "direct_product:cyclic:3+alt:4": 36}


@pytest.mark.parametrize("name,order", sorted(ORDERS.items()))
def test_zoo_orders(name, order):
    assert parse_zoo(name).order == order


def test_class_sizes_match_oracle(derived):
    for G in standard_zoo(500):
        sizes = sorted(c.size for c in conjugacy_classes(G))
        assert sizes == derived["class_sizes"][G.name], G.name


def test_class_sums_and_centralizers():
    for G in standard_zoo(200):
        classes = conjugacy_classes(G)
        assert sum(c.size for c in classes) == G.order
        assert classes[0].members == (0,)
        for c in classes:
            assert c.size * c.centralizer_order == G.order
            assert c.representative == min(c.members)


def test_abelianization_matches_oracle(derived):
    for G in standard_zoo(500):
        prof = oracles.order_profile_of_invariants(abelianization(G))
        want = {int(k): v for k, v in derived["abelian_order_profile"][G.name].items()}
        assert dict(prof) == want, G.name


@pytest.mark.parametrize("name,want", [("sym:3", [2]), ("quaternion_generalized:3", [2, 2]),
                                       ("alt:4", [3]), ("dihedral:4", [2, 2]),
                                       ("binary_tetrahedral", [3]), ("binary_icosahedral", []),
                                       ("cyclic:12", [12])])
def test_abelianization_values(name, want):
    assert abelianization(parse_zoo(name)) == want


def test_binary_tetrahedral_has_one_involution():
    G = parse_zoo("binary_tetrahedral")
    assert int((G.element_orders == 2).sum()) == 1


def test_cayley_roundtrip():
    G = parse_zoo("dihedral:4")
    H = from_cayley("copy", G.table.tolist())
    assert H.order == 8
    assert sorted(c.size for c in conjugacy_classes(H)) == sorted(
        c.size for c in conjugacy_classes(G))


def test_cayley_rejects_non_group():
    with pytest.raises(GroupError):
        from_cayley("bad", [[0, 1], [1, 1]])
    # Latin square that is not associative
    bad = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    with pytest.raises(GroupError):
        from_cayley("bad", bad)


def test_load_group_forms(tmp_path):
    G = parse_zoo("sym:3")
    p = tmp_path / "g.json"
    p.write_text(json.dumps(G.serialize()))
    for spec in (G.serialize(), p, json.dumps(G.serialize())):
        assert load_group(spec).order == 6
    with pytest.raises(GroupError):
        load_group({"name": "x"})
    with pytest.raises(GroupError):
        from_permutations("x", 3, [[0, 0, 1]])


def test_zoo_errors():
    for text in ("nothing:3", "sym:x", "heisenberg_p:4", "quaternion_generalized:2",
                 "direct_product:cyclic:2"):
        with pytest.raises(GroupError):
            parse_zoo(text)
    with pytest.raises(GroupError):
        zoo("binary_tetrahedral", 3)


def test_power_class_map():
    G = zoo("cyclic", 3)
    assert power_class_map(G, 2) == [0, 2, 1]
    with pytest.raises(ValueError):
        power_class_map(G, 3)


@given(st.sampled_from(["cyclic:12", "sym:4", "dihedral:6", "binary_tetrahedral",
                        "heisenberg_p:3"]), st.integers(0, 200))
def test_p_parts_multiply_back(name, seed):
    G = parse_zoo(name)
    g = seed % G.order
    parts = p_part_decomposition(G, g)
    x = 0
    for p, h in parts.items():
        assert G.is_p_element(h, p)
        x = G.mul(x, h)
    assert x == g


@given(st.sampled_from(["sym:4", "alt:5", "quaternion_generalized:4", "binary_octahedral"]),
       st.integers(0, 10**6), st.integers(0, 10**6))
def test_table_is_a_group_law(name, a, b):
    G = parse_zoo(name)
    a, b = a % G.order, b % G.order
    c = (a * 7 + b) % G.order
    assert G.mul(G.mul(a, b), c) == G.mul(a, G.mul(b, c))
    assert G.mul(a, int(G.inv[a])) == 0
    assert G.conj(b, a) == G.conj_column(a)[b]
    assert bool(G.commute_mask(a)[b]) == (G.mul(a, b) == G.mul(b, a))


def test_centralizer_and_class_index(s3):
    assert centralizer(s3, [1]).order == 2
    idx = class_index(s3)
    assert np.bincount(idx).tolist() == [1, 3, 2]
