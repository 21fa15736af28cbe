"""Chain complexes, tensor products, truncation, and serialization."""

import json

import pytest

from chainspec.chain import (
    ChainComplex,
    ChainElement,
    DegreeError,
    direct_sum,
    identity_map,
    load_complex,
    sphere,
    tensor,
    tensor_basis,
    truncate,
    truncate_with_inclusion,
    twist_chain,
    two_term,
)


def test_d_squared_validation():
    with pytest.raises(ValueError):
        ChainComplex(
            {0: ["a"], 1: ["b"], 2: ["c"]},
            {1: [[1]], 2: [[1]]},  # d o d = 1 != 0
        )


def test_sphere_and_two_term():
    s = sphere(2)
    assert s.degrees() == [2]
    assert s.rank(2) == 1
    m = two_term(2)
    assert m.degrees() == [-1, 0]
    assert m.d(0).entries == ((2,),)


def test_apply_d_degree_check():
    m = two_term(3)
    x = m.basis_element(0, 0)
    assert m.apply_d(x) == ChainElement(-1, (3,))
    with pytest.raises(DegreeError):
        m.element(5, (1,))


def test_tensor_differential_squares_to_zero():
    a = two_term(2)
    b = two_term(3, top_degree=1)
    t = tensor(a, b)
    for n in t.degrees():
        assert t.d(n - 1).mul(t.d(n)).is_zero()


def test_tensor_basis_is_koszul_ordered():
    a, b = two_term(2), two_term(3)
    basis = tensor_basis(a, b, -1)
    # entries are (left degree, left index, right index)
    assert all(len(g) == 3 for g in basis)
    assert len(basis) == a.rank(0) * b.rank(-1) + a.rank(-1) * b.rank(0)


def test_twist_chain_map_and_involution():
    a = two_term(2)
    b = two_term(3, top_degree=1)
    fwd = twist_chain(a, b)
    back = twist_chain(b, a)
    assert fwd.commutes_with_d()
    assert fwd.compose(back).equals(identity_map(tensor(a, b)))


def test_truncation_inclusion_is_chain_map():
    c = ChainComplex({-2: ["u"], -1: ["v"], 0: ["w"], 1: ["x"]},
                     {-1: [[2]], 0: [[0]], 1: [[3]]})
    t, inclusions = truncate_with_inclusion(c)
    assert min(t.degrees()) >= 0
    # inclusion commutes with d: inc_{n-1} d^t_n = d^c_n inc_n for n >= 1
    for n in t.degrees():
        if n < 1 or (n - 1) not in inclusions:
            continue
        assert inclusions[n - 1].mul(t.d(n)).entries == c.d(n).mul(inclusions[n]).entries
    assert truncate(c) == t


def test_direct_sum_blocks():
    s = direct_sum(sphere(0), sphere(2))
    assert s.rank(0) == 1 and s.rank(2) == 1


def test_json_roundtrip(tmp_path):
    c = two_term(5)
    path = tmp_path / "c.json"
    path.write_text(json.dumps(c.to_json_dict()))
    assert load_complex(path) == c


def test_from_json_rejects_bad_differential(tmp_path):
    data = {"degrees": {"0": ["a"], "1": ["b"], "2": ["c"]},
            "differentials": {"1": [[1]], "2": [[1]]}}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(data))
    with pytest.raises(ValueError):
        load_complex(path)
