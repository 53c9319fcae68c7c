"""Module axioms, derived modules, locality transfer, and generation."""

from fractions import Fraction

import pytest

from vertexcalc.fixtures import (
    cross_a2_z2,
    klein_twist,
    matrix_over_a3,
    truncated_poly_3,
    upper_triangular_2,
)
from vertexcalc.linalg import unit_vec
from vertexcalc.modules import (
    ModuleStructure,
    adjoint_module,
    check_embedded_actions_commute,
    check_locality_transfer,
    check_module,
    check_product_compatibility,
    generate_submodule,
    generating_basis_vectors,
    is_faithful,
    tensor_module,
    wn_module,
)

F = Fraction


@pytest.fixture(scope="module")
def a3():
    return truncated_poly_3()


@pytest.fixture(scope="module")
def a3_adj(a3):
    return adjoint_module(a3)


def test_adjoint_modules_pass(a3, a3_adj):
    rep = check_module(a3, a3_adj)
    assert rep.passed
    assert rep.found_orders["max_assoc_order"] == 0


def test_adjoint_modules_pass_on_all_fixtures():
    for alg in (
        upper_triangular_2(),
        klein_twist()[0],
        cross_a2_z2()[0],
    ):
        assert check_module(alg, adjoint_module(alg)).passed


def test_corrupted_action_fails(a3, a3_adj):
    action = {k: dict(v) for k, v in a3_adj.action.items()}
    del action[(a3.basis_index("t"), a3.vacuum)]
    assert not check_module(a3, ModuleStructure(basis=a3_adj.basis, action=action)).passed


def test_adjoint_is_faithful(a3, a3_adj):
    # creation pins every algebra element to its action on the vacuum
    assert is_faithful(a3, a3_adj)


def test_locality_transfer_a3(a3, a3_adj):
    for i in range(3):
        for j in range(3):
            rep = check_locality_transfer(a3, a3_adj, i, j, F(1))
            assert rep.passed
            assert rep.found_orders["faithful"] == 1


def test_locality_transfer_agrees_on_nonlocal_fixture():
    ut2 = upper_triangular_2()
    adj = adjoint_module(ut2)
    for i in range(3):
        for j in range(3):
            rep = check_locality_transfer(ut2, adj, i, j, F(1))
            assert rep.passed
            assert rep.notes[-1] == "agree"


def test_locality_transfer_scalar_pair():
    tw, grading, cocycle = klein_twist()
    adj = adjoint_module(tw)
    i10, i01 = tw.basis_index("g10"), tw.basis_index("g01")
    rep = check_locality_transfer(tw, adj, i10, i01, F(-1))
    assert rep.passed
    assert rep.found_orders["algebra_k"] == 0
    assert rep.found_orders["module_k"] == 0


# -- column modules over matrix structures -------------------------------------


def test_wn_module_passes(a3, a3_adj):
    mat_alg, wn = wn_module(a3, a3_adj, 2)
    assert check_module(mat_alg, wn).passed


def test_wn_module_action_value(a3, a3_adj):
    # Y(t*E12, x)(one in column 2) lands in column 1 as t + x t^2
    mat_alg, wn = wn_module(a3, a3_adj, 2)
    u = mat_alg.basis_index("t*E12")
    w = wn.basis.index("one#c2")
    modes = wn.action[(u, w)]
    assert modes[-1] == unit_vec(6, wn.basis.index("t#c1"))
    assert modes[-2] == unit_vec(6, wn.basis.index("t2#c1"))


def test_wn_module_identity_action(a3, a3_adj):
    mat_alg, wn = wn_module(a3, a3_adj, 2)
    for j in range(wn.dim):
        assert wn.action[(mat_alg.vacuum, j)] == {-1: wn.unit(j)}


def test_w1_module_unchanged(a3, a3_adj):
    mat_alg, wn = wn_module(a3, a3_adj, 1)
    assert wn.dim == a3_adj.dim
    assert set(wn.action) == set(a3_adj.action)
    for key in wn.action:
        assert wn.action[key] == a3_adj.action[key]


# -- tensor modules --------------------------------------------------------------


def test_tensor_module_passes(a3, a3_adj):
    alg_t, mod_t = tensor_module([a3, a3], [a3_adj, a3_adj])
    assert check_module(alg_t, mod_t).passed


def test_tensor_module_convolution_value(a3, a3_adj):
    alg_t, mod_t = tensor_module([a3, a3], [a3_adj, a3_adj])
    u = alg_t.basis_index("t*one")
    w = mod_t.basis.index("t*t")
    img = mod_t.apply_mode(unit_vec(9, u), -1, unit_vec(9, w))
    assert img == unit_vec(9, mod_t.basis.index("t2*t"))


def test_tensor_module_unit_factor(a3, a3_adj):
    from vertexcalc.construct import full_matrix_algebra

    unit_alg = full_matrix_algebra(1)
    unit_mod = adjoint_module(unit_alg)
    alg_t, mod_t = tensor_module([a3, unit_alg], [a3_adj, unit_mod])
    assert mod_t.dim == 3
    assert set(mod_t.action) == set(a3_adj.action)
    for key in mod_t.action:
        assert mod_t.action[key] == a3_adj.action[key]


def test_embedded_actions_commute(a3, a3_adj):
    _, mod_t = tensor_module([a3, a3], [a3_adj, a3_adj])
    assert check_embedded_actions_commute(a3, a3, mod_t).passed


# -- compatibility orders ----------------------------------------------------------


def test_product_compatibility_triple(a3, a3_adj):
    t = a3.basis_index("t")
    r = check_product_compatibility(a3, a3_adj, [t, t, t])
    assert r.found and r.order == 0 and r.exact


def test_product_compatibility_single(a3, a3_adj):
    assert check_product_compatibility(a3, a3_adj, [1]).found


def test_product_compatibility_where_locality_fails():
    m = matrix_over_a3()
    adj = adjoint_module(m)
    pair = [m.basis_index("one*E11"), m.basis_index("one*E12")]
    r = check_product_compatibility(m, adj, pair)
    assert r.found and r.order == 0


# -- generation ---------------------------------------------------------------------


def test_vacuum_generates_adjoint(a3, a3_adj):
    rows = generate_submodule(a3, a3_adj, a3_adj.unit(a3.vacuum))
    assert len(rows) == 3


def test_ideal_vectors_do_not_generate(a3, a3_adj):
    # t only reaches the ideal spanned by (t, t^2): a proper submodule
    rows = generate_submodule(a3, a3_adj, a3_adj.unit(a3.basis_index("t")))
    assert len(rows) == 2


def test_generation_transfers_to_column_modules(a3, a3_adj):
    # a basis vector generates W exactly when its column copies generate W^n
    mat_alg, wn = wn_module(a3, a3_adj, 2)
    base = generating_basis_vectors(a3, a3_adj)
    lifted = generating_basis_vectors(mat_alg, wn)
    for j, gen in enumerate(base):
        for c in range(2):
            assert lifted[wn.basis.index(f"{a3_adj.basis[j]}#c{c+1}")] == gen


def test_klein_adjoint_every_vector_generates():
    tw, _, _ = klein_twist()
    adj = adjoint_module(tw)
    assert all(generating_basis_vectors(tw, adj))
    mat_alg, wn = wn_module(tw, adj, 2)
    assert all(generating_basis_vectors(mat_alg, wn))
