import numpy as np
import pytest

from helpers import dihedral_brace
from simplebraces.asymmetric import (
    ActionMap,
    Cocycle,
    PreconditionError,
    asymmetric_product,
    check_action,
    check_bi_additive,
    check_biadditive_reduction,
    check_cocycle,
    check_compatibility_general,
    g_b_group,
    phi_b_iso,
    product_lambda,
)
from simplebraces.brace import FAIL, PASS, direct_product, trivial_abelian, trivial_cyclic, verify_brace_axioms

Z2, Z3 = trivial_cyclic(2), trivial_cyclic(3)
Z3SQ = trivial_abelian([3, 3])


def dot(x, y):
    """Dot product on (Z/3)² with values in Z/3."""
    (x1, x2), (y1, y2) = np.divmod(x, 3), np.divmod(y, 3)
    return (x1 * y1 + x2 * y2) % 3


def shear(s, t):
    """``(u1, u2) -> (u1, u2 + s·u1)``: additive, but does not preserve the dot product."""
    u1, u2 = np.divmod(t, 3)
    return u1 * 3 + (u2 + s * u1) % 3


def swap(s, t):
    """Swap the two coordinates ``s`` times: preserves the dot product."""
    u1, u2 = np.divmod(t, 3)
    return np.where(s % 2 == 1, u2 * 3 + u1, t)


def test_cocycle_examples():
    assert check_cocycle(Cocycle.zero(Z3, Z2)).status == PASS
    assert check_cocycle(Cocycle(Z2, Z2, lambda x, y: x * y)).status == PASS
    assert check_cocycle(Cocycle(Z3SQ, Z3, dot)).status == PASS
    assert check_bi_additive(Cocycle(Z3SQ, Z3, dot)).status == PASS


def test_non_symmetric_map_fails():
    first = lambda x, y: (x // 3) * (y % 3) % 3  # noqa: E731
    report = check_cocycle(Cocycle(Z3SQ, Z3, first))
    assert report.status == FAIL and report.witness is not None


def test_non_normalized_cocycle_rejected():
    with pytest.raises(PreconditionError):
        Cocycle(Z2, Z2, lambda x, y: np.ones(np.broadcast(x, y).shape, dtype=np.int64))


def test_action_checks():
    S = trivial_cyclic(2)
    assert check_action(ActionMap(Z3SQ, S, swap)).status == PASS
    with pytest.raises(PreconditionError):
        ActionMap(Z3SQ, S, lambda s, t: (t + 1) % 9)


def test_zero_cocycle_any_action_is_compatible():
    alpha = ActionMap(Z3, Z2, lambda s, t: np.where(s % 2 == 1, (-t) % 3, t))
    assert check_compatibility_general(Z3, Z2, Cocycle.zero(Z3, Z2), alpha).status == PASS


@pytest.mark.parametrize("action,expected", [(swap, PASS), (shear, FAIL)])
def test_general_and_reduced_checks_agree(action, expected):
    # S = Z/6 acts through its quotients; b lands in the subgroup {0, 2, 4}
    S = trivial_cyclic(6)
    b = Cocycle(Z3SQ, S, lambda x, y: 2 * dot(x, y) % 6, claimed_bi_additive=True)
    alpha = ActionMap(Z3SQ, S, lambda s, t: action(s % 6, t))
    assert check_bi_additive(b).status == PASS
    general = check_compatibility_general(Z3SQ, S, b, alpha, samples=None)
    reduced = check_biadditive_reduction(Z3SQ, S, b, alpha, samples=None)
    assert general.status == reduced.status == expected


def test_family_data_is_compatible(minimal):
    T, S, b, alpha = minimal.T, minimal.S, minimal.cocycle, minimal.action
    assert check_cocycle(b).status == PASS
    assert check_biadditive_reduction(T, S, b, alpha, samples=None).status == PASS
    assert check_compatibility_general(T, S, b, alpha, samples=200_000, seed=2).ok
    t = T.elements()
    assert np.array_equal(alpha(0, t), t)


def test_non_orthogonal_product_is_refused():
    with pytest.raises(PreconditionError):
        asymmetric_product(Z3SQ, trivial_cyclic(3), Cocycle(Z3SQ, Z3, dot), ActionMap(Z3SQ, Z3, shear))


def test_trivial_data_give_the_direct_product():
    B = asymmetric_product(Z3, Z2, Cocycle.zero(Z3, Z2), ActionMap.trivial(Z3, Z2))
    D = direct_product(Z3, Z2)
    assert np.array_equal(B.add_table, D.add_table) and np.array_equal(B.mul_table, D.mul_table)


def swapped_dot_brace():
    Z6 = trivial_cyclic(6)
    return asymmetric_product(Z3SQ, Z6, Cocycle(Z3SQ, Z6, lambda x, y: 2 * dot(x, y) % 6),
                              ActionMap(Z3SQ, Z6, swap))


@pytest.mark.parametrize("make", [dihedral_brace, swapped_dot_brace])
def test_products_are_braces(make):
    assert verify_brace_axioms(make(), triples=None).status == PASS


def test_subtraction_formula(minimal):
    B, T, S, b = minimal.brace, minimal.T, minimal.S, minimal.cocycle
    ns = S.size
    rng = np.random.default_rng(4)
    x, y = rng.integers(0, B.size, size=(2, 20000))
    (t1, s1), (t2, s2) = np.divmod(x, ns), np.divmod(y, ns)
    dt = T.sub(t1, t2)
    expected = dt * ns + S.sub(S.sub(s1, s2), b(dt, t2))
    assert np.array_equal(B.sub(x, y), expected)


def test_product_lambda_matches_definition(minimal):
    B = minimal.brace
    x = B.elements()
    closed = product_lambda(minimal.T, minimal.S, minimal.cocycle, minimal.action, x[:, None], x[None, :])
    assert np.array_equal(closed, B.lambda_table)


def test_product_lambda_trivial_factors_form():
    T, S = Z3SQ, trivial_cyclic(6)
    b, alpha = Cocycle(T, S, lambda x, y: 2 * dot(x, y) % 6), ActionMap(T, S, swap)
    B = swapped_dot_brace()
    x = B.elements()
    lam = product_lambda(T, S, b, alpha, x[:, None], x[None, :])
    t1, s1 = np.divmod(x[:, None], 6)
    t2, s2 = np.divmod(x[None, :], 6)
    u = alpha(s1, t2)
    assert np.array_equal(lam, u * 6 + S.sub(s2, b(u, t1)))
    assert np.array_equal(lam, B.lambda_table)
    assert np.array_equal(lam[0], x)


def test_g_b_examples():
    G0 = g_b_group(Z3, Z2, lambda x, y: np.zeros(np.broadcast(x, y).shape, dtype=np.int64))
    assert np.array_equal(G0.add_table, direct_product(Z3, Z2).add_table)
    G = g_b_group(Z2, Z2, lambda x, y: x * y)
    one_zero, zero_one = 1 * 2 + 0, 0 * 2 + 1
    assert int(G.add(one_zero, one_zero)) == zero_one
    # an element of order 4 exists, so G_b(Z/2, Z/2) is cyclic
    from simplebraces.analysis import additive_orders

    assert sorted(additive_orders(G).tolist()) == [1, 2, 4, 4]


def test_phi_b_examples():
    iso = phi_b_iso(Z3SQ, Z3, dot)
    assert iso.report.status == PASS
    assert iso.report.checked == 27**2
    zero = phi_b_iso(Z3SQ, Z3, lambda x, y: np.zeros(np.broadcast(x, y).shape, dtype=np.int64))
    assert np.array_equal(zero.table, np.arange(27))
    with pytest.raises(PreconditionError):
        phi_b_iso(Z2, Z2, lambda x, y: x * y)
