"""Acceptance gate: one test per criterion, each bounded by its runtime budget."""

import time

import numpy as np
import pytest

from simplebraces.analysis import UnsupportedInput, additive_orders, additive_sylow, group_facts, order_constraints
from simplebraces.asymmetric import g_b_group, phi_b_iso
from simplebraces.brace import (
    NO_COUNTEREXAMPLE,
    PASS,
    direct_product,
    is_ideal,
    is_simple,
    lemma_ideal_check,
    trivial_abelian,
    trivial_cyclic,
    verify_brace_axioms,
)
from simplebraces.family import (
    FamilyParams,
    additive_signature,
    block_identities,
    build_family,
    derive,
    synthesize_embedding,
    verify_embedding,
)
from simplebraces.ybe import check_involutive, check_nondegenerate, check_ybe, solution_from_brace

SEED = 20240601
MINIMAL = FamilyParams((2, 3), (1, 1), (1, 1))
SCALED = FamilyParams((2, 3), (1, 1), (2, 1))


def parts(report) -> dict[str, str]:
    return dict(item.rsplit("=", 1) for item in report.detail.split("; "))


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.start


@pytest.mark.criterion(1, "minimal instance has order 864 = 2^5 3^3, built < 5 s")
def test_minimal_construction():
    with Timer() as t:
        fam = build_family(MINIMAL)
        B = fam.brace
        B.mul_table  # tables are built eagerly; touch them anyway
    assert B.size == fam.order == 864 == 2**5 * 3**3
    assert B.has_tables
    assert t.seconds < 5


@pytest.mark.criterion(2, "brace axioms: pair laws exhaustive, compatibility on 10^6 seeded triples and on all 864^3, < 60 s")
def test_brace_axioms(minimal_brace):
    with Timer() as t:
        sampled = verify_brace_axioms(minimal_brace, triples=1_000_000, seed=SEED)
        full = verify_brace_axioms(minimal_brace, triples=None)
    laws = parts(sampled)
    assert laws.pop("compatibility") == NO_COUNTEREXAMPLE
    assert set(laws.values()) == {PASS}
    assert sampled.seed == SEED and sampled.checked >= 864**2 + 1_000_000
    assert full.status == PASS
    assert t.seconds < 60


@pytest.mark.criterion(3, "all 863 nonzero singletons generate the whole brace, < 10 min")
def test_simplicity_certificate(minimal_brace):
    with Timer() as t:
        result = is_simple(minimal_brace)
    assert result.simple is True and result.status == PASS
    assert result.checked == 863
    assert t.seconds < 600


@pytest.mark.criterion(4, "Sylow subgroups of order 32 and 27, phi_sylow additive isomorphisms onto (Z/2)^5 and (Z/3)^3")
def test_sylow_structure(minimal):
    B = minimal.brace
    for i, (p, size, rank) in enumerate([(2, 32, 5), (3, 27, 3)]):
        mask = additive_sylow(B, p)
        assert mask.sum() == size
        assert np.array_equal(mask, minimal.sylow_block(i))
        phi = minimal.phi_sylow(i)
        assert phi.rank == rank and phi.q == p
        report = phi.verify()
        assert report.status == PASS and report.checked == size**2


@pytest.mark.criterion(5, "multiplicative group metabelian of derived length 2, Sylow subgroups abelian")
def test_group_facts(minimal_brace):
    facts = group_facts(minimal_brace)
    assert facts.derived_length == 2
    assert facts.sylow_abelian == {2: True, 3: True}
    assert facts.a_group


@pytest.mark.criterion(6, "block identities exact on the minimal instance and the n_1 = 2 variant")
@pytest.mark.parametrize("params", [MINIMAL, FamilyParams((2, 3), (2, 1), (1, 1))], ids=["minimal", "n1=2"])
def test_block_identities(params):
    for blk in derive(params):
        report = block_identities(blk)
        assert report.status == PASS, report.detail
        assert set(parts(report).values()) == {PASS}
        assert len(parts(report)) == 5


@pytest.mark.criterion(7, "twist isomorphism for (Z/3)^2 over Z/3; the even case gives (1,0)+(1,0) = (0,1) and Z/4")
def test_twisted_groups():
    A, C = trivial_abelian([3, 3]), trivial_cyclic(3)

    def dot(x, y):
        (x1, x2), (y1, y2) = np.divmod(x, 3), np.divmod(y, 3)
        return (x1 * y1 + x2 * y2) % 3

    iso = phi_b_iso(A, C, dot)
    assert iso.report.status == PASS and iso.report.checked == 729
    Z2 = trivial_cyclic(2)
    G = g_b_group(Z2, Z2, lambda x, y: x * y)
    assert int(G.add(2, 2)) == 1  # (1,0) + (1,0) = (0,1) with index x·2 + y
    orders = additive_orders(G)
    assert orders.max() == 4 == G.size  # cyclic of order 4, not Z/2 x Z/2


@pytest.mark.criterion(8, "YBE solution involutive on 864^2 pairs, non-degenerate, braid relation on 10^6 triples; flip for trivial braces, < 120 s")
def test_yang_baxter(minimal_brace):
    with Timer() as t:
        r = solution_from_brace(minimal_brace)
        inv = check_involutive(r)
        nondeg = check_nondegenerate(r)
        braid = check_ybe(r, samples=1_000_000, seed=SEED)
    assert inv.status == PASS and inv.checked == 864**2
    assert nondeg.status == PASS and nondeg.checked == 2 * 864
    assert braid.status == NO_COUNTEREXAMPLE and braid.checked >= 1_000_000
    assert not r.is_flip()
    for B in (trivial_cyclic(5), trivial_abelian([2, 3, 4])):
        assert solution_from_brace(B).is_flip()
    assert t.seconds < 120


@pytest.mark.criterion(9, "controls: trivial Z/p simple; Z/4 and a product of two family braces non-simple with certificates")
def test_controls(minimal_brace):
    for p in (2, 3, 5, 7):
        assert is_simple(trivial_cyclic(p)).simple is True
    z4 = is_simple(trivial_cyclic(4))
    assert z4.simple is False and np.flatnonzero(z4.certificate).tolist() == [0, 2]
    assert is_ideal(trivial_cyclic(4), z4.certificate)
    product = direct_product(minimal_brace, build_family(MINIMAL).brace)
    assert product.size == 864**2
    result = is_simple(product)
    assert result.simple is False
    cert = result.certificate
    assert 1 < cert.sum() < product.size
    assert is_ideal(product, cert)
    assert lemma_ideal_check(product, cert, samples=200_000, seed=SEED).ok


@pytest.mark.criterion(10, "embedding of Z/5, Z/8 x Z/2 x Z/5 and (Z/2)^3 verified in the additive group")
@pytest.mark.parametrize("target", [[5], [8, 2, 5], [2, 2, 2]], ids=["Z5", "Z8xZ2xZ5", "Z2^3"])
def test_embeddings(target):
    plan = synthesize_embedding(target)
    assert plan.params.m >= 2
    report = verify_embedding(plan)
    assert report.status == PASS
    assert report.checked == int(np.prod(target))
    if target == [8, 2, 5]:
        assert plan.params.primes == (2, 5) and plan.params.exponents == (3, 1)
        assert (2, 3) in [(p, n) for p, n, _ in additive_signature(plan.params)]
    if target == [5]:
        assert build_family(plan.params).order == 64000  # within the default guard
    if target == [2, 2, 2]:
        assert plan.params == MINIMAL


@pytest.mark.criterion(11, "order constraint holds for 2^5 3^3 and fails for 2 3")
def test_order_constraints():
    assert order_constraints([(2, 5), (3, 3)]) is True
    assert order_constraints([(2, 1), (3, 1)]) is False
    with pytest.raises(UnsupportedInput):
        order_constraints([(2, 5)])


@pytest.mark.criterion(12, "order-13824 instance: sampled axioms on 10^6 triples, 200 sampled closures all full, < 10 min")
def test_scaled_instance():
    with Timer() as t:
        fam = build_family(SCALED)
        B = fam.brace
        axioms = verify_brace_axioms(B, triples=1_000_000, seed=SEED)
        simple = is_simple(B, samples=200, seed=SEED)
    assert B.size == 13824
    assert axioms.ok and axioms.status == NO_COUNTEREXAMPLE
    assert simple.status == NO_COUNTEREXAMPLE and simple.checked == 200 and simple.certificate is None
    assert t.seconds < 600
