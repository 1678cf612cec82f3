import random

import pytest

from strathom.exactla import QQ, ZZ, RingFp
from strathom.enrich import (LinearCategory, algebra_from_table,
                             commutator_cokernel_invariants,
                             corr_pushforward, corr_pushforward_witness,
                             ground_ring_algebra, group_algebra,
                             matrix_algebra, nerve,
                             pointed_pushforward, product_algebra,
                             sets_bijective, span_of_pointed_map,
                             tensor_all_sets, tensor_all_modules,
                             truncated_polynomial_algebra,
                             validate_enriched_cat, validate_linear_category,
                             Module, zero_algebra)
from strathom.fincat import poset_category, walking_idempotent
from strathom.manifold import FinSpan
from strathom.cyclo import cyclic_group_table


# -- validation ---------------------------------------------------------------

def test_ground_ring_is_a_valid_one_object_category():
    assert validate_enriched_cat(ground_ring_algebra(QQ)) == []


def test_walking_idempotent_validates_as_set_enriched():
    assert validate_enriched_cat(walking_idempotent()) == []


def test_broken_associativity_is_listed():
    basis = ("e", "x", "y")
    table = {}
    for b in basis:
        table[("e", b)] = {b: 1}
        table[(b, "e")] = {b: 1}
    table[("e", "e")] = {"e": 1}
    table[("x", "x")] = {"y": 1}
    table[("x", "y")] = {"e": 1}   # (x x) y = y y = 0 but x (x y) = x
    table[("y", "x")] = {}
    table[("y", "y")] = {}
    alg = algebra_from_table(QQ, basis, table, {"e": 1})
    report = validate_linear_category(alg)
    assert any("associativity" in r for r in report)


def test_matrix_algebra_and_group_algebra_validate():
    assert validate_linear_category(matrix_algebra(QQ, 2)) == []
    assert validate_linear_category(
        group_algebra(ZZ, *cyclic_group_table(3))) == []
    assert validate_linear_category(
        truncated_polynomial_algebra(RingFp(5), 3)) == []
    assert validate_linear_category(
        product_algebra(ground_ring_algebra(QQ), ground_ring_algebra(QQ))) == []


def test_zero_algebra_validates_with_empty_homs():
    report = validate_linear_category(zero_algebra(QQ))
    assert any("missing unit" in r for r in report)


# -- tensors --------------------------------------------------------------------

def test_tensor_all_sets_empty_is_unit():
    assert tensor_all_sets([]) == ((),)


def test_tensor_all_sets_sizes_multiply():
    out = tensor_all_sets([("a", "b"), ("x", "y", "z")])
    assert len(out) == 6


def test_tensor_all_modules_dims_multiply():
    m = tensor_all_modules(QQ, [Module(QQ, ("a", "b")), Module(QQ, ("x", "y"))])
    assert m.dim == 4
    empty = tensor_all_modules(QQ, [])
    assert empty.dim == 1


def test_sets_bijective_witness():
    w = sets_bijective(("a", "b"), ("x", "y"))
    assert w is not None and len(w) == 2
    assert sets_bijective(("a",), ("x", "y")) is None


# -- span pushforward ----------------------------------------------------------------

def test_identity_span_pushforward_fixes_cardinalities():
    fam = {"s": ("a", "b", "c")}
    out = corr_pushforward(FinSpan.identity(("s",)), fam)
    assert len(out["s"]) == 3


def test_diagonal_then_square():
    span = FinSpan(("s",), ("u1", "u2"), ("t",),
                   {"u1": "s", "u2": "s"}, {"u1": "t", "u2": "t"})
    out = corr_pushforward(span, {"s": ("a", "b", "c")})
    assert len(out["t"]) == 9


def test_empty_fiber_gives_unit():
    span = FinSpan(("s",), (), ("t",), {}, {})
    out = corr_pushforward(span, {"s": ("a", "b")})
    assert out["t"] == ((),)


def test_pushforward_functoriality_with_witness():
    a = FinSpan((0, 1), ("u", "v", "w"), (0,),
                {"u": 0, "v": 1, "w": 1}, {"u": 0, "v": 0, "w": 0})
    b = FinSpan((0,), ("p", "q"), (0, 1),
                {"p": 0, "q": 0}, {"p": 0, "q": 1})
    fam = {0: ("x", "y"), 1: ("z",)}
    witness = corr_pushforward_witness(a, b, fam)
    for t, table in witness.items():
        assert len(table) == len(set(table.values()))


def test_pointed_restriction_agrees_with_span_route():
    rng = random.Random(99)
    for _ in range(100):
        left = tuple(range(rng.randrange(1, 4)))
        right = tuple(range(rng.randrange(1, 4)))
        pmap = {s: (rng.choice(right) if rng.random() < 0.6 else None)
                for s in left}
        fam = {s: tuple(range(rng.randrange(1, 4))) for s in left}
        direct = pointed_pushforward(pmap, left, right, fam)
        via = corr_pushforward(span_of_pointed_map(pmap, left, right), fam)
        assert direct == via


# -- nerve ------------------------------------------------------------------------------

def test_nerve_level_zero_is_object_set():
    p = poset_category(("0", "1"), lambda a, b: a <= b)
    nv = nerve(p, 2)
    assert len(nv.level(0)) == 2


def test_nerve_idem_level_one():
    nv = nerve(walking_idempotent(), 2)
    assert len(nv.level(1)) == 2


def test_nerve_poset_level_two_counts_composable_pairs():
    p = poset_category(("0", "1"), lambda a, b: a <= b)
    nv = nerve(p, 2)
    assert len(nv.level(2)) == 4


def test_nerve_satisfies_segal_up_to_four():
    for cat in (walking_idempotent(),
                poset_category(("0", "1", "2"), lambda a, b: a <= b)):
        nv = nerve(cat, 4)
        assert nv.validate_identities() == []
        for n in range(2, 5):
            assert nv.is_segal(n)


# -- serialization ---------------------------------------------------------------------

def test_linear_category_json_round_trip():
    alg = group_algebra(QQ, *cyclic_group_table(2))
    data = alg.to_json_dict()
    again = LinearCategory.from_json_dict(data)
    assert again.to_json_dict() == data
    assert validate_linear_category(again) == []


def test_rationals_serialize_as_strings():
    alg = algebra_from_table(
        QQ, ("e",), {("e", "e"): {"e": QQ.parse("1/2")}}, {"e": 2})
    data = alg.to_json_dict()
    assert data["structure_constants"]["*,*,*"]["e,e"]["e"] == "1/2"


def test_hom_dims_accept_plain_dimensions():
    data = {"ring": "Q", "objects": ["*"], "hom_dims": {"*->*": 1},
            "structure_constants": {"*,*,*": {"b0,b0": {"b0": "1"}}},
            "units": {"*": {"b0": "1"}}}
    alg = LinearCategory.from_json_dict(data)
    assert validate_linear_category(alg) == []


# -- commutator oracle -------------------------------------------------------------------

def test_commutator_cokernel_of_commutative_algebra_is_everything():
    alg = group_algebra(QQ, *cyclic_group_table(2))
    rank, torsion = commutator_cokernel_invariants(alg)
    assert (rank, torsion) == (2, ())


def test_commutator_cokernel_of_matrix_algebra_is_rank_one():
    rank, torsion = commutator_cokernel_invariants(matrix_algebra(QQ, 2))
    assert (rank, torsion) == (1, ())
