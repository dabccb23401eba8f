import random
from fractions import Fraction as Q
from math import comb

import pytest

from hilbfock import CohClass, KClassSpec, pairing, vacuum
from hilbfock.fock import FockVector, render_vector
from hilbfock.verify import (
    random_vector,
    suite_derivative,
    suite_e_op,
    suite_vertex_integral,
    suite_virasoro,
)


def q1_power(engine, a, n):
    v = vacuum()
    for _ in range(n):
        v = engine.q(1, a, v)
    return v


def test_boundary_kills_vacuum_and_weight_one(engine, model):
    assert engine.boundary(vacuum()).is_zero()
    assert engine.boundary(engine.q(1, model.h_class(), vacuum())).is_zero()


def test_boundary_of_q1_squared(engine, model):
    v = q1_power(engine, model.unit(), 2).scale(Q(1, 2))
    got = engine.boundary(v)
    assert got == engine.q(2, model.unit(), vacuum()).scale(Q(-1, 2))


def test_boundary_raises_degree_by_two(engine, model):
    from hilbfock.fock import mono_degree, mono_weight

    rng = random.Random(3)
    for _ in range(8):
        v = random_vector(model, rng, 4)
        w = engine.boundary(v)
        for M in w.terms:
            assert any(
                mono_weight(M) == mono_weight(N)
                and mono_degree(M, model) == mono_degree(N, model) + 2
                for N in v.terms
            )


def test_virasoro_creation_part_on_vacuum(engine, model):
    # L_2(a) vacuum = 1/2 sum q_1 q_1 delta(a) vacuum
    a = model.unit()
    got = engine.virasoro(2, a, vacuum())
    want = FockVector()
    for left, right in model.diagonal(a):
        want = want + engine.q(1, left, engine.q(1, right, vacuum())).scale(
            Q(1, 2)
        )
    assert got == want


def test_virasoro_weight_operator(engine, model):
    # L_0(1) is weight times identity on monomials, up to the pairing twist
    v = engine.q(3, model.h_class(), vacuum())
    got = engine.virasoro(0, model.unit(), v)
    assert got == v.scale(-3)


def test_virasoro_annihilates_vacuum_for_index_one(engine, model):
    # the creation sum is empty for n=1 and the annihilators kill the vacuum
    assert engine.virasoro(1, model.unit(), vacuum()).is_zero()
    assert engine.virasoro(-1, model.point(), vacuum()).is_zero()
    assert engine.virasoro(0, model.unit(), vacuum()).is_zero()


def test_virasoro_suite_small():
    r = suite_virasoro(max_n=2, max_weight=3, model_params=((1, 0, -1, 0),))
    assert r["pass"], r["counterexample"]


def test_derivative_of_q1_on_q1(engine, model):
    # q_1'(x) q_1(y) vacuum = -q_2(xy) vacuum
    for x, y in [("h", "h"), ("1", "pt"), ("h", "k")]:
        cx, cy = CohClass({x: 1}), CohClass({y: 1})
        got = engine.q_derivative(1, 1, cx, engine.q(1, cy, vacuum()))
        want = -engine.q(2, model.mul(cx, cy), vacuum())
        assert got == want, (x, y)


def test_derivative_of_vacuum_vanishes(engine, model):
    for nu in (1, 2, 3):
        assert engine.q_derivative(1, nu, model.h_class(), vacuum()).is_zero()


def test_second_derivative_recursion(engine, model):
    # q'' = boundary q' - q' boundary, on a few vectors
    rng = random.Random(9)
    a = model.h_class()
    for _ in range(5):
        v = random_vector(model, rng, 3)
        lhs = engine.q_derivative(2, 2, a, v)
        rhs = engine.boundary(
            engine.q_derivative(2, 1, a, v)
        ) - engine.q_derivative(2, 1, a, engine.boundary(v))
        assert lhs == rhs


def test_derivative_bracket_suite_small():
    r = suite_derivative(
        max_n=2, max_weight=3, sample=10, model_params=((1, 0, -1, 0),)
    )
    assert r["pass"], r["counterexample"]


def test_e_op_examples(engine, model):
    a = model.unit()
    b = model.point()
    # [e_2(a), q_{-1}(b)] vanishes on q_1(c) vacuum for -2 <= m=-1 < 0
    for c in ("1", "h", "pt"):
        v = engine.q(1, CohClass({c: 1}), vacuum())
        lhs = engine.e_op(2, a, engine.q(-1, b, v)) - engine.q(
            -1, b, engine.e_op(2, a, v)
        )
        assert lhs.is_zero()


def test_e_op_suite_small():
    r = suite_e_op(max_weight=3, model_params=((1, 0, -1, 0),))
    assert r["pass"], r["counterexample"]


def test_chern_operator_of_line_bundle(engine, model):
    # the total Chern class operator of a line bundle L is
    # q_1(c(L)) + q_1'(1)
    L = KClassSpec.line_bundle(model.h_class())
    rng = random.Random(17)
    for _ in range(5):
        v = random_vector(model, rng, 3)
        got = engine.big_c_apply(L, v, 40)
        want = (
            engine.q(1, L.total_chern(model), v)
            + engine.q_derivative(1, 1, model.unit(), v)
        )
        assert got == want


def test_total_chern_weight_zero_and_one(engine, model):
    L = KClassSpec.line_bundle(model.h_class())
    comps = engine.total_chern_classes(L, 2)
    assert comps[0] == vacuum()
    # c(L^[1]) = q_1(1 + c_1(L))
    assert comps[1] == engine.q(1, L.total_chern(model), vacuum())


def test_chern_character_weight_one(engine, model):
    u = KClassSpec(2, model.h_class(), CohClass({"pt": 3}))
    got = engine.chern_char_class(u, 1)
    assert got == engine.q(1, u.chern_character(model), vacuum())


def test_chern_character_degree_zero_is_n_rank(engine, model):
    from hilbfock.fock import mono_degree

    u = KClassSpec(3, model.h_class(), CohClass({"pt": 1}))
    for n in (1, 2, 3):
        v = engine.chern_char_class(u, n)
        deg0 = {
            M: c for M, c in v.terms.items() if mono_degree(M, model) == 0
        }
        M0 = ((1, "1"),) * n
        from math import factorial

        assert deg0 == {M0: Q(n * u.rank, factorial(n))}


def test_vertex_components(engine, model):
    gamma = model.h_class()
    comps = engine.vertex(gamma, 3)
    assert comps[0] == vacuum()
    assert comps[1] == engine.q(1, gamma, vacuum())
    want2 = engine.q(1, gamma, engine.q(1, gamma, vacuum())).scale(
        Q(1, 2)
    ) - engine.q(2, gamma, vacuum()).scale(Q(1, 2))
    assert comps[2] == want2


def test_vertex_integral_suite():
    r = suite_vertex_integral(4, model_params=((1, 0, -1, 0), (2, 1, -1, 1)))
    assert r["pass"], r["counterexample"]


def test_line_bundle_chern_matches_vertex(engine, model):
    L = KClassSpec.line_bundle(model.h_class() - model.canonical_class())
    got = engine.total_chern_classes(L, 3)
    want = engine.vertex(L.total_chern(model), 3)
    for n in range(4):
        assert got[n] == want[n]
