import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import and_ca, identity_ca, shift_ca, two_track_ca, xor_ca, zero_ca
from surjunct.errors import BudgetExceeded, RuleError
from surjunct.group import cyclic, dihedral, integers, symmetric
from surjunct.symbolic import (
    NOT_ALMOST_EQUAL,
    FiniteConfig,
    LocalRule,
    Pattern,
    SftDescriptor,
    ZConfig,
    apply,
    compose,
    decode,
    delta,
    encode,
    image_automaton,
    image_pattern,
    make_ca,
    normalized_rule,
    power,
    random_almost_equal,
    random_configuration,
    restrict,
    rule_from_function,
    sft_automaton,
    sft_membership,
    shortest_missing_word,
    sofic_equal,
    sofic_equals_sft,
    sofic_full,
    sofic_inclusion_counterexample,
    translate,
    window_images,
)

Z = integers()

words = st.lists(st.integers(0, 2), min_size=1, max_size=4)
zconfigs = st.builds(
    ZConfig, words.map(tuple), st.lists(st.integers(0, 2), max_size=6).map(tuple), words.map(tuple), st.integers(-6, 6)
)


def naive_apply_z(T, x, lo, hi):
    return tuple(T.rule([x.at(n + s) for s in T.memory]) for n in range(lo, hi))


# --- encoding and rules -------------------------------------------------------------


def test_encode_little_endian():
    assert encode((1, 0, 1), 2) == 5
    assert encode((0, 1), 3) == 3
    assert decode(5, 2, 3) == (1, 0, 1)


@given(st.lists(st.integers(0, 3), max_size=8))
def test_encode_roundtrip(vals):
    assert decode(encode(vals, 4), 4, len(vals)) == tuple(vals)


def test_pattern_code_roundtrip():
    p = Pattern((-1, 0, 2), (1, 0, 1))
    assert Pattern.from_code(p.domain, p.code(2), 2) == p
    assert p.as_dict() == {-1: 1, 0: 0, 2: 1}


def test_rule_validation():
    with pytest.raises(RuleError):
        LocalRule(2, (0, 1), (0, 1, 1))
    with pytest.raises(RuleError):
        LocalRule(2, (0,), (0, 2))
    with pytest.raises(RuleError):
        LocalRule(1, (0,), (0,))
    with pytest.raises(RuleError):
        LocalRule(2, (), ())


def test_rule_from_function_matches_table():
    T = rule_from_function(Z, 2, [0, 1], lambda v: v[0] ^ v[1])
    assert T.rule.table == xor_ca().rule.table


# --- configurations -----------------------------------------------------------------


def test_xor_on_period_four():
    assert apply(xor_ca(), ZConfig.periodic((0, 0, 1, 1))) == ZConfig.periodic((0, 1, 0, 1))


def test_identity_and_shift_apply():
    x = ZConfig((0,), (1, 1, 0, 1), (1, 0), 3)
    assert apply(identity_ca(), x) == x
    assert apply(shift_ca(), x) == x.translate(-1)


@given(zconfigs)
def test_normal_form_preserves_values(x):
    y = x.normalized()
    lo, hi = x.offset - 10, x.end + 10
    assert x.segment(lo, hi) == y.segment(lo, hi)
    assert y.normalized() == y
    assert hash(x) == hash(y)


@given(zconfigs, st.sampled_from([xor_ca, and_ca, shift_ca, two_track_ca]))
def test_apply_matches_naive(x, make):
    T = make()
    if T.k < 3:
        x = ZConfig(tuple(v % 2 for v in x.left), tuple(v % 2 for v in x.center), tuple(v % 2 for v in x.right), x.offset)
    y = apply(T, x)
    lo, hi = -200, 201
    assert y.segment(lo, hi) == naive_apply_z(T, x, lo, hi)


@given(zconfigs, st.integers(-5, 5))
def test_shift_equivariance(x, g):
    x = ZConfig(tuple(v % 2 for v in x.left), tuple(v % 2 for v in x.center), tuple(v % 2 for v in x.right), x.offset)
    T = and_ca()
    assert apply(T, translate(Z, x, g)) == translate(Z, apply(T, x), g)


def test_translate_convention():
    # (g.x)(h) = x(g^-1 h)
    x = ZConfig.finite_defect(0, {0: 1})
    assert translate(Z, x, 3).at(3) == 1
    G = symmetric(3)
    f = FiniteConfig((0, 1, 2, 3, 4, 5))
    for g in range(6):
        y = translate(G, f, g)
        for h in range(6):
            assert y.at(h) == f.at(G.mul(G.inv(g), h))


def test_finite_group_apply_equivariant():
    G = dihedral(3)
    rng = random.Random(3)
    T = make_ca(G, 2, [0, 1, 3], [rng.randrange(2) for _ in range(8)])
    for _ in range(20):
        x = random_configuration(G, 2, rng)
        for g in range(G.order):
            assert apply(T, translate(G, x, g)) == translate(G, apply(T, x), g)


def test_delta():
    x = ZConfig.finite_defect(0, {2: 1, 5: 1})
    y = ZConfig.finite_defect(0, {5: 1})
    assert delta(x, y) == (2,)
    assert delta(x, x) == ()
    assert delta(ZConfig.periodic((0,)), ZConfig.periodic((1,))) is NOT_ALMOST_EQUAL
    assert not NOT_ALMOST_EQUAL
    assert delta(ZConfig.periodic((0, 1)), ZConfig.periodic((1, 0))) is NOT_ALMOST_EQUAL
    assert delta(FiniteConfig((0, 1, 1)), FiniteConfig((1, 1, 0))) == (0, 2)


def test_random_almost_equal_is_almost_equal():
    rng = random.Random(11)
    for _ in range(50):
        x = random_configuration(Z, 3, rng)
        y = random_almost_equal(Z, 3, x, rng)
        assert delta(x, y) is not NOT_ALMOST_EQUAL


def test_restrict_and_image_pattern():
    p = Pattern((0, 1), (0, 1))
    assert image_pattern(xor_ca(), p, (0,)) == Pattern((0,), (1,))
    with pytest.raises(RuleError):
        image_pattern(xor_ca(), p, (1,))
    assert restrict(ZConfig.periodic((0, 1)), (0, 1, 2)).values == (0, 1, 0)


# --- windows and composition --------------------------------------------------------------


def test_window_images_match_naive(backend):
    T = and_ca()
    window = tuple(range(0, 4))
    imgs = window_images(T, window, (0, 1, 2))
    for code in range(16):
        vals = decode(code, 2, 4)
        want = [vals[i] & vals[i + 1] for i in range(3)]
        assert imgs[code] == encode(want, 2)


def test_window_budget():
    with pytest.raises(BudgetExceeded):
        window_images(xor_ca(), tuple(range(30)), (0,), budget=2**20)


def test_window_must_cover():
    with pytest.raises(RuleError):
        window_images(xor_ca(), (0,), (0,))


@given(zconfigs)
@settings(max_examples=40)
def test_compose_matches_sequential(x):
    x = ZConfig(tuple(v % 2 for v in x.left), tuple(v % 2 for v in x.center), tuple(v % 2 for v in x.right), x.offset)
    T1, T2 = and_ca(), xor_ca()
    assert apply(compose(T2, T1), x) == apply(T2, apply(T1, x))
    assert apply(power(T2, 3), x) == apply(T2, apply(T2, apply(T2, x)))


def test_compose_on_finite_group():
    G = symmetric(3)
    rng = random.Random(5)
    T1 = make_ca(G, 2, [0, 1], [rng.randrange(2) for _ in range(4)])
    T2 = make_ca(G, 2, [2, 3], [rng.randrange(2) for _ in range(4)])
    C = compose(T2, T1)
    for _ in range(20):
        x = random_configuration(G, 2, rng)
        assert apply(C, x) == apply(T2, apply(T1, x))


def test_normalized_rule():
    d, table, s = normalized_rule(shift_ca())
    assert (d, s) == (1, 1)
    assert list(table) == [0, 1]
    with pytest.raises(RuleError):
        normalized_rule(make_ca(cyclic(2), 2, [0], [0, 1]))


# --- SFTs and sofic automata ----------------------------------------------------------------


def test_sft_membership():
    S = SftDescriptor(Z, 2, (0, 1), ((1, 1),))
    assert sft_membership(S, ZConfig.periodic((0, 1)))
    assert not sft_membership(S, ZConfig.finite_defect(0, {3: 1, 4: 1}))
    G = cyclic(4)
    S2 = SftDescriptor(G, 2, (0, 1), ((1, 1),))
    assert sft_membership(S2, FiniteConfig((1, 0, 1, 0)))
    assert not sft_membership(S2, FiniteConfig((1, 0, 0, 1)))  # wraps around


def test_sft_pattern_width_checked():
    with pytest.raises(RuleError):
        SftDescriptor(Z, 2, (0, 1), ((1,),))


def language(A, L):
    """Words of length L readable in the automaton (brute force)."""
    out = set()
    for w in itertools.product(range(A.k), repeat=L):
        mask = A.full_mask
        for a in w:
            mask = A.step(mask, a)
        if mask:
            out.add(w)
    return out


def factors(T, L):
    fmin, fmax = T.memory[0], T.memory[-1]
    window = tuple(range(fmin, L - 1 + fmax + 1))
    return {decode(int(c), T.k, L) for c in np.unique(window_images(T, window, tuple(range(L))))}


@pytest.mark.parametrize("make", [xor_ca, and_ca, zero_ca, shift_ca, two_track_ca])
def test_image_automaton_language(make):
    T = make()
    A = image_automaton(T)
    for L in range(1, 6 if T.k == 2 else 4):
        assert language(A, L) == factors(T, L)


def test_xor_automaton_shape():
    A = image_automaton(xor_ca())
    assert (A.n_vertices, len(A.edges)) == (2, 4)
    assert sofic_full(A)


def test_shortest_missing_word():
    assert shortest_missing_word(image_automaton(zero_ca())) == (1,)
    w = shortest_missing_word(image_automaton(and_ca()))
    assert w is not None and len(w) == 3 and w not in factors(and_ca(), 3)
    assert shortest_missing_word(image_automaton(xor_ca())) is None


def test_sofic_inclusion():
    full = image_automaton(identity_ca())
    A = image_automaton(and_ca())
    assert sofic_inclusion_counterexample(A, full) is None
    w = sofic_inclusion_counterexample(full, A)
    assert w is not None and w not in factors(and_ca(), len(w))
    assert sofic_equal(image_automaton(xor_ca()), full)
    assert not sofic_equal(A, full)


def test_sft_automaton_equivalence():
    golden_mean = SftDescriptor(Z, 2, (0, 1), ((1, 1),))
    A = sft_automaton(golden_mean)
    assert language(A, 4) == {w for w in itertools.product((0, 1), repeat=4) if (1, 1) not in zip(w, w[1:])}
    assert sofic_equals_sft(image_automaton(identity_ca()), SftDescriptor(Z, 2, (0,), ()))
    assert not sofic_equals_sft(image_automaton(and_ca()), golden_mean)
