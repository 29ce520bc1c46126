import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from modcrown.errors import (
    InfinityError,
    PathSingularity,
    PoleError,
    StripError,
    UndefinedPairing,
)
from modcrown.sl2 import (
    KernelVector,
    Moebius,
    act,
    boost,
    boost_continuation,
    continue_boost_pairing,
    fourier_from_density,
    gram,
    inner_kv,
    j_conjugation,
    j_pointwise,
    kernel_Q,
    modular_relation_check,
    random_moebius,
)

weights = st.sampled_from([2, 4, 6])
seeds = st.integers(0, 2**32 - 1)
upper = st.builds(complex, st.floats(-3, 3), st.floats(0.1, 3))
IDENTITY = Moebius(1.0, 0.0, 0.0, 1.0)


def random_interior(rng, s, k=3):
    terms = tuple(
        (complex(rng.normal(), rng.normal()), complex(rng.normal(), rng.uniform(0.2, 2))) for _ in range(k)
    )
    return KernelVector(s, terms)


def test_kernel_examples():
    for s in (2, 4, 8):
        assert kernel_Q(1j, 1j, s) == 1
    assert abs(kernel_Q(2j, 1j, 2) - 4 / 9) <= 1e-15
    with pytest.raises(PoleError):
        kernel_Q(1.0, 1.0, 2)
    with pytest.raises(ValueError):
        kernel_Q(1j, 1j, 3)


@given(upper, upper, weights)
def test_kernel_is_hermitian(z, w, s):
    assert abs(kernel_Q(z, w, s) - kernel_Q(w, z, s).conjugate()) <= 1e-12 * abs(kernel_Q(z, w, s))


def test_inner_examples():
    qi = KernelVector.single(1j, 2)
    assert inner_kv(qi, qi) == 1
    w, u = 0.5 + 1j, -1 + 2j
    assert inner_kv(KernelVector.single(w, 4), KernelVector.single(u, 4)) == kernel_Q(w, u, 4)
    assert abs(inner_kv(KernelVector.single(2j, 2), KernelVector.single(0.0, 2)) - 1) <= 1e-15
    with pytest.raises(UndefinedPairing):
        inner_kv(KernelVector.single(1.0, 2), KernelVector.single(1.0, 2))
    with pytest.raises(ValueError):
        KernelVector.single(-1j, 2)


@given(st.lists(upper, min_size=1, max_size=6), weights)
def test_gram_is_positive(points, s):
    g = gram(points, s)
    assert np.allclose(g, g.conj().T, atol=1e-12)
    assert np.linalg.eigvalsh(0.5 * (g + g.conj().T)).min() >= -1e-9 * np.abs(g).max()


def test_act_examples():
    v = KernelVector.single(0.3 + 1j, 2, 2 - 1j)
    assert act(IDENTITY, v) == v
    for t in (-1.0, 0.5, 2.0):
        for s in (2, 4):
            got = act(boost(t), KernelVector.single(1j, s))
            (c, p), = got.terms
            assert abs(c - math.exp(s * t / 2)) <= 1e-12 * math.exp(s * t / 2)
            assert abs(p - math.exp(t) * 1j) <= 1e-12 * math.exp(t)


def test_act_sends_boundary_to_infinity():
    with pytest.raises(InfinityError):
        act(Moebius(0.0, -1.0, 1.0, 0.0), KernelVector.single(0.0, 2))
    with pytest.raises(ValueError):
        Moebius(1.0, 1.0, 1.0, 1.0)


@given(seeds, weights)
def test_unitarity(seed, s):
    rng = np.random.default_rng(seed)
    g = random_moebius(rng)
    u, v = random_interior(rng, s), random_interior(rng, s)
    lhs = inner_kv(act(g, u), act(g, v))
    rhs = inner_kv(u, v)
    assert abs(lhs - rhs) <= 1e-10 * max(1.0, abs(rhs))


@given(seeds, weights)
def test_representation_property(seed, s):
    rng = np.random.default_rng(seed)
    g, h = random_moebius(rng), random_moebius(rng)
    v = random_interior(rng, s)
    a, b = act(g, act(h, v)), act(g @ h, v)
    for z in (1j, 0.4 + 2j):
        assert abs(a(z) - b(z)) <= 1e-10 * max(1.0, abs(b(z)))


def test_continuation_examples():
    for s in (2, 4):
        assert boost_continuation(0.0, s) == KernelVector.single(1j, s)
    (c, p), = boost_continuation(-math.pi / 2, 2).terms
    assert abs(c + 1j) <= 1e-15 and p == 1
    (c, p), = boost_continuation(math.pi / 2, 2).terms
    assert p == -1
    with pytest.raises(StripError):
        boost_continuation(1.6, 2)


@given(st.floats(-3, 3), weights)
def test_continuation_matches_real_boost(tau, s):
    a = boost_continuation(-1j * tau, s)
    b = act(boost(tau), KernelVector.single(1j, s))
    for z in (1j, 1 + 0.5j):
        assert abs(a(z) - b(z)) <= 1e-12 * max(1.0, abs(b(z)))


def test_continuation_is_continuous():
    probe = KernelVector.single(2j, 2)
    t0 = -math.pi / 4

    def pairing(t):
        return inner_kv(probe, boost_continuation(t, 2))

    closed = cmath.exp(1j * t0) * kernel_Q(2j, cmath.exp(1j * t0) * 1j, 2)
    assert abs(pairing(t0) - closed) <= 1e-14
    for d in (1e-9, 1e-10):
        assert abs(pairing(t0 + d) - pairing(t0 - d)) <= 1e-8
    # the edge of the strip is approached continuously too
    assert abs(pairing(-math.pi / 2 + 1e-9) - pairing(-math.pi / 2)) <= 1e-8


@pytest.mark.parametrize("x, s, w", [(1.0, 2, 3j), (1.0, 4, 2 + 2j), (0.5, 6, -1 + 0.5j)])
def test_modular_relation_examples(x, s, w):
    assert modular_relation_check(x, s, w, tol=1e-10)
    continued, closed = continue_boost_pairing(x, s, w)
    assert abs(continued - closed) <= 1e-10 * abs(closed)


def test_modular_relation_sign_control():
    assert not modular_relation_check(1.0, 2, 3j, flip_sign=True)
    assert modular_relation_check(1.0, 4, 2 + 2j, flip_sign=True)


def test_continuation_path_singularity():
    with pytest.raises(PathSingularity):
        continue_boost_pairing(1.0, 2, cmath.exp(0.7j))


def test_j_examples():
    for s in (2, 4):
        got = j_conjugation(KernelVector.single(1.0, s))
        assert got == KernelVector.single(-1.0, s, (-1) ** (s // 2))


@given(seeds, weights)
def test_j_is_involution(seed, s):
    v = random_interior(np.random.default_rng(seed), s)
    assert j_conjugation(j_conjugation(v)) == v


@given(seeds, weights)
def test_j_two_routes(seed, s):
    rng = np.random.default_rng(seed)
    v = random_interior(rng, s)
    jv = j_conjugation(v)
    for _ in range(20):
        z = complex(rng.normal(), rng.uniform(0.1, 3))
        assert abs(jv(z) - j_pointwise(v, z)) <= 1e-12 * max(1.0, abs(jv(z)))


@given(seeds, weights)
def test_j_is_antiunitary(seed, s):
    rng = np.random.default_rng(seed)
    u, v = random_interior(rng, s), random_interior(rng, s)
    lhs = inner_kv(j_conjugation(u), j_conjugation(v))
    assert abs(lhs - inner_kv(v, u)) <= 1e-10 * max(1.0, abs(lhs))


@pytest.mark.parametrize("u, w", [(1j, 1j), (1 + 1j, -1 + 1j)])
def test_fourier_examples(u, w):
    res = fourier_from_density(u, 2)
    assert res.vector == KernelVector.single(w, 2)
    assert res.residual < 1e-8


def test_fourier_linearity():
    a, b = fourier_from_density(1j, 4), fourier_from_density(0.5 + 2j, 4)
    combo = a.vector.scale(2.0) + b.vector.scale(-1j)
    for z in (1j, 1 + 1j):
        assert abs(combo(z) - (2 * a.vector(z) - 1j * b.vector(z))) <= 1e-14
    assert max(a.residual, b.residual) < 1e-8


def test_json_round_trip():
    v = KernelVector(4, ((1 + 2j, 0.5j), (-1.0, 3.0)))
    assert KernelVector.from_json(v.to_json()) == v
