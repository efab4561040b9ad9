import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sigpaths.tensor_algebra import (
    TruncatedTensor,
    add,
    exp_trunc,
    group_inverse,
    homogeneous_norm,
    is_group_like,
    log_trunc,
    parse_tensor,
    product_metric_dist,
    project_level,
    scale,
    serialize_tensor,
    shuffle_product,
    tensor_mul,
    truncate,
)

e1 = lambda N=2, d=2: TruncatedTensor.from_vector(np.eye(d)[0], N)  # noqa: E731
e2 = lambda N=2, d=2: TruncatedTensor.from_vector(np.eye(d)[1], N)  # noqa: E731


def one(d=2, N=2):
    return TruncatedTensor.unit(d, N)


def random_tensor(rng, d, N, scalar=None):
    t = TruncatedTensor(d, N, rng.normal(size=TruncatedTensor.zero(d, N).coeffs.shape))
    if scalar is not None:
        c = t.coeffs.copy()
        c[0] = scalar
        t = TruncatedTensor(d, N, c)
    return t


def test_word_indexing_roundtrip():
    x = TruncatedTensor.from_dict(3, 3, {(): 1.0, (2,): 2.0, (1, 3): 3.0, (3, 2, 1): 4.0})
    assert x[()] == 1.0 and x[(2,)] == 2.0 and x[(1, 3)] == 3.0 and x[(3, 2, 1)] == 4.0
    assert x[(3, 1)] == 0.0
    assert x.level_tensor(2)[0, 2] == 3.0
    with pytest.raises(ValueError):
        x[(4,)]
    with pytest.raises(KeyError):
        x[(1, 1, 1, 1)]


def test_immutable():
    x = one()
    with pytest.raises(ValueError):
        x.coeffs[0] = 5.0


class TestMul:
    def test_degree_one_product(self):
        got = tensor_mul(one() + e1(), one() + e2())
        want = TruncatedTensor.from_dict(2, 2, {(): 1, (1,): 1, (2,): 1, (1, 2): 1})
        assert got == want

    def test_unit_is_identity(self, rng):
        g = random_tensor(rng, 3, 3)
        assert tensor_mul(g, one(3, 3)) == g
        assert tensor_mul(one(3, 3), g) == g

    def test_exp_times_exp_neg(self):
        # exp(v) exp(-v) = 1 at N=4, v = (1, 1): every level k >= 1 is
        # v^k sum_j (-1)^(k-j) / (j! (k-j)!) = v^k (1 - 1)^k / k! = 0
        v = TruncatedTensor.from_vector([1.0, 1.0], 4)
        prod = tensor_mul(exp_trunc(v), exp_trunc(-v))
        assert prod.allclose(one(2, 4), atol=1e-15)

    def test_mismatch(self):
        with pytest.raises(ValueError):
            tensor_mul(one(2, 2), one(2, 3))
        with pytest.raises(ValueError):
            tensor_mul(one(2, 2), one(3, 2))

    def test_against_word_convolution(self, rng):
        a, b = random_tensor(rng, 2, 3), random_tensor(rng, 2, 3)
        c = tensor_mul(a, b)
        for w, val in c.to_dict().items():
            expect = sum(a[w[:i]] * b[w[i:]] for i in range(len(w) + 1))
            assert val == pytest.approx(expect, abs=1e-12)

    @given(st.integers(1, 3), st.integers(0, 5), st.integers(0, 2**31))
    def test_associative(self, d, N, seed):
        r = np.random.default_rng(seed)
        a, b, c = (random_tensor(r, d, N) for _ in range(3))
        lhs = tensor_mul(tensor_mul(a, b), c)
        rhs = tensor_mul(a, tensor_mul(b, c))
        assert np.allclose(lhs.coeffs, rhs.coeffs, rtol=1e-12, atol=1e-12)


def test_add_scale():
    assert add(e1(), e2()) == TruncatedTensor.from_dict(2, 2, {(1,): 1, (2,): 1})
    assert scale(e1(), 0) == TruncatedTensor.zero(2, 2)
    g = exp_trunc(e1() + e2())
    assert add(g, scale(g, -1)) == TruncatedTensor.zero(2, 2)
    with pytest.raises(ValueError):
        add(one(2, 2), one(2, 1))


class TestExpLog:
    def test_exp_level_two(self):
        v = np.array([0.3, -1.2, 2.0])
        g = exp_trunc(TruncatedTensor.from_vector(v, 2))
        assert g[()] == 1.0
        assert np.allclose(g.level_coeffs(1), v)
        assert np.allclose(g.level_tensor(2), np.outer(v, v) / 2)

    def test_exp_zero(self):
        assert exp_trunc(TruncatedTensor.zero(2, 3)) == one(2, 3)

    def test_exp_e1_cubed(self):
        assert exp_trunc(e1(3))[(1, 1, 1)] == pytest.approx(1 / 6, abs=1e-15)

    def test_exp_general_matches_series(self, rng):
        x = random_tensor(rng, 2, 4, scalar=0.0)
        want = one(2, 4)
        power = one(2, 4)
        for k in range(1, 5):
            power = tensor_mul(power, x)
            want = want + power * (1 / math.factorial(k))
        assert exp_trunc(x).allclose(want)

    def test_exp_requires_zero_scalar(self):
        with pytest.raises(ValueError):
            exp_trunc(one())

    def test_log_one(self):
        assert log_trunc(one(2, 4)) == TruncatedTensor.zero(2, 4)

    @pytest.mark.parametrize("N", [1, 2, 5])
    def test_log_exp_e1(self, N):
        assert log_trunc(exp_trunc(e1(N))).allclose(e1(N), atol=1e-15)

    def test_log_axis_signature_bch(self):
        # log(exp(e1) exp(e2)) = e1 + e2 + (e1e2 - e2e1)/2 at N=2
        g = tensor_mul(exp_trunc(e1()), exp_trunc(e2()))
        want = TruncatedTensor.from_dict(2, 2, {(1,): 1, (2,): 1, (1, 2): 0.5, (2, 1): -0.5})
        assert log_trunc(g).allclose(want)

    def test_log_requires_unit(self):
        with pytest.raises(ValueError):
            log_trunc(TruncatedTensor.zero(2, 2))

    @given(st.integers(1, 3), st.integers(1, 6), st.integers(0, 2**31))
    def test_log_exp_roundtrip(self, d, N, seed):
        if d**N > 800:
            N = 4
        x = random_tensor(np.random.default_rng(seed), d, N, scalar=0.0)
        assert log_trunc(exp_trunc(x)).allclose(x, atol=1e-12)


class TestInverse:
    def test_unit(self):
        assert group_inverse(one(3, 3)) == one(3, 3)

    def test_exp(self):
        v = TruncatedTensor.from_vector([0.5, -2.0], 4)
        assert group_inverse(exp_trunc(v)).allclose(exp_trunc(-v))

    def test_general(self, rng):
        g = random_tensor(rng, 2, 4, scalar=1.0)
        assert tensor_mul(g, group_inverse(g)).allclose(one(2, 4), atol=1e-11)
        assert tensor_mul(group_inverse(g), g).allclose(one(2, 4), atol=1e-11)


def test_projections():
    g = exp_trunc(TruncatedTensor.from_vector([1.0, 2.0], 3))
    assert project_level(g, 0) == one(2, 3)
    assert np.array_equal(project_level(g, 1).level_coeffs(1), [1.0, 2.0])
    assert project_level(g, 1)[(1, 1)] == 0.0
    assert truncate(g, 3) == g
    t1 = truncate(g, 1)
    assert t1.level == 1 and np.array_equal(t1.coeffs, [1.0, 1.0, 2.0])
    with pytest.raises(ValueError):
        project_level(g, 4)
    with pytest.raises(ValueError):
        truncate(g, -1)


class TestShuffle:
    def test_small(self):
        assert shuffle_product((1,), (2,)) == {(1, 2): 1, (2, 1): 1}
        assert shuffle_product((1,), (1,)) == {(1, 1): 2}
        assert shuffle_product((1, 2), (3,)) == {(1, 2, 3): 1, (1, 3, 2): 1, (3, 1, 2): 1}
        assert shuffle_product((), (2, 1)) == {(2, 1): 1}

    @given(st.lists(st.integers(1, 3), max_size=4), st.lists(st.integers(1, 3), max_size=4))
    def test_symmetric_and_binomial(self, u, v):
        u, v = tuple(u), tuple(v)
        s = shuffle_product(u, v)
        assert s == shuffle_product(v, u)
        assert sum(s.values()) == math.comb(len(u) + len(v), len(u))
        assert all(len(w) == len(u) + len(v) for w in s)


class TestGroupLike:
    def test_unit(self):
        assert is_group_like(one(2, 4))

    def test_wrong_level_two(self):
        g = TruncatedTensor.from_dict(2, 2, {(): 1, (1,): 1, (1, 1): 1})
        assert not is_group_like(g)

    def test_exp_of_lie_element(self):
        # exp of a Lie element (vector + bracket) is group-like
        x = TruncatedTensor.from_dict(2, 4, {(1,): 0.7, (2,): -0.3, (1, 2): 0.4, (2, 1): -0.4})
        assert is_group_like(exp_trunc(x))

    def test_exp_of_non_lie_element(self):
        x = TruncatedTensor.from_dict(2, 2, {(1, 2): 1.0})
        assert not is_group_like(exp_trunc(x))


class TestNorms:
    def test_homogeneous_norm(self):
        assert homogeneous_norm(one(2, 4)) == 0.0
        v = np.array([3.0, 4.0])
        assert homogeneous_norm(exp_trunc(TruncatedTensor.from_vector(v, 4))) >= 5.0
        # levels: ||e1|| = 1, ||e1 e1 / 2||^(1/2) = (1/2)^(1/2)
        assert homogeneous_norm(exp_trunc(e1(2))) == 1.0

    def test_product_metric(self, rng):
        g = exp_trunc(TruncatedTensor.from_vector([0.2, 0.1], 3))
        assert product_metric_dist(g, g) == 0.0
        assert product_metric_dist(one(2, 1), exp_trunc(e1(1))) == 0.5
        with pytest.raises(ValueError):
            product_metric_dist(one(2, 1), one(2, 2))

    @given(st.integers(0, 2**31))
    def test_product_metric_axioms(self, seed):
        r = np.random.default_rng(seed)
        a, b, c = (exp_trunc(TruncatedTensor.from_vector(r.normal(size=2) * r.uniform(0, 3), 3)) for _ in range(3))
        dab, dba = product_metric_dist(a, b), product_metric_dist(b, a)
        assert dab == dba
        assert dab <= product_metric_dist(a, c) + product_metric_dist(c, b) + 1e-15
        assert 0.0 <= dab < 1.0
        assert (dab == 0.0) == (a == b)


def test_serialization_roundtrip(rng):
    x = random_tensor(rng, 2, 3)
    text = serialize_tensor(x)
    assert text.splitlines()[0].startswith("():")
    assert "1,2:" in text
    assert parse_tensor(text, 2, 3) == x


def test_serialization_format():
    x = TruncatedTensor.from_dict(2, 2, {(): 1.0, (1, 2): 0.5})
    assert "1,2:0.5" in x.serialize().splitlines()
    assert "():1.0" in x.serialize().splitlines()
