import cmath

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from newtonfunm.clustering import Cluster
from newtonfunm.errors import DimensionMismatch
from newtonfunm.experiments import ExperimentConfig, generate_instance
from newtonfunm.impulse import (BasisFunction, ImpulseSystem, SymbolicCoefficient,
                                SymbolicResponse, eval_symbolic, format_response, format_terms,
                                impulse_response, numeric_response, response_from_json,
                                response_to_json, symbolic_taylor_coefficients, system_from_json)
from newtonfunm.jsonio import FormatError, matrix_to_json, spectrum_to_json, vector_to_json
from newtonfunm.newton import (FunmParams, NewtonPolynomial, eval_bilinear, eval_matrix_vector,
                               newton_coefficients)


def random_system(seed, n=10, K=4):
    rng = np.random.default_rng(seed)
    inst = generate_instance(ExperimentConfig(n=n, K=K, trials=1), rng)
    b = rng.uniform(-1, 1, n) + 1j * rng.uniform(-1, 1, n)
    d = rng.uniform(-1, 1, n) + 1j * rng.uniform(-1, 1, n)
    return ImpulseSystem(A=inst.A, b=b, d=d, eigenvalues=tuple(inst.eigenvalues))


def rel(a, b):
    return abs(a - b) / max(abs(b), 1e-300)


def test_symbolic_coefficients_shape():
    cl = Cluster(start=0, size=2, center=-1 + 1j, members=(0, 1), degree_slack=0)
    coeffs = symbolic_taylor_coefficients(cl, cl.taylor_degree, 1)
    assert len(coeffs) == 3
    assert [list(c.terms) for c in coeffs] == [[BasisFunction(1, a, -1 + 1j)] for a in range(3)]
    assert coeffs[0](0.7) == pytest.approx(cmath.exp((-1 + 1j) * 0.7), rel=1e-15)
    single = Cluster(start=0, size=1, center=2j, members=(0,), degree_slack=-1)
    assert len(symbolic_taylor_coefficients(single, single.taylor_degree, 3)) == 1


def test_basis_function_value():
    b = BasisFunction(1, 3, -0.5 + 1j)
    t = 1.7
    assert b(t) == pytest.approx(t ** 3 * cmath.exp((-0.5 + 1j) * t) / 6, rel=1e-15)


def test_one_state_system():
    mu = -0.3 + 1.2j
    resp = impulse_response(ImpulseSystem(A=[[mu]], b=[1], d=[1], eigenvalues=(mu,)))
    assert resp.terms == {BasisFunction(1, 0, mu): 1}


def test_diagonal_two_state():
    mu = (-1 + 0j, -0.2 + 2j)
    resp = impulse_response(ImpulseSystem(A=np.diag(mu), b=[1, 1], d=[1, 1], eigenvalues=mu))
    centers = {b.center for b in resp.terms}
    assert centers == set(mu)
    zero_weights = sum(w for b, w in resp.terms.items() if b.power == 0)
    assert abs(zero_weights - 2) < 1e-14
    assert abs(resp(0) - 2) < 1e-14
    for t in (0.5, 1.0, 3.0):
        assert rel(resp(t), cmath.exp(mu[0] * t) + cmath.exp(mu[1] * t)) < 1e-13


@pytest.mark.parametrize("seed", range(10))
def test_matches_numeric_pipeline(seed):
    sys_ = random_system(seed)
    resp = impulse_response(sys_)
    for t in (0.5, 1.0, 2.0):
        assert rel(resp(t), numeric_response(sys_, t)) < 1e-10


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1), st.floats(0, 3))
def test_ring_consistency(seed, t):
    sys_ = random_system(seed, n=6, K=3)
    resp = impulse_response(sys_)
    assert rel(resp(t), numeric_response(sys_, t)) < 1e-9


@pytest.mark.parametrize("seed", range(5))
def test_value_at_zero(seed):
    sys_ = random_system(seed)
    ref = complex(sys_.d @ sys_.b)
    assert abs(impulse_response(sys_)(0) - ref) <= 1e-12 * max(1, abs(ref))


def weight_gap(r1, r2):
    keys = set(r1.terms) | set(r2.terms)
    scale = max(abs(w) for w in list(r1.terms.values()) + list(r2.terms.values()))
    return max(abs(r1.terms.get(k, 0) - r2.terms.get(k, 0)) for k in keys) / scale


@pytest.mark.parametrize("seed", range(3))
def test_linear_in_b_and_d(seed):
    s1, s2 = random_system(seed), random_system(seed + 100)
    a, mu = s1.A, s1.eigenvalues
    alpha, beta = 0.7 - 1.3j, -2.1 + 0.4j
    r = impulse_response
    sum_b = r(ImpulseSystem(A=a, b=alpha * s1.b + beta * s2.b, d=s1.d, eigenvalues=mu))
    parts_b = [r(ImpulseSystem(A=a, b=v, d=s1.d, eigenvalues=mu)) for v in (s1.b, s2.b)]
    combo = SymbolicResponse({k: alpha * parts_b[0].terms.get(k, 0) + beta * parts_b[1].terms.get(k, 0)
                              for k in set(parts_b[0].terms) | set(parts_b[1].terms)})
    assert weight_gap(sum_b, combo) < 1e-12
    sum_d = r(ImpulseSystem(A=a, b=s1.b, d=alpha * s1.d + beta * s2.d, eigenvalues=mu))
    parts_d = [r(ImpulseSystem(A=a, b=s1.b, d=v, eigenvalues=mu)) for v in (s1.d, s2.d)]
    combo = SymbolicResponse({k: alpha * parts_d[0].terms.get(k, 0) + beta * parts_d[1].terms.get(k, 0)
                              for k in set(parts_d[0].terms) | set(parts_d[1].terms)})
    assert weight_gap(sum_d, combo) < 1e-12


@pytest.mark.parametrize("gamma", [-1, 0, 5])
def test_basis_provenance_and_count(gamma):
    sys_ = random_system(3)
    resp = impulse_response(sys_, FunmParams(gamma=gamma))
    clusters = resp.partition.clusters
    for b in resp.terms:
        cl = clusters[b.cluster - 1]
        assert b.power <= cl.taylor_degree and b.center == cl.center
    assert len(resp.terms) <= sum(c.size + gamma + 1 for c in clusters)


def test_two_cluster_term_count():
    mu = (-1, -1.001, -0.5 + 1j)
    a = np.diag(mu) + np.triu(np.ones((3, 3)), 1)
    resp = impulse_response(ImpulseSystem(A=a, b=[1, 2, 3], d=[1, -1, 1], eigenvalues=mu),
                            FunmParams(gamma=1))
    assert len(resp.terms) <= (2 + 1 + 1) + (1 + 1 + 1)


def test_eval_symbolic_examples():
    resp = SymbolicResponse({BasisFunction(1, 0, -1): 2, BasisFunction(1, 1, -1): 5,
                             BasisFunction(2, 0, 3j): -1j})
    assert eval_symbolic(resp, 0) == 2 - 1j
    w = 0.5 - 2j
    single = SymbolicResponse({BasisFunction(1, 1, 0): w})
    for t in (0, 0.3, 2):
        assert eval_symbolic(single, t) == pytest.approx(w * t, abs=1e-15)


def test_double_precision_mode():
    sys_ = random_system(1)
    resp = impulse_response(sys_, dps=None)
    assert rel(resp(1.0), numeric_response(sys_, 1.0)) < 1e-3


def test_symbolic_ring_operations():
    b1, b2 = BasisFunction(1, 0, -1), BasisFunction(2, 1, 1j)
    x = SymbolicCoefficient({b1: 2, b2: 1j})
    y = SymbolicCoefficient({b1: -2, b2: 3})
    assert (x + y).terms == {b2: 3 + 1j}
    assert (x - x).terms == {} and x - x == 0
    assert (0 + x).terms == x.terms and (x + 0).terms == x.terms
    assert (-x).terms == {b1: -2, b2: -1j}
    assert (2j * x).terms == (x * 2j).terms == {b1: 4j, b2: -2}
    assert (x / 2).terms == {b1: 1, b2: 0.5j}
    assert (x * 0).terms == {}
    z = SymbolicCoefficient({b1: 0.25})
    assert ((x + y) + z).terms == (x + (y + z)).terms
    assert (x + y).terms == (y + x).terms
    assert ((x + y) * 3).terms == (x * 3 + y * 3).terms
    with pytest.raises(ZeroDivisionError):
        x / 0
    with pytest.raises(TypeError):
        x / y
    with pytest.raises(TypeError):
        x * y


def test_generic_matrix_vector_with_symbols_matches_bilinear():
    sys_ = random_system(2, n=5, K=2)
    params = FunmParams(delta=0.01, gamma=2)
    points, part, column = newton_coefficients(
        list(sys_.eigenvalues), params,
        lambda j, cl: symbolic_taylor_coefficients(cl, cl.taylor_degree, j + 1))
    p = NewtonPolynomial(points=tuple(points), coefficients=tuple(column))
    vec = eval_matrix_vector(p, sys_.A, sys_.b)
    dotted = sum((d * v for d, v in zip(sys_.d, vec)), SymbolicCoefficient())
    direct = eval_bilinear(p, sys_.A, sys_.b, sys_.d)
    for t in (0.0, 0.5, 1.0):
        assert rel(dotted(t), direct(t)) < 1e-6


def test_format_examples():
    assert format_response(SymbolicResponse({})) == "0"
    assert format_terms({BasisFunction(1, 0, -1 + 2j): 3}) == "3·e^{(−1+2i)t}"
    text = format_terms({BasisFunction(2, 0, 1j): 1, BasisFunction(1, 2, -1): -0.5 + 1j,
                         BasisFunction(1, 1, -1): 2})
    assert text == "2·t·e^{(−1)t} + (−0.5+1i)·t^2/2!·e^{(−1)t} + 1·e^{(1i)t}"
    assert format_terms({BasisFunction(1, 0, 0): 1 / 3}, precision=3) == "0.333·e^{(0)t}"


def test_json_round_trip():
    resp = impulse_response(random_system(4, n=6, K=3))
    again = response_from_json(response_to_json(resp))
    assert again.terms == resp.terms
    assert response_to_json(again)["terms"] == response_to_json(resp)["terms"]
    term = response_to_json(resp)["terms"][0]
    assert set(term) == {"cluster", "power", "center", "weight"}


def test_json_errors():
    with pytest.raises(FormatError):
        response_from_json({"terms": [{"cluster": 1}]})
    with pytest.raises(FormatError):
        response_from_json([])


def system_json(n=3):
    a = np.diag([-1, -2, -3]).astype(complex)
    return {"A": matrix_to_json(a), "b": vector_to_json(np.ones(n)),
            "d": vector_to_json(np.ones(n)), "spectrum": spectrum_to_json([-1, -2, -3])}


def test_system_from_json():
    s = system_from_json(system_json())
    assert s.A.shape == (3, 3) and s.eigenvalues == (-1, -2, -3)
    bad = system_json()
    del bad["d"]
    with pytest.raises(FormatError) as info:
        system_from_json(bad)
    assert info.value.field == "d"
    bad = system_json()
    bad["spectrum"] = spectrum_to_json([-1, -2])
    with pytest.raises(FormatError):
        system_from_json(bad)


def test_system_validation():
    with pytest.raises(DimensionMismatch):
        ImpulseSystem(A=np.eye(2), b=[1, 1, 1], d=[1, 1], eigenvalues=(1, 1))
    with pytest.raises(DimensionMismatch):
        ImpulseSystem(A=np.eye(2), b=[1, 1], d=[1, 1], eigenvalues=(1,))
