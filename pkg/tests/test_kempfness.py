import numpy as np
import pytest

from charvar.groups import (
    NotInGroup,
    RepTuple,
    conjugate_tuple,
    random_traceless_hermitian,
    sample_tuple,
    sl,
    su,
)
from charvar.invariants import all_words, trace_word
from charvar.kempfness import (
    composite_retraction,
    kn_flow,
    kn_functional,
    moment_residual,
)
from charvar.linalg import exp_herm, frob, haar_su


def test_functional_values():
    rng = np.random.default_rng(0)
    rho = sample_tuple(su(3), 2, rng)
    assert abs(kn_functional(rho) - 6.0) < 1e-12
    pair = RepTuple(sl(2), (np.diag([2.0, 0.5]).astype(complex), np.eye(2, dtype=complex)))
    assert abs(kn_functional(pair) - 6.25) < 1e-12


def test_functional_unitary_invariance():
    rng = np.random.default_rng(1)
    rho = sample_tuple(sl(3), 2, rng)
    k = haar_su(3, rng)
    assert abs(kn_functional(rho) - kn_functional(conjugate_tuple(k, rho))) < 1e-10


def test_functional_rejects_invalid():
    bad = RepTuple(sl(2), (np.diag([2.0, 1.0]).astype(complex), np.eye(2, dtype=complex)))
    with pytest.raises(NotInGroup):
        kn_functional(bad)


def test_moment_residual_values():
    rng = np.random.default_rng(2)
    rho = sample_tuple(su(2), 3, rng)
    res = moment_residual(rho)
    assert res.norm < 1e-12
    shear = RepTuple(sl(2), (np.array([[1, 1], [0, 1]], dtype=complex), np.eye(2, dtype=complex)))
    res = moment_residual(shear)
    assert frob(res.M - np.diag([1.0, -1.0])) < 1e-12
    assert frob(res.M - res.M.conj().T) < 1e-12
    assert abs(np.trace(res.M)) < 1e-12


def test_moment_residual_directional_derivative():
    rng = np.random.default_rng(3)
    h = 1e-5
    for _ in range(100):
        n = 2 if rng.uniform() < 0.5 else 3
        rho = sample_tuple(sl(n), 2, rng)
        H = random_traceless_hermitian(n, rng)
        M = moment_residual(rho).M
        ep, em = exp_herm(H, h), exp_herm(H, -h)
        p_fwd = sum(np.trace(m @ m.conj().T).real for m in (ep @ x @ em for x in rho.matrices))
        p_bwd = sum(np.trace(m @ m.conj().T).real for m in (em @ x @ ep for x in rho.matrices))
        fd = (p_fwd - p_bwd) / (2 * h)
        exact = 2.0 * np.trace(H @ M).real
        assert abs(fd - exact) <= 1e-3 * max(abs(exact), 1e-9)


def test_flow_su_input_already_critical():
    rng = np.random.default_rng(4)
    rho = sample_tuple(su(3), 2, rng)
    out, trace = kn_flow(rho)
    assert trace.converged
    assert trace.steps[-1].iter == 0
    assert all(frob(a - b) == 0 for a, b in zip(out.matrices, rho.matrices))


def test_flow_conjugated_unitary_converges():
    rng = np.random.default_rng(5)
    for n, r in ((2, 2), (3, 2)):
        g = sample_tuple(sl(n), 1, rng)[0]
        gi = np.linalg.inv(g)
        rho = RepTuple(sl(n), tuple(g @ haar_su(n, rng) @ gi for _ in range(r)))
        out, trace = kn_flow(rho)
        assert trace.converged
        assert abs(trace.steps[-1].p - r * n) < 1e-6
        # final tuple is unitary within 1e-5
        for m in out.matrices:
            assert frob(m @ m.conj().T - np.eye(n)) < 1e-5
        # flow stays in the orbit: trace words preserved
        for w in all_words(r, 3):
            assert abs(trace_word(out, w) - trace_word(rho, w)) < 1e-8


def test_flow_monotone_functional():
    rng = np.random.default_rng(6)
    g = sample_tuple(sl(2), 1, rng)[0]
    gi = np.linalg.inv(g)
    rho = RepTuple(sl(2), tuple(g @ haar_su(2, rng) @ gi for _ in range(2)))
    _, trace = kn_flow(rho)
    ps = [s.p for s in trace.steps]
    assert all(b <= a for a, b in zip(ps, ps[1:]))
    assert trace.steps[0].step == 0.0


def test_flow_non_closed_orbit():
    # Unipotent pair: the orbit is not closed, its closure contains (I, I);
    # the functional decreases toward 2n = 4 and the residual decays slowly.
    rho = RepTuple(
        sl(2), (np.array([[1, 1], [0, 1]], dtype=complex), np.eye(2, dtype=complex))
    )
    out, trace = kn_flow(rho, max_iter=2000)
    assert not trace.converged
    assert trace.steps[-1].p < 4.01
    assert trace.steps[-1].p > 4.0
    assert trace.steps[-1].residual < 1e-3
    assert frob(out[0] - np.eye(2)) < 0.05


def test_flow_criticality_matches_derivative_bound():
    # residual < tol implies every directional derivative is < 10 tol |rho|.
    rng = np.random.default_rng(7)
    g = sample_tuple(sl(2), 1, rng)[0]
    gi = np.linalg.inv(g)
    rho = RepTuple(sl(2), tuple(g @ haar_su(2, rng) @ gi for _ in range(2)))
    out, trace = kn_flow(rho, tol=1e-8)
    assert trace.converged
    scale = np.sqrt(sum(frob(m) ** 2 for m in out.matrices))
    h = 1e-4
    for _ in range(20):
        H = random_traceless_hermitian(2, rng)
        H = H / frob(H)
        ep, em = exp_herm(H, h), exp_herm(H, -h)
        p_fwd = sum(np.trace(m @ m.conj().T).real for m in (ep @ x @ em for x in out.matrices))
        p_bwd = sum(np.trace(m @ m.conj().T).real for m in (em @ x @ ep for x in out.matrices))
        assert abs(p_fwd - p_bwd) / (2 * h) < 10 * 1e-8 * scale + 1e-7 * h


def test_composite_retraction_su_input_fixed():
    rng = np.random.default_rng(8)
    rho = sample_tuple(su(3), 2, rng)
    for t in (0.0, 0.5, 1.0):
        result = composite_retraction(rho, t)
        for key, v in result.before.items():
            assert abs(complex(v) - complex(result.after[key])) < 1e-8, key


def test_composite_retraction_t0_polystable():
    rng = np.random.default_rng(9)
    g = sample_tuple(sl(2), 1, rng)[0]
    gi = np.linalg.inv(g)
    rho = RepTuple(sl(2), tuple(g @ haar_su(2, rng) @ gi for _ in range(2)))
    result = composite_retraction(rho, 0.0)
    for key, v in result.before.items():
        assert abs(complex(v) - complex(result.after[key])) < 1e-8, key


def test_composite_retraction_conjugation_robust():
    rng = np.random.default_rng(10)
    g0 = sample_tuple(sl(2), 1, rng)[0]
    gi0 = np.linalg.inv(g0)
    rho = RepTuple(sl(2), tuple(g0 @ haar_su(2, rng) @ gi0 for _ in range(2)))
    g = sample_tuple(sl(2), 1, rng)[0]
    moved = conjugate_tuple(g, rho)
    r1 = composite_retraction(rho, 1.0)
    r2 = composite_retraction(moved, 1.0)
    for key, v in r1.after.items():
        assert abs(complex(v) - complex(r2.after[key])) < 1e-6, key


def test_composite_retraction_conjugation_robust_su3():
    rng = np.random.default_rng(12)
    g0 = sample_tuple(sl(3), 1, rng)[0]
    gi0 = np.linalg.inv(g0)
    rho = RepTuple(sl(3), tuple(g0 @ haar_su(3, rng) @ gi0 for _ in range(2)))
    g = sample_tuple(sl(3), 1, rng)[0]
    r1 = composite_retraction(rho, 1.0)
    r2 = composite_retraction(conjugate_tuple(g, rho), 1.0)
    for key, v in r1.after.items():
        assert abs(complex(v) - complex(r2.after[key])) < 1e-6, key


def test_flow_trace_csv():
    rng = np.random.default_rng(11)
    rho = sample_tuple(su(2), 2, rng)
    _, trace = kn_flow(rho)
    rows = list(trace.to_csv_rows())
    assert rows[0] == ("iter", "p", "residual", "step")
    assert len(rows) == len(trace.steps) + 1
