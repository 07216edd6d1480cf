"""Smoke test for the hole_anneal extension module.

Build and install first, e.g. `maturin develop --release` from crates/py,
then run `python python/smoke_test.py` (or point pytest at this file).
"""

import math

import hole_anneal as ha


def test_spectrum():
    p = ha.ModelParams(4, 1.0, 1.0)
    lo, hi = ha.eigenvalues(p, 1.0, 4.0)
    assert abs(lo + 5.0) < 1e-14 and abs(hi + 1.0) < 1e-14
    assert ha.gap(p, 1.0, 4.0) == 4.0
    c_minus, c_plus = ha.coefficients(p, 1.0, 4.0)
    assert abs(c_minus * c_plus + 3.0) < 1e-12
    h = ha.reduced_hamiltonian(p, 1.0, 4.0)
    assert h[0][0] == -4.0 and abs(h[0][1] + math.sqrt(3.0)) < 1e-15


def test_evolution_and_oracle():
    p = ha.ModelParams(32, 0.5, 2.0)
    s = ha.Schedule("const-gamma", p, 3.0)
    assert s.couplings(1.0) == (0.5, 32.0)
    red = ha.evolve_reduced(s, n_samples=9)
    full = ha.evolve_full(s, w=5, n_steps=red.n_steps, n_samples=9)
    assert len(red.samples) == 9
    assert abs(red.final_p_w - full.final_p_w) < 1e-7
    assert red.norm_drift < 1e-9
    assert ha.convergence_check(s, s.default_steps()) < 1e-8


def test_tau_min_and_guards():
    p = ha.ModelParams(1000, 0.5, 2.0)
    res = ha.tau_min(p, "const-gamma", 0.33)
    assert res.tau_lo < res.tau_min == res.tau_hi
    s = ha.Schedule("const-gamma", p, res.tau_min)
    assert ha.success_probability(s) >= 0.33 - 1e-4

    try:
        ha.tau_min(ha.ModelParams(1_000_000, 0.5, 0.5), "const-gamma", 0.33)
    except RuntimeError as e:
        assert "unreachable" in str(e)
    else:
        raise AssertionError("expected an unreachable-target error")

    for bad in (lambda: ha.ModelParams(2, 0.5, 2.0), lambda: ha.Schedule("sideways", p, 1.0)):
        try:
            bad()
        except ValueError:
            pass
        else:
            raise AssertionError("expected ValueError")


def test_analysis():
    p = ha.ModelParams(1_000_000, 0.5, 2.0)
    assert ha.critical_point(p, "const-gamma") == 0.5
    af = ha.adiabatic_factor_numeric(ha.Schedule("const-gamma", p, 1.0))
    assert abs(af.alpha / ha.adiabatic_factor_closed_form(p, "const-gamma") - 1.0) < 1e-3
    assert abs(af.s_at_min_gap - ha.peak_location(p, "const-gamma")) < 1e-6
    prof = ha.localization_profile(p, "const-gamma", 11)
    assert prof[0][1] < 1e-5 and prof[-1][1] > 0.99
    rep = ha.gap_scaling(0.5, 2.0, "const-gamma", [100, 10_000, 1_000_000], "bounded")
    assert abs(rep.fitted_exponent + 0.5) < 0.02 and rep.variant == "bounded"


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            fn()
            print(f"ok  {name}")
    print("smoke test passed")
