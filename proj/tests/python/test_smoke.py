import math

import numpy as np
import pytest
from scipy import integrate, optimize, special

import levytype as lt


def test_brownian_exponent_is_half_square():
    psi = lt.brownian().exponent([-2.0, 0.5, 3.0])
    assert np.allclose(psi, [2.0, 0.125, 4.5], atol=1e-14)


def test_poisson_exponent():
    xi = np.array([0.3, 1.7])
    expected = 2.0 * (1.0 - np.exp(1j * xi))
    assert np.allclose(lt.poisson(2.0).exponent(xi), expected, atol=1e-13)


def test_stable_exponent_scales():
    t = lt.symmetric_stable(1.5, 1.0)
    assert np.allclose(t.exponent([2.0]), [2.0**1.5], rtol=1e-8)


def test_triplet_json_round_trip():
    t = lt.compound_poisson_gaussian(3.0)
    back = lt.LevyTriplet.from_json(t.to_json())
    xi = [0.1, 1.0, 4.0]
    assert np.allclose(back.exponent(xi), t.exponent(xi), atol=1e-13)


def test_bad_diffusion_raises():
    with pytest.raises(lt.InvalidArgument):
        lt.LevyTriplet([0.0, 0.0], [[1.0, 2.0], [2.0, 1.0]])


def test_paths_replay_and_report_truncation():
    t = lt.symmetric_stable_density(1.5, 1.0)
    a = lt.sample_path(t, 1e-2, 1.0, 0.05, seed=3, stream=1)
    b = lt.sample_path(t, 1e-2, 1.0, 0.05, seed=3, stream=1)
    assert np.array_equal(a["values"], b["values"])
    assert a["truncation_bound"] == pytest.approx(4.0 * math.sqrt(1e-2))


def test_endpoint_cf_matches_gaussian():
    x = lt.sample_endpoints(lt.brownian(), 0.05, 1.0, 20000, seed=7)
    phi, se = lt.empirical_cf(x, [1.0])
    assert abs(phi[0] - math.exp(-0.5)) < 4 * se[0]


def test_maximal_constant_d1():
    # 4 int_0^inf (1 + r^2) |u_hat(r)| dr for the bump (1 - x^2)^4_+, split at
    # the zeros of J_4.5 plus the averaged tail of the Bessel asymptotics
    amp = 384 / math.sqrt(2 * math.pi)

    def f(r):
        return (1 + r * r) * abs(amp * special.spherical_jn(4, r) * math.sqrt(2 * r / math.pi) / r**4.5)

    knots = [0.0] + [optimize.brentq(lambda r: special.jv(4.5, r), a, a + math.pi)
                     for a in np.arange(5.0, 600.0, math.pi)
                     if special.jv(4.5, a) * special.jv(4.5, a + math.pi) < 0]
    total = sum(integrate.quad(f, a, b, limit=200)[0] for a, b in zip(knots[:-1], knots[1:]))
    total += amp * math.sqrt(2 / math.pi) * (2 / math.pi) / (2 * knots[-1] ** 2)
    assert lt.maximal_constant(1) == pytest.approx(4 * total, rel=1e-5)


def test_constant_alpha_indices():
    d = lt.indices_at_infinity(1.3)
    assert d["beta"] == pytest.approx(1.3, abs=1e-6)
    assert d["delta"] == pytest.approx(1.3, abs=1e-6)


def test_generator_forms_agree():
    t = lt.compound_poisson_gaussian(2.0)
    a, _ = lt.generator(t, 0.4)
    b, _ = lt.generator(t, 0.4, fourier=True)
    assert a == pytest.approx(b, rel=1e-7)
