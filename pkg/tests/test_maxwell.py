import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from apvm.errors import DomainError
from apvm.maxwell import (
    MaxwellMethod,
    advance_mode,
    eigen_amplification,
    map_coefficients,
    mode_matrix,
    rk_stage_map,
    stability_function,
)

ALL = list(MaxwellMethod)
L_STABLE = [MaxwellMethod.IMPLICIT_EULER, MaxwellMethod.RADAU_IIA3, MaxwellMethod.SDIRK2]


def one_step_matrix(method, k, c, dt):
    a, b = map_coefficients(method, k, c, dt)
    return a * np.eye(2) + b * dt * mode_matrix(k, c)


@pytest.mark.parametrize("method", ALL)
def test_phi_at_zero(method):
    assert stability_function(method, 0.0) == pytest.approx(1.0)


@pytest.mark.parametrize("method, z, expected", [
    (MaxwellMethod.IMPLICIT_EULER, -1.0, 0.5),
    (MaxwellMethod.RADAU_IIA3, -1.0, 4.0 / 11.0),
    (MaxwellMethod.CRANK_NICOLSON, -1.0, 1.0 / 3.0),
    (MaxwellMethod.EXACT, -1.0, np.exp(-1.0)),
    (MaxwellMethod.SDIRK2, -1.0, (2 - np.sqrt(2)) / (2 - np.sqrt(2) / 2) ** 2),
])
def test_phi_table_values(method, z, expected):
    assert stability_function(method, z) == pytest.approx(expected, rel=1e-14)


@pytest.mark.parametrize("method", L_STABLE)
def test_l_stability(method):
    for y in (1e4, 1e8):
        assert abs(stability_function(method, 1j * y)) < 10.0 / y
    assert abs(stability_function(method, -1e10)) < 1e-9


@pytest.mark.parametrize("method", [MaxwellMethod.EXACT, MaxwellMethod.CRANK_NICOLSON])
def test_unit_modulus_on_imaginary_axis(method):
    for y in (1e-3, 1.0, 1e3):
        assert abs(stability_function(method, 1j * y)) == pytest.approx(1.0, abs=1e-13)


def test_crank_nicolson_limit_is_minus_one():
    assert stability_function(MaxwellMethod.CRANK_NICOLSON, -1e12) == pytest.approx(-1.0, abs=1e-11)


@settings(max_examples=100, deadline=None)
@given(st.floats(-1e6, 1e6), st.sampled_from(ALL))
def test_a_stable_on_imaginary_axis(y, method):
    assert abs(stability_function(method, 1j * y)) <= 1.0 + 1e-13


@pytest.mark.parametrize("method, z", [(MaxwellMethod.IMPLICIT_EULER, 1.0),
                                       (MaxwellMethod.CRANK_NICOLSON, 2.0),
                                       (MaxwellMethod.SDIRK2, 1.0 / (1 - np.sqrt(2) / 2))])
def test_pole_is_domain_error(method, z):
    with pytest.raises(DomainError):
        stability_function(method, z)


@pytest.mark.parametrize("method", ALL)
@pytest.mark.parametrize("y", [1e-6, 0.1, 1.0, 30.0, 1e3, 1e6])
def test_closed_form_matches_stage_solution(method, y):
    k, c = 1.25, 2.0
    dt = y / (c * k)
    a = one_step_matrix(method, k, c, dt)
    b = rk_stage_map(method, k, c, dt)
    scale = max(1.0, np.max(np.abs(b)))
    # the stage system is itself ill-conditioned for huge y; Radau is held to 1e-12
    tol = 1e-12 if method is MaxwellMethod.RADAU_IIA3 else 1e-9
    assert np.max(np.abs(a - b)) <= tol * scale


@pytest.mark.parametrize("y", np.logspace(-3, 6, 19))
def test_radau_rational_matrix_function(y):
    k, c = 0.4, 1.0
    dt = y / (c * k)
    Z = dt * mode_matrix(k, c)
    I = np.eye(2)
    rational = (I + Z / 3) @ np.linalg.inv(I - 2 * Z / 3 + Z @ Z / 6)
    stage = rk_stage_map(MaxwellMethod.RADAU_IIA3, k, c, dt)
    assert np.max(np.abs(rational - stage)) <= 1e-12 * max(1.0, np.max(np.abs(stage)))


@pytest.mark.parametrize("method", ALL)
def test_eigenvalues_of_map_are_phi(method):
    k, c, dt = 0.7, 3.0, 0.4
    ev = sorted(np.linalg.eigvals(one_step_matrix(method, k, c, dt)), key=lambda z: z.imag)
    phi = sorted([stability_function(method, 1j * c * k * dt),
                  stability_function(method, -1j * c * k * dt)], key=lambda z: z.imag)
    assert np.allclose(ev, phi, atol=1e-13)


@pytest.mark.parametrize("method", ALL)
def test_zero_mode_is_identity(method):
    e2, b = advance_mode(method, np.array([1 + 2j]), np.array([3 - 1j]), np.array([0.0]), 5.0, 0.1)
    assert e2[0] == 1 + 2j and b[0] == 3 - 1j


def test_implicit_euler_printed_matrix():
    e2, b = advance_mode(MaxwellMethod.IMPLICIT_EULER, 1.0, 0.0, 1.0, 1.0, 1.0)
    assert e2 == pytest.approx(0.5) and b == pytest.approx(-0.5j)


def test_implicit_euler_damps_b_as_c_grows():
    c, dt, k = 1e8, 0.1, 1.0
    _, b = advance_mode(MaxwellMethod.IMPLICIT_EULER, 1.0, 1.0, k, c, dt)
    assert abs(b) <= 2.0 / (dt * c * k) ** 2
    _, b2 = advance_mode(MaxwellMethod.IMPLICIT_EULER, 1.0, 1.0, k, 10 * c, dt)
    assert abs(b2) / abs(b) == pytest.approx(1e-2, rel=1e-6)


def test_eigen_amplification_values():
    assert eigen_amplification("exact", 2.0, 3.0, 0.7) == pytest.approx(1.0)
    assert eigen_amplification("cn", 2.0, 3.0, 0.7) == pytest.approx(1.0)
    assert eigen_amplification("euler", 1.0, 1.0, 1.0) == pytest.approx(1 / np.sqrt(2))


@pytest.mark.parametrize("method, order", [(MaxwellMethod.IMPLICIT_EULER, 1),
                                           (MaxwellMethod.CRANK_NICOLSON, 2),
                                           (MaxwellMethod.SDIRK2, 2),
                                           (MaxwellMethod.RADAU_IIA3, 3)])
def test_convergence_order_against_exact(method, order):
    k, c, T = 1.0, 1.0, 1.0
    y0 = np.array([1.0 + 0j, 0.5j])
    exact = rk_stage_map(MaxwellMethod.EXACT, k, c, T) @ y0
    errs = []
    for n in (40, 80, 160):
        e2, b = y0
        for _ in range(n):
            e2, b = advance_mode(method, e2, b, k, c, T / n)
        errs.append(np.max(np.abs(np.array([e2, b]) - exact)))
    rates = np.log2(np.array(errs[:-1]) / np.array(errs[1:]))
    assert np.all(np.abs(rates - order) < 0.15)


def test_parse_aliases():
    assert MaxwellMethod.parse("Radau-IIA3") is MaxwellMethod.RADAU_IIA3
    assert MaxwellMethod.parse("crank_nicolson") is MaxwellMethod.CRANK_NICOLSON
    assert MaxwellMethod.parse("implicit-euler") is MaxwellMethod.IMPLICIT_EULER
    with pytest.raises(ValueError):
        MaxwellMethod.parse("rk4")
