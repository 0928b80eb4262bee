import math
import warnings

import numpy as np
import pytest
from hypothesis import given, strategies as st

from helpers import unit_vectors
from horizonqi.errors import ConfigurationError, ContractError, DomainError, LabelError, UnsupportedError
from horizonqi.horizon import (
    BlackHoleModel,
    ModeAmplitudes,
    Scenario,
    amplitudes_from_exponent,
    build_reduced,
    dress_amplitudes,
    dress_state,
    dressed_labels,
    dressing_map,
    hawking_temperature,
    mode_amplitudes,
    reduced_matrices,
)
from horizonqi.qstate import PureState, make_ghz, make_w, make_w1

finite_x = st.floats(-700, 700, allow_nan=False)
mus = st.floats(0, 1).map(lambda m: (m, math.sqrt(1 - m * m)))


def amplitude_vector(n, terms):
    v = np.zeros(2 ** n, dtype=complex)
    for bits, amp in terms.items():
        v[int(bits, 2)] += amp
    return v


# -- models --------------------------------------------------------------------

def test_schwarzschild_temperature_from_mass():
    m = BlackHoleModel.schwarzschild(mass=2.0)
    assert hawking_temperature(m) == pytest.approx(1 / (16 * np.pi))
    assert hawking_temperature(BlackHoleModel.schwarzschild(temperature=3.0)) == 3.0


def test_dilaton_from_charge():
    m = BlackHoleModel.ghs_dilaton(mass=2.0, charge=2.0)
    assert m.dilaton_value == pytest.approx(1.0)
    assert not m.unphysical
    assert BlackHoleModel.ghs_dilaton(mass=1.0, dilaton=1.0).unphysical
    with pytest.raises(UnsupportedError):
        hawking_temperature(m)
    with pytest.raises(UnsupportedError):
        BlackHoleModel.schwarzschild(mass=1.0).dilaton_value


def test_model_validation():
    with pytest.raises(ConfigurationError):
        BlackHoleModel.schwarzschild(mass=1.0, temperature=1.0)
    with pytest.raises(ConfigurationError):
        BlackHoleModel.schwarzschild()
    with pytest.raises(ConfigurationError):
        BlackHoleModel.ghs_dilaton(mass=1.0, dilaton=0.5, charge=1.0)
    with pytest.raises(DomainError):
        BlackHoleModel.schwarzschild(mass=-1.0)
    with pytest.raises(DomainError):
        BlackHoleModel.schwarzschild(temperature=0.0)
    with pytest.raises(DomainError):
        BlackHoleModel.ghs_dilaton(mass=1.0, dilaton=-0.1)
    with pytest.raises(ConfigurationError):
        BlackHoleModel("kerr", mass=1.0)


def test_exponents():
    assert BlackHoleModel.schwarzschild(temperature=2.0).exponent(3.0) == pytest.approx(1.5)
    assert BlackHoleModel.ghs_dilaton(mass=1.0, dilaton=0.25).exponent(1.0) == pytest.approx(6 * np.pi)
    with pytest.raises(DomainError):
        BlackHoleModel.schwarzschild(temperature=1.0).exponent(-1.0)
    with pytest.raises(DomainError):
        BlackHoleModel.schwarzschild(temperature=1.0).exponent(float("nan"))


@pytest.mark.parametrize(
    "model",
    [
        BlackHoleModel.schwarzschild(mass=1.5),
        BlackHoleModel.schwarzschild(temperature=0.2),
        BlackHoleModel.ghs_dilaton(mass=1.0, dilaton=0.3),
        BlackHoleModel.ghs_dilaton(mass=2.0, charge=3.0),
    ],
)
def test_model_dict_round_trip(model):
    assert BlackHoleModel.from_dict(model.to_dict()) == model


def test_model_dict_errors():
    with pytest.raises(ConfigurationError):
        BlackHoleModel.from_dict({"type": "schwarzschild", "spin": 1})
    with pytest.raises(ConfigurationError):
        BlackHoleModel.from_dict({"type": "dilaton", "dilaton": 1})
    with pytest.raises(ConfigurationError):
        BlackHoleModel.from_dict({"mass": 1})


# -- amplitudes ----------------------------------------------------------------

@given(finite_x)
def test_normalization_identity(x):
    mu, nu = amplitudes_from_exponent(x)
    assert abs(mu ** 2 + nu ** 2 - 1) <= 1e-12
    assert 0 <= mu <= 1 and 0 <= nu <= 1


@given(st.floats(-30, 30))
def test_mode_ratio_is_boltzmann(x):
    mu, nu = amplitudes_from_exponent(x)
    assert nu ** 2 / mu ** 2 == pytest.approx(math.exp(-x), rel=1e-12)


def test_limits_and_no_overflow():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        mu, nu = amplitudes_from_exponent(np.array([0.0, 1e6, -1e6]))
    np.testing.assert_allclose(mu, [np.sqrt(0.5), 1.0, 0.0])
    np.testing.assert_allclose(nu, [np.sqrt(0.5), 0.0, 1.0])


def test_schwarzschild_amplitude_value():
    amps = mode_amplitudes(BlackHoleModel.schwarzschild(temperature=1.0), 1.0)
    assert amps.mu == pytest.approx(1 / math.sqrt(math.exp(-1) + 1), abs=1e-15)
    assert amps.nu == pytest.approx(1 / math.sqrt(math.e + 1), abs=1e-15)


def test_mode_amplitudes_validation():
    with pytest.raises(ContractError):
        ModeAmplitudes(0.9, 0.3)
    with pytest.raises(ContractError):
        ModeAmplitudes(1.2, 0.0)


# -- dressing ------------------------------------------------------------------

@given(mus)
def test_dressing_map_is_isometry(mn):
    k = dressing_map(*mn)
    np.testing.assert_allclose(k.conj().T @ k, np.eye(2), atol=1e-15)


@given(unit_vectors(8), mus)
def test_dressing_matches_kronecker_isometry(psi, mn):
    k = dressing_map(*mn)
    expected = np.kron(np.eye(2), np.kron(k, k)) @ psi
    np.testing.assert_allclose(dress_amplitudes(psi, 3, [1, 2], *mn), expected, atol=1e-15)


@given(unit_vectors(8), mus)
def test_dressing_all_three(psi, mn):
    k = dressing_map(*mn)
    expected = np.kron(k, np.kron(k, k)) @ psi
    np.testing.assert_allclose(dress_amplitudes(psi, 3, [0, 1, 2], *mn), expected, atol=1e-15)


def test_batched_dressing_matches_pointwise():
    mu = np.array([[1.0, 0.8], [0.6, np.sqrt(0.5)]])
    nu = np.sqrt(1 - mu ** 2)
    psi = make_w1().amplitudes
    batch = dress_amplitudes(psi, 3, [1, 2], mu, nu)
    assert batch.shape == (2, 2, 32)
    for idx in np.ndindex(2, 2):
        np.testing.assert_array_equal(batch[idx], dress_amplitudes(psi, 3, [1, 2], mu[idx], nu[idx]))


def test_dressed_ghz_amplitudes():
    mu, nu = 0.8, 0.6
    s = dress_state(make_ghz(), ["B", "C"], ModeAmplitudes(mu, nu))
    assert s.labels == ("A", "B", "Bbar", "C", "Cbar")
    expected = amplitude_vector(
        5,
        {"00000": mu ** 2, "00011": mu * nu, "01100": mu * nu, "01111": nu ** 2, "11010": 1},
    ) / np.sqrt(2)
    np.testing.assert_allclose(s.amplitudes, expected, atol=1e-15)


def test_dressed_w_amplitudes():
    mu, nu = 0.6, 0.8
    s = dress_state(make_w(), ["B", "C"], ModeAmplitudes(mu, nu))
    expected = amplitude_vector(
        5,
        {
            "00010": mu, "01110": nu, "01000": mu, "01011": nu,
            "10000": mu ** 2, "10011": mu * nu, "11100": mu * nu, "11111": nu ** 2,
        },
    ) / np.sqrt(3)
    np.testing.assert_allclose(s.amplitudes, expected, atol=1e-15)


def test_dressed_w1_amplitudes():
    mu, nu = 0.6, 0.8
    s = dress_state(make_w1(), ["B", "C"], ModeAmplitudes(mu, nu))
    expected = amplitude_vector(
        5,
        {
            "10000": mu ** 2 / 2, "10011": mu * nu / 2, "11100": mu * nu / 2, "11111": nu ** 2 / 2,
            "01000": mu / 2, "01011": nu / 2, "00010": mu / np.sqrt(2), "01110": nu / np.sqrt(2),
        },
    )
    np.testing.assert_allclose(s.amplitudes, expected, atol=1e-15)


def test_dressed_labels_and_errors():
    assert dressed_labels("ABC", ["A", "C"]) == ("A", "Abar", "B", "C", "Cbar")
    with pytest.raises(LabelError):
        dress_state(make_ghz(), ["D"], ModeAmplitudes(1.0, 0.0))


def test_flat_dressing_is_trivial():
    s = dress_state(make_w(), ["B", "C"], ModeAmplitudes(1.0, 0.0))
    _, rho = reduced_matrices("w", 1.0, 0.0)
    psi = make_w().amplitudes
    np.testing.assert_allclose(rho, np.outer(psi, psi.conj()), atol=1e-15)
    assert s.n_qubits == 5


# -- scenarios -----------------------------------------------------------------

def test_scenario_validation():
    model = BlackHoleModel.schwarzschild(temperature=1.0)
    with pytest.raises(ConfigurationError):
        Scenario("w", model, 1.0, traced_party="A")
    with pytest.raises(ConfigurationError):
        Scenario("w1", model, 1.0, traced_party="A")
    Scenario("ghz", model, 1.0, traced_party="A")
    with pytest.raises(LabelError):
        Scenario("w", model, 1.0, traced_party="D")
    with pytest.raises(LabelError):
        Scenario("w", model, 1.0, dressed_parties=("E",))
    with pytest.raises(DomainError):
        Scenario("w", model, -1.0)
    with pytest.raises(ContractError):
        Scenario("cluster", model, 1.0)


def test_scenario_dict_round_trip():
    sc = Scenario("w1", BlackHoleModel.ghs_dilaton(mass=1.0, dilaton=0.4), 0.7, ("B",), "C")
    assert Scenario.from_dict(sc.to_dict()) == sc
    with pytest.raises(ConfigurationError):
        Scenario.from_dict({"family": "w"})


@given(
    st.sampled_from(["ghz", "w", "w1"]),
    st.floats(0.05, 20),
    st.floats(0, 5),
    st.sampled_from([None, "B", "C"]),
)
def test_reduced_states_are_valid_density_operators(family, temp, omega, traced):
    sc = Scenario(family, BlackHoleModel.schwarzschild(temperature=temp), omega, traced_party=traced)
    rho = build_reduced(sc)  # DensityOp validates Hermiticity, trace and positivity
    assert rho.n_qubits == (3 if traced is None else 2)


def test_w_pair_closed_structure():
    mu, nu = 0.8, 0.6
    _, rho = reduced_matrices("w", mu, nu, traced="B")
    expected = np.zeros((4, 4))
    expected[[0, 1, 2, 3], [0, 1, 2, 3]] = [mu ** 2, mu ** 2 + 2 * nu ** 2, mu ** 2, nu ** 2]
    expected[1, 2] = expected[2, 1] = mu
    np.testing.assert_allclose(rho, expected / 3, atol=1e-15)
