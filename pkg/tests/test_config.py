import math

import pytest

from xxzgeom import ConfigError, SweepSpec, build_spec, load_config
from xxzgeom.config import QUANTITY_COLUMNS
from xxzgeom.dynamics import Method
from xxzgeom.model import Convention, ModelParams


def write(tmp_path, text):
    path = tmp_path / "sweep.cfg"
    path.write_text(text, encoding="utf-8")
    return str(path)


def test_defaults():
    spec = build_spec({}, {})
    assert spec.params_base.coupling_j == 0.3
    assert spec.alphas == (0.0,)
    assert spec.eta_max == pytest.approx(2 * math.pi)
    assert spec.n_points == 2001
    assert spec.method is Method.ANALYTIC
    assert spec.seed == 0
    assert spec.quantities == frozenset(QUANTITY_COLUMNS)


def test_file_values_and_comments(tmp_path):
    path = write(
        tmp_path,
        "# sweep for the concurrence figure\n"
        "J = 0.3\n"
        "alphas = 0, 0.01, 0.1   # three cells\n"
        "eta_max = 6.0\n"
        "n_points = 11\n"
        "quantities = C, LHS\n"
        "method = closed\n"
        "convention = literal\n"
        "seed = 7\n",
    )
    values = load_config(path)
    spec = build_spec(values, {})
    assert spec.alphas == (0.0, 0.01, 0.1)
    assert spec.eta_max == 6.0
    assert spec.n_points == 11
    assert spec.quantities == frozenset({"C", "LHS"})
    assert spec.method is Method.CLOSED
    assert spec.params_base.convention is Convention.LITERAL
    assert spec.seed == 7


def test_cli_overrides_file(tmp_path):
    values = load_config(write(tmp_path, "J = 0.3\nn_points = 11\n"))
    spec = build_spec(values, {"J": 0.5, "n_points": None})
    assert spec.params_base.coupling_j == 0.5
    assert spec.n_points == 11


def test_single_alpha_key(tmp_path):
    values = load_config(write(tmp_path, "alpha = 0.25\n"))
    assert values["alphas"] == (0.25,)


def test_unknown_key_named(tmp_path):
    path = write(tmp_path, "J = 0.3\nbogus = 1\n")
    with pytest.raises(ConfigError, match="bogus"):
        load_config(path)


def test_malformed_number_has_line(tmp_path):
    path = write(tmp_path, "J = 0.3\neta_max = zebra\n")
    with pytest.raises(ConfigError, match=":2"):
        load_config(path)


def test_missing_equals(tmp_path):
    path = write(tmp_path, "J 0.3\n")
    with pytest.raises(ConfigError, match="key = value"):
        load_config(path)


def test_unknown_quantity(tmp_path):
    path = write(tmp_path, "quantities = C, XYZ\n")
    with pytest.raises(ConfigError, match="XYZ"):
        load_config(path)


def test_bad_method(tmp_path):
    path = write(tmp_path, "method = euler\n")
    with pytest.raises(ConfigError, match="method"):
        load_config(path)


def test_spec_invariants():
    base = ModelParams(coupling_j=0.3)
    with pytest.raises(ConfigError, match="n_points"):
        SweepSpec(
            params_base=base, alphas=(0.0,), eta_max=1.0, n_points=1,
            quantities=frozenset({"C"}), method=Method.ANALYTIC, seed=0,
        )
    with pytest.raises(ConfigError, match="alphas"):
        SweepSpec(
            params_base=base, alphas=(), eta_max=1.0, n_points=5,
            quantities=frozenset({"C"}), method=Method.ANALYTIC, seed=0,
        )
    with pytest.raises(ConfigError, match="alphas"):
        SweepSpec(
            params_base=base, alphas=(-0.1,), eta_max=1.0, n_points=5,
            quantities=frozenset({"C"}), method=Method.ANALYTIC, seed=0,
        )
    with pytest.raises(ConfigError, match="eta_max"):
        SweepSpec(
            params_base=base, alphas=(0.0,), eta_max=0.0, n_points=5,
            quantities=frozenset({"C"}), method=Method.ANALYTIC, seed=0,
        )


def test_invalid_j_becomes_config_error():
    with pytest.raises(ConfigError):
        build_spec({}, {"J": -1.0})


def test_missing_config_file():
    with pytest.raises(ConfigError):
        load_config("/nonexistent/sweep.cfg")
