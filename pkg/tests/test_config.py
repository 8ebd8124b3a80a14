"""
Tests for numerics and sweep configuration.
"""

import pytest

from fadecap.config import (
    NumericsConfig,
    SweepConfig,
    configure_numerics,
    get_numerics,
    parse_int_list,
    parse_rho_grid,
    read_config_file,
    reset_numerics,
)
from fadecap.exceptions import ConfigurationError


class TestNumericsConfig:
    """Tests for the NumericsConfig dataclass."""

    def setup_method(self):
        reset_numerics()

    def teardown_method(self):
        reset_numerics()

    def test_default_values(self, monkeypatch):
        """Test default configuration values."""
        monkeypatch.delenv("FADECAP_WORKERS", raising=False)
        config = NumericsConfig()

        assert config.quad_points == 8192
        assert config.series_window == 64
        assert config.series_tol == 1e-12
        assert config.series_cap == 1_000_000
        assert config.lambda_agreement_tol == 1e-6
        assert config.single_letter_grid == 65
        assert config.single_letter_tol == 1e-9
        assert config.laguerre_nodes == 64
        assert config.single_letter_gap_tol == 1e-6
        assert config.ct_panels == 4096
        assert config.mc_batch_size == 100_000
        assert config.workers == 4

    def test_workers_from_environment(self, monkeypatch):
        """Test the FADECAP_WORKERS override."""
        monkeypatch.setenv("FADECAP_WORKERS", "7")
        assert NumericsConfig().workers == 7

        monkeypatch.setenv("FADECAP_WORKERS", "many")
        with pytest.raises(ConfigurationError):
            NumericsConfig()

    def test_invalid_values(self):
        """Test validation of sizes and tolerances."""
        with pytest.raises(ConfigurationError):
            NumericsConfig(quad_points=0)
        with pytest.raises(ConfigurationError):
            NumericsConfig(series_tol=0.0)
        with pytest.raises(ConfigurationError):
            NumericsConfig(single_letter_grid=1)

    def test_with_overrides(self):
        """Test copies with replaced fields; None is ignored."""
        base = NumericsConfig(workers=2)
        updated = base.with_overrides(quad_points=1024, workers=None)
        assert updated.quad_points == 1024
        assert updated.workers == 2
        assert base.quad_points == 8192

        with pytest.raises(ConfigurationError):
            base.with_overrides(not_a_setting=1)

    def test_global_configuration(self):
        """Test configure/get/reset of the process-wide instance."""
        configure_numerics(quad_points=2048)
        assert get_numerics().quad_points == 2048
        configure_numerics(series_cap=10)
        assert get_numerics().quad_points == 2048
        assert get_numerics().series_cap == 10
        reset_numerics()
        assert get_numerics().quad_points == 8192


class TestGridParsing:
    """Tests for rho grid and integer list parsing."""

    def test_comma_list(self):
        assert parse_rho_grid("1e-3, 1e-2,0.1") == [1e-3, 1e-2, 0.1]

    def test_logspace(self):
        """Test decade-spaced grids."""
        grid = parse_rho_grid("logspace:-3:-1:3")
        assert grid == pytest.approx([1e-3, 1e-2, 1e-1])

    @pytest.mark.parametrize("text", ["", "logspace:1:2", "logspace:a:b:3", "1,x"])
    def test_malformed(self, text):
        with pytest.raises(ConfigurationError):
            parse_rho_grid(text)

    def test_int_list(self):
        assert parse_int_list("1, 16,1024") == [1, 16, 1024]
        with pytest.raises(ConfigurationError):
            parse_int_list("1.5")


class TestConfigFile:
    """Tests for the flat key = value file format."""

    def test_read_config_file(self, tmp_path):
        """Test comments, quotes and shared lines."""
        path = tmp_path / "sweep.conf"
        path.write_text(
            "# bounds sweep\n"
            "model = \"gauss_markov\", r = 0.9\n"
            "beta = 2   # average limited\n"
            "rho = 1e-3,1e-2\n"
            "\n"
            "units = 'bits'\n"
        )
        values = read_config_file(str(path))
        assert values == {
            "model": "gauss_markov",
            "r": "0.9",
            "beta": "2",
            "rho": "1e-3,1e-2",
            "units": "bits",
        }

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigurationError):
            read_config_file(str(tmp_path / "absent.conf"))

    def test_bad_line(self, tmp_path):
        path = tmp_path / "bad.conf"
        path.write_text("beta 2\n")
        with pytest.raises(ConfigurationError):
            read_config_file(str(path))


class TestSweepConfig:
    """Tests for SweepConfig loading and validation."""

    def test_defaults(self):
        config = SweepConfig().validate()
        assert config.model == "iid"
        assert config.beta == 1.0
        assert config.seed == 42
        assert config.units == "nats"

    def test_load_with_overrides(self, tmp_path):
        """Test that command-line values win over the file."""
        path = tmp_path / "sweep.conf"
        path.write_text("model = gauss_markov\nr = 0.9\nbeta = 2\nquad_points = 4096\n")
        config = SweepConfig.load(str(path), beta=4.0, rho="logspace:-2:-1:2", n=None)

        assert config.beta == 4.0
        assert config.rho_grid == pytest.approx([1e-2, 1e-1])
        assert config.n_values == [1024]
        assert config.model_spec == "gauss_markov?r=0.9"
        assert config.numerics == {"quad_points": 4096}

    def test_model_spec_merges_parameters(self):
        config = SweepConfig(model="finite_memory?taps=0.5", model_params={"extra": "1"})
        assert config.model_spec == "finite_memory?taps=0.5&extra=1"

    @pytest.mark.parametrize("overrides", [
        {"rho": "-1"},
        {"beta": 0.5},
        {"n": "0"},
        {"units": "hartleys"},
        {"seed": -1},
        {"samples": 0},
    ])
    def test_invalid(self, overrides):
        with pytest.raises(ConfigurationError):
            SweepConfig.load(**overrides)

    def test_invalid_number(self):
        with pytest.raises(ConfigurationError):
            SweepConfig.load(beta="two")

    def test_to_dict(self):
        data = SweepConfig(model="gauss_markov?r=0.5").to_dict()
        assert data["model"] == "gauss_markov?r=0.5"
        assert data["rho_grid"] == [1e-3, 1e-2, 1e-1, 1.0]
