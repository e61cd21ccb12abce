import pytest

from quatorb.config import EXAMPLE_CONFIG, parse_config_file, parse_config_text
from quatorb.dynamics import Formulation, Integrator
from quatorb.errors import ConfigError

MINIMAL = """\
i1 = 1.0
i2 = 2.0
i3 = 3.0
q = 1 0 0 0
mu = 0.3 0.4 0.5
dt = 0.001
t_end = 1.0
"""


class TestParse:
    def test_example_config(self):
        cfg = parse_config_text(EXAMPLE_CONFIG)
        assert cfg.inertia.i2 == 2.0
        assert cfg.dt == 0.001
        assert cfg.output_every == 100

    def test_defaults(self):
        cfg = parse_config_text(MINIMAL)
        assert cfg.integrator is Integrator.RK4_PROJECTED
        assert cfg.formulation is Formulation.CANONICAL
        assert cfg.output_every == 1

    def test_comments_and_blank_lines(self):
        cfg = parse_config_text("# top comment\n\n" + MINIMAL + "\n# trailing\n")
        assert cfg.t_end == 1.0

    def test_inline_comment(self):
        cfg = parse_config_text(MINIMAL.replace("dt = 0.001", "dt = 0.001  # step"))
        assert cfg.dt == 0.001

    def test_enums(self):
        cfg = parse_config_text(MINIMAL + "integrator = rk4_raw\nformulation = both\n")
        assert cfg.integrator is Integrator.RK4_RAW
        assert cfg.formulation is Formulation.BOTH

    def test_file_roundtrip(self, tmp_path):
        path = tmp_path / "run.cfg"
        path.write_text(MINIMAL, encoding="utf-8")
        assert parse_config_file(path).dt == 0.001


class TestRejection:
    def test_unknown_key(self):
        with pytest.raises(ConfigError, match="unknown key"):
            parse_config_text(MINIMAL + "colour = blue\n")

    def test_duplicate_key(self):
        with pytest.raises(ConfigError, match="duplicate"):
            parse_config_text(MINIMAL + "dt = 0.01\n")

    def test_missing_key(self):
        with pytest.raises(ConfigError, match="missing required"):
            parse_config_text("i1 = 1\n")

    def test_bad_enum(self):
        with pytest.raises(ConfigError, match="integrator"):
            parse_config_text(MINIMAL + "integrator = euler\n")

    def test_wrong_vector_length(self):
        with pytest.raises(ConfigError, match="needs 4 numbers"):
            parse_config_text(MINIMAL.replace("q = 1 0 0 0", "q = 1 0 0"))

    def test_non_numeric(self):
        with pytest.raises(ConfigError):
            parse_config_text(MINIMAL.replace("dt = 0.001", "dt = fast"))

    def test_invalid_run_parameters(self):
        with pytest.raises(ConfigError):
            parse_config_text(MINIMAL.replace("t_end = 1.0", "t_end = 0"))
        with pytest.raises(ConfigError):
            parse_config_text(MINIMAL.replace("i1 = 1.0", "i1 = -1.0"))

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError, match="cannot read"):
            parse_config_file(tmp_path / "nope.cfg")


class TestUnitNorm:
    def test_non_unit_q_rejected(self):
        with pytest.raises(ConfigError, match="initial state"):
            parse_config_text(MINIMAL.replace("q = 1 0 0 0", "q = 1 1 0 0"))

    def test_explicit_renormalization(self):
        cfg = parse_config_text(MINIMAL.replace("q = 1 0 0 0", "q = 2 0 0 0")
                                + "renormalize_q = true\n")
        assert cfg.initial.q.w == 1.0

    def test_bad_bool(self):
        with pytest.raises(ConfigError, match="renormalize_q"):
            parse_config_text(MINIMAL + "renormalize_q = yes\n")
