import logging

from ballkit import config, settings


def test_defaults():
    assert config.get_chop_tolerance() == 1e-15
    assert config.get_initial_sizes() == (17, 16, 16)
    assert config.get_size_caps() == (2**13 + 1, 2**13)
    assert config.get_sylvester_method() == "kronecker"
    assert config.get_log_level() == "WARNING"


def test_tolerance_from_environment(monkeypatch):
    monkeypatch.setenv("BALLKIT_TOL", "1e-10")
    assert config.get_chop_tolerance() == 1e-10


def test_invalid_tolerance_falls_back_to_settings(monkeypatch):
    settings.update_settings(chop_tolerance=1e-12)
    for value in ("abc", "-1", "0"):
        monkeypatch.setenv("BALLKIT_TOL", value)
        assert config.get_chop_tolerance() == 1e-12


def test_log_level_from_environment(monkeypatch):
    monkeypatch.setenv("BALLKIT_LOG_LEVEL", "debug")
    assert config.get_log_level() == "DEBUG"
    assert logging.getLevelName(config.get_log_level()) == logging.DEBUG


def test_update_settings_persists():
    settings.update_settings(initial_radial=9, initial_angular=7, sylvester_method="bartels-stewart")
    assert settings.SETTINGS_FILE.exists()
    assert settings.get_settings().initial_radial == 9
    # odd angular sizes are rounded up to the next even length
    assert config.get_initial_sizes() == (9, 8, 8)
    assert config.get_sylvester_method() == "bartels-stewart"


def test_corrupt_settings_file_gives_defaults():
    settings.SETTINGS_FILE.write_text("{not json")
    assert settings.get_settings() == settings.Settings()
