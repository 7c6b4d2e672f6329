def pytest_configure(config):
    config.addinivalue_line(
        "markers", "slow: scan/sweep tests that take tens of seconds")
