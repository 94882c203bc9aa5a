pytest_plugins = [
    "test.fixtures.devices",
    "test.fixtures.configurations",
]
