"""Shared fixtures: records come from the producing CLI, never from imports."""

import subprocess

import pytest


@pytest.fixture(scope="session")
def pinned_records(tmp_path_factory):
    """The pinned 10000-trial balanced symmetric run, via the real CLI."""
    path = tmp_path_factory.mktemp("records") / "t2_seed42.csv"
    subprocess.run(
        [
            "proxyrd", "simulate",
            "--constraint-set", "t2",
            "--trials", "10000",
            "--seed", "42",
            "--out", str(path),
        ],
        check=True,
        timeout=120,
    )
    return path


@pytest.fixture(scope="session")
def small_records(tmp_path_factory):
    path = tmp_path_factory.mktemp("records") / "small.csv"
    subprocess.run(
        ["proxyrd", "simulate", "--trials", "200", "--seed", "7", "--out", str(path)],
        check=True,
        timeout=120,
    )
    return path
