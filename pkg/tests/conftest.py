"""Shared fixtures and the acceptance-criteria summary hook.

Tests marked ``@pytest.mark.acceptance(n, "title")`` get one PASS/FAIL line
each in a dedicated terminal section at the end of the run.
"""

from __future__ import annotations

import random
from pathlib import Path

import pytest

FIXTURES = Path(__file__).resolve().parent / "fixtures"

_ACCEPTANCE_RESULTS: dict[int, tuple[str, bool]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    number, title = marker.args
    if report.when == "call":
        _ACCEPTANCE_RESULTS[number] = (title, report.passed)
    elif report.when == "setup" and not report.passed:
        _ACCEPTANCE_RESULTS[number] = (title, False)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE_RESULTS):
        title, passed = _ACCEPTANCE_RESULTS[number]
        verdict = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{verdict}] criterion {number:2d}: {title}")


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def corpus_dir() -> Path:
    return FIXTURES / "corpus"


def chain_source(depth: int, prefix: str = "Link") -> str:
    """A single-inheritance chain with ``depth`` edges (depth+1 contracts)."""
    lines = [f"contract {prefix}0 {{ uint256 internal v; }}"]
    for i in range(1, depth + 1):
        lines.append(f"contract {prefix}{i} is {prefix}{i - 1} {{ uint256 internal w{i}; }}")
    return "\n".join(lines) + "\n"


def random_dag(rng: random.Random, max_nodes: int, max_bases: int) -> dict[str, list[str]]:
    """Random acyclic base map; node i only ever inherits from earlier nodes."""
    n = rng.randint(1, max_nodes)
    names = [f"N{i}" for i in range(n)]
    bases: dict[str, list[str]] = {}
    for i, name in enumerate(names):
        k = rng.randint(0, min(max_bases, i))
        bases[name] = rng.sample(names[:i], k) if k else []
    return bases


def dag_to_source(bases: dict[str, list[str]]) -> str:
    lines = []
    for name, parents in bases.items():
        clause = f" is {', '.join(parents)}" if parents else ""
        lines.append(f"contract {name}{clause} {{ }}")
    return "\n".join(lines) + "\n"


@pytest.fixture(scope="session")
def perf_corpus(tmp_path_factory) -> Path:
    """229 synthetic files of roughly 330 lines each, built outside timing."""
    root = tmp_path_factory.mktemp("perf_corpus")
    rng = random.Random(3301229)
    fn_body = [
        "        uint256 next = held[msg.sender] + amount;",
        "        held[msg.sender] = next;",
        "        total = total + amount;",
        "        emit Moved(msg.sender, amount);",
    ]
    for index in range(229):
        lines = [f"pragma solidity ^0.8.{rng.randint(0, 20)};", ""]
        for c in range(8):
            clause = f" is P{index}_{c - 1}" if c else ""
            lines.append(f"contract P{index}_{c}{clause} {{")
            lines.append("    uint256 internal total;")
            lines.append("    mapping(address => uint256) internal held;")
            lines.append("    event Moved(address indexed who, uint256 amount);")
            lines.append("")
            for f in range(5):
                lines.append(f"    function op{c}_{f}(uint256 amount) public {{")
                lines.extend(rng.sample(fn_body, 3))
                lines.append("    }")
                lines.append("")
            lines.append("}")
            lines.append("")
        while len(lines) < 329:
            lines.append(f"// filler line {len(lines)}")
        (root / f"perf_{index:03d}.sol").write_text("\n".join(lines) + "\n", encoding="utf-8")
    return root
