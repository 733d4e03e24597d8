"""End-to-end acceptance suite, one test per numbered criterion.

Each test prints a ``PASS``/``FAIL`` line before asserting; conftest gathers
them into a summary block at the end of the run.  Sample-count criteria keep drawing fresh
batches of trials until the required number of samples has been checked.
"""

from __future__ import annotations

import json
import os
import subprocess
import sys
import time

import pytest

from cyclesep.properties import verify

SEED = 7


def announce(number: int, title: str, ok: bool, detail: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'} criterion {number:>2}: {title} ({detail})"
    print(line)


def run_timed(pid: str, trials: int, seed: int = SEED):
    start = time.perf_counter()
    rep = verify(pid, trials, seed)
    return rep, time.perf_counter() - start


def run_until(pid: str, samples: int, batch: int, seed: int = SEED):
    """Verify in batches of fresh trials until ``samples`` have been checked."""
    instances = checked = 0
    failures, errors = [], []
    start = time.perf_counter()
    k = 0
    while checked < samples:
        rep = verify(pid, batch, seed + k)
        k += 1
        instances += rep.instances
        checked += rep.samples
        failures += rep.failures
        errors += rep.errors
        assert k < 200, f"{pid} produced too few samples"
    return instances, checked, failures, errors, time.perf_counter() - start


def summary(rep, elapsed: float) -> str:
    return (f"{rep.instances} instances, {rep.samples} samples, {len(rep.failures)} failures, "
            f"{len(rep.errors)} errors, {elapsed:.2f}s")


def test_criterion_01_euler_suite():
    rep, elapsed = run_timed("euler", 200)
    ok = rep.ok and rep.instances == 200 and elapsed < 5.0
    announce(1, "Euler characteristic on 200 embeddings under 5 s", ok, summary(rep, elapsed))
    assert rep.ok and rep.instances == 200
    assert elapsed < 5.0


def test_criterion_02_jordan_split():
    rep, elapsed = run_timed("jordan_split", 50)
    ok = rep.ok and rep.instances == 50 and elapsed < 10.0
    announce(2, "every cycle up to length 8 splits the dual in two", ok, summary(rep, elapsed))
    assert rep.ok and rep.instances == 50
    assert elapsed < 10.0


def test_criterion_03_oracle_agreement():
    rep, elapsed = run_timed("oracle_agreement", 20)
    ok = rep.ok and rep.samples == 20 * 500 and elapsed < 10.0
    announce(3, "combinatorial side equals ray casting, 20 x 500 queries", ok, summary(rep, elapsed))
    assert rep.ok and rep.samples == 20 * 500
    assert elapsed < 10.0


def _sampled(number: int, title: str, pid: str, samples: int, batch: int) -> None:
    instances, checked, failures, errors, elapsed = run_until(pid, samples, batch)
    ok = not failures and not errors
    detail = f"{instances} instances, {checked} samples, {len(failures)} failures, {len(errors)} errors, {elapsed:.2f}s"
    if failures:
        detail += f", first witness {json.dumps(failures[0].witness, sort_keys=True)}"
    announce(number, title, ok, detail)
    assert not errors, errors[:1]
    assert len(failures) == 0, f"{len(failures)} failing instances; first witness {failures[0].witness}"


def test_criterion_04_property_a():
    _sampled(4, "paths between separated vertices run along the cycle", "prop_A_subpath", 1000, 40)


def test_criterion_05_property_b():
    _sampled(5, "crossing is symmetric", "prop_B_symmetry", 1000, 40)


def test_criterion_06_property_c():
    _sampled(6, "non-crossing pairs leave at most three classes", "prop_C_three_classes", 1000, 40)


def test_criterion_07_single_path_meet():
    _sampled(7, "cycles meeting in a single path do not cross", "single_path_meet", 1000, 40)


def test_criterion_08_order_property():
    instances, checked, failures, errors, elapsed = run_until("order_property", 100, 100)
    ok = not failures and not errors and elapsed < 20.0
    announce(8, "cage orders form exactly one dihedral class", ok,
             f"{checked} families, {len(failures)} failures, {len(errors)} errors, {elapsed:.2f}s")
    assert not failures and not errors
    assert elapsed < 20.0


def test_criterion_09_non_touching():
    _sampled(9, "each complementary region is a side of a cycle in the union", "non_touching", 100, 25)


@pytest.mark.parametrize("pid", ["planted_onion", "planted_grapes", "planted_cage"])
def test_criterion_10_planted_recovery(pid):
    rep, elapsed = run_timed(pid, 50)
    ok = rep.ok and rep.instances == 50
    announce(10, f"planted structure recovered: {pid}", ok, summary(rep, elapsed))
    assert rep.ok and rep.instances == 50


@pytest.mark.parametrize("pid", ["separator_crosscheck", "env_aux_invariance"])
def test_criterion_11_envelope_crosscheck(pid):
    rep, elapsed = run_timed(pid, 20)
    ok = rep.ok and rep.instances == 20
    announce(11, f"envelope cross-check: {pid}", ok, summary(rep, elapsed))
    assert rep.ok and rep.instances == 20


# -- criterion 12: byte-identical CLI output ----------------------------------------


def _cli(args: list[str], hash_seed: str, cwd) -> tuple[int, bytes]:
    env = dict(os.environ, PYTHONHASHSEED=hash_seed)
    proc = subprocess.run([sys.executable, "-m", "cyclesep", *args], capture_output=True, env=env, cwd=cwd)
    return proc.returncode, proc.stdout


def test_criterion_12_cli_determinism(tmp_path):
    tri, cage, grapes = (str(tmp_path / name) for name in ("tri.json", "cage.json", "grapes.json"))
    generate = [
        ["gen", "--n", "16", "--seed", "3", "-o", tri],
        ["gen", "--kind", "planted_cage", "--paths", "5", "--n", "40", "--seed", "2", "-o", cage],
        ["gen", "--kind", "grapes", "--k", "3", "--n", "16", "--seed", "4", "-o", grapes],
    ]
    for args in generate:
        assert _cli(args, "0", tmp_path)[0] == 0
    with open(cage, encoding="utf-8") as fh:
        meta = json.load(fh)["meta"]
    with open(grapes, encoding="utf-8") as fh:
        marked = json.load(fh)["meta"]["marked"]
    with open(tri, encoding="utf-8") as fh:
        tri_cycle = ",".join(map(str, json.load(fh)["meta"]["insertions"][-1][1:]))
    marks = ",".join(map(str, meta["marked"]))
    poles = ",".join(map(str, meta["poles"]))
    report = str(tmp_path / "report.json")
    commands = [
        ["gen", "--kind", "onion", "--k", "3", "--n", "18", "--seed", "5"],
        ["check", tri],
        ["faces", tri],
        ["separate", tri, "--a", "0", "--b", "1", "--cycle", tri_cycle],
        ["regions", tri, "--support", tri_cycle],
        ["cycles", tri, "--max-len", "5"],
        ["cages", cage, "--poles", poles, "--max-len", "8", "--limit", "2"],
        ["fit", cage, "--seq", marks, "--poles", poles, "--max-len", "8"],
        ["envelope", grapes, "--seq", ",".join(map(str, marked)), "--max-len", "6"],
        ["verify", "--property", "prop_B_symmetry", "--trials", "10", "--seed", "3", "--out", report],
        ["replay", report],
        ["verify", "--property", "planted_cage", "--trials", "5", "--seed", "1"],
        ["export-dot", tri, "--highlight", tri_cycle],
        ["export-svg", tri, "--highlight", tri_cycle],
    ]
    differing = []
    for args in commands:
        first = _cli(args, "1", tmp_path)
        if args[0] == "verify" and "--out" in args:
            with open(report, "rb") as fh:
                first = (first[0], first[1] + fh.read())
        second = _cli(args, "2", tmp_path)
        if args[0] == "verify" and "--out" in args:
            with open(report, "rb") as fh:
                second = (second[0], second[1] + fh.read())
        assert first[0] in (0, 1), f"{args[0]} exited with {first[0]}"
        if first != second or not first[1]:
            differing.append(args[0])
    ok = not differing
    announce(12, "identical seeds give byte-identical CLI output", ok,
             f"{len(commands) + len(generate)} subcommand runs, differing: {differing or 'none'}")
    assert not differing
