#!/usr/bin/env python3
"""End-to-end checks of the qmcap command-line tool.

Usage: cli_checks.py /path/to/qmcap
"""
import json
import math
import subprocess
import sys
import tempfile
from pathlib import Path

CLI = sys.argv[1]
FAILURES = []


def run(*args, expect_rc=0):
    proc = subprocess.run([CLI, *args], capture_output=True, text=True)
    if proc.returncode != expect_rc:
        FAILURES.append(
            f"{' '.join(args)}: rc={proc.returncode}, expected {expect_rc}\n"
            f"stdout: {proc.stdout[:500]}\nstderr: {proc.stderr[:500]}"
        )
        return None
    return proc


def check(name, cond):
    if not cond:
        FAILURES.append(name)


def report_of(proc):
    return json.loads(proc.stdout) if proc else None


def main():
    tmp = Path(tempfile.mkdtemp())

    # --- model generators and closed forms -----------------------------
    proc = run("models", "heterodyne", "--mean-photons", "1")
    rep = report_of(proc)
    if rep:
        check("heterodyne C", abs(rep["results"]["C"]["nats"] - math.log(2)) < 1e-12)
        check(
            "bits tag = nats / ln 2",
            abs(rep["results"]["C"]["bits"] - rep["results"]["C"]["nats"] / math.log(2))
            < 1e-12,
        )

    sic_path = tmp / "sic.json"
    proc = run("models", "sic", "-o", str(sic_path))
    check("sic artifact written", sic_path.exists())

    mixed_path = tmp / "mixed.json"
    mixed_path.write_text(
        json.dumps(
            {"dim": 2, "matrix": [[[0.5, 0], [0, 0]], [[0, 0], [0.5, 0]]]}
        )
    )

    # --- capacities ------------------------------------------------------
    proc = run("cap", "cea", "--povm", str(sic_path), "--restarts", "4")
    rep = report_of(proc)
    if rep:
        check(
            "cea(SIC) = ln 2",
            abs(rep["results"]["value"]["nats"] - math.log(2)) < 1e-5,
        )
        check("inputs digest present", "fnv1a64" in rep["inputs"]["povm"])

    proc = run(
        "cap", "mutual", "--povm", str(sic_path), "--state", str(mixed_path)
    )
    rep = report_of(proc)
    if rep:
        check(
            "I(I/2; SIC) = ln 2",
            abs(rep["results"]["value"]["nats"] - math.log(2)) < 1e-10,
        )

    # --- duality ---------------------------------------------------------
    ens_path = tmp / "dual_ensemble.json"
    proc = run(
        "dualize",
        "to-ensemble",
        "--state",
        str(mixed_path),
        "--povm",
        str(sic_path),
        "-o",
        str(ens_path),
    )
    rep = report_of(proc)
    if rep:
        check("dual chi = ln 2", abs(rep["results"]["chi"]["nats"] - math.log(2)) < 1e-10)
    proc = run("dualize", "to-observable", "--ensemble", str(ens_path))
    rep = report_of(proc)
    if rep:
        check(
            "roundtrip completeness",
            rep["results"]["completeness_residual"] < 1e-9,
        )

    # --- verify: determinism and exit codes -------------------------------
    a = run("verify", "--suite", "sphere", "--seed", "3")
    b = run("verify", "--suite", "sphere", "--seed", "3")
    if a and b:
        check("verify reports are byte-identical", a.stdout == b.stdout)

    # --- error handling ----------------------------------------------------
    proc = run("cap", "c", "--povm", str(tmp / "missing.json"), expect_rc=2)
    bad_path = tmp / "bad.json"
    bad_path.write_text('{"elements": "nope"}')
    proc = subprocess.run(
        [CLI, "cap", "c", "--povm", str(bad_path)], capture_output=True, text=True
    )
    check("schema error exits 2", proc.returncode == 2)
    check("schema error names field", "elements" in proc.stderr)

    # Invalid POVM values (well-formed JSON, bad completeness) -> rc 1.
    invalid = json.loads(sic_path.read_text())
    invalid["elements"] = invalid["elements"][:2]
    inv_path = tmp / "incomplete.json"
    inv_path.write_text(json.dumps(invalid))
    proc = subprocess.run(
        [CLI, "cap", "c", "--povm", str(inv_path)], capture_output=True, text=True
    )
    check("invalid POVM exits 1", proc.returncode == 1)
    rep = json.loads(proc.stdout)
    check("diagnostics mark failure", rep["pass"] is False)

    if FAILURES:
        print("FAILED checks:")
        for f in FAILURES:
            print(" -", f)
        sys.exit(1)
    print("all CLI checks passed")


if __name__ == "__main__":
    main()
