#!/usr/bin/env python3
"""End-to-end checks of the darkport executable: outputs, manifests, schemas, exit codes."""

import csv
import json
import math
import os
import subprocess
import sys
import tempfile
from pathlib import Path

BIN = sys.argv[1]
SCHEMAS = Path(sys.argv[2])

try:
    import jsonschema
except ImportError:
    jsonschema = None

failures = []


def check(cond, what):
    print(("ok    " if cond else "FAIL  ") + what)
    if not cond:
        failures.append(what)


def run(*args, env=None):
    e = dict(os.environ)
    e.pop("DARKPORT_OUTDIR", None)
    if env:
        e.update(env)
    return subprocess.run([BIN, *args], capture_output=True, text=True, env=e)


def read_csv(text):
    lines = [l for l in text.splitlines() if not l.startswith("#")]
    rows = list(csv.DictReader(lines))
    return [{k: float(v) for k, v in row.items()} for row in rows]


def validate(doc, name):
    if jsonschema is None:
        return
    schema = json.loads((SCHEMAS / f"{name}.schema.json").read_text())
    try:
        jsonschema.validate(doc, schema)
        check(True, f"{name} output validates against its schema")
    except jsonschema.ValidationError as err:
        check(False, f"{name} schema: {err.message}")


with tempfile.TemporaryDirectory() as tmp:
    tmp = Path(tmp)

    p = run("stats", "--r", "1", "--x", "1.16")
    rows = read_csv(p.stdout)
    check(p.returncode == 0 and p.stdout.startswith("# darkport-csv v1\nn,p\n"), "stats writes versioned CSV")
    check(rows[4]["p"] < 1e-3 and rows[2]["p"] > 0.3, "stats r=1 x=1.16 has p_4 ~ 0")

    rows = read_csv(run("stats", "--r", "1", "--x", "0").stdout)
    check(all(r["p"] == 0.0 for r in rows if int(r["n"]) % 2 == 1), "stats x=0 has even-only support")

    rows = read_csv(run("stats", "--r", "0.8", "--x", "3.74", "--eps", "0").stdout)
    mean = sum(r["n"] * r["p"] for r in rows)
    check(abs(mean - (3.74**2 + math.sinh(0.8) ** 2)) < 1e-8, "stats r=0.8 x=3.74 has the closed-form mean")

    for r, expect in (("1", (1.16, 1.65)), ("0.8", (1.14, 1.62))):
        xs = [row["x"] for row in read_csv(run("zeros", "--r", r, "--n-max", "6").stdout)]
        check(all(any(abs(x - e) < 0.01 for x in xs) for e in expect), f"zeros r={r} contains {expect}")
    zs = read_csv(run("zeros", "--r", "0", "--n-max", "6").stdout)
    check(len(zs) > 0 and all(z["x"] == 0.0 for z in zs), "zeros r=0 lists only the origin")

    rows = read_csv(run("fisher", "--r", "1", "--eps", "0", "--points", "21", "--mode", "exact").stdout)
    check(all(abs(r["cfi_exact"] / (4 * math.e**2) - 1) < 1e-6 for r in rows), "fisher eps=0 is constant 4e^2r")
    check(all(math.isnan(r["i_avg"]) for r in rows), "fisher leaves unrequested columns nan")

    fisher_csv = run("fisher", "--r", "1", "--eps", "0.002", "--x-min", "0.5", "--x-max", "2", "--points", "31").stdout
    dips = [l for l in fisher_csv.splitlines() if l.startswith("# dip")]
    check(len(dips) > 0, "fisher CSV carries dip annotations")

    # Files, manifests and schemas.
    out = tmp / "s.json"
    p = run("stats", "--r", "0.5", "--x", "1", "--format", "json", "--out", str(out))
    doc = json.loads(out.read_text())
    man = json.loads(Path(str(out) + ".manifest.json").read_text())
    check(p.returncode == 0 and man["outputs"] == [str(out)], "stats --out writes a manifest")
    validate(doc, "stats")
    validate(man, "manifest")

    out = tmp / "z.json"
    run("zeros", "--r", "1", "--n-max", "8", "--format", "json", "--out", str(out))
    validate(json.loads(out.read_text()), "zeros")

    out = tmp / "f.json"
    run("fisher", "--r", "0.5", "--eps", "0.05", "--points", "25", "--format", "json", "--out", str(out))
    doc = json.loads(out.read_text())
    validate(doc, "fisher")
    check(abs(doc["asymptote"] - 0.95 * doc["qfi"]) < 1e-12, "fisher JSON asymptote is (1 - eps) H_F")

    out = tmp / "m.json"
    p = run("simulate", "--x-true", "1.5", "--samples", "300", "--trials", "8", "--estimator", "both",
            "--seed", "3", "--out", str(out))
    doc = json.loads(out.read_text())
    validate(doc, "simulate")
    validate(json.loads(Path(str(out) + ".manifest.json").read_text()), "manifest")
    again = tmp / "m2.json"
    run("simulate", "--x-true", "1.5", "--samples", "300", "--trials", "8", "--estimator", "both",
        "--seed", "3", "--serial", "--out", str(again))
    check(doc == json.loads(again.read_text()), "simulate is reproducible across serial and parallel runs")

    # Environment default directory.
    p = run("zeros", "--n-max", "3", env={"DARKPORT_OUTDIR": str(tmp / "env")})
    check(p.stdout == "" and (tmp / "env" / "zeros.csv").exists(), "DARKPORT_OUTDIR receives default output")
    check((tmp / "env" / "zeros.csv.manifest.json").exists(), "env output has a manifest")

    # Config file precedence: flags > config > defaults.
    cfg = tmp / "run.ini"
    cfg.write_text("# comment\nr = 0.5\neps = 0.05\n[stats]\nx = 1.25\n")
    d1 = json.loads(run("--config", str(cfg), "stats", "--format", "json").stdout)
    d2 = json.loads(run("--config", str(cfg), "stats", "--format", "json", "--eps", "0.01").stdout)
    check((d1["r"], d1["epsilon"], d1["x"]) == (0.5, 0.05, 1.25), "config file supplies parameters")
    d3 = json.loads(run("stats", "--x", "1", "--format", "json").stdout)
    check(d3["epsilon"] == 0.0 and d3["r"] == 1.0, "stats defaults to the lossless distribution")
    check(d2["epsilon"] == 0.01 and d2["r"] == 0.5, "flags override the config file")

    # Figures.
    p = run("figure", "--id", "fig5", "--outdir", str(tmp / "figs"), "--gnuplot")
    man = json.loads((tmp / "figs" / "fig5.manifest.json").read_text())
    check(p.returncode == 0 and all(Path(f).exists() for f in man["outputs"]), "figure fig5 writes listed files")
    validate(man, "manifest")
    p = run("figure", "--id", "fig7b", "--outdir", str(tmp / "figs"), "--trials", "4", "--samples", "200")
    check(p.returncode == 0 and (tmp / "figs" / "fig7b_mc.csv").exists(), "figure fig7b includes simulation circles")

    # Exit codes.
    p = run("figure", "--id", "fig99")
    check(p.returncode == 2 and "fig7b" in p.stderr, "unknown figure id exits 2 and lists ids")
    check(run("stats", "--r", "-1", "--x", "1").returncode == 2, "invalid r exits 2")
    check(run("stats", "--x", "1", "--eps", "2").returncode == 2, "invalid eps exits 2")
    check(run("stats").returncode == 2, "missing --x exits 2")
    check(run("stats", "--x", "1", "--out", "/proc/darkport/none.csv").returncode == 4, "unwritable output exits 4")
    p = run("simulate", "--x-true", "0.01", "--estimator", "mean", "--trials", "20", "--samples", "5")
    check(p.returncode == 5, "failed mean-photon inversion exits 5")
    p = run("stats", "--x", "1500")
    check(p.returncode == 3 and "norm_deficit" in p.stderr, "cutoff beyond the hard limit exits 3 naming the invariant")

if failures:
    print(f"{len(failures)} check(s) failed")
    sys.exit(1)
print("all CLI checks passed")
