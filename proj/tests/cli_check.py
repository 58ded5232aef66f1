#!/usr/bin/env python3
# End-to-end checks of the apnkit CLI: schemas, exit codes, determinism, round trips.
import json
import os
import subprocess
import sys
import tempfile

import jsonschema

BIN = sys.argv[1]
SCHEMAS = sys.argv[2]
failures = []


def schema(name):
    with open(os.path.join(SCHEMAS, name + ".schema.json")) as f:
        return json.load(f)


def run(*args):
    return subprocess.run([BIN, *args], capture_output=True, text=True)


def check(cond, what):
    print(("ok   " if cond else "FAIL ") + what)
    if not cond:
        failures.append(what)


def validated(args, kind, code=0):
    r = run(*args)
    check(r.returncode == code, f"{' '.join(args)}: exit {r.returncode} (want {code})")
    try:
        doc = json.loads(r.stdout)
        jsonschema.validate(doc, schema(kind))
        check(True, f"{' '.join(args)}: matches {kind} schema")
        return doc
    except (json.JSONDecodeError, jsonschema.ValidationError) as e:
        check(False, f"{' '.join(args)}: {kind} schema: {str(e).splitlines()[0]}")
        return None


def strip_timing(j):
    if isinstance(j, dict):
        return {k: strip_timing(v) for k, v in j.items() if k not in ("elapsed_ms", "timings_ms")}
    if isinstance(j, list):
        return [strip_timing(v) for v in j]
    return j


with tempfile.TemporaryDirectory() as tmp:
    f = validated(["field", "--n", "8"], "field")
    check(f is not None and f["modulus"] == "11b", "default octic modulus is 11b")
    f = validated(["field", "--n", "4", "--modulus", "13"], "field")
    check(f is not None and f["cube_index"] is not None, "GF(16) reports a cube index")

    d = validated(["scan-pa", "--n", "4", "--s", "1"], "zero_distribution")
    check(d is not None and d["counts"] == {"m0": 5, "m1": 8, "m3": 2}, "scan-pa n=4 counts 5/8/2")
    csv = os.path.join(tmp, "zeros.csv")
    validated(["scan-pa", "--n", "6", "--s", "5", "--csv", csv], "zero_distribution")
    with open(csv) as fh:
        rows = fh.read().splitlines()
    check(rows[0] == "n,s,a_hex,zero_count" and len(rows) == 64, "zero CSV has a header and 63 rows")

    img = validated(["image-a", "--n", "8", "--s", "3", "--witness-dir", tmp], "image_report")
    check(img is not None and img["image_claim_holds"] and img["image_size"] == 85, "image-a n=8 s=3")
    validated(["cubic", "--n", "6"], "cubic_table")
    validated(["find-coeffs", "--k", "4", "--s", "3"], "family_params")

    cert = validated(["certify", "--k", "2", "--s", "1"], "apn_certificate")
    check(cert is not None and cert["valid"], "certify k=2 s=1 is valid")
    validated(["certify", "--k", "4", "--s", "5"], "apn_certificate")

    sbox = os.path.join(tmp, "f.txt")
    r = run("export", "--k", "4", "--s", "1", "--function", "family", "--out", sbox)
    check(r.returncode == 0, "export family k=4 s=1")
    a = validated(["certify", "--k", "4", "--s", "1"], "apn_certificate")
    b = validated(["certify", "--k", "4", "--s", "1", "--sbox", sbox], "apn_certificate")
    check(a is not None and b is not None and strip_timing(a) == strip_timing(b), "exported table re-certifies identically")
    blob = os.path.join(tmp, "g.hex")
    check(run("export", "--n", "6", "--function", "gold", "--layout", "blob", "--out", blob).returncode == 0,
          "export blob")
    dd = validated(["diff", "--sbox", blob], "differential_report")
    check(dd is not None and dd["uniformity"] == 2, "blob-read Gold table is APN")

    w = validated(["walsh", "--k", "4", "--s", "1"], "walsh_spectrum")
    check(w is not None and w["value_set"] == [-32, -16, 0, 16, 32], "Walsh value set of F at n=8")
    validated(["diff", "--n", "8", "--function", "gold-trace", "--quadratic"], "differential_report")
    g = validated(["gamma-rank", "--n", "4", "--function", "gold"], "gamma_rank")
    r = run("gamma-rank", "--n", "4", "--function", "gold", "--format", "text")
    check(g is not None and r.stdout.strip() == str(g["gamma_rank"]), "gamma-rank text output is the integer")
    validated(["gamma-rank", "--n", "4", "--function", "gold", "--convention", "without-origin"], "gamma_rank")
    validated(["probe", "--n", "6", "--function", "gold-trace", "--seed", "3"], "affine_probe")
    for seed in ("1", "2", "5"):
        pr = validated(["probe", "--n", "5", "--function", "random-quadratic", "--seed", seed], "affine_probe")
        check(pr is not None and pr["invariant"], f"random quadratic seed {seed} probes invariant")

    # worker count does not change results
    for args in (["scan-pa", "--n", "10", "--s", "3"], ["certify", "--k", "4", "--s", "3"],
                 ["walsh", "--k", "4", "--s", "5"], ["diff", "--n", "8", "--function", "gold-trace"],
                 ["image-a", "--n", "10", "--s", "1"]):
        one = run(*args, "--jobs", "1")
        four = run(*args, "--jobs", "4")
        check(strip_timing(json.loads(one.stdout)) == strip_timing(json.loads(four.stdout)),
              f"{' '.join(args)}: --jobs 1 and 4 agree")

    suite = os.path.join(tmp, "suite.json")
    r = run("paper-check", "--level", "quick", "--only", "1", "3", "--out", suite)
    check(r.returncode == 0, "paper-check quick --only 1 3 exits 0")
    with open(suite) as fh:
        doc = json.load(fh)
    try:
        jsonschema.validate(doc, schema("acceptance_suite"))
        check([c["id"] for c in doc["criteria"]] == [1, 3], "suite JSON lists criteria 1 and 3")
    except jsonschema.ValidationError as e:
        check(False, "acceptance_suite schema: " + str(e).splitlines()[0])

    # usage and precondition errors: exit 2, error JSON on stderr
    for args in (["scan-pa", "--n", "4"], ["field", "--n", "25"], ["field", "--n", "4", "--modulus", "15"],
                 ["scan-pa", "--n", "6", "--s", "2"], ["certify", "--k", "3", "--s", "1"],
                 ["field", "--n", "4", "--k", "2"], ["bogus"], ["diff", "--sbox", os.path.join(tmp, "missing")]):
        r = run(*args)
        try:
            err = json.loads(r.stderr)
            jsonschema.validate(err, schema("error"))
            ok = r.returncode == 2
        except (json.JSONDecodeError, jsonschema.ValidationError):
            ok = False
        check(ok, f"{' '.join(args)}: exit 2 with error JSON (got {r.returncode})")

    bad = os.path.join(tmp, "bad.txt")
    with open(bad, "w") as fh:
        fh.write("0\n1\n2\n")
    r = run("diff", "--sbox", bad)
    check(r.returncode == 2 and json.loads(r.stderr)["error"] == "LengthNotPowerOfTwo", "3-entry table rejected")

print(f"{len(failures)} failure(s)")
sys.exit(1 if failures else 0)
