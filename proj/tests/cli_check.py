"""End-to-end checks of the s4norms command line: outputs, exit codes and
the JSON schema."""

import json
import os
import subprocess
import sys
import tempfile
from fractions import Fraction

import jsonschema

BIN, SCHEMA = sys.argv[1], sys.argv[2]
with open(SCHEMA) as f:
    schema = json.load(f)
jsonschema.Draft202012Validator.check_schema(schema)
validator = jsonschema.Draft202012Validator(schema)

failures = []


def run(*args, env=None):
    return subprocess.run([BIN, *args], capture_output=True, text=True, env=env)


def check(cond, what):
    if not cond:
        failures.append(what)


def record(*args):
    p = run(*args, "--json")
    check(p.returncode == 0, f"{args}: exit {p.returncode} {p.stderr.strip()}")
    try:
        doc = json.loads(p.stdout)
    except json.JSONDecodeError:
        failures.append(f"{args}: not JSON")
        return {}
    errors = list(validator.iter_errors(doc))
    check(not errors, f"{args}: schema: {[e.message for e in errors[:3]]}")
    return doc


# mass
check(run("mass", "--alpha", "2", "--place", "2").stdout.split() == ["mass:", "6523/8192"], "mass at 2")
check("5/12" in run("mass", "--alpha", "2", "--place", "real").stdout, "mass at real")
out = run("mass", "--alpha", "2", "--place", "5", "--oracle").stdout
check("mass: 1/1" in out and "oracle-agrees: true" in out, "mass at 5 with oracle")
check("7/24" in run("mass", "--place", "real-").stdout, "real- place")
check("1/24" in run("mass", "--place", "complex").stdout, "complex place")
doc = record("mass", "--alpha", "3", "--alpha", "5", "--place", "2")
check(doc.get("result", {}).get("mass") == {"lower": "11/16", "upper": "65/64"}, "dyadic interval in JSON")
doc = record("mass", "--alpha", "2", "--alpha", "3", "--place", "5", "--oracle")
check(doc.get("result", {}).get("method") == "oracle", "multi-generator mass uses enumeration")
record("mass", "--alpha", "-7/9", "--place", "7", "--oracle")

# proportion / density
doc = record("proportion", "16")
check(doc["result"]["exact"] and doc["result"]["value"] == 1 and doc["result"]["abs_error"] == 0, "proportion 16")
doc = record("proportion", "2", "--cutoff", "100000")
res = doc["result"]
check(abs(res["value"] - 0.66122) < 1e-4, f"proportion 2 value {res['value']}")
check(res["finite_part"] == "6523/8704", "proportion 2 finite part")
check([f["place"] for f in res["exceptional_factors"]] == ["inf", "2"], "exceptional places of 2")
doc = record("proportion", "3", "5", "--cutoff", "1000")
check(isinstance(doc["result"]["finite_part"], dict), "proportion 3 5 has an interval finite part")
doc = record("density", "3", "--cutoff", "1000", "--upper-bound")
check(Fraction(doc["result"]["upper_bound"]) >= Fraction(doc["result"]["value"]) + Fraction(doc["result"]["abs_error"]),
      "density upper bound")
check("timing_seconds" not in doc, "no timing unless requested")
check("timing_seconds" in record("proportion", "2", "--cutoff", "1000", "--timing"), "timing on request")

# exact rationals round-trip: JSON fractions parse back to the same value
for f in record("proportion", "-12/5", "--cutoff", "1000")["result"]["exceptional_factors"]:
    if isinstance(f["factor"], str):
        num, den = f["factor"].split("/")
        check(str(Fraction(int(num), int(den)).numerator) == num, f"fraction not reduced: {f}")

# bit-identical reruns
a = run("proportion", "-6", "7/3", "--cutoff", "20000", "--json").stdout
b = run("proportion", "-6", "7/3", "--cutoff", "20000", "--json").stdout
check(a == b and a, "repeat invocations differ")

# sieve cache via flag and environment
with tempfile.TemporaryDirectory() as tmp:
    path = os.path.join(tmp, "s.bin")
    first = run("proportion", "2", "--cutoff", "5000", "--cache-path", path).stdout
    check(os.path.exists(path), "cache file written")
    check(run("proportion", "2", "--cutoff", "5000", "--cache-path", path).stdout == first, "cached run differs")
    env = dict(os.environ, S4NORMS_SIEVE_CACHE=os.path.join(tmp, "env.bin"))
    check(run("proportion", "2", "--cutoff", "5000", env=env).stdout == first, "env cache run differs")
    check(os.path.exists(os.path.join(tmp, "env.bin")), "env cache file written")

# tables
check(len(record("table", "5", "--format", "json")["result"]["entries"]) == 12, "table 5 size")
check(len(record("table", "3")["result"]["entries"]) == 8, "table 3 size")
check(len(record("table", "2")["result"]["entries"]) == 32, "table 2 size")
check(len(record("table", "3:13")["result"]["entries"]) == 8 + 12 + 8 + 8 + 12, "table range size")
latex = run("table", "7", "--format", "latex").stdout
check("\\begin{tabular}" in latex and "\\frac{1641}{2401}" in latex, "latex table")

# verify
p = run("verify", "--max-prime", "19")
check(p.returncode == 0 and "verify: pass" in p.stdout, "verify 19")
doc = record("verify", "--max-prime", "29")
check(doc["result"]["pass"] and doc["result"]["failed"] == 0, "verify json")

# usage errors exit with 2
for args in (["verify", "--max-prim", "19"], ["verify"], ["mass", "--alpha", "2", "--place", "4"],
             ["mass", "--alpha", "0", "--place", "3"], ["mass", "--alpha", "2", "--place", "moon"],
             ["mass", "--alpha", "2", "--place", "9"], ["proportion", "0"], ["proportion", "2", "--cutoff", "50"],
             ["table", "4"], ["table", "9"], ["table", "5", "--format", "csv"], ["density", "2", "3", "--upper-bound"],
             ["mass", "--alpha", "2", "--place", "real-"], ["verify", "--max-prime", "2"], []):
    p = run(*args)
    check(p.returncode == 2, f"{args}: expected exit 2, got {p.returncode}")
check(run("--help").returncode == 0, "--help")

for f in failures:
    print("FAIL:", f)
print(f"{len(failures)} failure(s)")
sys.exit(1 if failures else 0)
