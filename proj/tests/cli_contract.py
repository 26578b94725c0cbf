"""Black-box contract of the birsheet CLI: exit codes, schemas, determinism, cache and table layout.

usage: cli_contract.py <birsheet> <schemas-dir> <data-dir>
"""

import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema

CLI = sys.argv[1]
SCHEMAS = pathlib.Path(sys.argv[2])
DATA = pathlib.Path(sys.argv[3])

failures = []


def check(name, cond, detail=""):
    print(("ok    " if cond else "FAIL  ") + name + ("" if cond else f"  [{detail}]"))
    if not cond:
        failures.append(name)


def run(*args):
    p = subprocess.run([CLI, *args], capture_output=True, text=True)
    return p.returncode, p.stdout, p.stderr


def schema(name):
    return json.loads((SCHEMAS / f"{name}.schema.json").read_text())


def valid(doc, name):
    try:
        jsonschema.validate(doc, schema(name))
        return True
    except jsonschema.ValidationError as e:
        return str(e).splitlines()[0]


def round_trips(text):
    # the payload is exactly the canonical two-space rendering of its own parse
    return json.dumps(json.loads(text), indent=2, ensure_ascii=False) + "\n" == text


# enumerate
rc, out, err = run("enumerate", "--group", "A1")
doc = json.loads(out)
check("enumerate A1 exits 0", rc == 0, err)
check("enumerate A1 matches schema", valid(doc, "enumerate") is True, valid(doc, "enumerate"))
check("enumerate A1: 2 pseudo-Levis, 5 data", len(doc["pseudo_levis"]) == 2 and len(doc["decomposition_data"]) == 5)
check("enumerate A1 round-trips", round_trips(out))

rc, out, _ = run("enumerate", "--group", "C2", "--output", "table")
check("enumerate C2 table lists the {α0,α2} pseudo-Levi", rc == 0 and "{α0,α2}" in out)

for group, code in [("E8", "UnsupportedType"), ("C7", "CapExceeded"), ("PSL2", "NotSimplyConnected"), ("B1", "UnsupportedType")]:
    rc, out, err = run("enumerate", "--group", group)
    check(f"enumerate {group} exits 2 with {code}", rc == 2 and code in err and out == "" and len(err.strip().splitlines()) == 1, err)

rc, _, _ = run("enumerate")
check("missing --group exits 2", rc == 2)
rc, _, _ = run("enumerate", "--group", "C2", "--output", "xml")
check("bad --output exits 2", rc == 2)
rc, _, _ = run("enumerate", "--group", "C2", "--parallelism", "0")
check("bad --parallelism exits 2", rc == 2)

# determinism, including across worker counts
for group in ["A3", "B3", "C3", "D4"]:
    a = run("enumerate", "--group", group)[1]
    b = run("enumerate", "--group", group, "--parallelism", "1")[1]
    check(f"enumerate {group} identical across runs and worker counts", a == b and a != "")

# verify
rc, out, _ = run("verify", "--group", "C2")
doc = json.loads(out)
check("verify C2 passes", rc == 0 and doc["status"] == "pass")
check("verify C2 matches schema", valid(doc, "verify") is True, valid(doc, "verify"))
rc, out, _ = run("verify", "--group", "A3")
doc = json.loads(out)
check("verify A3: sheets up to the centre = p(4) = 5", rc == 0 and doc["partition"]["sheets_mod_centre"] == 5
      and doc["partition"]["birational_sheets_mod_centre"] == 5)
rc, out, _ = run("verify", "--group", "B3")
doc = json.loads(out)
check("verify B3 reports blocked data instead of dropping them", rc == 0 and doc["status"] == "pass-with-unknowns"
      and len(doc["partition"]["blocked_data"]) == doc["partition"]["blocked"] > 0)

# decide
for group, levi, verdict in [("C2", "1", "Birational"), ("C2", "2", "NotBirational"), ("C3", "2,3", "NotBirational")]:
    rc, out, _ = run("decide", "--group", group, "--levi", levi, "--orbit", "trivial")
    doc = json.loads(out)
    check(f"decide {group} levi {{{levi}}} is {verdict}", rc == 0 and doc["verdict"] == verdict and doc["provenance"])
    check(f"decide {group} levi {{{levi}}} matches schema", valid(doc, "decide") is True, valid(doc, "decide"))
rc, out, _ = run("decide", "--group", "B3", "--levi", "2,3")
check("decide with an Unknown verdict exits 4", rc == 4 and json.loads(out)["verdict"] == "Unknown")
for bad in [["--levi", "x"], ["--levi", "1,1"], ["--levi", "9"], ["--levi", "1", "--orbit", "[3]"]]:
    rc, _, _ = run("decide", "--group", "C2", *bad)
    check(f"decide {' '.join(bad)} exits 2", rc == 2)

# fixtures
fixture_text = (DATA / "fixtures.json").read_text()
check("shipped fixtures match schema", valid(json.loads(fixture_text), "fixtures") is True)
with tempfile.TemporaryDirectory() as tmp:
    tmp = pathlib.Path(tmp)
    rc, out, _ = run("decide", "--group", "C2", "--levi", "2", "--fixtures", str(DATA / "fixtures.json"))
    check("explicit fixture file is honoured", rc == 0 and json.loads(out)["verdict"] == "NotBirational")
    broken = tmp / "broken.json"
    broken.write_text(fixture_text.replace('"version": 1', '"version": "one"'))
    rc, out, _ = run("enumerate", "--group", "C2", "--fixtures", str(broken))
    check("malformed fixture file exits 2 before any output", rc == 2 and out == "")
    empty = tmp / "empty.json"
    empty.write_text('{"version": 1, "instances": [], "rigid": []}')
    rc, out, _ = run("decide", "--group", "C2", "--levi", "2", "--fixtures", str(empty))
    check("without fixtures the sp4 subregular case is undecided", rc == 4)

    # cache
    cache = tmp / "cache"
    ref = run("enumerate", "--group", "C3")[1]
    first = run("enumerate", "--group", "C3", "--cache-dir", str(cache))[1]
    entries = list(cache.glob("*.json"))
    check("cache entry written", len(entries) == 1)
    second = run("enumerate", "--group", "C3", "--cache-dir", str(cache))[1]
    check("cached runs reproduce the uncached report", ref == first == second)
    entry = entries[0]
    good = entry.read_text()
    entry.write_text(good.replace("[", "[7,", 1))
    third = run("enumerate", "--group", "C3", "--cache-dir", str(cache))[1]
    check("corrupt cache entry is discarded and rewritten", third == ref and entry.read_text() == good)
    doc = json.loads(good)
    doc["classes"][0], doc["classes"][1] = doc["classes"][1], doc["classes"][0]
    import hashlib
    payload = json.dumps(doc["classes"], separators=(",", ":"))
    doc["sha256"] = hashlib.sha256(payload.encode()).hexdigest()
    entry.write_text(json.dumps(doc))
    fourth = run("enumerate", "--group", "C3", "--cache-dir", str(cache))[1]
    check("well-hashed but inconsistent cache entry is not trusted", fourth == ref and entry.read_text() == good)

# table width
rc, narrow, _ = run("enumerate", "--group", "C6", "--output", "table")
rc2, wide, _ = run("enumerate", "--group", "C6", "--output", "table", "--wide")
check("long cells are cut with an ellipsis", rc == 0 and "..." in narrow)
check("--wide keeps every cell whole", rc2 == 0 and "..." not in wide and len(wide) > len(narrow))

print(f"{len(failures)} failure(s)")
sys.exit(1 if failures else 0)
