"""End-to-end checks for the metricgroup binary: report shapes, exit codes,
and byte stability. Run as: python3 check_cli.py /path/to/metricgroup"""

import json
import os
import subprocess
import sys
import tempfile

BIN = sys.argv[1]
failures = []


def run(*args, env=None):
    e = dict(os.environ)
    e.pop("METRICGROUP_MAX_ORDER", None)
    if env:
        e.update(env)
    return subprocess.run([BIN, *args], capture_output=True, text=True, env=e)


def check(name, cond, extra=""):
    if cond:
        print(f"ok   {name}")
    else:
        failures.append(name)
        print(f"FAIL {name} {extra}")


def report(*args, expect_exit=0, env=None):
    r = run(*args, env=env)
    check(f"exit {' '.join(args)}", r.returncode == expect_exit,
          f"(got {r.returncode}, stderr: {r.stderr.strip()})")
    if r.stdout:
        return json.loads(r.stdout)
    return None


tmp = tempfile.mkdtemp()


def write(name, obj):
    path = os.path.join(tmp, name)
    with open(path, "w") as f:
        json.dump(obj, f)
    return path


# discform on catalog names
d = report("discform", "A1")
check("A1 group", d["results"]["group"] == [2])
check("A1 q(1)", d["results"]["q"][1] == {"element": [1], "q": "1/4"})
check("A1 signature", d["results"]["signature"] == 1)
check("A1 all checks", d["ok"])

d = report("discform", "E8")
check("E8 trivial", d["results"]["group"] == [] and d["results"]["signature"] == 0)
d = report("discform", "Gamma16")
check("Gamma16 trivial", d["results"]["group"] == [])

d = report("discform", "E7", "--modular")
check("E7 modular charge", d["results"]["modular"]["charge"] == "7/8")
check("E7 t_exponents", d["results"]["modular"]["t_exponents"] == ["0", "3/4"])

# discform on a file
a1file = write("a1.json", {"name": "mine", "gram": [[2]]})
d = report("discform", a1file)
check("file lattice det", d["results"]["lattice"]["det"] == 2)

r = run("discform", "NoSuchLattice")
check("unknown lattice exit 2", r.returncode == 2)
r = run("discform", write("odd.json", {"gram": [[1]]}))
check("odd lattice exit 2", r.returncode == 2)

# qgroup sizes from the classification
for lit, n in [("2", 2), ("3", 3), ("4", 4)]:
    d = report("qgroup", lit)
    check(f"|Q({lit})| = {n}", d["results"]["count"] == n and d["ok"])

d = report("qgroup", "2,2", "--table")
check("|Q(2,2)| = 8", d["results"]["count"] == 8)
tab = d["results"]["table"]
check("table abelian", all(tab[i][j] == tab[j][i] for i in range(8) for j in range(8)))
check("table diagonal identity", all(tab[i][i] == d["results"]["identity"] for i in range(8)))

r = run("qgroup", "6")
check("qgroup 6 exit 3", r.returncode == 3)
d = report("qgroup", "6", env={"METRICGROUP_MAX_ORDER": "8"})
check("env bound lifts qgroup 6", d["results"]["count"] == 6)

d = report("qgroup", "2", "--realize")
names = [c["realization"]["L"]["name"] for c in d["results"]["classes"]]
check("Q(2) realizations", d["ok"] and sorted(names) == ["A1+E7", "D16"], str(names))

# verify bundles
for name in ["a1-e7", "milgram", "spin16", "embeddings", "z2cube"]:
    d = report("verify", name)
    check(f"verify {name} ok", d["ok"])
for n in ["2", "3", "4"]:
    d = report("verify", "niemeier", "--n", n)
    check(f"verify niemeier n={n} ok", d["ok"])
r = run("verify", "niemeier", "--n", "7")
check("niemeier n out of range exit 2", r.returncode == 2)
r = run("verify", "nonsense")
check("unknown bundle exit 2", r.returncode == 2)

# fsexp: named constructors and files
d = report("fsexp", "4", "zero")
check("fsexp 4 zero = 4", d["results"]["fsexp"] == 4)
d = report("fsexp", "2,2,2", "z2cube-volume")
check("fsexp volume = 4", d["results"]["fsexp"] == 4 and not d["results"]["pointed"])
d = report("fsexp", "4", "cyclic:1")
check("fsexp max class on Z4 = 16", d["results"]["fsexp"] == 16)
d = report("fsexp", "4", "cyclic:2")
check("fsexp cyclic:2 on Z4 = 8", d["results"]["fsexp"] == 8)

q13 = write("q13.json", {"group": [3], "diag": ["1/3"], "cross": [["0"]]})
d = report("fsexp", "3", f"from-form:{q13}")
check("fsexp from-form x^2/3 = 3", d["results"]["fsexp"] == 3)
d = report("fsexp", "3", "cyclic:1")
check("fsexp order-3 class = 9", d["results"]["fsexp"] == 9)

# a cocycle file with the values field omitted means the zero cocycle
zerofile = write("zero.json", {"group": [6]})
d = report("fsexp", "6", zerofile)
check("zero cocycle from file", d["results"]["fsexp"] == 6)

badcoc = write("bad.json", {"group": [2], "values": [[1, 1, 1, "1/3"]]})
r = run("fsexp", "2", badcoc)
check("invalid cocycle exit 2", r.returncode == 2 and "x=" in r.stderr, r.stderr.strip())
r = run("fsexp", "2", f"from-form:{q13}")
check("group mismatch exit 2", r.returncode == 2)
r = run("fsexp", "2,2", "z2cube-volume")
check("volume on wrong group exit 2", r.returncode == 2)
r = run("fsexp", "2,2", "cyclic:1")
check("cyclic on non-cyclic exit 2", r.returncode == 2)

# realize
semion = write("semion.json", {"group": [2], "diag": ["1/4"], "cross": [["0"]]})
d = report("realize", semion)
check("semion realizes as A1", d["results"]["lattice"]["name"] == "A1" and d["ok"])
r = run("realize", semion, "--signature", "3")
check("wrong signature exit 2", r.returncode == 2)
degen = write("degen.json", {"group": [2], "diag": ["1/2"], "cross": [["0"]]})
r = run("realize", degen)
check("degenerate form exit 2", r.returncode == 2)

# triple: round through the qgroup output
d = report("qgroup", "2")
t0, t1 = [c["triple"] for c in d["results"]["classes"]]
f0, f1 = write("t0.json", t0), write("t1.json", t1)
d = report("triple", "validate", f0)
check("triple validate", d["ok"])
d = report("triple", "product", f1, f1)
check("double semion squares to identity form",
      d["ok"] and d["results"]["signature"] == 0)
prod = write("t11.json", d["results"]["product"])
d = report("triple", "equiv", prod, f0)
check("ds * ds ~ toric", d["ok"])
r = run("triple", "equiv", f0, f1)
check("toric != ds exits 1", r.returncode == 1)
d = report("triple", "invert", f1)
check("invert checks", d["ok"])

badtriple = write("badtriple.json",
                  {"G": [2], "Gamma": [4],
                   "q": {"group": [4], "diag": ["1/8"], "cross": [["0"]]},
                   "i": [[2]]})
r = run("triple", "validate", badtriple)
check("invalid triple validate exits 1", r.returncode == 1)
out = json.loads(r.stdout)
check("invalid triple why", not out["checks"][0]["pass"] and out["checks"][0]["details"] != "")
r = run("triple", "product", badtriple, f0)
check("product rejects invalid input", r.returncode == 2)
r = run("triple", "product", f0, write("t3.json", json.loads(
    run("qgroup", "3").stdout)["results"]["classes"][0]["triple"]))
check("product group mismatch exit 2", r.returncode == 2)

# byte stability and flags
for args in [("discform", "A1"), ("verify", "z2cube"), ("qgroup", "2,2", "--table"),
             ("fsexp", "2,2,2", "z2cube-volume")]:
    a, b = run(*args), run(*args)
    check(f"byte-stable {' '.join(args)}", a.stdout == b.stdout)
a = run("discform", "A1")
b = run("discform", "A1", "--pretty")
check("pretty same object", json.loads(a.stdout) == json.loads(b.stdout))
check("pretty is indented", b.stdout.count("\n") > 1)
t = run("discform", "A1", "--timing")
check("timing key", "timing_ms" in json.loads(t.stdout))
check("no timing by default", "timing_ms" not in json.loads(a.stdout))

r = run("--help")
check("help exit 0", r.returncode == 0)
r = run()
check("no command exit 2", r.returncode == 2)
r = run("fsexp", "4")
check("missing positional exit 2", r.returncode == 2)

print()
if failures:
    print(f"{len(failures)} CLI check(s) failed: {failures}")
    sys.exit(1)
print("all CLI checks passed")
