import json
import pathlib
import re
import subprocess
import sys
import tempfile

exe = sys.argv[1]
failures = []


def run(*args):
    return subprocess.run([exe, *args], capture_output=True, text=True)


def expect(name, ok, detail=""):
    print(("ok   " if ok else "FAIL ") + name + ("" if ok else "  " + detail))
    if not ok:
        failures.append(name)


with tempfile.TemporaryDirectory() as tmp:
    d = pathlib.Path(tmp)
    (d / "cyl.json").write_text(json.dumps({"family": "cylinder", "n": 2}))
    (d / "square.json").write_text(json.dumps({"lo": [0, 0], "hi": [1, 1]}))
    (d / "const.json").write_text(json.dumps({"nvars": 2, "nout": 2, "components": [{"nvars": 2, "terms": []}] * 2}))
    (d / "bad.json").write_text('{"family": "cylinder", ')

    r = run("union", "hexagon")
    expect("hexagon waypoints", r.returncode == 0 and "7 / 7 exact" in r.stdout, r.stdout + r.stderr)

    r = run("union", "hexagon", "--verify", "--samples", "2000", "--img-samples", "20000")
    expect("hexagon containment is reported as failing", r.returncode == 2, str(r.returncode))

    fast = ["--samples", "2000", "--img-samples", "10000", "--seed", "3"]
    r = run("brick", "build", "--input", str(d / "cyl.json"), "--out", str(d / "b.json"), *fast)
    expect("brick build", r.returncode == 0, r.stderr)
    built = json.loads((d / "b.json").read_text())
    expect("brick document", {"map", "set", "report", "source_dim"} <= built.keys())

    r2 = run("verify", "--map", str(d / "b.json"), "--target", str(d / "cyl.json"), "--out", str(d / "r.json"), *fast)
    expect("verify round trip", r2.returncode == 0, r2.stderr)
    rep = json.loads((d / "r.json").read_text())
    expect("same numbers after reload",
           abs(rep["coverage_gap"] - built["report"]["coverage_gap"]) < 1e-12
           and rep["violations"]["count"] == built["report"]["violations"]["count"], json.dumps(rep))

    r = run("verify", "--map", str(d / "const.json"), "--target", str(d / "square.json"), *fast)
    expect("constant map fails coverage", r.returncode == 2, r.stdout + r.stderr)

    r = run("verify", "--map", str(d / "b.json"))
    expect("missing flag", r.returncode == 1)
    r = run("brick", "build", "--input", str(d / "bad.json"))
    expect("malformed JSON", r.returncode == 1 and re.search(r"line \d+", r.stderr) is not None, r.stderr)

    svgs = []
    for k in range(2):
        out = d / f"h{k}.svg"
        r = run("plot", "--input", "hexagon", "--svg", str(out), "--seed", "5", "--deterministic")
        expect(f"plot hexagon {k}", r.returncode == 0, r.stderr)
        svgs.append(out.read_text())
    expect("hexagon edges", svgs[0].count("<path") == 6)
    expect("image samples drawn", svgs[0].count("<circle") >= 1000)
    expect("plot is deterministic", svgs[0] == svgs[1])

    r = run("plot", "--input", str(d / "cyl.json"), "--map", str(d / "b.json"), "--svg", str(d / "c.svg"))
    expect("plot brick image", r.returncode == 0 and (d / "c.svg").read_text().count("<circle") >= 1000, r.stderr)

sys.exit(1 if failures else 0)
