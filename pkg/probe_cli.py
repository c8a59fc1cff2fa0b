import json

from click.testing import CliRunner

from minplus.cli import main

runner = CliRunner()


def run(*args, inp=None):
    res = runner.invoke(main, list(args), input=inp)
    return res


def show(tag, res, full=False):
    out = res.output if full else res.output[:300].replace("\n", " | ")
    print(f"{tag}: exit={res.exit_code} out={out!r}")


import tempfile, os

tmp = tempfile.mkdtemp()

r = run("fixtures", "counter")
show("fixtures counter", r)
counter_path = os.path.join(tmp, "counter.json")
with open(counter_path, "w") as fh:
    fh.write(r.output)

r = run("fixtures", "nope")
show("fixtures nope", r)

for name in ("banded", "banded-negative", "bounded-gap", "crash", "drift", "single-loop"):
    res = run("fixtures", name)
    path = os.path.join(tmp, name + ".json")
    with open(path, "w") as fh:
        fh.write(res.output)

banded = os.path.join(tmp, "banded.json")
bandneg = os.path.join(tmp, "banded-negative.json")
bounded = os.path.join(tmp, "bounded-gap.json")
crash = os.path.join(tmp, "crash.json")
drift = os.path.join(tmp, "drift.json")
sloop = os.path.join(tmp, "single-loop.json")

show("eval abb", run("eval", counter_path, "abb"))
show("eval empty", run("eval", counter_path, ""))
show("eval bad word", run("eval", counter_path, "xz"))
show("mwt", run("mwt", counter_path, "ab", "--source", "qa"))
show("mwt bad state", run("mwt", counter_path, "ab", "--source", "zz"))
show("trim", run("trim", counter_path))
show("gap-witness hit", run("gap-witness", counter_path, "--min-gap", "2", "--max-len", "6"))
show("gap-witness miss", run("gap-witness", sloop, "--min-gap", "1", "--max-len", "4"))
show("determinize", run("determinize", counter_path, "--gap", "0"))
show("determinize emit", run("determinize", bounded, "--gap", "1", "--emit"))
show("determinize budget", run("determinize", counter_path, "--gap", "8", "--max-states", "5"))
show("check-equiv neq", run("check-equiv", counter_path, "--gap", "0"))
show("check-equiv eq", run("check-equiv", bounded, "--gap", "1"))
show("cycles find-stable", run("cycles", "find-stable", banded, "a"))
show("cycles min-slope", run("cycles", "min-slope", banded, "a"))
show("cycles shift-stable", run("cycles", "shift-stable", bandneg, "a"))
show("cactus stabilize", run("cactus", "stabilize", banded, "a"))
show("cactus stabilize neg", run("cactus", "stabilize", bandneg, "a"))
show("cactus unfold", run("cactus", "unfold", banded, "--cycle", "a"))
show("cactus flatten", run("cactus", "flatten", banded, "--cycle", "a", "--effect-bound", "3"))
show("cactus validate", run("cactus", "validate", banded, "--cycle", "a"))
show("analyze charge", run("analyze", "charge", crash, "a,a,a"))
show("analyze potential", run("analyze", "potential", crash, "aaa"))
show("ambiguous lift", run("analyze", "charge", crash, "z.a.n"))
show("ambiguous bare", run("analyze", "charge", crash, "a"))
# wait: crash z on 'a' goes to both z and n, bare 'a' should be ambiguous
show("sri check", run("sri", "check", banded, "--u", "z.c.z", "--x", "aa", "--y", "aa"))
show("sri check bad", run("sri", "check", banded, "--x", "", "--y", "aa"))
show("sri classify", run("sri", "classify", banded, "--u", "z.c.z", "--x", "aa", "--y", "aa"))
show("sri shift-kill", run("sri", "shift-kill", bandneg, "--u", "z.c.z", "--x", "aa", "--y", "aa", "--kind", "general"))
show("zoom step", run("zoom", "step", banded, "--w2", "a", "--run", "z", "--gap", "4",
                      "--cover", "4", "--amp", "1000", "--seg-min-len", "1",
                      "--seg-count", "3", "--seg-quantum", "2"))
show("bounds eval pinned", run("bounds", "eval", "--family", "simp", "--name", "Len",
                               "--n", "2", "--d", "0", "--i", "1"))
show("bounds eval undefined", run("bounds", "eval", "--family", "simp", "--name", "Cov",
                                  "--n", "1", "--d", "0"))
show("bounds eval infeasible", run("bounds", "eval", "--family", "simp", "--name", "Len",
                                   "--n", "3", "--d", "1"))
show("bounds eval sat", run("bounds", "eval", "--family", "simp", "--name", "Len",
                            "--n", "3", "--d", "1", "--saturate", "1000000000"))
show("bounds main", run("bounds", "main", "--n", "1"))
show("bounds main digits", run("bounds", "main", "--n", "2", "--saturate", "1000000000", "--digits-only"))
show("bounds length", run("bounds", "length", "--n", "2", "--d", "1"))
print(tmp)
