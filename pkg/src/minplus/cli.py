"""Command-line workbench: ``minplus <group> <verb>``.

Automata travel as JSON files ("-" reads stdin; ``minplus fixtures``
prints the bundled examples).  Words over the underlying machine are bare
strings of single-letter symbols ("abba"), comma-separated symbol lists,
or ``@file.json`` holding a JSON list.  Commands on the augmented machine
lift such words along the baseline; where the underlying machine is
nondeterministic, spell the step as ``source.symbol.target``.

Exit codes: 0 for success or a positive verdict, 1 for a negative
verdict, 2 for errors.
"""

import json
import sys

import click

from . import analysis, bounds, cactus, determinise, sri, zoom
from .augmented import AugState, AugWfa, augment
from .weights import weight_to_json
from .wfa import (Wfa, eval_word, find_gap_witness, maxeff, min_letter_counter,
                  minimal_run, mwt, single_loop, trim, wfa_from_json,
                  wfa_to_json)


def _fail(message: str):
    click.echo(f"error: {message}", err=True)
    sys.exit(2)


def _echo_json(data):
    click.echo(json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False))


def _load_wfa(path: str) -> Wfa:
    try:
        if path == "-":
            data = json.load(sys.stdin)
        else:
            with open(path) as fh:
                data = json.load(fh)
        return wfa_from_json(data)
    except (OSError, ValueError) as exc:
        _fail(f"cannot load automaton from {path!r}: {exc}")


def _parse_word(text: str):
    if text.startswith("@"):
        try:
            with open(text[1:]) as fh:
                data = json.load(fh)
        except (OSError, ValueError) as exc:
            _fail(f"cannot load word from {text[1:]!r}: {exc}")
        if not isinstance(data, list) or not all(isinstance(s, str) for s in data):
            _fail(f"word file {text[1:]!r} must hold a JSON list of symbols")
        return tuple(data)
    if not text:
        return ()
    if "," in text:
        return tuple(tok for tok in text.split(",") if tok)
    return tuple(text)


def _lift_tokens(text: str):
    if text.startswith("@") or "," in text or not text:
        return _parse_word(text)
    if "." in text:
        return (text,)  # one explicit source.symbol.target step
    return tuple(text)


def _lift(aug: AugWfa, text: str, spine=None):
    """Lift a symbol word to base letters along the baseline."""
    spine = aug.initial.spine if spine is None else spine
    letters = []
    for tok in _lift_tokens(text):
        if "." in tok:
            parts = tok.split(".")
            if len(parts) != 3:
                _fail(f"explicit step {tok!r} must be source.symbol.target")
            src, sym, dst = parts
            if src != spine.baseline:
                _fail(f"step {tok!r} starts at {src!r}, baseline is "
                      f"{spine.baseline!r}")
        else:
            sym = tok
            succ = aug.underlying.successors(spine.baseline, sym)
            if not succ:
                _fail(f"no {sym!r}-transition from baseline {spine.baseline!r}")
            if len(succ) > 1:
                opts = ", ".join(f"{spine.baseline}.{sym}.{t}" for t, _ in succ)
                _fail(f"symbol {sym!r} is ambiguous from {spine.baseline!r}; "
                      f"write one of: {opts}")
            src, dst = spine.baseline, succ[0][0]
        try:
            letter = aug.base_letter(src, sym, dst)
        except ValueError as exc:
            _fail(str(exc))
        nxt = aug.spine_step(spine, letter)
        if nxt is None:
            _fail(f"letter {letter!r} unreadable at spine {spine!r}")
        letters.append(letter)
        spine = nxt
    return tuple(letters), spine


def _cycle_at(aug: AugWfa, prefix: str, word: str) -> cactus.Cycle:
    _pre, spine = _lift(aug, prefix)
    letters, _end = _lift(aug, word, spine)
    if not letters:
        _fail("cycle word must be nonempty")
    try:
        return cactus.Cycle(aug, spine, letters)
    except cactus.NotReflexiveError as exc:
        _fail(str(exc))


def _stable_letter(aug: AugWfa, prefix: str, word: str):
    cycle = _cycle_at(aug, prefix, word)
    shifted = cactus.shift_to_stable(aug, cycle)
    return cactus.stabilise(aug, shifted.cycle), shifted


def _letter_reprs(word) -> list:
    return [repr(letter) for letter in word]


@click.group()
@click.version_option(package_name="minplus")
def main():
    """Tropical (min-plus) weighted-automata workbench."""


# -- core ---------------------------------------------------------------------


FIXTURES = {
    "counter": min_letter_counter,
    "single-loop": single_loop,
    "bounded-gap": lambda: Wfa.trimmed(
        ["q0", "u", "v"], ["a", "b"], "q0",
        [("q0", "a", 0, "u"), ("u", "a", 1, "u"),
         ("q0", "a", 1, "v"), ("v", "a", 1, "v"), ("v", "b", 0, "v")]),
    "banded": lambda: Wfa.trimmed(
        ["z", "h"], ["c", "a"], "z",
        [("z", "c", 0, "z"), ("z", "c", 100, "h"),
         ("z", "a", 0, "z"), ("h", "a", 1, "h")]),
    "banded-negative": lambda: Wfa.trimmed(
        ["z", "h"], ["c", "a"], "z",
        [("z", "c", 0, "z"), ("z", "c", 100, "h"),
         ("z", "a", 0, "z"), ("h", "a", -1, "h")]),
    "crash": lambda: Wfa.trimmed(
        ["z", "n"], ["a", "b", "t"], "z",
        [("z", "a", 0, "z"), ("z", "a", 0, "n"), ("n", "a", -1, "n"),
         ("z", "b", 0, "z"), ("n", "b", 2, "n"), ("z", "t", 0, "z")]),
    "drift": lambda: Wfa.trimmed(
        ["s", "z", "e"], ["c", "a"], "s",
        [("s", "c", 0, "z"), ("s", "c", 0, "e"),
         ("z", "a", 0, "z"), ("e", "a", 2, "e")]),
}


@main.command()
@click.argument("name", type=click.Choice(sorted(FIXTURES)))
def fixtures(name):
    """Print a bundled example automaton as JSON."""
    _echo_json(wfa_to_json(FIXTURES[name]()))


@main.command("eval")
@click.argument("wfa_file")
@click.argument("word")
def eval_cmd(wfa_file, word):
    """Value of WORD: cheapest run from the initial state."""
    machine = _load_wfa(wfa_file)
    try:
        value = eval_word(machine, _parse_word(word))
    except ValueError as exc:
        _fail(str(exc))
    click.echo(weight_to_json(value))


@main.command("mwt")
@click.argument("wfa_file")
@click.argument("word")
@click.option("--source", "sources", multiple=True,
              help="Start states (default: the initial state).")
@click.option("--target", "targets", multiple=True,
              help="Accepted end states (default: all).")
def mwt_cmd(wfa_file, word, sources, targets):
    """Minimal weight of a run on WORD between the given state sets."""
    machine = _load_wfa(wfa_file)
    try:
        value = mwt(machine, sources or machine.initial, _parse_word(word),
                    targets or None)
    except ValueError as exc:
        _fail(str(exc))
    click.echo(weight_to_json(value))


@main.command("trim")
@click.argument("wfa_file")
def trim_cmd(wfa_file):
    """Restrict an automaton to the states reachable from its start."""
    _echo_json(wfa_to_json(trim(_load_wfa(wfa_file))))


@main.command("gap-witness")
@click.argument("wfa_file")
@click.option("--min-gap", type=int, required=True)
@click.option("--max-len", type=int, required=True)
def gap_witness_cmd(wfa_file, min_gap, max_len):
    """Search for words x, y and a state q with a prefix gap above the bound."""
    machine = _load_wfa(wfa_file)
    witness = find_gap_witness(machine, min_gap, max_len)
    if witness is None:
        click.echo(f"no witness with |x|+|y| <= {max_len}")
        sys.exit(1)
    _echo_json({"x": list(witness.x), "y": list(witness.y),
                "state": witness.state, "gap": witness.gap})


@main.command("determinize")
@click.argument("wfa_file")
@click.option("--gap", type=int, required=True)
@click.option("--max-states", type=int, default=10_000, show_default=True)
@click.option("--emit", is_flag=True, help="Print the restriction as JSON.")
def determinize_cmd(wfa_file, gap, max_states, emit):
    """Build the gap-restricted determinisation."""
    machine = _load_wfa(wfa_file)
    try:
        det = determinise.determinize(machine, gap, max_states=max_states)
    except determinise.BudgetExceededError as exc:
        click.echo(str(exc))
        sys.exit(1)
    except ValueError as exc:
        _fail(str(exc))
    if emit:
        _echo_json(wfa_to_json(determinise.export_wfa(det)))
    else:
        _echo_json({"gap": gap, "states": det.size})


@main.command("check-equiv")
@click.argument("wfa_file")
@click.option("--gap", type=int, required=True)
@click.option("--max-states", type=int, default=10_000, show_default=True)
def check_equiv_cmd(wfa_file, gap, max_states):
    """Is the gap-restricted determinisation exact on every word?"""
    machine = _load_wfa(wfa_file)
    try:
        decision = determinise.decide_at_gap(machine, gap, max_states=max_states)
    except (determinise.BudgetExceededError, ValueError, RuntimeError) as exc:
        _fail(str(exc))
    out = {"gap": gap, "states": decision.restricted_states,
           "equivalent": decision.equivalent}
    if not decision.equivalent:
        out.update({"word": list(decision.word), "kind": decision.kind,
                    "value_source": weight_to_json(decision.value_source),
                    "value_restricted": weight_to_json(decision.value_restricted)})
    _echo_json(out)
    sys.exit(0 if decision.equivalent else 1)


# -- cycles -------------------------------------------------------------------


@main.group()
def cycles():
    """Reflexive-cycle analysis on the baseline-augmented machine."""


_prefix_option = click.option(
    "--prefix", default="", help="Word positioning the spine first.")


@cycles.command("find-stable")
@click.argument("wfa_file")
@click.argument("word")
@_prefix_option
def cycles_find_stable(wfa_file, word, prefix):
    """Check stability: powers up to the state count stay matrix-monotone."""
    aug = augment(_load_wfa(wfa_file))
    cycle = _cycle_at(aug, prefix, word)
    try:
        stable = cactus.is_stable_cycle(aug, cycle)
    except cactus.NotProperError as exc:
        _fail(str(exc))
    click.echo("stable" if stable else "unstable")
    sys.exit(0 if stable else 1)


@cycles.command("min-slope")
@click.argument("wfa_file")
@click.argument("word")
@_prefix_option
def cycles_min_slope(wfa_file, word, prefix):
    """Cheapest average-weight inner cycle, with its witness run."""
    aug = augment(_load_wfa(wfa_file))
    cycle = _cycle_at(aug, prefix, word)
    try:
        ms = cactus.min_slope_cycle(aug, cycle)
    except cactus.NotReflexiveError as exc:
        _fail(str(exc))
    _echo_json({"slope": str(ms.slope), "k": ms.k, "state": ms.state})


@cycles.command("shift-stable")
@click.argument("wfa_file")
@click.argument("word")
@_prefix_option
def cycles_shift_stable(wfa_file, word, prefix):
    """Re-anchor the cycle at its min-slope run until it is stable."""
    aug = augment(_load_wfa(wfa_file))
    cycle = _cycle_at(aug, prefix, word)
    try:
        shifted = cactus.shift_to_stable(aug, cycle)
    except cactus.NotReflexiveError as exc:
        _fail(str(exc))
    _echo_json({"k": shifted.k, "slope": str(shifted.slope),
                "anchor_start": repr(shifted.anchor.start),
                "word": _letter_reprs(shifted.cycle.word)})


# -- cactus letters -----------------------------------------------------------


@main.group("cactus")
def cactus_group():
    """Stabilised cycle letters: build, unfold, flatten, validate."""


@cactus_group.command("stabilize")
@click.argument("wfa_file")
@click.argument("word")
@_prefix_option
def cactus_stabilize(wfa_file, word, prefix):
    """Freeze the long-run behaviour of a cycle into a single letter."""
    aug = augment(_load_wfa(wfa_file))
    try:
        letter, shifted = _stable_letter(aug, prefix, word)
    except (cactus.NotStableError, cactus.NotGroundedError) as exc:
        click.echo(str(exc))
        sys.exit(1)
    pairs = aug.letter_pairs(letter)
    _echo_json({"letter": repr(letter), "depth": letter.depth,
                "k": shifted.k, "slope": str(shifted.slope),
                "pairs": {s: [[t, w] for t, w in row] for s, row in pairs.items()}})


@cactus_group.command("unfold")
@click.argument("wfa_file")
@click.option("--prefix", default="")
@click.option("--cycle", "cycle_word", required=True)
@click.option("--suffix", default="")
@click.option("--separation", type=int, default=None,
              help="Effect separation to certify (default: 2*maxeff+1).")
def cactus_unfold(wfa_file, prefix, cycle_word, suffix, separation):
    """Replace a stabilised letter by a concrete power of its cycle."""
    aug = augment(_load_wfa(wfa_file))
    pre, spine = _lift(aug, prefix)
    try:
        letter, _shifted = _stable_letter(aug, prefix, cycle_word)
    except (cactus.NotStableError, cactus.NotGroundedError) as exc:
        click.echo(str(exc))
        sys.exit(1)
    post, _ = _lift(aug, suffix, spine)
    word = pre + (letter,) + post
    if separation is None:
        separation = 2 * maxeff(aug, word) + 1
    try:
        result = cactus.unfold(aug, pre, letter, post, separation)
    except (cactus.M0CapExceededError, ValueError) as exc:
        _fail(str(exc))
    _echo_json({"m0": result.m0, "length": len(result.word),
                "word": _letter_reprs(result.word)})


@cactus_group.command("flatten")
@click.argument("wfa_file")
@click.option("--prefix", default="")
@click.option("--cycle", "cycle_word", required=True)
@click.option("--suffix", default="")
@click.option("--effect-bound", "f_bound", type=int, required=True,
              help="Effect bound F the flattened word must respect.")
def cactus_flatten(wfa_file, prefix, cycle_word, suffix, f_bound):
    """Unfold every stabilised letter, outermost first."""
    aug = augment(_load_wfa(wfa_file))
    pre, spine = _lift(aug, prefix)
    try:
        letter, _shifted = _stable_letter(aug, prefix, cycle_word)
    except (cactus.NotStableError, cactus.NotGroundedError) as exc:
        click.echo(str(exc))
        sys.exit(1)
    post, _ = _lift(aug, suffix, spine)
    word = pre + (letter,) + post
    separation = 3 * maxeff(aug, word) + f_bound + 1
    try:
        flat = cactus.flatten(aug, word, separation)
    except (cactus.FTooSmallError, cactus.M0CapExceededError, ValueError) as exc:
        _fail(str(exc))
    _echo_json({"length": len(flat), "word": _letter_reprs(flat)})


@cactus_group.command("validate")
@click.argument("wfa_file")
@click.option("--prefix", default="")
@click.option("--cycle", "cycle_word", required=True)
@click.option("--length-bound", type=int, default=None,
              help="Uniform bound on interior word lengths (default: none).")
@click.option("--max-depth", type=int, default=None)
def cactus_validate(wfa_file, prefix, cycle_word, length_bound, max_depth):
    """Check nesting depth and interior lengths of a stabilised letter."""
    aug = augment(_load_wfa(wfa_file))
    try:
        letter, _shifted = _stable_letter(aug, prefix, cycle_word)
    except (cactus.NotStableError, cactus.NotGroundedError) as exc:
        click.echo(str(exc))
        sys.exit(1)
    length_fn = None if length_bound is None else (lambda depth: length_bound)
    ok = cactus.validate_bounded_letter(aug, letter, length_fn, max_depth=max_depth)
    click.echo("valid" if ok else "invalid")
    sys.exit(0 if ok else 1)


# -- charge and potential -----------------------------------------------------


@main.group()
def analyze():
    """Charge and potential of configurations after a word."""


@analyze.command("charge")
@click.argument("wfa_file")
@click.argument("word")
def analyze_charge(wfa_file, word):
    """How far the whole configuration has sunk below the baseline."""
    aug = augment(_load_wfa(wfa_file))
    letters, _ = _lift(aug, word)
    try:
        report = analysis.charge(aug, letters)
    except (analysis.JumpPresentError, analysis.NoSeamlessBaselineError) as exc:
        _fail(str(exc))
    _echo_json({"psi": report.psi, "state": repr(report.state)})


@analyze.command("potential")
@click.argument("wfa_file")
@click.argument("word")
@click.option("--horizon", type=int, default=4, show_default=True,
              help="Suffix length over which dominance is checked.")
def analyze_potential(wfa_file, word, horizon):
    """Height of the dominant state above the configuration minimum."""
    aug = augment(_load_wfa(wfa_file))
    letters, _ = _lift(aug, word)
    params = analysis.default_params(aug, horizon=horizon)
    try:
        report = analysis.potential(aug, letters, params)
    except (analysis.JumpPresentError, analysis.NoSeamlessBaselineError) as exc:
        _fail(str(exc))
    _echo_json({"phi": report.phi, "dominant": repr(report.dominant),
                "suffix": _letter_reprs(report.suffix)})


# -- gap-banded decompositions ------------------------------------------------


def _sri_options(fn):
    for deco in (
        click.option("--u", "u_word", default=""),
        click.option("--x", "x_word", required=True),
        click.option("--y", "y_word", required=True),
        click.option("--v", "v_word", default=""),
        click.option("--kind", type=click.Choice(["simple", "general"]),
                     default="simple", show_default=True),
        click.option("--extra-gap", type=int, default=0, show_default=True,
                     help="Additional gap margin for the general kind."),
    ):
        fn = deco(fn)
    return fn


def _build_sri(aug, u_word, x_word, y_word, v_word, kind, extra_gap):
    u, spine = _lift(aug, u_word)
    x, spine = _lift(aug, x_word, spine)
    y, spine = _lift(aug, y_word, spine)
    v, _ = _lift(aug, v_word, spine)
    return sri.check_sri_verbose(aug, u, x, y, v, kind=kind, extra_gap=extra_gap)


def _sri_json(dec: sri.SriDecomposition) -> dict:
    return {"kind": dec.kind, "gap": dec.gap,
            "partition": [[repr(s) for s in part] for part in dec.partition],
            "shifts_x": list(dec.shifts_x), "shifts_y": list(dec.shifts_y)}


@main.group("sri")
def sri_group():
    """Gap-banded repetition decompositions of a word u x y v."""


@sri_group.command("check")
@click.argument("wfa_file")
@_sri_options
def sri_check(wfa_file, **kw):
    """Verify the banded-decomposition clauses; report the partition."""
    aug = augment(_load_wfa(wfa_file))
    try:
        dec, reason = _build_sri(aug, **kw)
    except ValueError as exc:
        _fail(str(exc))
    if dec is None:
        click.echo(f"not a valid decomposition: {reason}")
        sys.exit(1)
    _echo_json(_sri_json(dec))


@sri_group.command("classify")
@click.argument("wfa_file")
@_sri_options
def sri_classify(wfa_file, **kw):
    """Flavour of a valid decomposition: shift signs, stability, degeneracy."""
    aug = augment(_load_wfa(wfa_file))
    dec, reason = _build_sri(aug, **kw)
    if dec is None:
        click.echo(f"not a valid decomposition: {reason}")
        sys.exit(1)
    cls = sri.classify(aug, dec)
    _echo_json({"flavour": cls.flavour, "stable": cls.stable,
                "degenerate": cls.degenerate})


@sri_group.command("shorten")
@click.argument("wfa_file")
@_sri_options
def sri_shorten(wfa_file, **kw):
    """Drop the first repetition block of a degenerate decomposition."""
    aug = augment(_load_wfa(wfa_file))
    dec, reason = _build_sri(aug, **kw)
    if dec is None:
        click.echo(f"not a valid decomposition: {reason}")
        sys.exit(1)
    try:
        shorter = sri.degenerate_shorten(aug, dec)
    except sri.NotDegenerateError as exc:
        click.echo(str(exc))
        sys.exit(1)
    _echo_json({"word": _letter_reprs(shorter)})


@sri_group.command("bud")
@click.argument("wfa_file")
@_sri_options
def sri_bud(wfa_file, **kw):
    """Replace the repetition by its stabilised letter; verify the effects."""
    aug = augment(_load_wfa(wfa_file))
    dec, reason = _build_sri(aug, **kw)
    if dec is None:
        click.echo(f"not a valid decomposition: {reason}")
        sys.exit(1)
    try:
        report = sri.bud(aug, dec)
    except (sri.NotDegenerateError, cactus.NotStableError) as exc:
        click.echo(str(exc))
        sys.exit(1)
    out = {"ok": report.ok, "word": _letter_reprs(report.word),
           "weights_ok": report.weights_ok, "charge_ok": report.charge_ok,
           "potential_ok": report.potential_ok}
    if report.witness_verdict is not None:
        out["witness"] = {"ok": report.witness_verdict.ok,
                          "failed_clause": report.witness_verdict.failed_clause}
    _echo_json(out)
    sys.exit(0 if report.ok else 1)


@sri_group.command("shift-kill")
@click.argument("wfa_file")
@_sri_options
def sri_shift_kill(wfa_file, **kw):
    """Shift a negative decomposition onto its falling run and stabilise."""
    aug = augment(_load_wfa(wfa_file))
    dec, reason = _build_sri(aug, **kw)
    if dec is None:
        click.echo(f"not a valid decomposition: {reason}")
        sys.exit(1)
    try:
        report = sri.shift_kill_positive(aug, dec)
    except (sri.NoNegativeCycleError, sri.PositivityViolatedError) as exc:
        click.echo(str(exc))
        sys.exit(1)
    _echo_json({"cactus": repr(report.cactus), "anchor": repr(report.anchor.start),
                "repetitions": report.repetitions,
                "killed_parts": report.killed_parts})


# -- zoom ---------------------------------------------------------------------


@main.group("zoom")
def zoom_group():
    """Window analysis: repeated blocks against tracked runs."""


@zoom_group.command("step")
@click.argument("wfa_file")
@click.option("--w1", default="", help="Prefix of the covered window.")
@click.option("--w2", required=True, help="Repeated block.")
@click.option("--run", "run_targets", multiple=True, required=True,
              help="Inner end state of a tracked run (repeatable).")
@click.option("--gap", type=int, required=True)
@click.option("--cover", type=int, required=True)
@click.option("--amp", type=int, required=True)
@click.option("--seg-min-len", type=int, required=True)
@click.option("--seg-count", type=int, required=True)
@click.option("--seg-quantum", type=int, required=True)
@click.option("--kind", type=click.Choice(["simple", "general"]),
              default="simple", show_default=True)
def zoom_step_cmd(wfa_file, w1, w2, run_targets, gap, cover, amp, seg_min_len,
                  seg_count, seg_quantum, kind):
    """One window-analysis step: banded decomposition or a new tracked run."""
    aug = augment(_load_wfa(wfa_file))
    lw1, spine = _lift(aug, w1)
    lw2, _ = _lift(aug, w2, spine)
    try:
        thresholds = zoom.ZoomThresholds(gap=gap, cover=cover, amp=amp,
                                         seg_min_len=seg_min_len,
                                         seg_count=seg_count,
                                         seg_quantum=seg_quantum)
    except ValueError as exc:
        _fail(str(exc))
    full = lw1 + lw2 * thresholds.seg_count
    end = aug.spine_after(full)
    runs = []
    for inner in run_targets:
        try:
            target = AugState(inner, end.baseline, end.reachable)
        except ValueError as exc:
            _fail(str(exc))
        run = minimal_run(aug, full, target=target)
        if run is None:
            _fail(f"no run on the window ends at {inner!r}")
        runs.append(run)
    outcome = zoom.zoom_step(aug, lw1, lw2, runs, thresholds, kind=kind)
    out = {"outcome": outcome.kind}
    if outcome.kind == "sri":
        out["sri"] = _sri_json(outcome.sri)
    elif outcome.kind == "new-run":
        out.update({"end": repr(outcome.run.end),
                    "w1": _letter_reprs(outcome.w1),
                    "w2": _letter_reprs(outcome.w2),
                    "gap": weight_to_json(outcome.gap)})
    else:
        out["reason"] = outcome.reason
    _echo_json(out)
    sys.exit(0 if outcome.kind != "error" else 1)


# -- bounds -------------------------------------------------------------------


@main.group("bounds")
def bounds_group():
    """The stratified length/amplitude bound families."""


def _echo_bounds_value(value: bounds.BoundsValue, digits_only: bool):
    if value.saturated:
        click.echo(f"saturated(cap={value.cap})")
    elif digits_only:
        click.echo(value.digits())
    else:
        click.echo(str(int(value)))


@bounds_group.command("eval")
@click.option("--family", type=click.Choice(list(bounds.FAMILIES)), required=True)
@click.option("--name", required=True)
@click.option("--n", type=int, required=True)
@click.option("--d", type=int, default=0, show_default=True)
@click.option("--i", type=int, default=0, show_default=True)
@click.option("--base-weight", type=int, default=1, show_default=True)
@click.option("--ld", type=int, default=None, help="Inner length (upper family).")
@click.option("--li", type=int, default=None, help="Recursion seed (upper family).")
@click.option("--saturate", type=int, default=None,
              help="Clamp the evaluation at this cap instead of exact mode.")
@click.option("--digits-only", is_flag=True,
              help="Print the decimal digit count, not the value.")
def bounds_eval(family, name, n, d, i, base_weight, ld, li, saturate, digits_only):
    """Evaluate one point of a bound family."""
    try:
        value = bounds.evaluate(family, name, n, d=d, i=i,
                                base_weight=base_weight, saturate=saturate,
                                ld=ld, li=li)
    except bounds.UndefinedPointError as exc:
        _fail(f"undefined point: {exc}")
    except bounds.InfeasibleValue as exc:
        _fail(f"infeasible without --saturate: {exc.point} would have about "
              f"{exc.digits_estimate} digits")
    except ValueError as exc:
        _fail(str(exc))
    _echo_bounds_value(value, digits_only)


@bounds_group.command("main")
@click.option("--n", type=int, required=True)
@click.option("--base-weight", type=int, default=1, show_default=True)
@click.option("--saturate", type=int, default=None)
@click.option("--digits-only", is_flag=True)
def bounds_main(n, base_weight, saturate, digits_only):
    """The dominating amplitude bound for an n-state machine."""
    try:
        value = bounds.main_bound(n, base_weight=base_weight, saturate=saturate)
    except bounds.InfeasibleValue as exc:
        _fail(f"infeasible without --saturate: {exc.point} would have about "
              f"{exc.digits_estimate} digits")
    _echo_bounds_value(value, digits_only)


@bounds_group.command("length")
@click.option("--n", type=int, required=True)
@click.option("--d", type=int, required=True)
@click.option("--family", type=click.Choice(["simp", "gen"]), default="simp",
              show_default=True)
@click.option("--base-weight", type=int, default=1, show_default=True)
@click.option("--saturate", type=int, default=None)
def bounds_length(n, d, family, base_weight, saturate):
    """Interior-length allowance at nesting depth d."""
    try:
        fn = bounds.length_function(n, base_weight=base_weight, family=family,
                                    saturate=saturate)
        value = fn(d)
    except bounds.UndefinedPointError as exc:
        _fail(f"undefined point: {exc}")
    except bounds.InfeasibleValue as exc:
        _fail(f"infeasible without --saturate: {exc.point} would have about "
              f"{exc.digits_estimate} digits")
    _echo_bounds_value(value, digits_only=False)


if __name__ == "__main__":
    main()
