"""Command-line surface: build codes from config files, encode and
corrupt words, decode with the full majority-coset pipeline or the
plain key equation, run seeded simulations, and replay the two bundled
reference examples.

Exit codes: 0 success, 2 decoding failure (or failed reference
checks), 3 configuration/input error, 4 internal invariant violation.
"""

import json
import sys
import time

import click
import numpy as np

from . import __version__, backend
from .agcode import AGCode
from .config import load_config, load_fixture
from .errors import AgkeqError, InvariantViolation
from .forms import parse_form
from .funcspace import RationalFunction, function_fp
from .linalg import set_default_crossover

EXIT_DECODE = 2
EXIT_CONFIG = 3
EXIT_INTERNAL = 4


def _fail(code, kind, exc):
    click.echo(f"{kind}: {exc}", err=True)
    sys.exit(code)


def _load(config_path, branch_i_divisor=None, strassen_crossover=None):
    """Config phase: every AgkeqError is a config error (exit 3)."""
    try:
        cfg = load_config(config_path)
        if branch_i_divisor is not None:
            cfg.branch_i_divisor = branch_i_divisor
        if strassen_crossover is not None:
            cfg.strassen_crossover = strassen_crossover
        set_default_crossover(cfg.strassen_crossover)
        return cfg
    except AgkeqError as exc:
        _fail(EXIT_CONFIG, "config error", exc)


def _build(builder):
    """Object construction from a validated config; bad combinations of
    divisors/points are still config errors, internal checks are not."""
    try:
        return builder()
    except InvariantViolation as exc:
        _fail(EXIT_INTERNAL, "internal error", exc)
    except AgkeqError as exc:
        _fail(EXIT_CONFIG, "config error", exc)


def _guard(fn, *args, **kwargs):
    """Run phase: any surviving package error is internal (exit 4)."""
    try:
        return fn(*args, **kwargs)
    except AgkeqError as exc:
        _fail(EXIT_INTERNAL, "internal error", exc)


def _read_vector(cfg, path, length, what):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            items = [ln.strip() for ln in fh if ln.strip()]
    except OSError as exc:
        _fail(EXIT_CONFIG, "config error", exc)
    if len(items) != length:
        _fail(
            EXIT_CONFIG,
            "config error",
            f"{what} {path}: expected {length} symbols, got {len(items)}",
        )
    try:
        return cfg.parse_vector(items, length)
    except AgkeqError as exc:
        _fail(EXIT_CONFIG, "config error", f"{what} {path}: {exc}")


def _format_vector(field, vec):
    return [field.format_code(int(c)) for c in vec]


def _emit_vector(field, vec, out):
    text = "\n".join(_format_vector(field, vec)) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _emit_json(data, out):
    text = json.dumps(data, indent=2, sort_keys=True) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _round_json(field, rep):
    fmt = field.format_code
    return {
        "r": rep.r,
        "i_set": [int(i) for i in rep.i_set],
        "winner": fmt(int(rep.winner)) if rep.winner is not None else None,
        "tally": {fmt(int(k)): int(v) for k, v in (rep.tally or {}).items()},
        "failure": rep.failure,
        "steps": [
            {
                "i": s.i,
                "a1": s.a1,
                "a2": s.a2,
                "a3": s.a3,
                "in_ia": s.in_ia,
                "abstained": s.abstained,
                "lam": fmt(int(s.lam)) if s.lam is not None else None,
                "kernel_dims": list(s.kernel_dims) if s.kernel_dims else None,
            }
            for s in rep.steps
        ],
    }


def _trace_json(field, trace):
    out = []
    for entry in trace:
        d = {"r": entry["r"]}
        for key in ("ke", "branch_i", "branch_ii"):
            if key in entry:
                d[key] = entry[key]
        if "coset" in entry:
            d["coset"] = _round_json(field, entry["coset"])
        out.append(d)
    return out


def _outcome_json(field, outm):
    return {
        "ok": outm.ok,
        "reason": outm.reason,
        "weight": int(outm.weight) if outm.weight is not None else None,
        "rounds_used": outm.rounds_used,
        "error": _format_vector(field, outm.error) if outm.error is not None else None,
        "codeword": _format_vector(field, outm.codeword) if outm.codeword is not None else None,
        "trace": _trace_json(field, outm.trace),
    }


def _env_block(cfg, code, plan=None):
    env = {
        "field": f"GF({cfg.field.p}^{cfg.field.m})",
        "modulus": list(cfg.raw["field"]["modulus"]),
        "curve": cfg.raw["curve"],
        "genus": cfg.curve.genus,
        "n": code.n,
        "k": code.k,
        "dstar": code.dstar,
        "t": code.t,
        "backend": backend.NAME,
        "branch_i_divisor": cfg.branch_i_divisor,
    }
    if plan is not None:
        env["nu"] = plan.nu
    return env


@click.group()
@click.version_option(__version__)
def main():
    """Residue codes on smooth plane curves: construction, key-equation
    decoding with majority voting over cosets, and simulations."""


@main.command()
@click.option("--config", "config_path", required=True, type=click.Path(), help="Run config JSON.")
@click.option("--out", default=None, type=click.Path(), help="Write the summary as JSON here.")
def info(config_path, out):
    """Print code parameters for a config."""
    cfg = _load(config_path)
    code = _build(lambda: AGCode(cfg.curve, cfg.dpoints, cfg.gdiv))
    n_rat = len(cfg.curve.rational_points())
    click.echo(f"n={code.n} k={code.k} d*={code.dstar} t={code.t} g={cfg.curve.genus}")
    click.echo(f"rational points: {n_rat}; evaluation points: {code.n}")
    data = _env_block(cfg, code)
    data.update({"rational_points": n_rat, "evaluation_points": code.n})
    if out:
        _emit_json(data, out)


@main.command()
@click.option("--config", "config_path", required=True, type=click.Path())
@click.argument("message_file", type=click.Path())
@click.option("--out", default=None, type=click.Path(), help="Codeword file (default stdout).")
def encode(config_path, message_file, out):
    """Encode a length-k message file (one symbol per line)."""
    cfg = _load(config_path)
    code = _build(lambda: AGCode(cfg.curve, cfg.dpoints, cfg.gdiv))
    msg = _read_vector(cfg, message_file, code.k, "message")
    word = _guard(code.encode, msg)
    _emit_vector(cfg.field, word, out)


@main.command()
@click.option("--config", "config_path", required=True, type=click.Path())
@click.argument("word_file", type=click.Path())
@click.option("--weight", type=int, default=None, help="Weight of a seeded random error.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--error", "error_file", default=None, type=click.Path(), help="Explicit error vector file.")
@click.option("--out", default=None, type=click.Path())
def corrupt(config_path, word_file, weight, seed, error_file, out):
    """Add an error vector (random of given --weight, or explicit) to a word."""
    if (weight is None) == (error_file is None):
        _fail(EXIT_CONFIG, "config error", "pass exactly one of --weight or --error")
    cfg = _load(config_path)
    code = _build(lambda: AGCode(cfg.curve, cfg.dpoints, cfg.gdiv))
    word = _read_vector(cfg, word_file, code.n, "word")
    if error_file is not None:
        err = _read_vector(cfg, error_file, code.n, "error")
    else:
        rng = np.random.default_rng(seed)
        err = _guard(code.random_error, rng, weight)
    _emit_vector(cfg.field, word ^ err, out)


@main.command()
@click.option("--config", "config_path", required=True, type=click.Path())
@click.argument("word_file", type=click.Path())
@click.option("--ke-only", is_flag=True, help="Plain key equation, no coset rounds.")
@click.option("--branch-i-divisor", type=click.Choice(["G", "Gr"]), default=None)
@click.option("--strassen-crossover", type=int, default=None)
@click.option("--out", default=None, type=click.Path(), help="Write the result JSON here.")
def decode(config_path, word_file, ke_only, branch_i_divisor, strassen_crossover, out):
    """Decode a received word; emits error, codeword, and the round trace."""
    cfg = _load(config_path, branch_i_divisor, strassen_crossover)
    plan = _build(cfg.build_plan)
    word = _read_vector(cfg, word_file, plan.code.n, "word")
    outm = _guard(plan.decode, word, ke_only=ke_only)
    _emit_json(_outcome_json(cfg.field, outm), out)
    if not outm.ok:
        sys.exit(EXIT_DECODE)


def _simulate_rows(plan, weights, trials, seed, ke, timings):
    rows = []
    for w in weights:
        full = {"successes": 0, "failures": 0, "miscorrections": 0}
        keo = {"successes": 0, "failures": 0, "miscorrections": 0}
        tsum = 0.0
        for trial in range(trials):
            seed_int = (seed * 1000003 + w) * 1000003 + trial
            rng = np.random.default_rng(seed_int)
            sent = plan.code.random_codeword(rng)
            err = plan.code.random_error(rng, w)
            word = sent ^ err
            t0 = time.perf_counter()
            outm = plan.decode(word)
            tsum += time.perf_counter() - t0
            if outm.ok and np.array_equal(outm.codeword, sent):
                full["successes"] += 1
            elif outm.ok:
                full["miscorrections"] += 1
            else:
                full["failures"] += 1
            if ke:
                ko = plan.decode(word, ke_only=True)
                if ko.ok and np.array_equal(ko.codeword, sent):
                    keo["successes"] += 1
                elif ko.ok:
                    keo["miscorrections"] += 1
                else:
                    keo["failures"] += 1
        row = {
            "weight": w,
            "trials": trials,
            "successes": full["successes"],
            "failures": full["failures"],
            "miscorrections": full["miscorrections"],
            "mean_decode_time": (tsum / trials) if timings else None,
        }
        if ke:
            row.update(
                {
                    "ke_successes": keo["successes"],
                    "ke_failures": keo["failures"],
                    "ke_miscorrections": keo["miscorrections"],
                }
            )
        rows.append(row)
    return rows


def _print_table(rows):
    if not rows:
        return
    cols = [
        c
        for c in (
            "weight",
            "trials",
            "successes",
            "failures",
            "miscorrections",
            "ke_successes",
            "ke_failures",
            "ke_miscorrections",
            "mean_decode_time",
        )
        if c in rows[0]
    ]

    def cell(row, c):
        v = row[c]
        if v is None:
            return "-"
        if isinstance(v, float):
            return f"{v:.6f}"
        return str(v)

    widths = {c: max(len(c), *(len(cell(r, c)) for r in rows)) for c in cols}
    click.echo("  ".join(c.rjust(widths[c]) for c in cols))
    for r in rows:
        click.echo("  ".join(cell(r, c).rjust(widths[c]) for c in cols))


@main.command()
@click.option("--config", "config_path", required=True, type=click.Path())
@click.option("--seed", type=int, default=None, help="Overrides the config seed.")
@click.option("--weight", "weights", type=int, multiple=True, help="Repeatable; overrides config weights.")
@click.option("--trials", type=int, default=None)
@click.option("--ke-only", is_flag=True, help="Also report plain key-equation columns.")
@click.option("--timings", is_flag=True, help="Populate mean_decode_time (breaks byte-identicality).")
@click.option("--branch-i-divisor", type=click.Choice(["G", "Gr"]), default=None)
@click.option("--strassen-crossover", type=int, default=None)
@click.option("--out", default=None, type=click.Path(), help="Write the report JSON here.")
def simulate(config_path, seed, weights, trials, ke_only, timings, branch_i_divisor, strassen_crossover, out):
    """Seeded decoding trials over a range of error weights."""
    cfg = _load(config_path, branch_i_divisor, strassen_crossover)
    plan = _build(cfg.build_plan)
    run_weights = list(weights) if weights else (cfg.sim.weights or list(range(plan.code.t + 1)))
    run_trials = trials if trials is not None else cfg.sim.trials
    run_seed = seed if seed is not None else cfg.sim.seed
    ke = ke_only or cfg.sim.ke_only
    rows = _guard(_simulate_rows, plan, run_weights, run_trials, run_seed, ke, timings)
    env = _env_block(cfg, plan.code, plan)
    env["seed"] = run_seed
    report = {"environment": env, "rows": rows}
    _print_table(rows)
    _emit_json(report, out)


def _reproduce(cfg, plan, which):
    field = cfg.field
    curve = cfg.curve
    ref = cfg.reference
    tab = field.tables()
    checks = []

    def check(name, ok, required=True, detail=None):
        entry = {"name": name, "pass": bool(ok), "required": required}
        if detail is not None:
            entry["detail"] = detail
        checks.append(entry)

    code = plan.code
    params = ref.get("params", {})
    got = {
        "n": code.n,
        "k": code.k,
        "dstar": code.dstar,
        "t": code.t,
        "genus": curve.genus,
        "rational_points": len(curve.rational_points()),
    }
    for key, want in params.items():
        check(f"param_{key}", got.get(key) == want, detail=f"want {want}, got {got.get(key)}")

    y1 = cfg.parse_vector(ref["y1"], code.n)

    if all(k in ref for k in ("c0", "y2", "lambda")):
        lam_ref = field.element(ref["lambda"]).code
        c0 = cfg.parse_vector(ref["c0"], code.n)
        y2_ref = cfg.parse_vector(ref["y2"], code.n)
        ident = bool(np.array_equal(y2_ref, y1 ^ backend.scale(c0, lam_ref, tab)))
        check("reference_identity_y2_eq_y1_minus_lambda_c0", ident)
    else:
        lam_ref = None

    g = curve.genus
    if all(k in ref for k in ("f_num", "f_den")) and ref.get("round0_i_set"):
        i_ref = ref["round0_i_set"][-1]
        f_fn = RationalFunction(curve, parse_form(field, ref["f_num"]), parse_form(field, ref["f_den"]))
        fp = function_fp(curve, f_fn, plan.scheme)
        in_hi = plan.fam_f.level_space(i_ref + 1).contains_fp(fp)
        in_lo = plan.fam_f.level_space(i_ref).contains_fp(fp)
        check("reference_f_in_L_F_next", in_hi and not in_lo)
    if all(k in ref for k in ("g_num", "g_den")) and ref.get("round0_i_set"):
        i_ref = ref["round0_i_set"][-1]
        s_hi = 2 * g - 1 - i_ref
        g_fn = RationalFunction(curve, parse_form(field, ref["g_num"]), parse_form(field, ref["g_den"]))
        gp = function_fp(curve, g_fn, plan.scheme)
        in_hi = plan.fam_gf.level_space(s_hi).contains_fp(gp)
        in_lo = plan.fam_gf.level_space(s_hi - 1).contains_fp(gp)
        check("reference_g_separates_levels", in_hi and not in_lo)

    outm = plan.decode(y1)
    check("decode_succeeds", outm.ok, detail=outm.reason)
    check("error_is_reference_word", outm.error is not None and bool(np.array_equal(outm.error, y1)))
    check("error_weight", outm.weight == ref["error_weight"])
    t0 = outm.trace[0] if outm.trace else {}
    rejected = (
        t0.get("branch_i", "no_solution") != "accepted"
        and t0.get("branch_ii") not in (None, "accepted")
        and "coset" in t0
    )
    check("round0_key_equation_rejects", rejected)

    y2_mine, rep = plan.machine.round_step(0, y1)
    check("round0_condition_a_nonempty", bool(rep.i_set))
    check("round0_vote_succeeds", y2_mine is not None and rep.failure is None)
    if which == "2":
        check("round0_multi_candidate_vote", len(rep.i_set) >= 2)
    if y2_mine is not None:
        check("post_round_coset_membership", plan.machine.in_code_at(y2_mine ^ y1, 1))

    check("verbatim_round0_i_set", rep.i_set == list(ref["round0_i_set"]), required=False)
    if lam_ref is not None:
        check("verbatim_lambda", rep.winner == lam_ref, required=False)

    if which == "1":
        ko = plan.decode(y1, ke_only=True)
        check("ke_only_rejects_reference_word", not ko.ok, detail=ko.reason)

    passed = all(c["pass"] for c in checks if c["required"])
    return {"example": int(which), "fixture": cfg.name, "passed": passed, "checks": checks}


@main.command("reproduce-example")
@click.argument("which", type=click.Choice(["1", "2"]))
@click.option("--out", default=None, type=click.Path(), help="Write the report JSON here.")
def reproduce_example(which, out):
    """Replay a bundled reference example and verify its invariants."""
    name = "klein_f8" if which == "1" else "hermitian_f16"
    try:
        cfg = load_fixture(name)
    except AgkeqError as exc:
        _fail(EXIT_CONFIG, "config error", exc)
    plan = _build(cfg.build_plan)
    report = _guard(_reproduce, cfg, plan, which)
    for c in report["checks"]:
        tag = "PASS" if c["pass"] else ("FAIL" if c["required"] else "info")
        click.echo(f"{tag:4s} {c['name']}")
    _emit_json(report, out)
    if not report["passed"]:
        sys.exit(EXIT_DECODE)


if __name__ == "__main__":
    main()
