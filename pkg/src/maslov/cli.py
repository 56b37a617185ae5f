"""Command-line front end: JSON jobs in, machine-readable reports out.

One job per invocation.  Reports are deterministic byte-for-byte for a
fixed job (including the seed); wall-clock timing goes to stderr only.
Exit status: 0 when every check passes, 1 when a check fails, 2 on
input or precondition errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .errors import MaslovError, ParseError
from .fields import INF, FieldCtx
from .forms import FormMatrix
from .lagrange import (
    HyperbolicSpace,
    Lagrangian,
    UnitaryElement,
    enumerate_lagrangians,
    kappa,
)
from .linalg import Matrix
from .cocycle import (
    boundary_defect,
    disc_defect,
    kashiwara_class,
    maslov,
    orbit_census,
    reduced_maslov,
    tau,
)
from .sampling import (
    random_based_triple,
    random_opposite_quadruple,
    rng_for,
)
from .symbols import compare_stbg_maslov, steinberg_relations_report
from .witt import hilbert_symbol, witt_class

DEFAULT_SEED = 20259


def parse_field(spec) -> FieldCtx:
    if isinstance(spec, str):
        try:
            spec = json.loads(spec)
        except json.JSONDecodeError:
            spec = {"kind": spec}
    if not isinstance(spec, dict) or "kind" not in spec:
        raise ParseError("field descriptor needs a 'kind'")
    kind = spec["kind"]
    return FieldCtx(
        kind,
        p=spec.get("p"),
        d=spec.get("d"),
        epsilon=spec.get("epsilon", 1),
    )


def parse_matrix(ctx, rows) -> Matrix:
    if not isinstance(rows, list) or not all(isinstance(r, list)
                                             for r in rows):
        raise ParseError("matrix must be a list of rows")
    return Matrix(ctx, [[ctx.parse_scalar(v) for v in r] for r in rows])


def matrix_to_json(ctx, m: Matrix):
    return [[ctx.scalar_to_json(v) for v in r] for r in m.rows]


def _lagrangian(space, rows) -> Lagrangian:
    return Lagrangian(space, parse_matrix(space.ctx, rows))


def _space(ctx, inputs) -> HyperbolicSpace:
    n = inputs.get("n")
    if n is None:
        raise ParseError("input needs the rank 'n'")
    return HyperbolicSpace(ctx, int(n))


def _witt_output(cls):
    return cls.to_json()


# ---------------------------------------------------------------------------
# command implementations; each returns (outputs, checks)


def cmd_kappa(ctx, inputs, args):
    space = _space(ctx, inputs)
    x = _lagrangian(space, inputs["X"])
    y = _lagrangian(space, inputs["Y"])
    z = _lagrangian(space, inputs["Z"])
    t = kappa(x, y, z)
    return {
        "t": matrix_to_json(ctx, t.mat),
        "witt": _witt_output(witt_class(t)),
    }, []


def cmd_maslov(ctx, inputs, args):
    space = _space(ctx, inputs)
    x = _lagrangian(space, inputs["X"])
    y = _lagrangian(space, inputs["Y"])
    z = _lagrangian(space, inputs["Z"])
    return {"witt": _witt_output(maslov(x, y, z))}, []


def cmd_kashiwara(ctx, inputs, args):
    space = _space(ctx, inputs)
    x = _lagrangian(space, inputs["X"])
    y = _lagrangian(space, inputs["Y"])
    z = _lagrangian(space, inputs["Z"])
    return {"witt": _witt_output(kashiwara_class(x, y, z))}, []


def cmd_tau(ctx, inputs, args):
    space = _space(ctx, inputs)
    g = UnitaryElement(space, parse_matrix(ctx, inputs["g"]))
    h = UnitaryElement(space, parse_matrix(ctx, inputs["h"]))
    o = _lagrangian(space, inputs["o"]) if "o" in inputs else None
    return {"witt": _witt_output(tau(g, h, o))}, []


def cmd_witt(ctx, inputs, args):
    eps = inputs.get("eps", 1)
    form = FormMatrix(ctx, parse_matrix(ctx, inputs["matrix"]), eps)
    return {"witt": _witt_output(witt_class(form))}, []


def cmd_disc(ctx, inputs, args):
    eps = inputs.get("eps", 1)
    form = FormMatrix(ctx, parse_matrix(ctx, inputs["matrix"]), eps)
    return {"disc": witt_class(form).signed_disc().to_json()}, []


def cmd_hilbert(ctx, inputs, args):
    place = inputs["place"]
    place = INF if place in (INF, "oo") else int(place)
    val = hilbert_symbol(inputs["a"], inputs["b"], place)
    return {"symbol": val}, []


def cmd_lagrangians(ctx, inputs, args):
    space = _space(ctx, inputs)
    lags = enumerate_lagrangians(space)
    out = {"count": len(lags)}
    if len(lags) <= 64:
        out["lagrangians"] = [matrix_to_json(ctx, lag.canonical)
                              for lag in lags]
    return out, []


def cmd_boundary_check(ctx, inputs, args):
    space = _space(ctx, inputs)
    trials = args.trials
    zero = 0
    for i in range(trials):
        quad = random_opposite_quadruple(space, rng_for(args.seed, i))
        if boundary_defect(*quad).is_zero():
            zero += 1
    checks = [{"name": "boundary-defect-zero", "pass": zero == trials,
               "detail": f"{zero}/{trials}"}]
    return {"trials": trials, "zero": zero}, checks


def cmd_disc_defect_check(ctx, inputs, args):
    space = _space(ctx, inputs)
    trials = args.trials
    good = 0
    for i in range(trials):
        bt = random_based_triple(space, rng_for(args.seed, i))
        if disc_defect(bt).is_identity():
            good += 1
    checks = [{"name": "disc-defect-identity", "pass": good == trials,
               "detail": f"{good}/{trials}"}]
    return {"trials": trials, "identity": good}, checks


def cmd_reduced_check(ctx, inputs, args):
    space = _space(ctx, inputs)
    trials = args.trials
    good = 0
    for i in range(trials):
        bt = random_based_triple(space, rng_for(args.seed, i))
        if reduced_maslov(bt).in_II():
            good += 1
    checks = [{"name": "reduced-in-II", "pass": good == trials,
               "detail": f"{good}/{trials}"}]
    return {"trials": trials, "in_II": good}, checks


def _det_one_matrices(ctx, rng):
    while True:
        rows = [[ctx.random_element(rng, 3) for _ in range(2)]
                for _ in range(2)]
        m = Matrix(ctx, rows)
        d = m.det()
        if not d:
            continue
        scaled = Matrix(ctx, [[v / d for v in m.rows[0]], list(m.rows[1])])
        return scaled


def cmd_steinberg_check(ctx, inputs, args):
    if args.exhaustive:
        if not ctx.is_finite:
            raise ParseError("--exhaustive needs a finite field")
        els = ctx.nonzero_elements()
        triples = [(s, t, r) for s in els for t in els for r in els]
    else:
        triples = []
        for i in range(args.trials):
            rng = rng_for(args.seed, i)
            triples.append(tuple(ctx.random_nonzero(rng) for _ in range(3)))
    report = steinberg_relations_report(ctx, triples)
    checks = [{"name": f"relation-{name}", "pass": True, "detail": f"{cnt}"}
              for name, cnt in report["checks"].items()]
    for v in report["violations"]:
        checks.append({"name": f"violation-{v[0]}", "pass": False,
                       "detail": repr(v[1:])})
    return {"checks_run": report["checks"],
            "violations": len(report["violations"])}, checks


def cmd_compare(ctx, inputs, args):
    if "g1" in inputs:
        g1 = parse_matrix(ctx, inputs["g1"])
        g2 = parse_matrix(ctx, inputs["g2"])
        ok = compare_stbg_maslov(g1, g2)
        return {"match": ok}, [{"name": "stbg-vs-reduced", "pass": ok,
                                "detail": "single pair"}]
    good = 0
    for i in range(args.trials):
        rng = rng_for(args.seed, i)
        while True:
            g1 = _det_one_matrices(ctx, rng)
            g2 = _det_one_matrices(ctx, rng)
            try:
                if compare_stbg_maslov(g1, g2):
                    good += 1
                break
            except MaslovError:
                continue
    checks = [{"name": "stbg-vs-reduced", "pass": good == args.trials,
               "detail": f"{good}/{args.trials}"}]
    return {"trials": args.trials, "match": good}, checks


def cmd_census(ctx, inputs, args):
    space = _space(ctx, inputs)
    result = orbit_census(space)
    checks = [{"name": "fibers-are-orbits", "pass": result.fibers_are_orbits,
               "detail": f"{len(result.classes)} classes"}]
    return {
        "classes": len(result.classes),
        "orbit_sizes": result.sizes(),
        "total_triples": result.total,
    }, checks


COMMANDS = {
    "kappa": cmd_kappa,
    "maslov": cmd_maslov,
    "kashiwara": cmd_kashiwara,
    "tau": cmd_tau,
    "witt": cmd_witt,
    "disc": cmd_disc,
    "hilbert": cmd_hilbert,
    "lagrangians": cmd_lagrangians,
    "boundary-check": cmd_boundary_check,
    "disc-defect-check": cmd_disc_defect_check,
    "reduced-check": cmd_reduced_check,
    "steinberg-check": cmd_steinberg_check,
    "compare": cmd_compare,
    "census": cmd_census,
}


def build_parser():
    ap = argparse.ArgumentParser(
        prog="maslov",
        description="Exact verification of the Lagrangian triple cocycle, "
                    "its reductions, and the symbol comparison.")
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("--field", default='{"kind":"Q"}',
                    help="field descriptor JSON, e.g. "
                         '{"kind":"Fp","p":5,"epsilon":1}')
    ap.add_argument("--input", default="{}",
                    help="inline JSON input or @path/to/file.json")
    ap.add_argument("--trials", type=int, default=100)
    ap.add_argument("--seed", type=int, default=DEFAULT_SEED)
    ap.add_argument("--exhaustive", action="store_true")
    ap.add_argument("--output", help="also write the report to this path")
    ap.add_argument("--p", type=int, help="shorthand: prime for Fp fields")
    ap.add_argument("--n", type=int, help="shorthand: module rank")
    return ap


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    started = time.monotonic()
    try:
        field_spec = args.field
        if args.p is not None:
            field_spec = json.dumps({"kind": "Fp", "p": args.p})
        ctx = parse_field(field_spec)
        raw = args.input
        if raw.startswith("@"):
            with open(raw[1:], "r", encoding="utf-8") as fh:
                raw = fh.read()
        try:
            inputs = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad input JSON: {exc}") from exc
        if args.n is not None:
            inputs.setdefault("n", args.n)
        outputs, checks = COMMANDS[args.command](ctx, inputs, args)
        ok = all(c["pass"] for c in checks)
        report = {
            "command": args.command,
            "field": json.loads(field_spec) if isinstance(field_spec, str)
            else field_spec,
            "inputs": inputs,
            "seed": args.seed,
            "outputs": outputs,
            "checks": checks,
            "pass": ok,
        }
        status = 0 if ok else 1
    except MaslovError as exc:
        report = {
            "command": args.command,
            "error": type(exc).__name__,
            "message": str(exc),
        }
        status = 2
    except KeyError as exc:
        report = {
            "command": args.command,
            "error": "ParseError",
            "message": f"missing input field {exc}",
        }
        status = 2
    text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    sys.stdout.write(text)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    elapsed = time.monotonic() - started
    print(f"[{args.command}] elapsed {elapsed:.3f}s", file=sys.stderr)
    return status


def main():
    raise SystemExit(run())


if __name__ == "__main__":
    main()
