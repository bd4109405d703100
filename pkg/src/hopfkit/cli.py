"""Command line front end: read a manifest, run a subcommand, emit a report.

Exit codes: 0 success, 2 invalid input, 3 numerical verification failure,
1 anything else raised by the library.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from dataclasses import dataclass, field

from .contraction import (
    ResonantMap,
    deformation_family,
    pushforward,
    tangent_cohomology,
    validate,
    vaisman_status,
    vaisman_status_linear,
)
from .errors import HopfError, ParameterError, ValidationError
from .exact import GaussianRational, parse_rational
from .exact.linalg import as_matrix
from .invariants import (
    algebraic_dimension,
    betti_numbers,
    bott_chern_numbers,
    hodge_numbers,
    kodaira_report,
    metric_flags,
    oracle_hodge_table,
)
from .lie_algebra import build_model, verify_jacobi
from .resonance import Multipliers, enumerate_resonances

DEFAULT_TOL = 1e-6
TOL_ENV = "HOPFKIT_TOL"

EXACT = "exact"
CLOSED = "closed form"
ORACLE = "oracle"

ALGDIM_FOOTNOTE = (
    "a(W) is only computed for diagonal contractions; for non-diagonal W it is "
    "omitted because algebraic dimension is not upper semicontinuous in families."
)


class ManifestError(ValidationError):
    pass


@dataclass
class Manifest:
    n: int
    lam: Multipliers
    gamma: ResonantMap
    options: dict = field(default_factory=dict)
    matrix: list | None = None

    def echo(self):
        out = {"n": self.n, "lambda": self.lam.to_json(),
               "terms": self.gamma.to_json()["terms"]}
        if self.matrix is not None:
            out["matrix"] = [[x.to_json() for x in row] for row in self.matrix]
        return out


def _field(where: str, fn, *args):
    try:
        return fn(*args)
    except (ValueError, TypeError, KeyError) as exc:
        raise ManifestError(f"manifest field '{where}': {exc}") from None


def parse_manifest(data) -> Manifest:
    if not isinstance(data, dict):
        raise ManifestError("manifest must be a JSON object")
    unknown = set(data) - {"n", "lambda", "terms", "options", "matrix"}
    if unknown:
        raise ManifestError(f"manifest has unknown fields {sorted(unknown)}")
    if "lambda" not in data:
        raise ManifestError("manifest field 'lambda' is missing")
    raw = data["lambda"]
    if not isinstance(raw, list):
        raise ManifestError("manifest field 'lambda' must be a list")
    lam_entries = [_field(f"lambda[{k + 1}]", GaussianRational.from_json, x) for k, x in enumerate(raw)]
    n = data.get("n", len(lam_entries))
    if not isinstance(n, int) or isinstance(n, bool) or n != len(lam_entries):
        raise ManifestError(f"manifest field 'n': {n!r} does not match len(lambda) = {len(lam_entries)}")
    try:
        lam = Multipliers(tuple(lam_entries))
    except ValidationError as exc:
        raise ManifestError(f"manifest field 'lambda': {exc}") from None

    terms = []
    raw_terms = data.get("terms", [])
    if not isinstance(raw_terms, list):
        raise ManifestError("manifest field 'terms' must be a list")
    for k, t in enumerate(raw_terms):
        where = f"terms[{k + 1}]"
        if not isinstance(t, dict) or set(t) != {"i", "m", "a"}:
            raise ManifestError(f"manifest field '{where}' must have exactly the keys i, m, a")
        i, m = t["i"], t["m"]
        if not isinstance(i, int) or isinstance(i, bool) or not 1 <= i <= n:
            raise ManifestError(f"manifest field '{where}.i': {i!r} not in 1..{n}")
        if not isinstance(m, list) or len(m) != n or any(not isinstance(e, int) or isinstance(e, bool) or e < 0 for e in m):
            raise ManifestError(f"manifest field '{where}.m': {m!r} is not a list of {n} nonnegative integers")
        a = _field(f"{where}.a", GaussianRational.from_json, t["a"])
        terms.append((i - 1, tuple(m), a))
    try:
        gamma = ResonantMap(lam, tuple(terms))
    except ValidationError as exc:
        raise ManifestError(f"manifest field 'terms': {exc}") from None
    validate(gamma)

    matrix = None
    if "matrix" in data:
        M = data["matrix"]
        if not isinstance(M, list) or len(M) != n or any(not isinstance(r, list) or len(r) != n for r in M):
            raise ManifestError(f"manifest field 'matrix' must be {n}x{n}")
        matrix = [[_field(f"matrix[{a + 1}][{b + 1}]", GaussianRational.from_json, x) for b, x in enumerate(r)]
                  for a, r in enumerate(M)]
    options = data.get("options", {})
    if not isinstance(options, dict):
        raise ManifestError("manifest field 'options' must be an object")
    return Manifest(n, lam, gamma, options, matrix)


def load_manifest(path: str) -> Manifest:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ManifestError(f"cannot read manifest {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ManifestError(f"manifest {path} is not valid JSON: {exc}") from None
    return parse_manifest(data)


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False, allow_nan=False)


# ---------------------------------------------------------------------------
# sections


def section_resonances(mf: Manifest):
    res = enumerate_resonances(mf.lam)
    return {
        "provenance": EXACT,
        "relations": res.to_json(),
        "labels": [r.label() for r in res],
        "degree_bounds": [list(b) for b in res.bounds],
    }


def section_lie(mf: Manifest):
    model = build_model(mf.lam)
    ok, witness = verify_jacobi(model)
    out = model.to_json()
    out["jacobi"] = ok if ok else [w.label() for w in witness]
    out["provenance"] = EXACT
    return out


def section_cohomology(mf: Manifest, oracle: bool = False, degree: int = 12):
    n = mf.n
    tc = tangent_cohomology(mf.gamma)
    out = {
        "tangent": dict(tc.to_json(), provenance=EXACT + ", dim ker(Id - gamma_*) on g_lambda"),
        "pushforward": dict(pushforward(mf.gamma).to_json(), provenance=EXACT),
        "hodge": dict(hodge_numbers(n).to_json(), provenance=CLOSED),
        "bott_chern": dict(bott_chern_numbers(n).to_json(), provenance=CLOSED),
        "betti": {"numbers": betti_numbers(n), "provenance": CLOSED},
    }
    if oracle:
        table = oracle_hodge_table(mf.lam, degree)
        out["hodge_oracle"] = {
            "matrix": table.matrix(),
            "degree_cap": degree,
            "agrees_with_closed_form": table.matrix() == hodge_numbers(n).matrix(),
            "provenance": f"{ORACLE}, truncated monomial scan of d_lambda weights",
        }
    return out


def section_algdim(mf: Manifest):
    if not mf.gamma.is_diagonal:
        return {"rank": None, "footnote": ALGDIM_FOOTNOTE, "provenance": "omitted"}
    res = algebraic_dimension(mf.lam)
    return dict(res.to_json(), provenance=EXACT + ", rank of ker(m -> lambda^m)")


def section_deform(mf: Manifest, t: str):
    fam = deformation_family(mf.gamma)
    try:
        tv = GaussianRational.coerce(t if isinstance(t, GaussianRational) else parse_rational(t))
    except (ValueError, TypeError) as exc:
        raise ValidationError(f"option --t: {exc}") from None
    g_t = fam.evaluate_at(tv)
    return {
        "t": str(tv),
        "exponents": fam.to_json(),
        "gamma_t": g_t.to_json(),
        "is_d_lambda": g_t.is_diagonal,
        "provenance": EXACT,
    }


def section_vaisman(mf: Manifest, tol: float, seed: int):
    from .metrics import vaisman_homogeneous_check

    if mf.matrix is not None:
        st = vaisman_status_linear(as_matrix(mf.matrix))
    else:
        st = vaisman_status(mf.gamma)
    out = dict(st.to_json(), provenance=EXACT + " verdict; Lee coefficients in floating point")
    if mf.gamma.is_diagonal and mf.matrix is None and len({x.abs2() for x in mf.lam}) == 1:
        chk = vaisman_homogeneous_check(mf.lam, tol=tol, seed=seed)
        out["homogeneous_metric"] = dict(chk.to_json(), provenance=f"numeric, tol={tol:g}")
    return out


def section_metric(mf: Manifest, grid: int, step: float, tol: float, seed: int, csv_path: str | None = None):
    from .metrics import build_potential, precondition_domain, verify_homothety, verify_positivity

    gp, mu = precondition_domain(mf.gamma, seed=seed)
    pot = build_potential(gp, seed=seed, dilation=mu)
    samples = pot.annulus_samples(grid, seed=seed)
    pos = verify_positivity(pot.psi, samples, h=step, positivity_tol=tol)
    hom = verify_homothety(pot, h=step)
    hom_tol = 1e-3
    out = {
        "preconditioned": gp.to_json(),
        "potential": pot.spec.to_json(),
        "positivity": pos.to_json(),
        "homothety": dict(hom.to_json(), tol=hom_tol, passed=hom.max_relative_error < hom_tol),
        "provenance": f"numeric, tol={tol:g}, step={step:g}, seed={seed}",
    }
    out["passed"] = pos.passed and out["homothety"]["passed"]
    if csv_path:
        with open(csv_path, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh)
            w.writerow([f"re_z{j + 1}" for j in range(mf.n)] + [f"im_z{j + 1}" for j in range(mf.n)] + ["min_eig"])
            for z, e in zip(samples, pos.eigenvalues):
                w.writerow(list(z.real) + list(z.imag) + [e])
    return out


def section_report(mf: Manifest, args):
    out = {
        "resonances": section_resonances(mf),
        "lie": section_lie(mf),
        "cohomology": section_cohomology(mf, args.oracle, args.degree),
        "algebraic_dimension": section_algdim(mf),
        "kodaira": dict(kodaira_report(mf.gamma).to_json(), provenance=CLOSED),
        "vaisman": section_vaisman(mf, args.tol, args.seed),
        "metric_flags": dict(metric_flags(mf.n), provenance=CLOSED),
        "footnotes": [hodge_numbers(mf.n).footnote],
    }
    if not mf.gamma.is_diagonal:
        out["footnotes"].append(ALGDIM_FOOTNOTE)
    if args.metric:
        out["metric"] = section_metric(mf, args.grid, args.step, args.tol, args.seed, args.csv)
    return out


# ---------------------------------------------------------------------------
# text rendering


def _fmt(v):
    if isinstance(v, dict) and set(v) == {"re", "im"}:
        return str(GaussianRational.from_json(v))
    if isinstance(v, float):
        return f"{v:.6g}"
    if isinstance(v, list) and v and all(isinstance(x, dict) and set(x) == {"re", "im"} for x in v):
        return "(" + ", ".join(_fmt(x) for x in v) + ")"
    if isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v):
        return "[" + ", ".join(_fmt(x) for x in v) + "]"
    return str(v)


def _is_matrix(v):
    return isinstance(v, list) and v and all(isinstance(r, list) and r and not any(isinstance(x, (dict, list)) for x in r) for r in v)


def render_text(obj, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    if not isinstance(obj, dict):
        return pad + _fmt(obj)
    width = max((len(k) for k in obj), default=0)
    for key in sorted(obj):
        v = obj[key]
        if isinstance(v, dict) and not set(v) == {"re", "im"}:
            lines.append(f"{pad}{key}:")
            lines.append(render_text(v, indent + 1))
        elif _is_matrix(v) or (isinstance(v, list) and v and isinstance(v[0], list)):
            lines.append(f"{pad}{key}:")
            rows = [[_fmt(x) for x in r] for r in v]
            w = max(len(x) for r in rows for x in r) if rows and rows[0] else 1
            lines.extend(pad + "  " + " ".join(x.rjust(w) for x in r) for r in rows)
        elif isinstance(v, list) and v and isinstance(v[0], dict) and not set(v[0]) == {"re", "im"}:
            lines.append(f"{pad}{key}:")
            for item in v:
                lines.append(pad + "  - " + ", ".join(f"{k}={_fmt(item[k])}" for k in sorted(item)))
        else:
            lines.append(f"{pad}{key.ljust(width)} : {_fmt(v)}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# entry point


def _default_tol() -> float:
    env = os.environ.get(TOL_ENV)
    if env:
        try:
            return float(env)
        except ValueError:
            raise ValidationError(f"environment variable {TOL_ENV}={env!r} is not a number") from None
    return DEFAULT_TOL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("manifest", help="JSON manifest with n, lambda, terms, options")
    common.add_argument("--json", action="store_true", help="emit canonical JSON")
    common.add_argument("--tol", type=float, default=None, help=f"positivity tolerance (env {TOL_ENV})")
    common.add_argument("--seed", type=int, default=None, help="sampling seed")

    p = argparse.ArgumentParser(prog="hopfkit", description="Primary Hopf manifold toolkit")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("resonances", parents=[common], help="resonance relations")
    sub.add_parser("lie", parents=[common], help="resonant Lie algebra")
    c = sub.add_parser("cohomology", parents=[common], help="tangent cohomology and Hodge tables")
    c.add_argument("--oracle", action="store_true")
    c.add_argument("--degree", type=int, default=None)
    sub.add_parser("algdim", parents=[common], help="algebraic dimension")
    d = sub.add_parser("deform", parents=[common], help="evaluate the degeneration family at t")
    d.add_argument("--t", required=True)
    sub.add_parser("vaisman", parents=[common], help="Vaisman status")
    for name in ("metric", "report"):
        q = sub.add_parser(name, parents=[common], help="Brunella potential check" if name == "metric" else "everything")
        q.add_argument("--grid", type=int, default=None, help="number of annulus samples")
        q.add_argument("--step", type=float, default=None, help="finite-difference step")
        q.add_argument("--csv", default=None, help="write per-point data here")
        if name == "report":
            q.add_argument("--metric", action="store_true", help="include the metric lab")
            q.add_argument("--oracle", action="store_true")
            q.add_argument("--degree", type=int, default=None)
    return p


def _resolve(args, mf: Manifest):
    opts = mf.options
    if args.tol is None:
        args.tol = float(opts.get("tol", _default_tol()))
    if args.seed is None:
        args.seed = int(opts.get("seed", 0))
    for name, default in (("degree", 12), ("grid", 1000), ("step", 1e-4)):
        if getattr(args, name, "absent") is None:
            setattr(args, name, type(default)(opts.get(name, default)))
    if args.tol <= 0:
        raise ValidationError(f"tolerance must be positive, got {args.tol}")


def run(argv=None, out=sys.stdout, err=sys.stderr) -> int:
    args = build_parser().parse_args(argv)
    try:
        mf = load_manifest(args.manifest)
        _resolve(args, mf)
        cmd = args.command
        if cmd == "resonances":
            body = section_resonances(mf)
        elif cmd == "lie":
            body = section_lie(mf)
        elif cmd == "cohomology":
            body = section_cohomology(mf, args.oracle, args.degree)
        elif cmd == "algdim":
            body = section_algdim(mf)
        elif cmd == "deform":
            body = section_deform(mf, args.t)
        elif cmd == "vaisman":
            body = section_vaisman(mf, args.tol, args.seed)
        elif cmd == "metric":
            body = section_metric(mf, args.grid, args.step, args.tol, args.seed, args.csv)
        else:
            body = section_report(mf, args)
        report = {"command": cmd, "input": mf.echo(), "result": body}
        failed = (cmd == "metric" and not body["passed"]) or (cmd == "report" and "metric" in body and not body["metric"]["passed"])
        if cmd == "vaisman" and "homogeneous_metric" in body and not body["homogeneous_metric"]["passed"]:
            failed = True
    except ValidationError as exc:
        print(f"error: {exc}", file=err)
        return 2
    except ParameterError as exc:
        print(f"metric construction failed: {exc}", file=err)
        return 3
    except HopfError as exc:
        print(f"error: {exc}", file=err)
        return 1
    print(canonical_json(report) if args.json else render_text(report), file=out)
    return 3 if failed else 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
