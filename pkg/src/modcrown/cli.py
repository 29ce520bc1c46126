"""Command-line front end: reproducible verification tables.

Every subcommand writes a CSV table (``--out``, default stdout) whose header
comment lines echo the tolerances, and prints a JSON verdict summary.  Exit
codes: 0 all rows pass, 1 some row misses its tolerance, 2 bad parameters.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from importlib import resources
from pathlib import Path
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence

import numpy as np

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from . import desitter, laplace, modular, sl2, spherical
from .errors import ModcrownError, OffShell

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class ReportRow:
    test_id: str
    inputs: Dict[str, Any]
    expected: Any
    observed: float
    abs_err: float
    pass_: bool
    tol: float

    @classmethod
    def compare(cls, test_id: str, inputs: Dict[str, Any], expected: float, observed: float, tol: float,
                relative: bool = False) -> "ReportRow":
        err = abs(observed - expected)
        bound = tol * max(1.0, abs(expected)) if relative else tol
        return cls(test_id, inputs, expected, observed, err, bool(err <= bound), tol)

    @classmethod
    def verdict(cls, test_id: str, inputs: Dict[str, Any], expected: bool, observed: bool) -> "ReportRow":
        ok = bool(expected) == bool(observed)
        return cls(test_id, inputs, bool(expected), float(bool(observed)), 0.0 if ok else 1.0, ok, 0.0)

    def to_json(self) -> dict:
        d = asdict(self)
        d["pass"] = d.pop("pass_")
        return d


def _threads() -> int:
    raw = os.environ.get("MODCROWN_THREADS", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def parallel_map(fn: Callable, items: Sequence) -> List:
    """Ordered map over at most MODCROWN_THREADS workers."""
    workers = _threads()
    if workers == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _fmt(v: Any) -> str:
    if isinstance(v, bool):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    if isinstance(v, (complex, np.complexfloating)):
        return repr(complex(v))
    return str(v)


def _write_table(out: Optional[str], header: Sequence[str], rows: Iterable[Sequence[Any]],
                 notes: Dict[str, Any]) -> None:
    buf = io.StringIO()
    for key in sorted(notes):
        buf.write(f"# {key}={_fmt(notes[key])}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(v) for v in row])
    text = buf.getvalue()
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _summary(command: str, rows: List[ReportRow], notes: Dict[str, Any], path: Optional[str]) -> int:
    ok = all(r.pass_ for r in rows)
    doc = {
        "command": command,
        "tolerances": notes,
        "passed": ok,
        "rows": [r.to_json() for r in rows],
    }
    text = json.dumps(doc, indent=2, sort_keys=True, default=_json_default) + "\n"
    if path:
        Path(path).write_text(text)
    else:
        sys.stderr.write(text)
    return EXIT_OK if ok else EXIT_FAIL


def _json_default(v):
    if isinstance(v, complex):
        return {"re": v.real, "im": v.imag}
    if isinstance(v, (np.floating, np.integer, np.bool_)):
        return v.item()
    raise TypeError(f"cannot serialise {type(v).__name__}")


def _parse_complex_list(text: str) -> List[complex]:
    out = []
    for item in str(text).split(","):
        item = item.strip().replace("i", "j")
        if not item:
            continue
        try:
            out.append(complex(item))
        except ValueError as exc:
            raise UsageError(f"cannot parse {item!r} as a number") from exc
    if not out:
        raise UsageError("empty parameter list")
    return out


def _parse_float_list(text: str) -> List[float]:
    vals = _parse_complex_list(text)
    if any(v.imag for v in vals):
        raise UsageError("expected real numbers")
    return [v.real for v in vals]


# spherical-asymptotics ------------------------------------------------------

def cmd_spherical_asymptotics(args) -> int:
    try:
        alg = spherical.parse_algebra(args.algebra)
    except (ValueError, TypeError) as exc:
        raise UsageError(str(exc)) from exc
    data = spherical.root_data(alg)
    lams = _parse_complex_list(args.lam)
    ks = list(range(1, args.kmax + 1))
    notes = {"tol": args.tol, "algebra": args.algebra, "grid": f"t=pi-10^-k,k=1..{args.kmax}"}

    def one(lam):
        p = spherical.SphericalParam(lam, data)
        form = spherical.boundary_asymptotics(p)
        lines = []
        for k in ks:
            t = math.pi - 10.0**-k
            phi = spherical.spherical_imaginary_time(p, t)
            if isinstance(form, spherical.PowerPrefactor):
                pre, limit = math.cos(t / 2) ** form.power * phi, form.limit_value
            elif isinstance(form, spherical.LogRate):
                pre, limit = phi / -math.log(math.pi - t), form.coefficient
            else:
                pre, limit = phi, 1.0 + 0j
            lines.append((lam, t, phi, pre, complex(limit), pre / limit))
        return lines

    tables = parallel_map(one, lams)
    grid, report = [], []
    for lam, lines in zip(lams, tables):
        for lam_, t, phi, pre, limit, ratio in lines:
            grid.append([lam_.real, lam_.imag, t, phi.real, phi.imag, pre.real, pre.imag,
                         limit.real, limit.imag, ratio.real, ratio.imag])
        ratio = lines[-1][-1]
        report.append(ReportRow("spherical_limit", {"algebra": args.algebra, "lambda": lam, "t": lines[-1][1]},
                                1.0, abs(ratio), abs(ratio - 1), abs(ratio - 1) <= args.tol, args.tol))
    _write_table(args.out, ["lam_re", "lam_im", "t", "phi_re", "phi_im", "pref_re", "pref_im",
                            "limit_re", "limit_im", "ratio_re", "ratio_im"], grid, notes)
    return _summary("spherical-asymptotics", report, notes, args.summary)


# laplace ------------------------------------------------------------------

def parse_measure(text: str) -> laplace.TailMeasure:
    kind, _, arg = text.partition(":")
    kind = kind.strip().lower()
    try:
        if kind in ("power", "powertail"):
            return laplace.PowerTail(float(arg))
        if kind in ("stretched", "stretchedexp"):
            return laplace.StretchedExp(float(arg))
        if kind == "grid":
            raw = json.loads(Path(arg).read_text())
            return laplace.GridDensity(tuple(raw["grid"]), tuple(raw["values"]))
    except (ValueError, OSError, KeyError) as exc:
        raise UsageError(f"bad measure {text!r}: {exc}") from exc
    raise UsageError(f"unknown measure {text!r}")


def _expected_constant(mu) -> Optional[float]:
    if isinstance(mu, laplace.PowerTail):
        if mu.s < 1:
            return math.gamma(1 - mu.s)
        if mu.s == 1:
            return 1.0
        return 1.0 / (mu.s - 1)
    return None


def cmd_laplace(args) -> int:
    measures = [parse_measure(m) for m in args.measure]
    notes = {"tol": args.tol, "grid": "t=2^-k,k=4..24"}

    def one(mu):
        try:
            rep = laplace.laplace_asymptotics(mu)
        except ModcrownError as exc:
            rep = exc
        return rep, laplace.temperedness_test(mu)

    results = parallel_map(one, measures)
    grid, report = [], []
    for text, mu, (rep, temp) in zip(args.measure, measures, results):
        if isinstance(rep, laplace.AsymptoticReport):
            regime = type(rep.regime).__name__
            exponent = getattr(rep.regime, "exponent", "")
            grid.append([text, regime, exponent, rep.fitted_constant, rep.residual,
                         temp.moment_verdict, temp.growth_verdict, temp.n_star, temp.N_star])
            want = _expected_constant(mu)
            if want is not None:
                report.append(ReportRow.compare("laplace_constant", {"measure": text}, want,
                                                rep.fitted_constant, args.tol, relative=True))
        else:
            grid.append([text, "none", "", "", "", temp.moment_verdict, temp.growth_verdict,
                         temp.n_star, temp.N_star])
        report.append(ReportRow.verdict("tempered_equivalence", {"measure": text},
                                        temp.moment_verdict, temp.growth_verdict))
    _write_table(args.out, ["measure", "regime", "exponent", "constant", "residual",
                            "tempered_moment", "tempered_growth", "n_star", "N_star"], grid, notes)
    return _summary("laplace", report, notes, args.summary)


# kms-lab -------------------------------------------------------------------

def _load_model_doc(path: Optional[str]) -> dict:
    try:
        if path is None:
            text = resources.files("modcrown").joinpath("data/two_point.json").read_text()
        else:
            text = Path(path).read_text()
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read model: {exc}") from exc


def cmd_kms_lab(args) -> int:
    doc = _load_model_doc(args.model)
    try:
        model = modular.DiscreteSpectralModel.from_json(doc)
        eta = modular.vector_from_json(doc["eta"]) if "eta" in doc else None
        if eta is not None:
            eta = modular._vec(model, eta)
    except (ValueError, KeyError, ModcrownError) as exc:
        raise UsageError(f"bad model: {exc}") from exc
    tol = args.tol
    notes = {"tol": tol, "samples": args.samples, "seed": args.seed}
    report: List[ReportRow] = []
    grid = []
    if eta is not None:
        kms = modular.kms_check(model, eta, tol)
        report.append(ReportRow.verdict("kms_vector", {"model": args.model or "two_point"}, True, kms))
        if kms:
            v = modular.kms_midpoint(model, eta, tol)
            err = float(np.max(np.abs(modular.conj_J(model, v) - v)))
            report.append(ReportRow.compare("midpoint_J_fixed", {}, 0.0, err, tol))
            back = modular.flow(model, v, -0.5j * math.pi)
            report.append(ReportRow.compare("midpoint_recovers_eta", {}, 0.0,
                                            float(np.max(np.abs(back - eta))), tol))
        report.append(ReportRow.verdict("collapse", {}, True, modular.double_kms_collapse(model, eta, tol)))
        for lam, val in zip(model.points, eta):
            grid.append(["eta", lam, val.real, val.imag])

    rng = np.random.default_rng(args.seed)
    mismatches = collapse_fail = 0
    for i in range(args.samples):
        f = modular.random_kms_vector(model, rng) if i % 2 == 0 else modular.random_vector(model, rng)
        if modular.kms_check(model, f, tol) != modular.standard_subspace_test(model, f, tol):
            mismatches += 1
        if not modular.double_kms_collapse(model, f, tol):
            collapse_fail += 1
    report.append(ReportRow.compare("kms_vs_standard_subspace", {"samples": args.samples}, 0.0, float(mismatches), 0.0))
    report.append(ReportRow.compare("collapse_counterexamples", {"samples": args.samples}, 0.0, float(collapse_fail), 0.0))
    _write_table(args.out, ["vector", "lambda", "re", "im"], grid, notes)
    return _summary("kms-lab", report, notes, args.summary)


# sl2 -------------------------------------------------------------------------

def cmd_sl2(args) -> int:
    try:
        s = int(args.s)
        if s != args.s or s <= 0 or s % 2:
            raise ValueError
    except (ValueError, TypeError):
        raise UsageError(f"weight s must be an even positive integer, got {args.s!r}")
    xs = _parse_float_list(args.x)
    ws = _parse_complex_list(args.w)
    notes = {"tol": args.tol, "s": s, "flip_sign": bool(args.flip_sign)}
    report: List[ReportRow] = []
    grid = []
    for x in xs:
        for w in ws:
            try:
                cont, closed = sl2.continue_boost_pairing(x, s, w, flip_sign=args.flip_sign)
            except ValueError as exc:
                raise UsageError(str(exc)) from exc
            report.append(ReportRow.compare("modular_relation", {"s": s, "x": x, "w": w},
                                            0.0, abs(cont - closed) / max(1.0, abs(closed)), args.tol))
    probe = sl2.KernelVector.single(2j, s)
    for t in np.linspace(0.0, -math.pi / 2, 9):
        v = sl2.boost_continuation(float(t), s)
        val = sl2.inner_kv(probe, v)
        coeff, point = v.terms[0]
        grid.append([float(t), coeff.real, coeff.imag, point.real, point.imag, val.real, val.imag])
    _write_table(args.out, ["t", "coeff_re", "coeff_im", "point_re", "point_im",
                            "pair_Q2i_re", "pair_Q2i_im"], grid, notes)
    return _summary("sl2", report, notes, args.summary)


# desitter ------------------------------------------------------------------

def cmd_desitter(args) -> int:
    if args.n < 2:
        raise UsageError("n must be at least 2")
    notes = {"tol": args.tol, "n": args.n, "samples": args.samples, "seed": args.seed}
    report: List[ReportRow] = []
    grid = []
    if args.point:
        x = np.array(_parse_float_list(args.point))
        try:
            flag = desitter.wedge_positivity_region(x)
        except OffShell as exc:
            raise UsageError(str(exc)) from exc
        report.append(ReportRow.verdict("wedge_point", {"x": x.tolist()}, desitter.wedge_predicate(x), flag))
    for s in _parse_float_list(args.s):
        rep = desitter.boundary_slope_check(desitter.crown_base_point(args.n, s))
        grid.append(["slope", s, rep.lam, rep.fitted_slope, rep.pointwise_error])
        report.append(ReportRow.compare("boundary_slope", {"s": s}, math.cos(s), rep.fitted_slope, args.slope_tol))
    rng = np.random.default_rng(args.seed)
    worst = 0.0
    for z in desitter.sample_crown(args.n, rng, args.samples):
        a, b = desitter.delta_routes(z)
        worst = max(worst, abs(a - b))
    report.append(ReportRow.compare("delta_coherence", {"samples": args.samples}, 0.0, worst, args.tol))
    pts = desitter.sample_on_shell(args.n, rng, args.samples)
    mism = sum(desitter.wedge_positivity_region(x) != desitter.wedge_predicate(x) for x in pts)
    report.append(ReportRow.compare("wedge_equivalence", {"samples": args.samples}, 0.0, float(mism), 0.0))
    _write_table(args.out, ["kind", "s", "lambda", "slope", "pointwise_error"], grid, notes)
    return _summary("desitter", report, notes, args.summary)


# plumbing ------------------------------------------------------------------

def _load_config(path: str) -> dict:
    p = Path(path)
    try:
        raw = p.read_bytes()
        if p.suffix.lower() == ".toml":
            cfg = tomllib.loads(raw.decode())
        else:
            cfg = json.loads(raw)
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    # flags are spelled with dashes on the command line
    renames = {"lambda": "lam"}
    out = {}
    for k, v in cfg.items():
        key = str(k).replace("-", "_")
        out[renames.get(key, key)] = v
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="modcrown", description=__doc__.splitlines()[0])
    parser.add_argument("--config", help="TOML or JSON file supplying flag defaults")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, tol):
        p.add_argument("--tol", type=float, default=tol)
        p.add_argument("--out", default=None, help="CSV table path (default stdout)")
        p.add_argument("--summary", default=None, help="JSON summary path (default stderr)")
        p.add_argument("--seed", type=int, default=42)
        p.add_argument("--config", default=argparse.SUPPRESS, help=argparse.SUPPRESS)

    p = sub.add_parser("spherical-asymptotics", help="boundary limits of imaginary-time spherical functions")
    common(p, 1e-3)
    p.add_argument("--algebra", default="so:3")
    p.add_argument("--lambda", dest="lam", default="1j,2j,0.5")
    p.add_argument("--kmax", type=int, default=6)
    p.set_defaults(func=cmd_spherical_asymptotics)

    p = sub.add_parser("laplace", help="Laplace asymptotics and temperedness")
    common(p, 1e-6)
    p.add_argument("--measure", action="append", default=None,
                   help="power:S, stretched:C or grid:FILE.json (repeatable)")
    p.set_defaults(func=cmd_laplace)

    p = sub.add_parser("kms-lab", help="KMS / standard subspace suite on a finite model")
    common(p, 1e-9)
    p.add_argument("--model", default=None, help="model JSON (default: bundled two-point model)")
    p.add_argument("--samples", type=int, default=1000)
    p.set_defaults(func=cmd_kms_lab)

    p = sub.add_parser("sl2", help="modular relation on boundary kernel vectors")
    common(p, 1e-9)
    p.add_argument("--s", type=float, default=2)
    p.add_argument("--x", default="0.5,1,2")
    p.add_argument("--w", default="3j,2+2j,-1+0.5j")
    p.add_argument("--flip-sign", action="store_true")
    p.set_defaults(func=cmd_sl2)

    p = sub.add_parser("desitter", help="crown, wedge and boundary-slope checks")
    common(p, 1e-9)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--s", default="0.1,0.5,1.0")
    p.add_argument("--slope-tol", type=float, default=1e-4)
    p.add_argument("--point", default=None, help="on-shell point x0,x1,... for the wedge test")
    p.set_defaults(func=cmd_desitter)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        pre, _ = parser.parse_known_args(argv)
        config = _load_config(pre.config) if getattr(pre, "config", None) else {}
        if config:
            for action in parser._subparsers._group_actions:
                for sp in action.choices.values():
                    known = {a.dest for a in sp._actions}
                    sp.set_defaults(**{k: v for k, v in config.items() if k in known})
        args = parser.parse_args(argv)
        if args.command == "laplace" and not args.measure:
            args.measure = ["power:1", "power:0.5"]
        if isinstance(getattr(args, "measure", None), str):
            args.measure = [args.measure]
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"modcrown: {exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
