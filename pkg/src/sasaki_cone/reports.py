"""Scenario files, task execution and the JSON / CSV / SVG report writers."""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any, Mapping

import numpy as np

from .admissible import AdmissibleSetup, SetupError, make_setup, setup_from_json, theorem_hypotheses
from .cone import classify_cone, ehf, find_csc_rays, discriminant_scan, is_extremal
from .exact_algebra import DEFAULT_REFINE_WIDTH, Interval, Poly, as_rat
from .extremal import CSC, KINDS, build_extremal_poly, futaki_obstruction, solve_affine, verify_ode
from .integrals import alpha, alpha_beta_numeric, beta

TASKS = (
    "validate",
    "integrals",
    "affine",
    "futaki",
    "extremal-poly",
    "cone",
    "ehf",
    "csc-find",
    "discriminant-scan",
)
_SCENARIO_KEYS = {"name", "description", "setup", "p", "tasks", "options"}
_OPTION_KEYS = {"c_values", "obstruction_kind", "family", "csv", "svg", "grid", "integrals"}


class ScenarioError(SetupError):
    pass


def exact(v: Fraction) -> dict:
    v = Fraction(v)
    return {"exact": f"{v.numerator}/{v.denominator}", "float": float(v)}


def poly_json(p: Poly) -> list[str]:
    return [f"{c.numerator}/{c.denominator}" for c in p.coeffs]


# ---------------------------------------------------------------------------
# scenarios


@dataclass
class Scenario:
    name: str
    setup: AdmissibleSetup
    p: int
    tasks: list[str]
    options: dict = field(default_factory=dict)
    description: str = ""
    cache: dict = field(default_factory=dict, repr=False)

    @property
    def c_values(self) -> list[Fraction]:
        return [as_rat(c) for c in self.options.get("c_values", ["0"])]

    @property
    def kind(self) -> str:
        return self.options.get("obstruction_kind", CSC)


def _parse_p(value: Any, setup: AdmissibleSetup) -> int:
    if value is None or value == "m+2":
        return setup.m + 2
    if isinstance(value, bool) or isinstance(value, float):
        raise ScenarioError("expected an integer, 'm+2' or a 'p/q' string", "p")
    try:
        p = as_rat(value)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise ScenarioError(f"malformed weight {value!r} ({exc})", "p") from None
    if p.denominator != 1 or p < 2:
        raise ScenarioError("weight must be an integer >= 2 for the exact path", "p")
    return int(p)


def scenario_from_json(data: Mapping[str, Any]) -> Scenario:
    if not isinstance(data, Mapping):
        raise ScenarioError("scenario must be a JSON object", "")
    unknown = set(data) - _SCENARIO_KEYS
    if unknown:
        raise ScenarioError(f"unknown fields {sorted(unknown)}", "")
    if "setup" not in data:
        raise ScenarioError("missing", "setup")
    setup = setup_from_json(data["setup"], "setup")
    p = _parse_p(data.get("p"), setup)
    tasks = data.get("tasks", ["validate"])
    if not isinstance(tasks, list):
        raise ScenarioError("expected a list", "tasks")
    for i, t in enumerate(tasks):
        if t not in TASKS:
            raise ScenarioError(f"unknown task {t!r}", f"tasks[{i}]")
    options = data.get("options", {})
    if not isinstance(options, Mapping):
        raise ScenarioError("expected an object", "options")
    extra = set(options) - _OPTION_KEYS
    if extra:
        raise ScenarioError(f"unknown fields {sorted(extra)}", "options")
    for i, c in enumerate(options.get("c_values", [])):
        if isinstance(c, (float, bool)):
            raise ScenarioError("expected an exact rational", f"options.c_values[{i}]")
        try:
            cv = as_rat(c)
        except (ValueError, ZeroDivisionError, TypeError) as exc:
            raise ScenarioError(f"malformed rational {c!r} ({exc})", f"options.c_values[{i}]") from None
        if not -1 < cv < 1:
            raise ScenarioError("c must lie in (-1, 1)", f"options.c_values[{i}]")
    if options.get("obstruction_kind", CSC) not in KINDS:
        raise ScenarioError(f"must be one of {list(KINDS)}", "options.obstruction_kind")
    return Scenario(str(data.get("name", "scenario")), setup, p, list(tasks), dict(options), str(data.get("description", "")))


def bundled_scenarios() -> list[str]:
    root = resources.files("sasaki_cone") / "scenarios"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def load_scenario(ref: str) -> Scenario:
    """Load from a path, or by name from the bundled corpus."""
    path = Path(ref)
    if path.exists():
        text = path.read_text()
    else:
        res = resources.files("sasaki_cone") / "scenarios" / f"{ref}.json"
        if not res.is_file():
            raise FileNotFoundError(ref)
        text = res.read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"invalid JSON ({exc.msg} at line {exc.lineno})", "") from None
    return scenario_from_json(data)


# ---------------------------------------------------------------------------
# task runners


@dataclass
class RunOptions:
    precision: int = 256
    refine_width: Fraction = DEFAULT_REFINE_WIDTH
    degree_ceiling: int = 512
    threads: int = 1
    grid: int = 400


def _task_validate(sc: Scenario, opts: RunOptions) -> dict:
    s = sc.setup
    return {
        "m": s.m,
        "p": sc.p,
        "hat_factors": [{"d": f.d, "s": exact(f.s), "x": exact(f.x)} for f in s.hat],
        "hypotheses": theorem_hypotheses(s, sc.p).to_json(),
    }


def _task_integrals(sc: Scenario, opts: RunOptions) -> list:
    s, m = sc.setup, sc.setup.m
    specs = sc.options.get("integrals") or [[r, k] for r in (0, 1) for k in (-m, -(m + 1))]
    out = []
    for c in sc.c_values:
        for r, k in specs:
            for name, fn in (("alpha", alpha), ("beta", beta)):
                v = fn(s, c, r, k)
                num = alpha_beta_numeric(s, c, r, k, which=name, prec=opts.precision)
                out.append(
                    {
                        "c": exact(c),
                        "name": name,
                        "r": r,
                        "k": k,
                        "rational_part": exact(v.rat_part),
                        "log_coeff": exact(v.log_coeff),
                        "numeric": float(num.value),
                        "numeric_agrees": bool(abs(num.value - v.to_mpf(opts.precision)) <= abs(num.value) * 1e-30 + 1e-60),
                    }
                )
    return out


def _task_affine(sc: Scenario, opts: RunOptions) -> list:
    out = []
    for c in sc.c_values:
        A = solve_affine(sc.setup, c, sc.p)
        out.append({"c": exact(c), "A1": exact(A.A1), "A2": exact(A.A2)})
    return out


def _task_futaki(sc: Scenario, opts: RunOptions) -> list:
    out = []
    for c in sc.c_values:
        ob = futaki_obstruction(sc.setup, c, sc.p, sc.kind)
        row = {"c": exact(c), "kind": sc.kind, "value": exact(ob.rational)}
        if ob.futaki is not None:
            row["normalized_futaki"] = exact(ob.futaki)
        out.append(row)
    return out


def _task_extremal_poly(sc: Scenario, opts: RunOptions) -> list:
    out = []
    for c in sc.c_values:
        ep = build_extremal_poly(sc.setup, c, sc.p)
        verify_ode(ep)
        out.append(
            {
                "c": exact(c),
                "F": poly_json(ep.F),
                "A1": exact(ep.affine.A1),
                "A2": exact(ep.affine.A2),
                "extremal": is_extremal(sc.setup, c, sc.p),
            }
        )
    return out


def _csc_json(rep) -> dict:
    return {
        "identically_zero": rep.identically_zero,
        "kind": rep.obstruction.kind,
        "numerator": poly_json(rep.obstruction.numerator),
        "exponents": list(rep.obstruction.exponents),
        "roots": [r.to_json() for r in rep.roots],
    }


def _task_cone(sc: Scenario, opts: RunOptions) -> dict:
    rep = classify_cone(sc.setup, sc.p, opts.refine_width, opts.degree_ceiling, threads=opts.threads)
    sc.cache["cone"] = rep  # reused by the SVG writer
    return {
        "extremal_set": [e.to_json() for e in rep.extremal_set],
        "boundary_candidates": [b.to_json() for b in rep.boundary_candidates],
        "csc": _csc_json(rep.csc),
        "bivariate_numerator": [poly_json(q) for q in rep.bivariate.coeffs],
        "gap_witnesses": [{"c": exact(c), "extremal": v} for c, v in rep.gap_verdicts],
        "ehf_samples": [{"c": exact(c), "HS": exact(h)} for c, h in rep.ehf_samples],
        "hypotheses": rep.hypotheses.to_json(),
    }


def _task_ehf(sc: Scenario, opts: RunOptions) -> list:
    out = []
    for c in sc.c_values:
        out.append(
            {
                "c": exact(c),
                "HS": exact(ehf(sc.setup, c, "HS")),
                "HK": exact(ehf(sc.setup, c, "HK", sc.p)),
            }
        )
    return out


def _task_csc_find(sc: Scenario, opts: RunOptions) -> dict:
    rep = find_csc_rays(sc.setup, sc.p, sc.kind, opts.refine_width, opts.degree_ceiling)
    return _csc_json(rep)


def _task_discriminant_scan(sc: Scenario, opts: RunOptions) -> dict:
    fam = sc.options.get("family")
    if not fam:
        raise ScenarioError("discriminant-scan needs options.family", "options.family")
    idx = int(fam.get("factor", 0))
    lo, hi = (as_rat(v) for v in fam.get("range", ["0", "1"]))
    base = sc.setup

    def family(x):
        triples = [(f.d, f.s, f.x) for f in base.factors]
        d, s_, _ = triples[idx]
        triples[idx] = (d, s_, x)
        return make_setup(triples, base.d0, base.dinf, base.m0, base.minf)

    ds = discriminant_scan(family, sc.p, (lo, hi), int(fam.get("samples", 20)), sc.kind, degree_ceiling=opts.degree_ceiling)
    return {
        "numerator_c_coefficients": [poly_json(q) for q in ds.numerator],
        "discriminant": poly_json(ds.discriminant),
        "cubic_or_lower": ds.is_cubic_or_lower,
        "sign_changes": [iv.to_json() for iv in ds.sign_changes],
        "rows": [
            {"x": exact(r.param), "discriminant_sign": r.discriminant_sign, "roots_in_unit_interval": r.root_count}
            for r in ds.rows
        ],
    }


RUNNERS = {
    "validate": _task_validate,
    "integrals": _task_integrals,
    "affine": _task_affine,
    "futaki": _task_futaki,
    "extremal-poly": _task_extremal_poly,
    "cone": _task_cone,
    "ehf": _task_ehf,
    "csc-find": _task_csc_find,
    "discriminant-scan": _task_discriminant_scan,
}


def run_scenario(sc: Scenario, opts: RunOptions | None = None) -> dict:
    opts = opts or RunOptions()
    report = {
        "scenario": sc.name,
        "setup": sc.setup.to_json(),
        "p": sc.p,
        "m": sc.setup.m,
        "results": {},
    }
    for t in sc.tasks:
        report["results"][t] = RUNNERS[t](sc, opts)
    return report


def dumps_report(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# CSV / SVG


def cone_csv(setup: AdmissibleSetup, p: int, kind: str = CSC, n: int = 49) -> str:
    """Rows on the grid c = k/(n//2 + 1): columns c, extremal,
    obstruction_value, HS."""
    half = n // 2
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["c", "extremal", "obstruction_value", "HS"])
    for k in range(-half, half + 1):
        c = Fraction(k, half + 1)
        ob = futaki_obstruction(setup, c, p, kind).rational
        w.writerow([repr(float(c)), int(is_extremal(setup, c, p)), repr(float(ob)), repr(float(ehf(setup, c)))])
    return buf.getvalue()


def cone_svg(bivariate_coeffs: list[Poly], grid: int = 400, boundaries: list[Interval] | None = None) -> str:
    """Sign heatmap of P(z, c) over (-1, 1)^2 (c horizontal, z vertical);
    illustrative only, evaluated in double precision."""
    cs = -1 + (np.arange(grid) + 0.5) * 2 / grid
    zs = cs.copy()
    vals = np.zeros((grid, grid))
    for i, q in enumerate(bivariate_coeffs):
        ci = np.polyval([float(v) for v in reversed(q.coeffs)] or [0.0], cs)
        vals += np.outer(zs**i, ci)
    px = 2
    size = grid * px
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size + 80}" height="{size + 60}" '
        f'viewBox="0 0 {size + 80} {size + 60}">',
        '<g transform="translate(50,10)">',
    ]
    for row in range(grid):
        y = (grid - 1 - row) * px  # z increases upwards
        signs = vals[row] > 0
        start = 0
        for j in range(1, grid + 1):
            if j == grid or signs[j] != signs[start]:
                color = "#3b7dd8" if signs[start] else "#e05a47"
                parts.append(f'<rect x="{start * px}" y="{y}" width="{(j - start) * px}" height="{px}" fill="{color}"/>')
                start = j
    for iv in boundaries or []:
        x = (float(iv.midpoint) + 1) / 2 * size
        parts.append(f'<line x1="{x:.2f}" y1="0" x2="{x:.2f}" y2="{size}" stroke="black" stroke-dasharray="4,3"/>')
    parts.append(f'<rect x="0" y="0" width="{size}" height="{size}" fill="none" stroke="black"/>')
    parts.append(f'<text x="{size / 2}" y="{size + 35}" text-anchor="middle" font-size="14">c</text>')
    parts.append(f'<text x="-30" y="{size / 2}" font-size="14">z</text>')
    for t in (-1, 0, 1):
        x = (t + 1) / 2 * size
        parts.append(f'<text x="{x}" y="{size + 18}" text-anchor="middle" font-size="11">{t}</text>')
    parts.append("</g></svg>")
    return "\n".join(parts) + "\n"


def write_artifacts(sc: Scenario, report: dict, out: Path, opts: RunOptions) -> list[Path]:
    out.mkdir(parents=True, exist_ok=True)
    written = [out / "report.json"]
    (out / "report.json").write_text(dumps_report(report))
    if "cone" in sc.tasks:
        rep = sc.cache.get("cone")
        if sc.options.get("csv", True):
            (out / "cone.csv").write_text(cone_csv(sc.setup, sc.p, sc.kind))
            written.append(out / "cone.csv")
        if sc.options.get("svg", True) and rep is not None:
            grid = int(sc.options.get("grid", opts.grid))
            bounds = [b.enclosure for b in rep.boundary_candidates]
            (out / "cone.svg").write_text(cone_svg(rep.bivariate.coeffs, grid, bounds))
            written.append(out / "cone.svg")
    return written


# ---------------------------------------------------------------------------
# regression comparison


def _is_rat_string(v: Any) -> bool:
    if not isinstance(v, str) or v.count("/") != 1:
        return False
    a, b = v.split("/")
    return a.lstrip("-").isdigit() and b.isdigit()


def compare_reports(report: Any, reference: Any, rel_tol: float = 1e-9, path: str = "") -> list[str]:
    """Field-wise diff: exact for rational strings, integers, booleans and
    text; relative tolerance for floats.  Returns one line per mismatch."""
    here = path or "<root>"
    if isinstance(reference, dict):
        if not isinstance(report, dict):
            return [f"{here}: expected an object"]
        diffs = []
        for k in sorted(set(reference) | set(report)):
            sub = f"{path}.{k}" if path else k
            if k not in report:
                diffs.append(f"{sub}: missing from report")
            elif k not in reference:
                diffs.append(f"{sub}: not in reference")
            else:
                diffs.extend(compare_reports(report[k], reference[k], rel_tol, sub))
        return diffs
    if isinstance(reference, list):
        if not isinstance(report, list):
            return [f"{here}: expected a list"]
        if len(report) != len(reference):
            return [f"{here}: length {len(report)} != {len(reference)}"]
        diffs = []
        for i, (a, b) in enumerate(zip(report, reference)):
            diffs.extend(compare_reports(a, b, rel_tol, f"{path}[{i}]"))
        return diffs
    if isinstance(reference, float) and isinstance(report, (int, float)) and not isinstance(report, bool):
        if math.isclose(report, reference, rel_tol=rel_tol, abs_tol=0.0) or report == reference:
            return []
        return [f"{here}: {report!r} != {reference!r} (rel tol {rel_tol})"]
    if _is_rat_string(reference) and _is_rat_string(report):
        if Fraction(report) != Fraction(reference):
            return [f"{here}: {report} != {reference}"]
        return []
    if report != reference or type(report) is not type(reference):
        return [f"{here}: {report!r} != {reference!r}"]
    return []
