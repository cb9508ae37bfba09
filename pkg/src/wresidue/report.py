"""Report assembly: comparisons, rendering, serialization.

Builds the full computation report for a run configuration: boundary case
rows with verdicts and step trails, totals, interior densities, symbol-level
diff rows (stated vs recomputed inverse symbols), and self-check results.
The exit-code contract lives here: a paper-mismatch is a reportable verdict
("mismatch"), an internal oracle failure is an engine error.

Rendering is deterministic: identical config and seed give byte-identical
output.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .gaussian import GRat
from .scalars import (
    EngineError,
    OMEGA3,
    REG,
    Poly,
    ScalarExpr,
    S_ZERO,
    sym,
)
from .clifford import CliffordExpr
from .interior import (
    clifford_part_top_coefficient,
    curvature_trace_identities,
    interior_density,
    trace_e,
)
from .pipeline import (
    CaseSpec,
    PhiReport,
    TheoremContext,
    TrailStep,
    collect_form,
    compute_case_term,
    enumerate_cases,
    make_context,
    total_boundary_term,
)
from .references import REFERENCES, reference_value, slots_for
from .symbols import GradedSymbol, builtin_symbol, recomputed_symbol

ENGINE_VERSION = "0.1.0"


# ---------------------------------------------------------------------------
# Run configuration
# ---------------------------------------------------------------------------

THEOREM_CHOICES = ("T2.3", "T4.1", "T4.6", "T5.1", "T5.4", "all")


@dataclass
class RunConfig:
    """Deterministic batch configuration; identical config => identical report."""

    theorem: str = "all"
    case: Optional[str] = None
    torsion_a: bool = True
    torsion_t: bool = True
    torsion_v: bool = True
    output_format: str = "text"  # text | json | latex
    subst_omega3: bool = False
    seed: int = 0
    oracle_samples: int = 0
    sigma3_variant: str = "printed"

    @staticmethod
    def from_mapping(data: Dict) -> "RunConfig":
        cfg = RunConfig()
        for key, val in data.items():
            if not hasattr(cfg, key):
                raise EngineError(f"unknown configuration key {key!r}")
            setattr(cfg, key, val)
        cfg.validate()
        return cfg

    def validate(self):
        if self.theorem not in THEOREM_CHOICES:
            raise EngineError(f"unknown theorem {self.theorem!r}")
        if self.output_format not in ("text", "json", "latex"):
            raise EngineError(f"unknown output format {self.output_format!r}")
        if self.sigma3_variant not in ("printed", "xik"):
            raise EngineError(f"unknown sigma3 variant {self.sigma3_variant!r}")

    def to_mapping(self) -> Dict:
        return {
            "theorem": self.theorem,
            "case": self.case,
            "torsion_a": self.torsion_a,
            "torsion_t": self.torsion_t,
            "torsion_v": self.torsion_v,
            "output_format": self.output_format,
            "subst_omega3": self.subst_omega3,
            "seed": self.seed,
            "oracle_samples": self.oracle_samples,
            "sigma3_variant": self.sigma3_variant,
        }


# ---------------------------------------------------------------------------
# Expression serialization: canonical text, LaTeX, JSON tree
# ---------------------------------------------------------------------------

def _grat_tree(c: GRat) -> Dict:
    return {
        "re": [c.re.numerator, c.re.denominator],
        "im": [c.im.numerator, c.im.denominator],
    }


def _grat_from_tree(t: Dict) -> GRat:
    return GRat(Fraction(t["re"][0], t["re"][1]), Fraction(t["im"][0], t["im"][1]))


def _poly_tree(p: Poly) -> List:
    from .scalars import mono_key

    out = []
    for m in sorted(p.terms, key=mono_key, reverse=True):
        out.append(
            {
                "monomial": [[REG.name_of(s), e] for s, e in m],
                "coeff": _grat_tree(p.terms[m]),
            }
        )
    return out


def _poly_from_tree(t: List) -> Poly:
    terms = {}
    for item in t:
        mono = tuple((REG.id_of(name), e) for name, e in item["monomial"])
        terms[mono] = _grat_from_tree(item["coeff"])
    return Poly(terms)


def scalar_to_tree(e: ScalarExpr) -> Dict:
    return {"kind": "scalar", "num": _poly_tree(e.num), "den": _poly_tree(e.den)}


def scalar_from_tree(t: Dict) -> ScalarExpr:
    if t.get("kind") != "scalar":
        raise EngineError("not a scalar expression tree")
    return ScalarExpr(_poly_from_tree(t["num"]), _poly_from_tree(t["den"]))


def clifford_to_tree(e: CliffordExpr) -> Dict:
    terms = []
    for mono in sorted(e.terms, key=lambda m: (len(m), m)):
        terms.append({"monomial": list(mono), "coeff": scalar_to_tree(e.terms[mono])})
    return {"kind": "clifford", "terms": terms}


def clifford_from_tree(t: Dict) -> CliffordExpr:
    if t.get("kind") != "clifford":
        raise EngineError("not a Clifford expression tree")
    return CliffordExpr(
        {tuple(item["monomial"]): scalar_from_tree(item["coeff"]) for item in t["terms"]}
    )


def expr_to_tree(e) -> Dict:
    if isinstance(e, ScalarExpr):
        return scalar_to_tree(e)
    if isinstance(e, CliffordExpr):
        return clifford_to_tree(e)
    raise EngineError(f"cannot serialize {type(e).__name__}")


def expr_from_tree(t: Dict):
    if t.get("kind") == "scalar":
        return scalar_from_tree(t)
    if t.get("kind") == "clifford":
        return clifford_from_tree(t)
    raise EngineError("unknown expression tree kind")


_LATEX_NAMES = {
    "xi1": r"\xi_{1}",
    "xi2": r"\xi_{2}",
    "xi3": r"\xi_{3}",
    "xin": r"\xi_{n}",
    "shx": r"\sqrt{h(x_{n})}",
    "h1": r"h'(0)",
    "dYn": r"\partial_{x_{n}}Y_{n}",
    "pi": r"\pi",
    "Omega3": r"\Omega_{3}",
    "Rg": r"R^{g}",
    "s_scal": r"s",
    "RicVW": r"\mathrm{Ric}(X,Y)",
    "divV": r"\mathrm{div}^{g}(X)",
    "normT2": r"\|T\|^{2}",
    "normV2": r"\|X\|^{2}",
    "gVW": r"g(X,Y)",
    "gXTYT": r"g(X^{T},Y^{T})",
}


def _latex_name(name: str) -> str:
    if name in _LATEX_NAMES:
        return _LATEX_NAMES[name]
    if name.startswith("X") and name[1:].isdigit():
        return f"X_{{{'n' if name[1:] == '4' else name[1:]}}}"
    if name.startswith("Y") and name[1:].isdigit():
        return f"Y_{{{'n' if name[1:] == '4' else name[1:]}}}"
    if "[" in name:
        head, idx = name.split("[", 1)
        return f"{head}_{{{idx.rstrip(']').replace(',', '')}}}"
    return name


def _latex_grat(c: GRat) -> str:
    def frac(f: Fraction) -> str:
        if f.denominator == 1:
            return str(f.numerator)
        return rf"\frac{{{f.numerator}}}{{{f.denominator}}}"

    if c.im == 0:
        return frac(c.re)
    if c.re == 0:
        if c.im == 1:
            return "i"
        if c.im == -1:
            return "-i"
        return frac(c.im) + "i"
    sign = "+" if c.im > 0 else "-"
    mag = abs(c.im)
    istr = "i" if mag == 1 else frac(mag) + "i"
    return rf"\left({frac(c.re)}{sign}{istr}\right)"


def latex_poly(p: Poly) -> str:
    from .scalars import mono_key

    if p.is_zero():
        return "0"
    parts = []
    for m in sorted(p.terms, key=mono_key, reverse=True):
        c = p.terms[m]
        body = " ".join(
            _latex_name(REG.name_of(s)) + (f"^{{{e}}}" if e > 1 else "") for s, e in m
        )
        cs = _latex_grat(c)
        if body and cs == "1":
            parts.append(body)
        elif body and cs == "-1":
            parts.append("-" + body)
        else:
            parts.append(f"{cs} {body}".strip())
    out = " + ".join(parts)
    return out.replace("+ -", "- ")


def latex_scalar(e: ScalarExpr) -> str:
    if e.is_poly():
        return latex_poly(e.num)
    return rf"\frac{{{latex_poly(e.num)}}}{{{latex_poly(e.den)}}}"


def latex_clifford(e: CliffordExpr) -> str:
    if e.is_zero():
        return "0"
    parts = []
    for mono in sorted(e.terms, key=lambda m: (len(m), m)):
        coeff = latex_scalar(e.terms[mono])
        body = "".join(
            rf"c(dx_{{n}})" if i == 4 else rf"c(e_{{{i}}})" for i in mono
        )
        if body:
            parts.append(rf"\left[{coeff}\right]{body}")
        else:
            parts.append(coeff)
    return " + ".join(parts)


def emit(expr, output_format: str) -> str:
    """Render an expression as canonical text, LaTeX, or a JSON tree."""
    if output_format == "text":
        return expr.text()
    if output_format == "latex":
        if isinstance(expr, ScalarExpr):
            return latex_scalar(expr)
        return latex_clifford(expr)
    if output_format == "json":
        return json.dumps(expr_to_tree(expr), sort_keys=True, separators=(",", ":"))
    raise EngineError(f"unknown output format {output_format!r}")


def parse_emitted(text: str):
    """Inverse of emit(..., 'json')."""
    return expr_from_tree(json.loads(text))


# ---------------------------------------------------------------------------
# Comparison
# ---------------------------------------------------------------------------

def _as_clifford(e) -> CliffordExpr:
    if isinstance(e, ScalarExpr):
        return CliffordExpr.scalar(e)
    return e


def compare_with_reference(expr, reference_id: str) -> Tuple[str, Optional[object]]:
    """Exact symbolic difference; verdict 'match' iff it normalizes to zero."""
    ref = reference_value(reference_id)
    delta = _as_clifford(expr) - _as_clifford(ref)
    if delta.is_zero():
        return "match", None
    return "mismatch", delta


# ---------------------------------------------------------------------------
# Row assembly
# ---------------------------------------------------------------------------

_CASE_REFS = {
    "T4.6": {
        "a1": "eq_4_26",
        "a2": "eq_4_32",
        "a3": "eq_4_39",
        "b": "eq_4_44",
        "c": "eq_4_55",
        "total": "eq_4_56",
        "theorem": "thm_4_6",
        "interior": "thm_4_1",
    },
    "T5.4": {
        "a1": "eq_5_13",
        "a2": "eq_5_19",
        "a3": "eq_5_25",
        "b": "eq_5_43",
        "c": "eq_5_50",
        "total": "eq_5_51",
        "theorem": "thm_5_4",
        "interior": "thm_5_1",
    },
}


def _apply_config_to_value(value: ScalarExpr, cfg: RunConfig) -> ScalarExpr:
    from .pipeline import apply_torsion_switches

    out = apply_torsion_switches(value, cfg.torsion_a, cfg.torsion_t, cfg.torsion_v)
    if cfg.subst_omega3:
        out = out.substitute({OMEGA3: ScalarExpr.const(4) * sym("pi")})
    return out


def _attach_reference(report: PhiReport, ref_id: str):
    report.reference_id = ref_id
    report.reference_value = reference_value(ref_id)
    verdict, delta = compare_with_reference(report.value, ref_id)
    report.verdict = verdict
    report.delta = delta.scalar_part() if isinstance(delta, CliffordExpr) else delta


def _row_dict(report: PhiReport, cfg: RunConfig) -> Dict:
    value = _apply_config_to_value(report.value, cfg)
    row = {
        "id": report.row_id,
        "engine_value": emit(value, "latex" if cfg.output_format == "latex" else "text"),
        "engine_collected": report.collected.text(),
        "reference": report.reference_id,
        "reference_value": (
            emit(report.reference_value, "text") if report.reference_value is not None else None
        ),
        "verdict": report.verdict,
        "delta": emit(report.delta, "text") if report.delta is not None else None,
        "trail": [t.to_dict() for t in report.trail],
    }
    if report.case is not None:
        row["case"] = {
            "r": report.case.r,
            "l": report.case.ell,
            "k": report.case.k,
            "j": report.case.j,
            "alpha": report.case.alpha,
        }
    return row


def _symbol_diff_rows(theorem: str, cfg: RunConfig) -> List[Dict]:
    """Stated-vs-recomputed inverse symbol diffs (never silently reconciled)."""
    rows: List[Dict] = []
    if theorem == "T4.6":
        pairs = [("(D_T*D_T)^-1", (-2, -3))]
    else:
        pairs = [("D_T^-1", (-1, -2)), ("(D_T*D_TD_T*)^-1", (-3, -4))]
    for op_id, orders in pairs:
        stated = builtin_symbol(op_id, cfg.sigma3_variant)
        recomputed = recomputed_symbol(op_id)
        for order in orders:
            sv = stated.component(order).value.restrict_sphere()
            rv = recomputed.component(order).value.restrict_sphere()
            delta = sv - rv
            rows.append(
                {
                    "id": f"{theorem}/symbol-diff/{op_id}@{order}",
                    "verdict": "match" if delta.is_zero() else "mismatch",
                    "delta": emit(delta, "text"),
                }
            )
    return rows


def _slot_steps(ctx: TheoremContext) -> Dict[str, List[TrailStep]]:
    """Evaluate every printed-intermediate slot for the theorem."""
    out: Dict[str, List[TrailStep]] = {}
    for slot in slots_for(ctx.theorem):
        engine_val = _as_clifford(slot.build_engine(ctx))
        ref_val = _as_clifford(slot.build_ref())
        delta = engine_val - ref_val
        verdict = "match" if delta.is_zero() else "mismatch"
        step = TrailStep(
            step_id=slot.slot_id,
            op="printed-intermediate",
            expr_text=engine_val.text(),
            ref_id=slot.slot_id,
            verdict=verdict,
            delta_text=None if delta.is_zero() else delta.text(),
        )
        out.setdefault(slot.case_id, []).append(step)
    return out


def run_theorem(theorem: str, cfg: RunConfig) -> Dict:
    """All rows for one boundary theorem: cases, total, interior, diffs."""
    ctx = make_context(theorem, cfg.sigma3_variant)
    refs = _CASE_REFS[theorem]
    slot_steps = _slot_steps(ctx)
    reports: List[PhiReport] = []
    for case in enumerate_cases(theorem):
        rep = compute_case_term(ctx, case)
        _attach_reference(rep, refs[case.case_id])
        rep.trail.extend(slot_steps.get(case.case_id, []))
        reports.append(rep)
    total = total_boundary_term(reports, theorem)
    _attach_reference(total, refs["total"])
    # sum consistency: total must equal the exact sum of the cases
    check = total.value
    for rep in reports:
        check = check - rep.value
    if not check.is_zero():
        raise EngineError("internal: case sum does not reproduce the total")
    theorem_row = PhiReport(
        case=None,
        row_id=f"{theorem}/theorem",
        value=total.value,
        collected=total.collected,
        reference_id=None,
        reference_value=None,
        verdict="paper-silent",
        delta=None,
        trail=[],
    )
    _attach_reference(theorem_row, refs["theorem"])
    interior = interior_density()
    interior_verdict, interior_delta = compare_with_reference(interior, refs["interior"])
    rows = [_row_dict(rep, cfg) for rep in reports]
    if cfg.case:
        rows = [r for r in rows if r["id"].endswith("/" + cfg.case)]
    out = {
        "theorem": theorem,
        "rows": rows,
        "totals": {
            "boundary": _row_dict(total, cfg),
            "theorem_statement": _row_dict(theorem_row, cfg),
            "interior": {
                "id": f"{theorem}/interior",
                "engine_value": emit(_apply_config_to_value(interior, cfg), "text"),
                "reference": refs["interior"],
                "verdict": interior_verdict,
                "delta": emit(interior_delta, "text") if interior_delta is not None else None,
            },
        },
        "symbol_diffs": _symbol_diff_rows(theorem, cfg),
    }
    if theorem == "T4.6":
        out["sigma3_variant_check"] = _sigma3_variant_rows(cfg)
    return out


def _sigma3_variant_rows(cfg: RunConfig) -> List[Dict]:
    """Both index readings of the inverse-Laplacian order -3 data downstream."""
    rows = []
    base = make_context("T4.6", "printed")
    alt = make_context("T4.6", "xik")
    for case in enumerate_cases("T4.6"):
        if case.case_id not in ("b", "c"):
            continue
        v1 = compute_case_term(base, case).value
        v2 = compute_case_term(alt, case).value
        delta = v1 - v2
        rows.append(
            {
                "id": f"T4.6/{case.case_id}/sigma3-variant-delta",
                "printed_vs_xik": emit(delta, "text"),
                "identical": delta.is_zero(),
            }
        )
    return rows


def run_interior(cfg: RunConfig, theorem: str = "T2.3") -> Dict:
    """Interior rows: trace identities, Tr E, and the functional density."""
    ids = curvature_trace_identities()
    rows = []
    for name, val in sorted(ids.items()):
        rows.append(
            {
                "id": f"{theorem}/{name}",
                "engine_value": emit(val, "text"),
                "verdict": "match" if val.is_zero() else "mismatch",
            }
        )
    te = trace_e()
    verdict, delta = compare_with_reference(te, "eq_2_21")
    rows.append(
        {
            "id": f"{theorem}/trace-E",
            "engine_value": emit(_apply_config_to_value(te, cfg), "text"),
            "reference": "eq_2_21",
            "verdict": verdict,
            "delta": emit(delta, "text") if delta is not None else None,
        }
    )
    ref_id = {"T2.3": "thm_2_3", "T4.1": "thm_4_1", "T5.1": "thm_5_1"}[theorem]
    density = interior_density()
    verdict, delta = compare_with_reference(density, ref_id)
    rows.append(
        {
            "id": f"{theorem}/density",
            "engine_value": emit(_apply_config_to_value(density, cfg), "text"),
            "reference": ref_id,
            "verdict": verdict,
            "delta": emit(delta, "text") if delta is not None else None,
        }
    )
    rows.append(
        {
            "id": f"{theorem}/four-form-top-coefficient",
            "engine_value": emit(clifford_part_top_coefficient(), "text"),
            "note": "reported separately; the trace functional assigns zero to the top monomial",
        }
    )
    return {"theorem": theorem, "rows": rows}


def run_computation(cfg: RunConfig) -> Dict:
    """Execute the configured pipelines and assemble the report document."""
    cfg.validate()
    sections = []
    theorems = (
        ["T2.3", "T4.1", "T4.6", "T5.1", "T5.4"] if cfg.theorem == "all" else [cfg.theorem]
    )
    for th in theorems:
        if th in ("T2.3", "T4.1", "T5.1"):
            sections.append(run_interior(cfg, th))
        else:
            sections.append(run_theorem(th, cfg))
    verify_summary = None
    if cfg.oracle_samples:
        from .verify import run_all_suites

        verify_summary = run_all_suites(seed=cfg.seed, scale=cfg.oracle_samples)
        for name, result in verify_summary.items():
            if result["failures"]:
                raise EngineError(f"oracle suite {name} failed: {result['failures'][:3]}")
    return {
        "meta": {
            "engine": "wresidue",
            "version": ENGINE_VERSION,
            "config": cfg.to_mapping(),
        },
        "sections": sections,
        "oracle_suites": verify_summary,
    }


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------

def render_report(doc: Dict, output_format: str) -> str:
    if output_format == "json":
        return json.dumps(doc, sort_keys=True, indent=1)
    lines: List[str] = []
    push = lines.append
    push("wresidue report")
    push(f"config: {json.dumps(doc['meta']['config'], sort_keys=True)}")
    for section in doc["sections"]:
        push("")
        push(f"== {section['theorem']} ==")
        for row in section["rows"]:
            push(f"  {row['id']}: verdict={row['verdict']}")
            if "engine_collected" in row:
                push(f"    engine = {row.get('engine_collected')}")
            else:
                push(f"    engine = {row.get('engine_value')}")
            if row.get("reference"):
                push(f"    reference[{row['reference']}] = {row.get('reference_value', '')}")
            if row.get("delta"):
                push(f"    delta = {row['delta']}")
        totals = section.get("totals")
        if totals:
            for key in ("boundary", "theorem_statement"):
                row = totals[key]
                push(f"  {row['id']}: verdict={row['verdict']}")
                push(f"    engine = {row['engine_collected']}")
                if row.get("delta"):
                    push(f"    delta = {row['delta']}")
            push(
                f"  {totals['interior']['id']}: verdict={totals['interior']['verdict']}"
            )
        for diff in section.get("symbol_diffs", []):
            push(f"  {diff['id']}: {diff['verdict']}")
        for row in section.get("sigma3_variant_check", []):
            same = "identical" if row["identical"] else f"delta = {row['printed_vs_xik']}"
            push(f"  {row['id']}: {same}")
    if doc.get("oracle_suites"):
        push("")
        push("== oracle suites ==")
        for name, result in sorted(doc["oracle_suites"].items()):
            push(f"  {name}: {result['passed']} passed, {len(result['failures'])} failed")
    push("")
    return "\n".join(lines)
