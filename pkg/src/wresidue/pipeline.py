"""Boundary-term pipeline: case enumeration and end-to-end evaluation.

Each boundary case evaluates

    prefactor * Int_{|xi'|=1} Int_R Tr[ d_xn^j d_xi'^alpha d_xin^k pi+ sigma_r(F1)
                                        x d_x'^alpha d_xin^(j+1) d_xn^k sigma_l(F2) ]

with prefactor (-i)^(|alpha|+j+k+1) / (alpha! (j+k+1)!), summed over the case
list determined by r + l - k - j - |alpha| = -(n-1) within the factors' order
bounds.  Derivatives act on unrestricted symbols, restriction to |xi'| = 1
precedes the half-plane projection, the xin integral closes upward through
the residue at +i, and tangential moments are exact with the sphere volume
kept symbolic.

Cases are independent pure computations; reports merge in case order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

from .gaussian import GRat
from .scalars import (
    EngineError,
    REG,
    ScalarExpr,
    S_ZERO,
    sym,
    zero_torsion_bindings,
)
from .clifford import CliffordExpr, cl_trace
from .halfplane import pi_plus
from .integration import integrate_xi_n, sphere_moment
from .symbols import (
    GradedSymbol,
    SymbolComponent,
    builtin_symbol,
    d_xi,
    d_xn,
    d_x_tangential,
)

N_DIM = 4

THEOREM_IDS = ("T4.6", "T5.4")


@dataclass(frozen=True)
class CaseSpec:
    theorem: str
    case_id: str
    r: int
    ell: int
    k: int
    j: int
    alpha: int

    def constraint_ok(self) -> bool:
        return self.r + self.ell - self.k - self.j - self.alpha == -(N_DIM - 1)


_CASE_TABLES: Dict[str, List[Tuple[str, int, int, int, int, int]]] = {
    # (case_id, r, ell, k, j, |alpha|)
    "T4.6": [
        ("a1", 0, -2, 0, 0, 1),
        ("a2", 0, -2, 0, 1, 0),
        ("a3", 0, -2, 1, 0, 0),
        ("b", 0, -3, 0, 0, 0),
        ("c", -1, -2, 0, 0, 0),
    ],
    "T5.4": [
        ("a1", 1, -3, 0, 0, 1),
        ("a2", 1, -3, 0, 1, 0),
        ("a3", 1, -3, 1, 0, 0),
        ("b", 0, -3, 0, 0, 0),
        ("c", 1, -4, 0, 0, 0),
    ],
}

_FACTOR_IDS: Dict[str, Tuple[str, str]] = {
    "T4.6": ("nablaXY(D_T*D_T)^-1", "(D_T*D_T)^-1"),
    "T5.4": ("nablaXY D_T^-1", "(D_T*D_TD_T*)^-1"),
}

_ORDER_BOUNDS: Dict[str, Tuple[Tuple[int, int], Tuple[int, int]]] = {
    # ((top_r, min_r), (top_l, min_l))
    "T4.6": ((0, -1), (-2, -3)),
    "T5.4": ((1, 0), (-3, -4)),
}


def brute_force_cases(theorem: str, depth: int = 6) -> List[Tuple[int, int, int, int, int]]:
    """Scan (r, l, k, j, |alpha|) within order bounds for the case constraint."""
    (top_r, _), (top_l, _) = _ORDER_BOUNDS[theorem]
    found = []
    for r in range(top_r, top_r - depth, -1):
        for ell in range(top_l, top_l - depth, -1):
            budget = r + ell + (N_DIM - 1)
            if budget < 0:
                continue
            for k in range(budget + 1):
                for j in range(budget - k + 1):
                    a = budget - k - j
                    found.append((r, ell, k, j, a))
    return sorted(found)


def enumerate_cases(theorem: str) -> List[CaseSpec]:
    """The five boundary cases; completeness re-derived from the constraint."""
    if theorem not in _CASE_TABLES:
        raise EngineError(f"theorem {theorem!r} not wired")
    cases = [CaseSpec(theorem, *row) for row in _CASE_TABLES[theorem]]
    for c in cases:
        if not c.constraint_ok():
            raise EngineError(f"case {c.case_id} violates the order constraint")
    derived = brute_force_cases(theorem)
    tabulated = sorted((c.r, c.ell, c.k, c.j, c.alpha) for c in cases)
    if derived != tabulated:
        raise EngineError(
            f"case enumeration mismatch for {theorem}: derived {derived}, "
            f"tabulated {tabulated}"
        )
    return cases


# ---------------------------------------------------------------------------
# Trail and report records
# ---------------------------------------------------------------------------

@dataclass
class TrailStep:
    step_id: str
    op: str
    expr_text: str
    ref_id: Optional[str] = None
    verdict: Optional[str] = None
    delta_text: Optional[str] = None

    def to_dict(self) -> dict:
        out = {"step": self.step_id, "op": self.op, "expr": self.expr_text}
        if self.ref_id is not None:
            out["ref"] = self.ref_id
            out["verdict"] = self.verdict
            if self.delta_text:
                out["delta"] = self.delta_text
        return out


@dataclass
class CollectedForm:
    """Boundary density in the reporting monomial basis."""

    tangential: ScalarExpr  # coefficient of g(X^T, Y^T)
    normal: ScalarExpr      # coefficient of X_n Y_n
    normal_dyn: ScalarExpr  # coefficient of X_n dY_n/dx_n
    leftover: ScalarExpr    # anything outside the basis (should be zero)

    def text(self) -> str:
        parts = []
        if not self.tangential.is_zero():
            parts.append(f"[{self.tangential.text()}] * g(X^T,Y^T)")
        if not self.normal.is_zero():
            parts.append(f"[{self.normal.text()}] * Xn*Yn")
        if not self.normal_dyn.is_zero():
            parts.append(f"[{self.normal_dyn.text()}] * Xn*dYn")
        if not self.leftover.is_zero():
            parts.append(f"[{self.leftover.text()}] (outside basis)")
        return " + ".join(parts) if parts else "0"


@dataclass
class PhiReport:
    case: Optional[CaseSpec]
    row_id: str
    value: ScalarExpr
    collected: CollectedForm
    reference_id: Optional[str]
    reference_value: Optional[ScalarExpr]
    verdict: str
    delta: Optional[ScalarExpr]
    trail: List[TrailStep] = field(default_factory=list)


def collect_form(value: ScalarExpr) -> CollectedForm:
    """Split a boundary density over {g(X^T,Y^T), XnYn, Xn dYn} monomials.

    Off-diagonal tangential X_j Y_l and mixed X_j Y_n terms must have
    cancelled (sphere parity); anything unexpected lands in `leftover`.
    """
    if not value.den.is_const():
        return CollectedForm(S_ZERO, S_ZERO, S_ZERO, value)
    den_inv = ScalarExpr.const(value.den.const_value().inverse())
    x_ids = {REG.id_of(f"X{j}"): j for j in range(1, 5)}
    y_ids = {REG.id_of(f"Y{j}"): j for j in range(1, 5)}
    dyn_id = REG.id_of("dYn")
    diag: Dict[int, ScalarExpr] = {1: S_ZERO, 2: S_ZERO, 3: S_ZERO}
    normal = S_ZERO
    normal_dyn = S_ZERO
    leftover = S_ZERO
    from .scalars import Poly

    for mono, coeff in value.num.terms.items():
        xs = [(s, e) for s, e in mono if s in x_ids]
        ys = [(s, e) for s, e in mono if s in y_ids]
        dyn = [(s, e) for s, e in mono if s == dyn_id]
        rest = tuple(
            (s, e)
            for s, e in mono
            if s not in x_ids and s not in y_ids and s != dyn_id
        )
        term = ScalarExpr.from_poly(Poly({rest: coeff})) * den_inv
        full = ScalarExpr.from_poly(Poly({mono: coeff})) * den_inv
        if len(xs) == 1 and xs[0][1] == 1 and len(ys) == 1 and ys[0][1] == 1 and not dyn:
            xj = x_ids[xs[0][0]]
            yl = y_ids[ys[0][0]]
            if xj == yl and xj < 4:
                diag[xj] = diag[xj] + term
                continue
            if xj == yl == 4:
                normal = normal + term
                continue
            leftover = leftover + full
            continue
        if len(xs) == 1 and xs[0][1] == 1 and not ys and len(dyn) == 1 and dyn[0][1] == 1:
            if x_ids[xs[0][0]] == 4:
                normal_dyn = normal_dyn + term
                continue
        leftover = leftover + full
    if not (diag[1] == diag[2] == diag[3]):
        # tangential anisotropy: report everything as leftover
        for j in (1, 2, 3):
            leftover = leftover + diag[j] * sym(f"X{j}") * sym(f"Y{j}")
        return CollectedForm(S_ZERO, normal, normal_dyn, leftover)
    return CollectedForm(diag[1], normal, normal_dyn, leftover)


def collected_to_scalar(c: CollectedForm) -> ScalarExpr:
    """Reassemble with the raw tangential contraction (sum X_j Y_j)."""
    tang = S_ZERO
    for j in (1, 2, 3):
        tang = tang + sym(f"X{j}") * sym(f"Y{j}")
    return (
        c.tangential * tang
        + c.normal * sym("X4") * sym("Y4")
        + c.normal_dyn * sym("X4") * sym("dYn")
        + c.leftover
    )


# ---------------------------------------------------------------------------
# Case evaluation
# ---------------------------------------------------------------------------

_TANGENTIAL_AXES = (1, 2, 3)


def _prefactor(case: CaseSpec) -> GRat:
    e = case.alpha + case.j + case.k + 1
    out = GRat(0, -1) ** e
    fact = 1
    for i in range(2, case.j + case.k + 2):
        fact *= i
    return out / GRat(fact)


@dataclass
class TheoremContext:
    theorem: str
    factor1: GradedSymbol
    factor2: GradedSymbol
    sigma3_variant: str = "printed"


def make_context(theorem: str, sigma3_variant: str = "printed") -> TheoremContext:
    f1_id, f2_id = _FACTOR_IDS[theorem]
    return TheoremContext(
        theorem,
        builtin_symbol(f1_id, sigma3_variant),
        builtin_symbol(f2_id, sigma3_variant),
        sigma3_variant,
    )


def _first_factor_restricted(ctx: TheoremContext, case: CaseSpec,
                             tangential_axis: Optional[int],
                             trail: List[TrailStep]) -> Tuple[CliffordExpr, str]:
    comp = ctx.factor1.component(case.r)
    label = f"sigma_{case.r}(F1)"
    for _ in range(case.j):
        comp = d_xn(comp)
        label = f"d_xn {label}"
    if case.alpha:
        comp = SymbolComponent(
            d_xi(comp.value, tangential_axis), comp.at_point, comp.homogeneous
        )
        label = f"d_xi{tangential_axis} {label}"
    for _ in range(case.k):
        comp = SymbolComponent(d_xi(comp.value, 4), comp.at_point, comp.homogeneous)
        label = f"d_xin {label}"
    restricted = comp.value.restrict_sphere()
    trail.append(TrailStep(label, "derivatives+restrict", restricted.text()))
    return restricted, label


def _second_factor(ctx: TheoremContext, case: CaseSpec, tangential_axis: Optional[int],
                   trail: List[TrailStep]) -> CliffordExpr:
    comp = ctx.factor2.component(case.ell)
    label = f"sigma_{case.ell}(F2)"
    if case.alpha:
        comp = d_x_tangential(comp)
        label = f"d_x'{tangential_axis} {label}"
        trail.append(TrailStep(label, "d_x_tangential", comp.value.text()))
        if comp.value.is_zero():
            return CliffordExpr()
    for _ in range(case.k):
        comp = d_xn(comp)
        label = f"d_xn {label}"
    for _ in range(case.j + 1):
        comp = SymbolComponent(d_xi(comp.value, 4), comp.at_point, comp.homogeneous)
        label = f"d_xin {label}"
    restricted = comp.value.restrict_sphere()
    trail.append(TrailStep(label, "derivatives+restrict", restricted.text()))
    return restricted


def _traced_projected_product(f1_restricted: CliffordExpr, f2: CliffordExpr,
                              trail: List[TrailStep], tag: str) -> ScalarExpr:
    """Tr[pi+ f1 * f2] via trace pairing.

    Only equal canonical monomials pair into the identity, and pi+ acts
    coefficient-wise and commutes with the trace, so
    Tr[pi+ f1 * f2] = 4 sum_S pi+(f1_S) f2_S c_S^2; only the paired
    coefficients are projected.
    """
    from .clifford import _mono_square_sign
    from .halfplane import pi_plus_scalar

    traced = S_ZERO
    projected_texts = []
    for mono in sorted(set(f1_restricted.terms) & set(f2.terms), key=lambda m: (len(m), m)):
        proj = pi_plus_scalar(f1_restricted.terms[mono])
        if proj.is_zero():
            continue
        body = "".join(f"c(e_{i})" for i in mono) or "Id"
        projected_texts.append(f"[{proj.text()}] {body}")
        term = proj * f2.terms[mono]
        if _mono_square_sign(len(mono)) < 0:
            term = -term
        traced = traced + term
    traced = traced * ScalarExpr.const(GRat(4))
    trail.append(TrailStep(f"pi+ paired coefficients {tag}", "pi_plus",
                           " + ".join(projected_texts) if projected_texts else "0"))
    trail.append(TrailStep(f"trace {tag}", "cl_trace", traced.text()))
    return traced


def compute_case_term(ctx: TheoremContext, case: CaseSpec) -> PhiReport:
    """Evaluate one boundary case end to end with a full step trail."""
    trail: List[TrailStep] = []
    axes = _TANGENTIAL_AXES if case.alpha else (None,)
    total = S_ZERO
    for axis in axes:
        sub_trail: List[TrailStep] = []
        tag = f"(axis {axis})" if axis else ""
        f2 = _second_factor(ctx, case, axis, sub_trail)
        if f2.is_zero():
            trail.extend(sub_trail)
            trail.append(
                TrailStep(
                    f"case {case.case_id} axis {axis}",
                    "product",
                    "0 (second factor vanishes)",
                )
            )
            continue
        f1r, _ = _first_factor_restricted(ctx, case, axis, sub_trail)
        trail.extend(sub_trail)
        traced = _traced_projected_product(f1r, f2, trail, tag)
        line = integrate_xi_n(traced)
        line_scalar = line.scalar_part()
        trail.append(TrailStep(f"xin integral {tag}", "integrate_xi_n", line_scalar.text()))
        moment = sphere_moment(line_scalar)
        trail.append(TrailStep(f"sphere moments {tag}", "sphere_moment", moment.text()))
        total = total + moment
    pref = _prefactor(case)
    value = total * ScalarExpr.const(pref)
    trail.append(TrailStep("prefactor", "scale", f"{pref} -> {value.text()}"))
    collected = collect_form(value)
    return PhiReport(
        case=case,
        row_id=f"{ctx.theorem}/{case.case_id}",
        value=value,
        collected=collected,
        reference_id=None,
        reference_value=None,
        verdict="paper-silent",
        delta=None,
        trail=trail,
    )


def case_trace_integrand(ctx: TheoremContext, case_id: str) -> CliffordExpr:
    """The traced integrand of a case before line and sphere integration.

    This is the expression whose printed counterpart appears in the source
    text's per-case trace displays.
    """
    case = next(c for c in enumerate_cases(ctx.theorem) if c.case_id == case_id)
    trail: List[TrailStep] = []
    total = S_ZERO
    axes = _TANGENTIAL_AXES if case.alpha else (None,)
    for axis in axes:
        f2 = _second_factor(ctx, case, axis, trail)
        if f2.is_zero():
            continue
        f1r, _ = _first_factor_restricted(ctx, case, axis, trail)
        total = total + _traced_projected_product(f1r, f2, trail, "")
    return CliffordExpr.scalar(total)


def total_boundary_term(reports: List[PhiReport], theorem: str) -> PhiReport:
    """Exact sum of the case values with the tangential contraction collected."""
    total = S_ZERO
    for rep in reports:
        total = total + rep.value
    collected = collect_form(total)
    return PhiReport(
        case=None,
        row_id=f"{theorem}/total",
        value=total,
        collected=collected,
        reference_id=None,
        reference_value=None,
        verdict="paper-silent",
        delta=None,
        trail=[TrailStep("total", "sum", total.text())],
    )


def apply_torsion_switches(value: ScalarExpr, a: bool, t: bool, v: bool) -> ScalarExpr:
    """Substitute zero for the switched-off torsion atom families."""
    if a and t and v:
        return value
    bindings = zero_torsion_bindings(a=not a, t=not t, v=not v)
    if not bindings:
        return value
    return value.substitute(bindings)
