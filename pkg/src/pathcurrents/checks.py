"""Invariant suite run by ``pathcurrents verify``.

Each check returns a ``CheckResult``; nothing here raises on failure so a
single run reports every broken invariant at once.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from . import analysis, oracle
from .hilbert import TOL, apply_unitary, basis_state, inner_product, same_up_to_phase, validate_density
from .network import InterferometerNetwork, stage_residuals
from .presets import canonical_network, named_state, rho_eta, swap_operator

CLOSED_FORM_TOL = 1e-12
DEFAULT_ETAS = tuple(k / 20 for k in range(21))


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""

    def as_dict(self) -> dict:
        return asdict(self)


def _check(name, fn) -> CheckResult:
    try:
        passed, detail = fn()
    except Exception as exc:  # a crashing check is a failed check
        return CheckResult(name, False, f"{type(exc).__name__}: {exc}")
    return CheckResult(name, bool(passed), detail)


def _network_state(net, label):
    try:
        return net.state(label)
    except KeyError:
        return None


def run_checks(net: InterferometerNetwork | None = None, etas=DEFAULT_ETAS) -> list[CheckResult]:
    net = canonical_network() if net is None else net
    swap = swap_operator()
    results = []

    def residuals():
        r = stage_residuals(net)
        return r.max <= TOL, f"max residual {r.max:.3e}"

    def named_match():
        bad = []
        for lab in net.labels():
            s = _network_state(net, lab)
            try:
                ref = named_state(lab)
            except KeyError:
                bad.append(f"{lab} (no closed form)")
                continue
            if not same_up_to_phase(s, ref):
                bad.append(lab)
        return not bad, "mismatched: " + ", ".join(bad) if bad else "all path states match closed forms"

    def swap_pairs():
        pairs = [("f_NL", "f_NL"), ("N1", "N2"), ("b,0", "0,b"), ("a,0", "0,a")]
        bad = []
        for x, y in pairs:
            sx, sy = _network_state(net, x), _network_state(net, y)
            if sx is None or sy is None or not same_up_to_phase(apply_unitary(swap, sx), sy):
                bad.append(f"SWAP {x} != {y}")
        return not bad, "; ".join(bad) or "f_NL fixed, N1<->N2, b,0<->0,b, a,0<->0,a"

    def total_swap():
        u = net.total_unitary
        src = net.input_context
        ok = True
        for a, b in [("0,1", "1,0"), ("1,0", "0,1"), ("0,0", "0,0"), ("1,1", "1,1")]:
            image = u @ src.state(a)
            ok &= same_up_to_phase(image, basis_state(b))
        return ok, "total unitary exchanges 0,1 and 1,0 up to sign"

    def inner_n1_n2():
        s1, s2 = _network_state(net, "N1"), _network_state(net, "N2")
        v = abs(abs(inner_product(s1, s2)) - 0.5)
        return v <= CLOSED_FORM_TOL, f"||<N1|N2>| - 1/2| = {v:.3e}"

    def densities():
        worst = max(
            max(r.hermiticity_residual, r.trace_residual, -r.min_eigenvalue)
            for r in (validate_density(rho_eta(e)) for e in etas)
        )
        return worst <= TOL, f"worst residual {worst:.3e}"

    def normalization():
        worst = 0.0
        for e in etas:
            for rep in analysis.all_probabilities(rho_eta(e), net):
                worst = max(worst, abs(rep.total - 1))
        return worst <= TOL, f"worst |sum P - 1| = {worst:.3e}"

    def closed_forms():
        worst = 0.0
        for rec in analysis.visibility_sweep(etas):
            e = rec.eta
            worst = max(
                worst,
                abs(rec.p_fnl - (1 + e) / 3),
                abs(rec.p_a0 - 0.25),
                abs(rec.p_0a - 0.25),
                abs(rec.p_n1 - (0.75 - rec.p_fnl)),
                abs(rec.p_n2 - (0.75 - rec.p_fnl)),
                abs(rec.w_n1_given_10 - (0.5 - e) / 3),
                abs(rec.w_n2_given_01 - (0.5 - e) / 3),
            )
        return worst <= CLOSED_FORM_TOL, f"worst deviation {worst:.3e}"

    def weak_tables():
        worst_sum = worst_cont = worst_orth = 0.0
        for e in etas:
            rho = rho_eta(e)
            for o_lab, o in net.output_context.outcomes:
                if np.real(np.vdot(o, rho @ o)) <= analysis.POSTSELECTION_THRESHOLD:
                    continue
                table = analysis.conditional_current_table(rho, net, o_lab)
                worst_sum = max(worst_sum, max(abs(s - 1) for s in table.context_sums()))
                worst_cont = max(worst_cont, analysis.continuity_residual(table, net))
                for k, ctx in enumerate(net.contexts):
                    for lab, s in ctx.outcomes:
                        if abs(inner_product(o, s)) < TOL:
                            worst_orth = max(worst_orth, abs(table.value(lab, k)))
        worst = max(worst_sum, worst_cont, worst_orth)
        detail = f"context sums {worst_sum:.1e}, continuity {worst_cont:.1e}, orthogonal {worst_orth:.1e}"
        return worst <= TOL, detail

    def decomposition():
        worst = 0.0
        for e in etas:
            rho = rho_eta(e)
            for ctx in net.contexts:
                for _, s in ctx.outcomes:
                    p = float(np.real(np.vdot(s, rho @ s)))
                    worst = max(worst, abs(p - analysis.decomposed_probability(rho, net, s)))
        return worst <= TOL, f"worst |P - sum P(o) Re W| = {worst:.3e}"

    def threshold():
        low, mid, high = (analysis.witness(rho_eta(e)) for e in (0.25, 0.5, 0.75))
        w = [analysis.weak_sum_lhs(rho_eta(e)) for e in (0.25, 0.5, 0.75)]
        ok = (
            low.witness < -TOL
            and abs(mid.witness) <= CLOSED_FORM_TOL
            and high.witness > TOL
            and w[0] > TOL
            and abs(w[1]) <= CLOSED_FORM_TOL
            and w[2] < -TOL
        )
        return ok, "witness and weak-value sum change sign at eta = 1/2"

    def nc_bound():
        assignments = oracle.enumerate_assignments(net)
        bound = oracle.nc_max_witness(assignments)
        quantum = analysis.witness(rho_eta(1)).witness
        report = oracle.check_statements(assignments, net)
        ok = bound == 0 and quantum > bound and report.ok
        return ok, f"{len(assignments)} assignments, bound {bound}, witness(Phi_max) {quantum:.15g}"

    checks = [
        ("stage residuals", residuals),
        ("path states match closed forms", named_match),
        ("swap relations", swap_pairs),
        ("total unitary swaps 0,1 and 1,0", total_swap),
        ("<N1|N2> = -1/2", inner_n1_n2),
        ("rho(eta) valid", densities),
        ("probability normalization", normalization),
        ("closed forms over eta", closed_forms),
        ("weak-value tables", weak_tables),
        ("probability decomposition", decomposition),
        ("threshold at eta = 1/2", threshold),
        ("noncontextual bound", nc_bound),
    ]
    for name, fn in checks:
        results.append(_check(name, fn))
    return results


def summary(results: list[CheckResult]) -> tuple[int, int]:
    passed = sum(r.passed for r in results)
    return passed, len(results) - passed


def all_passed(results: list[CheckResult]) -> bool:
    return bool(results) and all(r.passed for r in results)
