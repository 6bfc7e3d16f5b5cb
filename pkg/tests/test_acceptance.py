"""Exit criteria for the package, one test per criterion.

Each test prints a ``[criterion N] PASS/FAIL`` line (shown even without
``-s``) and then asserts.
"""
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pathcurrents import analysis, checks, oracle
from pathcurrents.cli import main
from pathcurrents.hilbert import apply_unitary, inner_product, pure_density, same_up_to_phase
from pathcurrents.network import parse_network, stage_residuals
from pathcurrents.presets import CANONICAL_STAGES, canonical_network, canonical_network_text, named_state, rho_eta, swap_operator

from test_properties import densities, networks

EXACT = 1e-12
PROPERTY = 1e-10
GRID = analysis.parse_grid("0:1:101")


@pytest.fixture
def report(request, capsys):
    def _report(number, title, passed, detail=""):
        with capsys.disabled():
            print(f"\n[criterion {number}] {'PASS' if passed else 'FAIL'}  {title}  {detail}")
        assert passed, f"criterion {number} failed: {title} {detail}"

    return _report


def test_criterion_1_probabilities_for_phi_max(report):
    net = canonical_network()
    rho = pure_density(named_state("Phi_max"))
    expected = {
        "f_NL": 2 / 3, "a,0": 1 / 4, "0,a": 1 / 4, "N1": 1 / 12, "N2": 1 / 12,
        "0,1": 1 / 2, "1,0": 1 / 2, "b,0": 1 / 4, "0,b": 1 / 4,
    }
    worst = 0.0
    for rep in analysis.all_probabilities(rho, net):
        for lab, p in rep.entries:
            if lab in expected:
                worst = max(worst, abs(p - expected[lab]))
    report(1, "Phi_max probabilities", worst <= EXACT, f"max deviation {worst:.2e}")


def test_criterion_2_fnl_probability_over_grid(report):
    f = named_state("f_NL")
    worst = max(abs(analysis.born_probability(rho_eta(e), f) - (1 + e) / 3) for e in GRID)
    report(2, "P(f_NL) = (1+eta)/3 on 101 points", len(GRID) == 101 and worst <= EXACT, f"max deviation {worst:.2e}")


def test_criterion_3_n_probabilities(report):
    worst = 0.0
    for rec in analysis.visibility_sweep(GRID):
        worst = max(worst, abs(rec.p_n1 - (0.75 - rec.p_fnl)), abs(rec.p_n2 - (0.75 - rec.p_fnl)))
    report(3, "P(N1) = P(N2) = 3/4 - P(f_NL)", worst <= EXACT, f"max deviation {worst:.2e}")


def test_criterion_4_conditional_currents(report):
    worst = worst_imag = 0.0
    for e in GRID:
        rho = rho_eta(e)
        w1 = analysis.weak_value(rho, named_state("N1"), named_state("1,0"))
        w2 = analysis.weak_value(rho, named_state("N2"), named_state("0,1"))
        worst = max(worst, abs(w1.real - (0.5 - e) / 3), abs(w2.real - (0.5 - e) / 3))
        worst_imag = max(worst_imag, abs(w1.imag), abs(w2.imag))
    at_one = analysis.weak_value(rho_eta(1), named_state("N1"), named_state("1,0"))
    ok = worst <= EXACT and worst_imag < EXACT and abs(at_one + 1 / 6) <= EXACT
    report(4, "W(N1|1,0) = W(N2|0,1) = (1/2-eta)/3", ok, f"max deviation {worst:.2e}, max |imag| {worst_imag:.2e}")


def test_criterion_5_threshold(report):
    recs = analysis.visibility_sweep(GRID)
    lhs = [analysis.weak_sum_lhs(rho_eta(e)) for e in GRID]
    ok = True
    for rec, w in zip(recs, lhs):
        if rec.eta < 0.5:
            ok &= rec.witness < -EXACT and w > EXACT
        elif rec.eta > 0.5:
            ok &= rec.witness > EXACT and w < -EXACT
        else:
            ok &= abs(rec.witness) <= EXACT and abs(w) <= EXACT
    report(5, "witness and weak sum cross zero at eta = 1/2", ok)


def test_criterion_6_structure(report):
    net = canonical_network()
    swap = swap_operator()
    n1, n2 = named_state("N1"), named_state("N2")
    ok = abs(inner_product(n1, n2) + 0.5) <= EXACT
    ok &= np.allclose(apply_unitary(swap, named_state("f_NL")), named_state("f_NL"), atol=EXACT, rtol=0)
    ok &= np.allclose(apply_unitary(swap, n1), n2, atol=EXACT, rtol=0)
    ok &= np.allclose(apply_unitary(swap, named_state("b,0")), named_state("0,b"), atol=EXACT, rtol=0)
    u = net.total_unitary
    e = np.eye(4)
    ok &= same_up_to_phase(u @ e[1], e[2], EXACT) and same_up_to_phase(u @ e[2], e[1], EXACT)
    report(6, "<N1|N2> = -1/2, swap relations, total unitary exchanges 0,1 and 1,0", ok)


def test_criterion_7_noncontextual_bound(report):
    net = canonical_network()
    assignments = oracle.enumerate_assignments(net)
    bound = oracle.nc_max_witness(assignments)
    quantum = analysis.witness(rho_eta(1)).witness
    statements = oracle.check_statements(assignments, net)
    ok = bound == 0 and abs(quantum - 1 / 6) <= EXACT and quantum > bound and statements.ok
    detail = f"{len(assignments)} assignments, bound {bound}, witness {quantum:.15f}"
    report(7, "noncontextual bound 0 violated by 1/6, statements hold", ok, detail)


@settings(max_examples=50, deadline=None)
@given(networks(), densities())
def _property_suite(net, rho):
    assert stage_residuals(net).max < PROPERTY
    for o_lab, o in net.output_context.outcomes:
        if np.real(np.vdot(o, rho @ o)) <= 1e3 * analysis.POSTSELECTION_THRESHOLD:
            continue
        table = analysis.conditional_current_table(rho, net, o_lab)
        assert all(abs(s - 1) < PROPERTY for s in table.context_sums())
        assert analysis.continuity_residual(table, net) < PROPERTY
        for k, ctx in enumerate(net.contexts):
            for lab, s in ctx.outcomes:
                if abs(inner_product(o, s)) < EXACT:
                    assert abs(table.value(lab, k)) < PROPERTY
    for ctx in net.contexts:
        for _, s in ctx.outcomes:
            p = float(np.real(np.vdot(s, rho @ s)))
            assert abs(p - analysis.decomposed_probability(rho, net, s)) < PROPERTY


def test_criterion_8_property_suites(report):
    try:
        _property_suite()
        ok, detail = True, "50 random (network, state) pairs"
    except AssertionError as exc:
        ok, detail = False, str(exc).splitlines()[0]
    report(8, "orthonormality, weak-value sums, orthogonality, continuity, decomposition", ok, detail)


def test_criterion_9_cli_round_trip(report, capsys):
    builtin = canonical_network()
    parsed = parse_network(canonical_network_text())
    identical = all(
        a.labels == b.labels and np.array_equal(a.matrix, b.matrix) for a, b in zip(parsed.contexts, builtin.contexts)
    ) and np.array_equal(parsed.total_unitary, builtin.total_unitary)
    code = main(["verify"])
    capsys.readouterr()
    report(9, "shipped network file rebuilds the builtin; verify exits 0", identical and code == 0, f"exit {code}")
