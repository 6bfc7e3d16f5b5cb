import math

import numpy as np
import pytest

from pathcurrents.analysis import (
    SWEEP_COLUMNS,
    UndefinedPostselectionError,
    conditional_current_table,
    continuity_residual,
    decomposed_probability,
    parse_grid,
    probabilities,
    visibility_sweep,
    weak_sum_lhs,
    weak_value,
    witness,
)
from pathcurrents.hilbert import pure_density
from pathcurrents.presets import named_state, rho_eta

ETAS = [0, 0.25, 0.5, 0.75, 1]


def pure_weak_value(psi, i, o):
    """Oracle for pure inputs: <o|i><i|psi> / <o|psi>."""
    return np.vdot(o, i) * np.vdot(i, psi) / np.vdot(o, psi)


def test_fig3_probabilities(net):
    rho = rho_eta(1)
    rep = probabilities(rho, net.contexts[2])
    assert rep["f_NL"] == pytest.approx(2 / 3, abs=1e-12)
    assert rep["N1"] == pytest.approx(1 / 12, abs=1e-12)
    assert rep["b,0"] == pytest.approx(1 / 4, abs=1e-12)
    assert rep["1,1"] == pytest.approx(0, abs=1e-12)
    assert rep.total == pytest.approx(1, abs=1e-12)


@pytest.mark.parametrize("eta", ETAS)
def test_input_probabilities_are_half(net, eta):
    rep = probabilities(rho_eta(eta), net.contexts[0])
    assert rep["0,1"] == pytest.approx(0.5, abs=1e-12)
    assert rep["1,0"] == pytest.approx(0.5, abs=1e-12)


def test_incoherent_fnl(net):
    assert probabilities(rho_eta(0), net.contexts[3])["f_NL"] == pytest.approx(1 / 3, abs=1e-12)


def test_witness_values():
    assert witness(rho_eta(1)).witness == pytest.approx(1 / 6, abs=1e-12)
    assert witness(rho_eta(0.5)).witness == pytest.approx(0, abs=1e-12)
    # oracle: P(f_NL) = 1/3 at eta = 0, minus 1/4 + 1/4
    assert witness(rho_eta(0)).witness == pytest.approx(1 / 3 - 1 / 2, abs=1e-12)
    rec = witness(rho_eta(1))
    assert rec.witness == rec.p_fnl - rec.p_a0 - rec.p_0a
    assert rec.violates and not witness(rho_eta(0)).violates


def test_weak_value_n1_given_10_pure_oracle():
    psi = named_state("Phi_max")
    i, o = named_state("N1"), named_state("1,0")
    expected = pure_weak_value(psi, i, o)
    assert expected == pytest.approx(-1 / 6, abs=1e-12)
    assert weak_value(rho_eta(1), i, o) == pytest.approx(expected, abs=1e-12)


def test_weak_value_orthogonal_is_zero():
    for eta in ETAS:
        assert weak_value(rho_eta(eta), named_state("0,1"), named_state("1,0")) == 0


@pytest.mark.parametrize("eta", ETAS)
def test_weak_value_closed_form(eta):
    w = weak_value(rho_eta(eta), named_state("N1"), named_state("1,0"))
    assert w.real == pytest.approx((0.5 - eta) / 3, abs=1e-12)
    assert abs(w.imag) < 1e-12


def test_weak_value_undefined_postselection():
    with pytest.raises(UndefinedPostselectionError):
        weak_value(rho_eta(0), named_state("N1"), named_state("1,1"))


def test_tables_match_continuity_relations(net):
    rho = rho_eta(1)
    t10 = conditional_current_table(rho, net, "1,0")
    assert t10.value("f_NL") + t10.value("N1") == pytest.approx(t10.value("a,0"), abs=1e-12)
    assert t10.postselection_probability == pytest.approx(0.5, abs=1e-12)
    t01 = conditional_current_table(rho, net, "0,1")
    assert t01.value("f_NL") + t01.value("N2") == pytest.approx(t01.value("0,a"), abs=1e-12)
    for t in (t10, t01):
        for s in t.context_sums():
            assert s == pytest.approx(1, abs=1e-12)


def test_fig4_values_against_pure_oracle(net):
    psi = named_state("Phi_max")
    for o_lab in ("0,1", "1,0"):
        table = conditional_current_table(rho_eta(1), net, o_lab)
        o = net.output_context.state(o_lab)
        for k, ctx in enumerate(net.contexts):
            for lab, s in ctx.outcomes:
                assert table.value(lab, k) == pytest.approx(pure_weak_value(psi, s, o), abs=1e-12)
    t = conditional_current_table(rho_eta(1), net, "0,1")
    assert t.value("N2").real == pytest.approx(-1 / 6, abs=1e-12)


def test_table_rejects_unknown_or_zero_output(net):
    with pytest.raises(KeyError):
        conditional_current_table(rho_eta(1), net, "f_NL")
    with pytest.raises(UndefinedPostselectionError):
        conditional_current_table(rho_eta(1), net, "1,1")


def test_continuity_residual(net):
    t = conditional_current_table(rho_eta(1), net, "1,0")
    assert continuity_residual(t, net) < 1e-12
    rows = [list(r) for r in t.contexts]
    rows[2][0] = (rows[2][0][0], rows[2][0][1] + 1e-3)
    corrupted = type(t)(t.postselection, t.postselection_probability, tuple(tuple(r) for r in rows))
    assert continuity_residual(corrupted, net) > 1e-10


def test_weak_sum_lhs():
    assert weak_sum_lhs(rho_eta(1)) == pytest.approx(-1 / 3, abs=1e-12)
    assert weak_sum_lhs(rho_eta(0.5)) == pytest.approx(0, abs=1e-12)
    assert weak_sum_lhs(rho_eta(0)) == pytest.approx(1 / 3, abs=1e-12)


def test_decomposed_probability(net):
    rho = rho_eta(0.8)
    for lab in net.labels():
        s = net.state(lab)
        p = np.real(np.vdot(s, rho @ s))
        assert decomposed_probability(rho, net, s) == pytest.approx(p, abs=1e-12)


def test_sweep_small_grid():
    recs = visibility_sweep([0, 0.5, 1])
    assert [r.p_fnl for r in recs] == pytest.approx([1 / 3, 1 / 2, 2 / 3], abs=1e-12)
    for r in recs:
        assert r.p_n1 == pytest.approx(0.75 - r.p_fnl, abs=1e-12)
        assert r.p_n2 == pytest.approx(0.75 - r.p_fnl, abs=1e-12)
    assert recs[0].p_n1 == pytest.approx(5 / 12, abs=1e-12)
    with pytest.raises(ValueError):
        visibility_sweep([0.5, 1.5])


def test_sweep_sign_change_at_half():
    recs = visibility_sweep("0:1:101")
    assert len(recs) == 101
    assert recs[50].eta == 0.5
    for r in recs:
        if r.eta < 0.5:
            assert r.witness < 0
        elif r.eta > 0.5:
            assert r.witness > 0
        else:
            assert abs(r.witness) < 1e-12


def test_parse_grid():
    assert parse_grid("0:1:3") == [0.0, 0.5, 1.0]
    assert parse_grid("1/4:3/4:3") == [0.25, 0.5, 0.75]
    assert parse_grid("0.3:0.3:1") == [0.3]
    for bad in ("0:1", "0:1:x", "0:1:0", "a:1:3"):
        with pytest.raises(ValueError):
            parse_grid(bad)


def test_witness_record_nan_for_missing_output():
    rec = witness(pure_density(named_state("1,1")))
    assert math.isnan(rec.w_n1_given_10) and math.isnan(rec.w_n2_given_01)
    assert rec.witness == 0


def test_sweep_columns_order():
    assert SWEEP_COLUMNS == (
        "eta", "p_fnl", "p_a0", "p_0a", "witness", "w_n1_given_10", "w_n2_given_01", "p_n1", "p_n2",
    )
