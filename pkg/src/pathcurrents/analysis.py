"""Outcome probabilities, weak values and the noncontextual witness.

The weak value of path ``i`` given a detected output ``o`` is

    W(i|o) = <o|i><i|rho|o> / <o|rho|o>

and reads as the conditional probability current through ``i`` for
particles that leave at ``o``. Its sum over any complete context is 1 and,
at every beam splitter, the currents entering equal the currents leaving.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .hilbert import TOL, as_state, born_probability, check_density
from .network import Context, InterferometerNetwork, parse_fraction
from .presets import named_state, rho_eta

POSTSELECTION_THRESHOLD = 1e-12


class UndefinedPostselectionError(ValueError):
    """The postselected outcome has (numerically) zero probability."""


@dataclass(frozen=True)
class ProbabilityReport:
    context_index: int
    entries: tuple[tuple[str, float], ...]

    def __getitem__(self, label: str) -> float:
        for lab, p in self.entries:
            if lab == label:
                return p
        raise KeyError(label)

    @property
    def total(self) -> float:
        return math.fsum(p for _, p in self.entries)


def probabilities(rho, ctx: Context) -> ProbabilityReport:
    rho = check_density(rho)
    return ProbabilityReport(ctx.index, tuple((lab, born_probability(rho, s)) for lab, s in ctx.outcomes))


def all_probabilities(rho, net: InterferometerNetwork) -> list[ProbabilityReport]:
    return [probabilities(rho, ctx) for ctx in net.contexts]


def weak_value(rho, i, o) -> complex:
    rho = check_density(rho)
    i = as_state(i)
    o = as_state(o)
    p_o = float(np.real(np.vdot(o, rho @ o)))
    if p_o <= POSTSELECTION_THRESHOLD:
        raise UndefinedPostselectionError(
            f"postselected outcome has probability {p_o:.3e}; the weak value is undefined"
        )
    return complex(np.vdot(o, i) * np.vdot(i, rho @ o) / p_o)


@dataclass(frozen=True)
class WeakValueTable:
    """Conditional currents through every path of every context for one output."""

    postselection: str
    postselection_probability: float
    contexts: tuple[tuple[tuple[str, complex], ...], ...]

    def value(self, label: str, context: int | None = None) -> complex:
        """Weak value of ``label``, from ``context`` or the first context holding it."""
        rows = self.contexts if context is None else [self.contexts[context]]
        for row in rows:
            for lab, w in row:
                if lab == label:
                    return w
        raise KeyError(label)

    def context_sums(self) -> list[complex]:
        return [sum((w for _, w in row), 0j) for row in self.contexts]

    def labels(self) -> list[str]:
        seen = {}
        for row in self.contexts:
            for lab, _ in row:
                seen.setdefault(lab, None)
        return list(seen)


def conditional_current_table(rho, net: InterferometerNetwork, postselect: str) -> WeakValueTable:
    out = net.output_context
    if postselect not in out:
        raise KeyError(f"{postselect!r} is not an output path; outputs are {list(out.labels)}")
    rho = check_density(rho)
    o = out.state(postselect)
    p_o = float(np.real(np.vdot(o, rho @ o)))
    rows = tuple(
        tuple((lab, weak_value(rho, s, o)) for lab, s in ctx.outcomes) for ctx in net.contexts
    )
    return WeakValueTable(postselect, p_o, rows)


def continuity_residual(table: WeakValueTable, net: InterferometerNetwork) -> float:
    """Largest mismatch between currents entering and leaving any beam splitter."""
    worst = 0.0
    for stage in net.stages:
        w_in = sum(table.value(lab, stage.index - 1) for lab in stage.inputs)
        w_out = sum(table.value(lab, stage.index) for lab in stage.outputs)
        worst = max(worst, abs(w_in - w_out))
    return worst


def decomposed_probability(rho, net: InterferometerNetwork, i) -> float:
    """sum_o P(o) Re W(i|o) over the output context.

    Outputs with zero probability contribute nothing (rho|o> = 0 there),
    so they are skipped instead of evaluating an undefined weak value.
    """
    rho = check_density(rho)
    total = []
    for _, o in net.output_context.outcomes:
        p_o = float(np.real(np.vdot(o, rho @ o)))
        if p_o <= POSTSELECTION_THRESHOLD:
            continue
        total.append(p_o * weak_value(rho, i, o).real)
    return math.fsum(total)


@dataclass(frozen=True)
class WitnessRecord:
    """P(f_NL) - P(a,0) - P(0,a) together with the currents that explain it.

    Weak values are NaN when the corresponding output never occurs.
    """

    eta: float | None
    p_fnl: float
    p_a0: float
    p_0a: float
    witness: float
    w_n1_given_10: float
    w_n2_given_01: float
    p_n1: float
    p_n2: float

    @property
    def violates(self) -> bool:
        return self.witness > TOL


SWEEP_COLUMNS = ("eta", "p_fnl", "p_a0", "p_0a", "witness", "w_n1_given_10", "w_n2_given_01", "p_n1", "p_n2")


def _real_weak_value(rho, i_label, o_label) -> float:
    try:
        return weak_value(rho, named_state(i_label), named_state(o_label)).real
    except UndefinedPostselectionError:
        return math.nan


def witness(rho, eta: float | None = None) -> WitnessRecord:
    rho = check_density(rho)
    p = {lab: born_probability(rho, named_state(lab)) for lab in ("f_NL", "a,0", "0,a", "N1", "N2")}
    return WitnessRecord(
        eta=eta,
        p_fnl=p["f_NL"],
        p_a0=p["a,0"],
        p_0a=p["0,a"],
        witness=p["f_NL"] - p["a,0"] - p["0,a"],
        w_n1_given_10=_real_weak_value(rho, "N1", "1,0"),
        w_n2_given_01=_real_weak_value(rho, "N2", "0,1"),
        p_n1=p["N1"],
        p_n2=p["N2"],
    )


def weak_sum_lhs(rho) -> float:
    """W(N2|0,1) + W(N1|1,0); negative values rule out positive currents.

    Only the real part is returned. Both terms are real for the
    visibility family; use ``weak_value`` to inspect general states.
    """
    total = weak_value(rho, named_state("N2"), named_state("0,1")) + weak_value(
        rho, named_state("N1"), named_state("1,0")
    )
    return total.real


def parse_grid(spec: str) -> list[float]:
    """``"start:stop:count"`` -> evenly spaced values, endpoints included."""
    parts = spec.split(":")
    if len(parts) != 3:
        raise ValueError(f"grid must look like start:stop:count, got {spec!r}")
    start, stop = (parse_fraction(x) for x in parts[:2])
    try:
        count = int(parts[2])
    except ValueError:
        raise ValueError(f"grid count must be an integer, got {parts[2]!r}") from None
    if count < 1:
        raise ValueError("grid count must be at least 1")
    if count == 1:
        return [float(start)]
    # exact rational steps keep points like 1/2 exact on a 101-point grid
    return [float(start + (stop - start) * k / (count - 1)) for k in range(count)]


DEFAULT_GRID = "0:1:101"


def visibility_sweep(etas: Iterable[float] | str = DEFAULT_GRID) -> list[WitnessRecord]:
    if isinstance(etas, str):
        etas = parse_grid(etas)
    etas = [float(parse_fraction(e)) for e in etas]
    for e in etas:
        if not 0.0 <= e <= 1.0:
            raise ValueError(f"visibility {e!r} outside [0, 1]")
    return [witness(rho_eta(e), eta=e) for e in etas]


def records_as_rows(records: Sequence[WitnessRecord]) -> list[list[float]]:
    return [[getattr(r, c) for c in SWEEP_COLUMNS] for r in records]
