"""Deterministic noncontextual models of a network, by exhaustive search.

A noncontextual model gives every distinct outcome a fixed value 0 or 1,
whatever context it is measured in. Each context must then contain exactly
one outcome with value 1, and two outcomes whose states are orthogonal can
never both be 1. Mixtures of such assignments cover all noncontextual
hidden-variable models, so a linear bound over the assignments bounds them
all.

The parallel path |1,1> is treated as a fourth outcome of every context.
This does not change the witness bound but does change the number of
assignments.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .hilbert import TOL, inner_product, same_up_to_phase
from .network import InterferometerNetwork

PARALLEL_CONVENTION = "parallel path included as an outcome of every context"


@dataclass(frozen=True)
class NCAssignment:
    valuation: tuple[tuple[str, int], ...]

    @classmethod
    def from_mapping(cls, values: Mapping[str, int]) -> "NCAssignment":
        return cls(tuple(sorted((k, int(v)) for k, v in values.items())))

    def __getitem__(self, label: str) -> int:
        return dict(self.valuation).get(label, 0)

    def as_dict(self) -> dict[str, int]:
        return dict(self.valuation)

    def true_labels(self) -> list[str]:
        return [k for k, v in self.valuation if v]


def exclusive_pairs(net: InterferometerNetwork) -> set[frozenset[str]]:
    """All pairs of distinct outcomes with orthogonal states.

    Pairs inside one context are orthogonal by construction; pairs from
    different contexts are found numerically.
    """
    states = {}
    for ctx in net.contexts:
        for lab, s in ctx.outcomes:
            if lab in states and not same_up_to_phase(states[lab], s):
                raise ValueError(f"path {lab!r} carries different states in different contexts")
            states.setdefault(lab, s)
    labels = sorted(states)
    return {
        frozenset((a, b))
        for a, b in itertools.combinations(labels, 2)
        if abs(inner_product(states[a], states[b])) < TOL
    }


def violations(assignment: NCAssignment, net: InterferometerNetwork, exclusive=None) -> list[str]:
    """Reasons ``assignment`` is not a valid noncontextual assignment (empty if valid)."""
    if exclusive is None:
        exclusive = exclusive_pairs(net)
    values = assignment.as_dict()
    problems = []
    for lab, v in values.items():
        if v not in (0, 1):
            problems.append(f"{lab} has value {v}, expected 0 or 1")
    unknown = set(values) - set(net.labels())
    if unknown:
        problems.append(f"unknown labels {sorted(unknown)}")
    for ctx in net.contexts:
        ones = sum(values.get(lab, 0) for lab in ctx.labels)
        if ones != 1:
            problems.append(f"context {ctx.index} has {ones} outcomes set to 1")
    for pair in sorted(exclusive, key=sorted):
        if all(values.get(lab, 0) for lab in pair):
            problems.append(f"orthogonal outcomes {sorted(pair)} both set to 1")
    return problems


def enumerate_assignments(net: InterferometerNetwork) -> list[NCAssignment]:
    """Every valid 0/1 valuation, in lexicographic order over sorted labels."""
    labels = net.labels()
    contexts = [[labels.index(lab) for lab in ctx.labels] for ctx in net.contexts]
    exclusive = [tuple(labels.index(lab) for lab in pair) for pair in exclusive_pairs(net)]
    found = []
    for bits in itertools.product((0, 1), repeat=len(labels)):
        if any(sum(bits[k] for k in ctx) != 1 for ctx in contexts):
            continue
        if any(bits[a] and bits[b] for a, b in exclusive):
            continue
        found.append(NCAssignment(tuple(zip(labels, bits))))
    return found


def witness_value(assignment: NCAssignment) -> int:
    return assignment["f_NL"] - assignment["a,0"] - assignment["0,a"]


def nc_max_witness(net_or_assignments) -> int:
    """Largest value of v(f_NL) - v(a,0) - v(0,a) over all assignments."""
    if isinstance(net_or_assignments, InterferometerNetwork):
        assignments = enumerate_assignments(net_or_assignments)
    else:
        assignments = list(net_or_assignments)
    if not assignments:
        raise ValueError("no noncontextual assignment exists")
    return max(witness_value(a) for a in assignments)


def _statement_1(a: NCAssignment) -> bool:
    # f_NL and 0,1 imply 0,a
    return not (a["f_NL"] and a["0,1"]) or bool(a["0,a"])


def _statement_2(a: NCAssignment) -> bool:
    # f_NL and 1,0 imply a,0
    return not (a["f_NL"] and a["1,0"]) or bool(a["a,0"])


def _converse_2(a: NCAssignment) -> bool:
    # f_NL and a,0 imply 1,0: not implied by the context constraints
    return not (a["f_NL"] and a["a,0"]) or bool(a["1,0"])


@dataclass
class StatementReport:
    checked: int = 0
    invalid: list[tuple[NCAssignment, list[str]]] = field(default_factory=list)
    statement_1_counterexamples: list[NCAssignment] = field(default_factory=list)
    statement_2_counterexamples: list[NCAssignment] = field(default_factory=list)
    # informational only; see _converse_2
    converse_counterexamples: list[NCAssignment] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.invalid or self.statement_1_counterexamples or self.statement_2_counterexamples)


def check_statements(assignments: Sequence[NCAssignment], net: InterferometerNetwork) -> StatementReport:
    """Check the two implications carried by an f_NL detection.

    Statement 1: f_NL with 0,1 implies 0,a. Statement 2: f_NL with 1,0
    implies a,0. Assignments that break the context constraints are
    reported as invalid and not checked further.
    """
    report = StatementReport()
    if not assignments:
        return report
    exclusive = exclusive_pairs(net)
    for a in assignments:
        problems = violations(a, net, exclusive)
        if problems:
            report.invalid.append((a, problems))
            continue
        report.checked += 1
        if not _statement_1(a):
            report.statement_1_counterexamples.append(a)
        if not _statement_2(a):
            report.statement_2_counterexamples.append(a)
        if not _converse_2(a):
            report.converse_counterexamples.append(a)
    return report
