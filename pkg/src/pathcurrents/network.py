"""Beam-splitter networks over labeled paths.

A network starts from the product basis, one path per basis vector, and
mixes two paths at a time. After every stage the current set of paths is
an orthonormal basis of the 4-dimensional space (a measurement context).

Every stage uses the same real convention. With reflectivity ``R`` and
input paths ``(x, y)`` the two output paths are::

    first  = sqrt(R) * x - sqrt(1 - R) * y
    second = sqrt(1 - R) * x + sqrt(R) * y

and each output takes over the rail (column slot) of the input with the
same position.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

from .hilbert import DIM, TOL, as_operator, unitarity_residual

DEFAULT_PATHS = ("0,0", "0,1", "1,0")
DEFAULT_PARALLEL = "1,1"


class NetworkError(ValueError):
    pass


class NetworkFormatError(NetworkError):
    """Malformed network-definition file; ``where`` names the line or field."""

    def __init__(self, message: str, where: str | None = None):
        self.where = where
        super().__init__(f"{where}: {message}" if where else message)


def parse_fraction(value) -> Fraction:
    """Exact rational from an int, float, decimal string or ``"p/q"`` string."""
    if isinstance(value, bool):
        raise ValueError(f"not a number: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"not a finite number: {value!r}")
        return Fraction(str(value))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"not a number or fraction: {value!r}") from None
    raise ValueError(f"not a number: {value!r}")


def beam_splitter_unitary(reflectivity) -> np.ndarray:
    """Real orthogonal 2x2 block; row ``k`` gives output ``k`` in terms of the inputs."""
    r = float(reflectivity)
    if not 0.0 <= r <= 1.0:
        raise ValueError(f"reflectivity must lie in [0, 1], got {reflectivity!r}")
    t = math.sqrt(1.0 - r)
    s = math.sqrt(r)
    return np.array([[s, -t], [t, s]])


@dataclass(frozen=True)
class Stage:
    index: int
    inputs: tuple[str, str]
    outputs: tuple[str, str]
    reflectivity: float

    @property
    def block(self) -> np.ndarray:
        return beam_splitter_unitary(self.reflectivity)


@dataclass(frozen=True, eq=False)
class Context:
    """An orthonormal basis of labeled outcomes.

    ``matrix`` holds the outcome states as columns, in rail order.
    """

    index: int
    labels: tuple[str, ...]
    matrix: np.ndarray

    def __contains__(self, label: str) -> bool:
        return label in self.labels

    def __len__(self) -> int:
        return len(self.labels)

    def slot(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"path {label!r} is not in context {self.index}") from None

    def state(self, label: str) -> np.ndarray:
        return self.matrix[:, self.slot(label)]

    @property
    def outcomes(self) -> list[tuple[str, np.ndarray]]:
        return [(label, self.matrix[:, k]) for k, label in enumerate(self.labels)]

    def orthonormality_residual(self) -> float:
        return unitarity_residual(self.matrix)


@dataclass(frozen=True, eq=False)
class InterferometerNetwork:
    stages: tuple[Stage, ...]
    contexts: tuple[Context, ...]
    total_unitary: np.ndarray
    paths: tuple[str, ...]
    parallel: str

    @property
    def input_context(self) -> Context:
        return self.contexts[0]

    @property
    def output_context(self) -> Context:
        return self.contexts[-1]

    def labels(self) -> list[str]:
        """Distinct path labels over all contexts, sorted."""
        return sorted({label for ctx in self.contexts for label in ctx.labels})

    def state(self, label: str) -> np.ndarray:
        """State of ``label`` from the first context that contains it."""
        for ctx in self.contexts:
            if label in ctx:
                return ctx.state(label)
        raise KeyError(f"unknown path {label!r}")

    def stage_descriptions(self) -> list[dict]:
        return [
            {"inputs": list(s.inputs), "outputs": list(s.outputs), "reflectivity": s.reflectivity}
            for s in self.stages
        ]


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex)
    a.setflags(write=False)
    return a


def _as_stage(desc, index: int) -> Stage:
    if isinstance(desc, Stage):
        return Stage(index, tuple(desc.inputs), tuple(desc.outputs), float(desc.reflectivity))
    try:
        inputs = tuple(desc["inputs"])
        outputs = tuple(desc["outputs"])
        refl = desc["reflectivity"]
    except (KeyError, TypeError) as exc:
        raise NetworkError(f"stage {index}: missing field {exc}") from None
    if len(inputs) != 2 or len(outputs) != 2:
        raise NetworkError(f"stage {index}: a stage needs exactly two inputs and two outputs")
    r = parse_fraction(refl)
    if not 0 <= r <= 1:
        raise NetworkError(f"stage {index}: reflectivity {refl!r} outside [0, 1]")
    phase = parse_fraction(desc.get("phase", 0)) if isinstance(desc, Mapping) else 0
    if phase != 0:
        raise NetworkError(f"stage {index}: phase shifts are not supported (got {desc['phase']!r})")
    return Stage(index, inputs, outputs, float(r))


def build_network(
    stages: Iterable = (),
    paths: Sequence[str] = DEFAULT_PATHS,
    parallel: str = DEFAULT_PARALLEL,
) -> InterferometerNetwork:
    """Derive every context of a stage sequence and the total unitary.

    ``paths`` and ``parallel`` label the product basis vectors in order;
    the parallel path never takes part in a stage. Stages may be
    ``Stage`` objects or mappings with ``inputs``, ``outputs`` and
    ``reflectivity`` (plus an optional ``phase`` that must be zero).
    """
    labels = tuple(paths) + (parallel,)
    if len(labels) != DIM:
        raise NetworkError(f"need {DIM - 1} interferometer paths plus the parallel path, got {len(labels)} labels")
    if len(set(labels)) != DIM:
        raise NetworkError(f"duplicate path labels in {list(labels)}")

    matrix = np.eye(DIM, dtype=complex)
    contexts = [Context(0, labels, _frozen(matrix))]
    built = []
    for k, desc in enumerate(stages, start=1):
        stage = _as_stage(desc, k)
        i1, i2 = stage.inputs
        for lab in stage.inputs:
            if lab not in labels:
                raise NetworkError(f"stage {k}: unknown input path {lab!r}; context {k - 1} has {list(labels)}")
        if i1 == i2:
            raise NetworkError(f"stage {k}: a path cannot interfere with itself")
        if parallel in stage.inputs:
            raise NetworkError(f"stage {k}: the parallel path {parallel!r} cannot enter a beam splitter")
        o1, o2 = stage.outputs
        untouched = set(labels) - {i1, i2}
        if o1 == o2 or {o1, o2} & untouched:
            raise NetworkError(f"stage {k}: output labels {[o1, o2]} clash with the other paths")

        s1, s2 = labels.index(i1), labels.index(i2)
        matrix = matrix.copy()
        matrix[:, [s1, s2]] = matrix[:, [s1, s2]] @ stage.block.T
        new_labels = list(labels)
        new_labels[s1], new_labels[s2] = o1, o2
        labels = tuple(new_labels)

        ctx = Context(k, labels, _frozen(matrix))
        if ctx.orthonormality_residual() > TOL:
            raise NetworkError(f"stage {k}: context {k} is not orthonormal")
        contexts.append(ctx)
        built.append(stage)

    return InterferometerNetwork(
        stages=tuple(built),
        contexts=tuple(contexts),
        total_unitary=as_operator(matrix),
        paths=tuple(paths),
        parallel=parallel,
    )


def context_basis(net: InterferometerNetwork, k: int) -> Context:
    if not 0 <= k < len(net.contexts):
        raise IndexError(f"context index {k} out of range 0..{len(net.contexts) - 1}")
    return net.contexts[k]


@dataclass(frozen=True)
class StageResiduals:
    block_unitarity: tuple[float, ...]
    context_orthonormality: tuple[float, ...]
    span_mismatch: tuple[float, ...]
    bystander_drift: tuple[float, ...]

    @property
    def max(self) -> float:
        values = (
            self.block_unitarity + self.context_orthonormality + self.span_mismatch + self.bystander_drift
        )
        return max(values, default=0.0)

    @property
    def ok(self) -> bool:
        return self.max <= TOL


def stage_residuals(net: InterferometerNetwork) -> StageResiduals:
    """Recompute consistency residuals from the stored contexts.

    For each stage: unitarity of its 2x2 block, projector mismatch between
    the span of its input pair and its output pair, and drift of the paths
    it should leave alone. Every context is checked for orthonormality.
    """
    blocks, spans, drift = [], [], []
    for stage in net.stages:
        before = net.contexts[stage.index - 1]
        after = net.contexts[stage.index]
        blocks.append(unitarity_residual(stage.block))
        p_in = sum(np.outer(before.state(x), before.state(x).conj()) for x in stage.inputs)
        p_out = sum(np.outer(after.state(x), after.state(x).conj()) for x in stage.outputs)
        spans.append(float(np.max(np.abs(p_in - p_out))))
        others = [lab for lab in before.labels if lab not in stage.inputs]
        d = 0.0
        for lab in others:
            if lab not in after:
                d = math.inf
                break
            d = max(d, float(np.max(np.abs(before.state(lab) - after.state(lab)))))
        drift.append(d)
    ortho = tuple(ctx.orthonormality_residual() for ctx in net.contexts)
    return StageResiduals(tuple(blocks), ortho, tuple(spans), tuple(drift))


# -- network-definition files ------------------------------------------------


def _field(obj, key, where):
    if not isinstance(obj, dict):
        raise NetworkFormatError("expected an object", where)
    if key not in obj:
        raise NetworkFormatError(f"missing field {key!r}", where)
    return obj[key]


def _label_list(value, where, n=None):
    if not isinstance(value, list) or not all(isinstance(x, str) for x in value):
        raise NetworkFormatError("expected a list of path labels (strings)", where)
    if n is not None and len(value) != n:
        raise NetworkFormatError(f"expected {n} labels, got {len(value)}", where)
    return value


def parse_network(text: str) -> InterferometerNetwork:
    """Build a network from the JSON definition format.

    ``{"paths": [...], "parallel": label, "stages": [{"inputs": [a, b],
    "outputs": [c, d], "reflectivity": r, "phase": 0}, ...]}`` where ``r``
    is a number or a fraction string such as ``"1/3"``.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise NetworkFormatError(exc.msg, f"line {exc.lineno}, column {exc.colno}") from None

    paths = _label_list(_field(doc, "paths", "<root>"), "paths")
    parallel = _field(doc, "parallel", "<root>")
    if not isinstance(parallel, str):
        raise NetworkFormatError("expected a path label (string)", "parallel")
    raw_stages = _field(doc, "stages", "<root>")
    if not isinstance(raw_stages, list):
        raise NetworkFormatError("expected a list of stages", "stages")

    stages = []
    for k, raw in enumerate(raw_stages):
        where = f"stages[{k}]"
        inputs = _label_list(_field(raw, "inputs", where), f"{where}.inputs", 2)
        outputs = _label_list(_field(raw, "outputs", where), f"{where}.outputs", 2)
        try:
            refl = parse_fraction(_field(raw, "reflectivity", where))
        except ValueError as exc:
            raise NetworkFormatError(str(exc), f"{where}.reflectivity") from None
        if not 0 <= refl <= 1:
            raise NetworkFormatError(f"reflectivity {refl} outside [0, 1]", f"{where}.reflectivity")
        try:
            phase = parse_fraction(raw.get("phase", 0))
        except ValueError as exc:
            raise NetworkFormatError(str(exc), f"{where}.phase") from None
        if phase != 0:
            raise NetworkFormatError("nonzero phase shifts are not supported", f"{where}.phase")
        stages.append({"inputs": inputs, "outputs": outputs, "reflectivity": refl})

    try:
        return build_network(stages, paths=paths, parallel=parallel)
    except NetworkFormatError:
        raise
    except NetworkError as exc:
        raise NetworkFormatError(str(exc), "stages") from None


def load_network(path) -> InterferometerNetwork:
    return parse_network(Path(path).read_text())


def network_to_json(net: InterferometerNetwork, reflectivities: Sequence[str] | None = None) -> str:
    """Serialize ``net``; pass exact ``reflectivities`` strings to avoid float output."""
    stages = net.stage_descriptions()
    if reflectivities is not None:
        for stage, r in zip(stages, reflectivities, strict=True):
            stage["reflectivity"] = r
    doc = {"paths": list(net.paths), "parallel": net.parallel, "stages": stages}
    return json.dumps(doc, indent=2) + "\n"
