"""Built-in simulation suites."""

import logging
from typing import Dict, List

import numpy as np

from ..errors import InputError
from ..tabular.rng import RngStream, Stream, derive_rng
from .scm import (
    EdgeFunction,
    EdgeKind,
    NodeSpec,
    NoiseLaw,
    ResidualOracle,
    ScmSpec,
    draw_noise,
    evaluate_node,
    observed_subsets,
)

logger = logging.getLogger(__name__)

PILOT_ROWS = 10_000
FIG2_PREDICTORS = ["X1", "X2", "X3", "X4", "X5"]
FIG2_EDGES = [("X1", "X2"), ("X2", "X3"), ("X3", "Y"), ("X1", "Y"), ("Y", "X4")]
FIG2_ROOTS = {"X1", "X5"}
FIG2_NOISE_LAWS = [NoiseLaw.NORMAL, NoiseLaw.UNIFORM, NoiseLaw.LAPLACE] * 2

ALPHA_MIN = 0.2
ALPHA_MAX = 2.0
BETA_MIN = 0.5
BETA_MAX = 2.0

LSNM_PHASE = np.pi / 2
LSNM_PILOT_SEED = 0


def _draw_alpha(generator: np.random.Generator) -> float:
    sign = 1.0 if generator.random() < 0.5 else -1.0
    return sign * generator.uniform(ALPHA_MIN, ALPHA_MAX)


def random_power_edge(generator: np.random.Generator) -> EdgeFunction:
    """``a1 |x|^b1 sign(x) + a2 |x|^b2`` with |a| in [0.2, 2] and b in [0.5, 2]."""
    return EdgeFunction(
        kind=EdgeKind.POWER,
        a1=_draw_alpha(generator),
        b1=generator.uniform(BETA_MIN, BETA_MAX),
        a2=_draw_alpha(generator),
        b2=generator.uniform(BETA_MIN, BETA_MAX),
    )


def standardize_edges(spec: ScmSpec, rng: RngStream, n: int = PILOT_ROWS) -> ScmSpec:
    """Center and scale every edge function to unit variance on a pilot sample.

    Nodes are visited in topological order so each edge is standardized
    against the already standardized values of its parent.
    """
    index = {node.name: k for k, node in enumerate(spec.nodes)}
    values: Dict[str, np.ndarray] = {}
    updated: Dict[str, NodeSpec] = {}
    for name in spec.topological_order():
        node = spec.node(name)
        parents = {}
        for parent, fn in node.parents.items():
            raw = fn.raw(values[parent])
            sd = float(np.std(raw))
            parents[parent] = fn.model_copy(
                update={"center": float(np.mean(raw)), "scale": sd if sd > 0 else 1.0}
            )
        node = node.model_copy(update={"parents": parents})
        noise = draw_noise(node.noise, node.noise_variance, n, rng.child(index[name]).generator())
        values[name] = evaluate_node(node, values, noise)
        updated[name] = node
    return spec.model_copy(update={"nodes": [updated[node.name] for node in spec.nodes]})


def fig2_mechanisms(seed: int) -> ScmSpec:
    """Six-node additive DAG with random power edges and mixed noise laws."""
    params = derive_rng(seed, (Stream.SIMULATION, 0)).generator()
    names = FIG2_PREDICTORS + ["Y"]
    laws = [FIG2_NOISE_LAWS[i] for i in params.permutation(len(FIG2_NOISE_LAWS))]
    parents: Dict[str, Dict[str, EdgeFunction]] = {name: {} for name in names}
    for source, sink in FIG2_EDGES:
        parents[sink][source] = random_power_edge(params)
    nodes = [
        NodeSpec(
            name=name,
            parents=parents[name],
            noise=laws[k],
            noise_variance=1.0 if name in FIG2_ROOTS else 0.25,
        )
        for k, name in enumerate(names)
    ]
    spec = ScmSpec(name="fig2", nodes=nodes, observed=list(FIG2_PREDICTORS), target="Y")
    return standardize_edges(spec, derive_rng(seed, (Stream.SIMULATION, 1)))


def fig2_suite(seed: int) -> List[ScmSpec]:
    """All ten observed subsets of size three of the six-node benchmark."""
    base = fig2_mechanisms(seed)
    suite = []
    for observed in observed_subsets(FIG2_PREDICTORS, 3):
        label = "".join(name[1:] for name in observed)
        suite.append(base.model_copy(update={"observed": observed, "name": f"fig2-M{label}"}))
    return suite


def lsnm_suite() -> ScmSpec:
    """Hidden confounder entering the target multiplicatively.

    H ~ N(0, 1), X1 = s(cos H) + N(0, 1/4), X2 = s(X1) + N(0, 1),
    Y = (0.5 + |X2|) * H, where ``s`` standardizes an edge on a fixed pilot
    sample. The cosine keeps E[H | X1] = 0 while the shape of H given X1
    moves from unimodal to two-point. Only X2 is well specified.
    """
    nodes = [
        NodeSpec(name="H", noise=NoiseLaw.NORMAL, noise_variance=1.0),
        NodeSpec(
            name="X1",
            parents={"H": EdgeFunction(kind=EdgeKind.SINE, a1=1.0, b1=1.0, a2=LSNM_PHASE)},
            noise_variance=0.25,
        ),
        NodeSpec(name="X2", parents={"X1": EdgeFunction(kind=EdgeKind.LINEAR)}, noise_variance=1.0),
        NodeSpec(
            name="Y",
            scale_parents={"X2": EdgeFunction(kind=EdgeKind.ABS_AFFINE, a1=1.0, a2=0.5)},
            carriers=["H"],
            noise_variance=0.0,
        ),
    ]
    spec = ScmSpec(
        name="lsnm",
        nodes=nodes,
        observed=["X1", "X2"],
        target="Y",
        residual_oracle=ResidualOracle.LSNM_POSTERIOR,
    )
    return standardize_edges(spec, derive_rng(LSNM_PILOT_SEED, (Stream.SIMULATION, 4)))


def fig1_left() -> ScmSpec:
    """Hidden confounder of X1 and Y; X1 -> X2 -> Y.

    H ~ U(-sqrt 3, sqrt 3), X1 = H + H^2 / 2 + N(0, 1/4),
    X2 = X1 + Laplace(var 1), Y = 2 H + X2 + U(var 1/4).
    """
    linear = EdgeFunction(kind=EdgeKind.LINEAR)
    nodes = [
        NodeSpec(name="H", noise=NoiseLaw.UNIFORM),
        NodeSpec(
            name="X1",
            parents={"H": EdgeFunction(kind=EdgeKind.POWER, a1=1.0, b1=1.0, a2=0.5, b2=2.0)},
            noise_variance=0.25,
        ),
        NodeSpec(name="X2", parents={"X1": linear}, noise=NoiseLaw.LAPLACE, noise_variance=1.0),
        NodeSpec(
            name="Y",
            parents={"H": EdgeFunction(kind=EdgeKind.LINEAR, a1=2.0), "X2": linear},
            noise=NoiseLaw.UNIFORM,
            noise_variance=0.25,
        ),
    ]
    return ScmSpec(name="fig1-left", nodes=nodes, observed=["X1", "X2"], target="Y")


def fig1_right() -> ScmSpec:
    """Hidden mediator between X2 and Y; X1 also acts on Y directly."""
    linear = EdgeFunction(kind=EdgeKind.LINEAR)
    nodes = [
        NodeSpec(name="X1"),
        NodeSpec(name="X2", parents={"X1": linear}, noise_variance=0.25),
        NodeSpec(name="H", parents={"X2": linear}, noise_variance=0.25),
        NodeSpec(name="Y", parents={"H": linear, "X1": linear}, noise_variance=0.25),
    ]
    return ScmSpec(name="fig1-right", nodes=nodes, observed=["X1", "X2"], target="Y")


SUITE_NAMES = ["fig2", "lsnm", "fig1-left", "fig1-right"]


def build_suite(name: str, seed: int) -> List[ScmSpec]:
    """Specs of a named suite for one simulation run."""
    if name == "fig2":
        return fig2_suite(seed)
    if name == "lsnm":
        return [lsnm_suite()]
    if name == "fig1-left":
        return [fig1_left()]
    if name == "fig1-right":
        return [fig1_right()]
    raise InputError(f"unknown suite {name}; expected one of {SUITE_NAMES}")
