"""Structural causal models: specification and ancestral sampling.

A node's value is

    sum of location edge functions of its parents
    + product of scale edge functions of its scale parents
      * (sum of its carrier parents + its own noise)

Empty sums are 0 and the empty product is 1, so a plain additive node only
uses ``parents`` and ``noise``.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from pathlib import Path
from typing import Dict, List, Tuple, Union

import networkx as nx
import numpy as np
from pydantic import BaseModel, Field, model_validator
from scipy.special import logsumexp

from ..errors import InputError
from ..tabular.dataset import Dataset
from ..tabular.rng import RngStream
from .graph import check_acyclic

logger = logging.getLogger(__name__)

POSTERIOR_GRID = 1601
POSTERIOR_HALF_WIDTH = 8.0
POSTERIOR_CHUNK = 2048


class EdgeKind(str, Enum):
    POWER = "power"
    LINEAR = "linear"
    SINE = "sine"
    ABS_AFFINE = "abs_affine"


class NoiseLaw(str, Enum):
    NORMAL = "normal"
    UNIFORM = "uniform"
    LAPLACE = "laplace"


class ResidualOracle(str, Enum):
    STRUCTURAL = "structural"
    LSNM_POSTERIOR = "lsnm_posterior"


class EdgeFunction(BaseModel):
    """Parametric edge function, standardized as ``(raw(x) - center) / scale``.

    power:      a1 * |x|^b1 * sign(x) + a2 * |x|^b2
    linear:     a1 * x
    sine:       a1 * sin(b1 * x + a2)
    abs_affine: a2 + a1 * |x|
    """

    kind: EdgeKind = Field(default=EdgeKind.LINEAR)
    a1: float = Field(default=1.0)
    b1: float = Field(default=1.0, gt=0.0)
    a2: float = Field(default=0.0)
    b2: float = Field(default=1.0, gt=0.0)
    center: float = Field(default=0.0)
    scale: float = Field(default=1.0, gt=0.0)

    def raw(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if self.kind is EdgeKind.POWER:
            ax = np.abs(x)
            return self.a1 * ax**self.b1 * np.sign(x) + self.a2 * ax**self.b2
        if self.kind is EdgeKind.SINE:
            return self.a1 * np.sin(self.b1 * x + self.a2)
        if self.kind is EdgeKind.ABS_AFFINE:
            return self.a2 + self.a1 * np.abs(x)
        return self.a1 * x

    def __call__(self, x: np.ndarray) -> np.ndarray:
        return (self.raw(x) - self.center) / self.scale


class NodeSpec(BaseModel):
    name: str
    parents: Dict[str, EdgeFunction] = Field(default_factory=dict)
    scale_parents: Dict[str, EdgeFunction] = Field(default_factory=dict)
    carriers: List[str] = Field(default_factory=list)
    noise: NoiseLaw = Field(default=NoiseLaw.NORMAL)
    noise_variance: float = Field(default=1.0, ge=0.0)
    separable: bool = Field(default=True)

    def all_parents(self) -> List[str]:
        seen: List[str] = []
        for name in list(self.parents) + list(self.scale_parents) + list(self.carriers):
            if name not in seen:
                seen.append(name)
        return seen


class ScmSpec(BaseModel):
    """DAG with per-node mechanisms, an observed predictor set and a target."""

    name: str = Field(default="custom")
    nodes: List[NodeSpec]
    observed: List[str]
    target: str
    residual_oracle: ResidualOracle = Field(default=ResidualOracle.STRUCTURAL)

    @model_validator(mode="after")
    def validate_structure(self) -> "ScmSpec":
        names = [node.name for node in self.nodes]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate node names: {names}")
        known = set(names)
        for node in self.nodes:
            missing = [p for p in node.all_parents() if p not in known]
            if missing:
                raise ValueError(f"node {node.name} references unknown parents {missing}")
            if node.name in node.all_parents():
                raise ValueError(f"node {node.name} is its own parent: not acyclic")
        if self.target not in known:
            raise ValueError(f"unknown target {self.target}")
        if self.target in self.observed:
            raise ValueError("target must not be an observed predictor")
        if len(set(self.observed)) != len(self.observed):
            raise ValueError("duplicate observed names")
        unknown = [v for v in self.observed if v not in known]
        if unknown:
            raise ValueError(f"unknown observed nodes {unknown}")
        if not self.observed:
            raise ValueError("observed set is empty")
        check_acyclic(self.graph())
        return self

    def graph(self) -> nx.DiGraph:
        dag = nx.DiGraph()
        dag.add_nodes_from(node.name for node in self.nodes)
        for node in self.nodes:
            dag.add_edges_from((parent, node.name) for parent in node.all_parents())
        return dag

    def node(self, name: str) -> NodeSpec:
        for node in self.nodes:
            if node.name == name:
                return node
        raise InputError(f"unknown node {name}")

    def topological_order(self) -> List[str]:
        position = {node.name: i for i, node in enumerate(self.nodes)}
        return list(nx.lexicographical_topological_sort(self.graph(), key=position.__getitem__))

    @property
    def hidden(self) -> List[str]:
        return [n.name for n in self.nodes if n.name not in self.observed and n.name != self.target]

    @classmethod
    def from_json(cls, text: str) -> "ScmSpec":
        return cls.model_validate_json(text)

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> "ScmSpec":
        path = Path(path)
        if not path.is_file():
            raise InputError(f"SCM spec not found: {path}")
        return cls.from_json(path.read_text(encoding="utf-8"))

    def to_json(self) -> str:
        return self.model_dump_json(indent=2)


@dataclass(frozen=True, eq=False)
class SampleResult:
    dataset: Dataset
    hidden: Dict[str, np.ndarray]
    true_residual: np.ndarray
    noises: Dict[str, np.ndarray]


def draw_noise(law: NoiseLaw, variance: float, n: int, generator: np.random.Generator) -> np.ndarray:
    """Centered noise with the given variance."""
    if variance == 0:
        return np.zeros(n)
    if law is NoiseLaw.UNIFORM:
        half = np.sqrt(3.0 * variance)
        return generator.uniform(-half, half, size=n)
    if law is NoiseLaw.LAPLACE:
        return generator.laplace(0.0, np.sqrt(variance / 2.0), size=n)
    return generator.normal(0.0, np.sqrt(variance), size=n)


def evaluate_node(node: NodeSpec, values: Dict[str, np.ndarray], noise: np.ndarray) -> np.ndarray:
    location = np.zeros_like(noise)
    for parent, fn in node.parents.items():
        location = location + fn(values[parent])
    scale = np.ones_like(noise)
    for parent, fn in node.scale_parents.items():
        scale = scale * fn(values[parent])
    inner = noise.copy()
    for parent in node.carriers:
        inner = inner + values[parent]
    return location + scale * inner


def simulate_nodes(
    spec: ScmSpec, n: int, rng: RngStream
) -> Tuple[Dict[str, np.ndarray], Dict[str, np.ndarray]]:
    """Ancestral sampling; node ``k`` of ``spec.nodes`` draws its noise from ``rng.child(k)``."""
    index = {node.name: k for k, node in enumerate(spec.nodes)}
    values: Dict[str, np.ndarray] = {}
    noises: Dict[str, np.ndarray] = {}
    for name in spec.topological_order():
        node = spec.node(name)
        noise = draw_noise(node.noise, node.noise_variance, n, rng.child(index[name]).generator())
        noises[name] = noise
        values[name] = evaluate_node(node, values, noise)
    return values, noises


def lsnm_posterior_residual(spec: ScmSpec, values: Dict[str, np.ndarray]) -> np.ndarray:
    """Normalized residual ``(H - E[H|children]) / sd(H|children)`` of the target's carrier.

    Requires a single hidden, normal, parentless carrier ``H`` whose observed
    children depend on ``H`` alone through a location edge with normal noise.
    The posterior moments are computed by quadrature on a grid.
    """
    target = spec.node(spec.target)
    if len(target.carriers) != 1:
        raise InputError("posterior oracle needs exactly one carrier of the target")
    carrier = spec.node(target.carriers[0])
    if carrier.all_parents() or carrier.noise is not NoiseLaw.NORMAL or carrier.noise_variance <= 0:
        raise InputError("posterior oracle needs a parentless normal carrier")

    children = []
    for node in spec.nodes:
        if node.name == spec.target or carrier.name not in node.all_parents():
            continue
        if node.all_parents() != [carrier.name] or carrier.name not in node.parents:
            raise InputError(f"{node.name} must depend on {carrier.name} alone through a location edge")
        if node.name not in spec.observed:
            raise InputError(f"{node.name} must be observed for the posterior oracle")
        if node.noise is not NoiseLaw.NORMAL or node.noise_variance <= 0:
            raise InputError(f"{node.name} needs normal noise for the posterior oracle")
        children.append(node)

    sd_h = np.sqrt(carrier.noise_variance)
    grid = np.linspace(-POSTERIOR_HALF_WIDTH * sd_h, POSTERIOR_HALF_WIDTH * sd_h, POSTERIOR_GRID)
    log_prior = -0.5 * (grid / sd_h) ** 2
    h = values[carrier.name]
    n = h.shape[0]
    residual = np.empty(n)
    for start in range(0, n, POSTERIOR_CHUNK):
        stop = min(start + POSTERIOR_CHUNK, n)
        log_post = np.broadcast_to(log_prior, (stop - start, grid.shape[0])).copy()
        for child in children:
            fn = child.parents[carrier.name]
            mean = fn(grid)
            obs = values[child.name][start:stop, None]
            log_post -= 0.5 * (obs - mean[None, :]) ** 2 / child.noise_variance
        weights = np.exp(log_post - logsumexp(log_post, axis=1, keepdims=True))
        post_mean = weights @ grid
        post_var = weights @ grid**2 - post_mean**2
        residual[start:stop] = (h[start:stop] - post_mean) / np.sqrt(np.maximum(post_var, 1e-300))
    return residual


def sample_scm(spec: ScmSpec, n: int, rng: RngStream) -> SampleResult:
    """Draw ``n`` rows; returns observed data plus hidden columns and oracle residuals."""
    if n < 1:
        raise InputError(f"sample size must be positive, got {n}")
    values, noises = simulate_nodes(spec, n, rng)

    if spec.residual_oracle is ResidualOracle.LSNM_POSTERIOR:
        true_residual = lsnm_posterior_residual(spec, values)
    else:
        true_residual = noises[spec.target]

    dataset = Dataset(
        np.column_stack([values[name] for name in spec.observed]),
        values[spec.target],
        tuple(spec.observed),
        spec.target,
    )
    hidden = {name: values[name] for name in spec.hidden}
    return SampleResult(dataset=dataset, hidden=hidden, true_residual=true_residual, noises=noises)


def observed_subsets(names: List[str], size: int) -> List[List[str]]:
    return [list(c) for c in combinations(names, size)]
