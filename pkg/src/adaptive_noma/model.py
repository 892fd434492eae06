"""Domain types and objective evaluation for two-user uplink clusters.

Powers are in mW and normalized gains in 1/mW throughout, so ``gamma * p``
is a dimensionless SNR. All logarithms are base 2.

The metric functions accept scalars or numpy arrays; the brute-force oracle
evaluates them on whole power grids.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np


class UserClass(str, enum.Enum):
    IOT = "IoT"
    EMBB = "eMBB"

    @property
    def metric(self) -> str:
        """'EE' for IoT users, 'SE' for eMBB users."""
        return "EE" if self is UserClass.IOT else "SE"


class MaScheme(str, enum.Enum):
    NOMA = "NOMA"
    OMA = "OMA"


class SubproblemKind(str, enum.Enum):
    """(weak-user metric, strong-user metric); S = spectral, E = energy."""

    SS = "SS"
    ES = "ES"
    SE = "SE"
    EE = "EE"

    @classmethod
    def from_classes(cls, weak: UserClass, strong: UserClass) -> "SubproblemKind":
        return cls(weak.metric[0] + strong.metric[0])


@dataclass(frozen=True)
class SystemParams:
    phi: float = 2.0
    q: float = 10.0
    k_s: float = 30.0
    k_e: float = 1.0
    bandwidth_hz: float = 1e5

    def __post_init__(self):
        for name in ("phi", "q", "k_s", "k_e", "bandwidth_hz"):
            value = getattr(self, name)
            if not value > 0:
                raise ValueError(f"{name} must be positive, got {value!r}")

    def norm(self, user_class: UserClass) -> float:
        return self.k_e if user_class is UserClass.IOT else self.k_s


@dataclass(frozen=True)
class ClusterSpec:
    """One two-user cluster. User 1 is the weak user (gamma1 <= gamma2)."""

    gamma1: float
    gamma2: float
    class1: UserClass
    class2: UserClass
    w1: float
    p1_max: float = 10.0
    p2_max: float = 10.0

    def __post_init__(self):
        if not (self.gamma1 > 0 and self.gamma2 > 0):
            raise ValueError("channel gains must be positive")
        if self.gamma1 > self.gamma2:
            raise ValueError(
                f"gamma1={self.gamma1} exceeds gamma2={self.gamma2}; user 1 must be the weak user"
            )
        if not 0.0 <= self.w1 <= 1.0:
            raise ValueError(f"w1 must lie in [0, 1], got {self.w1}")
        if not (self.p1_max > 0 and self.p2_max > 0):
            raise ValueError("power budgets must be positive")

    @property
    def w2(self) -> float:
        return 1.0 - self.w1

    @property
    def kind(self) -> SubproblemKind:
        return SubproblemKind.from_classes(self.class1, self.class2)

    def budgets(self, scheme: MaScheme) -> tuple[float, float]:
        # an OMA user is active every other slot, hence twice the per-slot budget
        scale = 2.0 if scheme is MaScheme.OMA else 1.0
        return scale * self.p1_max, scale * self.p2_max

    @classmethod
    def of_kind(cls, kind: SubproblemKind | str, gamma1, gamma2, w1, p1_max=10.0, p2_max=10.0):
        kind = SubproblemKind(kind)
        c1 = UserClass.IOT if kind.value[0] == "E" else UserClass.EMBB
        c2 = UserClass.IOT if kind.value[1] == "E" else UserClass.EMBB
        return cls(gamma1, gamma2, c1, c2, w1, p1_max, p2_max)


@dataclass(frozen=True)
class PowerAllocation:
    p1: float
    p2: float
    scheme: MaScheme


@dataclass
class FpTrace:
    """Record of one quadratic-transform run: true objective and auxiliaries per round."""

    objectives: list = field(default_factory=list)
    aux_values: list = field(default_factory=list)
    converged: bool = False


@dataclass
class DinkelbachTrace:
    lambdas: list = field(default_factory=list)
    residuals: list = field(default_factory=list)
    converged: bool = False


@dataclass
class SolveResult:
    allocation: PowerAllocation
    objective: float
    converged: bool
    trace: FpTrace | None = None
    start_traces: list = field(default_factory=list)
    dinkelbach: list = field(default_factory=list)

    @property
    def p1(self) -> float:
        return self.allocation.p1

    @property
    def p2(self) -> float:
        return self.allocation.p2

    @property
    def scheme(self) -> MaScheme:
        return self.allocation.scheme

    @property
    def iterations(self) -> int:
        if self.trace is not None:
            return len(self.trace.objectives)
        return sum(len(t.lambdas) for t in self.dinkelbach)

    def to_dict(self) -> dict:
        return {
            "scheme": self.scheme.value,
            "p1_mw": self.p1,
            "p2_mw": self.p2,
            "objective": self.objective,
            "converged": self.converged,
            "iterations": self.iterations,
        }


def _check_nonneg(*values):
    for v in values:
        if np.any(np.asarray(v) < 0):
            raise ValueError("gains and powers must be non-negative")


def se_oma(gamma, p):
    _check_nonneg(gamma, p)
    return np.log2(1.0 + gamma * p)


def se_noma_weak(gamma1, p1):
    # decoded last under SIC, so interference-free
    _check_nonneg(gamma1, p1)
    return 2.0 * np.log2(1.0 + gamma1 * p1)


def se_noma_strong(gamma1, p1, gamma2, p2):
    _check_nonneg(gamma1, p1, gamma2, p2)
    return 2.0 * np.log2(1.0 + gamma2 * p2 / (1.0 + gamma1 * p1))


def ee_noma(user_index, gamma1, p1, gamma2, p2, params: SystemParams):
    if user_index == 1:
        return se_noma_weak(gamma1, p1) / (2.0 * (params.phi * p1 + params.q))
    if user_index == 2:
        return se_noma_strong(gamma1, p1, gamma2, p2) / (2.0 * (params.phi * p2 + params.q))
    raise ValueError(f"user_index must be 1 or 2, got {user_index!r}")


def ee_oma(gamma, p, params: SystemParams):
    return se_oma(gamma, p) / (params.phi * p + params.q)


def user_metrics(spec: ClusterSpec, p1, p2, scheme: MaScheme, params: SystemParams):
    """Per-user metric (SE or EE according to class) under ``scheme``."""
    g1, g2 = spec.gamma1, spec.gamma2
    if scheme is MaScheme.NOMA:
        m1 = ee_noma(1, g1, p1, g2, p2, params) if spec.class1 is UserClass.IOT else se_noma_weak(g1, p1)
        m2 = (
            ee_noma(2, g1, p1, g2, p2, params)
            if spec.class2 is UserClass.IOT
            else se_noma_strong(g1, p1, g2, p2)
        )
    else:
        m1 = ee_oma(g1, p1, params) if spec.class1 is UserClass.IOT else se_oma(g1, p1)
        m2 = ee_oma(g2, p2, params) if spec.class2 is UserClass.IOT else se_oma(g2, p2)
    return m1, m2


def weighted_terms(spec: ClusterSpec, p1, p2, scheme: MaScheme, params: SystemParams):
    """The two normalized weighted contributions (w_i / K_i) * M_i."""
    m1, m2 = user_metrics(spec, p1, p2, scheme, params)
    t1 = spec.w1 / params.norm(spec.class1) * m1
    t2 = spec.w2 / params.norm(spec.class2) * m2
    return t1, t2


def weighted_objective(spec: ClusterSpec, alloc: PowerAllocation, params: SystemParams) -> float:
    b1, b2 = spec.budgets(alloc.scheme)
    # absorb float noise from callers that compute budgets themselves
    slack = 1e-12 * max(b1, b2)
    if not (-slack <= alloc.p1 <= b1 + slack and -slack <= alloc.p2 <= b2 + slack):
        raise ValueError(
            f"allocation ({alloc.p1}, {alloc.p2}) infeasible for budgets ({b1}, {b2}) under {alloc.scheme.value}"
        )
    p1 = min(max(alloc.p1, 0.0), b1)
    p2 = min(max(alloc.p2, 0.0), b2)
    t1, t2 = weighted_terms(spec, p1, p2, alloc.scheme, params)
    return float(t1 + t2)
