"""User pairing: the proposed IoT/eMBB clustering and two baselines."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .model import ClusterSpec, SubproblemKind, UserClass
from .scenario import UserRecord


class Policy(str, enum.Enum):
    ADAPTIVE = "Adaptive"
    FORCE_NOMA = "ForceNOMA"
    FORCE_OMA = "ForceOMA"


@dataclass(frozen=True)
class ClusterPair:
    weak: UserRecord
    strong: UserRecord
    kind: SubproblemKind
    policy: Policy

    def spec(self, w1: float, p_max: float = 10.0) -> ClusterSpec:
        return ClusterSpec(self.weak.gain, self.strong.gain, self.weak.user_class,
                           self.strong.user_class, w1, p_max, p_max)

    def to_dict(self) -> dict:
        return {"weak": self.weak.to_dict(), "strong": self.strong.to_dict(),
                "kind": self.kind.value, "policy": self.policy.value}


@dataclass
class ClusterPlan:
    pairs: list = field(default_factory=list)
    solos: list = field(default_factory=list)  # always served in OMA

    def user_ids(self) -> list:
        ids = [u.id for p in self.pairs for u in (p.weak, p.strong)]
        return ids + [u.id for u in self.solos]

    def to_dict(self) -> dict:
        return {"pairs": [p.to_dict() for p in self.pairs],
                "solos": [{**u.to_dict(), "scheme": "OMA"} for u in self.solos]}


def make_pair(first: UserRecord, second: UserRecord, policy: Policy = Policy.ADAPTIVE) -> ClusterPair:
    """Pair two users; ``first`` is the weak user unless its gain is strictly larger."""
    weak, strong = (first, second) if first.gain <= second.gain else (second, first)
    return ClusterPair(weak, strong, SubproblemKind.from_classes(weak.user_class, strong.user_class), policy)


def compute_l_star(g, h) -> int:
    """Number of (weak IoT, strong eMBB) pairs in the proposed clustering.

    ``g`` and ``h`` are IoT and eMBB gains sorted in descending order. Returns
    the largest l in 1..M with g[N_IoT + 1 - l] < h[l] (1-based), or 0.
    """
    g = np.asarray(g, dtype=float)
    h = np.asarray(h, dtype=float)
    for seq in (g, h):
        if np.any(seq <= 0):
            raise ValueError("gains must be positive")
        if np.any(np.diff(seq) > 0):
            raise ValueError("gains must be sorted in descending order")
    n_iot = len(g)
    m = min(len(g), len(h))
    l_star = 0
    for l in range(1, m + 1):
        if g[n_iot - l] < h[l - 1]:
            l_star = l
    return l_star


def _pair_adjacent(users, policy):
    pairs = [make_pair(users[i + 1], users[i], policy) for i in range(0, len(users) - 1, 2)]
    solos = [users[-1]] if len(users) % 2 else []
    return pairs, solos


def _by_gain_desc(users):
    return sorted(users, key=lambda u: (-u.gain, u.id))


def build_proposed_plan(iot, embb) -> ClusterPlan:
    g = _by_gain_desc(iot)
    h = _by_gain_desc(embb)
    n_iot, n_embb = len(g), len(h)
    m = min(n_iot, n_embb)
    l_star = compute_l_star([u.gain for u in g], [u.gain for u in h])

    plan = ClusterPlan()
    # strongest eMBB users with the weakest IoT users
    for l in range(1, l_star + 1):
        plan.pairs.append(make_pair(g[n_iot - l], h[l - 1]))
    # weakest eMBB users with the strongest IoT users
    for j in range(1, m - l_star + 1):
        plan.pairs.append(make_pair(h[n_embb - j], g[j - 1]))

    if m == n_iot:
        leftover = h[l_star:n_embb - (m - l_star)]
        pairs, solos = _pair_adjacent(leftover, Policy.ADAPTIVE)
    else:
        leftover = g[m - l_star:n_iot - l_star]
        pairs, solos = _pair_adjacent(leftover, Policy.FORCE_OMA)
    plan.pairs.extend(pairs)
    plan.solos.extend(solos)
    return plan


def build_random_plan(users, rng_seed=None, policy: Policy = Policy.ADAPTIVE) -> ClusterPlan:
    rng = np.random.default_rng(rng_seed)
    shuffled = [users[i] for i in rng.permutation(len(users))]
    pairs, solos = _pair_adjacent(shuffled, policy)
    return ClusterPlan(pairs, solos)


def build_strongest_weakest_plan(users, policy: Policy = Policy.ADAPTIVE) -> ClusterPlan:
    ranked = sorted(users, key=lambda u: (u.gain, u.id))
    n = len(ranked)
    pairs = [make_pair(ranked[k], ranked[n - 1 - k], policy) for k in range(n // 2)]
    solos = [ranked[n // 2]] if n % 2 else []
    return ClusterPlan(pairs, solos)


def split_by_class(users):
    iot = [u for u in users if u.user_class is UserClass.IOT]
    embb = [u for u in users if u.user_class is UserClass.EMBB]
    return iot, embb
