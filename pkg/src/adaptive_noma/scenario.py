"""Channel model, user drops, and JSON (de)serialization of scenarios."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .model import UserClass


@dataclass(frozen=True)
class ChannelParams:
    g0_db: float = -70.0
    n_exp: float = 2.0
    n0_dbm_hz: float = -170.0
    nf_db: float = 10.0
    bandwidth_hz: float = 1e5

    def __post_init__(self):
        if not self.n_exp > 0:
            raise ValueError("path-loss exponent must be positive")
        if not self.bandwidth_hz > 0:
            raise ValueError("bandwidth must be positive")

    @property
    def noise_dbm(self) -> float:
        return self.n0_dbm_hz + self.nf_db + 10.0 * math.log10(self.bandwidth_hz)


@dataclass(frozen=True)
class CellGeometry:
    r_inner: float = 10.0
    r_outer: float = 100.0

    def __post_init__(self):
        if not 0 < self.r_inner < self.r_outer:
            raise ValueError("need 0 < r_inner < r_outer")


@dataclass(frozen=True)
class UserRecord:
    id: int
    user_class: UserClass
    gain: float  # normalized gain, 1/mW
    distance: float | None = None  # m

    def __post_init__(self):
        if not (self.gain > 0 and math.isfinite(self.gain)):
            raise ValueError(f"user {self.id}: gain must be positive and finite")

    def to_dict(self) -> dict:
        return {"id": self.id, "class": self.user_class.value, "distance": self.distance, "gain": self.gain}

    @classmethod
    def from_dict(cls, d: dict) -> "UserRecord":
        return cls(int(d["id"]), UserClass(d["class"]), float(d["gain"]),
                   None if d.get("distance") is None else float(d["distance"]))


@dataclass
class Scenario:
    users: list = field(default_factory=list)

    def __post_init__(self):
        ids = [u.id for u in self.users]
        if len(set(ids)) != len(ids):
            raise ValueError("user ids must be unique")

    def of_class(self, user_class: UserClass) -> list:
        return [u for u in self.users if u.user_class is user_class]

    def to_json(self) -> str:
        return json.dumps({"users": [u.to_dict() for u in self.users]}, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "Scenario":
        return cls([UserRecord.from_dict(d) for d in json.loads(text)["users"]])


def path_loss_db(d, cp: ChannelParams = ChannelParams()):
    return -cp.g0_db + 10.0 * cp.n_exp * np.log10(d)


def gain_from_distance(d, cp: ChannelParams = ChannelParams()):
    """Channel power gain over receiver noise power, in 1/mW."""
    if np.any(np.asarray(d) <= 0):
        raise ValueError("distance must be positive")
    # both quantities stay in dB until the final conversion
    return 10.0 ** ((-path_loss_db(d, cp) - cp.noise_dbm) / 10.0)


def deterministic_scenario(classes=UserClass.EMBB) -> Scenario:
    """Ten users at d_k = 10 (11 - k) m with gain 10000 / d_k^2, k = 1..10.

    ``classes`` is one class for everybody or a sequence of ten.
    """
    if isinstance(classes, UserClass):
        classes = [classes] * 10
    if len(classes) != 10:
        raise ValueError("need exactly ten user classes")
    users = []
    for k, c in zip(range(1, 11), classes):
        d = 10.0 * (11 - k)
        users.append(UserRecord(k, UserClass(c), 10000.0 / d**2, d))
    return Scenario(users)


def sample_distances(n: int, geom: CellGeometry, rng: np.random.Generator):
    # uniform over the annulus area: r^2 is uniform on [r_in^2, r_out^2]
    r2 = rng.uniform(geom.r_inner**2, geom.r_outer**2, size=n)
    return np.sqrt(r2)


def random_scenario(n_iot: int, n_embb: int, geom: CellGeometry = CellGeometry(),
                    cp: ChannelParams = ChannelParams(), rng_seed=None) -> Scenario:
    if n_iot < 0 or n_embb < 0:
        raise ValueError("user counts must be non-negative")
    rng = np.random.default_rng(rng_seed)
    d = sample_distances(n_iot + n_embb, geom, rng)
    gains = gain_from_distance(d, cp) if len(d) else d
    classes = [UserClass.IOT] * n_iot + [UserClass.EMBB] * n_embb
    users = [UserRecord(i, c, float(g), float(di)) for i, (c, g, di) in enumerate(zip(classes, gains, d))]
    return Scenario(users)
