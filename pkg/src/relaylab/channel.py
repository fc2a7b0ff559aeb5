"""Channel parameterizations for the half-duplex Gaussian single-relay channel.

Node 0 is the source, node 1 the relay and node 2 the destination.  A channel
is either given directly as three link SNRs (:class:`SnrTriple`) or as a planar
geometry with free-space path loss (:class:`Geometry`), in which case
``lambda_ij = P_i / (d_ij**2 * N_j)``.
"""
from __future__ import annotations

import enum
import json
import math
from dataclasses import asdict, dataclass
from typing import Any, Mapping

import numpy as np

DEFAULT_REGIME_TOL = 1e-12


class DomainError(ValueError):
    """Raised when inputs fall outside the domain of a model or closed form."""


def _check_positive(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value) or value <= 0.0:
        raise DomainError(f"{name} must be positive and finite, got {value!r}")
    return value


@dataclass(frozen=True)
class SnrTriple:
    """Received SNRs of the source-relay, source-destination and relay-destination links."""

    lambda01: float
    lambda02: float
    lambda12: float

    def __post_init__(self) -> None:
        for name in ("lambda01", "lambda02", "lambda12"):
            object.__setattr__(self, name, _check_positive(name, getattr(self, name)))

    def to_dict(self) -> dict[str, float]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "SnrTriple":
        try:
            return cls(data["lambda01"], data["lambda02"], data["lambda12"])
        except KeyError as exc:
            raise DomainError(f"missing field {exc.args[0]!r}") from None

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "SnrTriple":
        return cls.from_dict(json.loads(text))


def _point(name: str, value: Any) -> tuple[float, float]:
    try:
        x, y = value
        x, y = float(x), float(y)
    except (TypeError, ValueError):
        raise DomainError(f"{name} must be an [x, y] pair, got {value!r}") from None
    if not (math.isfinite(x) and math.isfinite(y)):
        raise DomainError(f"{name} must have finite coordinates, got {value!r}")
    return (x, y)


@dataclass(frozen=True)
class Geometry:
    """Node positions in the plane plus transmit powers and receiver noise variances."""

    source: tuple[float, float] = (0.0, 0.0)
    relay: tuple[float, float] = (0.0, 0.5)
    destination: tuple[float, float] = (0.0, 1.0)
    p0: float = 100.0
    p1: float = 100.0
    n1: float = 1.0
    n2: float = 1.0

    def __post_init__(self) -> None:
        for name in ("source", "relay", "destination"):
            object.__setattr__(self, name, _point(name, getattr(self, name)))
        for name in ("p0", "p1", "n1", "n2"):
            object.__setattr__(self, name, _check_positive(name, getattr(self, name)))
        for name, d in zip(("d01", "d02", "d12"), self.distances()):
            if not d > 0.0:
                raise DomainError(f"{name} must be strictly positive (coincident nodes)")

    def distances(self) -> tuple[float, float, float]:
        """Return ``(d01, d02, d12)``."""
        s, r, d = self.source, self.relay, self.destination
        return (
            math.hypot(r[0] - s[0], r[1] - s[1]),
            math.hypot(d[0] - s[0], d[1] - s[1]),
            math.hypot(d[0] - r[0], d[1] - r[1]),
        )

    def scaled(self, factor: float) -> "Geometry":
        """Same geometry with both transmit powers multiplied by ``factor``."""
        factor = _check_positive("factor", factor)
        return Geometry(self.source, self.relay, self.destination,
                        self.p0 * factor, self.p1 * factor, self.n1, self.n2)

    def with_relay(self, relay: tuple[float, float]) -> "Geometry":
        return Geometry(self.source, relay, self.destination,
                        self.p0, self.p1, self.n1, self.n2)

    def to_dict(self) -> dict[str, Any]:
        return {
            "source": list(self.source),
            "relay": list(self.relay),
            "destination": list(self.destination),
            "p0": self.p0,
            "p1": self.p1,
            "n1": self.n1,
            "n2": self.n2,
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "Geometry":
        fields = ("source", "relay", "destination", "p0", "p1", "n1", "n2")
        unknown = set(data) - set(fields)
        if unknown:
            raise DomainError(f"unknown geometry field(s): {sorted(unknown)}")
        missing = [f for f in fields if f not in data]
        if missing:
            raise DomainError(f"missing geometry field(s): {missing}")
        return cls(**{f: data[f] for f in fields})

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "Geometry":
        return cls.from_dict(json.loads(text))


class Regime(str, enum.Enum):
    """Ordering of the source-relay SNR relative to the source-destination SNR."""

    RELAY_ADVANTAGED = "RelayAdvantaged"
    EQUAL = "Equal"
    DIRECT_ADVANTAGED = "DirectAdvantaged"


def snr_from_geometry(g: Geometry) -> SnrTriple:
    """Map a geometry to link SNRs under free-space path loss (gain ``1/d``)."""
    d01, d02, d12 = g.distances()
    values = []
    for name, p, d, n in (("d01", g.p0, d01, g.n1), ("d02", g.p0, d02, g.n2),
                          ("d12", g.p1, d12, g.n2)):
        with np.errstate(over="ignore", divide="ignore"):
            lam = np.float64(p) / (np.float64(d) * d * n)
        if not np.isfinite(lam):
            raise DomainError(f"{name} = {d!r} is too small: SNR overflows")
        values.append(float(lam))
    return SnrTriple(*values)


def classify_regime(s: SnrTriple, tol: float = DEFAULT_REGIME_TOL) -> Regime:
    """Compare ``lambda01`` with ``lambda02`` using a relative tolerance."""
    if tol < 0:
        raise DomainError("tol must be nonnegative")
    a, b = s.lambda01, s.lambda02
    if abs(a - b) <= tol * max(a, b):
        return Regime.EQUAL
    return Regime.RELAY_ADVANTAGED if a > b else Regime.DIRECT_ADVANTAGED


def load_scenario(path: str) -> Geometry:
    """Read a JSON scenario file holding a :class:`Geometry`."""
    with open(path, encoding="utf-8") as fh:
        return Geometry.from_dict(json.load(fh))
