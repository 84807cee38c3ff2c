"""
Warm-start product states and the mixers aligned with them.

A warm-start places qubit ``j`` at polar angle ``theta_j`` and azimuth
``phi_j`` on the Bloch sphere.  Its distance to the nearest pole is
``min(theta_j, pi - theta_j)``.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .core import (
    ALIGNED,
    AXIS_TOL,
    BlochVector,
    MixerSpec,
    Statevector,
    product_amplitudes,
)
from .errors import InvalidInputError, ParseError
from .problems import bitstring_to_index


@dataclass(frozen=True)
class WarmStart:
    angles: tuple[tuple[float, float], ...]

    def __post_init__(self):
        angles = tuple((float(t), float(p)) for t, p in self.angles)
        if not angles:
            raise InvalidInputError("warm-start needs at least one qubit")
        for t, p in angles:
            if not (math.isfinite(t) and math.isfinite(p)):
                raise InvalidInputError("warm-start angles must be finite")
            if not -AXIS_TOL <= t <= math.pi + AXIS_TOL:
                raise InvalidInputError(f"polar angle {t} outside [0, pi]")
        object.__setattr__(self, "angles", tuple(
            (min(max(t, 0.0), math.pi), p % (2 * math.pi)) for t, p in angles
        ))

    @property
    def n(self) -> int:
        return len(self.angles)

    @property
    def thetas(self) -> np.ndarray:
        return np.array([t for t, _ in self.angles])

    @property
    def phis(self) -> np.ndarray:
        return np.array([p for _, p in self.angles])

    @property
    def theta_hat(self) -> np.ndarray:
        t = self.thetas
        return np.minimum(t, np.pi - t)

    def is_within(self, theta: float, tol: float = AXIS_TOL) -> bool:
        return bool(np.all(self.theta_hat <= theta + tol))

    def is_at(self, theta: float, tol: float = AXIS_TOL) -> bool:
        return bool(np.all(np.abs(self.theta_hat - theta) <= tol))

    @property
    def bitstring(self) -> str:
        """Nearest-pole rounding; qubits on the equator round to 0."""
        return "".join("1" if t > math.pi / 2 else "0" for t in self.thetas)


def from_bitstring(b: str, theta: float) -> WarmStart:
    """The at-theta warm-start whose corresponding bitstring is ``b``."""
    bitstring_to_index(b)
    if not 0.0 <= theta <= math.pi / 2:
        raise InvalidInputError(f"theta must lie in [0, pi/2], got {theta}")
    return WarmStart(tuple((theta if ch == "0" else math.pi - theta, 0.0) for ch in b))


def to_statevector(ws: WarmStart) -> Statevector:
    qubits = [
        (math.cos(t / 2), np.exp(1j * p) * math.sin(t / 2)) for t, p in ws.angles
    ]
    return Statevector(ws.n, product_amplitudes(qubits))


def zero_phase_equivalent(ws: WarmStart) -> WarmStart:
    return WarmStart(tuple((t, 0.0) for t, _ in ws.angles))


def aligned_mixer(ws: WarmStart, shifted: bool = False) -> MixerSpec:
    return MixerSpec(ALIGNED, tuple(BlochVector.from_angles(t, p) for t, p in ws.angles), shifted)


def random_within(n: int, theta: float, rng: np.random.Generator, random_phase: bool = False) -> WarmStart:
    """A uniformly drawn within-theta warm-start (each qubit picks a pole at random)."""
    hats = rng.uniform(0.0, theta, size=n)
    flips = rng.random(n) < 0.5
    phis = rng.uniform(0.0, 2 * np.pi, size=n) if random_phase else np.zeros(n)
    return WarmStart(tuple(
        (float(np.pi - h if f else h), float(p)) for h, f, p in zip(hats, flips, phis)
    ))


def load_warmstart(path) -> WarmStart:
    """Read a warm-start JSON document.

    Either ``{"bitstring": "0101", "theta": 0.3}`` for an at-theta start or
    ``{"angles": [[theta, phi], ...]}`` for a general product state.
    """
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno) from None
    return warmstart_from_doc(doc)


def warmstart_from_doc(doc: dict) -> WarmStart:
    if not isinstance(doc, dict):
        raise ParseError("warm-start document must be a JSON object")
    if "bitstring" in doc:
        if "theta" not in doc:
            raise ParseError("bitstring warm-start needs 'theta'")
        return from_bitstring(str(doc["bitstring"]), float(doc["theta"]))
    if "angles" in doc:
        try:
            return WarmStart(tuple((float(a[0]), float(a[1]) if len(a) > 1 else 0.0) for a in doc["angles"]))
        except (TypeError, IndexError, ValueError) as exc:
            raise ParseError(f"malformed 'angles' list ({exc})") from None
    raise ParseError("warm-start document needs 'bitstring'+'theta' or 'angles'")
