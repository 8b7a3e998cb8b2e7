"""Basic belief assignments over a small finite frame.

Subsets of the frame are encoded as integer bitmasks against the frame's
element order: bit ``k`` set means ``frame.elements[k]`` is in the subset.
Mass functions are immutable; every operation returns a new object.
"""

from __future__ import annotations

import json
import math
from types import MappingProxyType
from typing import Hashable, Iterable, Iterator, Mapping

from .exceptions import FrameMismatch, SumExceedsOne, TotalConflict, BeliefHCError

SUM_TOL = 1e-9
PRUNE_TOL = 1e-12
CONFLICT_TOL = 1e-12

__all__ = [
    "Frame",
    "MassFunction",
    "PignisticDistribution",
    "make_simple_mass",
    "vacuous_mass",
    "conjunctive_combine",
    "dempster_combine",
    "pignistic",
]


class Frame:
    """An ordered frame of discernment."""

    __slots__ = ("elements", "_index")

    def __init__(self, elements: Iterable[Hashable]):
        elements = tuple(elements)
        if not elements:
            raise BeliefHCError("a frame needs at least one element")
        index = {e: k for k, e in enumerate(elements)}
        if len(index) != len(elements):
            raise BeliefHCError("frame elements must be unique")
        self.elements = elements
        self._index = index

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[Hashable]:
        return iter(self.elements)

    def __contains__(self, element) -> bool:
        return element in self._index

    def __eq__(self, other) -> bool:
        return isinstance(other, Frame) and self.elements == other.elements

    def __hash__(self) -> int:
        return hash(self.elements)

    def __repr__(self) -> str:
        return f"Frame({list(self.elements)!r})"

    @property
    def full(self) -> int:
        """Bitmask of the whole frame."""
        return (1 << len(self.elements)) - 1

    def index(self, element) -> int:
        try:
            return self._index[element]
        except KeyError:
            raise BeliefHCError(f"{element!r} is not in {self!r}") from None

    def encode(self, subset: Iterable[Hashable]) -> int:
        mask = 0
        for e in subset:
            mask |= 1 << self.index(e)
        return mask

    def decode(self, mask: int) -> frozenset:
        return frozenset(e for k, e in enumerate(self.elements) if mask >> k & 1)


class MassFunction:
    """A basic belief assignment.

    ``focal`` maps subset bitmasks to masses. Zero masses are dropped, the
    total must be 1 within ``SUM_TOL``. The empty set (mask 0) is allowed
    and carries the conflict of an unnormalized combination.

    Use :meth:`from_sets` to build one from element collections.
    """

    __slots__ = ("frame", "_focal")

    def __init__(self, frame: Frame, focal: Mapping[int, float]):
        full = frame.full
        clean: dict[int, float] = {}
        for mask, mass in focal.items():
            mask = int(mask)
            mass = float(mass)
            if mask < 0 or mask & ~full:
                raise BeliefHCError(f"focal set {mask:#b} is not a subset of the frame")
            if not math.isfinite(mass) or mass < -PRUNE_TOL:
                raise BeliefHCError(f"invalid mass {mass!r}")
            if mass > 0.0:
                clean[mask] = clean.get(mask, 0.0) + mass
        total = math.fsum(clean.values())
        if abs(total - 1.0) > SUM_TOL:
            raise BeliefHCError(f"masses sum to {total!r}, expected 1")
        self.frame = frame
        self._focal = MappingProxyType(clean)

    @classmethod
    def from_sets(cls, frame: Frame, focal: Mapping[Iterable[Hashable], float]) -> "MassFunction":
        enc: dict[int, float] = {}
        for subset, mass in focal.items():
            mask = frame.encode(subset)
            enc[mask] = enc.get(mask, 0.0) + mass
        return cls(frame, enc)

    @property
    def focal(self) -> Mapping[int, float]:
        return self._focal

    def __getitem__(self, subset: Iterable[Hashable]) -> float:
        return self._focal.get(self.frame.encode(subset), 0.0)

    def mass_of(self, mask: int) -> float:
        return self._focal.get(mask, 0.0)

    @property
    def conflict(self) -> float:
        """Mass on the empty set."""
        return self._focal.get(0, 0.0)

    @property
    def ignorance(self) -> float:
        """Mass on the whole frame."""
        return self._focal.get(self.frame.full, 0.0)

    def items(self) -> Iterator[tuple[frozenset, float]]:
        for mask in sorted(self._focal):
            yield self.frame.decode(mask), self._focal[mask]

    def is_vacuous(self, tol: float = PRUNE_TOL) -> bool:
        return abs(self.ignorance - 1.0) <= tol

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MassFunction)
            and self.frame == other.frame
            and dict(self._focal) == dict(other._focal)
        )

    def isclose(self, other: "MassFunction", tol: float = 1e-12) -> bool:
        if self.frame != other.frame:
            return False
        keys = set(self._focal) | set(other._focal)
        return all(abs(self.mass_of(k) - other.mass_of(k)) <= tol for k in keys)

    def __repr__(self) -> str:
        body = ", ".join(
            "{" + ",".join(map(str, sorted(s, key=self.frame.index))) + "}: " + f"{v:.6g}"
            for s, v in self.items()
        )
        return f"MassFunction({body})"

    def to_dict(self) -> dict:
        return {
            "frame": list(self.frame.elements),
            "focal": [
                {"set": [e for e in self.frame.elements if e in s], "mass": v}
                for s, v in self.items()
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, obj: Mapping) -> "MassFunction":
        frame = Frame(obj["frame"])
        enc: dict[int, float] = {}
        for item in obj["focal"]:
            mask = frame.encode(item["set"])
            enc[mask] = enc.get(mask, 0.0) + float(item["mass"])
        return cls(frame, enc)

    @classmethod
    def from_json(cls, text: str) -> "MassFunction":
        return cls.from_dict(json.loads(text))


class PignisticDistribution:
    """Probability distribution over the elements of a frame."""

    __slots__ = ("frame", "probabilities")

    def __init__(self, frame: Frame, probabilities: Mapping[Hashable, float]):
        self.frame = frame
        self.probabilities = MappingProxyType(dict(probabilities))

    def __getitem__(self, element) -> float:
        return self.probabilities[element]

    def prob(self, subset: Iterable[Hashable]) -> float:
        """Pignistic probability of a subset, by additivity over its elements."""
        return math.fsum(self.probabilities[e] for e in set(subset))

    def __repr__(self) -> str:
        return f"PignisticDistribution({dict(self.probabilities)!r})"


def make_simple_mass(frame: Frame, singleton_masses: Mapping[Hashable, float]) -> MassFunction:
    """Mass on singletons plus the remainder on the whole frame."""
    total = math.fsum(singleton_masses.values())
    if total > 1.0 + SUM_TOL:
        raise SumExceedsOne(f"singleton masses sum to {total!r}")
    focal: dict[int, float] = {}
    for e, v in singleton_masses.items():
        if not 0.0 <= v <= 1.0:
            raise BeliefHCError(f"mass {v!r} for {e!r} outside [0, 1]")
        mask = 1 << frame.index(e)
        focal[mask] = focal.get(mask, 0.0) + v
    rest = max(1.0 - total, 0.0)
    focal[frame.full] = focal.get(frame.full, 0.0) + rest
    if total > 1.0:
        # absorb the rounding excess so the sum check passes exactly
        focal = {k: v / total for k, v in focal.items()}
    return MassFunction(frame, focal)


def vacuous_mass(frame: Frame) -> MassFunction:
    return MassFunction(frame, {frame.full: 1.0})


def _check_frames(m1: MassFunction, m2: MassFunction) -> None:
    if m1.frame != m2.frame:
        raise FrameMismatch(f"{m1.frame!r} != {m2.frame!r}")


def _prune(frame: Frame, acc: dict[int, float]) -> MassFunction:
    kept = {k: v for k, v in acc.items() if v >= PRUNE_TOL}
    total = math.fsum(kept.values())
    return MassFunction(frame, {k: v / total for k, v in kept.items()})


def conjunctive_combine(m1: MassFunction, m2: MassFunction) -> MassFunction:
    """Unnormalized conjunctive rule; conflict lands on the empty set."""
    _check_frames(m1, m2)
    acc: dict[int, float] = {}
    for a, va in m1.focal.items():
        for b, vb in m2.focal.items():
            c = a & b
            acc[c] = acc.get(c, 0.0) + va * vb
    return _prune(m1.frame, acc)


def dempster_combine(m1: MassFunction, m2: MassFunction) -> MassFunction:
    conj = conjunctive_combine(m1, m2)
    k = conj.conflict
    if k >= 1.0 - CONFLICT_TOL:
        raise TotalConflict(f"conflict {k!r}: sources are incompatible")
    norm = 1.0 - k
    return _prune(conj.frame, {c: v / norm for c, v in conj.focal.items() if c})


def pignistic(m: MassFunction) -> PignisticDistribution:
    """Spread each focal mass uniformly over its elements, discarding conflict."""
    k = m.conflict
    if k >= 1.0 - CONFLICT_TOL:
        raise TotalConflict("pignistic transform undefined when all mass is on the empty set")
    norm = 1.0 - k
    n = len(m.frame)
    acc = [0.0] * n
    for mask, v in m.focal.items():
        if not mask:
            continue
        share = v / mask.bit_count()
        bit = 0
        while mask:
            if mask & 1:
                acc[bit] += share
            mask >>= 1
            bit += 1
    return PignisticDistribution(
        m.frame, {e: acc[k_] / norm for k_, e in enumerate(m.frame.elements)}
    )
