from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Any

from kpfree.cliques import clique_number, is_kp_free
from kpfree.errors import CertificationError, InputError
from kpfree.graph import Graph


@dataclass(frozen=True)
class PartitionSpec:
    """Forbidden clique orders ``p_1 >= ... >= p_k >= 2``, one per class."""

    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        object.__setattr__(self, "parts", parts)
        if not parts:
            raise InputError("partition spec needs at least one part")
        if any(p < 2 for p in parts):
            raise InputError(f"every part must be >= 2, got {list(parts)}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise InputError(f"parts must be non-increasing, got {list(parts)}")

    @classmethod
    def parse(cls, text: str) -> "PartitionSpec":
        try:
            parts = tuple(int(t) for t in text.replace(" ", "").split(",") if t)
        except ValueError:
            raise InputError(f"bad spec {text!r}; expected e.g. 4,3,2") from None
        return cls(parts)

    @property
    def k(self) -> int:
        return len(self.parts)

    @property
    def required_delta(self) -> int:
        """The maximum degree this spec is valid for: sum(p_i) = Delta - 1 + k."""
        return sum(self.parts) - self.k + 1

    def check_valid_for(self, g: Graph) -> None:
        if self.required_delta != g.max_degree:
            raise InputError(
                f"spec {list(self.parts)} sums to {sum(self.parts)}, but Delta - 1 + k = "
                f"{g.max_degree - 1 + self.k}"
            )

    def __str__(self) -> str:
        return ",".join(map(str, self.parts))


@dataclass
class Partition:
    """Classes ``classes[i]`` must induce K_{parts[i]}-free subgraphs."""

    parts: tuple[int, ...]
    classes: list[list[int]]
    certified: bool = False
    fallback_used: bool = False
    trace: list[dict[str, Any]] = field(default_factory=list)
    meta: dict[str, Any] = field(default_factory=dict)

    def to_json(self, n: int, include_trace: bool = False) -> dict[str, Any]:
        out: dict[str, Any] = {
            "n": n,
            "spec": list(self.parts),
            "classes": [sorted(c) for c in self.classes],
            "certified": self.certified,
            "fallback_used": self.fallback_used,
        }
        if self.meta:
            out["meta"] = self.meta
        if include_trace:
            out["trace"] = self.trace
        return out


def certify(g: Graph, classes: Sequence[Sequence[int]], parts: Sequence[int]) -> None:
    """Raise :class:`CertificationError` unless ``classes`` is a valid partition."""
    if len(classes) != len(parts):
        raise CertificationError(f"{len(classes)} classes for {len(parts)} parts")
    seen = 0
    for i, (cls, p) in enumerate(zip(classes, parts)):
        for v in cls:
            if not 0 <= v < g.n:
                raise CertificationError(f"class {i} holds out-of-range vertex {v}")
            if seen >> v & 1:
                raise CertificationError(f"vertex {v} appears in two classes")
            seen |= 1 << v
        if not is_kp_free(g, cls, p):
            raise CertificationError(f"class {i} contains a K_{p}")
    if seen != g.full_mask:
        missing = [v for v in range(g.n) if not seen >> v & 1]
        raise CertificationError(f"vertices {missing} are not covered")


def check_theorem1_hypotheses(g: Graph, spec: PartitionSpec) -> int:
    """Validate the degree/clique hypotheses; returns omega(g)."""
    spec.check_valid_for(g)
    omega = clique_number(g)
    if omega > g.max_degree - 1:
        raise InputError(f"omega = {omega} exceeds Delta - 1 = {g.max_degree - 1}")
    return omega
