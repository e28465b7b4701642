"""Near-far labelings stored as integer bit vectors (set bit = far edge)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import StructuralError


@dataclass(frozen=True)
class NearFarLabeling:
    """A partition of the edge indices ``0..size-1`` into near and far edges.

    Bit ``i`` of ``bits`` is set iff edge ``i`` is far.
    """

    bits: int
    size: int

    def __post_init__(self):
        if self.size < 0:
            raise StructuralError("labeling size must be non-negative")
        if self.bits < 0 or self.bits >> self.size:
            raise StructuralError(f"labeling bits 0x{self.bits:x} exceed {self.size} edges")

    @classmethod
    def all_near(cls, size: int) -> NearFarLabeling:
        return cls(0, size)

    @classmethod
    def all_far(cls, size: int) -> NearFarLabeling:
        return cls((1 << size) - 1, size)

    @classmethod
    def from_far(cls, far: Iterable[int], size: int) -> NearFarLabeling:
        bits = 0
        for e in far:
            if not 0 <= e < size:
                raise StructuralError(f"edge index {e} out of range for {size} edges")
            bits |= 1 << e
        return cls(bits, size)

    @classmethod
    def from_hex(cls, text: str, size: int) -> NearFarLabeling:
        text = text.strip().lower()
        if text.startswith("0x"):
            text = text[2:]
        try:
            bits = int(text, 16) if text else 0
        except ValueError:
            raise StructuralError(f"not a hexadecimal labeling: {text!r}") from None
        return cls(bits, size)

    def to_hex(self) -> str:
        width = max(1, (self.size + 3) // 4)
        return f"{self.bits:0{width}x}"

    @property
    def near_bits(self) -> int:
        return ((1 << self.size) - 1) & ~self.bits

    def is_far(self, edge: int) -> bool:
        return bool(self.bits >> edge & 1)

    def is_near(self, edge: int) -> bool:
        return not self.bits >> edge & 1

    def far_edges(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.size) if self.bits >> i & 1)

    def near_edges(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.size) if not self.bits >> i & 1)

    def far_count(self) -> int:
        return bin(self.bits).count("1")

    def with_near(self, edges: Iterable[int]) -> NearFarLabeling:
        mask = _mask(edges)
        return NearFarLabeling(self.bits & ~mask, self.size)

    def with_far(self, edges: Iterable[int]) -> NearFarLabeling:
        mask = _mask(edges)
        return NearFarLabeling(self.bits | mask, self.size)

    def flipped(self, edges: Iterable[int]) -> NearFarLabeling:
        """Symmetric difference of both classes with ``edges``."""
        return NearFarLabeling(self.bits ^ _mask(edges), self.size)

    def label(self, edge: int) -> str:
        return "far" if self.is_far(edge) else "near"


def _mask(edges: Iterable[int]) -> int:
    m = 0
    for e in edges:
        m |= 1 << e
    return m
