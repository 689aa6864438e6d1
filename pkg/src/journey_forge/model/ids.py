"""Deterministic, lexicographically sortable id generation."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field


def scope_prefix(*parts: object) -> str:
    """Short content-independent prefix derived from run identity.

    Two trees built from different (problem, seed) scopes get disjoint id
    spaces, while rebuilding the same scope reproduces the same ids.
    """
    digest = hashlib.sha256("\x1f".join(str(p) for p in parts).encode("utf-8")).hexdigest()
    return digest[:8]


@dataclass
class IdAllocator:
    """Hands out ids ``<prefix>-00000, <prefix>-00001, ...`` in call order.

    Zero padding keeps lexicographic order equal to allocation order, which
    is what every tie-break in the toolkit sorts by.
    """

    prefix: str
    width: int = 5
    _next: int = field(default=0, repr=False)

    def allocate(self) -> str:
        value = f"{self.prefix}-{self._next:0{self.width}d}"
        self._next += 1
        return value


def derive_seed(*parts: object) -> int:
    """Fold arbitrary values into a stable 64-bit RNG seed."""
    digest = hashlib.sha256("\x1f".join(str(p) for p in parts).encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")
