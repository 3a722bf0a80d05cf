"""Disjoint sets over 0..size-1, used for orbit closure."""

from __future__ import annotations

import numpy as np


class UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size))
        self.rank = [0] * size
        self.components = size

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, x: int, y: int) -> bool:
        x, y = self.find(x), self.find(y)
        if x == y:
            return False
        if self.rank[x] < self.rank[y]:
            x, y = y, x
        elif self.rank[x] == self.rank[y]:
            self.rank[x] += 1
        self.parent[y] = x
        self.components -= 1
        return True

    def labels(self) -> np.ndarray:
        """Canonical label per element: the smallest member of its set."""
        roots = [self.find(x) for x in range(len(self.parent))]
        smallest: dict[int, int] = {}
        for x, r in enumerate(roots):
            smallest.setdefault(r, x)
        return np.array([smallest[r] for r in roots], dtype=np.int64)
