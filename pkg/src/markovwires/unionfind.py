from __future__ import annotations

from .names import name_key


class UnionFind:
    """Disjoint sets over structured names, with path compression and union by size."""

    def __init__(self, items=()):
        self.parent = {}
        self.size = {}
        for x in items:
            self.add(x)

    def add(self, x):
        if x not in self.parent:
            self.parent[x] = x
            self.size[x] = 1

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        x, y = self.find(x), self.find(y)
        if x == y:
            return x
        if self.size[x] < self.size[y]:
            x, y = y, x
        self.parent[y] = x
        self.size[x] += self.size[y]
        return x

    def classes(self) -> dict:
        """Map each element to its canonical class name (the least member)."""
        members = {}
        for x in self.parent:
            members.setdefault(self.find(x), []).append(x)
        canon = {}
        for group in members.values():
            least = min(group, key=name_key)
            for x in group:
                canon[x] = least
        return canon
