"""Binary min-heap with handles, so entries can be updated or removed."""
from __future__ import annotations

import heapq
from typing import Any, Hashable


class IndexedHeap:
    def __init__(self):
        self._keys: list[Any] = []
        self._items: list[Hashable] = []
        self._pos: dict[Hashable, int] = {}

    def __len__(self) -> int:
        return len(self._items)

    def __contains__(self, item) -> bool:
        return item in self._pos

    def get(self, item):
        i = self._pos.get(item)
        return None if i is None else self._keys[i]

    def peek(self):
        if not self._items:
            return None
        return self._keys[0], self._items[0]

    def push(self, item, key) -> None:
        if item in self._pos:
            self.update(item, key)
            return
        self._keys.append(key)
        self._items.append(item)
        self._pos[item] = len(self._items) - 1
        self._up(len(self._items) - 1)

    def update(self, item, key) -> None:
        i = self._pos[item]
        old = self._keys[i]
        self._keys[i] = key
        if key < old:
            self._up(i)
        else:
            self._down(i)

    def remove(self, item) -> None:
        i = self._pos.pop(item)
        last = len(self._items) - 1
        if i != last:
            self._keys[i] = self._keys[last]
            self._items[i] = self._items[last]
            self._pos[self._items[i]] = i
        self._keys.pop()
        self._items.pop()
        if i < len(self._items):
            moved = self._items[i]
            self._up(i)
            self._down(self._pos[moved])

    def discard(self, item) -> None:
        if item in self._pos:
            self.remove(item)

    def smallest(self, k: int) -> list[tuple[Any, Hashable]]:
        """The k smallest (key, item) pairs in ascending order."""
        out = []
        if not self._items or k <= 0:
            return out
        frontier = [(self._keys[0], 0)]
        size = len(self._items)
        while frontier and len(out) < k:
            key, i = heapq.heappop(frontier)
            out.append((key, self._items[i]))
            for c in (2 * i + 1, 2 * i + 2):
                if c < size:
                    heapq.heappush(frontier, (self._keys[c], c))
        return out

    def _swap(self, i: int, j: int) -> None:
        ks, its = self._keys, self._items
        ks[i], ks[j] = ks[j], ks[i]
        its[i], its[j] = its[j], its[i]
        self._pos[its[i]] = i
        self._pos[its[j]] = j

    def _up(self, i: int) -> None:
        ks = self._keys
        while i > 0:
            p = (i - 1) >> 1
            if ks[i] < ks[p]:
                self._swap(i, p)
                i = p
            else:
                break

    def _down(self, i: int) -> None:
        ks = self._keys
        size = len(ks)
        while True:
            c = 2 * i + 1
            if c >= size:
                break
            if c + 1 < size and ks[c + 1] < ks[c]:
                c += 1
            if ks[c] < ks[i]:
                self._swap(i, c)
                i = c
            else:
                break
