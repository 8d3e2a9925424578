"""Indexed binary heap ordered by an external comparison callback.

Unlike :mod:`heapq` the order is not stored with the items, so every
comparison goes through ``before(a, b)`` (here: an oracle query). A position
index gives O(log n) removal of arbitrary members.
"""
from __future__ import annotations

from typing import Callable, Hashable


class IndexedHeap:
    def __init__(self, before: Callable[[Hashable, Hashable], bool]):
        # before(a, b) is True when a must sit closer to the root than b
        self._before = before
        self._items: list = []
        self._pos: dict = {}

    def __len__(self):
        return len(self._items)

    def __bool__(self):
        return bool(self._items)

    def __contains__(self, item):
        return item in self._pos

    def __iter__(self):
        return iter(list(self._items))

    def peek(self):
        if not self._items:
            raise IndexError("peek at an empty heap")
        return self._items[0]

    def push(self, item):
        if item in self._pos:
            raise ValueError(f"{item!r} already in heap")
        self._items.append(item)
        self._pos[item] = len(self._items) - 1
        self._sift_up(len(self._items) - 1)

    def pop(self):
        if not self._items:
            raise IndexError("pop from an empty heap")
        top = self._items[0]
        self._delete_at(0)
        return top

    def remove(self, item):
        self._delete_at(self._pos[item])

    def _delete_at(self, idx):
        items = self._items
        item = items[idx]
        last = items.pop()
        del self._pos[item]
        if idx < len(items):
            items[idx] = last
            self._pos[last] = idx
            # the moved leaf may need to go either way
            if idx > 0 and self._before(last, items[(idx - 1) >> 1]):
                self._sift_up(idx)
            else:
                self._sift_down(idx)

    def _swap(self, a, b):
        items = self._items
        items[a], items[b] = items[b], items[a]
        self._pos[items[a]] = a
        self._pos[items[b]] = b

    def _sift_up(self, idx):
        while idx > 0:
            parent = (idx - 1) >> 1
            if not self._before(self._items[idx], self._items[parent]):
                break
            self._swap(idx, parent)
            idx = parent

    def _sift_down(self, idx):
        items = self._items
        size = len(items)
        while True:
            left = 2 * idx + 1
            if left >= size:
                return
            best = left
            right = left + 1
            if right < size and self._before(items[right], items[left]):
                best = right
            if not self._before(items[best], items[idx]):
                return
            self._swap(idx, best)
            idx = best

    def check_invariant(self) -> bool:
        items = self._items
        return all(not self._before(items[c], items[(c - 1) >> 1]) for c in range(1, len(items)))
