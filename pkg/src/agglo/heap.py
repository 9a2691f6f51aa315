"""Index-keyed binary min-heap with decrease-or-increase key.

Entries are integer indices 0..capacity-1 with float keys; argmin is O(1),
remove and update are O(log n).  Ties between equal keys resolve to the
index that happens to sit on top; callers that need deterministic
tie-breaking must not rely on heap order.
"""

from __future__ import annotations

import numpy as np

_ABSENT = -1


class MinPriorityQueue:
    def __init__(self, capacity: int):
        self._key = np.zeros(capacity)
        self._heap = np.empty(capacity, dtype=np.intp)  # heap slot -> index
        self._pos = np.full(capacity, _ABSENT, dtype=np.intp)  # index -> heap slot
        self._size = 0

    @classmethod
    def from_keys(cls, keys) -> "MinPriorityQueue":
        """Heapify a dense key vector; index i gets key keys[i].  O(n)."""
        keys = np.asarray(keys, dtype=np.float64)
        q = cls(len(keys))
        q._key[:] = keys
        q._heap[:] = np.arange(len(keys))
        q._pos[:] = np.arange(len(keys))
        q._size = len(keys)
        for slot in range(len(keys) // 2 - 1, -1, -1):
            q._sift_down(slot)
        return q

    def __len__(self):
        return self._size

    def __contains__(self, i: int) -> bool:
        return 0 <= i < len(self._pos) and self._pos[i] != _ABSENT

    def argmin(self) -> int:
        if self._size == 0:
            raise IndexError("empty queue")
        return int(self._heap[0])

    def min_key(self) -> float:
        return float(self._key[self.argmin()])

    def key(self, i: int) -> float:
        if self._pos[i] == _ABSENT:
            raise ValueError(f"index {i} is not in the queue")
        return float(self._key[i])

    def remove_min(self) -> int:
        i = self.argmin()
        self._remove_slot(0)
        return i

    def remove(self, i: int) -> None:
        slot = self._pos[i]
        if slot == _ABSENT:
            raise ValueError(f"index {i} is not in the queue")
        self._remove_slot(slot)

    def insert(self, i: int, key: float) -> None:
        if self._pos[i] != _ABSENT:
            raise ValueError(f"index {i} is already in the queue")
        self._key[i] = key
        slot = self._size
        self._heap[slot] = i
        self._pos[i] = slot
        self._size += 1
        self._sift_up(slot)

    def update(self, i: int, key: float) -> None:
        """Assign a new key to index i and restore the heap property."""
        slot = self._pos[i]
        if slot == _ABSENT:
            raise ValueError(f"index {i} is not in the queue")
        old = self._key[i]
        self._key[i] = key
        if key < old:
            self._sift_up(slot)
        elif key > old:
            self._sift_down(slot)

    def _remove_slot(self, slot: int) -> None:
        i = self._heap[slot]
        self._pos[i] = _ABSENT
        self._size -= 1
        last = self._heap[self._size]
        if slot != self._size:
            self._heap[slot] = last
            self._pos[last] = slot
            self._sift_down(slot)
            self._sift_up(slot)

    def _sift_up(self, slot: int) -> None:
        heap, pos, key = self._heap, self._pos, self._key
        i = heap[slot]
        k = key[i]
        while slot > 0:
            parent = (slot - 1) >> 1
            p = heap[parent]
            if key[p] <= k:
                break
            heap[slot] = p
            pos[p] = slot
            slot = parent
        heap[slot] = i
        pos[i] = slot

    def _sift_down(self, slot: int) -> None:
        heap, pos, key = self._heap, self._pos, self._key
        size = self._size
        i = heap[slot]
        k = key[i]
        while True:
            child = 2 * slot + 1
            if child >= size:
                break
            right = child + 1
            if right < size and key[heap[right]] < key[heap[child]]:
                child = right
            c = heap[child]
            if k <= key[c]:
                break
            heap[slot] = c
            pos[c] = slot
            slot = child
        heap[slot] = i
        pos[i] = slot
