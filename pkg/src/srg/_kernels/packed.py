"""Bit-packed registration view shared by the kernel backends.

Each student's new/old registrations become bitmasks over dense course
indices.  The pure Python backend works on arbitrary-width int masks; the
compiled backend works on the equivalent uint64 word arrays.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_WORD = 64
_WORD_MASK = (1 << _WORD) - 1


def _to_words(masks: list[int], nbits: int) -> np.ndarray:
    width = max(1, (nbits + _WORD - 1) // _WORD)
    out = np.zeros((len(masks), width), dtype=np.uint64)
    for i, mask in enumerate(masks):
        for w in range(width):
            out[i, w] = (mask >> (w * _WORD)) & _WORD_MASK
    return out


@dataclass
class PackedInstance:
    num_students: int
    num_new: int
    num_old: int
    new_masks: list[int]
    old_masks: list[int]
    new_words: np.ndarray  # (m, Wn) uint64
    old_words: np.ndarray  # (m, Wo) uint64
    reg_counts: np.ndarray  # (m,) int64

    @classmethod
    def from_instance(cls, instance) -> "PackedInstance":
        new_index = {cid: i for i, cid in enumerate(instance.new_course_ids)}
        old_index = {cid: i for i, cid in enumerate(instance.old_course_ids)}
        new_masks, old_masks, counts = [], [], []
        for s in instance.students:
            new_mask = old_mask = 0
            for cid in s.registrations:
                if cid in new_index:
                    new_mask |= 1 << new_index[cid]
                else:
                    old_mask |= 1 << old_index[cid]
            new_masks.append(new_mask)
            old_masks.append(old_mask)
            counts.append(len(s.registrations))
        return cls(
            num_students=len(instance.students),
            num_new=len(new_index),
            num_old=len(old_index),
            new_masks=new_masks,
            old_masks=old_masks,
            new_words=_to_words(new_masks, len(new_index)),
            old_words=_to_words(old_masks, len(old_index)),
            reg_counts=np.array(counts, dtype=np.int64),
        )
