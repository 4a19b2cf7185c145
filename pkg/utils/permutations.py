# utils/permutations.py

from typing import Sequence


def permutation_sign(seq: Sequence) -> int:
    """Sign of the permutation that sorts `seq` (entries must be distinct)."""
    inversions = 0
    items = list(seq)
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            if items[i] > items[j]:
                inversions += 1
    return -1 if inversions % 2 else 1
