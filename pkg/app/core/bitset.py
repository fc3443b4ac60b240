from functools import reduce
from typing import Iterable, Iterator


def bits_to_mask(bits: Iterable[int]) -> int:
    return reduce(lambda x, y: x | y, (1 << b for b in bits), 0)


def iter_bits(mask: int) -> Iterator[int]:
    """Yield set bit positions in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def full_mask(n: int) -> int:
    return (1 << n) - 1


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


def sort_key(mask: int):
    # popcount first, ties by value
    return (popcount(mask), mask)
