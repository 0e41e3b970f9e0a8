import random

import pytest


def schoolbook_mul(a, b, poly=0x11D):
    """Carry-less multiply then reduce; independent of the log/exp tables."""
    prod = 0
    for bit in range(8):
        if b >> bit & 1:
            prod ^= a << bit
    for bit in range(15, 7, -1):
        if prod >> bit & 1:
            prod ^= poly << (bit - 8)
    return prod


@pytest.fixture
def rng():
    return random.Random(1234)
