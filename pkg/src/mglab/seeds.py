"""Deterministic derivation of sub-experiment seeds from one master seed."""

import hashlib


def derive_seed(master: int, *tags) -> int:
    """Stable 63-bit sub-seed for (master, tags).

    SHA-256 over the decimal master seed followed by the string form of each
    tag, '|'-separated; the first 8 digest bytes big-endian, shifted to 63
    bits.  Every stochastic sub-step of a command derives its seed this way
    (command name plus parameter tags), so sub-experiments are independently
    reproducible.
    """
    h = hashlib.sha256()
    h.update(str(int(master)).encode())
    for t in tags:
        h.update(b"|")
        h.update(str(t).encode())
    return int.from_bytes(h.digest()[:8], "big") >> 1
