"""Seeded, platform-independent random streams.

Every randomized operation takes an explicit integer seed. The seed feeds a
``numpy.random.SeedSequence``; ``spawn`` derives independent child streams so
that, for example, vertex draws do not shift when edge draws change.
"""

import math

import numpy as np

SEED_MAX = 2**64 - 1


def check_seed(seed: int) -> int:
    """Validate a 64-bit seed."""
    if isinstance(seed, bool) or not isinstance(seed, int) or not 0 <= seed <= SEED_MAX:
        raise ValueError(f"seed must be an integer in [0, 2^64), got {seed!r}")
    return seed


def make_generator(seed: int | np.random.SeedSequence) -> np.random.Generator:
    """Build a PCG64 generator from a seed or seed sequence."""
    if isinstance(seed, np.random.SeedSequence):
        return np.random.Generator(np.random.PCG64(seed))
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(check_seed(seed))))


def vertex_edge_streams(seed: int) -> tuple[np.random.Generator, np.random.Generator]:
    """Split a seed into the vertex stream and the edge stream."""
    vertex_seq, edge_seq = np.random.SeedSequence(check_seed(seed)).spawn(2)
    return make_generator(vertex_seq), make_generator(edge_seq)


def shard_streams(seed: int, shards: int) -> list[np.random.Generator]:
    """Independent substreams for sharded Monte Carlo work."""
    return [make_generator(s) for s in np.random.SeedSequence(check_seed(seed)).spawn(shards)]


def box_muller(rng: np.random.Generator, size: int | tuple[int, ...]) -> np.ndarray:
    """Standard normal draws via the Box-Muller transform of uniforms.

    Uses the cosine branch only, so each normal consumes exactly two uniforms
    and the mapping from stream to values is fixed.
    """
    count = math.prod(size) if isinstance(size, tuple) else size
    u1 = rng.random(count)
    u2 = rng.random(count)
    # 1 - u1 lies in (0, 1], keeping log finite
    radius = np.sqrt(-2.0 * np.log1p(-u1))
    values = radius * np.cos(2.0 * np.pi * u2)
    return values.reshape(size)
