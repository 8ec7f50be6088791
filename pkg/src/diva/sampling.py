"""Near-uniform sampling of linear extensions.

The sampler is a lazy Markov chain on the linear extensions of a partial
order: each step it holds with probability 1/2, otherwise it picks an adjacent
position and swaps the two items there iff they are incomparable. The lazy
coin makes the chain aperiodic; symmetry of the moves makes the uniform
distribution stationary, so after enough steps samples are near-uniform.

Positions can be drawn uniformly (the classic chain) or with weight
proportional to i*(n-i), a faster-mixing variant. Everything is driven by an
explicit numpy Generator; there is no global randomness.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .orders import PartialPreference, TotalOrder, ValidationError, _order_unchecked, initial_extension

POSITION_WEIGHTINGS = ("uniform", "quadratic")


@dataclass(frozen=True)
class SamplerConfig:
    """Knobs for extension sampling and sampled distances.

    num_iterations counts raw chain steps (lazy holds included), not sweeps.
    exhaustive switches consumers to exact enumeration on small instances.
    """

    num_extensions: int = 30
    num_iterations: int = 100
    seed: int = 0
    position_weighting: str = "uniform"
    exhaustive: bool = False

    def __post_init__(self):
        if self.num_extensions < 1:
            raise ValidationError("num_extensions must be >= 1")
        if self.num_iterations < 0:
            raise ValidationError("num_iterations must be >= 0")
        if self.position_weighting not in POSITION_WEIGHTINGS:
            raise ValidationError(
                f"position_weighting must be one of {POSITION_WEIGHTINGS}, got {self.position_weighting!r}"
            )


def make_rng(seed: int | np.random.Generator) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def preferred_matrix(p: PartialPreference, items: tuple[str, ...]) -> np.ndarray:
    """Boolean matrix M with M[i, j] true iff items[i] is preferred to items[j]."""
    index = {item: k for k, item in enumerate(items)}
    n = len(items)
    mat = np.zeros((n, n), dtype=bool)
    succ = p.successors
    for item in items:
        row = index[item]
        for other in succ[item]:
            if other in index:
                mat[row, index[other]] = True
    return mat


def _position_weights(n: int, weighting: str) -> np.ndarray | None:
    # weights over swap positions i in 1..n-1, i.e. swapping ranks i and i+1
    if weighting == "uniform":
        return None
    i = np.arange(1, n, dtype=np.float64)
    w = i * (n - i)
    return w / w.sum()


def _run_chains(pref: np.ndarray, states: np.ndarray, iterations: int,
                rng: np.random.Generator, weighting: str) -> np.ndarray:
    """Advance a batch of chains in lock-step. ``states`` is (B, n) item indices."""
    chains, n = states.shape
    if n < 2 or iterations == 0:
        return states
    weights = _position_weights(n, weighting)
    rows = np.arange(chains)
    for _ in range(iterations):
        hold = rng.random(chains) < 0.5
        if weights is None:
            pos = rng.integers(0, n - 1, size=chains)
        else:
            pos = rng.choice(n - 1, size=chains, p=weights)
        left = states[rows, pos]
        right = states[rows, pos + 1]
        # a swap is legal iff the pair is incomparable; in a valid extension the
        # later item can never be preferred to the earlier one, so one lookup does it
        move = ~hold & ~pref[left, right]
        r = rows[move]
        states[r, pos[move]] = right[move]
        states[r, pos[move] + 1] = left[move]
    return states


def _check_start(p: PartialPreference, start: TotalOrder) -> None:
    if start.domain != p.domain:
        raise ValidationError("start order must cover exactly the preference domain")
    if not start.extends(p):
        raise ValidationError("start order violates the partial order")


def sample_extension(p: PartialPreference, start: TotalOrder, iterations: int,
                     rng: np.random.Generator, position_weighting: str = "uniform") -> TotalOrder:
    """One chain run of ``iterations`` steps from ``start``.

    With iterations=0 this is the identity, and any output is a linear
    extension of p whenever ``start`` is.
    """
    return sample_extensions(p, 1, iterations, rng, position_weighting=position_weighting, start=start)[0]


def sample_extensions(p: PartialPreference, count: int, iterations: int,
                      rng: np.random.Generator, position_weighting: str = "uniform",
                      start: TotalOrder | None = None) -> list[TotalOrder]:
    """``count`` independent chain runs, each restarted from ``start``
    (default: the deterministic initial extension)."""
    if iterations < 0:
        raise ValidationError("iterations must be >= 0")
    if start is None:
        start = initial_extension(p)
    else:
        _check_start(p, start)
    items = start.sequence
    pref = preferred_matrix(p, items)
    states = sample_states(pref, count, iterations, rng, position_weighting)
    return [_order_unchecked(tuple(items[k] for k in row)) for row in states]


def sample_states(pref: np.ndarray, count: int, iterations: int, rng: np.random.Generator,
                  position_weighting: str = "uniform") -> np.ndarray:
    """Raw chain outputs: (count, n) indices into the start ordering, where the
    start is the identity permutation and ``pref`` is its preferred-matrix."""
    n = pref.shape[0]
    states = np.tile(np.arange(n), (count, 1))
    return _run_chains(pref, states, iterations, rng, position_weighting)


def sampled_orders(p: PartialPreference, cfg: SamplerConfig, rng: np.random.Generator) -> list[TotalOrder]:
    """Extensions of p per the config: enumerated when exhaustive, else sampled."""
    if cfg.exhaustive:
        from .orders import enumerate_extensions

        return enumerate_extensions(p)
    return sample_extensions(p, cfg.num_extensions, cfg.num_iterations, rng,
                             position_weighting=cfg.position_weighting)
