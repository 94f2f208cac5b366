"""Cooperative games as explicit reward tables over coalitions.

Coalitions are bit-masks over player indices 0..n-1 (bit p set means player p
is in the coalition).  A game stores the full table of expected rewards, one
entry per mask, with values normalized into [0, 1].  Permutations index the
marginal vectors that form the vertices of the core of a convex game.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

MAX_PLAYERS = 20  # 2**20 table entries keeps exhaustive scans at desk scale

Coalition = int


def coalition_of(members) -> Coalition:
    """Bit-mask of the given player indices."""
    mask = 0
    for p in members:
        mask |= 1 << p
    return mask


def members_of(mask: Coalition) -> tuple[int, ...]:
    """Sorted player indices in a coalition mask."""
    out = []
    p = 0
    while mask:
        if mask & 1:
            out.append(p)
        mask >>= 1
        p += 1
    return tuple(out)


def coalition_sizes(n: int) -> np.ndarray:
    """Popcount of every mask 0..2**n-1, built by doubling."""
    sizes = np.zeros(1, dtype=np.int64)
    for _ in range(n):
        sizes = np.concatenate([sizes, sizes + 1])
    return sizes


@dataclass(frozen=True)
class Permutation:
    """An arrival order for n players.

    ``ranks[p]`` is the (0-based) position at which player p arrives; lower
    rank means earlier arrival.  ``ranks`` must be a bijection on 0..n-1.
    """

    ranks: tuple[int, ...]

    def __post_init__(self):
        n = len(self.ranks)
        if sorted(self.ranks) != list(range(n)):
            raise ValueError(f"ranks {self.ranks} is not a bijection on 0..{n - 1}")

    @property
    def n(self) -> int:
        return len(self.ranks)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    def player_at(self, rank: int) -> int:
        return self.ranks.index(rank)

    def arrival_order(self) -> tuple[int, ...]:
        """Players sorted by arrival, earliest first."""
        return tuple(np.argsort(self.ranks, kind="stable"))


def prefix_coalitions(w: Permutation) -> list[Coalition]:
    """The nested chain S_1 < S_2 < ... < S_n = N of arrival prefixes.

    S_k holds the k earliest-arriving players under w.
    """
    chain = []
    mask = 0
    for player in w.arrival_order():
        mask |= 1 << player
        chain.append(mask)
    return chain


def adjacent_transpose(w: Permutation, i: int) -> Permutation:
    """Swap the players at arrival positions i and i+1 (0-based).

    Requires 0 <= i <= n-2.  Applying twice restores the input.
    """
    if not 0 <= i <= w.n - 2:
        raise ValueError(f"transposition index {i} out of range for n={w.n}")
    a = w.player_at(i)
    b = w.player_at(i + 1)
    ranks = list(w.ranks)
    ranks[a], ranks[b] = i + 1, i
    return Permutation(tuple(ranks))


def adjacent_permutations(base: Permutation) -> list[Permutation]:
    """A permutation together with its n-1 adjacent-transposition neighbours."""
    return [base] + [adjacent_transpose(base, i) for i in range(base.n - 1)]


def cyclic_permutations(n: int) -> list[Permutation]:
    """The n rotations of 0..n-1; rotation k ranks player p at (p + k) mod n.

    Rotation 0 is the identity.
    """
    if n < 2:
        raise ValueError("need at least two players")
    return [Permutation(tuple((p + k) % n for p in range(n))) for k in range(n)]


@dataclass(frozen=True)
class GameSpec:
    """A stochastic cooperative game given by its expected-reward table.

    ``mu[mask]`` is the expected reward of the coalition with that bit-mask.
    The empty coalition has reward exactly 0 and all values lie in [0, 1].
    ``noise`` tags the reward distribution used by the bandit oracle
    ("bernoulli" or "uniform:<radius>").
    """

    n: int
    mu: np.ndarray = field(repr=False)
    noise: str = "bernoulli"

    def __post_init__(self):
        if not 2 <= self.n <= MAX_PLAYERS:
            raise ValueError(f"player count {self.n} outside 2..{MAX_PLAYERS}")
        mu = np.array(self.mu, dtype=np.float64)  # own copy, frozen below
        if mu.shape != (1 << self.n,):
            raise ValueError(f"reward table must have {1 << self.n} entries")
        if mu[0] != 0.0:
            raise ValueError("empty coalition must have reward 0")
        if np.any(mu < 0.0) or np.any(mu > 1.0):
            raise ValueError("rewards must lie in [0, 1]")
        mu.flags.writeable = False
        object.__setattr__(self, "mu", mu)

    @property
    def grand_coalition(self) -> Coalition:
        return (1 << self.n) - 1

    @property
    def mu_grand(self) -> float:
        return float(self.mu[-1])


def expected_reward(game: GameSpec, S: Coalition) -> float:
    """Table lookup mu(S); the empty coalition yields 0."""
    if not 0 <= S <= game.grand_coalition:
        raise ValueError(f"coalition {S:#x} out of range for n={game.n}")
    return float(game.mu[S])


def marginal_vector(game: GameSpec, w: Permutation) -> np.ndarray:
    """Payoff vector giving each player its marginal contribution under w.

    Entry for player p is mu(prefix through p) - mu(prefix just before p);
    the entries telescope to mu(N).
    """
    if w.n != game.n:
        raise ValueError("permutation size does not match the game")
    phi = np.empty(game.n)
    prev = 0.0
    mask = 0
    for player in w.arrival_order():
        mask |= 1 << player
        cur = float(game.mu[mask])
        phi[player] = cur - prev
        prev = cur
    return phi


def strict_convexity_margin(game: GameSpec) -> float:
    """Largest slack in the pairwise supermodularity inequalities.

    Scans min over i != j and S avoiding both of
    ``[mu(S+i+j) - mu(S+j)] - [mu(S+i) - mu(S)]``; a positive value certifies
    strict convexity, zero plain convexity, negative a supermodularity
    violation.  O(n^2 * 2^n).
    """
    n, mu = game.n, game.mu
    masks = np.arange(1 << n)
    best = np.inf
    for i in range(n):
        bi = 1 << i
        for j in range(i + 1, n):
            bj = 1 << j
            base = masks[(masks & (bi | bj)) == 0]
            diff = mu[base | bi | bj] - mu[base | bj] - mu[base | bi] + mu[base]
            best = min(best, float(diff.min()))
    return best


def marginal_increments(n: int, seed, coeff: float = 0.9) -> np.ndarray:
    """Per-size reward increments of a generated game, normalized to sum 1.

    Entry k is mu(any coalition of size k+1) - mu(any coalition of size k)
    for the symmetric game built by the recursion
    ``f(size k) = f(size k-1) + k + coeff * u_k`` with u_k ~ Unif[0, 1],
    after dividing by f(n).  With coeff < 1 consecutive increments differ by
    at least (1 - coeff) before normalization, so the game is strictly convex.
    """
    rng = np.random.default_rng(seed)
    raw = np.arange(1, n + 1, dtype=np.float64) + coeff * rng.random(n)
    return raw / raw.sum()


def _table_from_increments(increments: np.ndarray, noise: str) -> GameSpec:
    n = len(increments)
    values = np.concatenate([[0.0], np.cumsum(increments)])
    values[n] = 1.0  # guard cumsum rounding at the grand coalition
    mu = values[coalition_sizes(n)]
    return GameSpec(n=n, mu=mu, noise=noise)


def gen_strictly_convex(n: int, seed, noise: str = "bernoulli") -> GameSpec:
    """Random strictly convex game with noise amplitude 0.9 on the increments."""
    return _table_from_increments(marginal_increments(n, seed, coeff=0.9), noise)


def gen_convex_boundary(n: int, seed, noise: str = "bernoulli") -> GameSpec:
    """Random game on the convexity boundary: amplitude 1.0, margin can reach 0."""
    return _table_from_increments(marginal_increments(n, seed, coeff=1.0), noise)


def gen_unit_game(n: int, noise: str = "bernoulli") -> GameSpec:
    """mu(S) = |S| / n: convex but not strictly, one-point core at (1/n) 1."""
    if n < 2:
        raise ValueError("need at least two players")
    mu = coalition_sizes(n) / n
    return GameSpec(n=n, mu=mu, noise=noise)


def gen_permutahedron(n: int, noise: str = "bernoulli") -> GameSpec:
    """mu(S) = g(|S|) / g(n) with g(k) = k (k + 1) / 2.

    Every marginal vector is (rank+1 profile) / g(n), so the core is the
    standard permutahedron scaled by 1 / g(n).
    """
    sizes = coalition_sizes(n)
    g = sizes * (sizes + 1) / 2.0
    return GameSpec(n=n, mu=g / g[-1], noise=noise)


def save_game(game: GameSpec, path) -> None:
    """Write the flat text format: header, then one ``mask value`` line per entry."""
    with open(path, "w") as fh:
        fh.write(f"n={game.n} noise={game.noise}\n")
        for mask, value in enumerate(game.mu):
            fh.write(f"{mask} {value:.17g}\n")


def load_game(path) -> GameSpec:
    """Read a game written by :func:`save_game`; round-trips exactly."""
    with open(path) as fh:
        header = fh.readline().split()
        fields = dict(part.split("=", 1) for part in header)
        n = int(fields["n"])
        mu = np.zeros(1 << n)
        for line in fh:
            mask_s, value_s = line.split()
            mu[int(mask_s)] = float(value_s)
    return GameSpec(n=n, mu=mu, noise=fields["noise"])


def all_permutations(n: int):
    """Iterate every Permutation of n players (n! of them)."""
    for ranks in itertools.permutations(range(n)):
        yield Permutation(ranks)
