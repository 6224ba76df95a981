"""Brute-force enumeration of every transfer system on a small carrier.

Breadth-first search from the discrete system: each known system is extended
by one absent comparable pair and closed.  Transfer systems are closed under
intersection, so every system is reached along a chain of such extensions.
The result is the oracle that the recursions are checked against.
"""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from .lattice import MeetSemilattice, grid, grid_size, make_chain
from .transfer import TransferSystem, _adjacency, _close_adjacency, stats

DEFAULT_BUDGET = 10**7


class BudgetExceeded(RuntimeError):
    def __init__(self, count: int, message: Optional[str] = None):
        super().__init__(message or f"enumeration budget exceeded after {count} systems")
        self.count = count


@dataclass(frozen=True)
class StrataKey:
    stationary: int
    extendable: int
    minimal_fibrant: tuple[int, int]
    liftable: bool
    saturated: bool
    tam: bool


@dataclass
class EnumerationResult:
    carrier: MeetSemilattice
    systems: list[TransferSystem]
    strata: dict[StrataKey, int] = field(default_factory=dict)
    # systems first discovered as the closure of a proper subsystem
    discovered_from_subsystem: int = 0

    def __len__(self):
        return len(self.systems)


def _extensions(carrier: MeetSemilattice, frontier: list[int]) -> set[int]:
    s = carrier.size
    pair_bits = [(1 << (x * s + y), (x, y)) for x, y in carrier.strict_pairs]
    out = set()
    for bits in frontier:
        succ, pred = _adjacency(s, bits)
        for b, p in pair_bits:
            if not bits & b:
                out.add(_close_adjacency(carrier, succ[:], pred[:], (p,)))
    return out


def enumerate_bits(
    carrier: MeetSemilattice, budget: int = DEFAULT_BUDGET, workers: int = 1
) -> tuple[list[int], int]:
    """Sorted bit-vectors of every transfer system, plus the number of systems
    found as the closure of a proper subsystem plus one pair.

    With ``workers > 1`` each frontier is split across processes; the merged
    result is identical to the serial run.
    """
    seen = {0}
    frontier = [0]
    from_sub = 0
    pool = ProcessPoolExecutor(workers) if workers > 1 else None
    try:
        while frontier:
            if pool is None or len(frontier) < 4 * workers:
                found = _extensions(carrier, frontier)
            else:
                chunks = [frontier[i::workers] for i in range(workers)]
                found = set().union(*pool.map(_extensions, [carrier] * workers, chunks))
            nxt = found - seen
            seen |= nxt
            from_sub += len(nxt)
            if len(seen) > budget:
                raise BudgetExceeded(len(seen))
            frontier = sorted(nxt)
    finally:
        if pool is not None:
            pool.shutdown()
    return sorted(seen), from_sub


def enumerate_all(carrier: MeetSemilattice, budget: int = DEFAULT_BUDGET, workers: int = 1) -> EnumerationResult:
    bits, from_sub = enumerate_bits(carrier, budget, workers)
    systems = [TransferSystem(carrier, b) for b in bits]
    res = EnumerationResult(carrier, systems, discovered_from_subsystem=from_sub)
    if grid_size(carrier) is not None:
        res.strata = stratify(res)
    return res


def enumerate_grid(n: int, budget: int = DEFAULT_BUDGET, workers: int = 1) -> EnumerationResult:
    return enumerate_all(grid(n), budget, workers)


def stratify(res: EnumerationResult, n: Optional[int] = None) -> dict[StrataKey, int]:
    if n is None:
        n = grid_size(res.carrier)
    if n is None:
        raise ValueError("stratification needs a grid carrier")
    counts: Counter = Counter()
    for ts in res.systems:
        st = stats(ts)
        counts[StrataKey(st.stationary, st.extendable, st.minimal_fibrant, st.liftable, st.saturated, st.tam)] += 1
    return dict(sorted(counts.items(), key=lambda kv: _key_order(kv[0])))


def _key_order(k: StrataKey):
    return (k.stationary, k.extendable, k.minimal_fibrant, k.liftable, k.saturated, k.tam)


def cells(strata: dict[StrataKey, int], liftable_only: bool = False) -> Counter:
    """Collapse to ``(k, l, (a, b)) -> count``, optionally keeping liftable systems only."""
    out: Counter = Counter()
    for key, c in strata.items():
        if liftable_only and not key.liftable:
            continue
        out[(key.stationary, key.extendable, key.minimal_fibrant)] += c
    return out


def count_catalan_check(n: int) -> bool:
    from .recursions import catalan

    if n > 10:
        raise ValueError("chain check is limited to n <= 10")
    return len(enumerate_all(make_chain(n))) == catalan(n + 1)
