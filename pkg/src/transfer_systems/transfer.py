"""Transfer systems on finite meet-semilattices.

A transfer system is stored as an integer bit-vector: bit ``x * size + y`` is
set iff ``x R y`` for a strict pair ``x < y``.  Reflexive pairs are implicit.
Because every supported carrier has meets, the restriction axiom reads:
``x R y`` and ``z <= y`` imply ``(x meet z) R z``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional, Union

from .lattice import (
    DualityMap,
    Lattice,
    MeetSemilattice,
    grid,
    grid_duality,
    grid_size,
    up_set,
    up_set_complement,
)

Pair = tuple[int, int]


class TransferError(ValueError):
    pass


class WrongCarrier(TransferError):
    pass


class NotRestrictionClosed(TransferError):
    def __init__(self, verdict: "Verdict"):
        super().__init__(f"pair is not restriction closed: {verdict}")
        self.verdict = verdict


class WrongMinimalFibrant(TransferError):
    pass


class InternalInvariant(AssertionError):
    """Raised when a computed object violates an axiom it must satisfy."""


def iter_bits(m: int):
    while m:
        low = m & -m
        yield low.bit_length() - 1
        m ^= low


@dataclass(frozen=True, eq=False)
class TransferSystem:
    carrier: MeetSemilattice
    bits: int

    def __eq__(self, other):
        if not isinstance(other, TransferSystem):
            return NotImplemented
        return self.bits == other.bits and (
            self.carrier is other.carrier or self.carrier == other.carrier
        )

    def __hash__(self):
        return hash(self.bits)

    def __lt__(self, other: "TransferSystem") -> bool:
        return self.bits < other.bits

    def __contains__(self, pair: Pair) -> bool:
        return self.related(*pair)

    def related(self, x: int, y: int) -> bool:
        return x == y or bool(self.bits >> (x * self.carrier.size + y) & 1)

    def pairs(self) -> list[Pair]:
        """Strict relations in canonical (lexicographic) order."""
        return [divmod(i, self.carrier.size) for i in iter_bits(self.bits)]

    def __len__(self) -> int:
        return bin(self.bits).count("1")

    def __repr__(self):
        c = self.carrier
        body = ", ".join(f"{c.label(x)}->{c.label(y)}" for x, y in self.pairs())
        return f"TransferSystem({{{body}}})"


def bits_of(carrier: MeetSemilattice, pairs: Iterable[Pair]) -> int:
    s = carrier.size
    out = 0
    for x, y in pairs:
        if x != y:
            out |= 1 << (x * s + y)
    return out


def from_pairs(carrier: MeetSemilattice, pairs: Iterable[Pair]) -> TransferSystem:
    """Wrap ``pairs`` without checking the axioms."""
    return TransferSystem(carrier, bits_of(carrier, pairs))


def discrete(carrier: MeetSemilattice) -> TransferSystem:
    return TransferSystem(carrier, 0)


def complete(carrier: MeetSemilattice) -> TransferSystem:
    return TransferSystem(carrier, bits_of(carrier, carrier.strict_pairs))


class Verdict(NamedTuple):
    ok: bool
    axiom: Optional[str] = None
    witness: Optional[tuple] = None
    missing: Optional[Pair] = None

    def __bool__(self):
        return self.ok


def is_transfer_system(carrier: MeetSemilattice, rel: Union[int, TransferSystem, Iterable[Pair]]) -> Verdict:
    """Check refinement, transitivity and restriction; report the first failure.

    Witnesses are ``(x, y)`` for refinement, ``(x, y, z)`` for transitivity
    (``x R y R z``) and for restriction (``x R y``, ``z <= y``).  ``missing`` is the
    pair whose absence breaks the axiom.
    """
    if isinstance(rel, TransferSystem):
        bits = rel.bits
    elif isinstance(rel, int):
        bits = rel
    else:
        bits = bits_of(carrier, rel)
    s = carrier.size
    if bits >> (s * s):
        raise ValueError("relation is not sized for this carrier")
    pairs = [divmod(i, s) for i in iter_bits(bits)]

    def rel_(x, y):
        return x == y or bits >> (x * s + y) & 1

    for x, y in pairs:
        if x == y or not carrier.leq[x][y]:
            return Verdict(False, "refinement", (x, y), None)
    for x, y in pairs:
        for z in iter_bits(bits >> (y * s) & ((1 << s) - 1)):
            if not rel_(x, z):
                return Verdict(False, "transitivity", (x, y, z), (x, z))
    for x, y in pairs:
        for z in carrier.below[y]:
            w = carrier.meet[x][z]
            if not rel_(w, z):
                return Verdict(False, "restriction", (x, y, z), (w, z))
    return Verdict(True)


def _adjacency(size: int, bits: int) -> tuple[list[int], list[int]]:
    succ = [0] * size
    pred = [0] * size
    for i in iter_bits(bits):
        x, y = divmod(i, size)
        succ[x] |= 1 << y
        pred[y] |= 1 << x
    return succ, pred


def _close_adjacency(carrier: MeetSemilattice, succ: list[int], pred: list[int], seed: Iterable[Pair]) -> int:
    """Close in place; ``succ``/``pred`` must describe a transfer system."""
    s = carrier.size
    meet = carrier.meet
    below = carrier.below
    work = []

    def add(u, v):
        if u != v and not (succ[u] >> v) & 1:
            succ[u] |= 1 << v
            pred[v] |= 1 << u
            work.append((u, v))

    for u, v in seed:
        add(u, v)
    while work:
        u, v = work.pop()
        for p in iter_bits(pred[u]):
            add(p, v)
        for q in iter_bits(succ[v]):
            add(u, q)
        mu = meet[u]
        for z in below[v]:
            add(mu[z], z)
    out = 0
    for x in range(s):
        out |= succ[x] << (x * s)
    return out


def _close_bits(carrier: MeetSemilattice, bits: int, seed: Iterable[Pair]) -> int:
    """Smallest transfer system containing ``bits`` (already closed) and ``seed``."""
    succ, pred = _adjacency(carrier.size, bits)
    return _close_adjacency(carrier, succ, pred, seed)


def closure(carrier: MeetSemilattice, seed: Iterable[Pair], base: Optional[TransferSystem] = None) -> TransferSystem:
    """The smallest transfer system containing ``seed`` (and ``base``, if given)."""
    seed = list(seed)
    for x, y in seed:
        if not carrier.leq[x][y]:
            raise ValueError(f"seed pair ({x}, {y}) is not comparable")
    start = base.bits if base is not None else 0
    return TransferSystem(carrier, _close_bits(carrier, start, seed))


def minimal_fibrant(ts: TransferSystem) -> int:
    c = ts.carrier
    if not isinstance(c, Lattice):
        raise WrongCarrier("minimal fibrant element needs a carrier with a top")
    m = c.top
    x = m
    for y in range(c.size):
        if y != m and ts.related(y, m):
            x = c.meet[x][y]
    return x


def _grid_n(ts: TransferSystem) -> int:
    n = grid_size(ts.carrier)
    if n is None:
        raise WrongCarrier("operation requires the grid [1] x [n]")
    return n


def is_liftable(ts: TransferSystem) -> bool:
    n = _grid_n(ts)
    top = n + 1
    for i in range(n + 1):
        if ts.related(i, top + i):
            continue
        if any(ts.related(top + i, top + j) for j in range(i + 1, n + 1)):
            return False
    return True


def is_saturated(ts: TransferSystem) -> bool:
    """``x R z`` and ``x <= y <= z`` imply ``y R z``."""
    c = ts.carrier
    for x, z in ts.pairs():
        for y in c.below[z]:
            if c.leq[x][y] and not ts.related(y, z):
                return False
    return True


@dataclass(frozen=True)
class Stats:
    minimal_fibrant: tuple[int, int]
    stationary: int
    extendable: int
    liftable: bool
    saturated: bool
    tam: bool

    @property
    def key(self) -> tuple:
        return (self.stationary, self.extendable, self.minimal_fibrant)


def stationary_elements(ts: TransferSystem) -> list[int]:
    """Columns ``b`` with no top-row arrow ``(1,c) R (1,d)``, ``c <= b < d``."""
    n = _grid_n(ts)
    top = n + 1
    blocked = [False] * (n + 1)
    for x, y in ts.pairs():
        if x >= top and y >= top:
            for b in range(x - top, y - top):
                blocked[b] = True
    return [b for b in range(n + 1) if not blocked[b]]


def extendable_elements(ts: TransferSystem) -> list[int]:
    n = _grid_n(ts)
    return [b for b in range(n + 1) if ts.related(b, n)]


def stats(ts: TransferSystem) -> Stats:
    n = _grid_n(ts)
    a, b = divmod(minimal_fibrant(ts), n + 1)
    return Stats(
        minimal_fibrant=(a, b),
        stationary=len(stationary_elements(ts)),
        extendable=len(extendable_elements(ts)),
        liftable=is_liftable(ts),
        saturated=is_saturated(ts),
        tam=ts.related(n, 2 * n + 1),
    )


def downward_closure(ts: TransferSystem) -> frozenset[Pair]:
    """Pairs ``(z, y)`` such that ``z <= x < y`` and ``x R y`` for some ``x``."""
    c = ts.carrier
    out = set()
    for x, y in ts.pairs():
        for z in c.below[x]:
            out.add((z, y))
    return frozenset(out)


def dual(ts: TransferSystem, d: Optional[DualityMap] = None) -> TransferSystem:
    """``u R* v`` iff ``(d(v), d(u))`` is not in the downward closure of ``R``."""
    c = ts.carrier
    if d is None:
        d = grid_duality(_grid_n(ts))
    e = downward_closure(ts)
    out = TransferSystem(c, bits_of(c, ((u, v) for u, v in c.strict_pairs if (d(v), d(u)) not in e)))
    verdict = is_transfer_system(c, out)
    if not verdict:
        raise InternalInvariant(f"dual is not a transfer system: {verdict}")
    return out


def restrict(ts: TransferSystem, sub: MeetSemilattice, emb: tuple[int, ...]) -> TransferSystem:
    pos = {e: i for i, e in enumerate(emb)}
    return from_pairs(sub, ((pos[x], pos[y]) for x, y in ts.pairs() if x in pos and y in pos))


class Split(NamedTuple):
    x: int
    r1: TransferSystem
    r2: TransferSystem
    emb1: tuple[int, ...]
    emb2: tuple[int, ...]


def split(ts: TransferSystem) -> Split:
    """Cut ``ts`` along its minimal fibrant element ``x``.

    ``r1`` lives on the complement of the up-set of ``x`` (possibly empty),
    ``r2`` on the up-set itself.
    """
    c = ts.carrier
    x = minimal_fibrant(ts)
    lower, emb1 = up_set_complement(c, x, allow_empty=True)
    upper, emb2 = up_set(c, x)
    r1 = restrict(ts, lower, emb1)
    r2 = restrict(ts, upper, emb2)
    up = set(emb2)
    crossing = [(u, v) for u, v in ts.pairs() if (u in up) != (v in up)]
    if crossing:
        raise InternalInvariant(f"relations cross the split at {x}: {crossing[:3]}")
    return Split(x, r1, r2, emb1, emb2)


def odot_compose(lat: Lattice, x: int, r1: TransferSystem, r2: TransferSystem) -> TransferSystem:
    """Reassemble ``r1`` (below the cut) and ``r2`` (on the up-set of ``x``).

    Raises ``WrongMinimalFibrant`` if ``x`` is not the minimal fibrant element
    of ``r2`` and ``NotRestrictionClosed`` if the union is not a transfer system.
    """
    lower, emb1 = up_set_complement(lat, x, allow_empty=True)
    upper, emb2 = up_set(lat, x)
    if r1.carrier.size != lower.size or r2.carrier.size != upper.size:
        raise WrongCarrier("carriers do not match the cut at x")
    if minimal_fibrant(TransferSystem(upper, r2.bits)) != upper.bottom:
        raise WrongMinimalFibrant(f"{lat.label(x)} is not the minimal fibrant element of r2")
    pairs = [(emb1[u], emb1[v]) for u, v in r1.pairs()]
    pairs += [(emb2[u], emb2[v]) for u, v in r2.pairs()]
    out = from_pairs(lat, pairs)
    verdict = is_transfer_system(lat, out)
    if not verdict:
        raise NotRestrictionClosed(verdict)
    return out


def grid_pair(n: int, x: int, y: int) -> list[int]:
    a, b = divmod(x, n + 1)
    c, d = divmod(y, n + 1)
    return [a, b, c, d]


def to_json_obj(ts: TransferSystem) -> dict:
    n = _grid_n(ts)
    return {"n": n, "pairs": [grid_pair(n, x, y) for x, y in ts.pairs()]}


def to_json(ts: TransferSystem) -> str:
    return json.dumps(to_json_obj(ts), separators=(",", ":"))


def from_json(text_or_obj, carrier: Optional[Lattice] = None) -> TransferSystem:
    obj = json.loads(text_or_obj) if isinstance(text_or_obj, str) else text_or_obj
    n = obj["n"]
    lat = carrier if carrier is not None else grid(n)
    w = n + 1
    ts = from_pairs(lat, ((a * w + b, c * w + d) for a, b, c, d in obj["pairs"]))
    verdict = is_transfer_system(lat, ts)
    if not verdict:
        raise TransferError(f"not a transfer system: {verdict}")
    return ts
