"""Finite lattices and meet-semilattices on dense integer indices.

Elements are always ``0 .. size-1``.  Grids ``[1] x [n]`` use the row-major
index ``a * (n + 1) + b`` for the element ``(a, b)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Sequence

Matrix = tuple[tuple[bool, ...], ...]
Table = tuple[tuple[int, ...], ...]


class LatticeError(ValueError):
    pass


class NotAPartialOrder(LatticeError):
    def __init__(self, axiom: str, x: int, y: int):
        super().__init__(f"relation is not {axiom} at ({x}, {y})")
        self.axiom = axiom
        self.x = x
        self.y = y


class NoMeet(LatticeError):
    def __init__(self, x: int, y: int):
        super().__init__(f"elements {x} and {y} have no greatest lower bound")
        self.x = x
        self.y = y


class NoJoin(LatticeError):
    def __init__(self, x: int, y: int):
        super().__init__(f"elements {x} and {y} have no least upper bound")
        self.x = x
        self.y = y


class EmptyComplement(LatticeError):
    pass


@dataclass(frozen=True, eq=True)
class MeetSemilattice:
    """A finite meet-semilattice: an order matrix plus its meet table.

    ``bottom`` is ``None`` only for the empty carrier, which appears as the
    complement of the bottom element's up-set.
    """

    size: int
    leq: Matrix
    meet: Table
    bottom: Optional[int]
    labels: Optional[tuple[str, ...]] = field(default=None, compare=False)

    @cached_property
    def below(self) -> tuple[tuple[int, ...], ...]:
        """``below[y]`` lists every ``z <= y`` in index order."""
        return tuple(
            tuple(z for z in range(self.size) if self.leq[z][y]) for y in range(self.size)
        )

    @cached_property
    def strict_pairs(self) -> tuple[tuple[int, int], ...]:
        """All ``(x, y)`` with ``x < y``, in lexicographic order."""
        return tuple(
            (x, y)
            for x in range(self.size)
            for y in range(self.size)
            if x != y and self.leq[x][y]
        )

    def label(self, x: int) -> str:
        return self.labels[x] if self.labels else str(x)


@dataclass(frozen=True, eq=True)
class Lattice(MeetSemilattice):
    join: Table = ()
    top: int = 0

    @cached_property
    def covers(self) -> tuple[tuple[int, int], ...]:
        """Covering pairs ``x < y`` with nothing strictly between."""
        out = []
        for x, y in self.strict_pairs:
            if not any(
                z != x and z != y and self.leq[x][z] and self.leq[z][y]
                for z in range(self.size)
            ):
                out.append((x, y))
        return tuple(out)


@dataclass(frozen=True)
class GridElement:
    """The element ``(a, b)`` of ``[1] x [n]``; ``a`` is the row."""

    a: int
    b: int

    def index(self, n: int) -> int:
        return self.a * (n + 1) + self.b

    @classmethod
    def from_index(cls, i: int, n: int) -> "GridElement":
        return cls(*divmod(i, n + 1))

    def __le__(self, other: "GridElement") -> bool:
        return self.a <= other.a and self.b <= other.b


@dataclass(frozen=True)
class DualityMap:
    perm: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.perm[x]

    def is_order_reversing(self, lat: MeetSemilattice) -> bool:
        r = range(lat.size)
        return all(lat.leq[x][y] == lat.leq[self.perm[y]][self.perm[x]] for x in r for y in r)

    def is_involution(self) -> bool:
        return all(self.perm[self.perm[x]] == x for x in range(len(self.perm)))


def _freeze(rows) -> tuple:
    return tuple(tuple(r) for r in rows)


def make_chain(n: int) -> Lattice:
    """The total order ``0 < 1 < ... < n``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    r = range(n + 1)
    return Lattice(
        size=n + 1,
        leq=_freeze([[x <= y for y in r] for x in r]),
        meet=_freeze([[min(x, y) for y in r] for x in r]),
        bottom=0,
        labels=tuple(str(x) for x in r),
        join=_freeze([[max(x, y) for y in r] for x in r]),
        top=n,
    )


def product(l1: Lattice, l2: Lattice) -> Lattice:
    """Componentwise product; element ``(i, j)`` has index ``i * l2.size + j``."""
    s2 = l2.size
    size = l1.size * s2
    pairs = [divmod(x, s2) for x in range(size)]

    def idx(i, j):
        return i * s2 + j

    leq = [[l1.leq[i][k] and l2.leq[j][m] for (k, m) in pairs] for (i, j) in pairs]
    meet = [[idx(l1.meet[i][k], l2.meet[j][m]) for (k, m) in pairs] for (i, j) in pairs]
    join = [[idx(l1.join[i][k], l2.join[j][m]) for (k, m) in pairs] for (i, j) in pairs]
    labels = tuple(f"({l1.label(i)},{l2.label(j)})" for (i, j) in pairs)
    return Lattice(
        size=size,
        leq=_freeze(leq),
        meet=_freeze(meet),
        bottom=idx(l1.bottom, l2.bottom),
        labels=labels,
        join=_freeze(join),
        top=idx(l1.top, l2.top),
    )


def grid(n: int) -> Lattice:
    """The lattice ``[1] x [n]``."""
    return product(make_chain(1), make_chain(n))


def _bound(leq, x, y, lower: bool) -> Optional[int]:
    r = range(len(leq))
    if lower:
        cands = [z for z in r if leq[z][x] and leq[z][y]]
        best = [z for z in cands if all(leq[w][z] for w in cands)]
    else:
        cands = [z for z in r if leq[x][z] and leq[y][z]]
        best = [z for z in cands if all(leq[z][w] for w in cands)]
    return best[0] if best else None


def check_partial_order(leq: Sequence[Sequence[bool]]) -> None:
    size = len(leq)
    if any(len(row) != size for row in leq):
        raise ValueError("order matrix must be square")
    r = range(size)
    for x in r:
        if not leq[x][x]:
            raise NotAPartialOrder("reflexive", x, x)
    for x in r:
        for y in r:
            if x != y and leq[x][y] and leq[y][x]:
                raise NotAPartialOrder("antisymmetric", x, y)
    for x in r:
        for y in r:
            if leq[x][y]:
                for z in r:
                    if leq[y][z] and not leq[x][z]:
                        raise NotAPartialOrder("transitive", x, z)


def validate(leq: Sequence[Sequence[bool]], labels: Optional[Sequence[str]] = None) -> Lattice:
    """Check that ``leq`` is a lattice order and build its tables.

    Raises the first violated axiom with a witness pair.
    """
    check_partial_order(leq)
    leq_t = _freeze([[bool(v) for v in row] for row in leq])
    size = len(leq_t)
    if size == 0:
        raise ValueError("a lattice needs at least one element")
    r = range(size)
    meet = [[0] * size for _ in r]
    join = [[0] * size for _ in r]
    for x in r:
        for y in r:
            m = _bound(leq_t, x, y, lower=True)
            if m is None:
                raise NoMeet(x, y)
            meet[x][y] = m
    for x in r:
        for y in r:
            j = _bound(leq_t, x, y, lower=False)
            if j is None:
                raise NoJoin(x, y)
            join[x][y] = j
    bottom = next(z for z in r if all(leq_t[z][w] for w in r))
    top = next(z for z in r if all(leq_t[w][z] for w in r))
    return Lattice(
        size=size,
        leq=leq_t,
        meet=_freeze(meet),
        bottom=bottom,
        labels=tuple(labels) if labels else None,
        join=_freeze(join),
        top=top,
    )


def _induced(lat: MeetSemilattice, elems: list[int]):
    pos = {e: i for i, e in enumerate(elems)}
    leq = _freeze([[lat.leq[x][y] for y in elems] for x in elems])
    meet = _freeze([[pos[lat.meet[x][y]] for y in elems] for x in elems])
    labels = tuple(lat.label(e) for e in elems) if lat.labels else None
    return pos, leq, meet, labels


def up_set(lat: Lattice, x: int) -> tuple[Lattice, tuple[int, ...]]:
    """The sublattice ``{y : y >= x}`` and its embedding into ``lat``."""
    elems = [y for y in range(lat.size) if lat.leq[x][y]]
    pos, leq, meet, labels = _induced(lat, elems)
    join = _freeze([[pos[lat.join[u][v]] for v in elems] for u in elems])
    sub = Lattice(
        size=len(elems),
        leq=leq,
        meet=meet,
        bottom=pos[x],
        labels=labels,
        join=join,
        top=pos[lat.top],
    )
    return sub, tuple(elems)


def up_set_complement(
    lat: Lattice, x: int, allow_empty: bool = False
) -> tuple[MeetSemilattice, tuple[int, ...]]:
    """The sub-meet-semilattice ``{y : not y >= x}`` and its embedding."""
    elems = [y for y in range(lat.size) if not lat.leq[x][y]]
    if not elems and not allow_empty:
        raise EmptyComplement(f"complement of the up-set of the bottom element {x} is empty")
    pos, leq, meet, labels = _induced(lat, elems)
    bottom = pos[lat.bottom] if elems else None
    return MeetSemilattice(size=len(elems), leq=leq, meet=meet, bottom=bottom, labels=labels), tuple(elems)


def grid_duality(n: int) -> DualityMap:
    """``(a, b) -> (1 - a, n - b)`` on ``[1] x [n]``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return DualityMap(tuple((1 - a) * (n + 1) + (n - b) for a in (0, 1) for b in range(n + 1)))


def grid_size(lat: MeetSemilattice) -> Optional[int]:
    """Return ``n`` if ``lat`` is (index-for-index) the grid ``[1] x [n]``, else ``None``."""
    if not isinstance(lat, Lattice) or lat.size < 2 or lat.size % 2:
        return None
    n = lat.size // 2 - 1
    if lat.leq != _grid_leq(n):
        return None
    return n


_GRID_LEQ: dict[int, Matrix] = {}


def _grid_leq(n: int) -> Matrix:
    if n not in _GRID_LEQ:
        _GRID_LEQ[n] = grid(n).leq
    return _GRID_LEQ[n]


def dumps(lat: Lattice) -> str:
    """Text form: ``n=<size>`` then one ``i<j`` line per covering pair."""
    lines = [f"n={lat.size}"] + [f"{x}<{y}" for x, y in lat.covers]
    return "\n".join(lines) + "\n"


def loads(text: str) -> Lattice:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("n="):
        raise ValueError("expected a first line of the form n=<size>")
    size = int(lines[0][2:])
    leq = [[x == y for y in range(size)] for x in range(size)]
    for ln in lines[1:]:
        i, sep, j = ln.partition("<")
        if not sep:
            raise ValueError(f"bad covering line: {ln!r}")
        leq[int(i)][int(j)] = True
    # reflexive-transitive closure of the covering relation
    for k in range(size):
        for i in range(size):
            if leq[i][k]:
                for j in range(size):
                    if leq[k][j]:
                        leq[i][j] = True
    return validate(leq)
