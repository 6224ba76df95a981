import itertools
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from transfer_systems.lattice import grid, grid_duality, make_chain
from transfer_systems.transfer import (
    NotRestrictionClosed,
    TransferSystem,
    WrongCarrier,
    WrongMinimalFibrant,
    closure,
    complete,
    discrete,
    downward_closure,
    dual,
    from_json,
    from_pairs,
    is_liftable,
    is_saturated,
    is_transfer_system,
    minimal_fibrant,
    odot_compose,
    split,
    stationary_elements,
    stats,
    to_json,
)
from transfer_systems.verify import example_system


def idx(n, a, b):
    return a * (n + 1) + b


def naive_closure(lat, pairs):
    """Fixed point of the three axioms by exhaustive sweeps over all triples."""
    rel = {(x, x) for x in range(lat.size)} | set(pairs)
    changed = True
    while changed:
        changed = False
        for (x, y), (y2, z) in itertools.product(list(rel), repeat=2):
            if y == y2 and (x, z) not in rel:
                rel.add((x, z))
                changed = True
        for x, y in list(rel):
            for z in range(lat.size):
                if lat.leq[z][y] and (lat.meet[x][z], z) not in rel:
                    rel.add((lat.meet[x][z], z))
                    changed = True
    return {(x, y) for x, y in rel if x != y}


def brute_transfer_systems(lat):
    """Every subset of comparable pairs that satisfies the axioms."""
    pairs = lat.strict_pairs
    out = set()
    for mask in range(1 << len(pairs)):
        chosen = [p for i, p in enumerate(pairs) if mask >> i & 1]
        if is_transfer_system(lat, chosen):
            out.add(from_pairs(lat, chosen).bits)
    return out


def test_discrete_and_complete_are_transfer_systems():
    for lat in (make_chain(3), grid(2)):
        assert is_transfer_system(lat, discrete(lat))
        assert is_transfer_system(lat, complete(lat))


def test_restriction_violation_witness():
    g = grid(1)
    v = is_transfer_system(g, [(idx(1, 0, 1), idx(1, 1, 1))])
    assert not v
    assert v.axiom == "restriction"
    assert v.missing == (idx(1, 0, 0), idx(1, 1, 0))


def test_refinement_and_transitivity_witnesses():
    g = grid(1)
    v = is_transfer_system(g, [(idx(1, 0, 1), idx(1, 1, 0))])
    assert v.axiom == "refinement"
    c = make_chain(2)
    v = is_transfer_system(c, [(0, 1), (1, 2)])
    assert v.axiom == "transitivity" and v.missing == (0, 2)


def test_closure_examples():
    g = grid(1)
    assert closure(g, []) == discrete(g)
    ts = closure(g, [(idx(1, 0, 1), idx(1, 1, 1))])
    assert ts.pairs() == [(idx(1, 0, 0), idx(1, 1, 0)), (idx(1, 0, 1), idx(1, 1, 1))]
    for n in range(5):
        g = grid(n)
        assert closure(g, g.covers) == complete(g)


def test_closure_rejects_incomparable_seed():
    with pytest.raises(ValueError):
        closure(grid(1), [(idx(1, 0, 1), idx(1, 1, 0))])


@pytest.mark.parametrize("lat", [make_chain(3), grid(1), grid(2)])
def test_all_closures_match_brute_subsets(lat):
    systems = brute_transfer_systems(lat)
    for bits in systems:
        ts = TransferSystem(lat, bits)
        assert closure(lat, ts.pairs()) == ts


@st.composite
def grid_and_seed(draw, max_n=4):
    n = draw(st.integers(0, max_n))
    g = grid(n)
    seed = draw(st.lists(st.sampled_from(g.strict_pairs), max_size=6))
    extra = draw(st.lists(st.sampled_from(g.strict_pairs), max_size=3))
    return g, seed, extra


@settings(max_examples=150, deadline=None)
@given(grid_and_seed())
def test_closure_is_closure_operator(args):
    g, seed, extra = args
    c = closure(g, seed)
    assert is_transfer_system(g, c)
    assert all(c.related(x, y) for x, y in seed)  # extensive
    assert closure(g, c.pairs()) == c  # idempotent
    bigger = closure(g, seed + extra)
    assert c.bits & ~bigger.bits == 0  # monotone
    assert set(c.pairs()) == naive_closure(g, seed)


@settings(max_examples=60, deadline=None)
@given(grid_and_seed())
def test_closure_with_base(args):
    g, seed, extra = args
    base = closure(g, seed)
    assert closure(g, extra, base=base) == closure(g, seed + extra)


def test_minimal_fibrant_extremes():
    for n in range(5):
        g = grid(n)
        assert minimal_fibrant(discrete(g)) == g.top
        assert minimal_fibrant(complete(g)) == g.bottom


def test_example_system():
    ts = example_system()
    assert is_transfer_system(ts.carrier, ts)
    assert minimal_fibrant(ts) == idx(3, 0, 1)
    s = stats(ts)
    assert s.minimal_fibrant == (0, 1)
    # the only top-row arrow is (1,2) -> (1,3), which blocks column 2
    assert stationary_elements(ts) == [0, 1, 3]
    assert (s.stationary, s.extendable) == (3, 3)


def _stationary_by_definition(ts, n):
    out = []
    for b in range(n + 1):
        if not any(
            ts.related(idx(n, 1, c), idx(n, 1, d))
            for c in range(b + 1)
            for d in range(b + 1, n + 1)
        ):
            out.append(b)
    return out


@pytest.mark.parametrize("n", range(4))
def test_stationary_matches_definition(grid_systems, n):
    for ts in grid_systems(n).systems:
        assert stationary_elements(ts) == _stationary_by_definition(ts, n)


@pytest.mark.parametrize("n", range(5))
def test_stats_extremes(n):
    g = grid(n)
    s = stats(discrete(g))
    assert (s.stationary, s.extendable, s.minimal_fibrant) == (n + 1, 1, (1, n))
    s = stats(complete(g))
    assert (s.stationary, s.extendable, s.minimal_fibrant) == (1, n + 1, (0, 0))


def test_liftable_examples():
    g = grid(1)
    assert is_liftable(discrete(g)) and is_liftable(complete(g))
    assert not is_liftable(closure(g, [(idx(1, 1, 0), idx(1, 1, 1))]))


def test_liftable_needs_grid():
    with pytest.raises(WrongCarrier):
        is_liftable(discrete(make_chain(3)))


def test_saturated_count_on_1x1(grid_systems):
    sat = [ts for ts in grid_systems(1).systems if is_liftable(ts) and is_saturated(ts)]
    assert len(sat) == 6


def two_out_of_three(ts):
    c = ts.carrier
    for x, y, z in itertools.product(range(c.size), repeat=3):
        if not (c.leq[x][y] and c.leq[y][z]):
            continue
        held = [ts.related(x, y), ts.related(y, z), ts.related(x, z)]
        if sum(held) == 2:
            return False
    return True


@pytest.mark.parametrize("n", range(5))
def test_saturated_matches_two_out_of_three(grid_systems, n):
    for ts in grid_systems(n).systems:
        assert is_saturated(ts) == two_out_of_three(ts)


def downward_closure_by_definition(ts):
    c = ts.carrier
    return {
        (z, y)
        for x, y, z in itertools.product(range(c.size), repeat=3)
        if c.leq[z][x] and x != y and c.leq[x][y] and ts.related(x, y)
    }


def test_downward_closure_examples():
    g = grid(1)
    assert downward_closure(discrete(g)) == frozenset()
    e = downward_closure(complete(g))
    a, b, c, d = (idx(1, 0, 0), idx(1, 0, 1), idx(1, 1, 0), idx(1, 1, 1))
    assert e == {(a, d), (b, d), (c, d), (a, b), (a, c)}
    g = grid(2)
    x = idx(2, 0, 1)
    ts = closure(g, [(x, g.top)])
    assert {(z, g.top) for z in g.below[x]} <= downward_closure(ts)


@pytest.mark.parametrize("n", range(3))
def test_downward_closure_matches_definition(grid_systems, n):
    for ts in grid_systems(n).systems:
        assert downward_closure(ts) == downward_closure_by_definition(ts)


@pytest.mark.parametrize("n", range(5))
def test_dual_swaps_extremes(n):
    g = grid(n)
    assert dual(discrete(g)) == complete(g)
    assert dual(complete(g)) == discrete(g)


def test_dual_is_involution_on_1x2(grid_systems):
    for ts in grid_systems(2).systems:
        assert dual(dual(ts)) == ts


@pytest.mark.parametrize("n", range(5))
def test_dual_swaps_strata(grid_systems, n):
    d = grid_duality(n)
    for ts in grid_systems(n).systems:
        s, sd = stats(ts), stats(dual(ts, d))
        a, b = s.minimal_fibrant
        assert (sd.stationary, sd.extendable) == (s.extendable, s.stationary)
        assert sd.minimal_fibrant == (1 - a, n - b)
        assert dual(dual(ts, d), d) == ts


def test_dual_breaks_liftability(grid_systems):
    witnesses = [ts for ts in grid_systems(2).systems if is_liftable(ts) and not is_liftable(dual(ts))]
    assert witnesses


def test_split_example():
    ts = example_system()
    x, r1, r2, emb1, emb2 = split(ts)
    assert x == idx(3, 0, 1)
    assert r1.carrier.leq == make_chain(1).leq
    assert r2.carrier.leq == grid(2).leq
    assert r1.pairs() == [(0, 1)]
    assert minimal_fibrant(r2) == r2.carrier.bottom
    assert odot_compose(ts.carrier, x, r1, r2) == ts


def test_split_extremes():
    g = grid(3)
    x, r1, r2, _, _ = split(discrete(g))
    assert x == g.top and r2.carrier.size == 1 and r2.bits == 0
    x, r1, r2, _, _ = split(complete(g))
    assert x == g.bottom and r1.carrier.size == 0
    assert r2.carrier.leq == g.leq and r2.bits == complete(g).bits


def test_compose_trivial():
    g = grid(2)
    x, r1, r2, _, _ = split(discrete(g))
    assert odot_compose(g, g.top, from_pairs(r1.carrier, []), r2) == discrete(g)


def test_compose_rejects_modified_example():
    ts = example_system()
    x, r1, r2, _, _ = split(ts)
    with pytest.raises(NotRestrictionClosed) as exc:
        odot_compose(ts.carrier, x, from_pairs(r1.carrier, []), r2)
    assert exc.value.verdict.missing == (idx(3, 0, 0), idx(3, 1, 0))


def test_compose_rejects_wrong_fibrant():
    ts = example_system()
    x, r1, r2, _, _ = split(ts)
    with pytest.raises(WrongMinimalFibrant):
        odot_compose(ts.carrier, x, r1, from_pairs(r2.carrier, []))


@pytest.mark.parametrize("n", range(5))
def test_split_compose_round_trip(grid_systems, n):
    for ts in grid_systems(n).systems:
        x, r1, r2, _, _ = split(ts)
        assert odot_compose(ts.carrier, x, r1, r2) == ts
        again = split(odot_compose(ts.carrier, x, r1, r2))
        assert (again.x, again.r1.bits, again.r2.bits) == (x, r1.bits, r2.bits)


def test_json_round_trip():
    ts = example_system()
    obj = json.loads(to_json(ts))
    assert obj["n"] == 3
    assert obj["pairs"][0] == [0, 0, 1, 0]
    assert [0, 1, 1, 3] in obj["pairs"]
    assert from_json(to_json(ts)) == ts
