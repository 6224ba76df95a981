import pytest

from transfer_systems.enumerator import (
    BudgetExceeded,
    cells,
    count_catalan_check,
    enumerate_all,
    enumerate_bits,
    enumerate_grid,
    stratify,
)
from transfer_systems.lattice import grid, make_chain, validate
from transfer_systems.recursions import catalan
from transfer_systems.transfer import from_pairs, is_transfer_system


def subsets_oracle(lat):
    pairs = lat.strict_pairs
    found = []
    for mask in range(1 << len(pairs)):
        chosen = [p for i, p in enumerate(pairs) if mask >> i & 1]
        if is_transfer_system(lat, chosen):
            found.append(from_pairs(lat, chosen).bits)
    return sorted(found)


@pytest.mark.parametrize("lat", [make_chain(2), make_chain(4), grid(0), grid(1), grid(2)])
def test_bfs_matches_subset_search(lat):
    bits, _ = enumerate_bits(lat)
    assert bits == subsets_oracle(lat)


def test_non_grid_lattice():
    # the diamond M3: bottom, three atoms, top
    leq = [[i == j or i == 0 or j == 4 for j in range(5)] for i in range(5)]
    lat = validate(leq)
    res = enumerate_all(lat)
    assert [ts.bits for ts in res.systems] == subsets_oracle(lat)
    assert res.strata == {}
    with pytest.raises(ValueError):
        stratify(res)


@pytest.mark.parametrize("n", range(7))
def test_chain_counts_are_catalan(n):
    assert len(enumerate_all(make_chain(n))) == catalan(n + 1)
    assert count_catalan_check(n)


def test_catalan_check_limit():
    with pytest.raises(ValueError):
        count_catalan_check(11)


def test_output_sorted_and_deterministic():
    a = enumerate_grid(3)
    b = enumerate_grid(3)
    assert [t.bits for t in a.systems] == [t.bits for t in b.systems]
    assert a.systems == sorted(a.systems)
    assert len({t.bits for t in a.systems}) == len(a)


@pytest.mark.parametrize("n", range(4))
def test_every_nondiscrete_system_comes_from_a_subsystem(grid_systems, n):
    res = grid_systems(n)
    assert res.discovered_from_subsystem == len(res) - 1


def test_budget():
    with pytest.raises(BudgetExceeded) as exc:
        enumerate_grid(3, budget=100)
    assert exc.value.count > 100
    assert len(enumerate_grid(1, budget=10)) == 10


def test_workers_give_same_result():
    serial = enumerate_grid(3)
    parallel = enumerate_grid(3, workers=2)
    assert [t.bits for t in parallel.systems] == [t.bits for t in serial.systems]
    assert parallel.strata == serial.strata


def test_strata_totals(grid_systems):
    for n, (lift, total) in enumerate([(2, 2), (9, 10), (56, 68), (416, 544)]):
        res = grid_systems(n)
        assert sum(res.strata.values()) == total
        assert sum(cells(res.strata, liftable_only=True).values()) == lift


def _by_kl(c):
    out = {}
    for (k, l, _), v in c.items():
        out[k, l] = out.get((k, l), 0) + v
    return out


def test_strata_examples(grid_systems):
    strata = grid_systems(2).strata
    assert _by_kl(cells(strata)) == {
        (1, 2): 4, (1, 3): 9, (2, 1): 4, (2, 2): 10, (2, 3): 12, (3, 1): 9, (3, 2): 12, (3, 3): 8,
    }
    lift = _by_kl(cells(strata, liftable_only=True))
    assert sum(v for (k, l), v in lift.items() if l == 3) == 22


def test_tam_count(grid_systems):
    for n in range(5):
        res = grid_systems(n)
        tam = sum(v for k, v in res.strata.items() if k.tam)
        assert tam == {0: 1, 1: 3, 2: 13, 3: 68, 4: 399}[n]
