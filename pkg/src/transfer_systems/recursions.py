"""Exact counting formulas and stratified recursions.

Everything here is integer arithmetic.  Factorial quotients go through
:func:`exact_div`, which refuses to truncate.

Strata are indexed by ``(n, k, l, (a, b))``: ``k`` stationary elements,
``l`` extendable elements, minimal fibrant element ``(a, b)`` of ``[1] x [n]``.
Two families are tabulated: ``"L"`` (liftable systems) and ``"T"`` (all).
"""

from __future__ import annotations

import threading
from functools import lru_cache
from math import comb, factorial

import mpmath

try:
    from gmpy2 import mpz as _big
except ImportError:  # pragma: no cover
    _big = int

FAMILIES = ("L", "T")


def exact_div(num: int, den: int) -> int:
    q, r = divmod(num, den)
    if r:
        raise ArithmeticError(f"inexact division {num} / {den}")
    return q


@lru_cache(maxsize=None)
def catalan(n: int) -> int:
    if n < 0:
        return 0
    return exact_div(comb(2 * n, n), n + 1)


def narayana(n: int, k: int) -> int:
    if n < 1 or k < 1 or k > n:
        return 0
    return exact_div(comb(n, k) * comb(n, k - 1), n)


@lru_cache(maxsize=None)
def tam(n: int, k: int) -> int:
    """Tamari intervals on ``[n]`` whose lower end has ``k`` stationary elements."""
    if n < 0 or k < 1 or k > n + 1:
        return 0
    num = 2 * factorial(2 * k + 1) * factorial(4 * n - 2 * k + 3)
    den = (
        factorial(k - 1)
        * factorial(k + 1)
        * factorial(n - k + 1)
        * factorial(3 * n - k + 4)
    )
    return exact_div(num, den)


def tam_total(n: int) -> int:
    """Chapoton's count of Tamari intervals on ``[n]``."""
    total = exact_div(2 * comb(4 * n + 5, n), (n + 1) * (n + 2))
    assert total == sum(tam(n, k) for k in range(1, n + 2))
    return total


# -- Schroeder numbers -------------------------------------------------------


@lru_cache(maxsize=None)
def _schroder_table(n: int) -> tuple[int, ...]:
    s = [1, 2]
    for m in range(2, n + 1):
        s.append(3 * s[m - 1] + sum(s[k] * s[m - k - 1] for k in range(1, m - 1)))
    return tuple(s)


def schroder_recurrence(n: int) -> int:
    return _schroder_table(max(n, 1))[n]


def schroder_narayana(n: int) -> int:
    if n == 0:
        return 1
    return sum(narayana(n, k) << k for k in range(1, n + 1))


def schroder(n: int) -> int:
    """Large Schroeder number, evaluated two ways and cross-checked."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    a = schroder_recurrence(n)
    b = schroder_narayana(n)
    if a != b:
        raise ArithmeticError(f"Schroeder evaluations disagree at n={n}: {a} != {b}")
    return a


def refined_schroder_formula(n: int, k: int) -> int:
    """Royal ``n``-paths with ``k`` diagonal returns."""
    if k < 1 or n < k:
        return 0
    if n == k:
        return 1 << n
    m = n - k
    s = sum(comb(m, p) * comb(n - 1 + p, p - 1) for p in range(1, m + 1))
    return exact_div((s * k) << k, m)


@lru_cache(maxsize=None)
def refined_schroder_recurrence(n: int, k: int) -> int:
    """First-return decomposition: a return at ``(1,1)`` (``EN`` or ``D``) leaves a
    royal ``(n-1)``-path with ``k-1`` returns; a later first return leaves one
    with at least ``k``.  The empty path has zero returns.
    """
    if n == 0:
        return 1 if k == 0 else 0
    if k < 1 or n < k:
        return 0
    return 2 * refined_schroder_recurrence(n - 1, k - 1) + sum(
        refined_schroder_recurrence(n - 1, p) for p in range(k, n)
    )


def refined_schroder(n: int, k: int) -> int:
    a = refined_schroder_formula(n, k)
    b = refined_schroder_recurrence(n, k)
    if a != b:
        raise ArithmeticError(f"refined Schroeder evaluations disagree at ({n}, {k})")
    return a


# -- antichain numbers -------------------------------------------------------


def antichain_formula(n: int) -> int:
    if n < 1:
        raise ValueError("n must be positive")
    s = sum(comb(2 * i + 1, i) * comb(2 * n - 1, n - i - 1) for i in range(n))
    return exact_div(s, 2 * n - 1)


@lru_cache(maxsize=None)
def _antichain_table(n: int) -> tuple[int, ...]:
    a = [0, 1]
    for m in range(2, n + 1):
        a.append(sum(a[m - j] * a[j] + a[m - j] * catalan(j - 1) for j in range(1, m)))
    return tuple(a)


def antichain_recurrence(n: int) -> int:
    if n < 1:
        raise ValueError("n must be positive")
    return _antichain_table(n)[n]


def antichain(n: int) -> int:
    """Rooted subtrees summed over rooted planar trees with ``n`` nodes."""
    a = antichain_formula(n)
    b = antichain_recurrence(n)
    if a != b:
        raise ArithmeticError(f"antichain evaluations disagree at n={n}: {a} != {b}")
    return a


def saturated_liftable_count(n: int) -> int:
    return (n + 2) << n


# -- stratified recursions -----------------------------------------------------


class StrataTable:
    """Bottom-up memo for one family.

    Per level ``n`` it keeps two ``(n+3) x (n+3)`` grids indexed ``[k][l]``:
    ``agg`` (summed over the minimal fibrant element) and ``zero`` (minimal
    fibrant element ``(0,0)``).  Every other stratum is a cheap combination of
    these, see :meth:`stratum`.  Out-of-range indices read as zero.
    """

    def __init__(self, family: str):
        if family not in FAMILIES:
            raise ValueError(f"unknown family {family!r}")
        self.family = family
        self.agg: list[list[list[int]]] = []
        self.zero: list[list[list[int]]] = []
        self._zero_total: list[int] = []
        self._stride = 64
        self._packed: dict = {}
        self._lock = threading.Lock()

    @property
    def level(self) -> int:
        return len(self.agg) - 1

    def fill(self, n: int) -> None:
        with self._lock:
            while self.level < n:
                self._step()

    def _step(self) -> None:
        n = self.level + 1
        w = n + 3
        agg = [[0] * w for _ in range(w)]
        zero = [[0] * w for _ in range(w)]
        if n == 0:
            # [1] x [0]: the system with (0,0) R (1,0), and the discrete one
            zero[1][1] = 1
            agg[1][1] = 2
            self.agg.append(agg)
            self.zero.append(zero)
            self._zero_total.append(1)
            return
        prev = self.agg[n - 1]
        pw = len(prev)
        # minimal fibrant (0,0): sum over k' >= k-1 of prev[k'][l-1]
        for l in range(2, n + 2):
            col = [prev[kk][l - 1] for kk in range(pw)]
            tail = 0
            suffix = [0] * (pw + 1)
            for kk in range(pw - 1, -1, -1):
                tail += col[kk]
                suffix[kk] = tail
            for k in range(1, n + 2):
                zero[k][l] = suffix[k - 1]
        self.zero.append(zero)
        self._zero_total.append(sum(map(sum, zero)))
        # minimal fibrant (0,b), b > 0
        right = self._bottom_row_sum(n)
        for k in range(w):
            for l in range(w):
                agg[k][l] = zero[k][l] + right[k][l]
        if self.family == "L":
            # (1,n): sum over l' >= l-1 of prev[k-1][l']; (1,b<n) is empty
            for k in range(1, n + 2):
                row = prev[k - 1]
                tail = 0
                suffix = [0] * (pw + 1)
                for ll in range(pw - 1, -1, -1):
                    tail += row[ll]
                    suffix[ll] = tail
                for l in range(1, n + 2):
                    agg[k][l] += suffix[l - 1]
        else:
            # (1,b) mirrors (0,n-b) with k and l swapped
            for k in range(w):
                for l in range(w):
                    agg[k][l] += zero[l][k] + right[l][k]
        self.agg.append(agg)

    def _bottom_row_sum(self, n: int) -> list[list[int]]:
        """``sum_{b>=1} sum_i tam(b-1, i) * zero[n-b][k-i][l]`` for all ``k, l``.

        Each ``k``-convolution is one big-integer product: a column of
        ``zero`` and the ``tam`` kernel are packed into integers with a fixed
        bit stride (Kronecker substitution).  The stride is grown, and the
        packed cache dropped, whenever the exact bound on an output
        coefficient would not fit.
        """
        w = n + 3
        out = [[0] * w for _ in range(w)]
        bound = sum(tam_total(b - 1) * self._zero_total[n - b] for b in range(1, n + 1))
        need = bound.bit_length() + 1
        if need > self._stride:
            self._stride = -(-max(2 * self._stride, need + 32) // 8) * 8
            self._packed.clear()
        nbytes = self._stride // 8
        acc: dict[int, object] = {}
        for b in range(1, n + 1):
            m = n - b
            kern = self._pack(("tam", b), [tam(b - 1, i) for i in range(b + 1)])
            z = self.zero[m]
            for l in range(1, m + 2):
                col = self._pack((m, l), [row[l] for row in z])
                acc[l] = acc.get(l, 0) + kern * col
        for l, v in acc.items():
            raw = int(v).to_bytes(w * nbytes, "little")
            for k in range(w):
                out[k][l] = int.from_bytes(raw[k * nbytes:(k + 1) * nbytes], "little")
        return out

    def _pack(self, key, values):
        got = self._packed.get(key)
        if got is None:
            nb = self._stride // 8
            got = _big(int.from_bytes(b"".join(v.to_bytes(nb, "little") for v in values), "little"))
            self._packed[key] = got
        return got

    def _bottom_row_sum_naive(self, n: int) -> list[list[int]]:
        """Direct quadruple loop; the reference for :meth:`_bottom_row_sum`."""
        w = n + 3
        out = [[0] * w for _ in range(w)]
        for b in range(1, n + 1):
            z = self.zero[n - b]
            kernel = [(i, tam(b - 1, i)) for i in range(1, b + 1)]
            for kk in range(1, len(z)):
                zrow = z[kk]
                for l in range(1, len(zrow)):
                    v = zrow[l]
                    if v:
                        for i, t in kernel:
                            out[kk + i][l] += t * v
        return out

    # -- queries ---------------------------------------------------------------

    def _get(self, grid_, k, l):
        if 0 <= k < len(grid_) and 0 <= l < len(grid_):
            return grid_[k][l]
        return 0

    def aggregate(self, n: int, k: int, l: int) -> int:
        if n < 0:
            return 0
        self.fill(n)
        if not (1 <= k <= n + 1 and 1 <= l <= n + 1):
            return 0
        return self.agg[n][k][l]

    def _zero_b(self, n: int, k: int, l: int, b: int) -> int:
        if b == 0:
            return self._get(self.zero[n], k, l)
        return sum(
            tam(b - 1, i) * self._get(self.zero[n - b], k - i, l) for i in range(1, k + 1)
        )

    def stratum(self, n: int, k: int, l: int, a: int, b: int) -> int:
        if n < 0 or not (1 <= k <= n + 1 and 1 <= l <= n + 1):
            return 0
        if a not in (0, 1) or not 0 <= b <= n:
            return 0
        self.fill(n)
        if n == 0:
            return 1 if (k, l) == (1, 1) else 0
        if a == 0:
            return self._zero_b(n, k, l, b)
        if self.family == "T":
            return self._zero_b(n, l, k, n - b)
        if b < n:
            return 0
        return sum(self.aggregate(n - 1, k - 1, lp) for lp in range(l - 1, n + 1))

    def total(self, n: int) -> int:
        if n < 0:
            return 0
        self.fill(n)
        return sum(map(sum, self.agg[n]))


_TABLES = {f: StrataTable(f) for f in FAMILIES}


def table(family: str) -> StrataTable:
    return _TABLES[family]


def count_L_stratum(n: int, k: int, l: int, ab: tuple[int, int]) -> int:
    return _TABLES["L"].stratum(n, k, l, *ab)


def count_T_stratum(n: int, k: int, l: int, ab: tuple[int, int]) -> int:
    return _TABLES["T"].stratum(n, k, l, *ab)


def count_L_aggregate(n: int, k: int, l: int) -> int:
    return _TABLES["L"].aggregate(n, k, l)


def count_T_aggregate(n: int, k: int, l: int) -> int:
    return _TABLES["T"].aggregate(n, k, l)


def count_L(n: int) -> int:
    """Liftable transfer systems on ``[1] x [n]``."""
    return _TABLES["L"].total(n)


def count_T(n: int) -> int:
    """All transfer systems on ``[1] x [n]``."""
    return _TABLES["T"].total(n)


def strata_matrix(family: str, n: int) -> list[list[int]]:
    """``(n+1) x (n+1)`` matrix of aggregates, row ``k-1``, column ``l-1``."""
    t = _TABLES[family]
    return [[t.aggregate(n, k, l) for l in range(1, n + 2)] for k in range(1, n + 2)]


# -- maximally extendable / stationary ---------------------------------------


@lru_cache(maxsize=None)
def _max_extendable_rows(n: int) -> tuple[tuple[int, ...], ...]:
    """Rows ``|L(m, k, m+1)|`` for ``m <= n``.

    With ``l = m + 1`` the liftable recursion only reads the ``l = m`` slice of
    level ``m - 1``, so it can run on its own far beyond the full table.
    """
    rows = [(0, 2)]
    for m in range(1, n + 1):
        prev = rows[-1]
        row = [0] * (m + 2)
        for k in range(1, m + 2):
            # (0,0) case: sum over k' >= k-1; (1,m) case: k-1 with l' = m
            row[k] = sum(prev[max(k - 1, 0):]) + (prev[k - 1] if k - 1 < len(prev) else 0)
        rows.append(tuple(row))
    return tuple(rows)


def max_extendable_L_row(n: int) -> tuple[int, ...]:
    """``|L(n, k, n+1)|`` indexed by ``k`` (entry 0 is padding)."""
    return _max_extendable_rows(n)[n]


def max_extendable_L(n: int) -> int:
    total = sum(max_extendable_L_row(n))
    if n <= 60 and total != schroder(n + 1):
        raise ArithmeticError(f"maximally extendable count at n={n} is not S_{n + 1}")
    return total


def max_extendable_T(n: int) -> int:
    return sum(count_T_aggregate(n, k, n + 1) for k in range(1, n + 2))


def max_stationary_T(n: int) -> int:
    total = sum(count_T_aggregate(n, n + 1, l) for l in range(1, n + 2))
    if total != max_extendable_T(n):
        raise ArithmeticError(f"maximally stationary and extendable counts differ at n={n}")
    return total


# -- asymptotics -------------------------------------------------------------

def asymptotic_constant(dps: int = 50):
    with mpmath.workdps(dps):
        r2 = mpmath.sqrt(2)
        return r2 * (3 + 2 * r2) / (2 * mpmath.sqrt(mpmath.pi * (-4 + 3 * r2)))


def asymptotic_ratio_trend(max_n: int, dps: int = 60) -> list:
    """``|L^max(n)| * n^(3/2) / (3 + sqrt 8)^n`` for ``1 <= n <= max_n``."""
    if max_n > 200:
        raise ValueError("max_n is capped at 200")
    out = []
    with mpmath.workdps(dps):
        base = 3 + mpmath.sqrt(8)
        for n in range(1, max_n + 1):
            v = mpmath.mpf(sum(max_extendable_L_row(n)))
            out.append(v * mpmath.mpf(n) ** 1.5 / base**n)
    return out
