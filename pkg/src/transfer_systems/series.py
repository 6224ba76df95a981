"""Data series behind the growth plots, and their ``.dat`` serialization."""

from __future__ import annotations

from pathlib import Path
from typing import Callable, Iterable, Union

from . import recursions as rec

SERIES_FILES = {
    "L": "L.dat",
    "T": "T.dat",
    "Lmax": "Lmax.dat",
    "Tmax": "Tmax.dat",
    "ratio": "ratio_LT.dat",
}

RATIO_DIGITS = 12


def significant(num: int, den: int, digits: int = RATIO_DIGITS) -> str:
    """``num / den`` rounded half-even to ``digits`` significant digits, in
    positional notation, using integer arithmetic only."""
    if den <= 0 or num < 0:
        raise ValueError("expected num >= 0 and den > 0")
    if num == 0:
        return "0." + "0" * (digits - 1)
    # exponent e with 10^e <= num/den < 10^(e+1)
    e = len(str(num)) - len(str(den))
    if num * 10 ** max(-e, 0) < den * 10 ** max(e, 0):
        e -= 1
    shift = digits - 1 - e
    if shift >= 0:
        q, r = divmod(num * 10**shift, den)
        d = den
    else:
        d = den * 10**-shift
        q, r = divmod(num, d)
    if 2 * r > d or (2 * r == d and q % 2):
        q += 1
    if q == 10**digits:
        q //= 10
        e += 1
    text = str(q)
    if e >= digits - 1:
        return text + "0" * (e - digits + 1)
    if e >= 0:
        return text[: e + 1] + "." + text[e + 1:]
    return "0." + "0" * (-e - 1) + text


SeriesTable = list[tuple[int, Union[int, str]]]


def _values(name: str) -> Callable[[int], Union[int, str]]:
    return {
        "L": rec.count_L,
        "T": rec.count_T,
        "Lmax": rec.max_extendable_L,
        "Tmax": rec.max_extendable_T,
        "ratio": lambda n: significant(rec.count_L(n), rec.count_T(n)),
    }[name]


def series(name: str, max_n: int) -> SeriesTable:
    if name not in SERIES_FILES:
        raise KeyError(f"unknown series {name!r}")
    f = _values(name)
    return [(n, f(n)) for n in range(max_n + 1)]


def dumps(table: Iterable[tuple[int, Union[int, str]]]) -> str:
    return "".join(f"{n} {v}\n" for n, v in table)


def export(out_dir: Union[str, Path], names: Iterable[str], max_n: int) -> dict[str, Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = {}
    for name in names:
        path = out / SERIES_FILES[name]
        path.write_text(dumps(series(name, max_n)))
        written[name] = path
    return written


def loads(text: str) -> SeriesTable:
    rows = []
    for line in text.splitlines():
        n, v = line.split(" ")
        rows.append((int(n), v if "." in v else int(v)))
    return rows
