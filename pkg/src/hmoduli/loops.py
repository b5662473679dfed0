"""Finite loops as normalized Latin squares, with brute-force property checks.

Element 0 is the unit.  A table is a tuple of rows; ``t[x][y]`` is xy.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import permutations, product
from typing import Iterator, Sequence

log = logging.getLogger(__name__)

MAX_ORDER = 6
TAGS = ("inv", "pa", "mo", "sa")


class OrderTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class CayleyTable:
    table: tuple[tuple[int, ...], ...]

    def __init__(self, rows: Sequence[Sequence[int]]):
        object.__setattr__(self, "table", tuple(tuple(int(x) for x in r) for r in rows))

    @property
    def order(self) -> int:
        return len(self.table)

    def __getitem__(self, x):
        return self.table[x]

    def __str__(self):
        return format_table(self)


def validate(t: CayleyTable) -> bool:
    q = t.order
    if q < 1 or any(len(r) != q for r in t.table):
        return False
    full = set(range(q))
    if t[0] != tuple(range(q)) or tuple(r[0] for r in t.table) != tuple(range(q)):
        return False
    if any(set(r) != full for r in t.table):
        return False
    return all({t[x][y] for x in range(q)} == full for y in range(q))


def is_inversive(t: CayleyTable) -> bool:
    q = t.order
    for x in range(q):
        inverses = [y for y in range(q) if t[y][x] == 0 and t[x][y] == 0]
        if len(inverses) != 1:
            return False
    return True


def is_power_associative(t: CayleyTable) -> bool:
    return all(t[x][t[x][x]] == t[t[x][x]][x] for x in range(t.order))


def is_symmetrically_associative(t: CayleyTable) -> bool:
    r = range(t.order)
    return all(t[t[x][y]][x] == t[x][t[y][x]] for x in r for y in r)


def is_moufang(t: CayleyTable) -> bool:
    r = range(t.order)
    return all(t[t[x][t[y][z]]][x] == t[t[x][y]][t[z][x]] for x in r for y in r for z in r)


def is_associative(t: CayleyTable) -> bool:
    r = range(t.order)
    return all(t[t[x][y]][z] == t[x][t[y][z]] for x in r for y in r for z in r)


_CHECKS = {
    "inv": is_inversive,
    "pa": is_power_associative,
    "mo": is_moufang,
    "sa": is_symmetrically_associative,
}


def has_property(t: CayleyTable, tag: str) -> bool:
    if not validate(t):
        raise ValueError("not a normalized loop table")
    return _CHECKS[tag](t)


def properties(t: CayleyTable) -> dict[str, bool]:
    if not validate(t):
        raise ValueError("not a normalized loop table")
    return {tag: _CHECKS[tag](t) for tag in TAGS}


def _check_order(q: int):
    if q < 1:
        raise ValueError("order must be positive")
    if q > MAX_ORDER:
        raise OrderTooLarge(f"order {q} exceeds the supported maximum {MAX_ORDER}")


def enumerate_loops(q: int) -> Iterator[CayleyTable]:
    """All normalized Latin squares of order q, lexicographically (row-major)."""
    _check_order(q)
    grid = [[0] * q for _ in range(q)]
    for i in range(q):
        grid[0][i] = grid[i][0] = i
    rows_used = [{i} for i in range(q)]
    cols_used = [{j} for j in range(q)]
    cells = [(i, j) for i in range(1, q) for j in range(1, q)]
    count = 0

    def rec(k):
        nonlocal count
        if k == len(cells):
            count += 1
            yield CayleyTable(grid)
            return
        i, j = cells[k]
        for v in range(q):
            if v in rows_used[i] or v in cols_used[j]:
                continue
            grid[i][j] = v
            rows_used[i].add(v)
            cols_used[j].add(v)
            yield from rec(k + 1)
            rows_used[i].discard(v)
            cols_used[j].discard(v)

    yield from rec(0)
    log.info("order %d: %d normalized tables", q, count)


def relabel(t: CayleyTable, perm: Sequence[int]) -> CayleyTable:
    """Conjugate by a permutation of the elements fixing 0: x -> perm[x]."""
    if perm[0] != 0:
        raise ValueError("relabeling must fix the unit")
    q = t.order
    out = [[0] * q for _ in range(q)]
    for x, y in product(range(q), repeat=2):
        out[perm[x]][perm[y]] = perm[t[x][y]]
    return CayleyTable(out)


def unit_fixing_permutations(q: int):
    for p in permutations(range(1, q)):
        yield (0,) + p


# the survey -------------------------------------------------------------------

IMPLICATIONS = (("mo", "inv"), ("mo", "sa"), ("sa", "pa"), ("mo", "pa"))


def implication_survey(q: int) -> dict:
    """Exhaustively test the loop-property implications over every table of order q.

    Implications that should hold are counted for counterexamples; for every
    other ordered pair of properties the lexicographically first table
    separating them is kept as a witness.
    """
    _check_order(q)
    total = 0
    counts = {tag: 0 for tag in TAGS}
    profiles: dict[str, int] = {}
    counterexamples = {f"{a}=>{b}": 0 for a, b in IMPLICATIONS}
    first_counterexample: dict[str, list] = {}
    witnesses: dict[str, list] = {}
    associative = 0
    for t in enumerate_loops(q):
        total += 1
        props = {tag: _CHECKS[tag](t) for tag in TAGS}
        associative += is_associative(t)
        for tag, ok in props.items():
            counts[tag] += ok
        key = ",".join(tag for tag in TAGS if props[tag]) or "none"
        profiles[key] = profiles.get(key, 0) + 1
        for a, b in IMPLICATIONS:
            if props[a] and not props[b]:
                name = f"{a}=>{b}"
                counterexamples[name] += 1
                first_counterexample.setdefault(name, [list(r) for r in t.table])
        for a in TAGS:
            for b in TAGS:
                if a != b and props[a] and not props[b]:
                    witnesses.setdefault(f"{a} and not {b}", [list(r) for r in t.table])
    return {
        "order": q,
        "tables": total,
        "associative": associative,
        "property_counts": counts,
        "profiles": dict(sorted(profiles.items())),
        "implications": {
            name: {"counterexamples": n, "first": first_counterexample.get(name)}
            for name, n in counterexamples.items()
        },
        "witnesses": dict(sorted(witnesses.items())),
    }


# table files ---------------------------------------------------------------------


def format_table(t: CayleyTable) -> str:
    lines = [str(t.order)] + [" ".join(str(x) for x in r) for r in t.table]
    return "\n".join(lines) + "\n"


def parse_table(text: str) -> CayleyTable:
    """First line q, then q rows of q whitespace-separated entries."""
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise ValueError("empty table file")
    try:
        q = int(lines[0])
    except ValueError:
        raise ValueError(f"first line must be the order, got {lines[0]!r}") from None
    rows = lines[1:]
    if len(rows) != q:
        raise ValueError(f"expected {q} rows, found {len(rows)}")
    table = []
    for i, ln in enumerate(rows, start=2):
        entries = ln.split()
        if len(entries) != q:
            raise ValueError(f"line {i}: expected {q} entries, found {len(entries)}")
        try:
            table.append([int(x) for x in entries])
        except ValueError:
            raise ValueError(f"line {i}: entries must be integers") from None
    return CayleyTable(table)
