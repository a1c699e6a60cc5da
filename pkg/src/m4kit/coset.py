"""Coset enumeration (Todd-Coxeter, HLT strategy with coincidences).

Deterministic: given the same presentation, subgroup generators and cap,
the run defines the same cosets in the same order.  The enumeration either
returns the exact index of the subgroup or reports that it hit the cap —
it never claims an index is infinite.

The table is row-per-coset with one column per generator letter (g and
g^-1).  Coincidences are processed with a queue over a union-find, and the
table is compacted when dead cosets pile up so memory tracks the live
count.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .presentation import FpPresentation
from .words import Word


@dataclass(frozen=True)
class Exceeded:
    """The enumeration defined `max_cosets` cosets without closing."""

    max_cosets: int


@dataclass(frozen=True)
class CosetCount:
    index: int
    total_defined: int


class _Overflow(Exception):
    pass


class _Enumerator:
    def __init__(self, gens: Sequence[str], max_cosets: int):
        self.ncols = 2 * len(gens)
        self.col = {}
        for i, g in enumerate(gens):
            self.col[(g, 1)] = 2 * i
            self.col[(g, -1)] = 2 * i + 1
        self.max_cosets = max_cosets
        self.table: list[list[int | None]] = [[None] * self.ncols]
        self.parent = [0]            # union-find over coset numbers
        self.alive = [True]
        self.total_defined = 1

    @staticmethod
    def inv(col: int) -> int:
        return col ^ 1

    def compile(self, w: Word) -> tuple[int, ...]:
        return tuple(self.col[letter] for letter in w.letters)

    def find(self, a: int) -> int:
        root = a
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[a] != root:
            self.parent[a], a = root, self.parent[a]
        return root

    def define(self, a: int, x: int) -> int:
        if self.total_defined >= self.max_cosets:
            raise _Overflow
        b = len(self.table)
        self.table.append([None] * self.ncols)
        self.parent.append(b)
        self.alive.append(True)
        self.total_defined += 1
        self.table[a][x] = b
        self.table[b][self.inv(x)] = a
        return b

    def _merge(self, a: int, b: int, queue: list[int]) -> None:
        a, b = self.find(a), self.find(b)
        if a == b:
            return
        if a > b:
            a, b = b, a
        self.parent[b] = a
        self.alive[b] = False
        queue.append(b)

    def coincidence(self, a: int, b: int) -> None:
        queue: list[int] = []
        self._merge(a, b, queue)
        qi = 0
        while qi < len(queue):
            dead = queue[qi]
            qi += 1
            for x in range(self.ncols):
                d = self.table[dead][x]
                if d is None:
                    continue
                self.table[dead][x] = None
                # drop the reverse arrow too; it will be re-routed below
                if self.table[d][self.inv(x)] == dead:
                    self.table[d][self.inv(x)] = None
                mu, nu = self.find(dead), self.find(d)
                if self.table[mu][x] is not None:
                    self._merge(nu, self.table[mu][x], queue)
                elif self.table[nu][self.inv(x)] is not None:
                    self._merge(mu, self.table[nu][self.inv(x)], queue)
                else:
                    self.table[mu][x] = nu
                    self.table[nu][self.inv(x)] = mu

    def scan_and_fill(self, a: int, w: tuple[int, ...]) -> None:
        """Trace the relator w from coset a both ways, defining cosets to
        close the cycle (standard HLT scan)."""
        if not w:
            return
        f, i = a, 0
        b, j = a, len(w) - 1
        while True:
            while i <= j and self.table[f][w[i]] is not None:
                f = self.table[f][w[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and self.table[b][self.inv(w[j])] is not None:
                b = self.table[b][self.inv(w[j])]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if j == i:
                self.table[f][w[i]] = b
                self.table[b][self.inv(w[i])] = f
                return
            self.define(f, w[i])

    def compact(self) -> dict[int, int]:
        """Renumber live cosets, preserving order; returns old -> new."""
        remap: dict[int, int] = {}
        for old in range(len(self.table)):
            if self.alive[old] and self.find(old) == old:
                remap[old] = len(remap)
        new_table = [[None] * self.ncols for _ in remap]
        for old, new in remap.items():
            for x in range(self.ncols):
                d = self.table[old][x]
                if d is not None:
                    new_table[new][x] = remap[self.find(d)]
        self.table = new_table
        self.parent = list(range(len(remap)))
        self.alive = [True] * len(remap)
        return remap

    def live_count(self) -> int:
        return sum(1 for i in range(len(self.table))
                   if self.alive[i] and self.find(i) == i)


def coset_enumeration(p: FpPresentation, subgroup: Iterable[Word] = (),
                      max_cosets: int = 1_000_000) -> CosetCount | Exceeded:
    """Index of the subgroup generated by `subgroup` in the group presented
    by p (relators only; conditional relators and meridional tiers are the
    caller's business and must not be present)."""
    assert not p.meridional, "strip/discharge the meridional tier first"
    assert not p.conditional, "decide conditional relators before enumerating"
    enum = _Enumerator(p.generators, max_cosets)
    relator_cols = [enum.compile(r) for r in p.relators if r]
    subgroup_cols = [enum.compile(w) for w in subgroup if w]
    try:
        for w in subgroup_cols:
            enum.scan_and_fill(0, w)
        alpha = 0
        while alpha < len(enum.table):
            if not enum.alive[alpha] or enum.find(alpha) != alpha:
                alpha += 1
                continue
            for w in relator_cols:
                enum.scan_and_fill(alpha, w)
                if not enum.alive[alpha]:
                    break
            if enum.alive[alpha]:
                for x in range(enum.ncols):
                    if enum.table[alpha][x] is None:
                        enum.define(alpha, x)
            if len(enum.table) > 4096 and enum.live_count() * 2 < len(enum.table):
                remap = enum.compact()
                # Resume after every already-processed coset: live roots with
                # old number <= alpha occupy exactly the new numbers below
                # this count (compaction preserves order).
                alpha = sum(1 for old in remap if old <= alpha)
                continue
            alpha += 1
    except _Overflow:
        return Exceeded(max_cosets)
    return CosetCount(index=enum.live_count(), total_defined=enum.total_defined)
