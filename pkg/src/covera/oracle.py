"""Exhaustive covering and packing numbers for tiny parameter sets.

Both searches branch on the lexicographically first pair that still needs
attention and only ever try blocks through that pair. Two reductions keep the
trees small:

* sibling exclusion - once the subtree rooted at block B through pair P is
  finished, no later sibling subtree may use B again;
* atom symmetry - points are grouped into atoms (cells of the Venn diagram of
  the chosen blocks, with every point of an earlier branching pair pinned as
  its own atom). Permuting points inside atoms fixes the search state, so one
  representative per orbit of candidate blocks is enough, and whole orbits
  are excluded from later siblings.

Neither reduction can lose an optimum; see ``reference_min_cover`` and
``reference_max_pack`` for the unreduced versions used to cross-check them.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .designs import Design


@dataclass(frozen=True)
class SearchBudget:
    max_nodes: Optional[int] = None
    max_seconds: Optional[float] = None


@dataclass(frozen=True)
class SearchResult:
    status: str  # "optimal" or "budget-exceeded"
    value: Optional[int]
    witness: Optional[Design]
    nodes: int
    # best proven bounds when the budget ran out
    lower: Optional[int] = None
    upper: Optional[int] = None

    @property
    def ok(self) -> bool:
        return self.status == "optimal"


class _BudgetExceeded(Exception):
    pass


class _Space:
    """Index tables for points 0..v-1, pairs and k-subsets."""

    def __init__(self, v: int, k: int, lam: int):
        if not 3 <= k < v:
            raise ValueError(f"need 3 <= k < v, got v={v}, k={k}")
        if lam < 1:
            raise ValueError("lambda must be positive")
        self.v, self.k, self.lam = v, k, lam
        self.pairs = list(combinations(range(v), 2))
        self.pid = {pair: i for i, pair in enumerate(self.pairs)}
        self.blocks = list(combinations(range(v), k))
        self.block_pairs = [[self.pid[p] for p in combinations(b, 2)] for b in self.blocks]
        self.pair_blocks = [[] for _ in self.pairs]
        for bi, pids in enumerate(self.block_pairs):
            for p in pids:
                self.pair_blocks[p].append(bi)
        self.point_pairs = [[self.pid[tuple(sorted((u, w)))] for w in range(v) if w != u] for u in range(v)]

    def design(self, chosen: list[int]) -> Design:
        return Design(
            self.v, self.k, self.lam, tuple(tuple(x + 1 for x in self.blocks[b]) for b in chosen)
        )


class _Searcher:
    def __init__(self, space: _Space, budget: SearchBudget, symmetry: bool = True):
        self.s = space
        self.budget = budget
        self.symmetry = symmetry
        self.nodes = 0
        self.deadline = None if budget.max_seconds is None else time.monotonic() + budget.max_seconds
        self.chosen: list[int] = []
        self.pinned: list[int] = []
        self.excluded = [0] * len(space.blocks)

    def tick(self):
        self.nodes += 1
        b = self.budget
        if b.max_nodes is not None and self.nodes > b.max_nodes:
            raise _BudgetExceeded
        if self.deadline is not None and self.nodes % 256 == 0 and time.monotonic() > self.deadline:
            raise _BudgetExceeded

    def orbits(self, p: int, candidates: list[int]) -> list[list[int]]:
        """Split candidate blocks through pair p into orbits of the atom group."""
        if not self.symmetry:
            return [[b] for b in candidates]
        s = self.s
        key = [0] * s.v
        for j, b in enumerate(self.chosen):
            bit = 1 << j
            for x in s.blocks[b]:
                key[x] |= bit
        atom = {}
        label = []
        pinned = set(self.pinned) | set(s.pairs[p])
        for u in range(s.v):
            sig = ("pin", u) if u in pinned else key[u]
            label.append(atom.setdefault(sig, len(atom)))
        groups: dict[tuple, list[int]] = {}
        for b in candidates:
            counts = [0] * len(atom)
            for x in s.blocks[b]:
                counts[label[x]] += 1
            groups.setdefault(tuple(counts), []).append(b)
        return sorted(groups.values(), key=lambda g: g[0])


class _CoverSearch(_Searcher):
    def __init__(self, space, budget, symmetry=True, prune=True):
        super().__init__(space, budget, symmetry)
        self.prune = prune
        self.count = [0] * len(space.pairs)

    def lower_bound(self) -> int:
        s = self.s
        lam, count = s.lam, self.count
        per_point = 0
        biggest = 0
        total = 0
        for u in range(s.v):
            deficit = 0
            for p in s.point_pairs[u]:
                if count[p] < lam:
                    deficit += lam - count[p]
            need = -(-deficit // (s.k - 1))
            per_point += need
            biggest = max(biggest, need)
            total += deficit
        total //= 2
        pairs_per_block = s.k * (s.k - 1) // 2
        return max(-(-per_point // s.k), biggest, -(-total // pairs_per_block))

    def first_deficient(self) -> Optional[int]:
        lam = self.s.lam
        for p, c in enumerate(self.count):
            if c < lam:
                return p
        return None

    def dfs(self, room: int) -> bool:
        self.tick()
        p = self.first_deficient()
        if p is None:
            return True
        if room == 0:
            return False
        if self.prune and self.lower_bound() > room:
            return False
        s = self.s
        candidates = [b for b in s.pair_blocks[p] if not self.excluded[b]]
        added: list[int] = []
        self.pinned.extend(s.pairs[p])
        found = False
        for orbit in self.orbits(p, candidates):
            b = orbit[0]
            self.chosen.append(b)
            for q in s.block_pairs[b]:
                self.count[q] += 1
            found = self.dfs(room - 1)
            if found:
                break
            for q in s.block_pairs[b]:
                self.count[q] -= 1
            self.chosen.pop()
            for x in orbit:
                self.excluded[x] += 1
            added.extend(orbit)
        for x in added:
            self.excluded[x] -= 1
        del self.pinned[-2:]
        return found


class _PackSearch(_Searcher):
    def __init__(self, space, budget, symmetry=True, prune=True):
        super().__init__(space, budget, symmetry)
        self.prune = prune
        self.cap = [space.lam] * len(space.pairs)
        self.best = -1
        self.best_blocks: list[int] = []
        self.ceiling = self.upper_bound()

    def upper_bound(self) -> int:
        """Most blocks that could still be added given the remaining pair capacity."""
        s = self.s
        cap = self.cap
        per_point = 0
        total = 0
        for u in range(s.v):
            avail = sum(cap[p] for p in s.point_pairs[u])
            per_point += avail // (s.k - 1)
            total += avail
        pairs_per_block = s.k * (s.k - 1) // 2
        return min(per_point // s.k, total // 2 // pairs_per_block)

    def fits(self, b: int) -> bool:
        cap = self.cap
        return all(cap[q] > 0 for q in self.s.block_pairs[b])

    def record(self):
        if len(self.chosen) > self.best:
            self.best = len(self.chosen)
            self.best_blocks = list(self.chosen)

    def dfs(self):
        self.tick()
        if self.best >= self.ceiling:
            return
        p = next((i for i, c in enumerate(self.cap) if c > 0), None)
        if p is None:
            self.record()
            return
        if self.prune and len(self.chosen) + self.upper_bound() <= self.best:
            return
        s = self.s
        candidates = [b for b in s.pair_blocks[p] if not self.excluded[b] and self.fits(b)]
        self.pinned.extend(s.pairs[p])
        added: list[int] = []
        for orbit in self.orbits(p, candidates):
            b = orbit[0]
            self.chosen.append(b)
            for q in s.block_pairs[b]:
                self.cap[q] -= 1
            self.dfs()
            for q in s.block_pairs[b]:
                self.cap[q] += 1
            self.chosen.pop()
            for x in orbit:
                self.excluded[x] += 1
            added.extend(orbit)
            if self.best >= self.ceiling:
                break
        # last branch: no further block may contain p
        if self.best < self.ceiling:
            old = self.cap[p]
            self.cap[p] = 0
            self.record()
            self.dfs()
            self.cap[p] = old
        for x in added:
            self.excluded[x] -= 1
        del self.pinned[-2:]


def _greedy_cover_size(space: _Space) -> int:
    count = [0] * len(space.pairs)
    used = 0
    while True:
        p = next((i for i, c in enumerate(count) if c < space.lam), None)
        if p is None:
            return used
        best = max(
            space.pair_blocks[p],
            key=lambda b: sum(count[q] < space.lam for q in space.block_pairs[b]),
        )
        for q in space.block_pairs[best]:
            count[q] += 1
        used += 1


def min_cover(v: int, k: int, lam: int = 1, budget: SearchBudget = SearchBudget(),
              symmetry: bool = True, prune: bool = True) -> SearchResult:
    """Exact covering number C_lam(v, k) by iterative deepening on the block count."""
    space = _Space(v, k, lam)
    search = _CoverSearch(space, budget, symmetry, prune)
    target = search.lower_bound()
    upper = _greedy_cover_size(space)
    try:
        # the greedy covering guarantees termination at target <= upper
        while not search.dfs(target):
            target += 1
        return SearchResult("optimal", target, space.design(search.chosen), search.nodes)
    except _BudgetExceeded:
        return SearchResult("budget-exceeded", None, None, search.nodes, lower=target, upper=upper)


def max_pack(v: int, k: int, lam: int = 1, budget: SearchBudget = SearchBudget(),
             symmetry: bool = True, prune: bool = True) -> SearchResult:
    """Exact packing number D_lam(v, k) by branch and bound."""
    space = _Space(v, k, lam)
    search = _PackSearch(space, budget, symmetry, prune)
    try:
        search.dfs()
    except _BudgetExceeded:
        return SearchResult(
            "budget-exceeded", None, None, search.nodes,
            lower=max(search.best, 0), upper=search.ceiling,
        )
    return SearchResult("optimal", search.best, space.design(search.best_blocks), search.nodes)


def reference_min_cover(v: int, k: int, lam: int = 1) -> int:
    """Covering number by plain forcing search: no symmetry, exclusion or bound pruning."""
    space = _Space(v, k, lam)
    count = [0] * len(space.pairs)

    def dfs(room: int) -> bool:
        p = next((i for i, c in enumerate(count) if c < lam), None)
        if p is None:
            return True
        if room == 0:
            return False
        for b in space.pair_blocks[p]:
            for q in space.block_pairs[b]:
                count[q] += 1
            ok = dfs(room - 1)
            for q in space.block_pairs[b]:
                count[q] -= 1
            if ok:
                return True
        return False

    target = 0
    while not dfs(target):
        target += 1
    return target


def reference_max_pack(v: int, k: int, lam: int = 1) -> int:
    """Packing number by include/skip enumeration over blocks in a fixed order."""
    space = _Space(v, k, lam)
    cap = [lam] * len(space.pairs)
    nblocks = len(space.blocks)
    best = 0

    def dfs(start: int, size: int):
        nonlocal best
        best = max(best, size)
        for b in range(start, nblocks):
            pids = space.block_pairs[b]
            if all(cap[q] > 0 for q in pids):
                for q in pids:
                    cap[q] -= 1
                # b may repeat when lambda allows it
                dfs(b, size + 1)
                for q in pids:
                    cap[q] += 1

    dfs(0, 0)
    return best
