"""Finite groups as explicit multiplication tables.

A group of order n is stored as an n x n numpy table over the element
indices 0..n-1 with the identity at index 0: table[x, y] is the index of
x*y.  Everything downstream (censuses, fingerprints, subgroup searches)
works directly on the table, so constructions are validated once here and
then trusted.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm

import numpy as np

from .numtheory import divisors, euler_phi, factorize

# Full O(n^3) associativity checking is affordable up to this order; larger
# tables fall back to a generator-based check (see _assoc_by_generators).
FULL_ASSOC_LIMIT = 200

# Hard cap on subgroup-lattice enumeration; the largest lattice among the
# cataloged groups (the rank-4 elementary abelian group of order 81) has
# 212 subgroups, so the cap only guards against misuse.
LATTICE_CAP = 500

TABLE_DTYPE = np.uint16


class GroupError(ValueError):
    """A multiplication table failed one of the group axioms."""


@dataclass(frozen=True)
class Fingerprint:
    """Cheap isomorphism invariants; equal fingerprints are necessary but
    not sufficient for isomorphism."""

    order: int
    order_histogram: tuple[tuple[int, int], ...]
    abelian: bool
    center_order: int
    derived_order: int
    census_total: int


def _greedy_generators(table: np.ndarray) -> list[int]:
    """A small generating set found by repeatedly adjoining the smallest
    element outside the closure so far."""
    n = table.shape[0]
    gens: list[int] = []
    closure = {0}
    while len(closure) < n:
        nxt = min(set(range(n)) - closure)
        gens.append(nxt)
        frontier = list(closure | {nxt})
        members = set(frontier)
        while frontier:
            block = table[np.ix_(frontier, sorted(members))].ravel()
            fresh = set(int(v) for v in np.unique(block)) - members
            # also close on the other side
            block2 = table[np.ix_(sorted(members), frontier)].ravel()
            fresh |= set(int(v) for v in np.unique(block2)) - members
            members |= fresh
            frontier = sorted(fresh)
        closure = members
    return gens


def _assoc_by_generators(table: np.ndarray, gens: list[int]) -> tuple[int, int, int] | None:
    """Check (x*a)*y == x*(a*y) for every generator a and all x, y.

    The set of elements associating with everything is closed under
    multiplication, so checking a generating set suffices.  Returns a
    violating triple (x, a, y) or None.
    """
    for a in gens:
        left = table[table[:, a], :]
        right = table[:, table[a, :]]
        if not np.array_equal(left, right):
            where = np.nonzero(left != right)
            return int(where[0][0]), a, int(where[1][0])
    return None


def validate_table(table: np.ndarray, generators: tuple[int, ...] | None = None) -> None:
    """Raise GroupError unless the table describes a group with identity 0."""
    if table.ndim != 2 or table.shape[0] != table.shape[1]:
        raise GroupError(f"table must be square, got shape {table.shape}")
    n = table.shape[0]
    if n == 0:
        raise GroupError("empty table")
    if table.min() < 0 or table.max() >= n:
        raise GroupError("table entries must be element indices in 0..n-1")
    idx = np.arange(n)
    if not np.array_equal(table[0], idx):
        bad = int(np.nonzero(table[0] != idx)[0][0])
        raise GroupError(f"identity row broken: 0*{bad} != {bad}")
    if not np.array_equal(table[:, 0], idx):
        bad = int(np.nonzero(table[:, 0] != idx)[0][0])
        raise GroupError(f"identity column broken: {bad}*0 != {bad}")
    if not np.all(np.sort(table, axis=1) == idx):
        bad = int(np.nonzero(np.sort(table, axis=1) != idx)[0][0])
        raise GroupError(f"row {bad} is not a permutation (cancellation fails)")
    if not np.all(np.sort(table, axis=0) == idx[:, None]):
        bad = int(np.nonzero(np.sort(table, axis=0) != idx[:, None])[1][0])
        raise GroupError(f"column {bad} is not a permutation (cancellation fails)")
    if n <= FULL_ASSOC_LIMIT:
        for x in range(n):
            left, right = table[table[x]], table[x][table]
            if not np.array_equal(left, right):
                where = np.nonzero(left != right)
                y, z = int(where[0][0]), int(where[1][0])
                raise GroupError(f"associativity fails: ({x}*{y})*{z} != {x}*({y}*{z})")
    else:
        gens = list(generators) if generators else _greedy_generators(table)
        bad = _assoc_by_generators(table, gens)
        if bad is not None:
            x, a, y = bad
            raise GroupError(f"associativity fails: ({x}*{a})*{y} != {x}*({a}*{y})")


class Group:
    """An explicitly tabulated finite group."""

    def __init__(
        self,
        table: np.ndarray,
        name: str = "",
        generators: tuple[int, ...] | None = None,
    ):
        table = np.ascontiguousarray(table, dtype=TABLE_DTYPE)
        validate_table(table, generators)
        self.table = table
        self.n = int(table.shape[0])
        self.name = name
        self.generators = tuple(generators) if generators else None
        self._orders: np.ndarray | None = None
        self._center: tuple[int, ...] | None = None
        self._derived: frozenset[int] | None = None

    def __repr__(self) -> str:
        label = self.name or "group"
        return f"<{label} of order {self.n}>"

    # -- elementwise operations -------------------------------------------

    def mul(self, x: int, y: int) -> int:
        return int(self.table[x, y])

    def inverse(self, x: int) -> int:
        return int(np.nonzero(self.table[x] == 0)[0][0])

    def element_order(self, x: int) -> int:
        k, acc = 1, x
        while acc != 0:
            acc = int(self.table[acc, x])
            k += 1
        return k

    def power(self, x: int, e: int) -> int:
        if e < 0:
            return self.power(self.inverse(x), -e)
        acc = 0
        for _ in range(e):
            acc = int(self.table[acc, x])
        return acc

    # -- cached whole-group invariants -------------------------------------

    def element_orders(self) -> np.ndarray:
        """Order of every element, computed with vectorized divisor-power maps."""
        if self._orders is None:
            n = self.n
            idx = np.arange(n)
            divs = divisors(n)
            powmap: dict[int, np.ndarray] = {1: idx}
            orders = np.zeros(n, dtype=np.int64)
            orders[0] = 1
            for d in divs[1:]:
                p = min(factorize(d))
                if p not in powmap:
                    acc = idx.copy()
                    for _ in range(p - 1):
                        acc = self.table[acc, idx]
                    powmap[p] = acc
                powmap[d] = powmap[p][powmap[d // p]]
                fresh = (powmap[d] == 0) & (orders == 0)
                orders[fresh] = d
            if not np.all(orders > 0):
                raise GroupError("element order does not divide the group order")
            self._orders = orders
        return self._orders

    def order_histogram(self) -> dict[int, int]:
        vals, counts = np.unique(self.element_orders(), return_counts=True)
        return {int(v): int(c) for v, c in zip(vals, counts)}

    def cyclic_census(self) -> dict[int, int]:
        """Number of cyclic subgroups of each order.

        Elements of order d come in packets of phi(d), one packet per cyclic
        subgroup of order d; the division below must therefore be exact.
        """
        census: dict[int, int] = {}
        for d, c in sorted(self.order_histogram().items()):
            phi = euler_phi(d)
            if c % phi:
                raise GroupError(f"{c} elements of order {d} is not a multiple of phi({d})")
            census[d] = c // phi
        return census

    def census_total(self) -> int:
        return sum(self.cyclic_census().values())

    @property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    @property
    def is_cyclic(self) -> bool:
        return bool(np.any(self.element_orders() == self.n))

    @property
    def exponent(self) -> int:
        return lcm(*(int(d) for d in np.unique(self.element_orders())))

    def center(self) -> tuple[int, ...]:
        if self._center is None:
            central = np.all(self.table == self.table.T, axis=1)
            self._center = tuple(int(i) for i in np.nonzero(central)[0])
        return self._center

    def _closure(self, seed: set[int]) -> frozenset[int]:
        """Subgroup generated by the seed elements."""
        members = set(seed) | {0}
        frontier = sorted(members)
        while frontier:
            block = self.table[np.ix_(sorted(members), frontier)]
            fresh = set(int(v) for v in np.unique(block)) - members
            members |= fresh
            frontier = sorted(fresh)
        return frozenset(members)

    def derived_subgroup(self) -> frozenset[int]:
        if self._derived is None:
            self._derived = self._commutator_with(range(self.n))
        return self._derived

    def _commutator_with(self, sub) -> frozenset[int]:
        """Subgroup generated by commutators [g, s] for g in G, s in sub."""
        inv = np.argmin(self.table, axis=1)  # inverse: the column hitting 0
        sub = np.fromiter(sub, dtype=np.int64)
        g = np.arange(self.n)
        gi, si = np.meshgrid(g, sub, indexing="ij")
        comms = self.table[self.table[inv[gi], inv[si]], self.table[gi, si]]
        return self._closure(set(int(v) for v in np.unique(comms)))

    def nilpotency_class(self) -> int | None:
        """Nilpotency class, or None when the group is not nilpotent."""
        layer = frozenset(range(self.n))
        k = 0
        while len(layer) > 1:
            nxt = self._commutator_with(layer)
            if nxt == layer:
                return None
            layer = nxt
            k += 1
        return k

    # -- subgroup searches --------------------------------------------------

    def cyclic_subgroups(self) -> list[frozenset[int]]:
        seen: set[frozenset[int]] = set()
        for x in range(self.n):
            members = [0]
            acc = x
            while acc != 0:
                members.append(acc)
                acc = int(self.table[acc, x])
            seen.add(frozenset(members))
        return sorted(seen, key=lambda s: (len(s), sorted(s)))

    def all_subgroups(self, cap: int = LATTICE_CAP) -> list[frozenset[int]]:
        """Every subgroup, found as joins of cyclic subgroups.

        Raises GroupError when more than `cap` subgroups exist.
        """
        subs = set(self.cyclic_subgroups())
        frontier = set(subs)
        while frontier:
            fresh: set[frozenset[int]] = set()
            for a in frontier:
                for b in subs:
                    if a <= b or b <= a:
                        continue
                    j = self._closure(set(a) | set(b))
                    if j not in subs and j not in fresh:
                        fresh.add(j)
            subs |= fresh
            if len(subs) > cap:
                raise GroupError(f"subgroup lattice exceeds cap of {cap}")
            frontier = fresh
        return sorted(subs, key=lambda s: (len(s), sorted(s)))

    def has_subgroup_of_order(self, d: int) -> bool:
        """Whether some subgroup has order exactly d.

        Three phases: a cyclic witness from element orders, then joins of
        pairs of cyclic subgroups, then the full lattice with early exit.
        """
        if d < 1 or self.n % d:
            return False
        if d == 1 or d == self.n:
            return True
        if bool(np.any(self.element_orders() == d)):
            return True
        cyc = self.cyclic_subgroups()
        for i, a in enumerate(cyc):
            for b in cyc[i + 1 :]:
                # the join contains both factors, so its order is a multiple
                # of lcm(|a|, |b|); skip pairs that cannot land on d
                if d % lcm(len(a), len(b)):
                    continue
                if len(self._closure(set(a) | set(b))) == d:
                    return True
        subs = set(cyc)
        frontier = set(subs)
        while frontier:
            fresh: set[frozenset[int]] = set()
            for a in frontier:
                for b in subs:
                    if a <= b or b <= a:
                        continue
                    j = self._closure(set(a) | set(b))
                    if len(j) == d:
                        return True
                    if j not in subs and j not in fresh:
                        fresh.add(j)
            subs |= fresh
            if len(subs) > LATTICE_CAP:
                raise GroupError(f"subgroup lattice exceeds cap of {LATTICE_CAP}")
            frontier = fresh
        return False

    def sylow_count(self, p: int) -> int:
        """Number of Sylow p-subgroups."""
        e = factorize(self.n).get(p, 0)
        if e == 0:
            return 1  # the trivial subgroup is the Sylow p-subgroup
        size = p**e
        return sum(1 for s in self.all_subgroups() if len(s) == size)

    # -- summary -------------------------------------------------------------

    def fingerprint(self) -> Fingerprint:
        return Fingerprint(
            order=self.n,
            order_histogram=tuple(sorted(self.order_histogram().items())),
            abelian=self.is_abelian,
            center_order=len(self.center()),
            derived_order=len(self.derived_subgroup()),
            census_total=self.census_total(),
        )


def build_from_generators(n_bound: int, num_generators: int, act, start, name: str = "") -> Group:
    """Tabulate the group generated by abstract generator actions.

    `act(state, g)` right-multiplies a state by generator g; `start` is the
    identity state.  States are enumerated breadth-first and the full table
    is then filled column by column along the parent chain, which needs one
    table lookup per cell instead of one `act` call per cell.
    """
    elems = [start]
    index = {start: 0}
    parents: list[tuple[int, int]] = [(-1, -1)]  # (parent index, generator)
    q = 0
    while q < len(elems):
        cur = elems[q]
        for g in range(num_generators):
            nxt = act(cur, g)
            if nxt not in index:
                if len(elems) >= n_bound:
                    raise GroupError(f"closure exceeds bound {n_bound}")
                index[nxt] = len(elems)
                elems.append(nxt)
                parents.append((q, g))
        q += 1
    n = len(elems)
    gcols = np.empty((num_generators, n), dtype=np.int64)
    for g in range(num_generators):
        gcols[g] = [index[act(e, g)] for e in elems]
    table = np.empty((n, n), dtype=np.int64)
    table[:, 0] = np.arange(n)
    for v in range(1, n):
        pv, g = parents[v]
        table[:, v] = gcols[g][table[:, pv]]
    gen_indices = tuple(
        index[act(start, g)] for g in range(num_generators) if act(start, g) in index
    )
    return Group(table, name=name, generators=gen_indices)
