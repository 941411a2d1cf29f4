"""Locally finite spaces given by their smallest neighborhoods.

A space is a finite set of elements ``0..N-1`` together with the smallest
neighborhood ``SN(e)`` of every element.  Everything else -- incidence,
connectedness, frontiers, open sets, the bounding order and dimensions --
is derived from that map.

Subsets are passed as iterables of element ids (or as a boolean mask of
length ``N``) and returned as frozensets.  Internally subsets are int
bitmasks, which keeps exhaustive subset enumeration cheap.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Hashable, Iterable, Sequence

__all__ = [
    "LFSpace",
    "AxiomReport",
    "RelationProperties",
    "smallest_neighborhood",
    "incident",
    "components",
    "frontier",
    "opponents",
    "closure",
    "interior",
    "is_open",
    "relation_properties",
    "dimension",
    "dimensions",
    "extrema",
    "verify_axioms",
    "random_space",
    "random_alf_space",
]

EXHAUSTIVE_LIMIT = 16


class LFSpace:
    """A finite space defined by its smallest neighborhoods.

    ``sn[e]`` lists the elements of SN(e); every ``e`` must belong to its own
    smallest neighborhood.  ``names`` optionally attaches a hashable label
    to each element (cell coordinates, letters, ...).
    """

    def __init__(self, sn: Sequence[Iterable[int]], names: Sequence[Hashable] | None = None):
        sets = tuple(frozenset(int(x) for x in s) for s in sn)
        n = len(sets)
        if n < 1:
            raise ValueError("a space needs at least one element")
        for e, s in enumerate(sets):
            if e not in s:
                raise ValueError(f"element {e} is not in its own smallest neighborhood")
            bad = [x for x in s if not 0 <= x < n]
            if bad:
                raise ValueError(f"SN({e}) refers to unknown elements {sorted(bad)}")
        if names is not None:
            names = tuple(names)
            if len(names) != n:
                raise ValueError("names must have one entry per element")
        self.sn = sets
        self.names = names
        self.element_count = n

    def __len__(self) -> int:
        return self.element_count

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LFSpace):
            return NotImplemented
        return self.sn == other.sn

    def __hash__(self) -> int:
        return hash(self.sn)

    def __repr__(self) -> str:
        return f"LFSpace(element_count={self.element_count})"

    @cached_property
    def full(self) -> int:
        return (1 << self.element_count) - 1

    @cached_property
    def sn_bits(self) -> tuple[int, ...]:
        return tuple(sum(1 << x for x in s) for s in self.sn)

    @cached_property
    def incidence(self) -> tuple[tuple[int, ...], ...]:
        """Incident elements of each element, excluding the element itself."""
        nbrs: list[set[int]] = [set() for _ in range(self.element_count)]
        for e, s in enumerate(self.sn):
            for x in s:
                if x != e:
                    nbrs[e].add(x)
                    nbrs[x].add(e)
        return tuple(tuple(sorted(s)) for s in nbrs)

    @cached_property
    def uppers(self) -> tuple[tuple[int, ...], ...]:
        """``uppers[e]``: elements ``x != e`` whose SN contains ``e``."""
        up: list[list[int]] = [[] for _ in range(self.element_count)]
        for x, s in enumerate(self.sn):
            for e in s:
                if e != x:
                    up[e].append(x)
        return tuple(tuple(u) for u in up)

    def index(self, name: Hashable) -> int:
        if self.names is None:
            raise KeyError(name)
        return self._name_index[name]

    @cached_property
    def _name_index(self) -> dict:
        return {nm: i for i, nm in enumerate(self.names or ())}

    def name(self, e: int) -> Hashable:
        return e if self.names is None else self.names[e]

    # bitmask helpers

    def to_bits(self, subset) -> int:
        if isinstance(subset, int) and not isinstance(subset, bool):
            raise TypeError("pass subsets as collections of element ids, not ints")
        items = list(subset)
        if items and all(isinstance(x, bool) or type(x).__name__ == "bool_" for x in items):
            if len(items) != self.element_count:
                raise ValueError("boolean mask length must equal element_count")
            return sum(1 << i for i, flag in enumerate(items) if flag)
        bits = 0
        for x in items:
            x = int(x)
            self._check(x)
            bits |= 1 << x
        return bits

    @staticmethod
    def from_bits(bits: int) -> frozenset[int]:
        out = []
        i = 0
        while bits:
            if bits & 1:
                out.append(i)
            bits >>= 1
            i += 1
        return frozenset(out)

    def _check(self, e: int) -> None:
        if not isinstance(e, int) or isinstance(e, bool) or not 0 <= e < self.element_count:
            raise IndexError(f"invalid element id {e!r}")

    # bitmask kernels shared by the public functions

    def frontier_bits(self, t: int) -> int:
        comp = self.full & ~t
        out = 0
        for e, s in enumerate(self.sn_bits):
            if s & t and s & comp:
                out |= 1 << e
        return out


def smallest_neighborhood(space: LFSpace, e: int) -> frozenset[int]:
    space._check(e)
    return space.sn[e]


def incident(space: LFSpace, a: int, b: int) -> bool:
    space._check(a)
    space._check(b)
    return a in space.sn[b] or b in space.sn[a]


def _components_bits(space: LFSpace, t: int) -> list[frozenset[int]]:
    seen = 0
    out = []
    for start in range(space.element_count):
        bit = 1 << start
        if not t & bit or seen & bit:
            continue
        seen |= bit
        comp = [start]
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for y in space.incidence[x]:
                yb = 1 << y
                if t & yb and not seen & yb:
                    seen |= yb
                    comp.append(y)
                    queue.append(y)
        out.append(frozenset(comp))
    return out


def components(space: LFSpace, T) -> list[frozenset[int]]:
    """Maximal incidence-connected pieces of ``T``, ordered by smallest id."""
    return _components_bits(space, space.to_bits(T))


def frontier(space: LFSpace, T) -> frozenset[int]:
    return space.from_bits(space.frontier_bits(space.to_bits(T)))


def _opponents_bits(space: LFSpace, t: int) -> list[tuple[int, int]]:
    f = space.frontier_bits(t)
    pairs = []
    for a in range(space.element_count):
        if not f >> a & 1:
            continue
        for b in space.sn[a]:
            if b > a and f >> b & 1 and a in space.sn[b] and (t >> a & 1) != (t >> b & 1):
                pairs.append((a, b))
    return pairs


def opponents(space: LFSpace, T) -> list[tuple[int, int]]:
    """Opponent pairs in the frontier of ``T``; empty iff the frontier is thin."""
    return _opponents_bits(space, space.to_bits(T))


def _sub_and_super(space: LFSpace, t, T) -> tuple[int, int]:
    tb = space.to_bits(t)
    Tb = space.full if T is None else space.to_bits(T)
    if tb & ~Tb:
        raise ValueError("t must be a subset of T")
    return tb, Tb


def closure(space: LFSpace, t, T=None) -> frozenset[int]:
    """``t`` together with every cell of ``T`` that bounds a member of ``t``."""
    tb, Tb = _sub_and_super(space, t, T)
    out = tb
    for b in range(space.element_count):
        if Tb >> b & 1 and space.sn_bits[b] & tb & ~(1 << b):
            out |= 1 << b
    return space.from_bits(out)


def interior(space: LFSpace, t, T=None) -> frozenset[int]:
    """``t`` minus its frontier taken inside the subspace ``T``."""
    tb, Tb = _sub_and_super(space, t, T)
    rest = Tb & ~tb
    fr = 0
    for e in range(space.element_count):
        s = space.sn_bits[e] & Tb
        if Tb >> e & 1 and s & tb and s & rest:
            fr |= 1 << e
    return space.from_bits(tb & ~fr)


def _is_open_bits(space: LFSpace, t: int) -> bool:
    return not t & space.frontier_bits(t)


def _contains_sns_bits(space: LFSpace, t: int) -> bool:
    return all(not (t >> e & 1) or space.sn_bits[e] & ~t == 0 for e in range(space.element_count))


def is_open(space: LFSpace, T, verify: bool = False) -> bool:
    """No element of ``T`` lies in its frontier.

    With ``verify`` the answer is cross-checked against the criterion that
    ``T`` contains the smallest neighborhood of each of its elements.
    """
    t = space.to_bits(T)
    result = _is_open_bits(space, t)
    if verify and result != _contains_sns_bits(space, t):
        raise AssertionError("frontier and smallest-neighborhood criteria disagree")
    return result


@dataclass(frozen=True)
class RelationProperties:
    antisymmetric: bool
    bounding_transitive: bool
    symmetric_pairs: tuple[tuple[int, int], ...] = ()
    intransitive_triples: tuple[tuple[int, int, int], ...] = ()


def relation_properties(space: LFSpace, limit: int | None = 8) -> RelationProperties:
    """Antisymmetry of N and transitivity of the bounding relation.

    The bounding relation is the strict one: ``a < b`` iff ``a != b`` and
    ``b in SN(a)``.  A symmetric pair therefore breaks transitivity too
    (``a < b < a`` would force ``a < a``).  ``limit`` caps the number of
    witnesses collected per property.
    """
    sym: list[tuple[int, int]] = []
    triples: list[tuple[int, int, int]] = []
    sn = space.sn
    for a in range(space.element_count):
        for b in sn[a]:
            if b == a:
                continue
            if b > a and a in sn[b] and (limit is None or len(sym) < limit):
                sym.append((a, b))
            for c in sn[b]:
                if c == b:
                    continue
                if c == a or c not in sn[a]:
                    if limit is None or len(triples) < limit:
                        triples.append((a, b, c))
    return RelationProperties(
        antisymmetric=not sym,
        bounding_transitive=not triples,
        symmetric_pairs=tuple(sym),
        intransitive_triples=tuple(triples),
    )


def _axiom4_witnesses(space: LFSpace, limit: int = 8) -> list[tuple[int, ...]]:
    """Reasons frontiers can fail to be idempotent; empty iff they never do.

    Frontiers are idempotent exactly when N is transitive and every SN
    holds an element whose own SN is a singleton.  A triple ``(a, b, c)``
    is a transitivity gap; a 1-tuple ``(a,)`` is an SN without such an
    element.
    """
    sn = space.sn
    out: list[tuple[int, ...]] = []
    for a in range(space.element_count):
        for b in sn[a]:
            for c in sn[b]:
                if c not in sn[a] and len(out) < limit:
                    out.append((a, b, c))
    for a in range(space.element_count):
        if not any(len(sn[x]) == 1 for x in sn[a]) and len(out) < limit:
            out.append((a,))
    return out


def dimensions(space: LFSpace) -> tuple[int, ...]:
    """Longest bounding path ending at each element.

    Raises ``ValueError`` unless the bounding relation is a strict half-order.
    """
    cached = space.__dict__.get("_dimensions")
    if cached is not None:
        return cached
    props = relation_properties(space, limit=1)
    if not (props.antisymmetric and props.bounding_transitive):
        raise ValueError(
            "dimension needs an antisymmetric space with a transitive bounding relation; "
            f"witnesses: {props.symmetric_pairs or props.intransitive_triples}"
        )
    n = space.element_count
    lowers: list[list[int]] = [[] for _ in range(n)]
    for x in range(n):
        for e in space.sn[x]:
            if e != x:
                lowers[e].append(x)
    # x < e implies SN(x) strictly contains SN(e): larger SNs come first
    memo: dict[int, int] = {}
    for e in sorted(range(n), key=lambda v: -len(space.sn[v])):
        memo[e] = 1 + max((memo[x] for x in lowers[e]), default=-1)
    result = tuple(memo[e] for e in range(n))
    space.__dict__["_dimensions"] = result
    return result


def dimension(space: LFSpace, e: int) -> int:
    space._check(e)
    return dimensions(space)[e]


def extrema(space: LFSpace) -> tuple[frozenset[int], frozenset[int]]:
    """``(minima, maxima)``: elements bounded by nothing / bounding nothing."""
    minima = frozenset(e for e in range(space.element_count) if not space.uppers[e])
    maxima = frozenset(e for e in range(space.element_count) if len(space.sn[e]) == 1)
    return minima, maxima


@dataclass
class AxiomReport:
    axiom1: bool
    axiom2: bool
    axiom3: bool
    axiom4: bool
    t0: bool
    witnesses: dict[str, list] = field(default_factory=dict)
    exhaustive: bool = False

    @property
    def passed(self) -> bool:
        return self.axiom1 and self.axiom2 and self.axiom3 and self.axiom4

    def as_dict(self) -> dict:
        return {
            "axiom1": self.axiom1,
            "axiom2": self.axiom2,
            "axiom3": self.axiom3,
            "axiom4": self.axiom4,
            "t0": self.t0,
            "exhaustive": self.exhaustive,
            "witnesses": {k: [list(w) for w in v] for k, v in sorted(self.witnesses.items())},
        }


def _t0_witness(space: LFSpace) -> tuple[int, int] | None:
    sn = space.sn
    for a, b in combinations(range(space.element_count), 2):
        if b not in sn[a] or a not in sn[b]:
            continue
        if not any((a in s) != (b in s) for s in sn):
            return (a, b)
    return None


def verify_axioms(space: LFSpace, exhaustive: bool = False) -> AxiomReport:
    """Check Axioms 1-4 and T0 separation.

    Axiom 3 is decided through antisymmetry of N.  Axiom 4 is decided
    through transitivity of N plus the presence of an element with a
    singleton SN inside every SN; on antisymmetric spaces this is the same
    as transitivity of the bounding relation.  With ``exhaustive`` (and at most 16 elements)
    both are also decided by enumerating every subset; a disagreement
    between the two routes raises ``AssertionError``.
    """
    props = relation_properties(space)
    witnesses: dict[str, list] = {}
    axiom2 = any(len(s) > 1 for s in space.sn)
    if not axiom2:
        witnesses["axiom2"] = [(e,) for e in range(space.element_count)]
    if not props.antisymmetric:
        witnesses["axiom3"] = list(props.symmetric_pairs)
    gaps = _axiom4_witnesses(space)
    if gaps:
        witnesses["axiom4"] = gaps
    t0w = _t0_witness(space)
    if t0w is not None:
        witnesses["t0"] = [t0w]
    report = AxiomReport(
        axiom1=True,
        axiom2=axiom2,
        axiom3=props.antisymmetric,
        axiom4=not gaps,
        t0=t0w is None,
        witnesses=witnesses,
    )
    if exhaustive and space.element_count <= EXHAUSTIVE_LIMIT:
        thin, idem = exhaustive_axioms_3_4(space)
        if thin != report.axiom3 or idem != report.axiom4:
            raise AssertionError(
                f"subset enumeration (axiom3={thin}, axiom4={idem}) disagrees with relation check"
            )
        report.exhaustive = True
    return report


def exhaustive_axioms_3_4(space: LFSpace) -> tuple[bool, bool]:
    """Literal Axioms 3 and 4 over all ``2**N`` subsets."""
    thin = idem = True
    for t in range(space.full + 1):
        if thin and _opponents_bits(space, t):
            thin = False
        if idem:
            f = space.frontier_bits(t)
            if space.frontier_bits(f) != f:
                idem = False
        if not (thin or idem):
            break
    return thin, idem


def random_space(rng: random.Random, n: int, density: float = 0.3) -> LFSpace:
    """Arbitrary reflexive neighborhood system on ``n`` elements."""
    return LFSpace([{e} | {x for x in range(n) if x != e and rng.random() < density} for e in range(n)])


def random_alf_space(rng: random.Random, n: int, density: float = 0.4) -> LFSpace:
    """Random space whose bounding relation is a strict half-order.

    Draws a random DAG on a shuffled order, takes its transitive closure and
    uses ``SN(e) = {e} | {x : e < x}``.  Retries until Axiom 2 holds (needs
    ``n >= 2``).
    """
    if n < 2:
        raise ValueError("need at least two elements for a non-trivial space")
    while True:
        perm = list(range(n))
        rng.shuffle(perm)
        rank = {e: i for i, e in enumerate(perm)}
        above = [{x for x in range(n) if rank[x] > rank[e] and rng.random() < density} for e in range(n)]
        for e in sorted(range(n), key=lambda v: -rank[v]):
            for x in list(above[e]):
                above[e] |= above[x]
        if any(above):
            return LFSpace([{e} | above[e] for e in range(n)])
