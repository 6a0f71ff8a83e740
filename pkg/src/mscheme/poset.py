"""Finite poset machinery.

Posets are stored by their cover relations (Hasse diagram) with the full
reachability relation precomputed as bitmasks over element indices.  All
values are immutable after construction and every operation is a pure
function, so concurrent reads are safe.

Element identifiers are opaque strings; declaration order is the
deterministic tie-break for all search iteration and reported witnesses.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import (
    CycleDetected,
    DuplicateIdentifier,
    NonHasseCover,
    NotBelow,
    NotBoundedBelow,
    NotRanked,
    NotSimplicial,
    RankNotConstantOnMax,
    UnknownIdentifier,
)
from .polynomials import UnivariatePolynomial


class Poset:
    """Immutable finite poset.

    ``elements`` is the declaration-order tuple of identifiers, ``covers``
    the tuple of (lower, upper) cover pairs.  ``above[i]`` / ``below[i]``
    are reflexive reachability bitmasks over element indices.
    """

    __slots__ = ("elements", "covers", "index", "above", "below",
                 "covers_up", "covers_dn")

    def __init__(self, elements, covers, above, below, covers_up, covers_dn):
        self.elements = tuple(elements)
        self.covers = tuple(covers)
        self.index = {e: i for i, e in enumerate(self.elements)}
        self.above = tuple(above)
        self.below = tuple(below)
        self.covers_up = tuple(covers_up)
        self.covers_dn = tuple(covers_dn)

    # -- queries ------------------------------------------------------------

    def __len__(self):
        return len(self.elements)

    def __contains__(self, e):
        return e in self.index

    def idx(self, e) -> int:
        try:
            return self.index[e]
        except KeyError:
            raise UnknownIdentifier(f"unknown element {e!r}") from None

    def leq(self, a, b) -> bool:
        return bool(self.above[self.idx(a)] >> self.idx(b) & 1)

    def lt(self, a, b) -> bool:
        return a != b and self.leq(a, b)

    def _ids(self, mask: int) -> tuple:
        return tuple(e for i, e in enumerate(self.elements) if mask >> i & 1)

    def up_set(self, e) -> tuple:
        return self._ids(self.above[self.idx(e)])

    def down_set(self, e) -> tuple:
        return self._ids(self.below[self.idx(e)])

    def minimal_of_mask(self, mask: int) -> int:
        out = 0
        m = mask
        while m:
            low = m & -m
            i = low.bit_length() - 1
            if not (self.below[i] & mask & ~low):
                out |= low
            m ^= low
        return out

    def maximal_of_mask(self, mask: int) -> int:
        out = 0
        m = mask
        while m:
            low = m & -m
            i = low.bit_length() - 1
            if not (self.above[i] & mask & ~low):
                out |= low
            m ^= low
        return out

    def minimal_elements(self) -> tuple:
        return self._ids(self.minimal_of_mask((1 << len(self.elements)) - 1))

    def maximal_elements(self) -> tuple:
        return self._ids(self.maximal_of_mask((1 << len(self.elements)) - 1))

    def join_mask(self, T) -> int:
        """Bitmask of minimal upper bounds of the element set T."""
        common = (1 << len(self.elements)) - 1
        for t in T:
            common &= self.above[self.idx(t)]
        return self.minimal_of_mask(common)

    def meet_mask(self, T) -> int:
        common = (1 << len(self.elements)) - 1
        for t in T:
            common &= self.below[self.idx(t)]
        return self.maximal_of_mask(common)

    def subposet(self, keep, *, covers_restrict: bool = False) -> "Poset":
        """Induced subposet on ``keep`` (kept in declaration order).

        With ``covers_restrict=True`` the original covers are reused, which
        is valid exactly when ``keep`` is an order ideal or filter.
        """
        keep = [e for e in self.elements if e in set(keep)]
        if covers_restrict:
            kept = set(keep)
            covers = [(a, b) for a, b in self.covers if a in kept and b in kept]
            return _assemble(keep, covers)
        kidx = [self.idx(e) for e in keep]
        covers = []
        for ai, a in zip(kidx, keep):
            for bi, b in zip(kidx, keep):
                if ai != bi and self.above[ai] >> bi & 1:
                    # cover iff nothing kept strictly between
                    between = self.above[ai] & self.below[bi]
                    if not any(mi != ai and mi != bi and between >> mi & 1
                               for mi in kidx):
                        covers.append((a, b))
        return _assemble(keep, covers)

    def dual(self) -> "Poset":
        return _assemble(self.elements, [(b, a) for a, b in self.covers])

    def __repr__(self):
        return f"Poset({len(self.elements)} elements, {len(self.covers)} covers)"


def _assemble(elements, covers) -> Poset:
    """Build a Poset from already-validated Hasse data."""
    index = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    covers_up = [[] for _ in range(n)]
    covers_dn = [[] for _ in range(n)]
    for a, b in covers:
        covers_up[index[a]].append(index[b])
        covers_dn[index[b]].append(index[a])

    order = _topo_order(n, covers_up)
    if order is None:  # pragma: no cover - callers pass acyclic data
        raise CycleDetected(_find_cycle(elements, covers_up, index))
    above = [1 << i for i in range(n)]
    for i in reversed(order):
        for j in covers_up[i]:
            above[i] |= above[j]
    below = [1 << i for i in range(n)]
    for i in order:
        for j in covers_dn[i]:
            below[i] |= below[j]
    return Poset(elements, covers, above, below,
                 [tuple(c) for c in covers_up], [tuple(c) for c in covers_dn])


def _topo_order(n, covers_up):
    indeg = [0] * n
    for i in range(n):
        for j in covers_up[i]:
            indeg[j] += 1
    queue = [i for i in range(n) if indeg[i] == 0]
    order = []
    while queue:
        i = queue.pop()
        order.append(i)
        for j in covers_up[i]:
            indeg[j] -= 1
            if indeg[j] == 0:
                queue.append(j)
    return order if len(order) == n else None


def _find_cycle(elements, covers_up, index):
    n = len(elements)
    state = [0] * n  # 0 unseen, 1 on stack, 2 done
    stack = []

    def dfs(i):
        state[i] = 1
        stack.append(i)
        for j in covers_up[i]:
            if state[j] == 1:
                k = stack.index(j)
                return [elements[m] for m in stack[k:]] + [elements[j]]
            if state[j] == 0:
                found = dfs(j)
                if found:
                    return found
        stack.pop()
        state[i] = 2
        return None

    for i in range(n):
        if state[i] == 0:
            found = dfs(i)
            if found:
                return found
    return [elements[0], elements[0]]  # pragma: no cover


def build_poset(elements, covers) -> Poset:
    """Validating constructor: rejects duplicate ids, unknown ids, cycles,
    and covers implied by transitivity (the Hasse condition)."""
    elements = list(elements)
    seen = set()
    for e in elements:
        if e in seen:
            raise DuplicateIdentifier(f"duplicate element id {e!r}")
        seen.add(e)
    index = {e: i for i, e in enumerate(elements)}
    covers = [tuple(c) for c in covers]
    cover_set = set()
    n = len(elements)
    covers_up = [[] for _ in range(n)]
    for a, b in covers:
        if a not in index:
            raise UnknownIdentifier(f"cover references unknown element {a!r}")
        if b not in index:
            raise UnknownIdentifier(f"cover references unknown element {b!r}")
        if a == b:
            raise CycleDetected([a, b])
        if (a, b) in cover_set:
            raise NonHasseCover((a, b), "duplicate cover pair")
        cover_set.add((a, b))
        covers_up[index[a]].append(index[b])

    if _topo_order(n, covers_up) is None:
        raise CycleDetected(_find_cycle(elements, covers_up, index))

    p = _assemble(elements, covers)
    for a, b in covers:
        between = p.above[index[a]] & p.below[index[b]]
        between &= ~(1 << index[a]) & ~(1 << index[b])
        if between:
            raise NonHasseCover((a, b))
    return p


# --- joins and meets as operations ------------------------------------------

def upper_bound_minima(p: Poset, T) -> frozenset:
    """Minimal upper bounds of T; the whole poset's minima when T is empty."""
    return frozenset(p._ids(p.join_mask(T)))


def lower_bound_maxima(p: Poset, T) -> frozenset:
    """Maximal lower bounds of T; the whole poset's maxima when T is empty."""
    return frozenset(p._ids(p.meet_mask(T)))


# --- ranked posets -----------------------------------------------------------

class RankedPoset:
    """A bounded-below poset with a rank function: rank(bottom) = 0 and every
    cover raises rank by exactly one (both verified at construction)."""

    __slots__ = ("poset", "rank", "bottom")

    def __init__(self, poset: Poset, rank: dict):
        minima = poset.minimal_elements()
        if len(minima) != 1:
            raise NotBoundedBelow(minima)
        self.poset = poset
        self.rank = dict(rank)
        self.bottom = minima[0]
        if self.rank.get(self.bottom) != 0:
            raise NotRanked(self.bottom, (self.bottom,), (self.bottom,))
        chains = {self.bottom: (self.bottom,)}
        for a, b in _cover_sweep(poset):
            if b not in chains and a in chains:
                chains[b] = chains[a] + (b,)
        for a, b in poset.covers:
            if self.rank[b] != self.rank[a] + 1:
                raise NotRanked(b, chains.get(b, (b,)), chains.get(a, (a,)) + (b,))

    @property
    def elements(self):
        return self.poset.elements

    def atoms(self) -> tuple:
        return tuple(e for e in self.elements if self.rank[e] == 1)

    def max_rank(self) -> int:
        return max(self.rank.values(), default=0)

    def interval(self, lo, hi) -> "RankedPoset":
        """Closed interval [lo, hi] re-ranked to start at 0."""
        p = self.poset
        mask = p.above[p.idx(lo)] & p.below[p.idx(hi)]
        keep = p._ids(mask)
        base = self.rank[lo]
        return RankedPoset(p.subposet(keep),
                           {e: self.rank[e] - base for e in keep})

    def __repr__(self):
        return f"RankedPoset({len(self.elements)} elements, max rank {self.max_rank()})"


def _cover_sweep(poset: Poset):
    """Covers in an order where lower endpoints appear bottom-up."""
    order = _topo_order(len(poset.elements), [list(c) for c in poset.covers_up])
    pos = {i: k for k, i in enumerate(order)}
    return sorted(poset.covers, key=lambda ab: pos[poset.idx(ab[0])])


def compute_rank(p: Poset) -> RankedPoset:
    """Verify unique minimum and gradedness; derive the rank function."""
    minima = p.minimal_elements()
    if len(minima) != 1:
        raise NotBoundedBelow(minima)
    bottom = minima[0]
    rank = {bottom: 0}
    chains = {bottom: (bottom,)}
    for a, b in _cover_sweep(p):
        if a not in rank:  # unreachable from bottom would mean several minima
            continue
        if b not in rank:
            rank[b] = rank[a] + 1
            chains[b] = chains[a] + (b,)
        elif rank[b] != rank[a] + 1:
            raise NotRanked(b, chains[b], chains[a] + (b,))
    return RankedPoset(p, rank)


# --- simplicial posets --------------------------------------------------------

class SimplicialPoset:
    """Bounded-below ranked poset whose every down-set is a Boolean lattice
    on its atoms.  ``support[x]`` is the set of atoms below x; the rank of x
    equals ``len(support[x])``."""

    __slots__ = ("ranked", "support")

    def __init__(self, ranked: RankedPoset, support: dict):
        self.ranked = ranked
        self.support = support

    @property
    def poset(self) -> Poset:
        return self.ranked.poset

    @property
    def elements(self):
        return self.ranked.poset.elements

    @property
    def bottom(self):
        return self.ranked.bottom

    def atoms(self) -> tuple:
        return self.ranked.atoms()

    def size(self, x) -> int:
        """Number of atoms below x (the simplicial rank of x)."""
        return len(self.support[x])

    def __repr__(self):
        return f"SimplicialPoset({len(self.elements)} elements, {len(self.atoms())} atoms)"


def verify_simplicial(rp: RankedPoset) -> SimplicialPoset:
    """Check every down-set against the subset lattice of its atoms via the
    map y -> atoms(y): it must be a rank-preserving bijection onto all
    subsets, which forces an order isomorphism."""
    p = rp.poset
    atoms = rp.atoms()
    atom_bit = {a: 1 << i for i, a in enumerate(atoms)}
    supp_bits = {}
    for e in p.elements:
        bits = 0
        for a in atoms:
            if p.leq(a, e):
                bits |= atom_bit[a]
        supp_bits[e] = bits
    for x in p.elements:
        down = p.down_set(x)
        k = bin(supp_bits[x]).count("1")
        if rp.rank[x] != k:
            raise NotSimplicial(x, f"rank {rp.rank[x]} != {k} atoms below")
        if len(down) != 2 ** k:
            raise NotSimplicial(x, f"|down-set| = {len(down)} != 2^{k}")
        seen = set()
        for y in down:
            if supp_bits[y] in seen:
                raise NotSimplicial(x, "two elements share the same atom set")
            seen.add(supp_bits[y])
    support = {e: frozenset(a for a in atoms if atom_bit[a] & supp_bits[e])
               for e in p.elements}
    return SimplicialPoset(rp, support)


def complement(sp: SimplicialPoset, x, a):
    """The unique element of the Boolean down-set of x whose atom set is
    support(x) minus support(a)."""
    p = sp.poset
    if not p.leq(a, x):
        raise NotBelow(f"{a!r} is not below {x!r}")
    target = sp.support[x] - sp.support[a]
    for y in p.down_set(x):
        if sp.support[y] == target:
            return y
    raise AssertionError(f"no complement of {a!r} in down-set of {x!r}")  # pragma: no cover


# --- Möbius function and characteristic polynomial ----------------------------

def mobius(rp: RankedPoset) -> dict:
    """mu(bottom) = 1 and sum of mu over each down-set is zero."""
    p = rp.poset
    order = sorted(p.elements, key=lambda e: rp.rank[e])
    mu = {}
    for w in order:
        if w == rp.bottom:
            mu[w] = 1
        else:
            mu[w] = -sum(mu[u] for u in p.down_set(w) if u != w)
    return mu


def characteristic_polynomial(rp: RankedPoset) -> UnivariatePolynomial:
    """Sum of mu(w) * t^(max_rank - rank(w)); requires rank constant on
    maximal elements."""
    maxima = rp.poset.maximal_elements()
    ranks = {rp.rank[m] for m in maxima}
    if len(ranks) != 1:
        raise RankNotConstantOnMax(tuple((m, rp.rank[m]) for m in maxima))
    top_rank = ranks.pop()
    mu = mobius(rp)
    coeffs: dict[int, int] = {}
    for w in rp.elements:
        d = top_rank - rp.rank[w]
        coeffs[d] = coeffs.get(d, 0) + mu[w]
    return UnivariatePolynomial(coeffs)


# --- geometric lattice recognition ---------------------------------------------

@dataclass(frozen=True)
class LatticeCheck:
    """Outcome of is_geometric_lattice: ok, or the violated condition with a
    witness."""

    ok: bool
    condition: str | None = None
    witness: tuple | None = None

    def __bool__(self):
        return self.ok


def is_geometric_lattice(rp) -> LatticeCheck:
    """True iff the input is a lattice, ranked, semimodular and atomic.

    Accepts a Poset or a RankedPoset; a plain poset is ranked internally so
    the check can report "not ranked" instead of raising.
    """
    if isinstance(rp, Poset):
        try:
            rp = compute_rank(rp)
        except NotBoundedBelow as exc:
            return LatticeCheck(False, "bounded_below", exc.minima)
        except NotRanked as exc:
            return LatticeCheck(False, "ranked", (exc.element,))
    p = rp.poset
    els = p.elements
    for a, b in itertools.combinations(els, 2):
        if bin(p.join_mask((a, b))).count("1") != 1:
            return LatticeCheck(False, "lattice", (a, b, "join"))
        if bin(p.meet_mask((a, b))).count("1") != 1:
            return LatticeCheck(False, "lattice", (a, b, "meet"))
    join = {}
    meet = {}
    for a, b in itertools.combinations(els, 2):
        join[(a, b)] = p._ids(p.join_mask((a, b)))[0]
        meet[(a, b)] = p._ids(p.meet_mask((a, b)))[0]
    for a, b in itertools.combinations(els, 2):
        if rp.rank[a] + rp.rank[b] < rp.rank[join[(a, b)]] + rp.rank[meet[(a, b)]]:
            return LatticeCheck(False, "semimodular", (a, b))
    for x in els:
        below_atoms = [a for a in rp.atoms() if p.leq(a, x)]
        j = p._ids(p.join_mask(below_atoms))
        if j != (x,):
            return LatticeCheck(False, "atomic", (x,))
    return LatticeCheck(True)


# --- isomorphism search ---------------------------------------------------------

def iter_isomorphisms(p: RankedPoset, q: RankedPoset,
                      p_labels: dict | None = None,
                      q_labels: dict | None = None):
    """Yield every rank-respecting (and label-respecting, when given) poset
    isomorphism p -> q as an id -> id dict.  Backtracking with
    (rank, label, down-degree, up-degree, down-set size) signatures."""
    pp, qq = p.poset, q.poset
    if len(pp) != len(qq):
        return
    if p_labels is None:
        p_labels = {}
    if q_labels is None:
        q_labels = {}

    def sig(poset, ranked, labels, e):
        i = poset.idx(e)
        return (ranked.rank[e], labels.get(e),
                len(poset.covers_dn[i]), len(poset.covers_up[i]),
                bin(poset.below[i]).count("1"), bin(poset.above[i]).count("1"))

    p_sig = {e: sig(pp, p, p_labels, e) for e in pp.elements}
    q_sig = {e: sig(qq, q, q_labels, e) for e in qq.elements}
    from collections import Counter
    if Counter(p_sig.values()) != Counter(q_sig.values()):
        return

    order = sorted(pp.elements, key=lambda e: (p.rank[e], pp.idx(e)))
    mapping: dict = {}
    used: set = set()

    def extend(k):
        if k == len(order):
            yield dict(mapping)
            return
        e = order[k]
        for f in qq.elements:
            if f in used or q_sig[f] != p_sig[e]:
                continue
            ok = True
            for e2, f2 in mapping.items():
                if pp.leq(e, e2) != qq.leq(f, f2) or pp.leq(e2, e) != qq.leq(f2, f):
                    ok = False
                    break
            if ok:
                mapping[e] = f
                used.add(f)
                yield from extend(k + 1)
                used.remove(f)
                del mapping[e]

    yield from extend(0)


def find_isomorphism(p: RankedPoset, q: RankedPoset,
                     p_labels: dict | None = None,
                     q_labels: dict | None = None) -> dict | None:
    """First rank- (and label-) preserving isomorphism found, or None."""
    for phi in iter_isomorphisms(p, q, p_labels, q_labels):
        return phi
    return None
