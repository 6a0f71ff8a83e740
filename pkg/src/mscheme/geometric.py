"""Geometric posets and the equivalence with simple matroid schemes.

A geometric poset is a bounded-below ranked poset in which

  G1  every maximal interval is a geometric lattice, and
  G2  for every x, every atom set A and every y minimal above A with
      rank(x) < rank(y) = |A|, some a in A satisfies a not<= x and
      join(a, x) nonempty.

Geometric posets are exactly the flats posets of matroid schemes; each is
the flats poset of a unique simple scheme, reconstructed here explicitly.
"""

from __future__ import annotations

import itertools

from .errors import AtomCapExceeded, AxiomViolation, NotSimple
from .poset import (
    RankedPoset,
    build_poset,
    compute_rank,
    find_isomorphism,
    is_geometric_lattice,
    iter_isomorphisms,
    verify_simplicial,
)
from .scheme import (
    MatroidScheme,
    closure,
    flats,
    is_simple,
    validate_scheme,
)

DEFAULT_ATOM_CAP = 20


class GeometricPoset:
    """A ranked bounded-below poset certified against G1 and G2."""

    __slots__ = ("ranked",)

    def __init__(self, ranked: RankedPoset, *, _checked: bool = False):
        if not _checked:
            raise TypeError("use validate_geometric() to build a GeometricPoset")
        self.ranked = ranked

    @property
    def poset(self):
        return self.ranked.poset

    @property
    def elements(self):
        return self.ranked.elements

    @property
    def rank(self):
        return self.ranked.rank

    def atoms(self):
        return self.ranked.atoms()

    def __repr__(self):
        return f"GeometricPoset({len(self.elements)} elements)"


def validate_geometric(rp: RankedPoset, atom_cap: int = DEFAULT_ATOM_CAP) -> GeometricPoset:
    """Check G1 on every maximal down-set and G2 by brute force over
    elements, atom subsets of size at most the top rank, and minimal upper
    bounds.  The exponential G2 sweep is refused above ``atom_cap`` atoms."""
    p = rp.poset
    for mx in p.maximal_elements():  # G1
        interval = rp.interval(rp.bottom, mx)
        check = is_geometric_lattice(interval)
        if not check:
            raise AxiomViolation("G1", (mx, check.condition, check.witness))

    atoms = rp.atoms()
    if len(atoms) > atom_cap:
        raise AtomCapExceeded(len(atoms), atom_cap)
    top_rank = max((rp.rank[mx] for mx in p.maximal_elements()), default=0)
    for x in p.elements:  # G2
        for size in range(rp.rank[x] + 1, top_rank + 1):
            for A in itertools.combinations(atoms, size):
                for y in p._ids(p.join_mask(A)):
                    if rp.rank[y] != size:
                        continue
                    if not any(not p.leq(a, x) and p.join_mask((a, x))
                               for a in A):
                        raise AxiomViolation("G2", (x, frozenset(A), y))
    return GeometricPoset(rp, _checked=True)


def pair_id(atom_set, x) -> str:
    """Identifier of a scheme element built from a geometric poset:
    "(sorted-atom-list|poset-id)"."""
    return f"({','.join(sorted(atom_set))}|{x})"


def scheme_from_geometric(gp: GeometricPoset) -> MatroidScheme:
    """The simple scheme whose elements are pairs (I, x) with I a set of
    atoms and x minimal above I, ordered by containment-and-order, with
    rho(I, x) the rank of x.  The result is validated, asserted simple, and
    its flats poset is asserted isomorphic to the input via the embedding
    x -> (atoms below x, x)."""
    rp = gp.ranked
    p = rp.poset
    atoms = rp.atoms()
    atoms_below = {x: tuple(a for a in atoms if p.leq(a, x)) for x in p.elements}

    pairs = []  # (atom frozenset, poset element)
    for x in p.elements:
        candidates = atoms_below[x]
        strict_below = [y for y in p.down_set(x) if y != x]
        for size in range(len(candidates) + 1):
            for combo in itertools.combinations(candidates, size):
                cset = set(combo)
                # x is a minimal upper bound of I iff nothing below x
                # already bounds I
                if not any(cset <= set(atoms_below[y]) for y in strict_below):
                    pairs.append((frozenset(combo), x))

    ids = [pair_id(i, x) for i, x in pairs]
    assert len(set(ids)) == len(ids), "pair identifiers collide"
    n = len(pairs)
    up = [0] * n  # strict up-sets as bitmasks
    down = [0] * n
    for i, (I, x) in enumerate(pairs):
        for j, (J, y) in enumerate(pairs):
            if i != j and I <= J and p.leq(x, y):
                up[i] |= 1 << j
                down[j] |= 1 << i
    covers = []
    for i in range(n):
        mask = up[i]
        for j in range(n):
            if mask >> j & 1 and not (up[i] & down[j]):
                covers.append((ids[i], ids[j]))

    sp = verify_simplicial(compute_rank(build_poset(ids, covers)))
    rho = {ids[i]: rp.rank[pairs[i][1]] for i in range(n)}
    m = validate_scheme(sp, rho)
    assert is_simple(m), "scheme built from a geometric poset must be simple"

    embed = {x: pair_id(atoms_below[x], x) for x in p.elements}
    fl = flats(m)
    assert sorted(embed.values()) == sorted(fl.elements), \
        "flats of the built scheme do not match the input poset"
    for x, y in itertools.product(p.elements, p.elements):
        assert p.leq(x, y) == fl.poset.leq(embed[x], embed[y]), \
            "embedding into flats is not an order isomorphism"
    return m


def simplification(m: MatroidScheme) -> MatroidScheme:
    """The unique simple scheme with the same flats poset."""
    return scheme_from_geometric(validate_geometric(flats(m)))


def check_uniqueness(m1: MatroidScheme, m2: MatroidScheme) -> dict | None:
    """Given two simple schemes, lift an isomorphism of their flats posets
    to a rho-preserving scheme isomorphism via atoms-below joins; returns
    the lifted bijection, or None when the flats posets are not isomorphic.
    """
    for m in (m1, m2):
        if not is_simple(m):
            raise NotSimple(f"{m!r} is not simple")
    f1, f2 = flats(m1), flats(m2)
    p1, p2 = m1.poset, m2.poset
    for phi in iter_isomorphisms(f1, f2):
        psi = {}
        ok = True
        for x in m1.elements:
            images = [phi[a] for a in m1.atoms() if p1.leq(a, x)]
            cl_img = phi[closure(m1, x)]
            candidates = [v for v in p2._ids(p2.join_mask(images))
                          if p2.leq(v, cl_img)]
            if len(candidates) != 1:
                ok = False
                break
            psi[x] = candidates[0]
        if not ok or sorted(psi.values(), key=p2.idx) != list(m2.elements):
            continue
        if all(m1.rho[x] == m2.rho[psi[x]] for x in m1.elements) and all(
                p1.leq(x, y) == p2.leq(psi[x], psi[y])
                for x in m1.elements for y in m1.elements):
            return psi
    if find_isomorphism(f1, f2) is None:
        return None
    raise AssertionError("flats posets isomorphic but no lift verified")  # pragma: no cover
