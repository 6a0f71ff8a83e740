"""The matroid-scheme core: axiom validation, localization, closure, flats,
independence/bases/circuits, loops/isthmuses, deletion/contraction/
restriction, and brute-force checkers for the derived axiom systems.

A matroid scheme is a finite simplicial poset S with a rank labeling rho
satisfying:

  M1  0 <= rho(x) <= |x|                     (|x| = number of atoms below x)
  M2  x <= y  implies  rho(x) <= rho(y)
  M3  u in join(x,y) implies rho(x) + rho(y) >= rho(u) + rho(meet(x,y))
  M4  l in meet(x,y) with rho(x) = rho(l) implies join(x,y) nonempty
  M5  rho(x) < rho(y) implies some atom a <= y, a not below x,
      with join(x,a) nonempty

Axiom checking is O(|S|^2 * joins) brute force; violations report the first
offending tuple in declaration order, checked in axiom order M1..M5.
"""

from __future__ import annotations

import itertools

from .errors import (
    AxiomViolation,
    MschemeError,
    NotALoop,
    NotAnAtom,
    UnknownIdentifier,
)
from .poset import (
    Poset,
    RankedPoset,
    SimplicialPoset,
    complement,
    compute_rank,
    verify_simplicial,
)

_RESTRICT_CROSSCHECK_LIMIT = 64


class MatroidScheme:
    """A validated simplicial poset with rank labels.

    Instances are immutable; use :func:`validate_scheme` to construct one
    from unvalidated data.  Equality is exact: same element order, same
    covers, same labels.
    """

    __slots__ = ("s", "rho", "_closure", "_flats_cache")

    def __init__(self, s: SimplicialPoset, rho: dict, *, _checked: bool = False):
        if not _checked:
            raise TypeError("use validate_scheme() to build a MatroidScheme")
        self.s = s
        self.rho = dict(rho)
        self._closure = None
        self._flats_cache = None

    @property
    def poset(self) -> Poset:
        return self.s.poset

    @property
    def elements(self):
        return self.s.elements

    @property
    def bottom(self):
        return self.s.bottom

    def atoms(self) -> tuple:
        return self.s.atoms()

    def size(self, x) -> int:
        return self.s.size(x)

    def serialize_key(self) -> tuple:
        """Exact-form key used for memoization of recursive algorithms."""
        return (self.elements, self.poset.covers,
                tuple(self.rho[e] for e in self.elements))

    def __eq__(self, other):
        return (isinstance(other, MatroidScheme)
                and self.elements == other.elements
                and self.poset.covers == other.poset.covers
                and self.rho == other.rho)

    def __hash__(self):
        return hash(self.serialize_key())

    def __repr__(self):
        top = max(self.rho.values(), default=0)
        return f"MatroidScheme({len(self.elements)} elements, max rho {top})"


def _meet_of_joinable(p: Poset, a, b):
    """The unique maximal lower bound of {a, b}; callers guarantee
    join(a,b) is nonempty, which forces uniqueness in a simplicial poset."""
    mm = p.meet_mask((a, b))
    ids = p._ids(mm)
    assert len(ids) == 1, f"meet of joinable pair {(a, b)} not unique"
    return ids[0]


def validate_scheme(sp: SimplicialPoset, rho: dict) -> MatroidScheme:
    """Exhaustively check M1-M5; return the scheme or raise the first
    violation in axiom order with a deterministic witness."""
    p = sp.poset
    els = p.elements
    for e in els:
        if e not in rho:
            raise UnknownIdentifier(f"rho undefined on {e!r}")

    for x in els:  # M1
        if not 0 <= rho[x] <= sp.size(x):
            raise AxiomViolation("M1", (x,), f"rho={rho[x]}, |x|={sp.size(x)}")
    for x in els:  # M2
        for y in els:
            if p.lt(x, y) and rho[x] > rho[y]:
                raise AxiomViolation("M2", (x, y))
    join_cache = {}
    for x, y in itertools.combinations(els, 2):
        join_cache[(x, y)] = p._ids(p.join_mask((x, y)))
    for x, y in itertools.combinations(els, 2):  # M3
        ups = join_cache[(x, y)]
        if not ups:
            continue
        m = _meet_of_joinable(p, x, y)
        for u in ups:
            if rho[x] + rho[y] < rho[u] + rho[m]:
                raise AxiomViolation("M3", (x, y, u, m))
    for x in els:  # M4
        for y in els:
            if x == y:
                continue
            key = (x, y) if (x, y) in join_cache else (y, x)
            if join_cache[key]:
                continue
            for l in p._ids(p.meet_mask((x, y))):
                if rho[x] == rho[l]:
                    raise AxiomViolation("M4", (x, y, l))
    atoms = sp.atoms()
    atom_join = {(x, a): bool(p.join_mask((x, a))) for x in els for a in atoms}
    for x in els:  # M5
        for y in els:
            if rho[x] >= rho[y]:
                continue
            if not any(p.leq(a, y) and not p.leq(a, x) and atom_join[(x, a)]
                       for a in atoms):
                raise AxiomViolation("M5", (x, y))
    return MatroidScheme(sp, rho, _checked=True)


def _scheme_unchecked(sp: SimplicialPoset, rho: dict) -> MatroidScheme:
    """Internal constructor for results of theorem-backed operations
    (deletion, contraction, restriction); property tests re-validate."""
    return MatroidScheme(sp, rho, _checked=True)


def scheme_rank(m: MatroidScheme) -> int:
    """rho of any maximal element, after asserting constancy on max(S)."""
    values = {m.rho[u] for u in m.poset.maximal_elements()}
    assert len(values) == 1, f"rho not constant on maximal elements: {values}"
    return values.pop()


def localization(m: MatroidScheme, x) -> MatroidScheme:
    """The matroid on the Boolean down-set of x with the restricted labels."""
    p = m.poset
    keep = p.down_set(x)
    sub = p.subposet(keep, covers_restrict=True)
    sp = verify_simplicial(compute_rank(sub))
    return _scheme_unchecked(sp, {e: m.rho[e] for e in keep})


def closure(m: MatroidScheme, x):
    """The unique maximal element above x with the same rho (uniqueness is a
    theorem for valid schemes and is asserted here)."""
    if m._closure is None:
        p = m.poset
        cl = {}
        for e in m.elements:
            mask = 0
            for i, f in enumerate(m.elements):
                if p.above[p.idx(e)] >> i & 1 and m.rho[f] == m.rho[e]:
                    mask |= 1 << i
            tops = p._ids(p.maximal_of_mask(mask))
            assert len(tops) == 1, f"closure of {e!r} not unique: {tops}"
            cl[e] = tops[0]
        m._closure = cl
    m.poset.idx(x)
    return m._closure[x]


def flats(m: MatroidScheme) -> RankedPoset:
    """Subposet of closed elements, ranked by rho and bounded below by the
    closure of the bottom element."""
    if m._flats_cache is None:
        closed = [e for e in m.elements if closure(m, e) == e]
        sub = m.poset.subposet(closed)
        m._flats_cache = RankedPoset(sub, {e: m.rho[e] for e in closed})
    return m._flats_cache


def independence(m: MatroidScheme) -> frozenset:
    return frozenset(x for x in m.elements if m.rho[x] == m.size(x))


def bases(m: MatroidScheme) -> frozenset:
    ind = independence(m)
    p = m.poset
    return frozenset(x for x in ind
                     if not any(y != x and p.leq(x, y) for y in ind))


def circuits(m: MatroidScheme) -> frozenset:
    dep = [x for x in m.elements if m.rho[x] < m.size(x)]
    p = m.poset
    out = frozenset(x for x in dep
                    if not any(y != x and p.leq(y, x) for y in dep))
    for c in out:
        assert m.rho[c] == m.size(c) - 1, f"circuit {c!r} has rho != |c|-1"
    return out


# --- independence cryptomorphism ------------------------------------------------

def validate_independence(sp: SimplicialPoset, ind) -> None:
    """Check I1-I4 exhaustively; raise AxiomViolation on the first failure."""
    ind = set(ind)
    p = sp.poset
    els = p.elements
    for x in ind:
        if x not in p.index:
            raise UnknownIdentifier(f"unknown element {x!r} in independence set")
    if not ind:
        raise AxiomViolation("I1", ())
    for y in els:  # I2
        if y in ind:
            for x in p.down_set(y):
                if x not in ind:
                    raise AxiomViolation("I2", (x, y))
    atoms = sp.atoms()
    for x in els:  # I3
        if x not in ind:
            continue
        for y in els:
            if y not in ind or sp.size(x) >= sp.size(y):
                continue
            if not any(p.leq(a, y) and not p.leq(a, x)
                       and _join_inside(p, x, a, ind)
                       for a in atoms):
                raise AxiomViolation("I3", (x, y))
    max_ind_below = {}
    for x in els:
        below = [z for z in p.down_set(x) if z in ind]
        max_ind_below[x] = [z for z in below
                            if not any(w != z and p.leq(z, w) for w in below)]
    for x in els:  # I4
        for y in els:
            for z in max_ind_below[x]:
                if p.leq(z, y) and not p.join_mask((x, y)):
                    raise AxiomViolation("I4", (x, y, z))


def _join_inside(p: Poset, x, a, ind) -> bool:
    ups = p._ids(p.join_mask((x, a)))
    return bool(ups) and all(u in ind for u in ups)


def scheme_from_independence(sp: SimplicialPoset, ind) -> MatroidScheme:
    """Validate I1-I4, then build rho(x) = max size of an independent element
    below x and validate the result as a scheme whose independence poset
    equals the input (asserted)."""
    validate_independence(sp, ind)
    ind = set(ind)
    p = sp.poset
    rho = {}
    for x in p.elements:
        rho[x] = max(sp.size(z) for z in p.down_set(x) if z in ind)
    m = validate_scheme(sp, rho)
    assert independence(m) == frozenset(ind), "independence poset mismatch"
    return m


# --- loops and isthmuses ---------------------------------------------------------

def _loop_conditions(m: MatroidScheme, a) -> tuple:
    p = m.poset
    c1 = m.rho[a] == 0
    c2 = all(p.leq(a, x) for x in flats(m).elements)
    c3 = (all(p.leq(a, mx) for mx in p.maximal_elements())
          and not any(p.leq(a, b) for b in bases(m)))
    return c1, c2, c3


def _isthmus_conditions(m: MatroidScheme, a) -> tuple:
    p = m.poset
    c1 = True
    for x in m.elements:
        if p.leq(a, x):
            continue
        ups = p._ids(p.join_mask((x, a)))
        if not ups or any(m.rho[u] != m.rho[x] + 1 for u in ups):
            c1 = False
            break
    c2 = all(p.leq(a, b) for b in bases(m))
    c3 = (all(p.leq(a, mx) for mx in p.maximal_elements())
          and not any(p.leq(a, c) for c in circuits(m)))
    return c1, c2, c3


def loops(m: MatroidScheme) -> frozenset:
    """Atoms of rank zero, classified by all three equivalent conditions
    (their agreement is asserted)."""
    out = []
    for a in m.atoms():
        conds = _loop_conditions(m, a)
        assert len(set(conds)) == 1, f"loop conditions disagree on {a!r}: {conds}"
        if conds[0]:
            out.append(a)
    return frozenset(out)


def isthmuses(m: MatroidScheme) -> frozenset:
    """Atoms below every basis, classified by all three equivalent
    conditions (their agreement is asserted)."""
    out = []
    for a in m.atoms():
        conds = _isthmus_conditions(m, a)
        assert len(set(conds)) == 1, f"isthmus conditions disagree on {a!r}: {conds}"
        if conds[0]:
            out.append(a)
    return frozenset(out)


def is_simple(m: MatroidScheme) -> bool:
    """Every atom is a flat and not a loop."""
    lps = loops(m)
    return all(closure(m, a) == a and a not in lps for a in m.atoms())


# --- deletion, contraction, restriction ---------------------------------------------

def delete(m: MatroidScheme, a) -> MatroidScheme:
    """Scheme on the elements not above the atom a; the rank drops by one
    exactly when a is an isthmus (asserted)."""
    if a not in set(m.atoms()):
        raise NotAnAtom(f"{a!r} is not an atom")
    p = m.poset
    keep = [e for e in m.elements if not p.leq(a, e)]
    sub = p.subposet(keep, covers_restrict=True)
    sp = verify_simplicial(compute_rank(sub))
    out = _scheme_unchecked(sp, {e: m.rho[e] for e in keep})
    expected = scheme_rank(m) - (1 if a in isthmuses(m) else 0)
    assert scheme_rank(out) == expected, "deletion rank rule violated"
    return out


def contract(m: MatroidScheme, x) -> MatroidScheme:
    """Scheme on the up-set of x, re-rooted at x, with rho shifted down by
    rho(x); original identifiers are kept."""
    p = m.poset
    p.idx(x)
    keep = [e for e in m.elements if p.leq(x, e)]
    sub = p.subposet(keep, covers_restrict=True)
    sp = verify_simplicial(compute_rank(sub))
    base = m.rho[x]
    return _scheme_unchecked(sp, {e: m.rho[e] - base for e in keep})


def restrict(m: MatroidScheme, atom_set) -> MatroidScheme:
    """Scheme on the order ideal of elements supported on the given atoms;
    equals iterated deletion (cross-checked on small inputs)."""
    atoms = set(m.atoms())
    atom_set = set(atom_set)
    for a in atom_set:
        if a not in atoms:
            raise NotAnAtom(f"{a!r} is not an atom")
    keep = [e for e in m.elements if m.s.support[e] <= atom_set]
    sub = m.poset.subposet(keep, covers_restrict=True)
    sp = verify_simplicial(compute_rank(sub))
    out = _scheme_unchecked(sp, {e: m.rho[e] for e in keep})
    if len(m.elements) <= _RESTRICT_CROSSCHECK_LIMIT:
        alt = m
        for a in m.atoms():
            if a not in atom_set:
                alt = delete(alt, a)
        assert out == alt, "restriction disagrees with iterated deletion"
    return out


def check_loop_del_contr(m: MatroidScheme, a) -> dict:
    """For a loop a, produce and verify the isomorphism between the
    contraction by a and the deletion of a via z -> complement of a in z."""
    if a not in loops(m):
        raise NotALoop(f"{a!r} is not a loop")
    p = m.poset
    up = [z for z in m.elements if p.leq(a, z)]
    deleted = [e for e in m.elements if not p.leq(a, e)]
    phi = {z: complement(m.s, z, a) for z in up}
    assert sorted(phi.values(), key=p.idx) == sorted(deleted, key=p.idx), \
        "complement map is not a bijection onto the deletion"
    for z, w in itertools.product(up, up):
        assert p.leq(z, w) == p.leq(phi[z], phi[w]), "complement map not an order iso"
    for z in up:
        assert m.rho[z] - m.rho[a] == m.rho[phi[z]], "complement map not rank preserving"
    return phi


# --- scheme isomorphism -----------------------------------------------------------

def scheme_isomorphism(m1: MatroidScheme, m2: MatroidScheme) -> dict | None:
    """rho-preserving simplicial poset isomorphism, or None."""
    from .poset import find_isomorphism
    return find_isomorphism(m1.s.ranked, m2.s.ranked, m1.rho, m2.rho)


# --- derived-axiom cross-validation -------------------------------------------------

class DerivedAxiomReport:
    """Pass/fail per derived property with the first witness on failure.
    The properties are theorems for valid schemes, so any failure indicates
    an implementation bug; this is a cross-validation oracle."""

    def __init__(self):
        self.results: dict[str, tuple[bool, tuple | None]] = {}

    def record(self, name: str, ok: bool, witness=None):
        if name not in self.results or (self.results[name][0] and not ok):
            self.results[name] = (ok, witness)

    @property
    def ok(self) -> bool:
        return all(ok for ok, _ in self.results.values())

    def failures(self) -> dict:
        return {k: w for k, (ok, w) in self.results.items() if not ok}

    def __repr__(self):
        status = "pass" if self.ok else f"FAIL {sorted(self.failures())}"
        return f"DerivedAxiomReport({status})"


def check_derived_axioms(m: MatroidScheme) -> DerivedAxiomReport:
    """Brute-force re-verification of CL1-CL4, B1-B2, C1-C3, the three rank
    facts, local flats, the closure-join lemma, and the loop/isthmus
    three-way equivalences.

    On corrupted input the closure operator or the flats poset may not even
    be well-defined; that is reported as a failing CL_STRUCTURE entry
    instead of propagating the internal error."""
    rep = DerivedAxiomReport()
    try:
        _check_derived(m, rep)
    except (AssertionError, MschemeError) as exc:
        rep.record("CL_STRUCTURE", False, (repr(exc),))
    for name in ("CL_STRUCTURE", "CL1", "CL2", "CL3", "CL4", "B1", "B2",
                 "C1", "C2", "C3", "RK1", "RK2", "RK3", "LOCALFLATS",
                 "CLOSURE2", "LOOP_EQUIV", "ISTHMUS_EQUIV"):
        rep.results.setdefault(name, (True, None))
    return rep


def _check_derived(m: MatroidScheme, rep: DerivedAxiomReport) -> None:
    p = m.poset
    els = m.elements
    atoms = m.atoms()
    cl = {x: closure(m, x) for x in els}

    for x in els:
        rep.record("CL1", p.leq(x, cl[x]), (x,))
    for x, y in itertools.product(els, els):
        if p.leq(x, y):
            rep.record("CL2", p.leq(cl[x], cl[y]), (x, y))
    for x in els:
        rep.record("CL3", cl[cl[x]] == cl[x], (x,))
    for x in els:
        for b in atoms:
            for u in p._ids(p.join_mask((x, b))):
                for a in atoms:
                    if p.leq(a, cl[u]) and not p.leq(a, cl[x]):
                        ok = any(p.leq(v, cl[u]) and p.leq(b, cl[v])
                                 for v in p._ids(p.join_mask((x, a))))
                        rep.record("CL4", ok, (x, a, b, u))

    bs = sorted(bases(m), key=p.idx)
    rep.record("B1", len(bs) > 0)
    for x, y in itertools.product(bs, bs):
        if x == y:
            continue
        for a in atoms:
            if p.leq(a, x) and not p.leq(a, y):
                xa = complement(m.s, x, a)
                ok = False
                for b in atoms:
                    if p.leq(b, y) and not p.leq(b, x):
                        ups = p._ids(p.join_mask((xa, b)))
                        if ups and all(u in set(bs) for u in ups):
                            ok = True
                            break
                rep.record("B2", ok, (x, y, a))

    cs = sorted(circuits(m), key=p.idx)
    rep.record("C1", m.bottom not in cs)
    for x, y in itertools.product(cs, cs):
        if x != y:
            rep.record("C2", not p.leq(x, y), (x, y))
    for x, y in itertools.combinations(cs, 2):
        ups = p._ids(p.join_mask((x, y)))
        if not ups:
            continue
        meet = _meet_of_joinable(p, x, y)
        for u in ups:
            for a in atoms:
                if p.leq(a, meet):
                    ok = any(p.leq(z, u) and not p.leq(a, z) for z in cs)
                    rep.record("C3", ok, (x, y, u, a))

    for x in els:  # rank facts
        for a in atoms:
            for u in p._ids(p.join_mask((x, a))):
                rep.record("RK1", m.rho[x] <= m.rho[u] <= m.rho[x] + 1, (x, a, u))
    for x, y in itertools.combinations(els, 2):
        ranks = {m.rho[u] for u in p._ids(p.join_mask((x, y)))}
        rep.record("RK2", len(ranks) <= 1, (x, y))
    rep.record("RK3", len({m.rho[u] for u in p.maximal_elements()}) == 1)

    fl = flats(m)
    fl_set = set(fl.elements)
    for x in fl.elements:  # local flats
        local = flats(localization(m, x))
        expected = {f for f in fl_set if p.leq(f, x)}
        rep.record("LOCALFLATS",
                   set(local.elements) == expected
                   and all(local.rank[f] == m.rho[f] for f in local.elements),
                   (x,))

    fp = fl.poset
    for x, y in itertools.combinations(els, 2):  # closure-join lemma
        for u in fp._ids(fp.join_mask((cl[x], cl[y]))):
            ok = any(cl[v] == u for v in p._ids(p.join_mask((x, y))))
            rep.record("CLOSURE2", ok, (x, y, u))

    for a in atoms:
        lc = _loop_conditions(m, a)
        rep.record("LOOP_EQUIV", len(set(lc)) == 1, (a,) + lc)
        ic = _isthmus_conditions(m, a)
        rep.record("ISTHMUS_EQUIV", len(set(ic)) == 1, (a,) + ic)
