"""Exact toric-arrangement engine over the circle group with rational
translation phases.

A hypersurface is cut out by a primitive integer character alpha and a
rational phase t: the points phi of the n-torus with phi(alpha) = t.  A
layer (connected component of an intersection) is encoded as a saturated
integer sublattice in canonical row Hermite normal form together with the
phases its basis rows must take; saturation makes the component connected
and the canonical form makes equality componentwise.

Real and elliptic coefficient groups are out of scope: real factors make
the poset infinite in translation and elliptic curves change component
counts, so the module states the circle-group restriction instead of
parameterizing over it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .constructions import Matroid, linear_matroid
from .errors import (
    DimensionMismatch,
    MschemeError,
    NotALayer,
    NotInArrangement,
)
from .geometric import pair_id, scheme_from_geometric, validate_geometric
from .poset import build_poset, compute_rank
from .scheme import contract, delete, localization, scheme_isomorphism


# --- integer matrix normal forms --------------------------------------------------

def hnf(matrix: list[list[int]]) -> tuple[list[list[int]], list[list[int]]]:
    """Row-style Hermite normal form H with unimodular U such that U*M = H.

    Convention: pivots positive, entries above each pivot reduced into
    [0, pivot); zero rows sink to the bottom.  This fixes file-level
    canonical forms for lattices.
    """
    m = [list(r) for r in matrix]
    rows = len(m)
    cols = len(m[0]) if m else 0
    u = [[int(i == j) for j in range(rows)] for i in range(rows)]
    r = 0
    for c in range(cols):
        # euclidean elimination below row r in column c
        while True:
            nz = [i for i in range(r, rows) if m[i][c] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(m[i][c]))
            m[r], m[piv] = m[piv], m[r]
            u[r], u[piv] = u[piv], u[r]
            if m[r][c] < 0:
                m[r] = [-v for v in m[r]]
                u[r] = [-v for v in u[r]]
            done = True
            for i in range(r + 1, rows):
                q = m[i][c] // m[r][c]
                if q:
                    m[i] = [a - q * b for a, b in zip(m[i], m[r])]
                    u[i] = [a - q * b for a, b in zip(u[i], u[r])]
                if m[i][c] != 0:
                    done = False
            if done:
                break
        if any(m[i][c] != 0 for i in range(r, rows)):
            for i in range(r):  # reduce entries above the pivot
                q = m[i][c] // m[r][c]
                if q:
                    m[i] = [a - q * b for a, b in zip(m[i], m[r])]
                    u[i] = [a - q * b for a, b in zip(u[i], u[r])]
            r += 1
            if r == rows:
                break
    return m, u


def snf(matrix: list[list[int]]) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Smith normal form D = U*M*V with unimodular U, V and divisibility
    d1 | d2 | ... along the diagonal."""
    m = [list(r) for r in matrix]
    rows = len(m)
    cols = len(m[0]) if m else 0
    u = [[int(i == j) for j in range(rows)] for i in range(rows)]
    v = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in m:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):
        m[dst] = [a + q * b for a, b in zip(m[dst], m[src])]
        u[dst] = [a + q * b for a, b in zip(u[dst], u[src])]

    def add_col(src, dst, q):
        for row in m:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    t = 0
    while t < min(rows, cols):
        # find a pivot
        nz = [(i, j) for i in range(t, rows) for j in range(t, cols) if m[i][j] != 0]
        if not nz:
            break
        i0, j0 = min(nz, key=lambda ij: abs(m[ij[0]][ij[1]]))
        swap_rows(t, i0)
        swap_cols(t, j0)
        if m[t][t] < 0:
            m[t] = [-x for x in m[t]]
            u[t] = [-x for x in u[t]]
        dirty = False
        for i in range(t + 1, rows):
            q = m[i][t] // m[t][t]
            if q:
                add_row(t, i, -q)
            if m[i][t] != 0:
                dirty = True
        for j in range(t + 1, cols):
            q = m[t][j] // m[t][t]
            if q:
                add_col(t, j, -q)
            if m[t][j] != 0:
                dirty = True
        if dirty:
            continue
        # divisibility: fold any non-multiple into position t
        bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                    if m[i][j] % m[t][t] != 0), None)
        if bad is not None:
            add_row(bad[0], t, 1)
            continue
        t += 1
    return m, u, v


def integer_kernel(matrix: list[list[int]]) -> list[list[int]]:
    """Basis of { v : M v = 0 } as columns-of-V for zero diagonal entries."""
    rows = len(matrix)
    cols = len(matrix[0]) if matrix else 0
    if rows == 0:
        return [[int(i == j) for j in range(cols)] for i in range(cols)]
    d, _, v = snf(matrix)
    out = []
    for j in range(cols):
        if j >= rows or d[j][j] == 0:
            out.append([v[i][j] for i in range(cols)])
    return out


def saturate(matrix: list[list[int]]) -> list[list[int]]:
    """Canonical HNF basis of the saturation of the row lattice: the set of
    integer vectors lying in the rational row span.

    Computed as a double integer kernel: the vectors orthogonal to
    everything orthogonal to the rows.  Kernels of integer matrices are
    saturated, so no division step is needed.
    """
    if not matrix:
        return []
    cols = len(matrix[0])
    orthogonal = integer_kernel(matrix)
    if not orthogonal:
        basis = [[int(i == j) for j in range(cols)] for i in range(cols)]
    else:
        basis = integer_kernel(orthogonal)
    h, _ = hnf(basis)
    return [row for row in h if any(row)]


# --- characters and layers -----------------------------------------------------------

def _parse_phase(value) -> Fraction:
    t = Fraction(value)
    return t - (t.numerator // t.denominator)  # reduce into [0, 1)


@dataclass(frozen=True)
class Character:
    """A primitive integer vector with a rational phase in [0, 1)."""

    alpha: tuple[int, ...]
    phase: Fraction

    def __post_init__(self):
        object.__setattr__(self, "alpha", tuple(int(a) for a in self.alpha))
        if not self.alpha or all(a == 0 for a in self.alpha):
            raise MschemeError("character vector must be nonzero")
        g = 0
        for a in self.alpha:
            g = gcd(g, abs(a))
        if g != 1:
            raise MschemeError(
                f"character {self.alpha} is not primitive (content {g}); "
                "non-primitive input is an error, not auto-normalized")
        object.__setattr__(self, "phase", _parse_phase(self.phase))

    def canonical_key(self) -> tuple:
        """Sign-normalized key: negating the vector negates the phase."""
        first = next(a for a in self.alpha if a != 0)
        if first < 0:
            return (tuple(-a for a in self.alpha), _parse_phase(-self.phase))
        return (self.alpha, self.phase)

    @property
    def label(self) -> str:
        return f"({','.join(map(str, self.alpha))})@{self.phase}"

    def __repr__(self):
        return f"Character{self.label}"


def _layer_id(basis, phases) -> str:
    rows = ",".join("[" + ",".join(map(str, row)) + "]" for row in basis)
    phs = ",".join(str(p) for p in phases)
    return f"[{rows}]|[{phs}]"


@dataclass(frozen=True)
class Layer:
    """A saturated sublattice (canonical triangular basis) plus the rational
    phases of its basis rows; one connected component of an intersection."""

    n: int
    basis: tuple[tuple[int, ...], ...]
    phases: tuple[Fraction, ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def layer_id(self) -> str:
        return _layer_id(self.basis, self.phases)

    def express(self, alpha) -> list[int] | None:
        """Integer coordinates of alpha over the basis rows, or None when
        alpha is outside the lattice.  Back-substitution along the HNF pivot
        columns, verified exactly."""
        residue = list(alpha)
        coeffs = []
        for row in self.basis:
            pivot_col = next(i for i, v in enumerate(row) if v)
            q, r = divmod(residue[pivot_col], row[pivot_col])
            if r:
                return None
            coeffs.append(q)
            residue = [a - q * b for a, b in zip(residue, row)]
        if any(residue):
            return None
        return coeffs

    def phase_of(self, alpha) -> Fraction | None:
        coeffs = self.express(alpha)
        if coeffs is None:
            return None
        total = sum((c * p for c, p in zip(coeffs, self.phases)), Fraction(0))
        return _parse_phase(total)

    def contains(self, other: "Layer") -> bool:
        """Point-set containment (other inside self): every basis row of
        self must lie in other's lattice with the matching phase."""
        for row, ph in zip(self.basis, self.phases):
            if other.phase_of(row) != ph:
                return False
        return True

    def __repr__(self):
        return f"Layer({self.layer_id})"


def ambient_layer(n: int) -> Layer:
    return Layer(n, (), ())


def _canonical_layer(n, gen_rows, gen_phases) -> Layer:
    """Re-express a (saturated-lattice, phases-on-generators) pair on the
    canonical HNF basis."""
    sat = saturate([list(r) for r in gen_rows])
    helper = Layer(n, tuple(tuple(r) for r in gen_rows), tuple(gen_phases))
    phases = []
    for row in sat:
        ph = helper.phase_of(row)
        assert ph is not None, "canonical basis row outside generated lattice"
        phases.append(ph)
    return Layer(n, tuple(tuple(r) for r in sat), tuple(phases))


def intersect_layer(layer: Layer, c: Character) -> list[Layer]:
    """All layers of the intersection with one hypersurface.

    If alpha already lies in the layer's lattice the constraint is either
    redundant (one layer) or contradictory (none).  Otherwise the lattice
    grows by alpha and the phase assignment extends to the saturation in
    exactly [saturation : lattice + Z alpha] ways, enumerated via the Smith
    normal form.
    """
    if len(c.alpha) != layer.n:
        raise DimensionMismatch(f"character in rank {len(c.alpha)}, layer in {layer.n}")
    known = layer.phase_of(c.alpha)
    if known is not None:
        return [layer] if known == c.phase else []

    gen_rows = [list(r) for r in layer.basis] + [list(c.alpha)]
    gen_phases = list(layer.phases) + [c.phase]
    sat = saturate(gen_rows)
    # express the generators over the saturated basis: C * sat = gen_rows
    sat_layer = Layer(layer.n, tuple(tuple(r) for r in sat),
                      tuple(Fraction(0) for _ in sat))
    cmat = []
    for row in gen_rows:
        coeffs = sat_layer.express(row)
        assert coeffs is not None
        cmat.append(coeffs)
    d, u, v = snf(cmat)
    k = len(sat)
    # solve C * phi = gen_phases over Q/Z: w = V^{-1} phi, D w = U * gen_phases
    rhs = []
    for i in range(len(cmat)):
        rhs.append(sum((u[i][j] * gen_phases[j] for j in range(len(gen_phases))),
                       Fraction(0)))
    choice_sets = []
    for i in range(k):
        di = d[i][i] if i < len(d) else 0
        assert di != 0, "saturated system must have full column rank"
        base = rhs[i] / di
        choice_sets.append([_parse_phase(base + Fraction(j, di)) for j in range(di)])
    for i in range(k, len(cmat)):
        assert rhs[i] == rhs[i].numerator // rhs[i].denominator, \
            "inconsistent extension system"
    out = []
    for combo in itertools.product(*choice_sets):
        # phi = V w
        phi = [sum((Fraction(v[i][j]) * combo[j] for j in range(k)), Fraction(0))
               for i in range(k)]
        phases = tuple(_parse_phase(p) for p in phi)
        out.append(Layer(layer.n, tuple(tuple(r) for r in sat), phases))
    return sorted(out, key=lambda L: L.layer_id)


# --- arrangements ----------------------------------------------------------------------

class ToricArrangement:
    """A finite set of hypersurfaces in the n-torus, given by primitive
    characters with rational phases; duplicates (up to simultaneous sign
    change) are rejected."""

    __slots__ = ("n", "characters")

    def __init__(self, n: int, characters):
        self.n = n
        chars = []
        seen = set()
        for c in characters:
            if not isinstance(c, Character):
                c = Character(tuple(c[0]), Fraction(c[1]))
            if len(c.alpha) != n:
                raise DimensionMismatch(
                    f"character {c.label} does not live in rank {n}")
            key = c.canonical_key()
            if key in seen:
                raise MschemeError(f"duplicate hypersurface {c.label}")
            seen.add(key)
            chars.append(c)
        self.characters = tuple(chars)

    def __repr__(self):
        return f"ToricArrangement(n={self.n}, {len(self.characters)} characters)"


class LayersResult:
    """Poset of layers with its certificate and simple scheme, plus the
    dictionaries linking layer ids, Layer values, poset elements and scheme
    elements."""

    __slots__ = ("geometric", "scheme", "layers", "atom_of", "scheme_element_of")

    def __init__(self, geometric, scheme, layers, atom_of, scheme_element_of):
        self.geometric = geometric
        self.scheme = scheme
        self.layers = layers
        self.atom_of = atom_of
        self.scheme_element_of = scheme_element_of


def layers_poset(arr: ToricArrangement, atom_cap: int | None = None) -> LayersResult:
    """Breadth-first closure of the ambient layer under intersection with
    every hypersurface, ordered by reverse inclusion, certified geometric,
    with the simple scheme attached."""
    start = ambient_layer(arr.n)
    layers = {start.layer_id: start}
    frontier = [start]
    while frontier:
        new = []
        for layer in frontier:
            for c in arr.characters:
                for piece in intersect_layer(layer, c):
                    if piece.layer_id not in layers:
                        layers[piece.layer_id] = piece
                        new.append(piece)
        frontier = sorted(new, key=lambda L: L.layer_id)

    ordered = sorted(layers.values(), key=lambda L: (L.rank, L.layer_id))
    ids = [L.layer_id for L in ordered]
    leq = {}
    for a in ordered:
        for b in ordered:
            leq[(a.layer_id, b.layer_id)] = a.contains(b)
    covers = []
    for a in ids:
        for b in ids:
            if a != b and leq[(a, b)]:
                if not any(c != a and c != b and leq[(a, c)] and leq[(c, b)]
                           for c in ids):
                    covers.append((a, b))
    rp = compute_rank(build_poset(ids, covers))
    for L in ordered:
        assert rp.rank[L.layer_id] == L.rank, "poset rank differs from lattice rank"
    kwargs = {} if atom_cap is None else {"atom_cap": atom_cap}
    gp = validate_geometric(rp, **kwargs)
    scheme = scheme_from_geometric(gp)

    atom_of = {}
    for c in arr.characters:
        pieces = intersect_layer(start, c)
        assert len(pieces) == 1, "a primitive hypersurface is a single layer"
        atom_of[c.canonical_key()] = pieces[0].layer_id
    atoms_below = {}
    p = rp.poset
    for L in ordered:
        atoms_below[L.layer_id] = [a for a in rp.atoms() if p.leq(a, L.layer_id)]
    scheme_element_of = {
        L.layer_id: pair_id(atoms_below[L.layer_id], L.layer_id) for L in ordered}
    return LayersResult(gp, scheme, dict(zip(ids, ordered)), atom_of,
                        scheme_element_of)


def arr_delete(arr: ToricArrangement, c: Character) -> ToricArrangement:
    key = c.canonical_key()
    kept = [x for x in arr.characters if x.canonical_key() != key]
    if len(kept) == len(arr.characters):
        raise NotInArrangement(f"{c.label} is not a hypersurface of the arrangement")
    return ToricArrangement(arr.n, kept)


def _unimodular_inverse(mat: list[list[int]]) -> list[list[int]]:
    """Exact inverse of a unimodular integer matrix (Gauss over fractions,
    result converted back to ints)."""
    size = len(mat)
    a = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(size)]
         for i, row in enumerate(mat)]
    for col in range(size):
        piv = next(r for r in range(col, size) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        scale = a[col][col]
        a[col] = [x / scale for x in a[col]]
        for r in range(size):
            if r != col and a[r][col]:
                factor = a[r][col]
                a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
    inv = [[x for x in row[size:]] for row in a]
    out = [[int(x) for x in row] for row in inv]
    assert all(Fraction(o) == x for row_o, row_x in zip(out, inv)
               for o, x in zip(row_o, row_x)), "inverse is not integral"
    return out


def arr_restrict(arr: ToricArrangement, c: Character) -> ToricArrangement:
    """Change coordinates so the chosen hypersurface becomes the ambient
    torus: complete alpha to a unimodular basis, translate the phases of the
    other characters, and split non-primitive images into their connected
    components (merging coincident ones)."""
    key = c.canonical_key()
    if all(x.canonical_key() != key for x in arr.characters):
        raise NotInArrangement(f"{c.label} is not a hypersurface of the arrangement")
    # U * alpha^T = e1 => basis matrix W = (U^{-1})^T has first row alpha
    _, u = hnf([[a] for a in c.alpha])
    w = [list(col) for col in zip(*_unimodular_inverse(u))]
    assert w[0] == list(c.alpha), "unimodular completion lost the character"
    u_t = [list(col) for col in zip(*u)]

    chars = {}
    for other in arr.characters:
        if other.canonical_key() == key:
            continue
        coords = [sum(b * u_t[i][j] for i, b in enumerate(other.alpha))
                  for j in range(arr.n)]
        c0, beta_rest = coords[0], coords[1:]
        phase = _parse_phase(other.phase - c0 * c.phase)
        content = 0
        for b in beta_rest:
            content = gcd(content, abs(b))
        if content == 0:
            # parallel hypersurface: empty intersection with the chosen one
            # (a coincident one would be a duplicate, which is rejected)
            assert phase != 0, "duplicate hypersurface survived validation"
            continue
        gamma = tuple(b // content for b in beta_rest)
        for j in range(content):
            piece = Character(gamma, _parse_phase(Fraction(phase + j, content)))
            chars.setdefault(piece.canonical_key(), piece)
    return ToricArrangement(arr.n - 1, [chars[k] for k in sorted(chars)])


def arr_localize(arr: ToricArrangement, layer: Layer,
                 result: LayersResult | None = None) -> Matroid:
    """Linear matroid of the character vectors whose hypersurfaces contain
    the layer (for some phase)."""
    if result is None:
        result = layers_poset(arr)
    if layer.layer_id not in result.layers:
        raise NotALayer(f"{layer.layer_id} is not a layer of the arrangement")
    chosen = [c for c in arr.characters if layer.phase_of(c.alpha) == c.phase]
    matrix = [list(col) for col in zip(*[c.alpha for c in chosen])] if chosen else []
    return linear_matroid(matrix, [c.label for c in chosen])


class ThmArrReport:
    """Witness bijections for the three arrangement/scheme compatibilities:
    deletion, restriction-vs-contraction, and localization.

    The restriction witness is a scheme isomorphism whenever the contracted
    scheme is simple (``restriction_is_direct``); otherwise it is the
    layer-poset isomorphism between the restricted arrangement's layers and
    the sublayers of the chosen hypersurface, which is the part that holds
    unconditionally (two hypersurfaces can share a component inside the
    chosen one, making the contraction non-simple while the restricted
    arrangement forgets the multiplicity)."""

    __slots__ = ("deletion", "restriction", "localization",
                 "restriction_is_direct")

    def __init__(self, deletion, restriction, localization_, direct):
        self.deletion = deletion
        self.restriction = restriction
        self.localization = localization_
        self.restriction_is_direct = direct

    @property
    def ok(self) -> bool:
        return (self.deletion is not None and self.restriction is not None
                and self.localization is not None)


def verify_thm_arr(arr: ToricArrangement, c: Character, layer: Layer) -> ThmArrReport:
    """Compute both sides of each isomorphism (arrangement-level
    delete/restrict/localize against scheme-level delete/contract/localize)
    and return the witness bijections."""
    from .poset import RankedPoset, find_isomorphism

    full = layers_poset(arr)
    atom_layer = full.atom_of[c.canonical_key()]
    atom_el = full.scheme_element_of[atom_layer]

    deleted = layers_poset(arr_delete(arr, c))
    iso_del = scheme_isomorphism(deleted.scheme, delete(full.scheme, atom_el))

    restricted = layers_poset(arr_restrict(arr, c))
    contraction = contract(full.scheme, atom_el)
    iso_restr = scheme_isomorphism(restricted.scheme, contraction)
    direct = iso_restr is not None
    if not direct:
        # layer-poset comparison: sublayers of the hypersurface, re-ranked
        fp = full.geometric.ranked
        keep = [e for e in fp.elements if fp.poset.leq(atom_layer, e)]
        sub = RankedPoset(fp.poset.subposet(keep, covers_restrict=True),
                          {e: fp.rank[e] - 1 for e in keep})
        iso_restr = find_isomorphism(restricted.geometric.ranked, sub)

    if layer.layer_id not in full.layers:
        raise NotALayer(f"{layer.layer_id} is not a layer of the arrangement")
    local_arr = arr_localize(arr, layer, full)
    from .constructions import scheme_from_matroid
    local_scheme = scheme_from_matroid(local_arr)
    layer_el = full.scheme_element_of[layer.layer_id]
    iso_local = scheme_isomorphism(local_scheme, localization(full.scheme, layer_el))
    return ThmArrReport(iso_del, iso_restr, iso_local, direct)
