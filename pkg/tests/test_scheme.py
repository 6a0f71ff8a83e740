"""Scheme axioms, closure/flats, independence cryptomorphism, minors."""

import itertools

import pytest

from mscheme import (
    AxiomViolation,
    MatroidScheme,
    NotALoop,
    NotAnAtom,
    bases,
    check_derived_axioms,
    check_loop_del_contr,
    circuits,
    closure,
    contract,
    delete,
    flats,
    independence,
    is_simple,
    isthmuses,
    localization,
    loops,
    lower_bound_maxima,
    restrict,
    scheme_from_independence,
    scheme_rank,
    upper_bound_minima,
    validate_independence,
    validate_scheme,
    verify_simplicial,
    compute_rank,
    build_poset,
)


def make_scheme(elements, covers, rho):
    sp = verify_simplicial(compute_rank(build_poset(elements, covers)))
    return validate_scheme(sp, rho)


@pytest.fixture(scope="module")
def loop_scheme():
    return make_scheme(["0", "a"], [("0", "a")], {"0": 0, "a": 0})


def test_fixtures_validate(isth, cw_l, cw_r, nonpos, dow_triv, dow_nontriv):
    for m in (isth, cw_l, cw_r, nonpos, dow_triv, dow_nontriv):
        assert isinstance(m, MatroidScheme)


def test_m4_negative_control(cw_r):
    """Lowering an atom label to 0 must trip the meet-join axiom, with a
    witness that re-verifies against the raw poset."""
    rho = dict(cw_r.rho)
    rho["1"] = 0
    with pytest.raises(AxiomViolation) as exc:
        validate_scheme(cw_r.s, rho)
    assert exc.value.axiom == "M4"
    x, y, l = exc.value.witness
    p = cw_r.poset
    assert l in lower_bound_maxima(p, [x, y])
    assert rho[x] == rho[l]
    assert upper_bound_minima(p, [x, y]) == frozenset()


def test_m5_negative_control(cw_r):
    rho = dict(cw_r.rho)
    rho["12"] = 2
    with pytest.raises(AxiomViolation) as exc:
        validate_scheme(cw_r.s, rho)
    assert exc.value.axiom == "M5"
    x, y = exc.value.witness
    p = cw_r.poset
    assert rho[x] < rho[y]
    for a in cw_r.atoms():
        assert not (p.leq(a, y) and not p.leq(a, x)
                    and upper_bound_minima(p, [x, a]))


def test_m1_m2_negative_controls(isth):
    rho = dict(isth.rho)
    rho["u"] = 3
    with pytest.raises(AxiomViolation) as exc:
        validate_scheme(isth.s, rho)
    assert exc.value.axiom == "M1"
    rho = dict(isth.rho)
    rho["u"] = 0
    with pytest.raises(AxiomViolation) as exc:
        validate_scheme(isth.s, rho)
    assert exc.value.axiom in ("M2", "M4")


def test_scheme_rank(isth, nonpos, loop_scheme):
    assert scheme_rank(isth) == 2
    assert scheme_rank(nonpos) == 3
    singleton = make_scheme(["0"], [], {"0": 0})
    assert scheme_rank(singleton) == 0
    assert scheme_rank(loop_scheme) == 0


def test_localization(isth, nonpos):
    at_u = localization(isth, "u")
    assert set(at_u.elements) == {"0", "a", "b", "u"}
    assert scheme_rank(at_u) == 2 and len(at_u.atoms()) == 2
    at_bottom = localization(isth, "0")
    assert at_bottom.elements == ("0",)
    at_b1 = localization(nonpos, "b1")
    assert set(at_b1.elements) == {"0", "a1", "a2", "b1"}
    assert all(at_b1.rho[e] == at_b1.size(e) for e in at_b1.elements)


def test_closure(cw_r, nonpos):
    assert closure(cw_r, "1") == "12"
    assert closure(cw_r, "3") == "34"
    for f in flats(cw_r).elements:
        assert closure(cw_r, f) == f
    for x in nonpos.elements:  # free labels: everything closed
        assert closure(nonpos, x) == x


def test_flats(cw_l, cw_r, isth):
    assert set(flats(cw_l).elements) == {"0", "1", "2", "3", "a", "123"}
    assert set(flats(cw_r).elements) == {"0", "12", "34"}
    assert set(flats(isth).elements) == set(isth.elements)


def test_independence_bases_circuits(cw_l, isth, loop_scheme):
    assert independence(cw_l) == frozenset(cw_l.elements) - {"123"}
    assert bases(cw_l) == {"12", "13", "23", "a"}
    assert circuits(cw_l) == {"123"}
    assert bases(isth) == {"u", "v"}
    assert circuits(isth) == frozenset()
    assert circuits(loop_scheme) == {"a"}


def test_ibc_consistency(cw_l, qfix2, dow_nontriv):
    for m in (cw_l, qfix2, dow_nontriv):
        ind = independence(m)
        p = m.poset
        assert bases(m) == {x for x in ind
                            if not any(y != x and p.leq(x, y) for y in ind)}
        for c in circuits(m):
            assert m.rho[c] == m.size(c) - 1
            for y in p.down_set(c):
                if y != c:
                    assert m.rho[y] == m.size(y)


def test_independence_round_trip(cw_l, cw_r, nonpos, qfix2):
    for m in (cw_l, cw_r, nonpos, qfix2):
        rebuilt = scheme_from_independence(m.s, independence(m))
        assert rebuilt == m


def test_independence_of_trivial_set(isth):
    b2 = localization(isth, "u")  # a simplicial lattice host
    zero = scheme_from_independence(b2.s, {"0"})
    assert all(zero.rho[e] == 0 for e in zero.elements)


def test_independence_i4_violation(nonpos):
    # dropping one top leaves its bases below the other top
    ind = set(nonpos.elements) - {"v"}
    with pytest.raises(AxiomViolation) as exc:
        validate_independence(nonpos.s, ind)
    assert exc.value.axiom in ("I3", "I4")


def test_independence_i2_violation(isth):
    with pytest.raises(AxiomViolation) as exc:
        validate_independence(isth.s, {"0", "u"})
    assert exc.value.axiom == "I2"


def test_derived_axioms_pass(isth, cw_l, cw_r, nonpos, qfix, qfix2):
    for m in (isth, cw_l, cw_r, nonpos, qfix, qfix2):
        assert check_derived_axioms(m).ok


def test_derived_axioms_catch_corruption(isth):
    """A deliberately corrupted label must produce a failing report."""
    broken = MatroidScheme(isth.s, dict(isth.rho), _checked=True)
    broken.rho["u"] = 1
    report = check_derived_axioms(broken)
    assert not report.ok


def test_loops_and_isthmuses(isth, nonpos, loop_scheme):
    assert loops(isth) == frozenset() and isthmuses(isth) == {"a", "b"}
    assert loops(loop_scheme) == {"a"}
    assert loops(nonpos) == frozenset()
    # every atom of the two-top rank-3 fixture lies below both bases
    assert isthmuses(nonpos) == {"a1", "a2", "a3"}


def test_is_simple(cw_l, cw_r):
    assert is_simple(cw_l)
    assert not is_simple(cw_r)
    singleton = make_scheme(["0"], [], {"0": 0})
    assert is_simple(singleton)


def test_delete(isth, nonpos, loop_scheme):
    d = delete(isth, "a")
    assert d.elements == ("0", "b") and scheme_rank(d) == 1
    assert delete(loop_scheme, "a").elements == ("0",)
    d2 = delete(nonpos, "a1")
    assert len(d2.elements) == 5 and scheme_rank(d2) == 2
    with pytest.raises(NotAnAtom):
        delete(isth, "u")


def test_contract(isth, nonpos):
    c = contract(isth, "a")
    assert set(c.elements) == {"a", "u", "v"}
    assert [c.rho[e] for e in c.elements] == [0, 1, 1]
    assert contract(isth, "0") == isth
    c2 = contract(nonpos, "b1")
    assert set(c2.elements) == {"b1", "u"}
    assert [c2.rho[e] for e in sorted(c2.elements)] == [0, 1]
    from mscheme import UnknownIdentifier
    with pytest.raises(UnknownIdentifier):
        contract(isth, "zz")
    with pytest.raises(UnknownIdentifier):
        localization(isth, "zz")


def test_contraction_can_leave_the_class(nonpos):
    """Contracting by an atom of the two-top fixture breaks the
    atom-exchange axiom: the up-set splits into two fans with no common
    upper bounds."""
    c = contract(nonpos, "a1")
    with pytest.raises(AxiomViolation) as exc:
        validate_scheme(c.s, c.rho)
    assert exc.value.axiom == "M5"


def test_restrict(isth, nonpos):
    r = restrict(isth, ["a"])
    assert r.elements == ("0", "a")
    assert restrict(isth, isth.atoms()) == isth
    r2 = restrict(nonpos, ["a1", "a2"])
    assert set(r2.elements) == {"0", "a1", "a2", "b1", "c1"}
    assert sorted(r2.rho[e] for e in r2.elements) == [0, 1, 1, 2, 2]
    with pytest.raises(NotAnAtom):
        restrict(isth, ["zz"])


def test_delete_commutes(cw_l, dow_nontriv):
    for m in (cw_l, dow_nontriv):
        for a, b in itertools.combinations(m.atoms(), 2):
            assert delete(delete(m, a), b) == delete(delete(m, b), a)


def test_check_loop_del_contr(loop_scheme, qfix2, isth):
    phi = check_loop_del_contr(loop_scheme, "a")
    assert phi == {"a": "0"}
    lp = next(iter(loops(qfix2)))
    phi2 = check_loop_del_contr(qfix2, lp)
    assert len(phi2) == len(qfix2.elements) // 2
    with pytest.raises(NotALoop):
        check_loop_del_contr(isth, "a")
    # and indeed the deletion and contraction by the isthmus differ
    from mscheme import scheme_isomorphism
    assert scheme_isomorphism(delete(isth, "a"), contract(isth, "a")) is None
