"""Integrable highest-weight modules: closure, dimensions, nilpotency
thresholds, relation matrix identities, coinvariants, and the root-of-unity
alcove variant."""

from fractions import Fraction

import pytest

from mpqg.cartan import CartanDatum, LatticeVector, ParamMatrix, simple_root, weyl_dim
from mpqg.cotensor import Word
from mpqg.modules import (ClosureError, UndecidedReductionError, alcove_check,
                          build_module, coinvariant_project,
                          is_right_coinvariant, root_of_unity_module,
                          weight_denominator)
from mpqg.realization import e, f


A1 = CartanDatum.preset("A1")
A2 = CartanDatum.preset("A2")
B2 = CartanDatum.preset("B2")


def a1_module(m, mode="symbolic"):
    lam = LatticeVector((Fraction(m, 2),))
    if mode == "symbolic":
        pm = ParamMatrix.symbolic(A1)
    else:
        # entries are perfect powers matching the weight's coordinate
        # denominators, so every fractional pairing resolves exactly
        pm = ParamMatrix.numeric(A1, {(0, 0): Fraction(2) ** weight_denominator(lam)})
    return build_module(A1, pm, lam)


def a2_module(coords, mode="symbolic"):
    lam = LatticeVector(tuple(Fraction(c) for c in coords))
    if mode == "symbolic":
        pm = ParamMatrix.symbolic(A2)
    else:
        pm = ParamMatrix.numeric(
            A2, {(0, 0): Fraction(4), (1, 1): Fraction(4), (0, 1): Fraction(3)})
    return build_module(A2, pm, lam)


def b2_module(coords, mode="symbolic"):
    lam = LatticeVector(tuple(Fraction(c) for c in coords))
    if mode == "symbolic":
        pm = ParamMatrix.symbolic(B2)
    else:
        pm = ParamMatrix.numeric(
            B2, {(0, 0): Fraction(9), (1, 1): Fraction(3), (0, 1): Fraction(5)})
    return build_module(B2, pm, lam)


# -- input validation ---------------------------------------------------------------


def test_rejects_non_dominant_or_non_integral_weights():
    pm = ParamMatrix.symbolic(A2)
    with pytest.raises(ValueError, match="dominant"):
        build_module(A2, pm, LatticeVector((Fraction(1), Fraction(0))))
    pm1 = ParamMatrix.symbolic(A1)
    with pytest.raises(ValueError, match="dominant"):
        build_module(A1, pm1, LatticeVector((Fraction(1, 3),)))


def test_weight_denominator():
    assert weight_denominator(LatticeVector((Fraction(2),))) == 1
    assert weight_denominator(LatticeVector((Fraction(5, 2),))) == 4
    assert weight_denominator(LatticeVector((Fraction(2, 3), Fraction(1, 3)))) == 9


# -- highest-weight vector ----------------------------------------------------------


def test_highest_vector_axioms():
    mod = a2_module((1, 1))
    alg, pm, g = mod.alg, mod.params, mod.alg.group
    v = mod.highest_vector
    lam = mod.lam
    for i in range(2):
        assert mod.act_raise(i, v).is_zero
        ai = simple_root(A2, i)
        assert mod._act_atom(("w", i, 1), v) == v.scale(pm.q_pairing(ai, lam))
        assert mod._act_atom(("wp", i, 1), v) == \
            v.scale(pm.q_pairing(lam, ai) ** -1)
    assert mod.vector_weight(v) == lam
    # coproduct of the highest-weight word: grading part plus bare-word part
    vw = Word((("V",),), g.identity)
    kl = Word((), g.basis(("KL",)))
    unit_w = Word((), g.identity)
    assert alg.coproduct(v) == {(kl, vw): alg.one, (vw, unit_w): alg.one}
    # torus characters carried by the letters
    vchar = alg.letters[("V",)].char
    assert vchar(g.basis(("KL",))) == pm.q_pairing(lam, lam)
    for i in range(2):
        ai = simple_root(A2, i)
        assert vchar(g.basis(("K", i))) == pm.q_pairing(ai, lam)
        assert vchar(g.basis(("Kp", i))) == pm.q_pairing(lam, ai) ** -1
        assert alg.letters[("E", i)].char(g.basis(("KL",))) == \
            pm.q_pairing(ai, lam) ** -1
        assert alg.letters[("F", i)].char(g.basis(("KL",))) == \
            pm.q_pairing(ai, lam)


def test_first_lowering_matches_hand_value():
    mod = a2_module((1, 1))
    alg, pm = mod.alg, mod.params
    for i in range(2):
        ai = simple_root(A2, i)
        coeff = pm.q_pairing(mod.lam, ai) ** -1 - pm.q_pairing(ai, mod.lam)
        want = alg.element({alg.word([("F", i), ("V",)]): coeff})
        assert mod.act_lower(i, mod.highest_vector) == want
        assert mod.lowering_closed_form(i, 1) == want


def test_lowering_closed_form_and_threshold():
    mod = a1_module(3)
    vec = mod.highest_vector
    for r in range(5):
        assert vec == mod.lowering_closed_form(0, r), f"r={r}"
        vec = mod.act_lower(0, vec)
    assert mod.nilpotency_threshold(0) == 4
    # the weight-compatibility constraint forces the telescoping factor to
    # vanish exactly at the threshold, identically in the parameters
    short = a1_module(1)
    assert not short.lowering_closed_form(0, 1).is_zero
    assert short.lowering_closed_form(0, 2).is_zero
    assert short.nilpotency_threshold(0) == 2


# -- dimensions against the independent oracle ---------------------------------------


def test_dimensions_a1_family():
    for m in range(4):
        mod = a1_module(m)
        lam = LatticeVector((Fraction(m, 2),))
        assert mod.dimension == m + 1 == weyl_dim(A1, lam)
        assert mod.nilpotency_threshold(0) == m + 1
    for m in (4, 5):
        mod = a1_module(m, "numeric")
        assert mod.dimension == m + 1
        assert mod.nilpotency_threshold(0) == m + 1


def test_dimensions_a2():
    lam = LatticeVector((Fraction(2, 3), Fraction(1, 3)))
    mod = a2_module((Fraction(2, 3), Fraction(1, 3)))
    assert mod.dimension == 3 == weyl_dim(A2, lam)
    a0, a1_ = simple_root(A2, 0), simple_root(A2, 1)
    assert set(mod.weights) == {lam, lam - a0, lam - a0 - a1_}
    adj = a2_module((1, 1))
    assert adj.dimension == 8 == weyl_dim(A2, LatticeVector((Fraction(1), Fraction(1))))
    assert [d for _, d in adj.weight_dims()] == [1, 1, 1, 2, 1, 1, 1]
    assert adj.nilpotency_threshold(0) == adj.nilpotency_threshold(1) == 2


def test_dimensions_b2():
    lam = LatticeVector((Fraction(1), Fraction(1)))
    mod = b2_module((1, 1))
    assert mod.dimension == 5 == weyl_dim(B2, lam)
    assert [d for _, d in mod.weight_dims()] == [1, 1, 1, 1, 1]
    assert (mod.nilpotency_threshold(0), mod.nilpotency_threshold(1)) == (2, 1)


# -- defining relations as matrix identities ------------------------------------------


@pytest.mark.parametrize("factory,args,mode", [
    (a1_module, (2,), "symbolic"),
    (a2_module, ((Fraction(2, 3), Fraction(1, 3)),), "symbolic"),
    (a2_module, ((1, 1),), "numeric"),
    (b2_module, ((1, 1),), "numeric"),
])
def test_relation_matrix_identities(factory, args, mode):
    mod = factory(*args, mode)
    report = mod.relation_matrix_report()
    bad = [rid for rid, ok in report.items() if not ok]
    assert not bad, f"relations failing as matrix identities: {bad}"
    assert mod.closure_certified


def test_relation_check_detects_wrong_coefficients():
    mod = a2_module((Fraction(2, 3), Fraction(1, 3)))
    # sabotage: drop the torus compensation from the commutator relation
    parts = mod._operator_parts(("R5", 0, 0))
    broken = [parts[0][:2]]
    found = False
    for mu in mod.weights:
        total = None
        for mono, coeff in broken[0]:
            _, m = mod._mono_matrix(mono, mu)
            if m is not None:
                sm = m.scale(mod.alg.coerce(coeff))
                total = sm if total is None else total + sm
        if total is not None and not total.is_zero():
            found = True
    assert found


# -- action matrices ------------------------------------------------------------------


def test_action_matrices_a1():
    mod = a1_module(1)
    lam = mod.lam
    a0 = simple_root(A1, 0)
    lows = mod.lowering_matrices()
    ups = mod.raising_matrices()
    assert set(lows) == {(0, lam)} and set(ups) == {(0, lam - a0)}
    mf, me = lows[(0, lam)], ups[(0, lam - a0)]
    assert (mf.nrows, mf.ncols) == (1, 1) and (me.nrows, me.ncols) == (1, 1)
    # on the highest vector the commutator reduces to the torus part
    pm = mod.params
    c = pm.entry(0, 0) / (pm.entry(0, 0) - pm.one)
    want = c * (pm.q_pairing(a0, lam) - pm.q_pairing(lam, a0) ** -1)
    assert (me * mf).rows[0][0] == want


def test_torus_matrices_are_diagonal():
    mod = a2_module((Fraction(2, 3), Fraction(1, 3)))
    for mu in mod.weights:
        d = len(mod.basis(mu))
        for i in range(2):
            for atom, primed in ((("w", i, 1), False), (("wp", i, 1), True)):
                _, m = mod._atom_matrix(atom, mu)
                ev = mod.torus_eigenvalue(i, mu, primed=primed)
                for r in range(d):
                    for s in range(d):
                        want = ev if r == s else mod.alg.zero
                        assert m.rows[r][s] == want


# -- composing atom actions agrees with the one-shot adjoint --------------------------


def test_adjoint_act_matches_wholesale_adjoint():
    mod = a2_module((Fraction(2, 3), Fraction(1, 3)))
    real = mod.real
    exprs = [e(0) * f(0) - f(0) * e(0), f(1) * f(0), e(1) * f(1) * f(0)]
    vecs = [mod.highest_vector, mod.act_lower(0, mod.highest_vector)]
    for expr in exprs:
        for vec in vecs:
            stepwise = mod.adjoint_act(expr, vec)
            whole = real.ad_left(real.psi(expr), vec)
            whole, ok = mod.table.normal_form(whole)
            assert ok
            assert stepwise == whole


# -- coinvariants of the degree-zero projection ---------------------------------------


def test_coinvariant_projection():
    mod = a2_module((1, 1))
    alg, g = mod.alg, mod.alg.group
    v = mod.highest_vector
    # group-likes project to the unit
    x = alg.group_like(g.basis(("K", 0)))
    assert coinvariant_project(alg, x) == alg.unit()
    # the highest-weight word is already right coinvariant and fixed
    assert is_right_coinvariant(alg, v)
    assert coinvariant_project(alg, v) == v
    # a twisted tail is not coinvariant; projection strips the tail
    tw = alg.element({Word((("V",),), g.basis(("KL",))): alg.one})
    assert not is_right_coinvariant(alg, tw)
    proj = coinvariant_project(alg, tw)
    assert proj == v
    # idempotence on a mixed sample
    sample = v + alg.unit().scale(alg.one + alg.one) + tw
    once = coinvariant_project(alg, sample)
    assert is_right_coinvariant(alg, once)
    assert coinvariant_project(alg, once) == once


def test_module_vectors_are_coinvariant():
    mod = a2_module((Fraction(2, 3), Fraction(1, 3)))
    for mu in mod.weights:
        for b in mod.basis(mu):
            assert is_right_coinvariant(mod.alg, b)
            assert coinvariant_project(mod.alg, b) == b


# -- alcove test and root-of-unity modules --------------------------------------------


def test_alcove_check():
    for m in range(4):
        assert alcove_check(A1, LatticeVector((Fraction(m, 2),)), 5)
    assert not alcove_check(A1, LatticeVector((Fraction(2),)), 5)
    with pytest.raises(ValueError, match="odd"):
        alcove_check(A1, LatticeVector((Fraction(1, 2),)), 4)
    g2 = CartanDatum.preset("G2")
    with pytest.raises(ValueError, match="triple bond"):
        alcove_check(g2, LatticeVector((Fraction(1), Fraction(0))), 9)
    aff = CartanDatum(((2, -2), (-2, 2)), (1, 1))
    with pytest.raises(ValueError, match="finite"):
        alcove_check(aff, LatticeVector((Fraction(0), Fraction(0))), 5)
    with pytest.raises(ValueError, match="indecomposable"):
        alcove_check(CartanDatum.preset("A1xA1"),
                     LatticeVector((Fraction(0), Fraction(0))), 5)
    with pytest.raises(ValueError, match="dominant"):
        alcove_check(A2, LatticeVector((Fraction(1), Fraction(0))), 5)


def test_root_of_unity_modules():
    for m in range(4):
        mod = root_of_unity_module(A1, LatticeVector((Fraction(m, 2),)), 5)
        assert mod.params.mode == "root_of_unity"
        assert mod.dimension == m + 1
        report = mod.relation_matrix_report()
        assert all(report.values()), report
    with pytest.raises(ValueError, match="alcove"):
        root_of_unity_module(A1, LatticeVector((Fraction(2),)), 5)


# -- guard rails ----------------------------------------------------------------------


def test_closure_depth_guard():
    pm = ParamMatrix.symbolic(A1)
    with pytest.raises(ClosureError, match="pending"):
        build_module(A1, pm, LatticeVector((Fraction(3, 2),)), max_depth=2)


def test_non_finite_type_needs_explicit_depth():
    aff = CartanDatum(((2, -2), (-2, 2)), (1, 1))
    pm = ParamMatrix.symbolic(aff)
    lam = LatticeVector((Fraction(1), Fraction(1)))  # level zero: trivial
    with pytest.raises(ValueError, match="depth"):
        build_module(aff, pm, lam)
    mod = build_module(aff, pm, lam, max_depth=3)
    assert mod.dimension == 1


def test_undecided_reduction_is_an_error_not_a_wrong_answer():
    mod = a2_module((1, 1))
    tight = build_module(A2, ParamMatrix.symbolic(A2), mod.lam, bound=2)
    deep = None
    for mu in tight.weights:
        if (tight.lam - mu).height() == 2:
            deep = tight.basis(mu)[0]
    assert deep is not None
    with pytest.raises(UndecidedReductionError):
        tight.act_raise(0, deep)


def test_report_shape():
    mod = a1_module(1)
    rep = mod.report()
    assert rep["dimension"] == 2
    assert rep["nilpotency"] == {"0": 2}
    assert rep["closure_certified"] is True
    assert all(rep["relations"].values())
    assert [row["dim"] for row in rep["weight_spaces"]] == [1, 1]
