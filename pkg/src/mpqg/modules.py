"""Integrable irreducible highest-weight modules carved out of the cotensor
machinery enlarged by a highest-weight letter.

Construction: breadth-first lowering closure from the highest-weight word,
with exact Gauss--Jordan elimination per weight space.  Raising actions use
the quasi-symmetric product and antipode and are then reduced to
contraction-free representatives.  Weights are tracked by letter
bookkeeping -- every lowering step subtracts one simple root -- which stays
valid in every parameter mode, including roots of unity where distinct
weights may share torus eigenvalues.  The defining relations can be
re-verified as exact matrix identities on every weight space, and the total
dimension is meant to be compared against the Weyl-dimension oracle by
callers.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from .cartan import (LatticeVector, ParamMatrix, coweight_pairing,
                     positive_roots, rho, simple_root)
from .linalg import Matrix
from .realization import (IdealReducer, NormalFormTable, Realization,
                          has_contraction)
from .scalars import q_factorial


def render_weight(mu) -> str:
    return "(" + ", ".join(str(c) for c in mu.coords) + ")"


def _word_key(w):
    return (len(w.letters), w.letters, w.tail)


class UndecidedReductionError(RuntimeError):
    """An adjoint image could not be certified reduced at the given bound."""

    def __init__(self, status, bound):
        super().__init__(
            f"ideal reduction returned {status!r} at word-length bound {bound}")
        self.status = status
        self.bound = bound


class ClosureError(RuntimeError):
    """Lowering closure did not stabilize within the depth cutoff."""

    def __init__(self, depth, pending):
        names = ", ".join(render_weight(mu) for mu in pending)
        super().__init__(
            f"lowering closure still open at depth {depth}; pending weight "
            f"spaces: {names}")
        self.depth = depth
        self.pending = tuple(pending)


def weight_denominator(lam) -> int:
    """Least D with every pairwise product of root coordinates of the weight
    in (1/D)Z -- the ambient refinement a root-of-unity parameter matrix
    needs so that all torus characters the weight letter introduces stay
    exact."""
    out = 1
    coords = [Fraction(c) for c in lam.coords]
    for x in coords:
        out = lcm(out, x.denominator)
        for y in coords:
            out = lcm(out, (x * y).denominator)
    return out


class ModuleSetup:
    """Validated input bundle for one module build: a dominant integral
    weight, the parameter matrix, and the closure/reduction cutoffs."""

    def __init__(self, datum, params, lam, *, max_depth=None, bound=None):
        self.datum = datum
        self.params = params
        self.lam = lam
        marks = []
        for i in range(datum.n):
            m = coweight_pairing(datum, lam, simple_root(datum, i))
            if m.denominator != 1 or m < 0:
                raise ValueError(
                    f"weight is not dominant integral: pairing with coroot "
                    f"{i} is {m}")
            marks.append(int(m))
        self.marks = tuple(marks)
        if max_depth is None:
            if not datum.is_finite_type():
                raise ValueError(
                    "an explicit depth cutoff is required outside finite type")
            # All module weights lie in the convex hull of the Weyl orbit,
            # so the lowering depth never exceeds the height of twice the
            # highest weight.
            max_depth = 2 * int(sum(Fraction(c) for c in lam.coords)) + 2
        self.max_depth = int(max_depth)
        if bound is None:
            # Module words hold at most max_depth lowering letters plus the
            # weight letter; reduction never lengthens them.
            bound = self.max_depth + 2
        self.bound = int(bound)


class _Span:
    """Incrementally Gauss--Jordan-reduced span of machinery elements."""

    def __init__(self, alg):
        self.alg = alg
        self.rows = []  # (pivot word, element with coefficient 1 there)

    def reduce(self, vec):
        for pw, row in self.rows:
            c = vec.terms.get(pw)
            if c:
                vec = vec - row.scale(c)
        return vec

    def add(self, vec):
        """True when vec was independent of the span (it is now inside)."""
        vec = self.reduce(vec)
        if vec.is_zero:
            return False
        pw = min(vec.terms, key=_word_key)
        vec = vec.scale(self.alg.one / vec.terms[pw])
        rows = []
        for qw, row in self.rows:
            c = row.terms.get(pw)
            rows.append((qw, row - vec.scale(c)) if c else (qw, row))
        rows.append((pw, vec))
        self.rows = rows
        return True


class HighestWeightModule:
    """Lowering closure of the highest-weight word, with exact weight-space
    bases and adjoint actions of all presented generators."""

    def __init__(self, setup: ModuleSetup):
        self.setup = setup
        self.datum = setup.datum
        self.params = setup.params
        self.lam = setup.lam
        self.real = Realization(setup.datum, setup.params, setup.lam)
        self.alg = self.real.alg
        self.reducer = IdealReducer(self.real)
        self.table = NormalFormTable(self.reducer, bound=setup.bound)
        self.highest_vector = self.alg.V()
        self._mat_cache = {}
        self._spans = {}
        self._build()

    # -- closure -----------------------------------------------------------------

    def _weight_key(self, mu):
        return ((self.lam - mu).height(), tuple(mu.coords))

    def _build(self):
        datum = self.datum
        span = self._spans.setdefault(self.lam, _Span(self.alg))
        span.add(self.highest_vector)
        frontier = [(self.lam, self.highest_vector)]
        depth = 0
        while frontier:
            if depth >= self.setup.max_depth:
                pending = sorted({mu for mu, _ in frontier},
                                 key=self._weight_key)
                raise ClosureError(depth, pending)
            nxt = []
            for mu, vec in frontier:
                for i in range(datum.n):
                    img = self.act_lower(i, vec)
                    if img.is_zero:
                        continue
                    nu = mu - simple_root(datum, i)
                    spn = self._spans.setdefault(nu, _Span(self.alg))
                    if spn.add(img):
                        nxt.append((nu, img))
            frontier = nxt
            depth += 1
        self.weights = sorted(
            (mu for mu, s in self._spans.items() if s.rows),
            key=self._weight_key)
        self.closure_certified = self._certify()

    def _certify(self):
        """All lowering images of all basis vectors lie in the computed
        span (the explicit closure certificate)."""
        for mu in self.weights:
            for vec in self.basis(mu):
                for i in range(self.datum.n):
                    img = self.act_lower(i, vec)
                    if img.is_zero:
                        continue
                    spn = self._spans.get(mu - simple_root(self.datum, i))
                    if spn is None or not spn.reduce(img).is_zero:
                        return False
        return True

    # -- table access ------------------------------------------------------------

    def basis(self, mu):
        spn = self._spans.get(mu)
        return [row for _pw, row in spn.rows] if spn else []

    def weight_dims(self):
        return [(mu, len(self.basis(mu))) for mu in self.weights]

    @property
    def dimension(self):
        return sum(d for _mu, d in self.weight_dims())

    def coords_at(self, mu, vec):
        """Coordinates of vec in the weight-mu basis; None when outside."""
        spn = self._spans.get(mu)
        if spn is None:
            return [] if vec.is_zero else None
        coeffs = [self.alg.zero] * len(spn.rows)
        rest = vec
        for t, (pw, row) in enumerate(spn.rows):
            c = rest.terms.get(pw)
            if c:
                coeffs[t] = c
                rest = rest - row.scale(c)
        if not rest.is_zero:
            return None
        return coeffs

    def vector_weight(self, vec):
        wts = {self.alg.weight_of_word(w) for w in vec.terms}
        if len(wts) != 1:
            raise ValueError("vector is not weight-homogeneous")
        return LatticeVector(wts.pop())

    # -- adjoint actions -----------------------------------------------------------

    def _reduced(self, x):
        if any(has_contraction(w) for w in x.terms):
            x, ok = self.table.normal_form(x)
            if not ok:
                raise UndecidedReductionError("undecided", self.setup.bound)
        for w in x.terms:
            if sum(1 for t in w.letters if t[0] == "V") != 1:
                raise ValueError(
                    "module vector lost weight-letter homogeneity: "
                    + self.alg.render_word(w))
        return x

    def _act_atom(self, atom, vec):
        return self._reduced(self.real.ad_left(self.real._atom_elt(atom), vec))

    def act_lower(self, i, vec):
        return self._act_atom(("f", i), vec)

    def act_raise(self, i, vec):
        return self._act_atom(("e", i), vec)

    def _apply_terms(self, pairs, vec):
        out = self.alg.zero_element()
        for mono, coeff in pairs:
            acc = vec
            for atom in reversed(mono):
                acc = self._act_atom(atom, acc)
                if acc.is_zero:
                    break
            out = out + acc.scale(self.alg.coerce(coeff))
        return out

    def adjoint_act(self, expr, vec):
        """Action of a presented-generator polynomial by iterated adjoint
        steps (one reduction per generator application)."""
        return self._apply_terms(expr.terms.items(), vec)

    # -- closed forms -------------------------------------------------------------

    def lowering_closed_form(self, i, r):
        """The r-th lowering power of the highest-weight word: factorial at
        the inverse diagonal parameter times a telescoping product of weight
        factors on a single chain word."""
        pm = self.params
        alg = self.alg
        qii = pm.entry(i, i)
        qla = pm.q_pairing(self.lam, simple_root(self.datum, i))
        qal = pm.q_pairing(simple_root(self.datum, i), self.lam)
        coeff = q_factorial(r, qii ** -1)
        for k in range(1, r + 1):
            coeff = coeff * (qii ** (k - 1) * qla ** -1 - qal)
        word = alg.word([("F", i)] * r + [("V",)])
        return alg.element({word: alg.coerce(coeff)})

    def nilpotency_threshold(self, i):
        """First r with the r-th lowering power of the highest vector zero."""
        vec = self.highest_vector
        r = 0
        while not vec.is_zero:
            if r > self.setup.marks[i] + 1:
                raise RuntimeError(
                    f"lowering chain at index {i} exceeded the expected "
                    f"threshold {self.setup.marks[i] + 1}")
            vec = self.act_lower(i, vec)
            r += 1
        return r

    # -- matrices -----------------------------------------------------------------

    def torus_eigenvalue(self, i, mu, primed=False):
        if primed:
            return self.params.q_pairing(mu, simple_root(self.datum, i)) ** -1
        return self.params.q_pairing(simple_root(self.datum, i), mu)

    def act_matrix(self, atom, mu):
        """Exact matrix of the atom's adjoint action out of the weight-mu
        space, columns indexed by the stored basis there."""
        shift = {"e": 1, "f": -1}.get(atom[0], 0)
        target = mu if not shift else (
            mu + simple_root(self.datum, atom[1]) if shift > 0
            else mu - simple_root(self.datum, atom[1]))
        cols = []
        for b in self.basis(mu):
            img = self._act_atom(atom, b)
            cc = self.coords_at(target, img)
            if cc is None:
                raise ValueError(
                    f"adjoint image of a weight-{render_weight(mu)} vector "
                    f"left the computed module")
            cols.append(cc)
        spn = self._spans.get(target)
        dim_t = len(spn.rows) if spn else 0
        return Matrix([[cols[s][t] for s in range(len(cols))]
                       for t in range(dim_t)])

    def raising_matrices(self):
        """(i, weight) -> matrix of the i-th raising action into the shifted
        weight space; pairs whose image space is absent are verified to act
        as zero and omitted."""
        out = {}
        for mu in self.weights:
            for i in range(self.datum.n):
                target = mu + simple_root(self.datum, i)
                if target in self.weights:
                    out[(i, mu)] = self.act_matrix(("e", i), mu)
                else:
                    for b in self.basis(mu):
                        if not self.act_raise(i, b).is_zero:
                            raise ValueError(
                                "raising image outside the weight ladder "
                                f"at {render_weight(mu)}")
        return out

    def lowering_matrices(self):
        out = {}
        for mu in self.weights:
            for i in range(self.datum.n):
                target = mu - simple_root(self.datum, i)
                if target in self.weights:
                    out[(i, mu)] = self.act_matrix(("f", i), mu)
                else:
                    for b in self.basis(mu):
                        if not self.act_lower(i, b).is_zero:
                            raise ValueError(
                                "lowering image outside the weight ladder "
                                f"at {render_weight(mu)}")
        return out

    # -- defining relations as matrix identities -------------------------------------

    def _operator_parts(self, rid):
        """Lists of (monomial, coefficient) pairs whose summed adjoint
        action must annihilate every module vector."""
        tag, i, j = rid
        pm = self.params
        one = Fraction(1)
        wi, wii = ("w", i, 1), ("w", i, -1)
        wpi, wpii = ("wp", i, 1), ("wp", i, -1)
        wj, wpj = ("w", j, 1), ("wp", j, 1)
        ei, fi = ("e", i), ("f", i)
        ej, fj = ("e", j), ("f", j)
        if tag == "R1":
            return [
                [((wi, wpj), one), ((wpj, wi), -one)],
                [((wi, wii), one), ((), -one)],
                [((wpi, wpii), one), ((), -one)],
            ]
        if tag == "R2":
            return [
                [((wi, wj), one), ((wj, wi), -one)],
                [((wpi, wpj), one), ((wpj, wpi), -one)],
            ]
        if tag == "R3":
            return [
                [((wi, ej, wii), one), ((ej,), -pm.entry(i, j))],
                [((wpi, ej, wpii), one), ((ej,), -pm.entry(j, i) ** -1)],
            ]
        if tag == "R4":
            return [
                [((wi, fj, wii), one), ((fj,), -pm.entry(i, j) ** -1)],
                [((wpi, fj, wpii), one), ((fj,), -pm.entry(j, i))],
            ]
        if tag == "R5":
            part = [((ei, fj), one), ((fj, ei), -one)]
            if i == j:
                c = pm.entry(i, i) / (pm.entry(i, i) - self.alg.one)
                part.append(((wi,), -c))
                part.append(((wpi,), c))
            return [part]
        if tag in ("R6", "R7"):
            a = self.datum.a[i][j]
            part = []
            for k, coeff in self.real.serre_coefficients(i, j):
                if tag == "R6":
                    mono = (ei,) * (1 - a - k) + (ej,) + (ei,) * k
                else:
                    mono = (fi,) * k + (fj,) + (fi,) * (1 - a - k)
                part.append((mono, coeff))
            return [part]
        raise ValueError(f"unknown relation tag {rid}")

    def _atom_shift(self, atom):
        if atom[0] == "e":
            return simple_root(self.datum, atom[1])
        if atom[0] == "f":
            return LatticeVector((0,) * self.datum.n) - \
                simple_root(self.datum, atom[1])
        return LatticeVector((0,) * self.datum.n)

    def _atom_matrix(self, atom, mu):
        """(target weight, matrix) of the atom's action out of the weight-mu
        space; a None matrix encodes the verified zero map onto an absent
        space."""
        key = (atom, mu)
        got = self._mat_cache.get(key)
        if got is None:
            target = mu + self._atom_shift(atom)
            if target in self._spans:
                got = (target, self.act_matrix(atom, mu))
            else:
                for b in self.basis(mu):
                    if not self._act_atom(atom, b).is_zero:
                        raise ValueError(
                            "adjoint image outside the weight ladder at "
                            + render_weight(mu))
                got = (target, None)
            self._mat_cache[key] = got
        return got

    def _identity_matrix(self, d):
        return Matrix([[self.alg.one if r == c else self.alg.zero
                        for c in range(d)] for r in range(d)])

    def _mono_matrix(self, mono, mu):
        """(end weight, matrix/None) of the composed monomial out of
        weight mu; atoms apply right to left."""
        end = mu
        for atom in mono:
            end = end + self._atom_shift(atom)
        if not mono:
            return end, self._identity_matrix(len(self._spans[mu].rows))
        cur = mu
        m = None
        for atom in reversed(mono):
            cur, am = self._atom_matrix(atom, cur)
            if am is None:
                return end, None
            m = am if m is None else am * m
        return end, m

    def check_matrix_relation(self, rid):
        """Whether the relation holds as a sum of composed action matrices
        vanishing on every weight space."""
        for part in self._operator_parts(rid):
            for mu in self.weights:
                total = None
                end_seen = None
                for mono, coeff in part:
                    end, m = self._mono_matrix(mono, mu)
                    if end_seen is None:
                        end_seen = end
                    elif end != end_seen:
                        raise ValueError(
                            "relation monomials shift weights inconsistently")
                    if m is None:
                        continue
                    sm = m.scale(self.alg.coerce(coeff))
                    total = sm if total is None else total + sm
                if total is not None and not total.is_zero():
                    return False
        return True

    def relation_matrix_report(self):
        return {rid: self.check_matrix_relation(rid)
                for rid in self.real.relation_ids()}

    # -- reporting ----------------------------------------------------------------

    def report(self):
        rows = [{"weight": render_weight(mu), "dim": d}
                for mu, d in self.weight_dims()]
        rel = {"%s(%d,%d)" % rid: self.check_matrix_relation(rid)
               for rid in self.real.relation_ids()}
        return {
            "dimension": self.dimension,
            "weight_spaces": rows,
            "nilpotency": {str(i): self.nilpotency_threshold(i)
                           for i in range(self.datum.n)},
            "closure_certified": self.closure_certified,
            "relations": rel,
        }


def build_module(datum, params, lam, *, max_depth=None, bound=None):
    return HighestWeightModule(
        ModuleSetup(datum, params, lam, max_depth=max_depth, bound=bound))


# -- coinvariants of the degree-zero projection ------------------------------------

def coinvariant_project(alg, x):
    """a -> sum a_(1) (incl . proj . antipode)(a_(2)), with proj the
    projection onto the length-zero (group-algebra) part.  Lands in the
    right-coinvariant subspace and is the identity there."""
    out = alg.zero_element()
    for (wa, wb), c in alg.coproduct(x).items():
        anti = alg.antipode_word(wb)
        proj = {w: cc for w, cc in anti.terms.items() if not w.letters}
        if not proj:
            continue
        out = out + alg.product(alg.element({wa: alg.one}),
                                alg.element(proj)).scale(c)
    return out


def is_right_coinvariant(alg, x):
    """Whether (id (x) proj) applied to the coproduct returns x (x) 1."""
    got = {}
    for (wa, wb), c in alg.coproduct(x).items():
        if wb.letters:
            continue
        key = (wa, wb.tail)
        s = got.get(key)
        got[key] = c if s is None else s + c
    got = {k: v for k, v in got.items() if v}
    want = {(w, alg.group.identity): c for w, c in x.terms.items()}
    return got == want


# -- root-of-unity variant ----------------------------------------------------------

def alcove_check(datum, lam, ell):
    """Strict-interior test of a dominant integral weight against the
    order-ell alcove; raises on hypothesis violations."""
    if not datum.is_finite_type():
        raise ValueError("alcove membership needs a finite-type datum")
    if len(datum.components()) != 1:
        raise ValueError("alcove membership needs an indecomposable datum")
    ell = int(ell)
    if ell < 3 or ell % 2 == 0:
        raise ValueError("the order must be an odd integer >= 3")
    triple = any(datum.a[i][j] <= -3
                 for i in range(datum.n) for j in range(datum.n) if i != j)
    if triple and ell % 3 == 0:
        raise ValueError("a triple bond requires an order prime to 3")
    for i in range(datum.n):
        m = coweight_pairing(datum, lam, simple_root(datum, i))
        if m.denominator != 1 or m < 0:
            raise ValueError("weight is not dominant integral")
    shifted = lam + rho(datum)
    for beta in positive_roots(datum):
        v = coweight_pairing(datum, shifted, beta)
        if not 0 < v < ell:
            return False
    return True


def root_of_unity_module(datum, lam, ell, *, offdiag=None, max_depth=None,
                         bound=None):
    """Module over order-ell cyclotomic parameters (ambient field refined by
    the weight's coordinate denominators); refuses weights outside the
    alcove."""
    if not alcove_check(datum, lam, ell):
        raise ValueError(
            f"weight {render_weight(lam)} lies outside the order-{ell} alcove")
    params = ParamMatrix.root_of_unity(
        datum, ell, weight_denominator=weight_denominator(lam),
        offdiag=offdiag)
    return build_module(datum, params, lam, max_depth=max_depth, bound=bound)
