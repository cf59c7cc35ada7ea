"""Cotensor coalgebra over a group algebra, with the quasi-symmetric
product, coproduct, counit, and antipode.

Data model
----------
A basis word is ``(letters, tail)``: a finite sequence of letter tags and a
group element.  It encodes the chain

    slot_j = a_j . ( grading(a_{j+1}) ... grading(a_n) . tail )

so the compatibility of neighbouring slots holds by construction and the
representation is canonical.  A length-0 word is the group-like ``tail``
alone.  Elements are finitely supported maps word -> coefficient.

The product is the universal induced map of the coalgebra pairing: expand
the iterated cut coproduct of both factors, apply the slotwise rules

    (group, letter)  -> left action   (coefficient chi_letter(group))
    (letter, group)  -> right action  (tail multiplication)
    (letter, letter) -> contraction   (sparse rules, with the transfer
                                       coefficient chi_right(group_left))

and kill every other slot shape.  An independently coded first-letter-peel
recursion is kept as a cross-check oracle.  The antipode is computed by the
convolution-inverse recursion on word length.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement
from typing import NamedTuple

from .cartan import simple_root
from .grouplike import Character, GradingGroup, standard_group


class Word(NamedTuple):
    letters: tuple
    tail: tuple


class LetterData(NamedTuple):
    tag: tuple
    grading: tuple           # group element
    char: Character          # how the torus acts on this letter
    weight: tuple            # root-lattice weight, Fraction coordinates


def word_key(w):
    """Canonical sort key for basis words."""
    return (len(w.letters), w.letters, w.tail)


def render_letter(tag) -> str:
    kind = tag[0]
    if kind in ("E", "F", "X"):
        return f"{kind}{tag[1]}"
    if kind == "V":
        return "V"
    return repr(tag)


class Element:
    """Finitely supported coefficient map on basis words, bound to its
    algebra."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg, terms):
        self.alg = alg
        self.terms = {w: c for w, c in terms.items() if c}

    def __add__(self, other):
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w)
            out[w] = c if s is None else s + c
        return Element(self.alg, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Element(self.alg, {w: -c for w, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, Element):
            return self.alg.product(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c):
        c = self.alg.coerce(c)
        if not c:
            return Element(self.alg, {})
        return Element(self.alg, {w: c * v for w, v in self.terms.items()})

    @property
    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return (self - other).is_zero

    __hash__ = None

    def __repr__(self):
        return self.alg.render(self)


class CotensorAlgebra:
    """The full machinery for one Cartan datum / parameter matrix (and an
    optional highest-weight letter)."""

    def __init__(self, datum, params, lam=None, *, finite=None):
        self.datum = datum
        self.params = params
        self.lam = lam
        self.one = params.one
        self.zero = params.zero
        n = datum.n
        if finite is None:
            # With a weight letter the torus characters involve ambient
            # roots of unity that need not be compatible with the finite
            # quotient, so the group stays free in that case.
            finite = params.mode == "root_of_unity" and lam is None
        moduli = params.orders if finite else None
        self.group = standard_group(n, with_weight=lam is not None,
                                    moduli=moduli)
        g = self.group
        self.letters = {}
        zero_w = (Fraction(0),) * n

        def add_letter(tag, grading, values, weight):
            self.letters[tag] = LetterData(tag, grading, Character(g, values),
                                           tuple(weight))

        for j in range(n):
            alpha_j = simple_root(datum, j)
            ew, fw = list(zero_w), list(zero_w)
            ew[j] = Fraction(1)
            fw[j] = Fraction(-1)
            evals, fvals, xvals = [], [], []
            for tag in g.gens:
                if tag[0] == "K":
                    i = tag[1]
                    evals.append(params.entry(i, j))
                    fvals.append(params.entry(i, j) ** -1)
                elif tag[0] == "Kp":
                    i = tag[1]
                    evals.append(params.entry(j, i) ** -1)
                    fvals.append(params.entry(j, i))
                else:
                    qal = params.q_pairing(alpha_j, lam)
                    evals.append(qal ** -1)
                    fvals.append(qal)
                xvals.append(self.one)
            add_letter(("E", j), g.basis(("K", j)), evals, ew)
            add_letter(("F", j), g.basis(("Kp", j), -1), fvals, fw)
            add_letter(("X", j),
                       g.element([(("K", j), 1), (("Kp", j), -1)]),
                       xvals, zero_w)
        if lam is not None:
            vvals = []
            for tag in g.gens:
                if tag[0] == "K":
                    vvals.append(params.q_pairing(simple_root(datum, tag[1]),
                                                  lam))
                elif tag[0] == "Kp":
                    vvals.append(
                        params.q_pairing(lam, simple_root(datum, tag[1])) ** -1
                    )
                else:
                    vvals.append(params.q_pairing(lam, lam))
            add_letter(("V",), g.basis(("KL",)), vvals, lam.coords)
        self.alpha = {}
        for i in range(n):
            coeff = params.entry(i, i) / (params.entry(i, i) - self.one)
            self.alpha[(("E", i), ("F", i))] = (("X", i), coeff)
        self._prod_cache = {}
        self._anti_cache = {}

    # -- element constructors -------------------------------------------------

    def coerce(self, c):
        return self.params.coerce(c)

    def word(self, letters, tail=None):
        letters = tuple(letters)
        for t in letters:
            if t not in self.letters:
                raise ValueError(f"unknown letter {t}")
        if tail is None:
            tail = self.group.identity
        return Word(letters, tail)

    def element(self, terms):
        return Element(self, terms)

    def zero_element(self):
        return Element(self, {})

    def group_like(self, gelt, coeff=None):
        return Element(self, {Word((), gelt): self.one if coeff is None
                              else self.coerce(coeff)})

    def unit(self):
        return self.group_like(self.group.identity)

    def letter_element(self, tag, tail=None):
        return Element(self, {self.word((tag,), tail): self.one})

    def E(self, i):
        return self.letter_element(("E", i))

    def F(self, i):
        return self.letter_element(("F", i))

    def X(self, i):
        return self.letter_element(("X", i))

    def V(self):
        return self.letter_element(("V",))

    # -- gradings and weights --------------------------------------------------

    def suffix_groups(self, letters, tail):
        """sg[t] = grading(letters[t:]) . tail; sg[len] = tail."""
        g = self.group
        sg = [tail]
        for t in range(len(letters) - 1, -1, -1):
            sg.append(g.mul(self.letters[letters[t]].grading, sg[-1]))
        sg.reverse()
        return sg

    def slot_tails(self, w):
        """Group element attached to each slot (grading of the strictly
        later letters times the tail)."""
        return self.suffix_groups(w.letters, w.tail)[1:]

    def total_grading(self, w):
        return self.suffix_groups(w.letters, w.tail)[0]

    def weight_of_word(self, w):
        acc = None
        for tag in w.letters:
            wt = self.letters[tag].weight
            acc = wt if acc is None else tuple(a + b for a, b in zip(acc, wt))
        if acc is None:
            acc = (Fraction(0),) * self.datum.n
        return acc

    def weight_components(self, x):
        out = {}
        for w, c in x.terms.items():
            out.setdefault(self.weight_of_word(w), {})[w] = c
        return {wt: Element(self, d) for wt, d in sorted(out.items())}

    # -- coalgebra --------------------------------------------------------------

    def coproduct_word(self, w):
        """All cut components (left word, right word) of one basis word."""
        sg = self.suffix_groups(w.letters, w.tail)
        n = len(w.letters)
        return [(Word(w.letters[:j], sg[j]), Word(w.letters[j:], w.tail))
                for j in range(n + 1)]

    def coproduct(self, x):
        out = {}
        for w, c in x.terms.items():
            for pair in self.coproduct_word(w):
                s = out.get(pair)
                out[pair] = c if s is None else s + c
        return {k: v for k, v in out.items() if v}

    def coproduct_iter(self, x, parts):
        """Iterated coproduct with ``parts`` tensor factors."""
        if parts < 1:
            raise ValueError("need at least one tensor factor")
        out = {}
        for w, c in x.terms.items():
            n = len(w.letters)
            sg = self.suffix_groups(w.letters, w.tail)
            for cuts in combinations_with_replacement(range(n + 1), parts - 1):
                bounds = (0,) + cuts + (n,)
                key = tuple(
                    Word(w.letters[bounds[t]:bounds[t + 1]], sg[bounds[t + 1]])
                    for t in range(parts)
                )
                s = out.get(key)
                out[key] = c if s is None else s + c
        return {k: v for k, v in out.items() if v}

    def counit(self, x):
        out = self.zero
        for w, c in x.terms.items():
            if not w.letters:
                out = out + c
        return out

    # -- product ----------------------------------------------------------------

    def word_product(self, wx, wy):
        """Product of two basis words as a word -> coefficient map."""
        key = (wx, wy)
        got = self._prod_cache.get(key)
        if got is not None:
            return got
        g = self.group
        lx, ly = wx.letters, wy.letters
        p, q = len(lx), len(ly)
        sgx = self.suffix_groups(lx, wx.tail)
        sgy = self.suffix_groups(ly, wy.tail)
        tail = g.mul(wx.tail, wy.tail)
        out = {}

        def emit(acc, groups, coeff):
            w = Word(tuple(acc), tail)
            assert self.slot_tails(w) == groups, "slot chain violated"
            s = out.get(w)
            out[w] = coeff if s is None else s + coeff

        def walk(i, j, acc, groups, coeff):
            if i == p and j == q:
                emit(acc, groups, coeff)
                return
            if j < q:
                # left action of the not-yet-consumed part of x on a letter
                b = ly[j]
                c = self.letters[b].char(sgx[i])
                acc.append(b)
                groups.append(g.mul(sgx[i], sgy[j + 1]))
                walk(i, j + 1, acc, groups, coeff * c)
                acc.pop()
                groups.pop()
            if i < p:
                # right action of the rest of y on a letter of x
                acc.append(lx[i])
                groups.append(g.mul(sgx[i + 1], sgy[j]))
                walk(i + 1, j, acc, groups, coeff)
                acc.pop()
                groups.pop()
            if i < p and j < q:
                rule = self.alpha.get((lx[i], ly[j]))
                if rule is not None:
                    cl, rc = rule
                    c = rc * self.letters[ly[j]].char(sgx[i + 1])
                    acc.append(cl)
                    groups.append(g.mul(sgx[i + 1], sgy[j + 1]))
                    walk(i + 1, j + 1, acc, groups, coeff * c)
                    acc.pop()
                    groups.pop()

        walk(0, 0, [], [], self.one)
        out = {w: c for w, c in out.items() if c}
        self._prod_cache[key] = out
        return out

    def product(self, x, y):
        acc = {}
        for wx, cx in x.terms.items():
            for wy, cy in y.terms.items():
                c0 = cx * cy
                for w, c in self.word_product(wx, wy).items():
                    s = acc.get(w)
                    v = c0 * c
                    acc[w] = v if s is None else s + v
        return Element(self, acc)

    def product_recursive(self, wx, wy):
        """Independent oracle: peel the first letter of either factor."""
        g = self.group
        if not wx.letters:
            coeff = self.one
            for b in wy.letters:
                coeff = coeff * self.letters[b].char(wx.tail)
            return {Word(wy.letters, g.mul(wx.tail, wy.tail)): coeff}
        if not wy.letters:
            return {Word(wx.letters, g.mul(wx.tail, wy.tail)): self.one}
        out = {}

        def add(dic, letter, scale):
            if not scale:
                return
            for w, c in dic.items():
                nw = Word((letter,) + w.letters, w.tail)
                v = scale * c
                s = out.get(nw)
                out[nw] = v if s is None else s + v

        a, b = wx.letters[0], wy.letters[0]
        xr = Word(wx.letters[1:], wx.tail)
        yr = Word(wy.letters[1:], wy.tail)
        add(self.product_recursive(xr, wy), a, self.one)
        add(self.product_recursive(wx, yr), b,
            self.letters[b].char(self.total_grading(wx)))
        rule = self.alpha.get((a, b))
        if rule is not None:
            cl, rc = rule
            add(self.product_recursive(xr, yr), cl,
                rc * self.letters[b].char(self.total_grading(xr)))
        return {w: c for w, c in out.items() if c}

    def power(self, x, r):
        if r < 0:
            raise ValueError("negative powers are not defined")
        out = self.unit()
        for _ in range(r):
            out = self.product(out, x)
        return out

    # -- torus (co)actions -------------------------------------------------------

    def act_left(self, gelt, x):
        return self.product(self.group_like(gelt), x)

    def act_right(self, x, gelt):
        return self.product(x, self.group_like(gelt))

    def coact_left(self, x):
        """Left coaction components (group element, word) -> coefficient."""
        return {(self.total_grading(w), w): c for w, c in x.terms.items()}

    def coact_right(self, x):
        """Right coaction components (word, group element) -> coefficient."""
        return {(w, w.tail): c for w, c in x.terms.items()}

    # -- antipode -----------------------------------------------------------------

    def antipode_word(self, w):
        got = self._anti_cache.get(w)
        if got is not None:
            return got
        g = self.group
        if not w.letters:
            res = self.group_like(g.inv(w.tail))
        else:
            sg = self.suffix_groups(w.letters, w.tail)
            acc = self.product(self.group_like(g.inv(sg[0])),
                               self.element({w: self.one}))
            for j in range(1, len(w.letters)):
                left = Word(w.letters[:j], sg[j])
                right = Word(w.letters[j:], w.tail)
                acc = acc + self.product(self.antipode_word(left),
                                         self.element({right: self.one}))
            res = self.product(-acc, self.group_like(g.inv(w.tail)))
        self._anti_cache[w] = res
        return res

    def antipode(self, x):
        out = self.zero_element()
        for w, c in x.terms.items():
            out = out + self.antipode_word(w).scale(c)
        return out

    # -- rendering ----------------------------------------------------------------

    def render_word(self, w) -> str:
        if not w.letters:
            return self.group.render(w.tail)
        tails = self.slot_tails(w)
        parts = []
        for tag, t in zip(w.letters, tails):
            s = render_letter(tag)
            if t != self.group.identity:
                s += "." + self.group.render(t)
            parts.append(s)
        return " (x) ".join(parts) + " | tail=" + self.group.render(w.tail)

    def render(self, x) -> str:
        if not x.terms:
            return "0"
        keys = sorted(x.terms, key=lambda w: (len(w.letters), w.letters, w.tail))
        bits = []
        for w in keys:
            bits.append(f"({x.terms[w]})*[{self.render_word(w)}]")
        return " + ".join(bits)


def build_machinery(datum, params, lam=None, *, finite=None) -> CotensorAlgebra:
    """Assemble the machinery for a Cartan datum and parameter matrix; pass a
    dominant-weight lattice vector to adjoin the highest-weight letter."""
    return CotensorAlgebra(datum, params, lam, finite=finite)
