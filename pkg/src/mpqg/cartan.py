"""Symmetrizable Cartan data, root/weight lattice vectors, and the parameter
matrices that drive every coefficient in the library.

A parameter matrix q = (q_ij) must satisfy the compatibility constraint

    q_ij * q_ji = q_ii ^ a_ij        for all i, j,

which is checked exactly at construction in every mode.  The modes are:

Because the constraint holds for every ordered pair, it forces
q_ii^a_ij = q_jj^a_ji: within a connected component of the Cartan graph the
diagonal entries are powers of one shared parameter.  The modes are:

* ``symbolic``        -- per component a diagonal variable (named after the
                         component's representative index) with
                         q_ii = rep^(d_i/d_rep); off-diagonal q_ij free for
                         i<j; q_ji derived.
* ``one_parameter``   -- q_ij = q ^ (d_i a_ij) in a single variable q.
* ``mixed``           -- q_ii = q^(2 d_i), off-diagonal free (twist base).
* ``numeric``         -- explicit Fractions for the free entries (the caller
                         must supply a consistent diagonal).
* ``root_of_unity``   -- q_ii of uniform odd multiplicative order ell, exact
                         cyclotomic values in a common ambient order
                         ell * weight_denominator.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .cyclotomic import CyclotomicElement, zeta
from .linalg import Matrix
from .scalars import LaurentPoly, Scalar

PRESETS = {
    "A1": (((2,),), (1,)),
    "A1xA1": (((2, 0), (0, 2)), (1, 1)),
    "A2": (((2, -1), (-1, 2)), (1, 1)),
    "B2": (((2, -1), (-2, 2)), (2, 1)),
    "G2": (((2, -1), (-3, 2)), (3, 1)),
}


class CartanDatum:
    """Generalized Cartan matrix with a fixed symmetrizer."""

    __slots__ = ("a", "d", "n", "name")

    def __init__(self, a, d, name=None):
        a = tuple(tuple(int(x) for x in row) for row in a)
        d = tuple(int(x) for x in d)
        n = len(a)
        if n == 0 or any(len(row) != n for row in a):
            raise ValueError("Cartan matrix must be square and nonempty")
        if len(d) != n or any(x <= 0 for x in d):
            raise ValueError("symmetrizer entries must be positive integers")
        for i in range(n):
            if a[i][i] != 2:
                raise ValueError(f"a[{i}][{i}] must be 2")
            for j in range(n):
                if i != j:
                    if a[i][j] > 0:
                        raise ValueError(f"a[{i}][{j}] must be <= 0")
                    if (a[i][j] == 0) != (a[j][i] == 0):
                        raise ValueError(f"zero pattern not symmetric at ({i},{j})")
                if d[i] * a[i][j] != d[j] * a[j][i]:
                    raise ValueError(f"d does not symmetrize a at ({i},{j})")
        self.a = a
        self.d = d
        self.n = n
        self.name = name

    @staticmethod
    def preset(name: str) -> "CartanDatum":
        if name not in PRESETS:
            raise ValueError(f"unknown preset {name!r}; have {sorted(PRESETS)}")
        a, d = PRESETS[name]
        return CartanDatum(a, d, name=name)

    def sym(self, i, j):
        """Symmetrized matrix entry (alpha_i, alpha_j) = d_i a_ij."""
        return self.d[i] * self.a[i][j]

    def is_finite_type(self) -> bool:
        """Positive definiteness of the symmetrization, by leading principal
        minors (exact)."""
        for k in range(1, self.n + 1):
            rows = [[Fraction(self.sym(i, j)) for j in range(k)] for i in range(k)]
            if Matrix(rows).det() <= 0:
                return False
        return True

    def components(self):
        """Connected components of the Cartan graph, each sorted."""
        seen, comps = set(), []
        for s in range(self.n):
            if s in seen:
                continue
            comp, stack = [], [s]
            seen.add(s)
            while stack:
                i = stack.pop()
                comp.append(i)
                for j in range(self.n):
                    if j not in seen and self.a[i][j] != 0:
                        seen.add(j)
                        stack.append(j)
            comps.append(sorted(comp))
        return comps

    def __repr__(self):
        return f"CartanDatum({self.name or self.a})"


class LatticeVector:
    """Vector in the rational span of the simple roots, coordinates in the
    alpha-basis."""

    __slots__ = ("coords",)

    def __init__(self, coords):
        self.coords = tuple(Fraction(c) for c in coords)

    def __add__(self, other):
        return LatticeVector(a + b for a, b in zip(self.coords, other.coords))

    def __sub__(self, other):
        return LatticeVector(a - b for a, b in zip(self.coords, other.coords))

    def __neg__(self):
        return LatticeVector(-a for a in self.coords)

    def __rmul__(self, c):
        return LatticeVector(Fraction(c) * a for a in self.coords)

    def __eq__(self, other):
        return isinstance(other, LatticeVector) and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    @property
    def is_integral(self):
        return all(c.denominator == 1 for c in self.coords)

    @property
    def is_positive(self):
        return self.is_integral and all(c >= 0 for c in self.coords) and any(self.coords)

    def height(self):
        if not all(c.denominator == 1 and c >= 0 for c in self.coords):
            raise ValueError("height needs a nonnegative integral vector")
        return int(sum(self.coords))

    def __repr__(self):
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


def simple_root(datum, i):
    return LatticeVector(tuple(1 if j == i else 0 for j in range(datum.n)))


def sym_form(datum, mu, nu) -> Fraction:
    """Symmetric bilinear form (mu, nu) = sum mu_i nu_j d_i a_ij."""
    total = Fraction(0)
    for i, x in enumerate(mu.coords):
        if not x:
            continue
        for j, y in enumerate(nu.coords):
            if y:
                total += x * y * datum.sym(i, j)
    return total


def coweight_pairing(datum, lam, beta) -> Fraction:
    """<lam, beta^vee> = 2 (lam, beta) / (beta, beta)."""
    bb = sym_form(datum, beta, beta)
    if not bb:
        raise ValueError("coroot of an isotropic vector")
    return 2 * sym_form(datum, lam, beta) / bb


def fundamental_weight(datum, i) -> LatticeVector:
    """varpi_i in alpha-coordinates: column i of the inverse Cartan matrix."""
    n = datum.n
    rows = [[Fraction(datum.a[r][c]) for c in range(n)] for r in range(n)]
    rhs = [Fraction(1) if r == i else Fraction(0) for r in range(n)]
    sol = Matrix(rows).solve(rhs)
    assert sol is not None, "Cartan matrix is singular"
    return LatticeVector(sol)


def weight_from_marks(datum, marks) -> LatticeVector:
    """Dominant weight sum m_i varpi_i from nonnegative integer marks."""
    if len(marks) != datum.n:
        raise ValueError(f"need {datum.n} marks")
    if any(int(m) != m or m < 0 for m in marks):
        raise ValueError("marks must be nonnegative integers")
    out = LatticeVector((0,) * datum.n)
    for i, m in enumerate(marks):
        if m:
            out = out + int(m) * fundamental_weight(datum, i)
    return out


def positive_roots(datum):
    """All positive roots of a finite-type datum, by closing the simple
    roots under simple reflections."""
    if not datum.is_finite_type():
        raise ValueError("positive roots require a finite-type datum")
    simples = [simple_root(datum, i) for i in range(datum.n)]

    def reflect(beta, i):
        return beta - coweight_pairing(datum, beta, simples[i]) * simples[i]

    roots = set(simples)
    frontier = list(simples)
    while frontier:
        beta = frontier.pop()
        for i in range(datum.n):
            g = reflect(beta, i)
            if g.is_positive and g not in roots:
                roots.add(g)
                frontier.append(g)
    return sorted(roots, key=lambda b: (b.height(), b.coords))


def rho(datum) -> LatticeVector:
    """Half the sum of the positive roots (= sum of fundamental weights)."""
    out = LatticeVector((0,) * datum.n)
    for beta in positive_roots(datum):
        out = out + beta
    return Fraction(1, 2) * out


def weyl_dim(datum, lam) -> int:
    """Weyl dimension formula, used as an independent oracle for modules."""
    r = rho(datum)
    num = Fraction(1)
    den = Fraction(1)
    for beta in positive_roots(datum):
        num *= sym_form(datum, lam + r, beta)
        den *= sym_form(datum, r, beta)
    val = num / den
    assert val.denominator == 1 and val > 0
    return int(val)


def kostant_count(datum, beta) -> int:
    """Number of ways to write beta as a multiset of positive roots."""
    roots = positive_roots(datum)

    def count(target, idx):
        if not any(target.coords):
            return 1
        if idx == len(roots):
            return 0
        if any(c < 0 for c in target.coords):
            return 0
        total = 0
        cur = target
        while all(c >= 0 for c in cur.coords):
            total += count(cur, idx + 1)
            cur = cur - roots[idx]
        return total

    return count(beta, 0)


# ---------------------------------------------------------------------------
# parameter matrices


class ParamMatrix:
    """Compatibility-checked matrix of parameters plus the coefficient field
    the rest of the library computes in.

    ``power(i, j, e)`` returns q_ij^e for a Fraction exponent e: a monomial
    in symbolic modes, an exact root-of-unity power in cyclotomic mode, and
    an error for genuinely fractional powers of plain rationals.
    """

    def __init__(self, datum, mode, entries, *, orders=None, ambient=None,
                 zexp=None):
        self.datum = datum
        self.mode = mode
        self.entries = entries  # (i, j) -> field element
        self.orders = orders    # per-index multiplicative order of q_ii, or None
        self.ambient = ambient  # cyclotomic ambient order, or None
        self.zexp = zexp        # (i, j) -> exponent of zeta_ambient, cyclotomic mode
        if mode == "root_of_unity":
            self.one = zeta(ambient, 0)
        elif mode == "numeric":
            self.one = Fraction(1)
        else:
            self.one = Scalar.from_int(1)
        self.zero = self.one - self.one
        self._check_constraint()

    # -- constructors --------------------------------------------------------

    @staticmethod
    def symbolic(datum):
        entries = {}
        for comp in datum.components():
            rep = min(comp, key=lambda i: (datum.d[i], i))
            base = Scalar.variable(("q", rep, rep))
            for i in comp:
                e = Fraction(datum.d[i], datum.d[rep])
                entries[(i, i)] = _scalar_fract_power(base, e)
        for i in range(datum.n):
            for j in range(datum.n):
                if i < j:
                    entries[(i, j)] = Scalar.variable(("q", i, j))
                elif i > j:
                    entries[(i, j)] = (
                        entries[(j, j)] ** datum.a[j][i]
                        * Scalar.variable(("q", j, i)) ** -1
                    )
        return ParamMatrix(datum, "symbolic", entries)

    @staticmethod
    def one_parameter(datum):
        q = Scalar.variable(("q",))
        entries = {
            (i, j): q ** (datum.d[i] * datum.a[i][j])
            for i in range(datum.n)
            for j in range(datum.n)
        }
        return ParamMatrix(datum, "one_parameter", entries)

    @staticmethod
    def mixed_diagonal(datum):
        """q_ii = q^(2 d_i); off-diagonal entries free (i<j).  The base of
        the one-parameter cocycle twist."""
        q = Scalar.variable(("q",))
        entries = {}
        for i in range(datum.n):
            entries[(i, i)] = q ** (2 * datum.d[i])
        for i in range(datum.n):
            for j in range(datum.n):
                if i < j:
                    entries[(i, j)] = Scalar.variable(("q", i, j))
                elif i > j:
                    entries[(i, j)] = (
                        q ** (2 * datum.d[j] * datum.a[j][i])
                        * Scalar.variable(("q", j, i)) ** -1
                    )
        return ParamMatrix(datum, "mixed", entries)

    @staticmethod
    def numeric(datum, assignment):
        """assignment: {(i, j): Fraction} for i <= j free entries."""
        entries = {}
        for i in range(datum.n):
            v = Fraction(assignment[(i, i)])
            if not v or v == 1:
                raise ValueError(f"q_{i}{i} must be invertible and != 1")
            entries[(i, i)] = v
        for i in range(datum.n):
            for j in range(datum.n):
                if i < j:
                    entries[(i, j)] = Fraction(assignment.get((i, j), 1))
                elif i > j:
                    entries[(i, j)] = (
                        entries[(j, j)] ** datum.a[j][i] / entries[(j, i)]
                    )
        return ParamMatrix(datum, "numeric", entries)

    @staticmethod
    def root_of_unity(datum, ell, *, weight_denominator=1, offdiag=None):
        """All q_ii of multiplicative order exactly ell (odd, >= 3).

        Within a component with symmetrizer gcd g, q_ii = zeta_ell^(d_i/g);
        the order is uniformly ell precisely when gcd(d_i/g, ell) = 1 for
        all i -- hence the oddness requirement, and 3 must not divide ell
        when a component has a triple bond.  Off-diagonal entries are
        zeta_ell^k with k from ``offdiag`` (default 0) for i < j.  Values
        live in Q(zeta_ambient), ambient = ell * weight_denominator, so
        fractional-exponent weight pairings stay exact.
        """
        if ell < 3 or ell % 2 == 0:
            raise ValueError("the order must be an odd integer >= 3")
        diag_step = {}
        for comp in datum.components():
            g = 0
            for i in comp:
                g = gcd(g, datum.d[i])
            for i in comp:
                c = datum.d[i] // g
                if gcd(c, ell) != 1:
                    raise ValueError(
                        f"order {ell} shares a factor with the relative "
                        f"symmetrizer {c} at index {i}; the diagonal orders "
                        f"cannot all equal {ell}"
                    )
                diag_step[i] = c
        ambient = ell * max(1, int(weight_denominator))
        step = ambient // ell
        zexp = {}
        for i in range(datum.n):
            zexp[(i, i)] = Fraction(step * diag_step[i])
        for i in range(datum.n):
            for j in range(datum.n):
                if i < j:
                    k = (offdiag or {}).get((i, j), 0)
                    zexp[(i, j)] = Fraction(step * k)
                elif i > j:
                    zexp[(i, j)] = zexp[(j, j)] * datum.a[j][i] - zexp[(j, i)]
        entries = {}
        for key, e in zexp.items():
            assert e.denominator == 1
            entries[key] = zeta(ambient, int(e) % ambient)
        orders = []
        for i in range(datum.n):
            got = entries[(i, i)].multiplicative_order()
            assert got == ell, (i, got, ell)
            orders.append(got)
        return ParamMatrix(datum, "root_of_unity", entries,
                           orders=tuple(orders), ambient=ambient, zexp=zexp)

    # -- operations -----------------------------------------------------------

    def _check_constraint(self):
        d = self.datum
        for i in range(d.n):
            for j in range(d.n):
                lhs = self.entries[(i, j)] * self.entries[(j, i)]
                rhs = self.entries[(i, i)] ** d.a[i][j]
                if lhs != rhs:
                    raise ValueError(
                        f"parameter constraint violated at ({i},{j}): "
                        f"q_ij*q_ji != q_ii^a_ij"
                    )

    def entry(self, i, j):
        return self.entries[(i, j)]

    def power(self, i, j, e: Fraction):
        e = Fraction(e)
        if not e:
            return self.one
        if self.mode == "root_of_unity":
            k = self.zexp[(i, j)] * e
            if k.denominator != 1:
                raise ValueError(
                    f"fractional power of q_{i}{j} not resolvable at ambient "
                    f"{self.ambient}"
                )
            return zeta(self.ambient, int(k) % self.ambient)
        if self.mode == "numeric":
            base = self.entries[(i, j)]
            if e.denominator != 1:
                root = _exact_fraction_root(base, e.denominator)
                if root is None:
                    raise ValueError(
                        f"fractional power of q_{i}{j}: {base} has no exact "
                        f"{e.denominator}-th root; choose perfect-power "
                        f"entries for this weight")
                return root ** e.numerator
            return base ** int(e)
        return _scalar_fract_power(self.entries[(i, j)], e)

    def q_pairing(self, mu, nu):
        """q_{mu,nu} = prod q_ij^(mu_i nu_j)."""
        out = self.one
        for i, x in enumerate(mu.coords):
            if not x:
                continue
            for j, y in enumerate(nu.coords):
                if y:
                    out = out * self.power(i, j, x * y)
        return out

    def coerce(self, x):
        if self.mode == "root_of_unity":
            if isinstance(x, CyclotomicElement):
                return x
            return zeta(self.ambient, 0) * Fraction(x)
        if self.mode == "numeric":
            return Fraction(x)
        return Scalar.coerce(x)


def _integer_root(n: int, r: int):
    """Exact r-th root of a nonnegative integer, or None."""
    if n < 2:
        return n
    lo, hi = 1, 1 << ((n.bit_length() + r - 1) // r + 1)
    while lo < hi:
        mid = (lo + hi) // 2
        if mid ** r <= n:
            lo = mid + 1
        else:
            hi = mid
    c = lo - 1
    return c if c ** r == n else None


def _exact_fraction_root(v: Fraction, r: int):
    """Exact r-th root of a rational, or None when it does not exist."""
    sign = 1
    if v < 0:
        if r % 2 == 0:
            return None
        sign, v = -1, -v
    a = _integer_root(v.numerator, r)
    b = _integer_root(v.denominator, r)
    if a is None or b is None:
        return None
    return Fraction(sign * a, b)


def _scalar_fract_power(s: Scalar, e: Fraction):
    """Fractional power of a symbolic scalar; only defined when the scalar is
    a single monomial (all parameter-matrix entries are)."""
    if e.denominator == 1:
        return s ** int(e)
    if len(s.num.terms) != 1 or not s.den.is_one:
        raise ValueError(f"fractional power of a non-monomial scalar: {s}")
    (mono, coeff), = s.num.terms.items()
    if coeff != 1:
        raise ValueError(f"fractional power of a non-monic monomial: {s}")
    new = tuple((v, ex * e) for v, ex in mono)
    return Scalar(LaurentPoly({new: Fraction(1)}))
