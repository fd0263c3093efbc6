"""Arithmetic of the number field K = Q(alpha).

Maximal orders by the Dedekind criterion plus Round-2 enlargement, prime
splitting (with an idempotent-splitting path above index divisors), norm
counting tables, Dirichlet coefficients of the Dedekind zeta function, and
the splitting-variance discriminant bound.
"""

from __future__ import annotations

import math
import random
import zlib
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import intlinalg as la
from . import modp
from .algebra import (IntPolynomial, complex_roots, discriminant,
                      squarefree_part, sturm_real_root_count)
from .errors import (DomainError, NotUniformSplittingError,
                     OverrideRequiredError)
from .primes import factorize, prime_powers, sieve_primes
from .reports import BoundReport

_SPLIT_ATTEMPT_CAP = 60


@dataclass(frozen=True)
class NumberField:
    """Degree, signature, index, discriminant and integral basis data."""

    defining_poly: IntPolynomial
    n_K: int
    r1: int
    r2: int
    poly_disc: int
    index: int
    field_disc: int
    integral_basis: tuple  # rows of Fractions over the power basis

    @property
    def abs_disc(self) -> int:
        return abs(self.field_disc)

    @property
    def log_abs_disc(self) -> float:
        return math.log(self.abs_disc)

    def __hash__(self):
        return hash(self.defining_poly.coefficients)


@dataclass(frozen=True)
class PrimeSplitting:
    p: int
    factors: tuple  # tuple of (e_i, f_i)

    def norm_count(self, f: int) -> int:
        return sum(1 for _, fi in self.factors if fi == f)


@dataclass(frozen=True)
class SplittingTable:
    cutoff: int
    counts: dict  # prime power q -> N_q(K), zeros included

    def csv_rows(self):
        return [(q, self.counts[q]) for q in sorted(self.counts)]


@dataclass(frozen=True)
class DirichletCoefficients:
    N: int
    a: tuple

    def csv_rows(self):
        return [(n + 1, self.a[n]) for n in range(self.N)]


@dataclass(frozen=True)
class IrreducibilityCertificate:
    status: str  # "certified_irreducible" | "inconclusive"
    witness: tuple | None = None
    degree_sums: tuple = ()

    @property
    def certified(self) -> bool:
        return self.status == "certified_irreducible"


@dataclass(frozen=True)
class VarianceProfile:
    q: int
    e_p: int
    f_p: int
    V_p: float
    bz_term: float


# ----------------------------------------------------------------------
# Orders over the power basis
# ----------------------------------------------------------------------

class _Order:
    """Z-order in K given by basis rows / den over the power basis of f."""

    def __init__(self, f: IntPolynomial, basis=None, den=1):
        self.f = f
        self.n = f.degree
        self.basis = basis if basis is not None else la.identity(self.n)
        self.den = den
        self._power_products = self._build_power_products()
        self._struct = None

    def _build_power_products(self):
        n = self.n
        coeffs = self.f.coefficients
        rows = [[1 if j == k else 0 for j in range(n)] for k in range(n)]
        current = rows[-1]
        for _ in range(n - 1):
            shifted = [0] + current[:]
            lead = shifted.pop()
            nxt = [shifted[j] - lead * coeffs[j] for j in range(n)]
            rows.append(nxt)
            current = nxt
        return rows  # alpha^k for k = 0..2n-2

    def mul_power_vectors(self, u, v):
        n = self.n
        conv = [0] * (2 * n - 1)
        for i, ui in enumerate(u):
            if ui:
                for j, vj in enumerate(v):
                    conv[i + j] += ui * vj
        out = conv[:n]
        for k in range(n, 2 * n - 1):
            c = conv[k]
            if c:
                pk = self._power_products[k]
                for j in range(n):
                    out[j] += c * pk[j]
        return out

    def structure_constants(self):
        """c[i][j] = coords of b_i b_j in this basis (exact integers)."""
        if self._struct is not None:
            return self._struct
        n = self.n
        inv = [la.solve_left_exact(self.basis, [1 if k == i else 0 for k in range(n)])
               for i in range(n)]
        # inv[i] solves x . basis = e_i, so coords(v) = sum v_i inv[i]
        table = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                w = self.mul_power_vectors(self.basis[i], self.basis[j])
                coords = [Fraction(0)] * n
                for k, wk in enumerate(w):
                    if wk:
                        for t in range(n):
                            coords[t] += wk * inv[k][t]
                vec = []
                for c in coords:
                    c = c / self.den
                    assert c.denominator == 1, "order is not multiplicatively closed"
                    vec.append(int(c))
                table[i][j] = vec
                table[j][i] = vec
        self._struct = table
        return table

    def index_in(self, other: "_Order") -> Fraction:
        """[other : self] as a positive rational."""
        d_self = abs(la.det(self.basis)) / Fraction(self.den ** self.n)
        d_other = abs(la.det(other.basis)) / Fraction(other.den ** other.n)
        return d_self / d_other


def _mul_mod_p(struct, u, v, p):
    n = len(u)
    out = [0] * n
    for i in range(n):
        ui = u[i]
        if ui:
            for j in range(n):
                vj = v[j]
                if vj:
                    row = struct[i][j]
                    for k in range(n):
                        out[k] = (out[k] + ui * vj * row[k]) % p
    return out


def _frobenius_matrix(struct, p, n):
    """Matrix rows = coords of b_i^p in the order basis, mod p."""
    rows = []
    for i in range(n):
        base = [1 if k == i else 0 for k in range(n)]
        acc = None
        e = p
        sq = base
        while e:
            if e & 1:
                acc = sq if acc is None else _mul_mod_p(struct, acc, sq, p)
            e >>= 1
            if e:
                sq = _mul_mod_p(struct, sq, sq, p)
        rows.append(acc)
    return rows


def _radical_mod_p(struct, p, n):
    """Basis vectors of the nilradical of O/pO."""
    frob = _frobenius_matrix(struct, p, n)
    m = frob
    steps = 1
    power = p
    while power < n:
        m = [[sum(m[i][t] * frob[t][j] for t in range(n)) % p for j in range(n)]
             for i in range(n)]
        power *= p
        steps += 1
    mt = [[m[i][j] for i in range(n)] for j in range(n)]
    return la.nullspace_mod_p(mt, p)


def _dedekind_p_maximal(f: IntPolynomial, p: int) -> bool:
    """Dedekind criterion: is Z[alpha] maximal at p?"""
    fp = modp.reduce_mod(f, p)
    pieces = modp._squarefree_decomposition(fp, p)
    g_star = [1]
    for poly, _mult in pieces:
        g_star = modp.pmul(g_star, poly, p)
    h_star = modp.pdivmod(fp, g_star, p)[0]
    # lift g*, h* to monic integer polynomials with coefficients in [0, p)
    g_lift = list(g_star)
    h_lift = list(h_star)
    gh = [0] * (len(g_lift) + len(h_lift) - 1)
    for i, gi in enumerate(g_lift):
        for j, hj in enumerate(h_lift):
            gh[i + j] += gi * hj
    t_poly = []
    for k in range(len(gh)):
        fk = f.coefficients[k] if k <= f.degree else 0
        diff = gh[k] - fk
        assert diff % p == 0
        t_poly.append((diff // p) % p)
    t_poly = modp.trim(t_poly)
    g1 = modp.pgcd(t_poly, g_star, p) if t_poly else g_star
    g2 = modp.pgcd(g1, h_star, p)
    return len(g2) <= 1


def _round2_at_p(f: IntPolynomial, p: int, vp_disc: int):
    """p-maximal overorder of Z[alpha]: (basis, den, local index exponent)."""
    order = _Order(f)
    exponent = 0
    for _ in range(vp_disc + 1):
        n = order.n
        struct = order.structure_constants()
        rad = _radical_mod_p(struct, p, n)
        ideal_rows = [list(v) for v in rad] + [[p if i == j else 0 for j in range(n)]
                                              for i in range(n)]
        h = la.hnf(ideal_rows, n)
        hinv = [la.solve_left_exact(h, [1 if k == i else 0 for k in range(n)])
                for i in range(n)]
        # rows i -> flattened coords of b_i * h_l in the ideal basis, mod p
        cond = []
        for i in range(n):
            row = []
            for l in range(n):
                w = _mul_in_order(struct, [1 if k == i else 0 for k in range(n)], h[l])
                coords = _coords_via_inverse(hinv, w)
                row.extend(int(c) % p for c in coords)
            cond.append(row)
        kernel = la.nullspace_mod_p([[cond[i][c] for i in range(n)]
                                     for c in range(n * n)], p)
        if not kernel:
            break
        new_rows = [[x * p for x in row] for row in order.basis]
        grew = False
        for vec in kernel:
            combo = [0] * n
            for i, ci in enumerate(vec):
                if ci:
                    for j in range(n):
                        combo[j] += ci * order.basis[i][j]
            new_rows.append(combo)
        new_basis = la.hnf(new_rows, n)
        new_den = order.den * p
        g = new_den
        for row in new_basis:
            for x in row:
                g = math.gcd(g, x)
        if g > 1:
            new_basis = [[x // g for x in row] for row in new_basis]
            new_den //= g
        candidate = _Order(f, new_basis, new_den)
        growth = candidate.index_in(order)
        if growth == 1:
            break
        grew = True
        k = 0
        g_val = Fraction(1) / growth
        while g_val % p == 0:
            g_val /= p
            k += 1
        assert g_val == 1
        exponent += k
        order = candidate
    return order, exponent


def _mul_in_order(struct, u, v):
    n = len(u)
    out = [0] * n
    for i in range(n):
        if u[i]:
            for j in range(n):
                if v[j]:
                    row = struct[i][j]
                    for k in range(n):
                        out[k] += u[i] * v[j] * row[k]
    return out


def _coords_via_inverse(inv_rows, w):
    n = len(w)
    coords = [Fraction(0)] * n
    for k, wk in enumerate(w):
        if wk:
            for t in range(n):
                coords[t] += wk * inv_rows[k][t]
    for c in coords:
        assert c.denominator == 1
    return [int(c) for c in coords]


# ----------------------------------------------------------------------
# Irreducibility certificate
# ----------------------------------------------------------------------

def _subset_degree_sums(shape, n):
    reachable = 1  # bitset over 0..n
    for d, mult in shape:
        for _ in range(mult):
            reachable |= reachable << d
    return reachable


def irreducibility_certificate(f: IntPolynomial) -> IrreducibilityCertificate:
    """Degree-multiset intersection test mod the first 20 good primes.

    Certifies irreducibility when the only achievable rational factor
    degrees are 0 and n; otherwise returns inconclusive, with a witness
    factorization when one is cheap to exhibit.
    """
    if f.content() != 1:
        raise DomainError("certificate requires a primitive polynomial")
    n = f.degree
    if n < 1:
        raise DomainError("degree must be >= 1")
    if n == 1:
        return IrreducibilityCertificate("certified_irreducible", degree_sums=(0, 1))
    disc = discriminant(f)
    if disc == 0:
        parts = squarefree_part(f)
        witness = tuple(p.text() for p, _ in parts for _ in range(1))
        return IrreducibilityCertificate("inconclusive", witness=witness)
    witness = _integer_root_witness(f)
    mask = (1 << (n + 1)) - 1
    tested = 0
    p = 2
    while tested < 20:
        if (f.leading * disc) % p != 0:
            shape = modp.factor_shape_mod_p(f, p)
            mask &= _subset_degree_sums(shape, n)
            tested += 1
            if mask == (1 | (1 << n)) and witness is None:
                return IrreducibilityCertificate(
                    "certified_irreducible", degree_sums=(0, n))
        p = _next_prime(p)
    sums = tuple(k for k in range(n + 1) if mask >> k & 1)
    return IrreducibilityCertificate("inconclusive", witness=witness, degree_sums=sums)


def _next_prime(p):
    from .primes import is_prime
    p += 1
    while not is_prime(p):
        p += 1
    return p


def is_irreducible(f: IntPolynomial) -> bool:
    """Complete irreducibility decision for monic f.

    Fast path: the mod-p certificate. Fallback: screen every subset of
    complex roots whose product polynomial has near-integer coefficients,
    then confirm candidates by exact division, so the verdict never rests
    on floating point alone.
    """
    if irreducibility_certificate(f).certified:
        return True
    if discriminant(f) == 0:
        return False
    n = f.degree
    rs = complex_roots(f, 1e-13)
    roots = list(rs.roots)
    from itertools import combinations
    for size in range(1, n // 2 + 1):
        for subset in combinations(range(n), size):
            coeffs = [1.0 + 0.0j]
            for i in subset:
                new = [0.0j] * (len(coeffs) + 1)
                for k, c in enumerate(coeffs):
                    new[k + 1] += c
                    new[k] -= c * roots[i]
                coeffs = new
            # coeffs ascending; a true factor must be integral
            rounded = [round(c.real) for c in coeffs]
            if all(abs(c - r) < 1e-4 for c, r in zip(coeffs, rounded)):
                candidate = IntPolynomial.from_coefficients(rounded)
                try:
                    _q, rem = poly_divmod_exact_checked(f, candidate)
                except ValueError:
                    continue
                if not rem:
                    return False
    return True


def poly_divmod_exact_checked(f, g):
    from .algebra import poly_divmod_exact
    return poly_divmod_exact(f, g)


def _integer_root_witness(f: IntPolynomial):
    a0 = f.coefficients[0]
    if a0 == 0:
        return ("x", _cofactor_text(f, 0))
    try:
        facs = factorize(a0)
    except Exception:
        return None
    divisors = [1]
    for prime, exp in facs.items():
        if prime is None:
            continue
        divisors = [d * prime ** e for d in divisors for e in range(exp + 1)]
        if len(divisors) > 4096:
            return None
    for d in sorted(set(divisors)):
        for r in (d, -d):
            if f(r) == 0:
                return (f"x{-r:+d}".replace("+-", "-"), _cofactor_text(f, r))
    return None


def _cofactor_text(f: IntPolynomial, root: int):
    coeffs = list(f.coefficients)
    out = []
    carry = 0
    for c in reversed(coeffs):
        carry = carry * root + c
        out.append(carry)
    out.pop()  # remainder (zero)
    out.reverse()
    return IntPolynomial.from_coefficients(out).text()


# ----------------------------------------------------------------------
# Building the field
# ----------------------------------------------------------------------

_FIELD_CACHE: dict = {}


def build_number_field(f: IntPolynomial) -> NumberField:
    """Maximal order, signature, index and field discriminant of Q[x]/(f).

    f must be monic; irreducibility is certified first (cheap) and a
    DomainError raised if the certificate is inconclusive.
    """
    key = f.coefficients
    if key in _FIELD_CACHE:
        return _FIELD_CACHE[key].field
    if not f.is_monic:
        raise DomainError("defining polynomial must be monic")
    if not is_irreducible(f):
        raise DomainError(f"{f.text()} is reducible over the rationals")
    n = f.degree
    poly_disc = discriminant(f)
    r1_exact = sturm_real_root_count(f)
    if n <= 2:
        r1 = r1_exact
    else:
        rs = complex_roots(f, 1e-12)
        r1 = sum(1 for z in rs.roots if abs(z.imag) <= 1e-9 * (1 + abs(z)))
        assert r1 == r1_exact, "root-based signature disagrees with Sturm count"
    r2 = (n - r1) // 2
    assert r1 + 2 * r2 == n

    if n == 1:
        field = NumberField(f, 1, 1, 0, 1, 1, 1, ((Fraction(1),),))
        _FIELD_CACHE[key] = _FieldData(field)
        return field

    disc_factors = factorize(poly_disc)
    index = 1
    orders = []
    for p, exp in disc_factors.items():
        if exp < 2:
            continue
        if _dedekind_p_maximal(f, p):
            continue
        order, k = _round2_at_p(f, p, exp)
        index *= p ** k
        orders.append(order)
    if orders:
        den = 1
        for o in orders:
            den = den * o.den // math.gcd(den, o.den)
        rows = []
        for o in orders:
            scale = den // o.den
            rows.extend([x * scale for x in row] for row in o.basis)
        rows.extend([den if i == j else 0 for j in range(n)] for i in range(n))
        basis = la.hnf(rows, n)
        g = den
        for row in basis:
            for x in row:
                g = math.gcd(g, x)
        if g > 1:
            basis = [[x // g for x in row] for row in basis]
            den //= g
        max_order = _Order(f, basis, den)
        idx = Fraction(1) / max_order.index_in(_Order(f))
        assert idx == index, f"index mismatch {idx} vs {index}"
    else:
        max_order = _Order(f)
    field_disc, rem = divmod(poly_disc, index * index)
    assert rem == 0
    assert (field_disc < 0) == (r2 % 2 == 1), "discriminant sign vs signature"
    integral_basis = tuple(
        tuple(Fraction(x, max_order.den) for x in row) for row in max_order.basis)
    field = NumberField(f, n, r1, r2, poly_disc, index, field_disc, integral_basis)
    data = _FieldData(field)
    data.max_order = max_order
    _FIELD_CACHE[key] = data
    return field


class _FieldData:
    """Per-field cache: max order, splitting shapes, coefficient arrays."""

    def __init__(self, field: NumberField):
        self.field = field
        self.max_order = None
        self.shapes: dict = {}       # p -> tuple of (e, f) pairs
        self.linear_counts: dict = {}  # p -> N_p for large good primes
        self.shape_limit = 0
        self.coeff_array = None      # float64 a_n, 1-indexed via [n]
        self.coeff_limit = 0

    def order(self) -> _Order:
        if self.max_order is None:
            self.max_order = _Order(self.field.defining_poly)
        return self.max_order


def _field_data(K: NumberField) -> _FieldData:
    key = K.defining_poly.coefficients
    if key not in _FIELD_CACHE:
        build_number_field(K.defining_poly)
    return _FIELD_CACHE[key]


# ----------------------------------------------------------------------
# Prime splitting
# ----------------------------------------------------------------------

def prime_splitting(K: NumberField, p: int, override: dict | None = None) -> PrimeSplitting:
    """Shape (e_i, f_i) of p in O_K.

    Dedekind's theorem when p does not divide the index; otherwise the
    quotient O/pO is split by the kernel-of-Frobenius idempotent method,
    with ramification indices from ideal-power valuations. An override
    dict {p: [(e, f), ...]} short-circuits the computation.
    """
    if override and p in override:
        shape = tuple(sorted(tuple(ef) for ef in override[p]))
        _field_data(K).shapes[p] = shape
        return PrimeSplitting(p, shape)
    data = _field_data(K)
    if p in data.shapes:
        return PrimeSplitting(p, data.shapes[p])
    if K.index % p != 0:
        shape = tuple(sorted((mult, d) for d, mult in
                             modp.factor_shape_mod_p(K.defining_poly, p)))
    else:
        shape = _split_index_prime(K, data, p)
    assert sum(e * f for e, f in shape) == K.n_K
    data.shapes[p] = shape
    return PrimeSplitting(p, shape)


def _split_index_prime(K: NumberField, data: _FieldData, p: int):
    order = data.order()
    n = K.n_K
    struct = order.structure_constants()
    rad = _radical_mod_p(struct, p, n)
    components = _split_semisimple(struct, rad, p, n)
    residue_degrees = [len(comp) for comp in components]
    if K.field_disc % p != 0:
        shape = tuple(sorted((1, f) for f in residue_degrees))
        assert sum(f for _, f in shape) == n
        return shape
    # ramified index prime: valuations of p at each maximal ideal
    shape = []
    for comp in components:
        e = _ramification_index(order, struct, rad, components, comp, p, n)
        shape.append((e, len(comp)))
    shape = tuple(sorted(shape))
    if sum(e * f for e, f in shape) != n:
        raise OverrideRequiredError(p, f"inconsistent splitting of {p}: {shape}")
    return shape


def _split_semisimple(struct, rad, p, n):
    """Decompose (O/pO)/rad into its field components.

    Returns a list of components, each a list of basis vectors (length-n
    F_p coordinate rows of O/pO spanning the component's preimage together
    with the radical quotient structure).
    """
    # complement of the radical inside O/pO
    quotient_basis = _complement_basis(rad, p, n)
    rng = random.Random(zlib.crc32(repr((p, n, tuple(map(tuple, quotient_basis)))).encode()))

    def project(vec, rad_rows, comp_rows):
        # coords of vec in basis rad_rows + comp_rows; return comp part
        full = rad_rows + comp_rows
        sol = _solve_mod_p(full, vec, p)
        return sol[len(rad_rows):]

    def algebra_mult(u_coords, v_coords, comp_rows):
        n_c = len(comp_rows)
        u = [0] * n
        v = [0] * n
        for i in range(n_c):
            for j in range(n):
                u[j] = (u[j] + u_coords[i] * comp_rows[i][j]) % p
                v[j] = (v[j] + v_coords[i] * comp_rows[i][j]) % p
        w = _mul_mod_p(struct, u, v, p)
        return project(w, rad, comp_rows)

    def split(comp_rows):
        dim = len(comp_rows)
        if dim == 1:
            return [comp_rows]
        attempts = []
        for i in range(dim):
            e = [0] * dim
            e[i] = 1
            attempts.append(e)
        for _ in range(_SPLIT_ATTEMPT_CAP):
            attempts.append([rng.randrange(p) for _ in range(dim)])
        for x in attempts:
            mu = _minimal_poly(x, comp_rows, algebra_mult, p)
            factors = _factor_list(mu, p, rng)
            distinct = {tuple(f) for f in factors}
            if len(distinct) == 1 and len(factors) == 1 and len(factors[0]) - 1 == dim:
                return [comp_rows]
            if len(distinct) > 1:
                # min poly of an element of a semisimple algebra is squarefree
                assert len(distinct) == len(factors)
                pieces = []
                for fac in factors:
                    cof = modp.pdivmod(mu, fac, p)[0]
                    inv = _poly_inverse_mod(cof, fac, p)
                    idem_poly = modp.pmul(cof, inv, p)
                    idem = _eval_poly_in_algebra(idem_poly, x, comp_rows,
                                                 algebra_mult, p)
                    sub = _idempotent_image(idem, comp_rows, algebra_mult, p)
                    pieces.extend(split(sub))
                return pieces
        raise OverrideRequiredError(0, "semisimple split budget exhausted")

    return split(quotient_basis)


def _unit_rows(k):
    return [[1 if i == j else 0 for j in range(k)] for i in range(k)]


def _complement_basis(rad, p, n):
    rows = [list(v) for v in rad]
    pivots = set()
    reduced = []
    for row in rows:
        row = row[:]
        for pr, pc in reduced:
            if row[pc]:
                f = row[pc]
                row = [(a - f * b) % p for a, b in zip(row, pr)]
        for c in range(n):
            if row[c]:
                inv = pow(row[c], -1, p)
                row = [a * inv % p for a in row]
                reduced.append((row, c))
                pivots.add(c)
                break
    return [[1 if j == c else 0 for j in range(n)] for c in range(n)
            if c not in pivots]


def _solve_mod_p(rows, vec, p):
    """Coefficients c with sum c_i rows_i = vec over F_p."""
    m = len(rows)
    n = len(vec)
    aug = [[rows[i][j] for i in range(m)] + [vec[j]] for j in range(n)]
    # Gaussian elimination on the n x (m+1) system
    piv_cols = []
    r = 0
    for c in range(m):
        piv = None
        for i in range(r, n):
            if aug[i][c] % p:
                piv = i
                break
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = pow(aug[r][c], -1, p)
        aug[r] = [x * inv % p for x in aug[r]]
        for i in range(n):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [(x - f * y) % p for x, y in zip(aug[i], aug[r])]
        piv_cols.append(c)
        r += 1
    sol = [0] * m
    for i, c in enumerate(piv_cols):
        sol[c] = aug[i][m]
    for i in range(r, n):
        assert aug[i][m] % p == 0, "inconsistent projection"
    return sol


def _minimal_poly(x_coords, comp_rows, mult, p):
    dim = len(comp_rows)
    one = _solve_for_identity(comp_rows, mult, p)
    vectors = [one]
    power = one
    while True:
        power = mult(power, x_coords, comp_rows)
        rel = _dependency(vectors + [power], p)
        if rel is not None:
            return rel
        vectors.append(power)
        assert len(vectors) <= dim + 1


def _solve_for_identity(comp_rows, mult, p):
    """Coordinates of the multiplicative identity of the component."""
    dim = len(comp_rows)
    # solve e * b_i = b_i for all i: stack linear systems
    rows = []
    rhs = []
    for i in range(dim):
        basis_vec = [0] * dim
        basis_vec[i] = 1
        cols = []
        for j in range(dim):
            ej = [0] * dim
            ej[j] = 1
            cols.append(mult(ej, basis_vec, comp_rows))
        for slot in range(dim):
            rows.append([cols[j][slot] for j in range(dim)])
            rhs.append(basis_vec[slot])
    sol = _solve_linear_mod_p(rows, rhs, p)
    return sol


def _solve_linear_mod_p(rows, rhs, p):
    m = len(rows[0])
    aug = [row[:] + [b] for row, b in zip(rows, rhs)]
    piv_cols = []
    r = 0
    for c in range(m):
        piv = None
        for i in range(r, len(aug)):
            if aug[i][c] % p:
                piv = i
                break
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = pow(aug[r][c], -1, p)
        aug[r] = [x * inv % p for x in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [(x - f * y) % p for x, y in zip(aug[i], aug[r])]
        piv_cols.append(c)
        r += 1
    sol = [0] * m
    for i, c in enumerate(piv_cols):
        sol[c] = aug[i][m]
    return sol


def _dependency(vectors, p):
    """If the last vector depends on the previous ones, return the monic
    polynomial relation coefficients (ascending); else None."""
    k = len(vectors) - 1
    dim = len(vectors[0])
    rows = [[vectors[i][j] for i in range(k)] + [vectors[k][j]] for j in range(dim)]
    piv_cols = []
    r = 0
    aug = rows
    for c in range(k):
        piv = None
        for i in range(r, dim):
            if aug[i][c] % p:
                piv = i
                break
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = pow(aug[r][c], -1, p)
        aug[r] = [x * inv % p for x in aug[r]]
        for i in range(dim):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [(x - f * y) % p for x, y in zip(aug[i], aug[r])]
        piv_cols.append(c)
        r += 1
    for i in range(r, dim):
        if aug[i][k] % p:
            return None  # independent
    coeffs = [0] * k
    for i, c in enumerate(piv_cols):
        coeffs[c] = aug[i][k]
    rel = [(-c) % p for c in coeffs] + [1]
    return modp.trim(rel) if rel[-1] else rel


def _factor_list(mu, p, rng):
    """Irreducible factors (with multiplicity expanded) of list-poly mu."""
    out = []
    for sq, mult in modp._squarefree_decomposition(list(mu), p):
        for d, block in modp._distinct_degree(sq, p):
            for irr in modp._equal_degree_split(block, d, p, rng):
                out.extend([irr] * mult)
    out.sort(key=lambda f: (len(f), tuple(f)))
    return out


def _poly_inverse_mod(a, m, p):
    """a^{-1} mod m over F_p via extended Euclid."""
    r0, r1 = list(m), modp.pdivmod(a, m, p)[1]
    s0, s1 = [], [1]
    while r1:
        q, r2 = modp.pdivmod(r0, r1, p)
        qs1 = modp.pmul(q, s1, p)
        s2 = [(x - y) % p for x, y in
              zip(s0 + [0] * max(0, len(qs1) - len(s0)),
                  qs1 + [0] * max(0, len(s0) - len(qs1)))]
        r0, r1 = r1, r2
        s0, s1 = s1, modp.trim(s2) or []
    inv_lead = pow(r0[-1], -1, p)
    return modp.trim([x * inv_lead % p for x in s0])


def _eval_poly_in_algebra(poly, x_coords, comp_rows, mult, p):
    one = _solve_for_identity(comp_rows, mult, p)
    acc = [0] * len(comp_rows)
    for c in reversed(list(poly)):
        acc = mult(acc, x_coords, comp_rows)
        if c:
            acc = [(a + c * o) % p for a, o in zip(acc, one)]
    return acc


def _idempotent_image(idem, comp_rows, mult, p):
    dim = len(comp_rows)
    images = []
    for i in range(dim):
        e = [0] * dim
        e[i] = 1
        images.append(mult(idem, e, comp_rows))
    # row-reduce to a basis of the image, expressed in O/pO coordinates
    n = len(comp_rows[0])
    rows = []
    for img in images:
        vec = [0] * n
        for i, ci in enumerate(img):
            if ci:
                for j in range(n):
                    vec[j] = (vec[j] + ci * comp_rows[i][j]) % p
        rows.append(vec)
    basis = []
    reduced = []
    for row in rows:
        row = row[:]
        for pr, pc in reduced:
            if row[pc]:
                f = row[pc]
                row = [(a - f * b) % p for a, b in zip(row, pr)]
        for c in range(n):
            if row[c]:
                inv = pow(row[c], -1, p)
                row = [a * inv % p for a in row]
                reduced.append((row, c))
                basis.append(row)
                break
    return basis


def _ramification_index(order, struct, rad, components, comp, p, n):
    """v_P(p) for the maximal ideal P attached to one component."""
    # P = preimage of the ideal (other components + radical) in O, plus pO
    rows = [list(v) for v in rad]
    for other in components:
        if other is comp:
            continue
        rows.extend(list(v) for v in other)
    rows.extend([p if i == j else 0 for j in range(n)] for i in range(n))
    P = la.hnf(rows, n)
    cap = n + 2
    guard = [[p ** cap if i == j else 0 for j in range(n)] for i in range(n)]
    power = P
    e = 0
    while e <= n:
        ok = True
        for i in range(n):
            vec = [0] * n
            vec[i] = p
            if not la.lattice_contains(power, vec):
                ok = False
                break
        if not ok:
            break
        e += 1
        prod_rows = []
        for a in power:
            for b in P:
                prod_rows.append(_mul_in_order(struct, a, b))
        prod_rows.extend(guard)
        power = la.hnf(prod_rows, n)
    if e == 0 or e > n:
        raise OverrideRequiredError(p, f"valuation loop failed at p={p}")
    return e


# ----------------------------------------------------------------------
# Splitting tables and Dirichlet coefficients
# ----------------------------------------------------------------------

def _ensure_shapes(K: NumberField, limit: int, override=None):
    data = _field_data(K)
    if data.shape_limit >= limit:
        return data
    f = K.defining_poly
    bad = set(factorize(K.poly_disc * f.leading))
    plist = sieve_primes(limit).tolist()
    small_cut = max(int(limit ** 0.5) + 1, 1000)
    small = [p for p in plist if p not in bad and p <= small_cut
             and p not in data.shapes]
    large = np.array([p for p in plist
                      if p not in bad and p > small_cut
                      and p > data.shape_limit and p not in data.shapes],
                     dtype=np.int64)
    for p in small:
        data.shapes[p] = tuple(sorted((mult, d) for d, mult in
                                      modp.factor_shape_mod_p(f, p)))
    if len(large):
        counts = modp.batch_root_counts(f, large)
        for p, c in zip(large.tolist(), counts.tolist()):
            data.linear_counts[p] = int(c)
    for p in sorted(bad):
        if p <= limit and p not in data.shapes:
            prime_splitting(K, p, override)
    data.shape_limit = limit
    return data


def _norm_counts_for(data, p):
    """dict f -> N_{p^f} for one prime, from whichever cache layer has it."""
    if p in data.shapes:
        out = {}
        for e, f in data.shapes[p]:
            out[f] = out.get(f, 0) + 1
        return out
    if p in data.linear_counts:
        return {1: data.linear_counts[p]}
    raise KeyError(p)


def splitting_table(K: NumberField, X: int, override=None) -> SplittingTable:
    """N_q(K) for every prime power q <= X (zeros included)."""
    if X < 2:
        raise DomainError("cutoff must be >= 2")
    data = _ensure_shapes(K, X, override)
    counts = {}
    for q, p, k in prime_powers(X):
        counts[q] = _norm_counts_for(data, p).get(k, 0)
    return SplittingTable(cutoff=X, counts=counts)


def dirichlet_coefficients(K: NumberField, N: int, override=None) -> DirichletCoefficients:
    """Ideal-count coefficients a_1..a_N assembled from local Euler factors."""
    if N < 1:
        raise DomainError("N must be >= 1")
    arr = coefficient_array(K, N, override)
    return DirichletCoefficients(N=N, a=tuple(int(v) for v in arr[1:N + 1]))


def coefficient_array(K: NumberField, N: int, override=None) -> np.ndarray:
    """Float array a[0..N] with a[n] = #ideals of norm n (a[0] unused)."""
    data = _field_data(K)
    if data.coeff_array is not None and data.coeff_limit >= N:
        return data.coeff_array[: N + 1]
    _ensure_shapes(K, N, override)
    a = np.zeros(N + 1, dtype=np.float64)
    a[1] = 1.0
    for p in sieve_primes(N).tolist():
        # local coefficients c_k of prod_i (1 - T^{f_i})^{-1}
        kmax = 1
        while p ** (kmax + 1) <= N:
            kmax += 1
        if p in data.shapes:
            c = [1.0] + [0.0] * kmax
            for _e, f in data.shapes[p]:
                if f > kmax:
                    continue
                for k in range(f, kmax + 1):
                    c[k] += c[k - f]
        else:
            # only the linear count is known; p^2 > N so only c_1 matters
            c = [1.0, float(data.linear_counts[p])]
        idx = np.arange(1, N // p + 1)
        idx = idx[idx % p != 0]
        base_vals = a[idx]
        pk = p
        k = 1
        while pk <= N:
            if k < len(c) and c[k]:
                targets = idx[idx <= N // pk] * pk
                a[targets] += base_vals[: len(targets)] * c[k]
            pk *= p
            k += 1
    data.coeff_array = a
    data.coeff_limit = N
    return a


# ----------------------------------------------------------------------
# Splitting variance and the discriminant lower bound
# ----------------------------------------------------------------------

def variance_profile(f: IntPolynomial, K: NumberField, p: int) -> VarianceProfile:
    """Normalized variance of the conjugate reduction counts at p.

    Caller asserts K/Q Galois; uniformity of the factor degrees and
    ramification indices is cross-checked and NotUniformSplittingError
    raised otherwise. N_x counts multiplicities of roots of f mod p in the
    prime field; conjugates belonging to nonsplit factors contribute to no
    x, and N_infinity = 0 for monic integral f.
    """
    if K.index % p == 0:
        raise DomainError("variance profile requires p coprime to the index")
    factors = modp.factor_mod_p(f, p)
    degrees = {poly.degree for poly, _ in factors}
    mults = {mult for _, mult in factors}
    if len(degrees) != 1 or len(mults) != 1:
        raise NotUniformSplittingError(
            f"splitting of {p} is not uniform: {[(g.degree, m) for g, m in factors]}")
    f_p = degrees.pop()
    e_p = mults.pop()
    m = f.degree
    q = p ** f_p
    mean = m / (q + 1)
    square_sum = 0.0
    points_hit = 0
    for poly, mult in factors:
        if poly.degree == 1:
            square_sum += (mult - mean) ** 2
            points_hit += 1
    square_sum += (q + 1 - points_hit) * mean ** 2
    v_p = square_sum / (m * m)
    bz_term = (v_p + 1.0 / (q + 1) - 1.0 / m) * math.log(p) / e_p
    return VarianceProfile(q=q, e_p=e_p, f_p=f_p, V_p=v_p, bz_term=bz_term)


def bz_disc_lower_bound(f: IntPolynomial, K: NumberField) -> BoundReport:
    """log|D(f)| against the splitting-variance sum over q = p^{f_p} < m."""
    m = f.degree
    lhs = math.log(abs(K.poly_disc))
    terms = {}
    flags = []
    p = 2
    while p < m:
        sp = prime_splitting(K, p)
        degs = {ff for _, ff in sp.factors}
        es = {e for e, _ in sp.factors}
        if len(degs) != 1 or len(es) != 1:
            raise NotUniformSplittingError(f"nonuniform splitting at p={p}")
        f_p = degs.pop()
        e_p = es.pop()
        q = p ** f_p
        if q < m:
            if K.index % p != 0:
                vp = variance_profile(f, K, p)
                terms[f"p={p}"] = m * m * vp.bz_term
            else:
                term = (1.0 / (q + 1) - 1.0 / m) * math.log(p) / e_p
                terms[f"p={p}"] = m * m * term
                flags.append(p)
        p = _next_prime(p)
    report = BoundReport(
        theorem_id="splitting-variance-disc-bound",
        lhs=lhs,
        rhs_terms=terms or {"empty_sum": 0.0},
        asymptotic_slack=False,
        notes={"variance_dropped_at": flags,
               "holds": lhs >= math.fsum(terms.values()) - 1e-9},
    )
    return report
