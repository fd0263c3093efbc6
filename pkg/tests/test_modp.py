"""Factorization over prime fields and the batched prime sweeps."""

import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zetaheights import factor_mod_p
from zetaheights.algebra import IntPolynomial, parse_polynomial
from zetaheights.errors import LeadingCoeffVanishesError
from zetaheights.modp import (batch_root_counts, factor_shape_mod_p, pmul,
                              reduce_mod)
from zetaheights.primes import sieve_primes


def brute_force_roots(f, p):
    return [x for x in range(p) if f(x) % p == 0]


def test_factor_examples():
    f = parse_polynomial("x^2+1")
    got = factor_mod_p(f, 5)
    assert [(g.coefficients, m) for g, m in got] == [((2, 1), 1), ((3, 1), 1)]
    got2 = factor_mod_p(f, 2)
    assert [(g.coefficients, m) for g, m in got2] == [((1, 1), 2)]
    cubic = parse_polynomial("x^3+3*x+213")
    got3 = factor_mod_p(cubic, 2)
    assert [(g.coefficients, m) for g, m in got3] == [((1, 1, 0, 1), 1)]


def test_factor_leading_coeff_vanishes():
    f = IntPolynomial.from_coefficients([1, 1, 5])
    with pytest.raises(LeadingCoeffVanishesError):
        factor_mod_p(f, 5)


def test_factor_deterministic():
    f = parse_polynomial("x^6+2*x^4+3*x+1")
    a = factor_mod_p(f, 101)
    b = factor_mod_p(f, 101)
    assert a == b


def test_linear_factor_count_matches_brute_force():
    """Distinct linear factors of f mod p equal brute-force root counts."""
    rng = random.Random(23)
    primes = [int(p) for p in sieve_primes(49)]
    for _ in range(40):
        deg = rng.randint(1, 6)
        coeffs = [rng.randint(-40, 40) for _ in range(deg)] + [1]
        f = IntPolynomial.from_coefficients(coeffs)
        for p in primes:
            roots = brute_force_roots(f, p)
            factors = factor_mod_p(f, p)
            distinct = sum(1 for g, _m in factors if g.degree == 1)
            assert distinct == len(roots)
            root_set = {(-g.coefficients[0]) % p
                        for g, _m in factors if g.degree == 1}
            assert root_set == set(roots)


@given(st.lists(st.integers(-20, 20), min_size=2, max_size=7),
       st.sampled_from([2, 3, 5, 7, 11, 13]))
@settings(max_examples=150, deadline=None)
def test_factor_product_reconstructs(tail, p):
    coeffs = tail + [1]
    f = IntPolynomial.from_coefficients(coeffs)
    if f.degree < 1:
        return
    factors = factor_mod_p(f, p)
    prod = [1]
    for g, mult in factors:
        gp = reduce_mod(g, p)
        for _ in range(mult):
            prod = pmul(prod, gp, p)
    assert prod == reduce_mod(f, p)
    assert sum(g.degree * m for g, m in factors) == f.degree


def test_factor_shape_agrees_with_full_factorization():
    rng = random.Random(5)
    for _ in range(30):
        deg = rng.randint(1, 7)
        coeffs = [rng.randint(-30, 30) for _ in range(deg)] + [1]
        f = IntPolynomial.from_coefficients(coeffs)
        for p in (2, 3, 7, 19, 31):
            shape = factor_shape_mod_p(f, p)
            full = sorted((g.degree, m) for g, m in factor_mod_p(f, p))
            assert shape == full


def test_batch_root_counts_vs_brute_force():
    for text in ("x^3+3*x+213", "x^5+2*x^2+26", "x^4+18*x^2+60", "x^2+1"):
        f = parse_polynomial(text)
        from zetaheights.algebra import discriminant
        disc = discriminant(f)
        primes = np.array([p for p in sieve_primes(200).tolist()
                           if disc % p != 0], dtype=np.int64)
        counts = batch_root_counts(f, primes)
        for p, c in zip(primes.tolist(), counts.tolist()):
            assert c == len(brute_force_roots(f, p)), (text, p)


def test_batch_root_counts_large_prime_spot_check():
    from sympy import Poly, symbols, factor_list
    x = symbols("x")
    f = parse_polynomial("x^5+42")
    primes = np.array([1000003, 1000033, 1000037, 999983], dtype=np.int64)
    counts = batch_root_counts(f, primes)
    for p, got in zip(primes.tolist(), counts.tolist()):
        fl = factor_list(Poly([1, 0, 0, 0, 0, 42], x), modulus=p)
        want = sum(1 for g, _m in fl[1] if g.degree() == 1)
        assert got == want, p
