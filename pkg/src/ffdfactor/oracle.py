"""Brute-force factorization census over small prime fields.

The census is deliberately independent of the bilinear-system machinery in
:mod:`ffdfactor.ansatz`: it never looks at the structure tensor. For each
degree split it walks through every left factor ``b`` of ``V_n1`` (one per
scalar class), multiplies ``b`` by each basis monomial of ``V_n2`` with the
ring's own multiplication and solves ``b*c = a`` for ``c`` by Gaussian
elimination modulo ``p``. Finite fields make this exhaustive.
"""

from __future__ import annotations

import csv
import io
import random
from dataclasses import dataclass, field as dc_field
from itertools import product

from .errors import BadParameter, BoundViolation, FieldMismatch, TooLarge, UnitInput, ZeroInput
from .fields import PrimeField
from .linalg import affine_solutions_mod_p
from .pbw import PBWPolynomial, is_unit, weighted_degree

BUDGET = 10 ** 7


@dataclass
class CensusReport:
    element: PBWPolynomial
    pairs: list = dc_field(default_factory=list)
    boundTwoFactor: int = 0

    @property
    def count(self):
        return len(self.pairs)

    @property
    def withinBound(self):
        return self.count <= self.boundTwoFactor

    def pair_strings(self):
        return [(str(b), str(c)) for b, c in self.pairs]

    def to_json(self):
        return {
            "element": str(self.element),
            "pairs": [list(p) for p in self.pair_strings()],
            "count": self.count,
            "boundTwoFactor": self.boundTwoFactor,
            "withinBound": self.withinBound,
        }


def _two_factor_bound(ring, n):
    g = ring.growth(n)
    return n * 4 ** g // 4


def _normalize(b, c):
    lc = b.leading_coefficient()
    inv = b.ring.field.one / lc
    return b * inv, c * lc


def _projective_vectors(p, length):
    """One representative per scalar class of nonzero vectors in ``F_p^length``.

    The last nonzero coordinate is 1.
    """
    for s in range(length):
        for head in product(range(p), repeat=s):
            yield head + (1,) + (0,) * (length - 1 - s)


def _prime_field(a):
    field = a.ring.field
    if not isinstance(field, PrimeField):
        raise FieldMismatch("the census runs over prime fields only")
    return field


def _check_input(a):
    if not a:
        raise ZeroInput("cannot take a census of zero")
    if is_unit(a):
        raise UnitInput(f"{a} is a unit")


def census_two(a, budget=BUDGET):
    """Every factorization ``a = b*c`` into two non-units, up to scalars."""
    _check_input(a)
    field = _prime_field(a)
    ring = a.ring
    ring.require_admissible()
    p = field.p
    n = weighted_degree(a)
    found = set()
    for n1 in range(1, n):
        n2 = n - n1
        v_basis = ring.monomials_upto(n1)
        w_basis = ring.monomials_upto(n2)
        if p ** len(v_basis) > budget:
            raise TooLarge(f"split ({n1},{n2}) needs {p}^{len(v_basis)} left factors")
        found.update(_census_split(a, v_basis, w_basis, p))
    pairs = sorted(found, key=lambda bc: (str(bc[0]), str(bc[1])))
    for b, c in pairs:
        if b * c != a:
            raise AssertionError(f"census produced ({b})*({c}) != {a}")
    return CensusReport(a, pairs, _two_factor_bound(ring, n))


def _census_split(a, v_basis, w_basis, p):
    ring = a.ring
    field = ring.field
    w_monos = [ring.monomial(w) for w in w_basis]
    out = []
    for coords in _projective_vectors(p, len(v_basis)):
        b = PBWPolynomial(ring, {v: field(x) for v, x in zip(v_basis, coords) if x})
        if is_unit(b):
            continue
        columns = [b * w for w in w_monos]
        rows_index = {}
        for col in columns:
            for e in col.terms:
                rows_index.setdefault(e, len(rows_index))
        if any(e not in rows_index for e in a.terms):
            continue
        rows = [[0] * len(w_basis) for _ in rows_index]
        for j, col in enumerate(columns):
            for e, c in col.terms.items():
                rows[rows_index[e]][j] = int(c)
        rhs = [0] * len(rows_index)
        for e, c in a.terms.items():
            rhs[rows_index[e]] = int(c)
        sol = affine_solutions_mod_p(rows, rhs, p)
        if sol is None:
            continue
        particular, kernel = sol
        # b*c = a has at most one solution c in a domain
        if kernel:
            raise AssertionError(f"left multiplication by {b} is not injective")
        c = PBWPolynomial(ring, {w: field(y) for w, y in zip(w_basis, particular) if y})
        if c and not is_unit(c):
            out.append(_normalize(b, c))
    return out


def census_two_paranoid(a):
    """The census by enumerating both factors; for ``p <= 3`` and degree ``<= 2``."""
    _check_input(a)
    field = _prime_field(a)
    n = weighted_degree(a)
    if field.p > 3 or n > 2:
        raise BadParameter("paranoid census is limited to p <= 3 and degree <= 2")
    ring = a.ring
    found = set()
    for n1 in range(1, n):
        v_basis = ring.monomials_upto(n1)
        w_basis = ring.monomials_upto(n - n1)
        for xs in product(field.elements(), repeat=len(v_basis)):
            b = PBWPolynomial(ring, {v: x for v, x in zip(v_basis, xs) if x})
            if not b or is_unit(b):
                continue
            for ys in product(field.elements(), repeat=len(w_basis)):
                c = PBWPolynomial(ring, {w: y for w, y in zip(w_basis, ys) if y})
                if not c or is_unit(c):
                    continue
                if b * c == a:
                    found.add(_normalize(b, c))
    pairs = sorted(found, key=lambda bc: (str(bc[0]), str(bc[1])))
    return CensusReport(a, pairs, _two_factor_bound(ring, n))


def _random_nonunit(ring, rng, level):
    basis = ring.monomials_upto(level)
    p = ring.field.p
    while True:
        coords = [rng.randrange(p) for _ in basis]
        f = PBWPolynomial(ring, {e: ring.field(c) for e, c in zip(basis, coords) if c})
        if f and not is_unit(f):
            return f


def sweep_elements(ring, degree_bound, sample, seed=0):
    """All non-unit monomials of degree ``<= degree_bound`` followed by ``sample``
    uniformly random non-units of ``V_degree_bound``."""
    if degree_bound < 1:
        return []
    monos = [ring.monomial(e) for e in ring.monomials_upto(degree_bound) if any(e)]
    rng = random.Random(seed)
    return monos + [_random_nonunit(ring, rng, degree_bound) for _ in range(sample)]


def census_sweep(ring, degree_bound, sample, seed=0, budget=BUDGET):
    """Census reports for every element of :func:`sweep_elements`.

    Raises :class:`BoundViolation` if any count exceeds the two-factor bound.
    """
    if not isinstance(ring.field, PrimeField):
        raise FieldMismatch("the census runs over prime fields only")
    reports = []
    for a in sweep_elements(ring, degree_bound, sample, seed):
        report = census_two(a, budget)
        if not report.withinBound:
            raise BoundViolation(f"{a}: {report.count} > {report.boundTwoFactor}")
        reports.append(report)
    return reports


def reports_to_csv(reports):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["element", "count", "boundTwoFactor", "withinBound", "pairs"])
    for r in reports:
        pairs = "; ".join(f"({b})*({c})" for b, c in r.pair_strings())
        writer.writerow([str(r.element), r.count, r.boundTwoFactor, str(r.withinBound).lower(), pairs])
    return buf.getvalue()
