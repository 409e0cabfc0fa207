"""Commutative Buchberger algorithm and zero-dimensional solving.

Polynomials are dicts ``{exponent tuple: coefficient}`` over any exact field
whose elements support ``+ - * /``. Variable 0 is the largest in every order.
"""

from __future__ import annotations

from .errors import PositiveDimensional
from .fields import UniPoly, field_roots


def lex_key(e):
    return e


def grevlex_key(e):
    return (sum(e), tuple(-a for a in reversed(e)))


ORDERS = {"lex": lex_key, "grevlex": grevlex_key}


class Poly:
    """Commutative polynomial with cached leading term."""

    __slots__ = ("terms", "key", "lm", "lc")

    def __init__(self, terms, key):
        self.terms = terms
        self.key = key
        if terms:
            self.lm = max(terms, key=key)
            self.lc = terms[self.lm]
        else:
            self.lm = None
            self.lc = None

    def monic(self, one):
        if not self.terms or self.lc == one:
            return self
        inv = one / self.lc
        return Poly({e: c * inv for e, c in self.terms.items()}, self.key)

    def is_constant(self):
        return len(self.terms) == 1 and not any(self.lm)

    def __repr__(self):
        return f"Poly({self.terms!r})"


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _add_scaled(acc, poly_terms, shift, scale):
    for e, c in poly_terms.items():
        m = tuple(x + y for x, y in zip(e, shift))
        v = acc.get(m)
        v = -scale * c if v is None else v - scale * c
        if v:
            acc[m] = v
        else:
            del acc[m]


def reduce(terms, basis, key, one):
    """Full normal form of ``terms`` modulo ``basis`` (a list of monic Polys)."""
    p = dict(terms)
    rem = {}
    while p:
        lt = max(p, key=key)
        c = p[lt]
        for g in basis:
            if _divides(g.lm, lt):
                _add_scaled(p, g.terms, _sub(lt, g.lm), c)
                break
        else:
            rem[lt] = c
            del p[lt]
    return rem


def _spoly(f, g, key):
    lcm = _lcm(f.lm, g.lm)
    acc = {}
    _add_scaled(acc, f.terms, _sub(lcm, f.lm), -1)
    _add_scaled(acc, g.terms, _sub(lcm, g.lm), 1)
    return acc


def groebner(polys, nvars, one, order="lex"):
    """Reduced Groebner basis (list of monic :class:`Poly`).

    Buchberger's algorithm with the coprime-leading-monomial criterion and
    the chain criterion; pairs are processed by increasing lcm degree.
    """
    key = ORDERS[order]
    basis = []
    for t in polys:
        p = Poly({e: c for e, c in t.items() if c}, key)
        if p.terms:
            basis.append(p.monic(one))
    if not basis:
        return []
    if any(p.is_constant() for p in basis):
        return [Poly({(0,) * nvars: one}, key)]

    G = []
    pairs = set()
    for p in basis:
        r = Poly(reduce(p.terms, G, key, one), key)
        if r.terms:
            _add_to_basis(G, r.monic(one), pairs)
    done = set()
    while pairs:
        i, j = min(pairs, key=lambda ij: (sum(_lcm(G[ij[0]].lm, G[ij[1]].lm)), ij))
        pairs.discard((i, j))
        done.add((i, j))
        f, g = G[i], G[j]
        lcm = _lcm(f.lm, g.lm)
        if all(a == 0 or b == 0 for a, b in zip(f.lm, g.lm)):
            continue
        if _chain_criterion(G, i, j, lcm, pairs):
            continue
        r = Poly(reduce(_spoly(f, g, key), G, key, one), key)
        if r.terms:
            r = r.monic(one)
            if r.is_constant():
                return [Poly({(0,) * nvars: one}, key)]
            _add_to_basis(G, r, pairs)
    return _reduced(G, key, one)


def _add_to_basis(G, p, pairs):
    k = len(G)
    G.append(p)
    for i in range(k):
        if G[i] is not None:
            pairs.add((i, k))


def _chain_criterion(G, i, j, lcm, pairs):
    for k in range(len(G)):
        if k in (i, j):
            continue
        if not _divides(G[k].lm, lcm):
            continue
        if (min(i, k), max(i, k)) in pairs or (min(j, k), max(j, k)) in pairs:
            continue
        return True
    return False


def _reduced(G, key, one):
    minimal = []
    lms = [g.lm for g in G]
    for idx, g in enumerate(G):
        if any(_divides(lms[o], g.lm) and (lms[o] != g.lm or o < idx)
               for o in range(len(G)) if o != idx):
            continue
        minimal.append(g)
    out = []
    for idx, g in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1:]
        tail = {e: c for e, c in g.terms.items() if e != g.lm}
        red = reduce(tail, others, key, one)
        red[g.lm] = g.lc
        out.append(Poly(red, key).monic(one))
    out.sort(key=lambda p: key(p.lm))
    return out


def is_zero_dimensional(G, nvars):
    """Every variable has a pure power among the leading monomials."""
    if not G:
        return nvars == 0
    if len(G) == 1 and G[0].is_constant():
        return True
    for v in range(nvars):
        if not any(g.lm[v] > 0 and sum(g.lm) == g.lm[v] for g in G):
            return False
    return True


def solve_zero_dim(polys, nvars, field, active=None):
    """All solutions with coordinates in ``field`` of a zero-dimensional system.

    Returns ``(solutions, extension_flag)`` where each solution is a tuple of
    length ``nvars`` and ``extension_flag`` reports univariate eliminants
    with roots outside ``field``. Raises :class:`PositiveDimensional`.
    """
    one = field.one
    active = list(range(nvars)) if active is None else active
    G = groebner(polys, nvars, one, "lex")
    if not G:
        if active:
            raise PositiveDimensional("empty system in free variables")
        return [()], False
    if G[0].is_constant():
        return [], False
    if not is_zero_dimensional_in(G, active):
        raise PositiveDimensional("ansatz ideal is not zero-dimensional")
    last = active[-1]
    uni = [g for g in G if all(e[v] == 0 for e in g.terms for v in active if v != last)]
    if not uni:
        raise PositiveDimensional(f"no eliminant in variable {last}")
    coeffs = [field.zero] * (max(e[last] for e in uni[0].terms) + 1)
    for e, c in uni[0].terms.items():
        coeffs[e[last]] = c
    roots, flag = field_roots(UniPoly(field, coeffs))
    solutions = []
    for r in sorted(roots, key=str):
        sub = [_substitute(g.terms, last, r, field) for g in G]
        rest, sub_flag = solve_zero_dim([s for s in sub if s], nvars, field, active[:-1])
        flag = flag or sub_flag
        for sol in rest:
            solutions.append(sol + (r,))
    return solutions, flag


def is_zero_dimensional_in(G, active):
    for v in active:
        if not any(g.lm[v] > 0 and all(g.lm[o] == 0 for o in active if o != v) for g in G):
            return False
    return True


def _substitute(terms, var, value, field):
    out = {}
    for e, c in terms.items():
        k = e[var]
        m = e[:var] + (0,) + e[var + 1:]
        v = c * value ** k if k else c
        s = out.get(m, field.zero) + v
        if s:
            out[m] = s
        else:
            out.pop(m, None)
    return out
