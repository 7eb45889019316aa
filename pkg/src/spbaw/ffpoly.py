"""Monic polynomials over F_q and the elementary-divisor families.

A polynomial is a tuple of GF-encoded coefficients, constant term first,
with leading coefficient 1.  The families:

  F0 = {X-1, X+1}
  F1 = irreducible, self-star, not X or X+-1  (even degree)
  F2 = Delta * Delta^* with Delta irreducible, not self-star, not X or X+-1

star(g) is the monic polynomial whose roots are the inverses of the roots
of g; frobenius(g, i) the one whose roots are the p^i-th powers.
"""

import json
from dataclasses import dataclass
from functools import lru_cache

from .fieldctx import order_mod


def poly_x_minus_one(ctx):
    return (ctx.gf.neg(1), 1)


def poly_x_plus_one(ctx):
    return (1, 1)


def poly_deg(g):
    return len(g) - 1


def poly_trim(coeffs):
    c = list(coeffs)
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return tuple(c)


def poly_mul(a, b, gf):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = gf.add(out[i + j], gf.mul(ai, bj))
    return poly_trim(out)


def poly_rem(a, m, gf):
    """Remainder of a modulo monic m."""
    assert m[-1] == 1
    a = list(a)
    dm = poly_deg(m)
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i]
        if c:
            a[i] = 0
            for j in range(dm):
                a[i - dm + j] = gf.sub(a[i - dm + j], gf.mul(c, m[j]))
    return poly_trim(a[:dm] if dm else (0,))


def poly_powmod(base, n, m, gf):
    out = (1,)
    base = poly_rem(base, m, gf)
    while n:
        if n & 1:
            out = poly_rem(poly_mul(out, base, gf), m, gf)
        base = poly_rem(poly_mul(base, base, gf), m, gf)
        n >>= 1
    return out


def poly_monic(g, gf):
    lead = g[-1]
    if lead == 1:
        return g
    inv = gf.inv(lead)
    return tuple(gf.mul(c, inv) for c in g)


def poly_gcd(a, b, gf):
    a, b = poly_trim(a), poly_trim(b)
    while b != (0,):
        a, b = b, poly_rem(a, poly_monic(b, gf), gf)
    return poly_monic(a, gf) if a != (0,) else a


def is_irreducible(g, ctx):
    """g monic of degree d is irreducible iff X^(q^d) = X mod g and
    gcd(X^(q^(d/r)) - X, g) = 1 for every prime r dividing d."""
    gf = ctx.gf
    d = poly_deg(g)
    if d < 1:
        return False
    if d == 1:
        return True
    x = (0, 1)
    xq = poly_powmod(x, ctx.q ** d, g, gf)
    if xq != poly_rem(x, g, gf):
        return False
    for r in _prime_divisors(d):
        xqr = poly_powmod(x, ctx.q ** (d // r), g, gf)
        diff = poly_trim(tuple(gf.sub(a, b) for a, b in
                               _zip_pad(xqr, poly_rem(x, g, gf))))
        if poly_gcd(diff, g, gf) != (1,):
            return False
    return True


def _zip_pad(a, b):
    n = max(len(a), len(b))
    return zip(a + (0,) * (n - len(a)), b + (0,) * (n - len(b)))


def _prime_divisors(n):
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def enumerate_irreducibles(ctx, maxdeg):
    """All monic irreducibles of degree <= maxdeg, ordered by
    (degree, coefficient vector)."""
    assert maxdeg >= 1
    if ctx.q ** maxdeg > 10 ** 7:
        raise ValueError("irreducible enumeration frontier exceeds the work limit")
    out = []
    for d in range(1, maxdeg + 1):
        for enc in range(ctx.q ** d):
            coeffs = tuple((enc // ctx.q ** i) % ctx.q for i in range(d)) + (1,)
            if is_irreducible(coeffs, ctx):
                out.append(coeffs)
    return out


def star(g, ctx):
    """Monic polynomial with root multiset {1/a : a root of g}."""
    if g[0] == 0:
        raise ValueError("star is undefined when X divides g")
    rev = tuple(reversed(g))
    return poly_monic(rev, ctx.gf)


def _min_poly_of_power(g, power, ctx):
    """Minimal polynomial of t^power in F_q[t]/(g), g irreducible.

    Found as the first linear dependency among 1, b, b^2, ... via exact
    Gaussian elimination over F_q.
    """
    gf = ctx.gf
    d = poly_deg(g)
    b = poly_powmod((0, 1), power, g, gf)
    # rows[k] = coefficient vector of b^k, length d
    rows = []
    cur = (1,)
    for _ in range(d + 1):
        vec = list(cur) + [0] * (d - len(cur))
        rows.append(vec)
        cur = poly_rem(poly_mul(cur, b, gf), g, gf)
    # eliminate: find smallest k with rows[0..k] dependent; solve for the
    # monic dependency.  Gaussian elimination with an augmented identity.
    aug = [rows[k] + [1 if j == k else 0 for j in range(d + 1)]
           for k in range(d + 1)]
    pivots = {}
    for row in aug:
        r = row[:]
        for col, prow in pivots.items():
            c = r[col]
            if c:
                r = [gf.sub(x, gf.mul(c, y)) for x, y in zip(r, prow)]
        lead = next((i for i in range(d) if r[i]), None)
        if lead is None:
            coeffs = r[d:]
            mp = poly_trim(tuple(coeffs))
            return poly_monic(mp, gf)
        inv = gf.inv(r[lead])
        pivots[lead] = [gf.mul(x, inv) for x in r]
    raise AssertionError("no dependency found")


def frobenius(g, i, ctx):
    """Polynomial whose roots are the p^i-th powers of the roots of g.

    g must be irreducible or an F2 product; an F2 product is mapped
    factorwise and re-assembled.
    """
    assert i >= 0
    if i == 0:
        return g
    if is_irreducible(g, ctx):
        return _min_poly_of_power(g, ctx.p ** i, ctx)
    delta = _split_f2(g, ctx)
    img = _min_poly_of_power(delta, ctx.p ** i, ctx)
    return poly_mul(img, star(img, ctx), ctx.gf)


def _split_f2(g, ctx):
    """Canonical irreducible factor of an F2 product (lex-smaller of the
    star pair)."""
    d = poly_deg(g)
    assert d % 2 == 0 and d >= 2
    half = d // 2
    for enc in range(ctx.q ** half):
        cand = tuple((enc // ctx.q ** i) % ctx.q for i in range(half)) + (1,)
        if cand[0] == 0:
            continue
        if poly_rem(g, cand, ctx.gf) == (0,) and is_irreducible(cand, ctx):
            st = star(cand, ctx)
            if st != cand and poly_mul(cand, st, ctx.gf) == g:
                return min(cand, st)
    raise ValueError(f"{g} is not an F2 product")


@dataclass(frozen=True)
class PolyClass:
    """A classified elementary divisor with its invariants."""
    gamma: tuple          # the polynomial (for F2, the product)
    factor: tuple         # canonical irreducible factor (= gamma unless F2)
    family: str           # "F0", "F1" or "F2"
    e_gamma: int
    _delta: int
    _sign: int

    @property
    def deg(self):
        return poly_deg(self.gamma)

    @property
    def beta(self):
        return 2 if self.family == "F0" else 1

    @property
    def delta(self):
        # no formula consumes delta or sign for F0; any read is a bug
        assert self.family != "F0", "delta of an F0 class is never used"
        return self._delta

    @property
    def sign(self):
        assert self.family != "F0", "sign of an F0 class is never used"
        return self._sign

    def sort_key(self):
        return (self.deg, self.gamma)

    def __repr__(self):
        return f"PolyClass({self.family}, {list(self.gamma)})"


def classify(g, ctx):
    """Classify g into F0/F1/F2 and compute its invariants."""
    g = poly_trim(g)
    if g[-1] != 1:
        raise ValueError("polynomial must be monic")
    if g[0] == 0:
        raise ValueError("X does not belong to any family")
    if g == poly_x_minus_one(ctx) or g == poly_x_plus_one(ctx):
        return PolyClass(gamma=g, factor=g, family="F0",
                         e_gamma=ctx.e, _delta=1, _sign=1)
    if is_irreducible(g, ctx):
        if star(g, ctx) != g:
            raise ValueError("irreducible but not self-star: classify its F2 product instead")
        d = poly_deg(g)
        assert d % 2 == 0, "self-star irreducibles away from X+-1 have even degree"
        delta, sign = d // 2, -1
    else:
        factor = _split_f2(g, ctx)
        delta, sign = poly_deg(factor), 1
        return PolyClass(gamma=g, factor=factor, family="F2",
                         e_gamma=order_mod(sign * ctx.q ** delta % ctx.ell, ctx.ell),
                         _delta=delta, _sign=sign)
    return PolyClass(gamma=g, factor=g, family="F1",
                     e_gamma=order_mod(sign * ctx.q ** delta % ctx.ell, ctx.ell),
                     _delta=delta, _sign=sign)


def is_ell_prime_order(pc, ctx):
    """True iff every root of the class has order prime to ell."""
    gf = ctx.gf
    factors = [pc.factor] if pc.family != "F2" else [pc.factor, star(pc.factor, ctx)]
    results = set()
    for fac in factors:
        d = poly_deg(fac)
        m = ctx.q ** d - 1
        while m % ctx.ell == 0:
            m //= ctx.ell
        results.add(poly_powmod((0, 1), m, fac, gf) == (1,))
    assert len(results) == 1, "star-paired factors must agree on root order"
    return results.pop()


def enumerate_classes(ctx, max_total_deg, ell_prime_only=False):
    """All elementary-divisor classes of degree <= max_total_deg, sorted.

    F1 needs irreducibles up to max_total_deg; F2 products of degree 2d
    need irreducible factors up to max_total_deg // 2.
    """
    return list(_enumerate_classes_cached(ctx, max_total_deg, ell_prime_only))


@lru_cache(maxsize=None)
def _enumerate_classes_cached(ctx, max_total_deg, ell_prime_only):
    classes = [classify(poly_x_minus_one(ctx), ctx)]
    if max_total_deg >= 1:
        classes.append(classify(poly_x_plus_one(ctx), ctx))
    seen_f2 = set()
    for g in enumerate_irreducibles(ctx, max_total_deg) if max_total_deg >= 1 else []:
        if g[0] == 0 or g in (poly_x_minus_one(ctx), poly_x_plus_one(ctx)):
            continue
        st = star(g, ctx)
        if st == g:
            classes.append(classify(g, ctx))
        else:
            rep = min(g, st)
            if rep in seen_f2 or 2 * poly_deg(g) > max_total_deg:
                continue
            seen_f2.add(rep)
            classes.append(classify(poly_mul(g, st, ctx.gf), ctx))
    if ell_prime_only:
        classes = [pc for pc in classes if is_ell_prime_order(pc, ctx)]
    return tuple(sorted(classes, key=PolyClass.sort_key))


def frobenius_class(pc, i, ctx):
    """The classified image of a class under the p^i-power map.

    The full q-power map permutes the roots of every member of F, so the
    action on classes only depends on i mod f.
    """
    i %= ctx.f
    if i == 0:
        return pc
    return _frobenius_class_cached(pc, i, ctx)


@lru_cache(maxsize=None)
def _frobenius_class_cached(pc, i, ctx):
    img = frobenius(pc.gamma, i, ctx)
    out = classify(img, ctx)
    assert out.family == pc.family and out.e_gamma == pc.e_gamma
    return out


def dump_classes_jsonl(ctx, max_total_deg):
    """JSON-lines dump of the classified table (coefficients as integers)."""
    lines = []
    for pc in enumerate_classes(ctx, max_total_deg):
        f0 = pc.family == "F0"
        lines.append(json.dumps({
            "coeffs": list(pc.gamma),
            "family": pc.family,
            "delta": None if f0 else pc.delta,
            "sign": None if f0 else pc.sign,
            "eGamma": pc.e_gamma,
            "betaGamma": pc.beta,
        }, sort_keys=True))
    return "\n".join(lines) + "\n"
