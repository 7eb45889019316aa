"""Label sets: semisimple class labels of SO_{2n+1}(q), block labels,
Brauer-character labels and weight labels in ordered-quotient (Q) and
core-tower (K) form.

A semisimple class is recorded by its multiplicity function on the
elementary-divisor classes plus the type signs at X-1 and X+1.  A block
label is (s, kappa, i) where kappa assigns an e_Gamma-core (partition for
F1/F2, symbol for X+-1) to each divisor and i in Z/2 collapses exactly
when kappa at X+1 is degenerate.  The X+-1 symbol components use hooks
for linear primes and cohooks for unitary ones.
"""

from dataclasses import dataclass
from functools import lru_cache

from . import ffpoly, partcomb, symbcomb
from .ffpoly import PolyClass
from .symbcomb import LSymbol


def x_minus_class(ctx):
    return ffpoly.classify(ffpoly.poly_x_minus_one(ctx), ctx)


def x_plus_class(ctx):
    return ffpoly.classify(ffpoly.poly_x_plus_one(ctx), ctx)


def is_x_minus(pc, ctx):
    return pc.family == "F0" and pc.gamma == ffpoly.poly_x_minus_one(ctx)


def is_x_plus(pc, ctx):
    return pc.family == "F0" and pc.gamma == ffpoly.poly_x_plus_one(ctx)


# ---------------------------------------------------------------------------
# semisimple labels

@dataclass(frozen=True)
class SemisimpleLabel:
    """Multiplicity function plus type signs; determines the class."""
    entries: tuple          # sorted ((PolyClass, mult), ...), mult >= 1
    eta_plus: int | None    # sign at X+1, present iff its multiplicity > 0
    eta_minus: int

    def mult(self, pc):
        for c, m in self.entries:
            if c == pc:
                return m
        return 0

    def support(self):
        return tuple(c for c, _ in self.entries)

    def sort_key(self):
        return (tuple((c.sort_key(), m) for c, m in self.entries),
                self.eta_plus or 0, self.eta_minus)

    def __repr__(self):
        parts = ", ".join(f"{list(c.gamma)}^{m}" for c, m in self.entries)
        return f"SemisimpleLabel({parts}; eta+={self.eta_plus}, eta-={self.eta_minus})"


def eta_of_class(pc, mult):
    """Type sign of the orthogonal summand for an F1/F2 divisor; forced by
    the multiplicity."""
    assert pc.family != "F0"
    return pc.sign ** mult if pc.sign == -1 else 1


ETA_GLOBAL_PRODUCT = 1  # normalization constant for eta at X-1


def _make_semisimple(ctx, items, eta_plus):
    items = tuple(sorted(items, key=lambda cm: cm[0].sort_key()))
    prod = eta_plus if eta_plus is not None else 1
    for pc, m in items:
        if pc.family != "F0":
            prod *= eta_of_class(pc, m)
    eta_minus = ETA_GLOBAL_PRODUCT * prod
    return SemisimpleLabel(entries=items, eta_plus=eta_plus, eta_minus=eta_minus)


def enumerate_semisimple(ctx, n, ell_prime_only=True):
    """All semisimple class labels for SO_{2n+1}(q); the eigenvalue 1 is
    always present with odd multiplicity and the multiplicity at X+1 is
    even."""
    assert n >= 1
    dim = 2 * n + 1
    xm, xp = x_minus_class(ctx), x_plus_class(ctx)
    others = [pc for pc in ffpoly.enumerate_classes(ctx, dim - 1, ell_prime_only)
              if pc.family != "F0"]
    out = []

    def rec(idx, budget, chosen):
        if idx == len(others):
            for m_plus in range(0, budget + 1, 2):
                m_minus = budget - m_plus
                if m_minus % 2 == 1:
                    items = chosen + [(xm, m_minus)]
                    if m_plus:
                        items = items + [(xp, m_plus)]
                        for eta in (1, -1):
                            out.append(_make_semisimple(ctx, items, eta))
                    else:
                        out.append(_make_semisimple(ctx, items, None))
            return
        pc = others[idx]
        rec(idx + 1, budget, chosen)
        m = 1
        while m * pc.deg <= budget - 1:
            rec(idx + 1, budget - m * pc.deg, chosen + [(pc, m)])
            m += 1

    rec(0, dim, [])
    return sorted(out, key=SemisimpleLabel.sort_key)


# ---------------------------------------------------------------------------
# block labels and condition (C)

@dataclass(frozen=True)
class BlockLabel:
    s: SemisimpleLabel
    kappa: tuple            # sorted ((PolyClass, core), ...), core partition or LSymbol
    i: int
    i_collapsed: bool

    def core_of(self, pc):
        for c, k in self.kappa:
            if c == pc:
                return k
        return None

    def sort_key(self):
        return (self.s.sort_key(), _assignment_key(self.kappa), self.i)

    def __repr__(self):
        return f"BlockLabel(s={self.s!r}, kappa={self.kappa}, i={self.i})"


def _assignment_key(entries):
    out = []
    for pc, val in entries:
        if isinstance(val, LSymbol):
            out.append((pc.sort_key(), ("s",) + val.rows))
        else:
            out.append((pc.sort_key(), ("p", val)))
    return tuple(out)


@lru_cache(maxsize=None)
def _symbol_cores(rank_n, tag, e, mode):
    """Cores of all rank-n symbols in a defect class, with their quotient
    weights.  tag is 'odd', 'mod4_0' or 'mod4_2'."""
    pred = {"odd": lambda d: d % 2 == 1,
            "mod4_0": lambda d: d % 4 == 0,
            "mod4_2": lambda d: d % 4 == 2}[tag]
    cores = {}
    for sym in symbcomb.enumerate_symbols(rank_n, pred):
        core, pair = symbcomb.sym_core_quotient(sym, e, mode)
        cores[core] = symbcomb.quotient_size(pair)
    for core, w in cores.items():
        assert symbcomb.rank(core) + e * w == rank_n
    return tuple(sorted(cores.items()))


def _core_choices(ctx, pc, m, eta_plus):
    """Admissible kappa values at one divisor, with their weights."""
    if pc.family != "F0":
        return [(k, (m - sum(k)) // pc.e_gamma)
                for k in partcomb.enumerate_e_cores(pc.e_gamma, m)
                if (m - sum(k)) % pc.e_gamma == 0]
    if is_x_minus(pc, ctx):
        return list(_symbol_cores(m // 2, "odd", ctx.e, ctx.mode))
    if m == 0:
        return [(LSymbol(), 0)]
    tag = "mod4_0" if eta_plus == 1 else "mod4_2"
    return list(_symbol_cores(m // 2, tag, ctx.e, ctx.mode))


def weight_of(ctx, block, pc):
    """The weight w_Gamma determined by the multiplicity and the core."""
    m = block.s.mult(pc)
    core = block.core_of(pc)
    if pc.family != "F0":
        if core is None:
            return 0
        lhs, step = m - sum(core), pc.e_gamma
    elif is_x_plus(pc, ctx):
        core = core if core is not None else LSymbol()
        lhs, step = m - 2 * symbcomb.rank(core), 2 * ctx.e
    else:
        lhs, step = m - 1 - 2 * symbcomb.rank(core), 2 * ctx.e
    if lhs < 0 or lhs % step:
        raise ValueError(f"no nonnegative integer weight at {pc}: m={m}, core={core}")
    return lhs // step


def block_classes(ctx, block):
    """The divisors carrying data in this block: the support plus X+1."""
    classes = list(block.s.support())
    xp = x_plus_class(ctx)
    if xp not in classes:
        classes.append(xp)
    return sorted(classes, key=PolyClass.sort_key)


def enumerate_blocks(ctx, n, ell_prime_only=True):
    """All block labels (s, kappa, i) with kappa admissible for s."""
    out = []
    for s in enumerate_semisimple(ctx, n, ell_prime_only):
        xp = x_plus_class(ctx)
        classes = [c for c, _ in s.entries]
        if xp not in classes:
            classes.append(xp)
        classes.sort(key=PolyClass.sort_key)
        choices = [[(pc, core) for core, _ in
                    _core_choices(ctx, pc, s.mult(pc), s.eta_plus)]
                   for pc in classes]
        stack = [()]
        for ch in choices:
            stack = [k + (entry,) for k in stack for entry in ch]
        for kappa in stack:
            core_plus = dict(kappa)[xp]
            if symbcomb.is_degenerate(core_plus):
                out.append(BlockLabel(s=s, kappa=kappa, i=0, i_collapsed=True))
            else:
                out.append(BlockLabel(s=s, kappa=kappa, i=0, i_collapsed=False))
                out.append(BlockLabel(s=s, kappa=kappa, i=1, i_collapsed=False))
    return sorted(out, key=BlockLabel.sort_key)


# ---------------------------------------------------------------------------
# Brauer character labels

@dataclass(frozen=True)
class IBrLabel:
    s: SemisimpleLabel
    lam: tuple              # sorted ((PolyClass, partition-or-symbol), ...)
    j: int
    j_collapsed: bool

    def part_of(self, pc):
        for c, v in self.lam:
            if c == pc:
                return v
        return None

    def sort_key(self):
        return (self.s.sort_key(), _assignment_key(self.lam), self.j)

    def __repr__(self):
        return f"IBrLabel(s={self.s!r}, lam={self.lam}, j={self.j})"


@lru_cache(maxsize=None)
def _partitions_with_core(core, m, e):
    quots = partcomb.enumerate_tuples(e, (m - sum(core)) // e)
    return tuple(partcomb.from_core_quotient(core, t) for t in quots)


@lru_cache(maxsize=None)
def _symbols_with_core_cached(core, w, e, mode):
    return tuple(symbcomb.symbols_with_core(core, w, e, mode))


def enumerate_ibr(ctx, block):
    """The Brauer-character labels of a block: component cores equal to
    kappa, with the Z/2 index collapsing on degenerate X+1 parts."""
    xp = x_plus_class(ctx)
    per_class = []
    classes = block_classes(ctx, block)
    for pc in classes:
        m = block.s.mult(pc)
        core = block.core_of(pc)
        w = weight_of(ctx, block, pc)
        if pc.family != "F0":
            vals = _partitions_with_core(core, m, pc.e_gamma)
        else:
            vals = _symbols_with_core_cached(core, w, ctx.e, ctx.mode)
        per_class.append([(pc, v) for v in vals])
    stack = [()]
    for ch in per_class:
        stack = [t + (entry,) for t in stack for entry in ch]
    out = []
    core_plus = block.core_of(xp) or LSymbol()
    for lam in stack:
        lam_plus = dict(lam)[xp]
        if not symbcomb.is_degenerate(core_plus):
            assert not symbcomb.is_degenerate(lam_plus)
            out.append(IBrLabel(s=block.s, lam=lam, j=block.i, j_collapsed=False))
        elif symbcomb.is_degenerate(lam_plus):
            out.append(IBrLabel(s=block.s, lam=lam, j=0, j_collapsed=True))
        else:
            out.append(IBrLabel(s=block.s, lam=lam, j=0, j_collapsed=False))
            out.append(IBrLabel(s=block.s, lam=lam, j=1, j_collapsed=False))
    return sorted(out, key=IBrLabel.sort_key)


def block_of_ibr(ctx, label):
    """The unique block containing a Brauer label: take component cores."""
    xp = x_plus_class(ctx)
    kappa = []
    for pc, v in label.lam:
        if pc.family != "F0":
            kappa.append((pc, partcomb.e_core(v, pc.e_gamma)))
        else:
            kappa.append((pc, symbcomb.sym_core_quotient(v, ctx.e, ctx.mode)[0]))
    if xp not in [pc for pc, _ in label.lam]:
        kappa.append((xp, LSymbol()))
    kappa = tuple(sorted(kappa, key=lambda cv: cv[0].sort_key()))
    core_plus = dict(kappa)[xp]
    if symbcomb.is_degenerate(core_plus):
        return BlockLabel(s=label.s, kappa=kappa, i=0, i_collapsed=True)
    return BlockLabel(s=label.s, kappa=kappa, i=label.j, i_collapsed=False)


def enumerate_ibr_universe(ctx, n):
    """Every Brauer label over every ell-regular semisimple class, built
    without reference to blocks (the global basic-set universe)."""
    out = []
    xp = x_plus_class(ctx)
    for s in enumerate_semisimple(ctx, n, ell_prime_only=True):
        classes = [c for c, _ in s.entries]
        if xp not in classes:
            classes.append(xp)
        classes.sort(key=PolyClass.sort_key)
        per_class = []
        for pc in classes:
            m = s.mult(pc)
            if pc.family != "F0":
                vals = partcomb.enumerate_partitions(m)
            elif is_x_minus(pc, ctx):
                vals = symbcomb.enumerate_symbols(m // 2, lambda d: d % 2 == 1)
            elif m == 0:
                vals = [LSymbol()]
            else:
                want = 0 if s.eta_plus == 1 else 2
                vals = symbcomb.enumerate_symbols(m // 2, lambda d: d % 4 == want)
            per_class.append([(pc, v) for v in vals])
        stack = [()]
        for ch in per_class:
            stack = [t + (entry,) for t in stack for entry in ch]
        for lam in stack:
            lam_plus = dict(lam)[xp]
            if symbcomb.is_degenerate(lam_plus):
                out.append(IBrLabel(s=s, lam=lam, j=0, j_collapsed=True))
            else:
                out.append(IBrLabel(s=s, lam=lam, j=0, j_collapsed=False))
                out.append(IBrLabel(s=s, lam=lam, j=1, j_collapsed=False))
    return sorted(out, key=IBrLabel.sort_key)


# ---------------------------------------------------------------------------
# weight labels

@dataclass(frozen=True)
class WeightLabelQ:
    block: BlockLabel
    q: tuple                # sorted ((PolyClass, tuple of partitions), ...)

    def q_of(self, pc):
        for c, v in self.q:
            if c == pc:
                return v
        return None

    def sort_key(self):
        return (self.block.sort_key(), tuple((c.sort_key(), v) for c, v in self.q))


@dataclass(frozen=True)
class WeightLabelK:
    block: BlockLabel
    k: tuple                # sorted ((PolyClass, tuple of core towers), ...)

    def k_of(self, pc):
        for c, v in self.k:
            if c == pc:
                return v
        return None

    def sort_key(self):
        return (self.block.sort_key(), tuple((c.sort_key(), v) for c, v in self.k))


def branch_count(ctx, pc):
    return pc.beta * (ctx.e if pc.family == "F0" else pc.e_gamma)


def enumerate_weights_q(ctx, block):
    """All ordered-quotient weight labels of a block: one sequence of
    beta*e_Gamma partitions of total w_Gamma per divisor."""
    per_class = []
    for pc in block_classes(ctx, block):
        w = weight_of(ctx, block, pc)
        tuples = partcomb.enumerate_tuples(branch_count(ctx, pc), w)
        per_class.append([(pc, t) for t in tuples])
    stack = [()]
    for ch in per_class:
        stack = [t + (entry,) for t in stack for entry in ch]
    return sorted((WeightLabelQ(block=block, q=q) for q in stack),
                  key=WeightLabelQ.sort_key)


def _branch_tower_families(ctx, k, w):
    """All k-tuples of ell-core towers with total weighted size w."""
    out = []

    def rec(slot, rest, prefix):
        if slot == k - 1:
            for tw in partcomb.enumerate_core_towers(ctx.ell, rest):
                out.append(tuple(prefix) + (tw,))
            return
        for v in range(rest, -1, -1):
            for tw in partcomb.enumerate_core_towers(ctx.ell, v):
                prefix.append(tw)
                rec(slot + 1, rest - v, prefix)
                prefix.pop()

    if k == 0:
        return [()] if w == 0 else []
    rec(0, w, [])
    return out


def enumerate_weights_k(ctx, block):
    """All core-tower weight labels, enumerated independently of the
    Q-form via the level structure."""
    per_class = []
    for pc in block_classes(ctx, block):
        w = weight_of(ctx, block, pc)
        fams = _branch_tower_families(ctx, branch_count(ctx, pc), w)
        per_class.append([(pc, fam) for fam in fams])
    stack = [()]
    for ch in per_class:
        stack = [t + (entry,) for t in stack for entry in ch]
    return sorted((WeightLabelK(block=block, k=k) for k in stack),
                  key=WeightLabelK.sort_key)


def k_to_q(ctx, wk):
    q = tuple((pc, tuple(partcomb.tower_to_partition(tw, ctx.ell) for tw in fam))
              for pc, fam in wk.k)
    return WeightLabelQ(block=wk.block, q=q)


def q_to_k(ctx, wq):
    k = tuple((pc, tuple(partcomb.core_tower(p, ctx.ell) for p in fam))
              for pc, fam in wq.q)
    return WeightLabelK(block=wq.block, k=k)


def radical_shape(ctx, wk):
    """Multiplicities of the radical-subgroup factors carried by K: one
    entry (divisor, level, branch, t) per slot family with t > 0."""
    shape = []
    for pc, fam in wk.k:
        for b, tower in enumerate(fam):
            for d, level in enumerate(tower):
                t = sum(sum(x) for x in level)
                if t:
                    shape.append((pc, d, b, t))
    return tuple(sorted(shape, key=lambda s: (s[0].sort_key(), s[1], s[2])))


def audit_weight_label(ctx, w_label, n):
    """Dimension bookkeeping for a weight label: the multiplicity at every
    divisor splits into the core part plus beta * e_Gamma per unit of
    weight, and the displaced and fixed spaces fill dimension 2n+1."""
    wq = w_label if isinstance(w_label, WeightLabelQ) else k_to_q(ctx, w_label)
    block = wq.block
    dim_fixed, dim_moved = 0, 0
    for pc in block_classes(ctx, block):
        m = block.s.mult(pc)
        w = weight_of(ctx, block, pc)
        assert sum(sum(p) for p in wq.q_of(pc)) == w, "branch sizes must sum to w"
        core = block.core_of(pc)
        if pc.family != "F0":
            assert m == sum(core) + pc.e_gamma * w
        elif is_x_plus(pc, ctx):
            assert m == 2 * symbcomb.rank(core) + 2 * ctx.e * w
        else:
            assert m == 2 * symbcomb.rank(core) + 1 + 2 * ctx.e * w
        displaced = w * pc.beta * (ctx.e if pc.family == "F0" else pc.e_gamma)
        assert m - displaced >= 0, "weight exceeds available multiplicity"
        dim_fixed += (m - displaced) * pc.deg
        dim_moved += displaced * pc.deg
    assert dim_fixed + dim_moved == 2 * n + 1
    return True


# ---------------------------------------------------------------------------
# serialization

def poly_jsonable(pc):
    return {"coeffs": list(pc.gamma), "family": pc.family}


def value_jsonable(v):
    if isinstance(v, LSymbol):
        return {"rows": [list(v.rows[0]), list(v.rows[1])]}
    if isinstance(v, tuple) and (not v or isinstance(v[0], int)):
        return list(v)
    return [value_jsonable(x) for x in v]


def semisimple_jsonable(s):
    return {"mult": [[poly_jsonable(pc), m] for pc, m in s.entries],
            "eta_plus": s.eta_plus, "eta_minus": s.eta_minus}


def block_jsonable(ctx, b):
    return {"s": semisimple_jsonable(b.s),
            "kappa": [[poly_jsonable(pc), value_jsonable(v)] for pc, v in b.kappa],
            "i": b.i, "i_collapsed": b.i_collapsed,
            "w": [[poly_jsonable(pc), weight_of(ctx, b, pc)]
                  for pc in block_classes(ctx, b)]}


def ibr_jsonable(label):
    return {"s": semisimple_jsonable(label.s),
            "lambda": [[poly_jsonable(pc), value_jsonable(v)] for pc, v in label.lam],
            "j": label.j, "j_collapsed": label.j_collapsed}


def weight_q_jsonable(ctx, wl):
    return {"block": block_jsonable(ctx, wl.block),
            "Q": [[poly_jsonable(pc), value_jsonable(v)] for pc, v in wl.q]}


def weight_k_jsonable(ctx, wl):
    return {"block": block_jsonable(ctx, wl.block),
            "K": [[poly_jsonable(pc), value_jsonable(v)] for pc, v in wl.k]}
