"""The explicit Brauer-character <-> weight bijection, the field and
diagonal automorphism actions on every label kind, and the verification
drivers for the blockwise weight-count equality and equivariance.

The bijection sends a Brauer label (s, lambda, i) to the weight label
whose ordered-quotient component at each divisor is the core quotient of
the corresponding lambda component; at X-1 and X+1 the unordered pair is
flattened to a 2e-sequence using the orientation that reconstructs
lambda from kappa.  The diagonal automorphism shifts the Z/2 index and
swaps the two halves of the X+1 sequence; field automorphisms relabel
the divisors by the p-power map.
"""

from dataclasses import dataclass

from . import labelspace as ls, partcomb, symbcomb
from .ffpoly import frobenius_class
from .labelspace import (BlockLabel, IBrLabel, WeightLabelK, WeightLabelQ,
                         block_classes, block_of_ibr, is_x_minus, is_x_plus,
                         x_plus_class)


@dataclass(frozen=True)
class AutAction:
    """field(i) or the diagonal outer automorphism."""
    kind: str               # "field" or "diagonal"
    power: int = 0

    def __post_init__(self):
        assert self.kind in ("field", "diagonal")


FIELD = lambda i: AutAction("field", i)
DIAGONAL = AutAction("diagonal")


# ---------------------------------------------------------------------------
# the bijection

def _flatten(pair, orient):
    a, b = pair
    return a + b if orient % 2 == 0 else b + a


def _unflatten(seq):
    e = len(seq) // 2
    a, b = seq[:e], seq[e:]
    pair = tuple(sorted((a, b)))
    return pair, 0 if (a, b) == pair else 1


def _solve_orientation(kappa, pair, lam, e, mode):
    """The orient with kappa * (pair, orient) = lam; a mismatch is a
    convention bug, never a data error."""
    orient = symbcomb.orientation_of(lam, e, mode)
    rebuilt = symbcomb.star_plain(kappa, pair, orient, e, mode)
    if rebuilt != lam:
        raise AssertionError(
            f"reconstruction mismatch: {kappa} * (Q,{orient}) = {rebuilt} != {lam}")
    return orient


def brauer_to_weight(ctx, ib):
    """The weight label of a Brauer label inside its own block."""
    block = block_of_ibr(ctx, ib)
    e, mode = ctx.e, ctx.mode
    entries = []
    for pc in block_classes(ctx, block):
        lam = ib.part_of(pc)
        kappa = block.core_of(pc)
        if pc.family != "F0":
            core, quot = partcomb.e_core_quotient(lam, pc.e_gamma)
            assert core == kappa
            entries.append((pc, quot))
            continue
        core, pair = symbcomb.sym_core_quotient(lam, e, mode)
        assert core == kappa
        if is_x_minus(pc, ctx):
            j = _solve_orientation(kappa, pair, lam, e, mode)
            entries.append((pc, _flatten(pair, j)))
        elif not symbcomb.is_degenerate(kappa):
            orient = _solve_orientation(kappa, pair, lam, e, mode)
            entries.append((pc, _flatten(pair, (orient - block.i) % 2)))
        else:
            if symbcomb.is_degenerate(lam):
                assert symbcomb.is_pair_degenerate(pair)
            entries.append((pc, _flatten(pair, ib.j)))
    return WeightLabelQ(block=block, q=tuple(entries))


def weight_to_brauer(ctx, wq):
    """Two-sided inverse of brauer_to_weight."""
    block = wq.block
    e, mode = ctx.e, ctx.mode
    xp = x_plus_class(ctx)
    entries = []
    j, j_collapsed = block.i, False
    for pc in block_classes(ctx, block):
        q = wq.q_of(pc)
        kappa = block.core_of(pc)
        if q is None or len(q) != ls.branch_count(ctx, pc):
            raise ValueError(f"weight label carries {q} at {pc}: "
                             f"expected {ls.branch_count(ctx, pc)} branches")
        if sum(sum(p) for p in q) != ls.weight_of(ctx, block, pc):
            raise ValueError(f"branch sizes at {pc} do not sum to the "
                             f"block weight")
        if pc.family != "F0":
            entries.append((pc, partcomb.from_core_quotient(kappa, q)))
            continue
        pair, orient = _unflatten(q)
        if is_x_minus(pc, ctx):
            entries.append((pc, symbcomb.star_plain(kappa, pair, orient, e, mode)))
        elif not symbcomb.is_degenerate(kappa):
            lam = symbcomb.star_oriented(kappa, block.i, pair, orient, e, mode)
            entries.append((pc, lam))
        else:
            lam = symbcomb.star_plain(kappa, pair, 0, e, mode)
            entries.append((pc, lam))
            if symbcomb.is_degenerate(lam):
                assert orient == 0
                j, j_collapsed = 0, True
            else:
                j, j_collapsed = orient, False
    return IBrLabel(s=block.s, lam=tuple(entries), j=j, j_collapsed=j_collapsed)


# ---------------------------------------------------------------------------
# automorphism actions

def act_on_semisimple(ctx, action, s):
    if action.kind == "diagonal":
        return s
    items = [(frobenius_class(pc, action.power, ctx), m) for pc, m in s.entries]
    out = ls._make_semisimple(ctx, items, s.eta_plus)
    assert out.eta_minus == s.eta_minus, "type signs are carried by the relabeling"
    return out


def _relabel_assignment(ctx, power, entries):
    items = [(frobenius_class(pc, power, ctx), v) for pc, v in entries]
    return tuple(sorted(items, key=lambda cv: cv[0].sort_key()))


def act_on_block(ctx, action, block):
    if action.kind == "field":
        return BlockLabel(s=act_on_semisimple(ctx, action, block.s),
                          kappa=_relabel_assignment(ctx, action.power, block.kappa),
                          i=block.i, i_collapsed=block.i_collapsed)
    if block.i_collapsed:
        return block
    return BlockLabel(s=block.s, kappa=block.kappa,
                      i=(block.i + 1) % 2, i_collapsed=False)


def act_on_ibr(ctx, action, ib):
    if action.kind == "field":
        return IBrLabel(s=act_on_semisimple(ctx, action, ib.s),
                        lam=_relabel_assignment(ctx, action.power, ib.lam),
                        j=ib.j, j_collapsed=ib.j_collapsed)
    if ib.j_collapsed:
        return ib
    return IBrLabel(s=ib.s, lam=ib.lam, j=(ib.j + 1) % 2, j_collapsed=False)


def _flip_half(seq):
    e = len(seq) // 2
    return seq[e:] + seq[:e]


def act_on_weight_q(ctx, action, wq):
    new_block = act_on_block(ctx, action, wq.block)
    if action.kind == "field":
        return WeightLabelQ(block=new_block,
                            q=_relabel_assignment(ctx, action.power, wq.q))
    entries = tuple((pc, _flip_half(v) if is_x_plus(pc, ctx) else v)
                    for pc, v in wq.q)
    return WeightLabelQ(block=new_block, q=entries)


def act_on_weight_k(ctx, action, wk):
    new_block = act_on_block(ctx, action, wk.block)
    if action.kind == "field":
        return WeightLabelK(block=new_block,
                            k=_relabel_assignment(ctx, action.power, wk.k))
    entries = tuple((pc, _flip_half(v) if is_x_plus(pc, ctx) else v)
                    for pc, v in wk.k)
    return WeightLabelK(block=new_block, k=entries)


def act_on_weight(ctx, action, w):
    if isinstance(w, WeightLabelQ):
        return act_on_weight_q(ctx, action, w)
    return act_on_weight_k(ctx, action, w)


# ---------------------------------------------------------------------------
# verification

def verify_block(ctx, block):
    """Counts and bijectivity report for one block."""
    ibrs = ls.enumerate_ibr(ctx, block)
    weights_q = ls.enumerate_weights_q(ctx, block)
    weights_k = ls.enumerate_weights_k(ctx, block)
    image = []
    bijective = True
    for ib in ibrs:
        w = brauer_to_weight(ctx, ib)
        image.append(w)
        if weight_to_brauer(ctx, w) != ib:
            bijective = False
    if len(set(image)) != len(ibrs) or set(image) != set(weights_q):
        bijective = False
    mapped_k = {ls.k_to_q(ctx, wk) for wk in weights_k}
    if mapped_k != set(weights_q):
        bijective = False
    return {
        "n_ibr": len(ibrs),
        "n_weights_q": len(weights_q),
        "n_weights_k": len(weights_k),
        "bijective": bijective,
    }


def verify_equivariance_of_block(ctx, block, generators):
    """Violations of the commuting square on the block's Brauer labels."""
    violations = []
    for ib in ls.enumerate_ibr(ctx, block):
        w = brauer_to_weight(ctx, ib)
        for gen in generators:
            lhs = brauer_to_weight(ctx, act_on_ibr(ctx, gen, ib))
            rhs = act_on_weight_q(ctx, gen, w)
            if lhs != rhs:
                violations.append({"generator": gen.kind + (str(gen.power) if gen.kind == "field" else ""),
                                   "ibr": ls.ibr_jsonable(ib),
                                   "lhs": ls.weight_q_jsonable(ctx, lhs),
                                   "rhs": ls.weight_q_jsonable(ctx, rhs)})
    return violations


def verify_equivariance(ctx, n, generators=None):
    """Equivariance of the bijection under the generator actions, checked
    on every Brauer label of every block at rank n."""
    if generators is None:
        generators = [FIELD(1), DIAGONAL]
    n_checked = 0
    violations = []
    for block in ls.enumerate_blocks(ctx, n):
        vs = verify_equivariance_of_block(ctx, block, generators)
        violations.extend(vs)
        n_checked += len(ls.enumerate_ibr(ctx, block)) * len(generators)
    return {"n_checked": n_checked, "violations": violations,
            "ok": not violations}


def verify_action_laws(ctx, n):
    """diagonal^2 = id, field(i)field(j) = field(i+j), and commutation,
    as identities of maps on the label sets."""
    blocks = ls.enumerate_blocks(ctx, n)
    ibrs = [ib for b in blocks for ib in ls.enumerate_ibr(ctx, b)]
    weights = [w for b in blocks for w in ls.enumerate_weights_q(ctx, b)]
    f1, d = FIELD(1), DIAGONAL
    for ib in ibrs:
        assert act_on_ibr(ctx, d, act_on_ibr(ctx, d, ib)) == ib
        a = act_on_ibr(ctx, f1, act_on_ibr(ctx, f1, ib))
        assert a == act_on_ibr(ctx, FIELD(2), ib)
        assert act_on_ibr(ctx, FIELD(0), ib) == ib
        assert act_on_ibr(ctx, FIELD(ctx.f), ib) == ib
        assert act_on_ibr(ctx, d, act_on_ibr(ctx, f1, ib)) == \
            act_on_ibr(ctx, f1, act_on_ibr(ctx, d, ib))
    for w in weights:
        assert act_on_weight_q(ctx, d, act_on_weight_q(ctx, d, w)) == w
        a = act_on_weight_q(ctx, f1, act_on_weight_q(ctx, f1, w))
        assert a == act_on_weight_q(ctx, FIELD(2), w)
        assert act_on_weight_q(ctx, FIELD(0), w) == w
        assert act_on_weight_q(ctx, d, act_on_weight_q(ctx, f1, w)) == \
            act_on_weight_q(ctx, f1, act_on_weight_q(ctx, d, w))
    return True


def orbit_sizes(items, step):
    """Multiset of orbit sizes of the cyclic action generated by step."""
    seen, sizes = set(), []
    for x in items:
        if x in seen:
            continue
        orbit = [x]
        y = step(x)
        while y != x:
            orbit.append(y)
            y = step(y)
        seen.update(orbit)
        sizes.append(len(orbit))
    return sorted(sizes)
