"""Taylor expansion of partial terms and lambda terms, the membership
relation against partial terms, the isometry harnesses and the bounded
commutation check."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement

from . import bohm, resource
from .bohm import BOT, Bottom, Node, PartialTerm
from .distance import bracket, dyadic, exact
from .lamcalc import Abs, LambdaTerm, Var
from .resource import RAbs, RApp, ResourceTerm, RVar, rkey


# ---------------------------------------------------------------------------
# Membership: t is one of the linear approximations of the partial term a

def box_relation(t: ResourceTerm, a: PartialTerm) -> bool:
    """t belongs to the Taylor expansion of a (the expansion of bottom is empty)."""
    return _box(t, a, (), ())


def _box(t, a, envt, enva):
    if isinstance(a, Bottom):
        return False
    binders, head, bags = _rview(t)
    if binders is None:
        return False
    if len(binders) != len(a.binders) or len(bags) != len(a.args):
        return False
    et, ea = envt + binders, enva + a.binders
    if _vk(head, et) != _vk(a.head, ea):
        return False
    for items, arg in zip(bags, a.args):
        for u in items:
            if not _box(u, arg, et, ea):
                return False
    return True


def _rview(t):
    binders = []
    while isinstance(t, RAbs):
        binders.append(t.binder)
        t = t.body
    bags = []
    while isinstance(t, RApp):
        bags.append(t.bag)
        t = t.fun
    if not isinstance(t, RVar):
        return None, None, None
    bags.reverse()
    return tuple(binders), t.name, tuple(bags)


def _vk(name, env):
    for i in range(len(env) - 1, -1, -1):
        if env[i] == name:
            return ("b", len(env) - 1 - i)
    return ("f", name)


def min_source(t: ResourceTerm) -> PartialTerm | None:
    """The least partial term whose expansion contains t, or None.

    t belongs to the expansion of a  iff  min_source(t) is defined and
    min_source(t) is below a in the approximant order.  Binders are
    canonicalized first so that joining alpha-variant bag elements works.
    """
    return _min_source(resource.canonical_binders(t))


def _min_source(t: ResourceTerm) -> PartialTerm | None:
    binders, head, bags = _rview(t)
    if binders is None:
        return None
    args = []
    for items in bags:
        if not items:
            args.append(BOT)
            continue
        sources = [_min_source(u) for u in items]
        if any(s is None for s in sources):
            return None
        joined = sources[0]
        for s in sources[1:]:
            joined = _join(joined, s)
            if joined is None:
                return None
        args.append(joined)
    return Node(binders, head, tuple(args))


def _join(a: PartialTerm, b: PartialTerm) -> PartialTerm | None:
    if isinstance(a, Bottom):
        return b
    if isinstance(b, Bottom):
        return a
    if (len(a.binders) != len(b.binders) or len(a.args) != len(b.args)
            or bohm.pkey(Node(a.binders, a.head, ())) != bohm.pkey(Node(b.binders, b.head, ()))):
        return None
    args = []
    for x, y in zip(a.args, b.args):
        j = _join(x, y)
        if j is None:
            return None
        args.append(j)
    # reuse a's binder names for the joined node
    return Node(a.binders, a.head, tuple(args))


# ---------------------------------------------------------------------------
# Bounded expansions

@dataclass(frozen=True)
class TaylorFragment:
    source: object
    mult_bound: int
    height_bound: int
    elements: frozenset


def taylor_expand(a: PartialTerm, mult_bound: int, height_bound: int) -> TaylorFragment:
    """All t with t in the expansion of a, bags of size <= mult_bound and
    height <= height_bound, generated exhaustively."""
    if mult_bound < 1 or height_bound < 1:
        raise ValueError("bounds must be >= 1")
    return TaylorFragment(a, mult_bound, height_bound,
                          frozenset(_expand(a, mult_bound, height_bound)))


def _expand(a: PartialTerm, b: int, h: int) -> list:
    if isinstance(a, Bottom) or h < 1:
        return []
    arg_pools = []
    for arg in a.args:
        if isinstance(arg, Bottom):
            arg_pools.append([()])  # only the empty bag over a bottom child
            continue
        elems = _expand(arg, b, h - 1)
        pool = [()]
        for k in range(1, b + 1):
            pool.extend(combinations_with_replacement(elems, k))
        arg_pools.append(pool)
    out = []
    for bags in _product(arg_pools):
        t: ResourceTerm = RVar(a.head)
        for items in bags:
            t = RApp(t, tuple(items))
        for bnd in reversed(a.binders):
            t = RAbs(bnd, t)
        out.append(t)
    return out


def _product(pools):
    if not pools:
        yield ()
        return
    for head in pools[0]:
        for rest in _product(pools[1:]):
            yield (head,) + rest


def gen_height(t: ResourceTerm) -> int:
    """Structural height; agrees with the normal-form height on normal terms."""
    if isinstance(t, RVar):
        return 1
    if isinstance(t, RAbs):
        return gen_height(t.body)
    inner = max((gen_height(u) for u in t.bag), default=0)
    return max(gen_height(t.fun), 1 + inner)


def taylor_of_term(m: LambdaTerm, mult_bound: int, height_bound: int) -> TaylorFragment:
    """Bounded expansion of a raw (possibly non-normal) lambda term."""
    if mult_bound < 1 or height_bound < 1:
        raise ValueError("bounds must be >= 1")

    def go(u: LambdaTerm) -> list:
        if isinstance(u, Var):
            return [RVar(u.name)]
        if isinstance(u, Abs):
            return [RAbs(u.binder, t) for t in go(u.body)]
        funs = go(u.fun)
        args = go(u.arg)
        out = []
        pool = [()]
        for k in range(1, mult_bound + 1):
            pool.extend(combinations_with_replacement(args, k))
        for f in funs:
            for items in pool:
                out.append(RApp(f, tuple(items)))
        return out

    elems = [t for t in go(m) if gen_height(t) <= height_bound]
    return TaylorFragment(m, mult_bound, height_bound, frozenset(elems))


# ---------------------------------------------------------------------------
# Fast exact Hausdorff-star on bounded fragments
#
# Within a bounded fragment the sup side is attained at the embedding-maximal
# elements (every element extends to one, and extending never increases the
# inner inf), and for a maximal element the upward moves are exhausted, so the
# inner inf is the deepest truncation level realizable inside the other
# fragment -- a membership test, not an enumeration.

def _maximal_elements(a: PartialTerm, b: int) -> list:
    if isinstance(a, Bottom):
        return []
    pools = []
    for arg in a.args:
        if isinstance(arg, Bottom):
            pools.append([()])
        else:
            sub = _maximal_elements(arg, b)
            pools.append(list(combinations_with_replacement(sub, b)))
    out = []
    for bags in _product(pools):
        t: ResourceTerm = RVar(a.head)
        for items in bags:
            t = RApp(t, tuple(items))
        for bnd in reversed(a.binders):
            t = RAbs(bnd, t)
        out.append(t)
    return out


def _bags_within(t: ResourceTerm, b: int) -> bool:
    if isinstance(t, RVar):
        return True
    if isinstance(t, RAbs):
        return _bags_within(t.body, b)
    return len(t.bag) <= b and _bags_within(t.fun, b) and all(
        _bags_within(u, b) for u in t.bag)


def _side_fast(a: PartialTerm, other: PartialTerm, b: int) -> Fraction:
    """sup over the a-fragment of the inf of r against the other fragment."""
    if isinstance(a, Bottom):
        return Fraction(0)  # sup over the empty set
    if isinstance(other, Bottom):
        return Fraction(1)  # inf over the empty set
    worst = Fraction(0)
    for t in _maximal_elements(a, b):
        h = resource.height(t)
        best_n = 0
        for n in range(1, h + 1):
            s = resource.truncate(t, n)
            if box_relation(s, bohm.truncate(other, n)):
                best_n = n
            else:
                break
        val = dyadic(best_n)
        if val > worst:
            worst = val
    return worst


def hstar_fragments(a: PartialTerm, other: PartialTerm, mult_bound: int) -> Fraction:
    """Exact H*_r between the bounded expansions of two partial terms."""
    return max(_side_fast(a, other, mult_bound), _side_fast(other, a, mult_bound))


def isometry_check(a: PartialTerm, b: PartialTerm, mult_bound: int) -> dict:
    """Compare H*_r on bounded expansions against the tree distance."""
    lhs = exact(hstar_fragments(a, b, mult_bound))
    rhs = bohm.p_tree(a, b)
    lhs_next = exact(hstar_fragments(a, b, mult_bound + 1))
    return {
        "lhs": lhs,
        "rhs": rhs,
        "equal": lhs == rhs,
        "stable": lhs == lhs_next,
    }


# ---------------------------------------------------------------------------
# Commutation at bounded scale

class TentativeTreeError(RuntimeError):
    """The Boehm truncation was not certified within the given fuel."""


def commutation_check(m: LambdaTerm, mult_bound: int, height_bound: int,
                      fuel: int) -> dict:
    tr = bohm.bohm_truncate(m, height_bound, fuel)
    if not tr.is_exact:
        raise TentativeTreeError(
            f"solvability unknown at positions {tr.tentative} (fuel {fuel})")

    def keep(t):
        return resource.height(t) <= height_bound and _bags_within(t, mult_bound)

    slack = height_bound + _syntactic_depth(m)
    expansion = taylor_of_term(m, mult_bound, slack)
    lhs = set()
    for t in expansion.elements:
        for nf in resource.resource_reduce(t):
            if keep(nf):
                lhs.add(nf)
    rhs = {t for t in taylor_expand(tr.tree, mult_bound, height_bound).elements
           if keep(t)}
    return {"lhs": frozenset(lhs), "rhs": frozenset(rhs), "equal": lhs == rhs}


def _syntactic_depth(m: LambdaTerm) -> int:
    if isinstance(m, Var):
        return 1
    if isinstance(m, Abs):
        return _syntactic_depth(m.body)
    return 1 + max(_syntactic_depth(m.fun), _syntactic_depth(m.arg))


# ---------------------------------------------------------------------------
# Enumerations for the weighted-series isometry

_FREE_VARS = ("x", "y")


@lru_cache(maxsize=None)
def _partial_terms_of_weight(w: int, depth: int) -> tuple:
    """Partial terms of syntactic weight w; binders get canonical names."""
    if w < 1:
        return ()
    out = []
    binder = f"a{depth}"
    # abstractions spend one unit of weight
    for body in _partial_terms_of_weight(w - 1, depth + 1):
        if not isinstance(body, Bottom):
            out.append(Node((binder,) + body.binders, body.head, body.args))
    # head nodes: weight 1 for the node itself plus the args (a bottom arg costs 1)
    heads = list(_FREE_VARS) + [f"a{d}" for d in range(depth)]
    for head in heads:
        for args in _args_of_weight(w - 1, depth):
            out.append(Node((), head, args))
    return tuple(out)


def _args_of_weight(budget: int, depth: int):
    """All argument tuples of total weight exactly `budget`."""
    if budget == 0:
        yield ()
        return
    for first_w in range(1, budget + 1):
        firsts = list(_partial_terms_of_weight(first_w, depth))
        if first_w == 1:
            firsts.append(BOT)
        for f in firsts:
            for rest in _args_of_weight(budget - first_w, depth):
                yield (f,) + rest


def enumerate_partial(n: int) -> PartialTerm:
    """The n-th non-bottom partial term (1-indexed), size-ordered then lexicographic.

    Free variables from {x, y}; binder names are canonical by depth, so the
    enumeration covers partial terms up to alpha-equivalence.
    """
    if n < 1:
        raise ValueError("enumeration is 1-indexed")
    count = 0
    w = 1
    while True:
        batch = sorted(_partial_terms_of_weight(w, 0), key=_pt_sort_key)
        for t in batch:
            count += 1
            if count == n:
                return t
        w += 1
        if w > 40:
            raise RuntimeError("enumeration ran away")


def _pt_sort_key(t: PartialTerm):
    return _pt_code(t, ())


def _pt_code(t, env):
    if isinstance(t, Bottom):
        return (0,)
    env2 = env + t.binders
    hk = _vk(t.head, env2)
    hcode = (1, hk[1]) if hk[0] == "b" else (2, hk[1])
    return (1, len(t.binders), hcode, len(t.args),
            tuple(_pt_code(a, env2) for a in t.args))


def pair_index(m: int) -> tuple:
    """Diagonal pairing over positive naturals: 1 -> (1,1), 2 -> (1,2), 3 -> (2,1)..."""
    if m < 1:
        raise ValueError("pairing is 1-indexed")
    d = 1
    while m > d:
        m -= d
        d += 1
    return (m, d - m + 1)


_POOLS: dict = {}


def faithful_pool(a: PartialTerm) -> tuple:
    """Deterministic pool of expansion elements whose least source is exactly `a`.

    Every such term decides membership in any expansion through `a` alone,
    which is what makes the per-term grouping identity exact.  The pool is
    cycled when an enumeration needs more indices than it has elements.
    """
    k = bohm.pkey(a)
    if k not in _POOLS:
        pool = [t for t in _expand(a, 2, max(1, bohm.height(a)))
                if min_source(t) == a]
        if not pool:
            raise RuntimeError(f"no faithful element for {a}")  # unreachable
        pool.sort(key=lambda t: (resource.rsize(t), str(rkey(t))))
        _POOLS[k] = tuple(pool)
    return _POOLS[k]


def per_term(a: PartialTerm, m: int) -> ResourceTerm:
    """The m-th element (1-indexed) of the per-term enumeration for `a`."""
    pool = faithful_pool(a)
    return pool[(m - 1) % len(pool)]


def enumeration_isometry(a: PartialTerm, b: PartialTerm, prefix: int) -> dict:
    """Prefix comparison of the two weighted-series distances.

    pB sums 2**-n over enumerated partial terms not below both arguments;
    pP sums the paired weights over enumerated expansion elements missing
    from either expansion, decided by the membership relation directly.
    """
    if prefix < 1:
        raise ValueError("prefix must be >= 1")
    K = prefix
    pb_sum = Fraction(0)
    terms = [enumerate_partial(n) for n in range(1, K + 1)]
    for n, t in enumerate(terms, start=1):
        if not (bohm.partial_leq(t, a) and bohm.partial_leq(t, b)):
            pb_sum += dyadic(n)
    pb = bracket(pb_sum, pb_sum + dyadic(K))

    pp_sum = Fraction(0)
    for n, src in enumerate(terms, start=1):
        for m in range(1, K + 1):
            v = per_term(src, m)
            if not (box_relation(v, a) and box_relation(v, b)):
                pp_sum += dyadic(n) * dyadic(m)
    unexplored = (1 - dyadic(K)) * dyadic(K) + dyadic(K)
    pp = bracket(pp_sum, pp_sum + unexplored)

    gap = abs(pp.midpoint() - pb.midpoint())
    return {"pP": pp, "pB": pb, "gap": gap,
            "tail": (pb.width() + pp.width()) / 2}
