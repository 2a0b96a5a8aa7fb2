"""Finite bounded-complete posets, monotone function spaces, step functions,
product/applicative metrics, the quantification decision procedure, and the
finite approximation tower with its level metrics."""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product

from .distance import DistanceValue, bracket, dyadic, exact
from .pmetric import PartialMetricSpace

DEFAULT_CAP = 100_000


def _cap() -> int:
    return int(os.environ.get("LAMBDA_PM_CAP", DEFAULT_CAP))


class CapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class FinitePoset:
    """Explicit finite order: reflexive, antisymmetric, transitive, with a
    least element; bounded-completeness is checked on construction."""

    leq: tuple  # tuple of tuples of bool
    bottom: int
    labels: tuple = None

    def __post_init__(self):
        n = len(self.leq)
        if any(len(row) != n for row in self.leq):
            raise ValueError("leq must be square")
        for i in range(n):
            if not self.leq[i][i]:
                raise ValueError("not reflexive")
        for i in range(n):
            for j in range(n):
                if i != j and self.leq[i][j] and self.leq[j][i]:
                    raise ValueError("not antisymmetric")
                if self.leq[i][j]:
                    for k in range(n):
                        if self.leq[j][k] and not self.leq[i][k]:
                            raise ValueError("not transitive")
        if any(not self.leq[self.bottom][i] for i in range(n)):
            raise ValueError("bottom is not least")
        if self.lub_table() is None:
            raise ValueError("not bounded complete")
        if self.labels is not None and len(self.labels) != n:
            raise ValueError("labels must align with carrier")

    @property
    def size(self) -> int:
        return len(self.leq)

    def elements(self):
        return range(self.size)

    def le(self, i: int, j: int) -> bool:
        return self.leq[i][j]

    def upper_bounds(self, i: int, j: int):
        return [k for k in self.elements() if self.leq[i][k] and self.leq[j][k]]

    def lub_table(self):
        """Pairwise least upper bounds where they exist, else None entries;
        returns None overall if some bounded pair lacks a least upper bound."""
        n = len(self.leq)
        table = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                ubs = self.upper_bounds(i, j)
                if not ubs:
                    continue
                least = [u for u in ubs if all(self.leq[u][v] for v in ubs)]
                if not least:
                    return None
                table[i][j] = least[0]
        return table

    def lub(self, i: int, j: int):
        ubs = self.upper_bounds(i, j)
        if not ubs:
            return None
        for u in ubs:
            if all(self.leq[u][v] for v in ubs):
                return u
        return None

    def upset(self, i: int):
        return frozenset(j for j in self.elements() if self.leq[i][j])

    def is_upset(self, s) -> bool:
        return all(j in s for i in s for j in self.elements() if self.leq[i][j])

    def directed_subsets(self):
        """All nonempty directed subsets; exponential, only for small posets."""
        els = list(self.elements())
        for r in range(1, len(els) + 1):
            for combo in combinations(els, r):
                if all(any(self.leq[a][c] and self.leq[b][c] for c in combo)
                       for a in combo for b in combo):
                    yield frozenset(combo)

    def to_json(self) -> dict:
        return {"elements": list(self.labels or range(self.size)),
                "leq": [[bool(v) for v in row] for row in self.leq],
                "bottom": self.bottom}

    @classmethod
    def from_json(cls, data: dict) -> "FinitePoset":
        labels = tuple(str(e) for e in data["elements"])
        leq = tuple(tuple(bool(v) for v in row) for row in data["leq"])
        return cls(leq, int(data["bottom"]), labels)


def chain(n: int) -> FinitePoset:
    return FinitePoset(tuple(tuple(i <= j for j in range(n)) for i in range(n)), 0)


def sierpinski() -> FinitePoset:
    return chain(2)


def flat(n: int) -> FinitePoset:
    """Bottom plus n pairwise-incomparable elements."""
    size = n + 1
    leq = tuple(tuple(i == j or i == 0 for j in range(size)) for i in range(size))
    return FinitePoset(leq, 0)


def way_below(p: FinitePoset, x: int, y: int) -> bool:
    """On a finite poset every element is compact, so way-below is the order."""
    return p.le(x, y)


def way_below_by_definition(p: FinitePoset, x: int, y: int) -> bool:
    """Directed-subset definition, for cross-validation on small posets."""
    for delta in p.directed_subsets():
        top = max(delta, key=lambda d: sum(p.leq[e][d] for e in delta))
        # finite directed sets have a maximum
        assert all(p.leq[d][top] for d in delta)
        if p.le(y, top) and not any(p.le(x, d) for d in delta):
            return False
    return True


# ---------------------------------------------------------------------------
# Monotone maps and function spaces

@dataclass(frozen=True)
class MonotoneMap:
    domain: FinitePoset
    codomain: FinitePoset
    table: tuple

    def __post_init__(self):
        d, c = self.domain, self.codomain
        for i in range(d.size):
            for j in range(d.size):
                if d.le(i, j) and not c.le(self.table[i], self.table[j]):
                    raise ValueError("map is not monotone")

    def __call__(self, x: int) -> int:
        return self.table[x]

    def compose(self, inner: "MonotoneMap") -> "MonotoneMap":
        return MonotoneMap(inner.domain, self.codomain,
                           tuple(self.table[inner.table[x]]
                                 for x in range(inner.domain.size)))


def monotone_tables(x: FinitePoset, y: FinitePoset, cap: int = None):
    """All monotone tables, enumerated output-sensitively with a count cap."""
    cap = _cap() if cap is None else cap
    out = []
    for table in iter_monotone_tables(x, y):
        out.append(table)
        if len(out) > cap:
            raise CapExceeded(f"function space exceeds cap {cap}")
    return out


def function_space(x: FinitePoset, y: FinitePoset, cap: int = None):
    """The poset of all monotone maps under the pointwise order.

    Returns (poset, maps); maps[i] is the MonotoneMap at carrier index i.
    """
    tables = monotone_tables(x, y, cap)
    tables.sort()
    leq = tuple(tuple(all(y.le(t1[i], t2[i]) for i in range(x.size))
                      for t2 in tables) for t1 in tables)
    bottom = tables.index(tuple(y.bottom for _ in range(x.size)))
    poset = FinitePoset(leq, bottom)
    maps = [MonotoneMap(x, y, t) for t in tables]
    return poset, maps


def step_function(x: FinitePoset, y: FinitePoset, a: int, b: int) -> MonotoneMap:
    """Returns b above a and bottom elsewhere."""
    return MonotoneMap(x, y, tuple(b if x.le(a, v) else y.bottom
                                   for v in range(x.size)))


# ---------------------------------------------------------------------------
# Compositional metrics

def product_metric(p_x, p_y, pair1, pair2) -> DistanceValue:
    """Half the sum of the component distances."""
    return exact(Fraction(p_x(pair1[0], pair2[0]) + p_y(pair1[1], pair2[1]), 2))


def applicative_metric(p_y, basis, theta, f, g) -> DistanceValue:
    """Sum of theta**n * p_Y(f(a_n), g(a_n)) over the (finite) basis, n from 1."""
    theta = Fraction(theta)
    if not (0 < theta <= Fraction(1, 2)):
        raise ValueError("theta must be in (0, 1/2]")
    total = Fraction(0)
    for n, a in enumerate(basis, start=1):
        total += theta ** n * p_y(f(a), g(a))
    return exact(total)


def finite_access_bound(theta, epsilon) -> int:
    """Smallest N with the geometric tail beyond N strictly below epsilon/2."""
    theta, epsilon = Fraction(theta), Fraction(epsilon)
    if not (0 < theta <= Fraction(1, 2)):
        raise ValueError("theta must be in (0, 1/2]")
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    n = 0
    while theta ** (n + 1) / (1 - theta) >= epsilon / 2:
        n += 1
    return n


def quantification_decision(p: FinitePoset, space: PartialMetricSpace) -> dict:
    """Does the metric topology equal the Scott topology (= up-sets)?

    (a) every open ball is an up-set; (b) every principal up-set contains a
    ball around each of its points.  Returns a verdict with witnesses.
    """
    pts = list(space.carrier)
    if len(pts) != p.size:
        raise ValueError("carrier and poset must align")
    idx = {pt: i for i, pt in enumerate(pts)}
    failures_a, failures_b = [], []

    for center in pts:
        cself = space.d(center, center)
        radii = sorted({space.d(z, center) - cself for z in pts
                        if space.d(z, center) > cself})
        radii = [r for r in radii if r > 0] + [Fraction(1)]
        probes = []
        for r in radii:
            probes.append(r)
            probes.append(r + Fraction(1, 2))
        for eps in probes:
            ball = {z for z in pts if space.d(z, center) < cself + eps}
            for z in ball:
                for w in pts:
                    if p.le(idx[z], idx[w]) and w not in ball:
                        failures_a.append({"center": str(center), "eps": str(eps),
                                           "in": str(z), "above": str(w)})

    for x in pts:
        for y in pts:
            if not p.le(idx[x], idx[y]):
                continue
            # find eps with B_eps(y) inside the up-set of x
            defect = [space.d(z, y) - space.d(y, y) for z in pts
                      if not p.le(idx[x], idx[z])]
            if not defect:
                continue  # the whole space is above x
            if min(defect) <= 0:
                failures_b.append({"upset_of": str(x), "point": str(y)})

    return {"pass": not failures_a and not failures_b,
            "balls_not_upper": failures_a,
            "upsets_not_open": failures_b}


# ---------------------------------------------------------------------------
# The approximation tower

@dataclass
class TowerLevel:
    n: int
    poset: FinitePoset
    maps: list = None            # MonotoneMap views when n > 0
    metric: object = None        # callable (i, j) -> Fraction
    inj: object = None           # i_n : D_n -> D_{n+1}, as an index table
    proj: object = None          # j_n : D_{n+1} -> D_n, as an index table


@dataclass
class Tower:
    levels: list
    base_metric: object

    def level(self, n: int) -> TowerLevel:
        return self.levels[n]

    @property
    def depth(self) -> int:
        return len(self.levels) - 1

    def inject(self, n: int, x: int) -> int:
        """i_n applied to an element index of D_n."""
        return self.levels[n].inj[x]

    def project(self, n: int, x: int) -> int:
        """j_n applied to an element index of D_{n+1}."""
        return self.levels[n].proj[x]

    def inject_to(self, m: int, n: int, x: int) -> int:
        """i_{mn} composite for m <= n."""
        for k in range(m, n):
            x = self.inject(k, x)
        return x

    def project_to(self, n: int, m: int, x: int) -> int:
        """j_{nm} composite for m <= n."""
        for k in range(n - 1, m - 1, -1):
            x = self.project(k, x)
        return x

    def metric(self, n: int):
        return self.levels[n].metric

    def apply(self, n: int, f: int, x: int) -> int:
        """Apply an element of D_{n+1} = C(D_n, D_n) to an element of D_n."""
        return self.levels[n + 1].maps[f](x)


def build_tower(d0: FinitePoset, p0, depth: int, cap: int = None) -> Tower:
    """D_0 .. D_depth with injection/projection pairs and level metrics.

    p0 maps a pair of D_0 indices to a Fraction bounded by 1.  Level metrics
    follow the applicative scheme with weights 1/2**i over the element
    enumeration of the previous level.
    """
    levels = [TowerLevel(0, d0, metric=_memo2(p0))]
    for n in range(depth):
        prev = levels[n]
        poset, maps = function_space(prev.poset, prev.poset, cap)
        table_index = {m.table: i for i, m in enumerate(maps)}

        if n == 0:
            # i_0(x) = const x, j_0(f) = f(bottom)
            inj = tuple(table_index[(x,) * prev.poset.size]
                        for x in range(prev.poset.size))
            proj = tuple(maps[f](prev.poset.bottom) for f in range(poset.size))
        else:
            below = levels[n - 1]
            inj = tuple(
                table_index[tuple(below.inj[prev.maps[f](below.proj[g])]
                                  for g in range(prev.poset.size))]
                for f in range(prev.poset.size))
            prev_index = {m.table: i for i, m in enumerate(prev.maps)}
            proj = tuple(
                prev_index[tuple(below.proj[maps[g](below.inj[x])]
                                 for x in range(below.poset.size))]
                for g in range(poset.size))

        def make_metric(maps_, prev_metric_, prev_size_):
            def m(f, g):
                total = Fraction(0)
                for i in range(prev_size_):
                    total += dyadic(i + 1) * prev_metric_(maps_[f](i), maps_[g](i))
                return total
            return _memo2(m)

        prev.inj, prev.proj = inj, proj
        levels.append(TowerLevel(n + 1, poset, maps=maps,
                                 metric=make_metric(maps, prev.metric,
                                                    prev.poset.size)))
    return Tower(levels, p0)


def _memo2(fn):
    memo = {}

    def wrapped(a, b):
        k = (a, b)
        if k not in memo:
            memo[k] = fn(a, b)
        return memo[k]

    return wrapped


@dataclass(frozen=True)
class TowerProfile:
    """Levels x_0..x_K with x_n = j_n(x_{n+1})."""

    levels: tuple

    @classmethod
    def from_top(cls, tower: Tower, top: int) -> "TowerProfile":
        xs = [top]
        for n in range(tower.depth - 1, -1, -1):
            xs.append(tower.project(n, xs[-1]))
        return cls(tuple(reversed(xs)))

    def validate(self, tower: Tower):
        for n in range(len(self.levels) - 1):
            if tower.project(n, self.levels[n + 1]) != self.levels[n]:
                raise ValueError(f"profile violates j_{n} coherence")


def p_infinity_prefix(tower: Tower, a: TowerProfile, b: TowerProfile) -> DistanceValue:
    """Prefix of the level-weighted sum with a 2**-K tail bound."""
    a.validate(tower)
    b.validate(tower)
    K = tower.depth
    total = Fraction(0)
    for n in range(1, K + 1):
        total += dyadic(n) * tower.metric(n)(a.levels[n], b.levels[n])
    return bracket(total, total + dyadic(K))


# ---------------------------------------------------------------------------
# Lazy handling of one level above a built tower, for bases whose next
# function space is enumerable but too large to materialize as a poset

def iter_monotone_tables(x: FinitePoset, y: FinitePoset):
    """Yield monotone tables without collecting them."""
    n = x.size
    order = sorted(range(n), key=lambda i: sum(x.leq[j][i] for j in range(n)))
    pos = {e: k for k, e in enumerate(order)}

    def assign(k, partial):
        if k == n:
            table = [None] * n
            for e, v in zip(order, partial):
                table[e] = v
            yield tuple(table)
            return
        e = order[k]
        for v in range(y.size):
            ok = True
            for e2 in order[:k]:
                if x.le(e2, e) and not y.le(partial[pos[e2]], v):
                    ok = False
                    break
                if x.le(e, e2) and not y.le(v, partial[pos[e2]]):
                    ok = False
                    break
            if ok:
                yield from assign(k + 1, partial + (v,))

    yield from assign(0, ())


class LazyTop:
    """The level D_{K+1} above a built tower, with elements handled as raw
    monotone tables instead of poset indices."""

    def __init__(self, tower: Tower):
        self.tower = tower
        self.n = tower.depth  # tables act on D_n
        self.poset = tower.level(self.n).poset
        maps = tower.level(self.n).maps
        self._index = ({m.table: i for i, m in enumerate(maps)}
                       if maps is not None else None)

    def le(self, t1: tuple, t2: tuple) -> bool:
        return all(self.poset.le(a, b) for a, b in zip(t1, t2))

    def inject_from_below(self, f: int) -> tuple:
        """i_n(f) for f an index of D_n, as a table over D_n."""
        tw, n = self.tower, self.n
        if n == 0:
            return (f,) * self.poset.size
        below = tw.level(n - 1)
        fmap = tw.level(n).maps[f]
        return tuple(below.inj[fmap(below.proj[g])]
                     for g in range(self.poset.size))

    def project(self, table: tuple) -> int:
        """j_n of a table, as an index of D_n."""
        tw, n = self.tower, self.n
        if n == 0:
            return table[self.poset.bottom]
        below = tw.level(n - 1)
        target = tuple(below.proj[table[below.inj[x]]]
                       for x in range(below.poset.size))
        try:
            return self._index[target]
        except KeyError:
            raise ValueError("projection left the function space") from None

    def metric(self, t1: tuple, t2: tuple) -> Fraction:
        inner = self.tower.metric(self.n)
        total = Fraction(0)
        for i in range(self.poset.size):
            total += dyadic(i + 1) * inner(t1[i], t2[i])
        return total

    def tables(self):
        return iter_monotone_tables(self.poset, self.poset)

    def random_table(self, rng) -> tuple:
        """A random monotone table via randomized DFS."""
        n = self.poset.size
        order = sorted(range(n), key=lambda i: sum(self.poset.leq[j][i]
                                                   for j in range(n)))
        pos = {e: k for k, e in enumerate(order)}

        def assign(k, partial):
            if k == n:
                table = [None] * n
                for e, v in zip(order, partial):
                    table[e] = v
                return tuple(table)
            e = order[k]
            vals = list(range(n))
            rng.shuffle(vals)
            for v in vals:
                ok = all(not (self.poset.le(e2, e)
                              and not self.poset.le(partial[pos[e2]], v))
                         and not (self.poset.le(e, e2)
                                  and not self.poset.le(v, partial[pos[e2]]))
                         for e2 in order[:k])
                if ok:
                    res = assign(k + 1, partial + (v,))
                    if res is not None:
                        return res
            return None

        table = assign(0, ())
        assert table is not None
        return table


def eval_on_basis(tower: Tower, i: int, x: int, ks: tuple) -> int:
    """Apply x in D_i to basis elements a^{i-1}_{k_{i-1}}, ..., a^0_{k_0}.

    Basis elements are the full carriers in index order; returns a D_0 index.
    """
    cur = x
    for lvl, k in zip(range(i - 1, -1, -1), ks):
        cur = tower.apply(lvl, cur, k)
    return cur


def finitary_closeness_check(tower: Tower, a: TowerProfile, b: TowerProfile,
                             n: int) -> dict:
    """The finitary criterion: leaf closeness below 2**-(n+1) at all sampled
    indices forces the prefix below 2**-n."""
    N = finite_access_bound(Fraction(1, 2), dyadic(n))
    premise = True
    for i in range(1, min(tower.depth, N) + 1):
        sizes = [tower.level(l).poset.size for l in range(i - 1, -1, -1)]
        ranges = [range(min(s, N)) for s in sizes]
        for ks in product(*ranges):
            va = eval_on_basis(tower, i, a.levels[i], ks)
            vb = eval_on_basis(tower, i, b.levels[i], ks)
            if tower.base_metric(va, vb) >= dyadic(n + 1):
                premise = False
                break
        if not premise:
            break
    prefix = p_infinity_prefix(tower, a, b).lower
    return {"premise": premise, "prefix": prefix,
            "holds": (not premise) or prefix < dyadic(n)}
