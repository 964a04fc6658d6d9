"""Order-theoretic models.

Three families live here:

* the integer poset under <= with addition as tensor -- compact closed with
  subsingleton hom-sets, host of the truncation monad ``n |-> max(0, n)``;
* finite pointed posets with monotone maps -- cartesian, with the ascending
  Kleene fixed point as Conway operator and the trace derived from it;
* finite bounded posets, which carry TWO fixed-point operators (ascending
  from bottom, descending from top) and hence two distinct traces; the
  pointwise pair model over them shows a diagonal functor that preserves no
  trace.

All posets are finite, all maps are tables, all equalities are exact.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .core import (BoundaryError, CapabilityError, EmptyHomError, Model,
                   ModelMismatchError, Morphism, UsageError)
from .laws import CaseBudget, CheckReport, Failure, _finish, _rng
from .monads import BimonadBundle, MonadBundle

# ------------------------------------------------------------------ posets


@dataclass(frozen=True, eq=False)
class FinPoset:
    """Finite poset: element labels plus the full order relation on indices.

    Equality is structural but takes the identity fast path first: the
    exhaustive checkers compare boundaries millions of times and products
    are memoised, so most comparisons see the same object twice.
    """
    elements: tuple
    le: frozenset  # index pairs (i, j) with elements[i] <= elements[j]

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash((self.elements, self.le)))

    def __eq__(self, other):
        if self is other:
            return True
        return (isinstance(other, FinPoset)
                and self._hash == other._hash
                and self.elements == other.elements
                and self.le == other.le)

    def __hash__(self):
        return self._hash

    @property
    def size(self):
        return len(self.elements)

    def leq(self, i, j) -> bool:
        return (i, j) in self.le

    def bottom(self):
        return _poset_bottom(self)

    def top(self):
        return _poset_top(self)

    def __repr__(self):
        covers = sorted((i, j) for (i, j) in self.le if i != j)
        return f"FinPoset({self.elements!r}, le={covers})"


@lru_cache(maxsize=None)
def _poset_bottom(P):
    for i in range(P.size):
        if all((i, j) in P.le for j in range(P.size)):
            return i
    return None


@lru_cache(maxsize=None)
def _poset_top(P):
    for i in range(P.size):
        if all((j, i) in P.le for j in range(P.size)):
            return i
    return None


def poset_from_pairs(elements, pairs) -> FinPoset:
    """Reflexive-transitive closure of label pairs; antisymmetry validated."""
    elements = tuple(elements)
    if len(set(elements)) != len(elements):
        raise UsageError("poset elements must be distinct")
    index = {x: i for i, x in enumerate(elements)}
    n = len(elements)
    rel = {(i, i) for i in range(n)}
    for x, y in pairs:
        if x not in index or y not in index:
            raise UsageError(f"relation mentions unknown element {x!r} or {y!r}")
        rel.add((index[x], index[y]))
    changed = True
    while changed:
        changed = False
        for (i, j), (k, l) in itertools.product(tuple(rel), repeat=2):
            if j == k and (i, l) not in rel:
                rel.add((i, l))
                changed = True
    for i, j in rel:
        if i != j and (j, i) in rel:
            raise UsageError(
                f"antisymmetry fails: {elements[i]!r} and {elements[j]!r} "
                f"are mutually related")
    return FinPoset(elements, frozenset(rel))


@lru_cache(maxsize=None)
def poset_product(P: FinPoset, Q: FinPoset) -> FinPoset:
    elements = tuple((p, q) for p in P.elements for q in Q.elements)
    nq = Q.size
    le = frozenset((i1 * nq + j1, i2 * nq + j2)
                   for (i1, i2) in P.le for (j1, j2) in Q.le)
    return FinPoset(elements, le)


def sierpinski() -> FinPoset:
    return poset_from_pairs(("bot", "top"), [("bot", "top")])


_UNIT_POSET = poset_from_pairs(("*",), [])


def _topo_order(P: FinPoset):
    below = [sum(1 for j in range(P.size) if P.leq(j, i)) for i in range(P.size)]
    return sorted(range(P.size), key=lambda i: (below[i], i))


def enumerate_monotone_tables(P: FinPoset, Q: FinPoset, constraint=None):
    """Backtracking enumeration of monotone maps P -> Q as index tables.

    Candidate images are intersected as bitmasks of up-sets, so the
    monotonicity filter costs one AND per predecessor.  An optional
    ``constraint(assignment, i, v)`` hook may veto the partial choice
    f(i) = v; tables come out in a deterministic order.
    """
    if P.size == 0:
        yield ()
        return
    order = _topo_order(P)
    preds = [[j for j in order[:pos] if P.leq(j, order[pos])]
             for pos in range(P.size)]
    nq = Q.size
    upmask = [0] * nq
    for u in range(nq):
        for v in range(nq):
            if Q.leq(u, v):
                upmask[u] |= 1 << v
    full = (1 << nq) - 1
    assignment = {}

    def rec(pos):
        if pos == P.size:
            yield tuple(assignment[i] for i in range(P.size))
            return
        i = order[pos]
        mask = full
        for j in preds[pos]:
            mask &= upmask[assignment[j]]
            if not mask:
                return
        while mask:
            low = mask & -mask
            v = low.bit_length() - 1
            mask ^= low
            if constraint is not None and not constraint(assignment, i, v):
                continue
            assignment[i] = v
            yield from rec(pos + 1)
            del assignment[i]

    yield from rec(0)


# --------------------------------------------------------- the integer poset


class IntPosetModel(Model):
    """Integers ordered by <=; tensor is addition, duals are negation."""

    name = "int_poset"
    symmetric = True
    traced = True
    compact = True

    def check_obj(self, A):
        if not isinstance(A, int) or isinstance(A, bool):
            raise ModelMismatchError(f"not an integer object: {A!r}")

    def obj_size(self, A):
        return abs(A)

    def unit_obj(self):
        return 0

    def _tensor_obj(self, A, B):
        return A + B

    def factor_tensor(self, AB, X):
        self.check_obj(AB)
        self.check_obj(X)
        return AB - X

    def arrow(self, n, m) -> Morphism:
        self.check_obj(n)
        self.check_obj(m)
        if n > m:
            raise BoundaryError(f"no arrow {n} -> {m} in the integer poset")
        return Morphism(self.name, n, m, "le")

    def _identity(self, A):
        return self.arrow(A, A)

    def _compose(self, g, f):
        return self.arrow(f.dom, g.cod)

    def _tensor(self, f, g):
        return self.arrow(f.dom + g.dom, f.cod + g.cod)

    def _sym(self, A, B):
        return self.arrow(A + B, B + A)

    def _assoc(self, A, B, C):
        return self.arrow(A + B + C, A + B + C)

    _assoc_inv = _assoc

    def _lunit(self, A):
        return self.arrow(A, A)

    _lunit_inv = _lunit
    _runit = _lunit
    _runit_inv = _lunit

    def dual_obj(self, A):
        self.check_obj(A)
        return -A

    def cup(self, A):
        return self.arrow(0, 0)

    def cap(self, A):
        return self.arrow(0, 0)

    def _trace(self, X, A, B, f):
        # a + x <= b + x already forces a <= b
        return self.arrow(A, B)

    def enumerate_objects(self, max_size):
        return list(range(-max_size, max_size + 1))

    def sample_object(self, rng, max_size):
        return rng.randint(-max_size, max_size)

    def enumerate_hom(self, A, B):
        return [self.arrow(A, B)] if A <= B else []

    def sample_hom(self, rng, A, B):
        if A > B:
            raise EmptyHomError(f"hom({A}, {B}) is empty")
        return self.arrow(A, B)

    def invert(self, f):
        self.check_mor(f)
        if f.dom == f.cod:
            return f
        return None


def int_poset_model() -> IntPosetModel:
    return IntPosetModel()


def n_monad(model: IntPosetModel = None) -> BimonadBundle:
    """Truncation to the nonnegative part, as a symmetric bimonad."""
    if model is None:
        model = int_poset_model()

    def N(n):
        return max(0, n)

    monad = MonadBundle(
        model, "N",
        on_obj=N,
        on_mor=lambda f: model.arrow(N(f.dom), N(f.cod)),
        mu=lambda n: model.arrow(N(N(n)), N(n)),
        eta=lambda n: model.arrow(n, N(n)))
    return BimonadBundle(
        monad,
        m=lambda a, b: model.arrow(N(a + b), N(a) + N(b)),
        m_unit=model.arrow(0, 0))


# --------------------------------------------------------------- poset models
# structural morphisms are requested millions of times by the exhaustive
# checkers, so the common ones are memoised per (model name, objects)


@lru_cache(maxsize=None)
def _cached_poset_identity(name, A):
    return Morphism(name, A, A, tuple(range(A.size)))


@lru_cache(maxsize=None)
def _cached_poset_sym(name, A, B):
    na, nb = A.size, B.size
    images = [0] * (na * nb)
    for i in range(na):
        for j in range(nb):
            images[i * nb + j] = j * na + i
    return Morphism(name, poset_product(A, B), poset_product(B, A),
                    tuple(images))


@lru_cache(maxsize=None)
def _cached_poset_proj(name, A, B, which):
    if which == 0:
        images = [i for i in range(A.size) for _ in range(B.size)]
        return Morphism(name, poset_product(A, B), A, tuple(images))
    images = [j for _ in range(A.size) for j in range(B.size)]
    return Morphism(name, poset_product(A, B), B, tuple(images))


class _PosetModel(Model):
    """Shared machinery for the finite-poset cartesian models."""

    symmetric = True
    traced = True
    cartesian = True
    has_conway = True
    hom_cap = 300_000

    def check_obj(self, A):
        if not isinstance(A, FinPoset):
            raise ModelMismatchError(f"not a finite poset: {A!r}")
        self._check_flags(A)

    def _check_flags(self, A):
        raise NotImplementedError

    def obj_size(self, A):
        return A.size

    def unit_obj(self):
        return _UNIT_POSET

    def _tensor_obj(self, A, B):
        return poset_product(A, B)

    def factor_tensor(self, AB, X):
        self.check_obj(AB)
        self.check_obj(X)
        if X.size == 0 or AB.size % X.size != 0:
            raise BoundaryError(f"|{AB.size}| does not factor through |{X.size}|")
        k = AB.size // X.size
        firsts = []
        for block in range(k):
            el = AB.elements[block * X.size]
            if not isinstance(el, tuple) or len(el) != 2:
                raise BoundaryError("object is not a product of posets")
            firsts.append(el[0])
        le = frozenset((i, j) for i in range(k) for j in range(k)
                       if AB.leq(i * X.size, j * X.size))
        A = FinPoset(tuple(firsts), le)
        if poset_product(A, X) != AB:
            raise BoundaryError(f"object does not factor as A (x) {X!r}")
        return A

    # morphisms: tables of codomain indices
    def table(self, dom: FinPoset, cod: FinPoset, images) -> Morphism:
        images = tuple(images)
        if len(images) != dom.size or any(not (0 <= v < cod.size)
                                          for v in images):
            raise ModelMismatchError("map table does not fit its boundaries")
        for (i, j) in dom.le:
            if not cod.leq(images[i], images[j]):
                raise ModelMismatchError(
                    f"table is not monotone at pair ({i}, {j})")
        return Morphism(self.name, dom, cod, images)

    def _identity(self, A):
        return _cached_poset_identity(self.name, A)

    def _compose(self, g, f):
        gt, ft = g.payload, f.payload
        return Morphism(self.name, f.dom, g.cod, tuple(gt[v] for v in ft))

    def _tensor(self, f, g):
        nb = g.dom.size
        mb = g.cod.size
        images = []
        for i in range(f.dom.size):
            fi = f.payload[i]
            for j in range(nb):
                images.append(fi * mb + g.payload[j])
        return Morphism(self.name, poset_product(f.dom, g.dom),
                        poset_product(f.cod, g.cod), tuple(images))

    def _sym(self, A, B):
        return _cached_poset_sym(self.name, A, B)

    def _assoc(self, A, B, C):
        dom = poset_product(A, poset_product(B, C))
        cod = poset_product(poset_product(A, B), C)
        return Morphism(self.name, dom, cod, tuple(range(dom.size)))

    def _assoc_inv(self, A, B, C):
        f = self._assoc(A, B, C)
        return Morphism(self.name, f.cod, f.dom, f.payload)

    def _lunit(self, A):
        dom = poset_product(self.unit_obj(), A)
        return Morphism(self.name, dom, A, tuple(range(A.size)))

    def _lunit_inv(self, A):
        f = self._lunit(A)
        return Morphism(self.name, A, f.dom, f.payload)

    def _runit(self, A):
        dom = poset_product(A, self.unit_obj())
        return Morphism(self.name, dom, A, tuple(range(A.size)))

    def _runit_inv(self, A):
        f = self._runit(A)
        return Morphism(self.name, A, f.dom, f.payload)

    # cartesian structure
    def proj0(self, A, B):
        return _cached_poset_proj(self.name, A, B, 0)

    def proj1(self, A, B):
        return _cached_poset_proj(self.name, A, B, 1)

    def pair(self, f, g):
        self.check_mor(f)
        self.check_mor(g)
        if f.dom != g.dom:
            raise BoundaryError("pairing needs a shared domain")
        nb = g.cod.size
        images = tuple(f.payload[i] * nb + g.payload[i]
                       for i in range(f.dom.size))
        return Morphism(self.name, f.dom, poset_product(f.cod, g.cod), images)

    def terminal_map(self, A):
        self.check_obj(A)
        return Morphism(self.name, A, self.unit_obj(), (0,) * A.size)

    # fixed points and the trace derived from them
    def _start_index(self, X: FinPoset) -> int:
        raise NotImplementedError

    def fix(self, X, A, f):
        self.check_mor(f)
        if f.dom != poset_product(A, X) or f.cod != X:
            raise BoundaryError(f"fix needs f : A x X -> X, got "
                                f"{f.dom!r} -> {f.cod!r}")
        nx = X.size
        table = f.payload
        images = []
        for i in range(A.size):
            x = self._start_index(X)
            for _ in range(nx + 1):
                nxt = table[i * nx + x]
                if nxt == x:
                    break
                x = nxt
            else:
                raise AssertionError("fixed-point iteration failed to settle")
            images.append(x)
        return Morphism(self.name, A, X, tuple(images))

    def _trace(self, X, A, B, f):
        # the fixed point of the feedback coordinate, fed back in, projected
        # out; identical to trace_by_fix_formula but on raw tables (the
        # checkers call this millions of times)
        nx = X.size
        table = f.payload
        start = self._start_index(X)
        images = []
        for i in range(A.size):
            base = i * nx
            x = start
            for _ in range(nx + 1):
                nxt = table[base + x] % nx
                if nxt == x:
                    break
                x = nxt
            else:
                raise AssertionError("feedback iteration failed to settle")
            images.append(table[base + x] // nx)
        return Morphism(self.name, A, B, tuple(images))

    def trace_by_fix_formula(self, X, A, B, f):
        """The trace spelled out through pairing, fixed point, projection."""
        p1f = self.compose(self.proj1(B, X), f)
        fx = self.fix(X, A, p1f)
        return self.seq(self.pair(self.identity(A), fx), f, self.proj0(B, X))

    # enumeration and sampling
    def enumerate_objects(self, max_size):
        out = []
        for n in range(1, max_size + 1):
            seen = set()
            middle = list(itertools.combinations(range(n), 2))
            required = self._required_pairs(n)
            for subset in itertools.product((False, True), repeat=len(middle)):
                pairs = set(required)
                pairs.update(p for p, keep in zip(middle, subset) if keep)
                # transitive closure within the index order
                changed = True
                while changed:
                    changed = False
                    for (i, j), (k, l) in itertools.product(tuple(pairs),
                                                            repeat=2):
                        if j == k and (i, l) not in pairs:
                            pairs.add((i, l))
                            changed = True
                key = frozenset(pairs)
                if key in seen:
                    continue
                seen.add(key)
                le = frozenset(set(key) | {(i, i) for i in range(n)})
                P = FinPoset(tuple(range(n)), le)
                if self._admissible(P):
                    out.append(P)
        return out

    def _required_pairs(self, n):
        raise NotImplementedError

    def _admissible(self, P):
        try:
            self._check_flags(P)
            return True
        except ModelMismatchError:
            return False

    def sample_object(self, rng, max_size):
        objs = self.enumerate_objects(max_size)
        return objs[rng.randrange(len(objs))]

    def enumerate_hom(self, A, B):
        self.check_obj(A)
        self.check_obj(B)
        est = B.size ** A.size
        if est > self.hom_cap:
            return None
        return [Morphism(self.name, A, B, t)
                for t in enumerate_monotone_tables(A, B)]

    def sample_hom(self, rng, A, B):
        self.check_obj(A)
        self.check_obj(B)
        order = _topo_order(A)
        for _ in range(32):
            images = {}
            dead = False
            for pos, i in enumerate(order):
                opts = [v for v in range(B.size)
                        if all(B.leq(images[j], v)
                               for j in order[:pos] if A.leq(j, i))]
                if not opts:
                    dead = True
                    break
                images[i] = rng.choice(opts)
            if not dead:
                return Morphism(self.name, A, B,
                                tuple(images[i] for i in range(A.size)))
        # fallback: the constant map to the start element always works
        v = self._start_index(B)
        return Morphism(self.name, A, B, (v,) * A.size)

    def invert(self, f):
        self.check_mor(f)
        if f.dom.size != f.cod.size or len(set(f.payload)) != f.dom.size:
            return None
        inv = [0] * f.cod.size
        for i, v in enumerate(f.payload):
            inv[v] = i
        for (i, j) in f.cod.le:
            if not f.dom.leq(inv[i], inv[j]):
                return None
        return Morphism(self.name, f.cod, f.dom, tuple(inv))


class FinCppoModel(_PosetModel):
    """Finite pointed posets; fixed points ascend from the bottom."""

    name = "fin_cppo"

    def _check_flags(self, A):
        if A.bottom() is None:
            raise ModelMismatchError(f"poset has no bottom element: {A!r}")

    def _required_pairs(self, n):
        return {(0, k) for k in range(1, n)}

    def _start_index(self, X):
        return X.bottom()


class BoundedPosetModel(_PosetModel):
    """Finite bounded posets with a selectable trace flavour.

    ``flavor="lfp"`` iterates from the bottom, ``flavor="gfp"`` from the
    top; both yield Conway operators (hence traces), and they genuinely
    disagree (see ``bounded_poset_two_traces``).  Both flavours share the
    model name so their morphisms interchange freely.
    """

    name = "bounded_poset"

    def __init__(self, flavor="lfp"):
        if flavor not in ("lfp", "gfp"):
            raise UsageError(f"unknown trace flavor {flavor!r}")
        self.flavor = flavor

    def _check_flags(self, A):
        if A.bottom() is None or A.top() is None:
            raise ModelMismatchError(f"poset is not bounded: {A!r}")

    def _required_pairs(self, n):
        req = {(0, k) for k in range(1, n)}
        req.update((k, n - 1) for k in range(n - 1))
        return req

    def _start_index(self, X):
        return X.bottom() if self.flavor == "lfp" else X.top()


def fincppo_model() -> FinCppoModel:
    return FinCppoModel()


# --------------------------------------------------- pointwise product model


@dataclass(frozen=True)
class PairOb:
    left: object
    right: object


class PairModel(Model):
    """Pointwise product of two models sharing their object/morphism types.

    Structure (tensor, symmetry, trace...) is computed coordinatewise, so a
    pair of traces on the factors yields a trace here even when the two
    factor traces differ.
    """

    symmetric = True
    traced = True

    def __init__(self, first: Model, second: Model):
        self.first = first
        self.second = second
        self.name = f"pair[{first.name}:{getattr(first, 'flavor', '')}"\
                    f"|{second.name}:{getattr(second, 'flavor', '')}]"

    def check_obj(self, A):
        if not isinstance(A, PairOb):
            raise ModelMismatchError(f"not a pair object: {A!r}")
        self.first.check_obj(A.left)
        self.second.check_obj(A.right)

    def obj_size(self, A):
        return self.first.obj_size(A.left) + self.second.obj_size(A.right)

    def unit_obj(self):
        return PairOb(self.first.unit_obj(), self.second.unit_obj())

    def _tensor_obj(self, A, B):
        return PairOb(self.first.tensor_obj(A.left, B.left),
                      self.second.tensor_obj(A.right, B.right))

    def factor_tensor(self, AB, X):
        return PairOb(self.first.factor_tensor(AB.left, X.left),
                      self.second.factor_tensor(AB.right, X.right))

    def pair_mor(self, f: Morphism, g: Morphism) -> Morphism:
        self.first.check_mor(f)
        self.second.check_mor(g)
        return Morphism(self.name, PairOb(f.dom, g.dom), PairOb(f.cod, g.cod),
                        (f, g))

    def diagonal(self, f: Morphism) -> Morphism:
        """The image (f, f) of a single morphism of the shared base."""
        return self.pair_mor(f, f)

    def _identity(self, A):
        return self.pair_mor(self.first.identity(A.left),
                             self.second.identity(A.right))

    def _compose(self, g, f):
        return self.pair_mor(self.first.compose(g.payload[0], f.payload[0]),
                             self.second.compose(g.payload[1], f.payload[1]))

    def _tensor(self, f, g):
        return self.pair_mor(self.first.tensor(f.payload[0], g.payload[0]),
                             self.second.tensor(f.payload[1], g.payload[1]))

    def _sym(self, A, B):
        return self.pair_mor(self.first.sym(A.left, B.left),
                             self.second.sym(A.right, B.right))

    def _assoc(self, A, B, C):
        return self.pair_mor(self.first.assoc(A.left, B.left, C.left),
                             self.second.assoc(A.right, B.right, C.right))

    def _assoc_inv(self, A, B, C):
        return self.pair_mor(self.first.assoc_inv(A.left, B.left, C.left),
                             self.second.assoc_inv(A.right, B.right, C.right))

    def _lunit(self, A):
        return self.pair_mor(self.first.lunit(A.left), self.second.lunit(A.right))

    def _lunit_inv(self, A):
        return self.pair_mor(self.first.lunit_inv(A.left),
                             self.second.lunit_inv(A.right))

    def _runit(self, A):
        return self.pair_mor(self.first.runit(A.left), self.second.runit(A.right))

    def _runit_inv(self, A):
        return self.pair_mor(self.first.runit_inv(A.left),
                             self.second.runit_inv(A.right))

    def _trace(self, X, A, B, f):
        return self.pair_mor(
            self.first.trace(X.left, A.left, B.left, f.payload[0]),
            self.second.trace(X.right, A.right, B.right, f.payload[1]))

    def enumerate_objects(self, max_size):
        lefts = self.first.enumerate_objects(max_size)
        rights = self.second.enumerate_objects(max_size)
        if lefts is None or rights is None:
            return None
        return [PairOb(l, r) for l, r in itertools.product(lefts, rights)]

    def sample_object(self, rng, max_size):
        return PairOb(self.first.sample_object(rng, max_size),
                      self.second.sample_object(rng, max_size))

    def enumerate_hom(self, A, B):
        return None

    def sample_hom(self, rng, A, B):
        return self.pair_mor(self.first.sample_hom(rng, A.left, B.left),
                             self.second.sample_hom(rng, A.right, B.right))


@dataclass(frozen=True)
class TwoTraceBundle:
    lfp: BoundedPosetModel
    gfp: BoundedPosetModel
    product: PairModel


def bounded_poset_two_traces() -> TwoTraceBundle:
    lfp = BoundedPosetModel("lfp")
    gfp = BoundedPosetModel("gfp")
    return TwoTraceBundle(lfp, gfp, PairModel(lfp, gfp))


def two_trace_distinctness_witness(bundle: TwoTraceBundle):
    """f(*, x) = (x, x) over the two-point lattice separates the traces."""
    lfp, gfp = bundle.lfp, bundle.gfp
    sig = sierpinski()
    point = lfp.unit_obj()
    dom = poset_product(point, sig)
    cod = poset_product(sig, sig)
    f = lfp.table(dom, cod, (0, 3))  # (*, bot) -> (bot, bot); (*, top) -> (top, top)
    tr_l = lfp.trace(sig, point, sig, f)
    tr_g = gfp.trace(sig, point, sig, f)
    return {"f": f, "lfp_trace": tr_l, "gfp_trace": tr_g,
            "distinct": tr_l.payload != tr_g.payload}


def diagonal_preservation_check(budget: CaseBudget) -> CheckReport:
    """The diagonal into the two-trace pair model cannot preserve the trace.

    Checks the canonical witness first, then samples for more; the report
    fails (by design, this is the expected outcome) listing each morphism f
    whose pointwise pair trace differs from the diagonal of its own trace.
    """
    bundle = bounded_poset_two_traces()
    prod, lfp = bundle.product, bundle.lfp
    failures = []
    cases = 0

    def check_one(A, B, X, f):
        nonlocal cases
        cases += 1
        lhs = prod.trace(PairOb(X, X), PairOb(A, A), PairOb(B, B),
                         prod.diagonal(f))
        rhs = prod.diagonal(lfp.trace(X, A, B, f))
        if not prod.mor_eq(lhs, rhs):
            failures.append(Failure("diagonal_preserves_trace",
                                    {"A": A, "B": B, "X": X, "f": f},
                                    lhs, rhs))

    wit = two_trace_distinctness_witness(bundle)
    f = wit["f"]
    check_one(lfp.unit_obj(), sierpinski(), sierpinski(), f)

    objs = lfp.enumerate_objects(budget.max_object_size)
    for i in range(budget.cases):
        rng = _rng(budget, "diagonal", i)
        A, B, X = (objs[rng.randrange(len(objs))] for _ in range(3))
        g = lfp.sample_hom(rng, poset_product(A, X), poset_product(B, X))
        check_one(A, B, X, g)

    return _finish("diagonal_nonpreservation", prod.name, cases, failures,
                   findings={"witness_found": bool(failures),
                             "canonical_witness_separates": wit["distinct"]})


# ------------------------------------------------- monoid bundles on posets


def canonical_cartesian_bimonad(model: Model, monad: MonadBundle) -> BimonadBundle:
    """The unique symmetric bimonad structure over a cartesian model."""
    if not model.cartesian:
        raise CapabilityError("canonical bimonad needs a cartesian model")

    def m(A, B):
        return model.pair(monad.on_mor(model.proj0(A, B)),
                          monad.on_mor(model.proj1(A, B)))

    top = model.unit_obj()
    return BimonadBundle(monad, m, model.terminal_map(monad.on_obj(top)))


def _module_morphism_enumerator(model, h_size, src, tgt):
    """Equivariant monotone tables src.carrier -> tgt.carrier.

    Equivariance against the algebra actions is propagated inside the
    monotone backtracking: the constraint f(h.u) = h.f(u) is checked as
    soon as both endpoints are assigned, which prunes hard.
    """
    P, Q = src.carrier, tgt.carrier
    act_s = src.action.payload   # table over h * |P| + u
    act_t = tgt.action.payload
    np_, nq = P.size, Q.size

    pos_of = {}
    order = _topo_order(P)
    for pos, i in enumerate(order):
        pos_of[i] = pos
    # constraints (h, u, w = h.u) indexed by the later endpoint
    by_latest = [[] for _ in range(np_)]
    for h in range(h_size):
        for u in range(np_):
            w = act_s[h * np_ + u]
            latest = u if pos_of[u] >= pos_of[w] else w
            by_latest[latest].append((h, u, w))

    def constraint(assignment, i, v):
        for (h, u, w) in by_latest[i]:
            fu = v if u == i else assignment.get(u)
            fw = v if w == i else assignment.get(w)
            if fu is None or fw is None:
                continue
            if fw != act_t[h * nq + fu]:
                return False
        return True

    return [Morphism(model.name, P, Q, t)
            for t in enumerate_monotone_tables(P, Q, constraint=constraint)]


def monoid_bimonad(model: _PosetModel, H: FinPoset, mult_table, unit_index,
                   name) -> BimonadBundle:
    """Canonical bimonad of the representable monad of a poset monoid."""
    from .hopf_monoid import induced_monad

    mult = model.table(poset_product(H, H), H, mult_table)
    unit = model.table(model.unit_obj(), H, (unit_index,))
    hooks = {
        "algmor_enumerator":
            lambda src, tgt: _module_morphism_enumerator(model, H.size, src, tgt),
    }
    monad = induced_monad(model, H, mult, unit, name, **hooks)
    return canonical_cartesian_bimonad(model, monad)


def sigma_meet_bimonad(model: FinCppoModel) -> BimonadBundle:
    """Two-point lattice acting by meet; the unit is the top element."""
    return monoid_bimonad(model, sierpinski(), (0, 0, 0, 1), 1, "sigma_meet")


def sigma_join_bimonad(model: FinCppoModel) -> BimonadBundle:
    """Two-point lattice acting by join; the unit is the bottom element."""
    return monoid_bimonad(model, sierpinski(), (0, 1, 1, 1), 0, "sigma_join")


def sierpinski_scenarios(budget: CaseBudget = None, parts=("meet", "join")) -> dict:
    """The separating behaviour of the two lattice monoids on posets.

    meet: traced monad (checked two ways) but provably not Hopf -- the
    exhaustive antipode search over all monotone endomaps comes back empty.
    join: a perfectly fine symmetric bimonad whose fixed-point operator does
    not lift: the projection onto the feedback coordinate is a module
    morphism whose fixed point is not.
    """
    from .eilenberg_moore import (TAlgebra, check_traced_monad,
                                  check_traced_via_fix)
    from .hopf_monoid import antipode_search

    budget = budget or CaseBudget(seed=0, cases=50, max_object_size=3)
    model = fincppo_model()
    sig = sierpinski()
    out = {}

    if "meet" in parts:
        meet = sigma_meet_bimonad(model)
        mult = model.table(poset_product(sig, sig), sig, (0, 0, 0, 1))
        unit = model.table(model.unit_obj(), sig, (1,))
        comult = model.pair(model.identity(sig), model.identity(sig))
        counit = model.terminal_map(sig)
        out["meet"] = {
            "traced_monad": check_traced_monad(model, meet, budget),
            "traced_via_fix": check_traced_via_fix(model, meet, budget),
            "antipodes": antipode_search(model, sig, mult, unit, comult,
                                         counit),
        }
        out["strictness"] = _strictness_property(model, budget)

    if "join" in parts:
        join = sigma_join_bimonad(model)
        # the pinned instance: carrier and feedback both the join module on
        # the lattice itself, f the projection onto the feedback coordinate
        join_mod = TAlgebra(sig, model.table(poset_product(sig, sig), sig,
                                             (0, 1, 1, 1)))
        f = model.proj1(sig, sig)
        fx = model.fix(sig, sig, f)          # everything to bottom
        act = join_mod.action
        lhs = model.compose(fx, act)         # Fix(f) after the action
        rhs = model.compose(act, model.tensor(model.identity(sig), fx))
        top_top = 1 * sig.size + 1
        out["join"] = {
            "traced_monad": check_traced_monad(model, join, budget),
            "traced_via_fix": check_traced_via_fix(model, join, budget),
            "pinned_witness": {
                "fix_is_constant_bottom": fx.payload == (0, 0),
                "lhs_at_top_top": sig.elements[lhs.payload[top_top]],
                "rhs_at_top_top": sig.elements[rhs.payload[top_top]],
                "violated": lhs.payload[top_top] != rhs.payload[top_top],
            },
        }
    return out


def _strictness_property(model: FinCppoModel, budget: CaseBudget) -> CheckReport:
    """If h is strict and g o (1 x h) = h o f then fix(g(a,-)) = h(fix(f(a,-)))."""
    failures = []
    cases = 0
    objs = [P for P in model.enumerate_objects(min(3, budget.max_object_size))]
    for A, X, Y in itertools.product(objs, repeat=3):
        hs = model.enumerate_hom(X, Y)
        fs = model.enumerate_hom(poset_product(A, X), X)
        gs = model.enumerate_hom(poset_product(A, Y), Y)
        if hs is None or fs is None or gs is None:
            continue
        strict = [h for h in hs if h.payload[X.bottom()] == Y.bottom()]
        for h in strict:
            # index the g's by their composite with 1 x h, then pair with
            # every f whose image under h matches
            one_h = model.tensor(model.identity(A), h)
            by_pre = {}
            for g in gs:
                by_pre.setdefault(model.compose(g, one_h).payload, []).append(g)
            for f in fs:
                hf = model.compose(h, f)
                for g in by_pre.get(hf.payload, ()):
                    cases += 1
                    lhs = model.fix(Y, A, g)
                    rhs = model.compose(h, model.fix(X, A, f))
                    if not model.mor_eq(lhs, rhs):
                        failures.append(Failure(
                            "strict_fixed_point_transfer",
                            {"A": A, "X": X, "Y": Y, "h": h, "f": f, "g": g},
                            lhs, rhs))
        if cases > 4000:
            break
    return _finish("strict_fixed_point_transfer", model.name, cases, failures)
