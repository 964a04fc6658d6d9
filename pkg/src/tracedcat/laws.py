"""Property-based checkers for the monoidal, trace, snake and Conway laws.

Each suite is generic over any :class:`~tracedcat.core.Model` and produces a
witness-carrying :class:`CheckReport`.  Runs are deterministic: the same
(model, budget) pair always yields the same report, and every reported
failure replays to ``lhs != rhs`` under ``mor_eq``.

Suites run either *sampled* (``budget.cases`` seeded draws) or *exhaustive*
(full enumeration of all instantiations within ``budget.max_object_size``;
requires hom-set enumerators).  Requesting exhaustiveness from a model
without enumerators downgrades the verdict to ``inconclusive`` unless a
failure is found.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .core import CapabilityError, EmptyHomError, Model, Morphism


@dataclass(frozen=True)
class CaseBudget:
    """Seeded, bounded test budget; identical budgets replay identically."""
    seed: int
    cases: int = 100
    max_object_size: int = 4

    def __post_init__(self):
        if self.cases < 1:
            raise ValueError("cases must be >= 1")


@dataclass(frozen=True)
class Failure:
    law: str
    inputs: dict
    lhs: Morphism
    rhs: Morphism


@dataclass
class CheckReport:
    suite: str
    model: str
    cases_run: int
    verdict: str  # pass | fail | inconclusive
    failures: list = field(default_factory=list)
    findings: dict = field(default_factory=dict)

    @property
    def passed(self):
        return self.verdict == "pass"


def _finish(suite, model_name, cases, failures, exhaustive_ok=True, findings=None):
    if failures:
        verdict = "fail"
    elif exhaustive_ok:
        verdict = "pass"
    else:
        verdict = "inconclusive"
    return CheckReport(suite, model_name, cases, verdict, failures,
                       findings or {})


def _rng(budget: CaseBudget, tag: str, i: int) -> random.Random:
    return random.Random(f"{tag}:{budget.seed}:{i}")


def _objects(model: Model, budget: CaseBudget):
    objs = model.enumerate_objects(budget.max_object_size)
    if objs is None:
        rng = _rng(budget, "objpool", 0)
        objs = [model.sample_object(rng, budget.max_object_size)
                for _ in range(max(8, budget.max_object_size * 4))]
    return objs


class _Draw:
    """One sampled case: deterministic object and morphism choices."""

    def __init__(self, model, rng, objs):
        self.model = model
        self.rng = rng
        self.objs = objs

    def obj(self):
        return self.rng.choice(self.objs)

    def hom(self, A, B):
        return self.model.sample_hom(self.rng, A, B)


def _run_law(model, budget, exhaustive, law, sampled_case, exhaustive_cases,
             failures, counter):
    """Drive one law; sampled_case draws one case, exhaustive_cases yields all.

    Each case evaluates to (inputs, lhs, rhs); lhs/rhs are compared exactly.
    """
    if exhaustive:
        gen = exhaustive_cases() if exhaustive_cases is not None else None
        if gen is not None:
            for inputs, lhs, rhs in gen:
                counter[0] += 1
                if not model.mor_eq(lhs, rhs):
                    failures.append(Failure(law, inputs, lhs, rhs))
            return True  # genuinely exhausted
        # fall through to sampling; caller marks the report inconclusive
    objs = _objects(model, budget)
    for i in range(budget.cases):
        draw = _Draw(model, _rng(budget, law, i), objs)
        try:
            inputs, lhs, rhs = sampled_case(draw)
        except EmptyHomError:
            continue  # subsingleton models: the drawn hom-set was empty
        counter[0] += 1
        if not model.mor_eq(lhs, rhs):
            failures.append(Failure(law, inputs, lhs, rhs))
    return not exhaustive


# ------------------------------------------------------------ monoidal suite


def check_monoidal_laws(model: Model, budget: CaseBudget,
                        exhaustive=False) -> CheckReport:
    """Pentagon, triangle, symmetry involution, hexagon, bifunctoriality."""
    if not model.symmetric:
        raise CapabilityError("check_monoidal_laws needs a symmetric model")
    failures, counter = [], [0]
    exhausted = True
    objs_all = model.enumerate_objects(budget.max_object_size)
    i = model.identity

    def pentagon(A, B, C, D):
        lhs = model.compose(model.assoc(model.tensor_obj(A, B), C, D),
                            model.assoc(A, B, model.tensor_obj(C, D)))
        rhs = model.seq(model.tensor(i(A), model.assoc(B, C, D)),
                        model.assoc(A, model.tensor_obj(B, C), D),
                        model.tensor(model.assoc(A, B, C), i(D)))
        return {"objects": (A, B, C, D)}, lhs, rhs

    def triangle(A, B):
        I = model.unit_obj()
        lhs = model.compose(model.tensor(model.runit(A), i(B)),
                            model.assoc(A, I, B))
        rhs = model.tensor(i(A), model.lunit(B))
        return {"objects": (A, B)}, lhs, rhs

    def sym_invol(A, B):
        lhs = model.compose(model.sym(B, A), model.sym(A, B))
        rhs = i(model.tensor_obj(A, B))
        return {"objects": (A, B)}, lhs, rhs

    def hexagon(A, B, C):
        lhs = model.seq(model.tensor(model.sym(A, B), i(C)),
                        model.assoc_inv(B, A, C),
                        model.tensor(i(B), model.sym(A, C)))
        rhs = model.seq(model.assoc_inv(A, B, C),
                        model.sym(A, model.tensor_obj(B, C)),
                        model.assoc_inv(B, C, A))
        return {"objects": (A, B, C)}, lhs, rhs

    def structural_inverses(A, B, C):
        checks = [
            model.compose(model.assoc(A, B, C), model.assoc_inv(A, B, C)),
            model.compose(model.assoc_inv(A, B, C), model.assoc(A, B, C)),
            model.compose(model.lunit(A), model.lunit_inv(A)),
            model.compose(model.lunit_inv(A), model.lunit(A)),
            model.compose(model.runit(A), model.runit_inv(A)),
            model.compose(model.runit_inv(A), model.runit(A)),
        ]
        good = all(model.mor_eq(c, i(c.dom)) for c in checks)
        witness = i(A) if good else next(
            c for c in checks if not model.mor_eq(c, i(c.dom)))
        return {"objects": (A, B, C)}, witness, i(witness.dom)

    # object-only laws
    for law, fn, arity in (("pentagon", pentagon, 4), ("triangle", triangle, 2),
                           ("symmetry_involution", sym_invol, 2),
                           ("hexagon", hexagon, 3),
                           ("structural_inverses", structural_inverses, 3)):
        def sampled(draw, fn=fn, arity=arity):
            return fn(*(draw.obj() for _ in range(arity)))

        def exhaustive_gen(fn=fn, arity=arity):
            if objs_all is None:
                return None
            return (fn(*combo) for combo in itertools.product(objs_all, repeat=arity))

        done = _run_law(model, budget, exhaustive, law, sampled,
                        exhaustive_gen if exhaustive else None, failures, counter)
        exhausted = exhausted and (done or not exhaustive)

    # bifunctoriality needs morphisms
    def bifunct(draw):
        A, B, C = draw.obj(), draw.obj(), draw.obj()
        Ap, Bp, Cp = draw.obj(), draw.obj(), draw.obj()
        h, f = draw.hom(A, B), draw.hom(B, C)
        k, g = draw.hom(Ap, Bp), draw.hom(Bp, Cp)
        lhs = model.compose(model.tensor(f, g), model.tensor(h, k))
        rhs = model.tensor(model.compose(f, h), model.compose(g, k))
        return {"f": f, "g": g, "h": h, "k": k}, lhs, rhs

    def bifunct_all():
        if objs_all is None or not _homs_enumerable(model):
            return None
        def gen():
            for A, B, C, Ap, Bp, Cp in itertools.product(objs_all, repeat=6):
                homs = (model.enumerate_hom(A, B), model.enumerate_hom(B, C),
                        model.enumerate_hom(Ap, Bp), model.enumerate_hom(Bp, Cp))
                if any(hs is None for hs in homs):
                    return
                for h, f, k, g in itertools.product(*homs):
                    lhs = model.compose(model.tensor(f, g), model.tensor(h, k))
                    rhs = model.tensor(model.compose(f, h), model.compose(g, k))
                    yield {"f": f, "g": g, "h": h, "k": k}, lhs, rhs
        return gen()

    done = _run_law(model, budget, exhaustive, "tensor_bifunctorial", bifunct,
                    bifunct_all if exhaustive else None, failures, counter)
    exhausted = exhausted and (done or not exhaustive)

    # naturality of the symmetry: sampled only (two free morphisms)
    def sym_natural(draw):
        A, B, C, D = (draw.obj() for _ in range(4))
        f = draw.hom(A, B)
        g = draw.hom(C, D)
        lhs = model.compose(model.sym(B, D), model.tensor(f, g))
        rhs = model.compose(model.tensor(g, f), model.sym(A, C))
        return {"f": f, "g": g}, lhs, rhs

    done = _run_law(model, budget, False, "symmetry_natural", sym_natural,
                    None, failures, counter)

    def tensor_id(draw):
        A, B = draw.obj(), draw.obj()
        lhs = model.tensor(i(A), i(B))
        rhs = i(model.tensor_obj(A, B))
        return {"objects": (A, B)}, lhs, rhs

    done = _run_law(model, budget, exhaustive, "tensor_identity", tensor_id,
                    (lambda: ( ({"objects": (A, B)},
                                model.tensor(i(A), i(B)),
                                i(model.tensor_obj(A, B)))
                              for A, B in itertools.product(objs_all, repeat=2))
                     if objs_all is not None else None) if exhaustive else None,
                    failures, counter)
    exhausted = exhausted and (done or not exhaustive)

    return _finish("monoidal_laws", model.name, counter[0], failures,
                   exhaustive_ok=(not exhaustive) or exhausted)


# --------------------------------------------------------------- trace suite


def _hom_iter(model, A, B):
    hs = model.enumerate_hom(A, B)
    return hs


def _homs_enumerable(model):
    I = model.unit_obj()
    return model.enumerate_hom(I, I) is not None


def check_trace_axioms(model: Model, budget: CaseBudget,
                       exhaustive=False) -> CheckReport:
    """Tightening, sliding, vanishing (binary form), superposing, yanking.

    Vanishing for the unit object is a consequence of the axiom basis and is
    asserted separately as a derived property.
    """
    if not model.traced:
        raise CapabilityError("check_trace_axioms needs a traced model")
    failures, counter = [], [0]
    exhausted = True
    objs_all = model.enumerate_objects(budget.max_object_size)
    if exhaustive and not _homs_enumerable(model):
        objs_all = None  # cannot exhaust the morphism quantifiers
    i = model.identity
    I = model.unit_obj()

    def tl_eval(f, g, A, Ap, B, X):
        lhs = model.trace(X, Ap, B, model.compose(f, model.tensor(g, i(X))))
        rhs = model.compose(model.trace(X, A, B, f), g)
        return {"A": A, "A'": Ap, "B": B, "X": X, "f": f, "g": g}, lhs, rhs

    def tr_eval(f, h, A, B, Bp, X):
        lhs = model.trace(X, A, Bp, model.compose(model.tensor(h, i(X)), f))
        rhs = model.compose(h, model.trace(X, A, B, f))
        return {"A": A, "B": B, "B'": Bp, "X": X, "f": f, "h": h}, lhs, rhs

    def sl_eval(f, k, A, B, X, Xp):
        # f : A (x) X -> B (x) X', k : X' -> X; sliding k around the loop
        lhs = model.trace(Xp, A, B, model.compose(f, model.tensor(i(A), k)))
        rhs = model.trace(X, A, B, model.compose(model.tensor(i(B), k), f))
        return {"A": A, "B": B, "X": X, "X'": Xp, "f": f, "k": k}, lhs, rhs

    def va_eval(f, A, B, X, Y):
        XY = model.tensor_obj(X, Y)
        lhs = model.trace(XY, A, B, f)
        inner = model.seq(model.assoc_inv(A, X, Y), f, model.assoc(B, X, Y))
        stage = model.trace(Y, model.tensor_obj(A, X), model.tensor_obj(B, X),
                            inner)
        rhs = model.trace(X, A, B, stage)
        return {"A": A, "B": B, "X": X, "Y": Y, "f": f}, lhs, rhs

    def su_eval(f, A, B, C, X):
        conj = model.seq(model.assoc_inv(C, A, X),
                         model.tensor(i(C), f),
                         model.assoc(C, B, X))
        lhs = model.trace(X, model.tensor_obj(C, A), model.tensor_obj(C, B), conj)
        rhs = model.tensor(i(C), model.trace(X, A, B, f))
        return {"A": A, "B": B, "C": C, "X": X, "f": f}, lhs, rhs

    def ya_eval(X):
        lhs = model.trace(X, X, X, model.sym(X, X))
        rhs = i(X)
        return {"X": X}, lhs, rhs

    def vu_eval(f, A, B):
        lhs = model.trace(I, A, B, f)
        rhs = model.seq(model.runit_inv(A), f, model.runit(B))
        return {"A": A, "B": B, "f": f}, lhs, rhs

    specs = []

    def ax(name, sampler, gen):
        specs.append((name, sampler, gen))

    ax("tightening_left",
       lambda d: (lambda A, Ap, B, X:
                  tl_eval(d.hom(model.tensor_obj(A, X), model.tensor_obj(B, X)),
                          d.hom(Ap, A), A, Ap, B, X))(d.obj(), d.obj(), d.obj(), d.obj()),
       lambda: _gen_tightening_left(model, objs_all, tl_eval))
    ax("tightening_right",
       lambda d: (lambda A, B, Bp, X:
                  tr_eval(d.hom(model.tensor_obj(A, X), model.tensor_obj(B, X)),
                          d.hom(B, Bp), A, B, Bp, X))(d.obj(), d.obj(), d.obj(), d.obj()),
       lambda: _gen_tightening_right(model, objs_all, tr_eval))
    ax("sliding",
       lambda d: (lambda A, B, X, Xp:
                  sl_eval(d.hom(model.tensor_obj(A, X), model.tensor_obj(B, Xp)),
                          d.hom(Xp, X), A, B, X, Xp))(d.obj(), d.obj(), d.obj(), d.obj()),
       lambda: _gen_sliding(model, objs_all, sl_eval))
    ax("vanishing_tensor",
       lambda d: (lambda A, B, X, Y:
                  va_eval(d.hom(model.tensor_obj(A, model.tensor_obj(X, Y)),
                                model.tensor_obj(B, model.tensor_obj(X, Y))),
                          A, B, X, Y))(d.obj(), d.obj(), d.obj(), d.obj()),
       lambda: _gen_vanishing(model, objs_all, va_eval))
    ax("superposing",
       lambda d: (lambda A, B, C, X:
                  su_eval(d.hom(model.tensor_obj(A, X), model.tensor_obj(B, X)),
                          A, B, C, X))(d.obj(), d.obj(), d.obj(), d.obj()),
       lambda: _gen_superposing(model, objs_all, su_eval))
    ax("yanking",
       lambda d: ya_eval(d.obj()),
       lambda: ((ya_eval(X)) for X in objs_all) if objs_all is not None else None)
    ax("vanishing_unit_derived",
       lambda d: (lambda A, B:
                  vu_eval(d.hom(model.tensor_obj(A, I), model.tensor_obj(B, I)),
                          A, B))(d.obj(), d.obj()),
       lambda: _gen_vanish_unit(model, objs_all, vu_eval, I))

    for name, sampler, gen in specs:
        done = _run_law(model, budget, exhaustive, name, sampler,
                        gen if exhaustive else None, failures, counter)
        exhausted = exhausted and (done or not exhaustive)

    return _finish("trace_axioms", model.name, counter[0], failures,
                   exhaustive_ok=(not exhaustive) or exhausted)


def _gen_tightening_left(model, objs, tl_eval):
    if objs is None:
        return None
    def gen():
        for A, Ap, B, X in itertools.product(objs, repeat=4):
            fs = _hom_iter(model, model.tensor_obj(A, X), model.tensor_obj(B, X))
            gs = _hom_iter(model, Ap, A)
            if fs is None or gs is None:
                return
            for f in fs:
                for g in gs:
                    yield tl_eval(f, g, A, Ap, B, X)
    return gen()


def _gen_tightening_right(model, objs, tr_eval):
    if objs is None:
        return None
    def gen():
        for A, B, Bp, X in itertools.product(objs, repeat=4):
            fs = _hom_iter(model, model.tensor_obj(A, X), model.tensor_obj(B, X))
            hs = _hom_iter(model, B, Bp)
            if fs is None or hs is None:
                return
            for f in fs:
                for h in hs:
                    yield tr_eval(f, h, A, B, Bp, X)
    return gen()


def _gen_sliding(model, objs, sl_eval):
    if objs is None:
        return None
    def gen():
        for A, B, X, Xp in itertools.product(objs, repeat=4):
            fs = _hom_iter(model, model.tensor_obj(A, X), model.tensor_obj(B, Xp))
            ks = _hom_iter(model, Xp, X)
            if fs is None or ks is None:
                return
            for f in fs:
                for k in ks:
                    yield sl_eval(f, k, A, B, X, Xp)
    return gen()


def _gen_vanishing(model, objs, va_eval):
    if objs is None:
        return None
    def gen():
        for A, B, X, Y in itertools.product(objs, repeat=4):
            XY = model.tensor_obj(X, Y)
            fs = _hom_iter(model, model.tensor_obj(A, XY), model.tensor_obj(B, XY))
            if fs is None:
                return
            for f in fs:
                yield va_eval(f, A, B, X, Y)
    return gen()


def _gen_superposing(model, objs, su_eval):
    if objs is None:
        return None
    def gen():
        for A, B, C, X in itertools.product(objs, repeat=4):
            fs = _hom_iter(model, model.tensor_obj(A, X), model.tensor_obj(B, X))
            if fs is None:
                return
            for f in fs:
                yield su_eval(f, A, B, C, X)
    return gen()


def _gen_vanish_unit(model, objs, vu_eval, I):
    if objs is None:
        return None
    def gen():
        for A, B in itertools.product(objs, repeat=2):
            fs = _hom_iter(model, model.tensor_obj(A, I), model.tensor_obj(B, I))
            if fs is None:
                return
            for f in fs:
                yield vu_eval(f, A, B)
    return gen()


# ---------------------------------------------------------------- snake suite


def check_snake(model: Model, budget: CaseBudget) -> CheckReport:
    """Both triangle ("snake") composites collapse to identities."""
    if not model.compact:
        raise CapabilityError("check_snake needs a compact closed model")
    failures, counter = [], [0]
    objs = _objects(model, budget)
    i = model.identity
    for X in objs:
        xd = model.dual_obj(X)
        counter[0] += 1
        lhs = model.seq(
            model.lunit_inv(X),
            model.tensor(model.cap(X), i(X)),
            model.assoc_inv(X, xd, X),
            model.tensor(i(X), model.cup(X)),
            model.runit(X))
        if not model.mor_eq(lhs, i(X)):
            failures.append(Failure("snake_right", {"X": X}, lhs, i(X)))
        counter[0] += 1
        rhs = model.seq(
            model.runit_inv(xd),
            model.tensor(i(xd), model.cap(X)),
            model.assoc(xd, X, xd),
            model.tensor(model.cup(X), i(xd)),
            model.lunit(xd))
        if not model.mor_eq(rhs, i(xd)):
            failures.append(Failure("snake_left", {"X": X}, rhs, i(xd)))
    return _finish("snake_equations", model.name, counter[0], failures)


# --------------------------------------------------------------- conway suite


def check_conway_axioms(model: Model, budget: CaseBudget) -> CheckReport:
    """Parametrized fixed point, both naturalities, and the Bekic law."""
    if not (model.cartesian and model.has_conway):
        raise CapabilityError("check_conway_axioms needs a cartesian model "
                              "with a fixed-point operator")
    failures, counter = [], [0]
    objs = _objects(model, budget)
    i = model.identity

    def one_case(draw, law):
        if law == "conway_fixed_point":
            A, X = draw.obj(), draw.obj()
            f = draw.hom(model.tensor_obj(A, X), X)
            fx = model.fix(X, A, f)
            lhs = fx
            rhs = model.compose(f, model.pair(i(A), fx))
            return {"A": A, "X": X, "f": f}, lhs, rhs
        if law == "conway_naturality":
            A, Ap, X = draw.obj(), draw.obj(), draw.obj()
            f = draw.hom(model.tensor_obj(A, X), X)
            g = draw.hom(Ap, A)
            lhs = model.fix(X, Ap, model.compose(f, model.tensor(g, i(X))))
            rhs = model.compose(model.fix(X, A, f), g)
            return {"A": A, "A'": Ap, "X": X, "f": f, "g": g}, lhs, rhs
        if law == "conway_dinaturality":
            A, X, Xp = draw.obj(), draw.obj(), draw.obj()
            f = draw.hom(model.tensor_obj(A, X), Xp)
            k = draw.hom(Xp, X)
            lhs = model.fix(X, A, model.compose(k, f))
            rhs = model.compose(
                k, model.fix(Xp, A, model.compose(f, model.tensor(i(A), k))))
            return {"A": A, "X": X, "X'": Xp, "f": f, "k": k}, lhs, rhs
        # Bekic, with the associator bookkeeping written out
        A, X, Y = draw.obj(), draw.obj(), draw.obj()
        XY = model.tensor_obj(X, Y)
        f = draw.hom(model.tensor_obj(A, XY), X)
        g = draw.hom(model.tensor_obj(A, XY), Y)
        lhs = model.fix(XY, A, model.pair(f, g))
        ga = model.compose(g, model.assoc_inv(A, X, Y))
        fixg = model.fix(Y, model.tensor_obj(A, X), ga)
        inner = model.compose(
            f, model.compose(model.assoc_inv(A, X, Y),
                             model.pair(i(model.tensor_obj(A, X)), fixg)))
        fixf = model.fix(X, A, inner)
        rhs = model.compose(model.pair(model.proj1(A, X), fixg),
                            model.pair(i(A), fixf))
        return {"A": A, "X": X, "Y": Y, "f": f, "g": g}, lhs, rhs

    for law in ("conway_fixed_point", "conway_naturality",
                "conway_dinaturality", "conway_bekic"):
        for case in range(budget.cases):
            draw = _Draw(model, _rng(budget, law, case), objs)
            inputs, lhs, rhs = one_case(draw, law)
            counter[0] += 1
            if not model.mor_eq(lhs, rhs):
                failures.append(Failure(law, inputs, lhs, rhs))
    return _finish("conway_axioms", model.name, counter[0], failures)


def check_conway_trace_roundtrip(model: Model, budget: CaseBudget) -> CheckReport:
    """Fixed points and traces determine each other, exactly, both ways."""
    if not (model.cartesian and model.has_conway and model.traced):
        raise CapabilityError("round-trip needs a traced cartesian model "
                              "with a fixed-point operator")
    failures, counter = [], [0]
    objs = _objects(model, budget)
    i = model.identity
    for case in range(budget.cases):
        rng = _rng(budget, "conway_roundtrip", case)
        draw = _Draw(model, rng, objs)
        A, B, X = draw.obj(), draw.obj(), draw.obj()
        # trace -> fix: the fixed point derived from the trace is fix itself
        f = draw.hom(model.tensor_obj(A, X), X)
        derived_fix = model.trace(X, A, X, model.pair(f, f))
        counter[0] += 1
        if not model.mor_eq(derived_fix, model.fix(X, A, f)):
            failures.append(Failure("fix_from_trace", {"A": A, "X": X, "f": f},
                                    derived_fix, model.fix(X, A, f)))
        # fix -> trace: the trace derived from the fixed point is trace itself
        h = draw.hom(model.tensor_obj(A, X), model.tensor_obj(B, X))
        p1h = model.compose(model.proj1(B, X), h)
        derived_tr = model.seq(
            model.pair(i(A), model.fix(X, A, p1h)), h, model.proj0(B, X))
        counter[0] += 1
        if not model.mor_eq(derived_tr, model.trace(X, A, B, h)):
            failures.append(Failure("trace_from_fix",
                                    {"A": A, "B": B, "X": X, "f": h},
                                    derived_tr, model.trace(X, A, B, h)))
    return _finish("conway_trace_roundtrip", model.name, counter[0], failures)
