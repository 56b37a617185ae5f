"""Symplectic Steinberg symbols and their reduction to quaternion forms.

Symbols {x, y} are kept as free formal sums; the five defining relations
are checked after applying the reduction map R into the Witt group, never
by solving a word problem.  The generic two-cocycle on determinant-one
2 x 2 matrices is compared against the reduced cocycle route.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .errors import NonGeneric, ValidationError, ZeroInput
from .fields import FieldCtx
from .forms import FormMatrix
from .lagrange import HyperbolicSpace
from .linalg import Matrix
from .witt import WittClass, witt_class


class SymbolSum:
    """Formal integer combination of symbols {x, y} over nonzero scalars."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: FieldCtx, terms=None):
        self.ctx = ctx
        self.terms = Counter()
        if terms:
            for (x, y), mult in dict(terms).items():
                if not x or not y:
                    raise ZeroInput("symbol entries must be nonzero")
                if mult:
                    self.terms[(x, y)] += mult

    @staticmethod
    def symbol(ctx, x, y):
        return SymbolSum(ctx, {(x, y): 1})

    def __add__(self, other):
        if self.ctx != other.ctx:
            raise ValidationError("symbol sums over different fields")
        out = SymbolSum(self.ctx)
        out.terms = self.terms + other.terms
        return out

    def __sub__(self, other):
        if self.ctx != other.ctx:
            raise ValidationError("symbol sums over different fields")
        out = SymbolSum(self.ctx)
        out.terms = Counter(self.terms)
        out.terms.subtract(other.terms)
        return out

    def items(self):
        return [(pair, mult) for pair, mult in self.terms.items() if mult]

    def __eq__(self, other):
        if not isinstance(other, SymbolSum):
            return NotImplemented
        return self.ctx == other.ctx and dict(self.items()) == dict(
            other.items())

    def __repr__(self):
        if not self.items():
            return "0"
        parts = []
        for (x, y), mult in self.items():
            head = "" if mult == 1 else f"{mult}*"
            parts.append(f"{head}{{{x!r},{y!r}}}")
        return " + ".join(parts)


def quaternion_form(ctx: FieldCtx, x, y) -> FormMatrix:
    """The four-dimensional symmetric form <1, -x, -y, xy>."""
    if not x or not y:
        raise ZeroInput("quaternion form needs nonzero entries")
    return FormMatrix.diagonal(ctx, [ctx.one(), -x, -y, x * y], 1)


def R_map(sym: SymbolSum) -> WittClass:
    """Additive extension of {x, y} -> [<1, -x, -y, xy>]; lands in the
    discriminant kernel subgroup."""
    out = WittClass.zero(sym.ctx)
    for (x, y), mult in sym.items():
        cls = witt_class(quaternion_form(sym.ctx, x, y))
        if mult < 0:
            cls = cls.neg()
            mult = -mult
        for _ in range(mult):
            out = out + cls
    return out


def _sym_class(ctx, x, y):
    return witt_class(quaternion_form(ctx, x, y))


def steinberg_relations_report(ctx: FieldCtx, triples) -> dict:
    """Check the five symbol relations after applying R, over the supplied
    (s, t, r) scalar triples.  Returns per-relation counts and violations."""
    names = ["additivity", "unit", "inverse-swap", "negate-product",
             "one-minus"]
    checks = {name: 0 for name in names}
    violations = []
    one = ctx.one()
    for (s, t, r) in triples:
        if not (s and t and r):
            continue
        lhs = _sym_class(ctx, s * t, r) + _sym_class(ctx, s, t)
        rhs = _sym_class(ctx, s, t * r) + _sym_class(ctx, t, r)
        checks["additivity"] += 1
        if lhs != rhs:
            violations.append(("additivity", s, t, r))
        checks["unit"] += 1
        if not (_sym_class(ctx, s, one).is_zero()
                and _sym_class(ctx, one, s).is_zero()):
            violations.append(("unit", s, t, r))
        checks["inverse-swap"] += 1
        if _sym_class(ctx, s, t) != _sym_class(ctx, one / t, s):
            violations.append(("inverse-swap", s, t, r))
        checks["negate-product"] += 1
        if _sym_class(ctx, s, t) != _sym_class(ctx, s, -(s * t)):
            violations.append(("negate-product", s, t, r))
        if s != one:
            checks["one-minus"] += 1
            if _sym_class(ctx, s, t) != _sym_class(ctx, s, (one - s) * t):
                violations.append(("one-minus", s, t, r))
    return {"checks": checks, "violations": violations,
            "ok": not violations}


# ---------------------------------------------------------------------------
# The generic cocycle on determinant-one 2 x 2 matrices


@dataclass(frozen=True)
class Sl2Factorization:
    """g = u_s b_r u_t (shape "b", lower-left nonzero) or g = a_r u_t
    (shape "a", lower-left zero)."""

    shape: str
    s: object
    r: object
    t: object


def _u(ctx, t):
    return Matrix(ctx, [[ctx.one(), t], [ctx.zero(), ctx.one()]])


def _b(ctx, r):
    return Matrix(ctx, [[ctx.zero(), r], [-(ctx.one() / r), ctx.zero()]])


def _a(ctx, r):
    return Matrix(ctx, [[r, ctx.zero()], [ctx.zero(), ctx.one() / r]])


def generic_decompose(g: Matrix) -> Sl2Factorization:
    """Exact factorization of a determinant-one 2 x 2 matrix."""
    if g.m != 2 or g.n != 2:
        raise ValidationError("decomposition needs a 2 x 2 matrix")
    ctx = g.ctx
    if g.det() != ctx.one():
        raise ValidationError("matrix must have determinant one")
    g11, g12 = g.rows[0]
    g21, g22 = g.rows[1]
    if g21:
        r = -(ctx.one() / g21)
        s = g11 / g21
        t = g22 / g21
        fac = Sl2Factorization("b", s, r, t)
        if _u(ctx, s) * _b(ctx, r) * _u(ctx, t) != g:
            raise ValidationError("factorization failed")  # safety net
        return fac
    r = g11
    t = g12 / g11
    fac = Sl2Factorization("a", ctx.zero(), r, t)
    if _a(ctx, r) * _u(ctx, t) != g:
        raise ValidationError("factorization failed")
    return fac


def stbg(g1: Matrix, g2: Matrix) -> SymbolSum:
    """The generic-normal-form value of the universal two-cocycle:
    {t/(r1 r2), -r1/r2} - {-r1, -r2} with t = t1 + s2 nonzero."""
    f1 = generic_decompose(g1)
    f2 = generic_decompose(g2)
    if f1.shape != "b" or f2.shape != "b":
        raise NonGeneric("both factors must have nonzero lower-left entry")
    ctx = g1.ctx
    t = f1.t + f2.s
    if not t:
        raise NonGeneric("t1 + s2 vanishes; resample")
    r1, r2 = f1.r, f2.r
    return (SymbolSum.symbol(ctx, t / (r1 * r2), -(r1 / r2))
            - SymbolSum.symbol(ctx, -r1, -r2))


def stbg_parameters(g1: Matrix, g2: Matrix):
    """(r1, r2, t) of a generic pair; NonGeneric otherwise."""
    f1 = generic_decompose(g1)
    f2 = generic_decompose(g2)
    if f1.shape != "b" or f2.shape != "b":
        raise NonGeneric("both factors must have nonzero lower-left entry")
    t = f1.t + f2.s
    if not t:
        raise NonGeneric("t1 + s2 vanishes; resample")
    return f1.r, f2.r, t


def reduced_route(g1: Matrix, g2: Matrix) -> WittClass:
    """The cocycle value of the generic pair computed through the reduced
    cocycle on the based triple with witnesses a = 1, b = r1^{-1},
    c = -r2^{-1}."""
    from .cocycle import BasedTriple, reduced_maslov

    ctx = g1.ctx
    r1, r2, t = stbg_parameters(g1, g2)
    space = HyperbolicSpace(ctx, 1)
    one = ctx.one()
    bt = BasedTriple.from_witnesses(
        space,
        Matrix(ctx, [[one]]),
        Matrix(ctx, [[one / r1]]),
        Matrix(ctx, [[-(one / r2)]]),
        Matrix(ctx, [[t]]),
    )
    return reduced_maslov(bt).neg()


def compare_stbg_maslov(g1: Matrix, g2: Matrix) -> bool:
    """Does R(stbg(g1, g2)) match both the closed form
    -[<t, r1 r2 t, r1, r2>] and the reduced-cocycle route?"""
    ctx = g1.ctx
    r1, r2, t = stbg_parameters(g1, g2)
    via_R = R_map(stbg(g1, g2))
    closed = witt_class(FormMatrix.diagonal(
        ctx, [t, r1 * r2 * t, r1, r2], 1)).neg()
    via_reduced = reduced_route(g1, g2)
    return via_R == closed and via_reduced == closed
