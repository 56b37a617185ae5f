"""Witt classes, the extended square-class group, and Hilbert symbols.

Witt-class equality is always decided through complete invariant
certificates (never by searching for an isometry): dimension parity and
determinant class over a prime field, signature plus Hasse data over Q,
dimension alone for hermitian forms over F_{p^2}, and the trace transfer
into the rational Witt group for hermitian forms over Q(sqrt(d)).
"""

from __future__ import annotations

from fractions import Fraction

from .errors import (
    ContextMismatch,
    DegenerateInput,
    ValidationError,
    WrongContext,
    ZeroInput,
)
from .fields import (
    INF,
    FieldCtx,
    NormClassRep,
    is_prime,
    legendre,
    norm_subgroup_class,
    squarefree_part,
)
from .forms import (
    FormMatrix,
    _scale_to_hermitian,
    diagonalize,
    hasse_invariant,
)


# ---------------------------------------------------------------------------
# Hilbert symbols over Q


def _val_unit(n: int, p: int):
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v, n


def hilbert_symbol(a, b, place) -> int:
    """The Hilbert symbol (a, b) at a rational place.

    -1 exactly when z^2 = a x^2 + b y^2 has only the trivial solution over
    the completion; computed by the classical valuation/residue formulas.
    ``place`` is an odd prime, 2, or "inf".
    """
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise ZeroInput("Hilbert symbol needs nonzero entries")
    a = squarefree_part(a)
    b = squarefree_part(b)
    if place == INF:
        return -1 if (a < 0 and b < 0) else 1
    p = int(place)
    if not is_prime(p):
        raise ValidationError(f"{place} is not a place of Q")
    sa = 1 if a > 0 else -1
    sb = 1 if b > 0 else -1
    alpha, u = _val_unit(abs(a), p)
    beta, v = _val_unit(abs(b), p)
    u *= sa
    v *= sb
    if p == 2:
        def eps(n):
            return ((n - 1) // 2) % 2

        def omega(n):
            return ((n * n - 1) // 8) % 2

        e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u)
        return -1 if e % 2 else 1
    out = 1
    if (alpha * beta) % 2 and ((p - 1) // 2) % 2:
        out = -out
    if beta % 2:
        out *= legendre(u % p, p)
    if alpha % 2:
        out *= legendre(v % p, p)
    return out


def relevant_places(entries):
    """Places where symbols built from the given rationals can be nontrivial:
    2, infinity, and every odd prime dividing a squarefree part."""
    places = {2, INF}
    for e in entries:
        n = abs(squarefree_part(Fraction(e)))
        while n % 2 == 0:
            n //= 2
        f = 3
        while f * f <= n:
            if n % f == 0:
                places.add(f)
                while n % f == 0:
                    n //= f
            f += 2
        if n > 2:
            places.add(n)
    return sorted(places, key=lambda pl: (pl == INF, pl if pl != INF else 0))


def p_adic_square_class(q, p: int):
    """Square class of a nonzero rational in Q_p, as (valuation mod 2, unit
    residue class); four classes for odd p."""
    q = Fraction(q)
    if q == 0:
        raise ZeroInput("0 has no square class")
    s = squarefree_part(q)
    sign = 1 if s > 0 else -1
    v, u = _val_unit(abs(s), p)
    u *= sign
    if p == 2:
        return (v % 2, u % 8)
    return (v % 2, legendre(u % p, p))


def local_hyperbolic_hasse(dim: int, place) -> int:
    """Hasse invariant of the split form <1,-1,...,1,-1> of the given even
    dimension at the given place."""
    m = dim // 2
    pairs = m * (m - 1) // 2
    minus = hilbert_symbol(-1, -1, place)
    return minus if pairs % 2 else 1


def local_witt_is_zero(entries, place) -> bool:
    """Is the rational diagonal form Witt-trivial over the completion?"""
    entries = [Fraction(e) for e in entries]
    n = len(entries)
    if n % 2:
        return False
    m = n // 2
    if place == INF:
        return sum(1 if e > 0 else -1 for e in entries) == 0
    det = Fraction(1)
    for e in entries:
        det *= e
    if p_adic_square_class(det, place) != p_adic_square_class(
            Fraction((-1) ** m), place):
        return False
    return hasse_invariant(entries, place) == local_hyperbolic_hasse(
        n, place)


# ---------------------------------------------------------------------------
# The extended square-class group S^


class SHatElement:
    """Extended square class (s, +-1) with the twisted group law

        (x, (-1)^m) + (y, (-1)^n) = (x y (-1)^{mn}, (-1)^{m+n}).
    """

    __slots__ = ("ctx", "s", "sign")

    def __init__(self, ctx: FieldCtx, s, sign: int):
        if sign not in (1, -1):
            raise ValidationError("sign must be +1 or -1")
        if isinstance(s, NormClassRep):
            self.s = s
        else:
            self.s = norm_subgroup_class(ctx, s)
        self.ctx = ctx
        self.sign = sign

    @staticmethod
    def identity(ctx):
        return SHatElement(ctx, ctx.one(), 1)

    def __add__(self, other):
        if self.ctx != other.ctx:
            raise ContextMismatch("S^ elements over different fields")
        twist = -1 if (self.sign == -1 and other.sign == -1) else 1
        s = self.s.rep * other.s.rep
        if twist == -1:
            s = -s
        return SHatElement(self.ctx, s, self.sign * other.sign)

    def neg(self):
        s = self.ctx.one() / self.s.rep
        if self.sign == -1:
            s = -s
        return SHatElement(self.ctx, s, self.sign)

    def __sub__(self, other):
        return self + other.neg()

    def is_identity(self) -> bool:
        return self.sign == 1 and self.s.is_trivial()

    def __eq__(self, other):
        if not isinstance(other, SHatElement):
            return NotImplemented
        return self.sign == other.sign and self.s == other.s

    def __hash__(self):
        return hash((self.ctx, self.sign, self.s))

    def to_json(self):
        rep = self.s.rep
        if self.ctx.kind == "Q":
            srep = str(rep)
        else:
            srep = self.ctx.scalar_to_json(rep)
        return {"s": srep, "sign": self.sign}

    def __repr__(self):
        return f"({self.s.rep!r}, {self.sign:+d})"


# ---------------------------------------------------------------------------
# Witt classes


def _normalize_entry(ctx, e):
    # replacing a diagonal entry by a square multiple keeps its class;
    # keeping entries squarefree bounds all later certificate arithmetic
    if ctx.kind == "Q" and e:
        return Fraction(squarefree_part(e))
    if ctx.kind == "QSqrt" and e and e.b == 0:
        from .fields import QuadElt

        return QuadElt(ctx.d, squarefree_part(e.a), 0)
    return e


class WittClass:
    """A Witt-group element, held as a diagonal representative plus the
    invariant certificate that decides equality.

    For skew forms over a field with trivial involution the group is
    trivial and the representative is empty.  Skew-hermitian forms over
    the quadratic kinds are scaled by a trace-zero unit into hermitian
    ones on entry.
    """

    __slots__ = ("ctx", "eps", "diag")

    def __init__(self, ctx: FieldCtx, diag, eps: int = 1):
        self.ctx = ctx
        self.eps = eps
        self.diag = tuple(_normalize_entry(ctx, e) for e in diag)
        if any(not e for e in self.diag):
            raise DegenerateInput("Witt representative has a zero entry")

    # -- constructors ----------------------------------------------------

    @staticmethod
    def zero(ctx, eps=1):
        return WittClass(ctx, (), eps)

    # -- helpers ----------------------------------------------------------

    def _trivial_group(self) -> bool:
        return self.eps == -1 and self.ctx.has_trivial_involution

    def dim_mod2(self) -> int:
        return len(self.diag) % 2

    def rational_entries(self):
        return [self.ctx.fixed_rational(e) for e in self.diag]

    def signature(self) -> int:
        if self.ctx.kind == "Q":
            return sum(1 if e > 0 else -1 for e in self.diag)
        if self.ctx.kind == "QSqrt":
            return trace_transfer(self).signature()
        raise ValidationError("signature needs a characteristic-0 field")

    def det(self):
        out = self.ctx.one()
        for e in self.diag:
            out = out * e
        return out

    # -- group structure ---------------------------------------------------

    def neg(self):
        if self._trivial_group():
            return self
        return WittClass(self.ctx, tuple(-e for e in self.diag), self.eps)

    def __add__(self, other):
        if not isinstance(other, WittClass):
            return NotImplemented
        if self.ctx != other.ctx or self.eps != other.eps:
            raise ContextMismatch("Witt classes over different contexts")
        if self._trivial_group():
            return self
        return WittClass(
            self.ctx, _strip_hyperbolic(self.ctx, self.diag + other.diag),
            self.eps)

    def __sub__(self, other):
        return self + other.neg()

    def is_zero(self) -> bool:
        if self._trivial_group() or not self.diag:
            return True
        ctx = self.ctx
        n = len(self.diag)
        if n % 2:
            return False
        m = n // 2
        if ctx.kind == "Fp":
            want = FieldCtx("Fp", p=ctx.p).from_int((-1) ** m)
            return legendre((self.det() / want).v, ctx.p) == 1
        if ctx.kind == "Fp2":
            return True
        if ctx.kind == "Q":
            entries = self.rational_entries()
            if sum(1 if e > 0 else -1 for e in entries) != 0:
                return False
            if squarefree_part(self.det()) != squarefree_part(
                    Fraction((-1) ** m)):
                return False
            return all(
                hasse_invariant(entries, pl) == local_hyperbolic_hasse(n, pl)
                for pl in relevant_places(entries))
        return trace_transfer(self).is_zero()

    def __eq__(self, other):
        if not isinstance(other, WittClass):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        # classes are compared through is_zero; hash only on the context
        return hash((self.ctx, self.eps))

    # -- invariants --------------------------------------------------------

    def signed_disc(self) -> SHatElement:
        if self._trivial_group() or not self.diag:
            return SHatElement.identity(self.ctx)
        n = len(self.diag)
        s = self.det()
        if (n * (n - 1) // 2) % 2:
            s = -s
        return SHatElement(self.ctx, s, (-1) ** n)

    def in_II(self) -> bool:
        return self.signed_disc().is_identity()

    def key(self):
        """Hashable canonical certificate over the finite kinds.

        Dimension parity plus the signed discriminant determine the class
        over F_p; parity alone suffices over F_{p^2}.  The infinite kinds
        have no cheap canonical key and are compared through is_zero.
        """
        ctx = self.ctx
        if self.is_zero():
            return ("witt0", ctx._key())
        if ctx.kind == "Fp":
            s = self.signed_disc()
            return ("wittFp", ctx.p, self.dim_mod2(),
                    legendre(s.s.rep.v, ctx.p))
        if ctx.kind == "Fp2":
            return ("wittFp2", ctx.p, self.dim_mod2())
        raise ValidationError("no canonical Witt key over infinite fields")

    def to_json(self):
        out = {
            "dim_mod2": self.dim_mod2(),
            "disc": self.signed_disc().to_json(),
            "is_zero": self.is_zero(),
            "in_II": self.in_II(),
            "representative": [self.ctx.scalar_to_json(e) for e in self.diag],
        }
        if self.ctx.kind == "Q":
            entries = self.rational_entries()
            out["signature"] = self.signature()
            out["hasse"] = [
                {"p": str(pl), "val": hasse_invariant(entries, pl)}
                for pl in relevant_places(entries)
            ]
        elif self.ctx.kind == "QSqrt":
            out["signature"] = self.signature()
        else:
            out["signature"] = None
        return out

    def __repr__(self):
        return f"WittClass({list(self.diag)!r})"


def _is_hyperbolic_pair(ctx, a, b) -> bool:
    prod = -(a * b)
    if ctx.kind == "Q":
        return squarefree_part(prod) == 1
    if ctx.kind == "Fp":
        return legendre(prod.v, ctx.p) == 1
    if ctx.kind == "Fp2":
        return True
    from .fields import rational_is_norm

    if prod.b != 0:
        return False
    return rational_is_norm(ctx.d, prod.a)


def _strip_hyperbolic(ctx, diag):
    """Greedily drop <a, -a> pairs; an optimization only, since equality
    is decided by invariants."""
    entries = list(diag)
    changed = True
    while changed:
        changed = False
        for i in range(len(entries)):
            for j in range(i + 1, len(entries)):
                if _is_hyperbolic_pair(ctx, entries[i], entries[j]):
                    del entries[j]
                    del entries[i]
                    changed = True
                    break
            if changed:
                break
    return tuple(entries)


def witt_class(t: FormMatrix) -> WittClass:
    """The image of the form in the Witt group of its context."""
    if not t.is_nondegenerate():
        raise DegenerateInput("Witt class needs a nondegenerate form")
    ctx = t.ctx
    if t.eps == -1:
        if ctx.has_trivial_involution:
            return WittClass(ctx, (), eps=-1)
        herm = _scale_to_hermitian(t)
        return WittClass(
            ctx, _strip_hyperbolic(ctx, diagonalize(herm).diag), eps=-1)
    dg = diagonalize(t)
    return WittClass(ctx, _strip_hyperbolic(ctx, dg.diag), eps=1)


def witt_sum(a: WittClass, b: WittClass) -> WittClass:
    return a + b


def witt_neg(a: WittClass) -> WittClass:
    return a.neg()


def witt_is_zero(a: WittClass) -> bool:
    return a.is_zero()


def signed_disc(a: WittClass) -> SHatElement:
    return a.signed_disc()


def in_II(a: WittClass) -> bool:
    return a.in_II()


def trace_transfer(h: WittClass) -> WittClass:
    """Transfer a hermitian Witt class over Q(sqrt(d)) to the rational Witt
    group: <a_1,...,a_n> maps to <1,-d> tensor <a_1,...,a_n>."""
    if h.ctx.kind != "QSqrt":
        raise WrongContext("trace transfer needs a Q(sqrt(d)) context")
    d = h.ctx.d
    qctx = FieldCtx("Q", epsilon=1)
    entries = []
    for e in h.diag:
        a = h.ctx.fixed_rational(e)
        entries.append(Fraction(a))
        entries.append(Fraction(-d) * a)
    return WittClass(qctx, _strip_hyperbolic(qctx, tuple(entries)), eps=1)


def local_invariant_tuples(p: int):
    """All (dim mod 2, square class of det, Hasse) tuples realized by
    diagonal forms over Q_p with entries drawn from {1, u, p, u p}."""
    u = FieldCtx("Fp", p=p)._least_nonresidue(p)
    gens = [Fraction(1), Fraction(u), Fraction(p), Fraction(u * p)]
    seen = set()
    import itertools

    for dim in range(1, 5):
        for combo in itertools.combinations_with_replacement(gens, dim):
            det = Fraction(1)
            for e in combo:
                det *= e
            seen.add((dim % 2, p_adic_square_class(det, p),
                      hasse_invariant(combo, p)))
    return seen
