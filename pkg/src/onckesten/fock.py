"""Symbolic Fock-space engine for the weighted creation/annihilation calculus.

State vectors live in the algebraic span of the vacuum and of finite words
f_1 (*) f_2 (*) ... of *cell functions*: polynomials supported on one member
of a fixed family of pairwise disjoint intervals.  The deformation enters
through the ordering kernel

    w(s, t) = p if s < t,  q if s > t,  1 if s = t or t is the vacuum slot,

which the annihilator folds into the next tensor factor.  Concretely, with
a(f) the creation operator (prepend f) and a*(f) its adjoint,

    a*(f) (g1 (*) g2 (*) rest) = h . g2 (*) rest,
    h(u) = p * int_{lo}^{u} f g1 + q * int_{u}^{hi} f g1        (same cell)

while disjoint cells contribute the constants p * int(f g1) (annihilated cell
left of the next one) or q * int(f g1) (right of it), and a word of length
one ends in the vacuum with the plain integral.  Everything stays exact:
integrals of polynomial cells are again polynomial, with rational or
symbolic-T bounds.

The gauge (multiplication) operator acts on the first factor only; on the
single symbolic interval [0, T] the truncated number operator is
n = a*(chi) a(chi), with n Omega = T Omega, while the plain gauge m kills the
vacuum.  Words over {a, a*, m, n} reproduce the ordered-partition weights,
which is what the cross-verification suite exercises.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .algebra import MultiPoly, ONE, P, Q, RUNNING, T, UniPoly, ZERO, as_multipoly
from .partitions import IntervalSignature, SetPartition

POSITION_MOMENT_LIMIT = 10
POISSON_OPERATOR_LIMIT = 8


@dataclass(frozen=True)
class Interval:
    """[lo, hi] with rational endpoints, or [0, T] when hi is None."""

    lo: Fraction
    hi: Optional[Fraction]

    @property
    def symbolic(self) -> bool:
        return self.hi is None

    def lo_poly(self) -> MultiPoly:
        return MultiPoly.constant(self.lo)

    def hi_poly(self) -> MultiPoly:
        return T if self.hi is None else MultiPoly.constant(self.hi)

    def length(self) -> MultiPoly:
        return self.hi_poly() - self.lo_poly()


@dataclass(frozen=True)
class CellFunction:
    """A polynomial supported on one registered interval."""

    interval: int
    poly: UniPoly

    def key(self):
        return (self.interval, self.poly.key())


Word = tuple  # tuple of CellFunction


class FockVector:
    """Vacuum amplitude plus a finite combination of cell-function words."""

    __slots__ = ("vacuum", "terms")

    def __init__(self, vacuum: MultiPoly = ZERO, terms: Optional[dict] = None):
        self.vacuum = as_multipoly(vacuum)
        clean: dict = {}
        for word, c in (terms or {}).items():
            c = as_multipoly(c)
            if c.is_zero or any(cell.poly.is_zero for cell in word):
                continue
            clean[word] = c
        self.terms = clean

    @classmethod
    def unit(cls) -> "FockVector":
        return cls(ONE, {})

    @classmethod
    def zero(cls) -> "FockVector":
        return cls(ZERO, {})

    @property
    def is_zero(self) -> bool:
        return self.vacuum.is_zero and not self.terms

    def add(self, other: "FockVector") -> "FockVector":
        out = dict(self.terms)
        for word, c in other.terms.items():
            s = out.get(word, ZERO) + c
            if s.is_zero:
                out.pop(word, None)
            else:
                out[word] = s
        return FockVector(self.vacuum + other.vacuum, out)

    def scale(self, factor) -> "FockVector":
        f = as_multipoly(factor)
        if f.is_zero:
            return FockVector.zero()
        return FockVector(self.vacuum * f, {w: c * f for w, c in self.terms.items()})

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda item: tuple(c.key() for c in item[0]))

    def __eq__(self, other):
        if not isinstance(other, FockVector):
            return NotImplemented
        return self.vacuum == other.vacuum and self.terms == other.terms

    def __repr__(self):
        return f"FockVector(vacuum={self.vacuum}, words={len(self.terms)})"


def _bump(acc: dict, word: Word, coeff: MultiPoly):
    if coeff.is_zero:
        return
    s = acc.get(word, ZERO) + coeff
    if s.is_zero:
        acc.pop(word, None)
    else:
        acc[word] = s


class FockEngine:
    """Operator algebra over a fixed ladder of intervals.

    Intervals are registered once, sorted left to right, and must have
    pairwise disjoint interiors; index order equals spatial order, which is
    what the kernel w(s, t) consults.  The symbolic engine carries the single
    interval [0, T] and additionally supports the gauge pair (m, n).
    """

    def __init__(self, intervals: Sequence[Interval]):
        if not intervals:
            raise ValueError("engine needs at least one interval")
        self.intervals = tuple(intervals)
        if any(iv.symbolic for iv in self.intervals) and len(self.intervals) != 1:
            raise ValueError("the symbolic interval [0, T] must be the only one")
        for iv in self.intervals:
            if not iv.symbolic and iv.hi <= iv.lo:
                raise ValueError(f"empty interval [{iv.lo}, {iv.hi}]")
        for a, b in zip(self.intervals, self.intervals[1:]):
            if b.lo < a.hi:
                raise ValueError("intervals must be identical or disjoint; overlap detected")

    @classmethod
    def brownian(cls, endpoints: Iterable) -> "FockEngine":
        ivs = sorted((Fraction(lo), Fraction(hi)) for lo, hi in endpoints)
        return cls(tuple(Interval(lo, hi) for lo, hi in ivs))

    @classmethod
    def poisson(cls) -> "FockEngine":
        return cls((Interval(Fraction(0), None),))

    @classmethod
    def from_signature(cls, sig: IntervalSignature) -> "FockEngine":
        # concrete endpoints with unit gaps; only lengths and order matter
        lo = Fraction(0)
        ivs = []
        for lam in sig.lengths:
            ivs.append(Interval(lo, lo + lam))
            lo = lo + lam + 1
        return cls(tuple(ivs))

    @property
    def symbolic(self) -> bool:
        return self.intervals[0].symbolic

    def _require_symbolic(self):
        if not self.symbolic:
            raise ValueError("gauge operators m, n require the single symbolic interval [0, T]")

    def indicator(self, i: int) -> CellFunction:
        return CellFunction(self._check_index(i), UniPoly.one())

    def _check_index(self, i: int) -> int:
        if not 0 <= i < len(self.intervals):
            raise IndexError(f"interval index {i} out of range")
        return i

    def _as_cell(self, f) -> CellFunction:
        if isinstance(f, CellFunction):
            self._check_index(f.interval)
            return f
        return self.indicator(f)

    # -- operators -----------------------------------------------------------

    def create(self, f, v: FockVector) -> FockVector:
        """a(f): prepend the cell to every word; the vacuum becomes the word (f)."""
        cell = self._as_cell(f)
        out: dict = {}
        if not v.vacuum.is_zero:
            _bump(out, (cell,), v.vacuum)
        for word, c in v.terms.items():
            _bump(out, (cell,) + word, c)
        return FockVector(ZERO, out)

    def annihilate(self, f, v: FockVector) -> FockVector:
        """a*(f): pair the first factor against f through the ordering kernel."""
        cell = self._as_cell(f)
        i = cell.interval
        iv = self.intervals[i]
        lo, hi = iv.lo_poly(), iv.hi_poly()
        vac = ZERO
        out: dict = {}
        for word, c in v.terms.items():
            first = word[0]
            if first.interval != i:
                continue  # disjoint supports: the overlap integral vanishes
            integrand = first.poly * cell.poly
            rest = word[1:]
            if not rest:
                vac = vac + c * integrand.integrate(lo, hi)
                continue
            nxt = rest[0]
            if nxt.interval == i:
                h = integrand.integrate(lo, RUNNING) * P + integrand.integrate(RUNNING, hi) * Q
                merged = CellFunction(i, h * nxt.poly)
                _bump(out, (merged,) + rest[1:], c)
            elif nxt.interval > i:
                _bump(out, rest, c * (P * integrand.integrate(lo, hi)))
            else:
                _bump(out, rest, c * (Q * integrand.integrate(lo, hi)))
        return FockVector(vac, out)

    def gauge(self, i: int, h: UniPoly, vacuum_factor=ZERO, v: FockVector = None) -> FockVector:
        """Multiplication by h on interval i, acting on the first factor.

        Words whose first factor lives elsewhere are annihilated (disjoint
        supports); the vacuum picks up the explicit ``vacuum_factor``.
        """
        i = self._check_index(i)
        vac = v.vacuum * as_multipoly(vacuum_factor)
        out: dict = {}
        for word, c in v.terms.items():
            first = word[0]
            if first.interval != i:
                continue
            _bump(out, (CellFunction(i, h * first.poly),) + word[1:], c)
        return FockVector(vac, out)

    def gauge_pair(self, f, g, v: FockVector) -> FockVector:
        """M(f, g) = a*(g) a(f), realized directly as a piecewise gauge.

        The multiplier is the kernel-weighted overlap of f and g: the linear
        ramp on their common interval, the constant p*<f,g> or q*<f,g> on
        intervals to the right or left, and the plain overlap on the vacuum.
        """
        fc, gc = self._as_cell(f), self._as_cell(g)
        if fc.interval != gc.interval:
            return FockVector.zero()
        i = fc.interval
        iv = self.intervals[i]
        lo, hi = iv.lo_poly(), iv.hi_poly()
        integrand = fc.poly * gc.poly
        full = integrand.integrate(lo, hi)
        vac = v.vacuum * full
        out: dict = {}
        for word, c in v.terms.items():
            first = word[0]
            if first.interval == i:
                h = integrand.integrate(lo, RUNNING) * P + integrand.integrate(RUNNING, hi) * Q
                _bump(out, (CellFunction(i, h * first.poly),) + word[1:], c)
            elif first.interval > i:
                _bump(out, word, c * (P * full))
            else:
                _bump(out, word, c * (Q * full))
        return FockVector(vac, out)

    def gauge_m(self, v: FockVector) -> FockVector:
        """Plain gauge on [0, T]: identity on words, kills the vacuum."""
        self._require_symbolic()
        return self.gauge(0, UniPoly.one(), ZERO, v)

    def gauge_n(self, v: FockVector) -> FockVector:
        """Truncated number operator: multiply by qT + (p-q)x, T on the vacuum."""
        self._require_symbolic()
        ramp = UniPoly([Q * T, P - Q])
        return self.gauge(0, ramp, T, v)

    def omega(self, i: int, v: FockVector) -> FockVector:
        """Position (field) operator a(chi_i) + a*(chi_i)."""
        return self.create(i, v).add(self.annihilate(i, v))

    # -- word and moment evaluation ---------------------------------------------

    def apply_tag(self, tag, v: FockVector) -> FockVector:
        kind = tag[0]
        idx = tag[1] if len(tag) > 1 else 0
        if kind == "a":
            return self.create(idx, v)
        if kind == "a*":
            return self.annihilate(idx, v)
        if kind == "m":
            return self.gauge_m(v)
        if kind == "n":
            return self.gauge_n(v)
        raise ValueError(f"unknown operator tag {tag!r}")

    def word_vacuum_moment(self, tags: Sequence) -> MultiPoly:
        """Vacuum amplitude of the operator word (rightmost factor acts first)."""
        v = FockVector.unit()
        for tag in reversed(tuple(tags)):
            v = self.apply_tag(tag, v)
        return v.vacuum


def position_moment(sig: IntervalSignature, override_limits: bool = False) -> MultiPoly:
    """Vacuum moment of omega(f_1)...omega(f_n) along the signature."""
    if sig.n > POSITION_MOMENT_LIMIT and not override_limits:
        raise ValueError(
            f"position moment limit is n = {POSITION_MOMENT_LIMIT}; pass override_limits=True"
        )
    engine = FockEngine.from_signature(sig)
    v = FockVector.unit()
    for rank in reversed(sig.assignment):
        v = engine.omega(rank, v)
    return v.vacuum


def poisson_moment_by_operators(n: int, override_limits: bool = False) -> MultiPoly:
    """Vacuum moment of (a + a* + n + m)^n on the symbolic interval."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > POISSON_OPERATOR_LIMIT and not override_limits:
        raise ValueError(
            f"operator compound-moment limit is n = {POISSON_OPERATOR_LIMIT}; pass override_limits=True"
        )
    engine = FockEngine.poisson()
    v = FockVector.unit()
    for _ in range(n):
        v = (
            engine.create(0, v)
            .add(engine.annihilate(0, v))
            .add(engine.gauge_n(v))
            .add(engine.gauge_m(v))
        )
    return v.vacuum


def word_for_partition(sp: SetPartition) -> tuple:
    """Operator word whose vacuum moment realizes the partition's weight sum.

    Position rules: block minimum -> a*, block maximum -> a, interior leg ->
    m, singleton -> n.  Words are read left to right; the rightmost operator
    acts first.
    """
    tags = []
    for x in range(1, sp.n + 1):
        b = sp.blocks[sp.block_index_of(x)]
        if len(b) == 1:
            tags.append(("n", 0))
        elif x == b[0]:
            tags.append(("a*", 0))
        elif x == b[-1]:
            tags.append(("a", 0))
        else:
            tags.append(("m", 0))
    return tuple(tags)


def word_admits_partition(tags: Sequence) -> bool:
    """Whether some non-crossing partition produces this word.

    Scanning left to right, a* opens a block, a closes the innermost open
    block, m extends it (needs one open), n is a singleton; the word is
    realizable iff the scan never underflows and ends balanced.
    """
    depth = 0
    for tag in tags:
        kind = tag[0]
        if kind == "a*":
            depth += 1
        elif kind == "a":
            if depth == 0:
                return False
            depth -= 1
        elif kind == "m":
            if depth == 0:
                return False
        elif kind != "n":
            raise ValueError(f"unknown operator tag {tag!r}")
    return depth == 0


def parse_word(text: str, interval: int = 0) -> tuple:
    """Parse words like "a*a*aa*aa" or "a* m a" into operator tags."""
    tags = []
    i = 0
    s = text.replace(" ", "")
    while i < len(s):
        if s.startswith("a*", i):
            tags.append(("a*", interval))
            i += 2
        elif s[i] == "a":
            tags.append(("a", interval))
            i += 1
        elif s[i] in ("m", "n"):
            tags.append((s[i], interval))
            i += 1
        else:
            raise ValueError(f"cannot parse operator word {text!r} at position {i}")
    return tuple(tags)
