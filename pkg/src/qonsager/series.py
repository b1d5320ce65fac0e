"""Truncated formal series with noncommutative polynomial coefficients.

NcSeries: Laurent series in one variable t, coefficients NcPoly.  Every
series carries ``order``: coefficients are known exactly for exponents
<= order and unknown beyond it.  Arithmetic propagates the trustworthy
order honestly (never optimistically); reading a coefficient beyond the
order raises.

Scalar series (coefficients that are scalar multiples of the empty word)
are ordinary NcSeries; composition and inversion require the relevant
scalar/valuation preconditions and report violations.

NcSeries2: series in two variables s, t with nonnegative exponents,
truncated by *total* degree, with exact division by (s - t) performed
per homogeneous component (the final consistency coefficient must vanish,
otherwise the division was not exact and the first offending component is
reported).
"""

from __future__ import annotations

import math

from .coeff import ONE, RatQ
from .ncpoly import NcPoly

ZP = NcPoly.zero()


def _as_poly(c):
    if isinstance(c, NcPoly):
        return c
    return NcPoly.scalar(c if isinstance(c, RatQ) else RatQ.from_int(c))


class NcSeries:
    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs, order):
        self.coeffs = {e: c for e, c in coeffs.items() if c and e <= order}
        self.order = order

    # -- constructors ---------------------------------------------------------

    @staticmethod
    def zero(order=math.inf):
        return NcSeries({}, order)

    @staticmethod
    def const(c, order=math.inf):
        return NcSeries({0: _as_poly(c)}, order)

    @staticmethod
    def monomial(c, e, order=math.inf):
        return NcSeries({e: _as_poly(c)}, order)

    @staticmethod
    def from_coeff_fn(fn, order, start=0):
        return NcSeries({n: _as_poly(fn(n)) for n in range(start, order + 1)},
                        order)

    # -- inspection -----------------------------------------------------------

    def coeff(self, n):
        if n > self.order:
            raise ValueError(
                f"coefficient t^{n} requested beyond truncation order "
                f"{self.order}")
        return self.coeffs.get(n, ZP)

    def lowest(self):
        """Valuation: smallest exponent with nonzero coefficient (inf if 0)."""
        return min(self.coeffs, default=math.inf)

    def is_zero(self):
        return not self.coeffs

    def support(self):
        return sorted(self.coeffs)

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other):
        order = min(self.order, other.order)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            v = out.get(e)
            out[e] = c if v is None else v + c
        return NcSeries({e: c for e, c in out.items() if c and e <= order},
                        order)

    def __sub__(self, other):
        order = min(self.order, other.order)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            v = out.get(e)
            out[e] = -c if v is None else v - c
        return NcSeries({e: c for e, c in out.items() if c and e <= order},
                        order)

    def __neg__(self):
        return NcSeries({e: -c for e, c in self.coeffs.items()}, self.order)

    def __mul__(self, other):
        if not isinstance(other, NcSeries):
            # scalar (RatQ/int) on the right
            if not other:
                return NcSeries.zero()
            return NcSeries({e: c * other for e, c in self.coeffs.items()},
                            self.order)
        if not self.coeffs or not other.coeffs:
            return NcSeries.zero()
        order = min(self.order + other.lowest(), other.order + self.lowest())
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                if e > order:
                    continue
                p = c1 * c2
                if not p:
                    continue
                v = out.get(e)
                if v is None:
                    out[e] = p
                else:
                    v = v + p
                    if v:
                        out[e] = v
                    else:
                        del out[e]
        return NcSeries(out, order)

    def __rmul__(self, other):
        if isinstance(other, NcSeries):
            return NotImplemented
        if not other:
            return NcSeries.zero()
        return NcSeries({e: other * c for e, c in self.coeffs.items()},
                        self.order)

    def lmul_poly(self, p):
        """Multiply every coefficient by the polynomial p on the left."""
        return NcSeries({e: p * c for e, c in self.coeffs.items()}, self.order)

    def rmul_poly(self, p):
        return NcSeries({e: c * p for e, c in self.coeffs.items()}, self.order)

    def shift(self, k):
        """Multiply by t^k."""
        return NcSeries({e + k: c for e, c in self.coeffs.items()},
                        self.order + k)

    def scale_var(self, a):
        """Substitute t -> a*t for a scalar a in the coefficient field."""
        return NcSeries({e: c * a ** e for e, c in self.coeffs.items()},
                        self.order)

    def truncate(self, n):
        return NcSeries({e: c for e, c in self.coeffs.items() if e <= n},
                        min(self.order, n))

    def map_coeffs(self, f):
        return NcSeries({e: f(c) for e, c in self.coeffs.items()}, self.order)

    # -- composition / inversion / exact division ------------------------------

    def subst(self, g):
        """Composition self(g(t)); g must have valuation >= 1 and self must
        have no negative exponents."""
        if self.lowest() < 0:
            raise ValueError("composition with negative exponents present")
        v = g.lowest()
        if not g.is_zero() and v < 1:
            raise ValueError(
                "composition requires the inner series to vanish at 0")
        if g.is_zero():
            c0 = self.coeffs.get(0)
            return NcSeries({0: c0} if c0 else {}, math.inf)
        order = min(g.order, (self.order + 1) * v - 1)
        out = NcSeries.zero() if 0 not in self.coeffs else NcSeries(
            {0: self.coeffs[0]}, order)
        power = NcSeries.const(ONE, order)
        top = max(e for e in self.coeffs) if self.coeffs else 0
        for n in range(1, top + 1):
            power = (power * g).truncate(order)
            c = self.coeffs.get(n)
            if c is not None:
                out = out + power.lmul_poly(c)
        return NcSeries(out.coeffs, order)

    def invert(self):
        """Two-sided inverse within the truncation.

        Requires valuation 0 and an invertible scalar constant term.
        """
        if self.lowest() != 0:
            raise ValueError(
                f"inversion requires valuation 0, got {self.lowest()}")
        c0 = self.coeffs[0].scalar_part()
        if c0 is None or len(self.coeffs[0]) != 1:
            raise ValueError("constant term is not scalar; cannot invert")
        inv0 = c0.inv()
        order = self.order
        if order is math.inf:
            raise ValueError(
                "inverting an exact polynomial yields an infinite series; "
                "truncate() to a finite order first")
        out = {0: NcPoly.scalar(inv0)}
        for n in range(1, order + 1):
            acc = ZP
            for k in range(1, n + 1):
                a = self.coeffs.get(k)
                if a is None:
                    continue
                b = out.get(n - k)
                if b is None:
                    continue
                acc = acc + a * b
            if acc:
                out[n] = -(acc * inv0)
        return NcSeries({e: c for e, c in out.items() if c}, order)

    def div_exact(self, divisor):
        """Exact division by a series t^v * unit; the dividend must be
        divisible (valuation check), otherwise the offending exponent is
        reported."""
        v = divisor.lowest()
        if v is math.inf:
            raise ZeroDivisionError("division of a series by zero")
        if self.is_zero():
            return NcSeries.zero()
        if self.lowest() < v:
            raise ValueError(
                f"series not divisible: coefficient at t^{self.lowest()} "
                f"below divisor valuation {v}")
        unit = divisor.shift(-v)
        if unit.order is math.inf:
            if self.order is math.inf:
                raise ValueError(
                    "exact/exact series division needs a finite truncation; "
                    "truncate() one argument first")
            unit = unit.truncate(self.order - v)
        return (self * unit.invert()).shift(-v)

    # -- rendering --------------------------------------------------------------

    def __str__(self):
        if not self.coeffs:
            return f"0 + O(t^{self.order})"
        parts = [f"({self.coeffs[e]})*t^{e}" for e in sorted(self.coeffs)]
        return " + ".join(parts) + f" + O(t^{self.order + 1})"

    __repr__ = __str__

    def eq_upto(self, other, n):
        if n > min(self.order, other.order):
            raise ValueError("comparison beyond common truncation order")
        for e in set(self.coeffs) | set(other.coeffs):
            if e <= n and self.coeffs.get(e, ZP) != other.coeffs.get(e, ZP):
                return False
        return True


# ---------------------------------------------------------------------------
# bivariate


class NcSeries2:
    """Series in s, t (exponents >= 0) truncated by total degree ``order``."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs, order):
        self.coeffs = {k: c for k, c in coeffs.items()
                       if c and k[0] + k[1] <= order}
        self.order = order

    @staticmethod
    def zero(order=math.inf):
        return NcSeries2({}, order)

    @staticmethod
    def embed(f, slot, order=None):
        """Lift a univariate NcSeries into variable 's' (slot 0) or 't'
        (slot 1)."""
        if f.lowest() is not math.inf and f.lowest() < 0:
            raise ValueError("cannot embed a Laurent series with negative "
                             "exponents into the bivariate power-series ring")
        o = f.order if order is None else min(order, f.order)
        out = {}
        for e, c in f.coeffs.items():
            if e <= o:
                out[(e, 0) if slot == 0 else (0, e)] = c
        return NcSeries2(out, o)

    def coeff(self, i, j):
        if i + j > self.order:
            raise ValueError(
                f"coefficient s^{i} t^{j} beyond truncation order {self.order}")
        return self.coeffs.get((i, j), ZP)

    def lowest(self):
        return min((i + j for i, j in self.coeffs), default=math.inf)

    def is_zero(self):
        return not self.coeffs

    def __add__(self, other):
        order = min(self.order, other.order)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            v = out.get(k)
            out[k] = c if v is None else v + c
        return NcSeries2({k: c for k, c in out.items()
                          if c and k[0] + k[1] <= order}, order)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return NcSeries2({k: -c for k, c in self.coeffs.items()}, self.order)

    def __mul__(self, other):
        if not isinstance(other, NcSeries2):
            if not other:
                return NcSeries2.zero()
            return NcSeries2({k: c * other for k, c in self.coeffs.items()},
                             self.order)
        if not self.coeffs or not other.coeffs:
            return NcSeries2.zero()
        order = min(self.order + other.lowest(), other.order + self.lowest())
        out = {}
        for (a1, b1), c1 in self.coeffs.items():
            for (a2, b2), c2 in other.coeffs.items():
                k = (a1 + a2, b1 + b2)
                if k[0] + k[1] > order:
                    continue
                p = c1 * c2
                if not p:
                    continue
                v = out.get(k)
                if v is None:
                    out[k] = p
                else:
                    v = v + p
                    if v:
                        out[k] = v
                    else:
                        del out[k]
        return NcSeries2(out, order)

    def __rmul__(self, other):
        if isinstance(other, NcSeries2):
            return NotImplemented
        if not other:
            return NcSeries2.zero()
        return NcSeries2({k: other * c for k, c in self.coeffs.items()},
                         self.order)

    def swap_vars(self):
        return NcSeries2({(b, a): c for (a, b), c in self.coeffs.items()},
                         self.order)

    def truncate(self, n):
        return NcSeries2({k: c for k, c in self.coeffs.items()
                          if k[0] + k[1] <= n}, min(self.order, n))

    def div_st(self):
        """Exact division by (s - t), homogeneous component by component.

        Raises with the first offending total degree if any component fails
        the final consistency check.
        """
        if self.is_zero():
            return NcSeries2.zero()
        by_deg = {}
        for (a, b), c in self.coeffs.items():
            by_deg.setdefault(a + b, {})[a] = c
        out = {}
        for d in sorted(by_deg):
            comp = by_deg[d]
            if d == 0:
                raise ValueError(
                    "series not divisible by (s - t): nonzero constant term")
            prev = ZP  # q_{a-1, d-a}
            for a in range(0, d):
                qq = prev - comp.get(a, ZP)
                if qq:
                    out[(a, d - 1 - a)] = qq
                prev = qq
            if prev != comp.get(d, ZP):
                raise ValueError(
                    f"series not divisible by (s - t): consistency fails in "
                    f"total degree {d}")
        return NcSeries2(out, self.order - 1)

    def div_1_minus_st(self):
        """Multiply by the geometric inverse of (1 - st)."""
        out = NcSeries2.zero(self.order)
        k = 0
        acc = self
        while 2 * k <= self.order and not acc.is_zero():
            out = out + acc
            acc = NcSeries2({(a + 1, b + 1): c
                             for (a, b), c in acc.coeffs.items()
                             if a + b + 2 <= self.order}, acc.order)
            k += 1
        return out

    def eq_upto(self, other, n):
        if n > min(self.order, other.order):
            raise ValueError("comparison beyond common truncation order")
        keys = set(self.coeffs) | set(other.coeffs)
        for k in keys:
            if k[0] + k[1] <= n and self.coeffs.get(k, ZP) != other.coeffs.get(k, ZP):
                return False
        return True

    def __str__(self):
        if not self.coeffs:
            return f"0 + O(deg {self.order})"
        parts = [f"({c})*s^{a}t^{b}"
                 for (a, b), c in sorted(self.coeffs.items())]
        return " + ".join(parts) + f" + O(deg {self.order + 1})"

    __repr__ = __str__


# ---------------------------------------------------------------------------
# standard scalar series


def geometric_alternating(order):
    """t/(1+t^2) = t - t^3 + t^5 - ... up to the given order."""
    out = {}
    sign = 1
    for e in range(1, order + 1, 2):
        out[e] = NcPoly.scalar(RatQ.from_int(sign))
        sign = -sign
    return NcSeries(out, order)


def u_series(two_bracket, order):
    """(q+q^-1)/(t + t^-1) = (q+q^-1) * (t - t^3 + t^5 - ...)."""
    return geometric_alternating(order) * two_bracket
