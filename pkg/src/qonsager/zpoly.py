"""Commutative polynomials in countably many variables z1, z2, ... over Q(q).

Basis: monomials z_lambda indexed by integer partitions (weakly decreasing
tuples of parts >= 1); the empty partition is 1.  The grade of z_lambda is
|lambda|.  This module also builds the two triangular families living in this
ring:

* the "arrow-down" elements  zd_n = sum_l (-1)^l C(n-1-l, l) [2]^(-2l) z_(n-2l)
* the "vee" elements         zv_n = [2]^n sum_k q^(n-2k) zd_k zd_(n-k)

together with the substitution of the two standard scalar series into the
generating function Z(t) (verified internally against the product identity),
the algebra endomorphism determined by z_n -> zv_n, and its triangular
inverse table.
"""

from __future__ import annotations

from math import comb

from .coeff import ONE, RatQ, TWO_BRACKET, ZERO, q_pow, qsym

# optional global variable cutoff: when set, creating/using z_n with n above
# the cutoff raises, so silent dependence on dropped variables is impossible
_VAR_CUTOFF = None


def set_var_cutoff(m):
    """Set (or clear, with None) the largest allowed variable index."""
    global _VAR_CUTOFF
    _VAR_CUTOFF = m


def _check_index(n):
    if n < 1:
        raise ValueError("variable index must be >= 1 (z_0 is the unit)")
    if _VAR_CUTOFF is not None and n > _VAR_CUTOFF:
        raise ValueError(
            f"variable z_{n} exceeds the configured cutoff {_VAR_CUTOFF}")


def _merge(a, b):
    return tuple(sorted(a + b, reverse=True))


class ZPoly:
    __slots__ = ("terms",)
    __hash__ = None

    def __init__(self, terms=None):
        self.terms = terms if terms is not None else {}

    # -- constructors ----------------------------------------------------------

    @staticmethod
    def zero():
        return ZPoly({})

    @staticmethod
    def one():
        return ZPoly({(): ONE})

    @staticmethod
    def const(c):
        if isinstance(c, int):
            c = RatQ.from_int(c)
        return ZPoly({(): c}) if c else ZPoly({})

    @staticmethod
    def gen(n, c=ONE):
        """The variable z_n (times an optional coefficient)."""
        _check_index(n)
        return ZPoly({(n,): c}) if c else ZPoly({})

    @staticmethod
    def monomial(partition, c=ONE):
        p = tuple(sorted(partition, reverse=True))
        for n in p:
            _check_index(n)
        return ZPoly({p: c}) if c else ZPoly({})

    # -- ring operations -------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, ZPoly):
            return NotImplemented
        t = dict(self.terms)
        for k, c in other.terms.items():
            v = t.get(k)
            if v is None:
                t[k] = c
            else:
                v = v + c
                if v:
                    t[k] = v
                else:
                    del t[k]
        return ZPoly(t)

    def __sub__(self, other):
        if not isinstance(other, ZPoly):
            return NotImplemented
        t = dict(self.terms)
        for k, c in other.terms.items():
            v = t.get(k)
            if v is None:
                t[k] = -c
            else:
                v = v - c
                if v:
                    t[k] = v
                else:
                    del t[k]
        return ZPoly(t)

    def __neg__(self):
        return ZPoly({k: -c for k, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, ZPoly):
            t = {}
            for k1, c1 in self.terms.items():
                for k2, c2 in other.terms.items():
                    k = _merge(k1, k2)
                    c = c1 * c2
                    v = t.get(k)
                    if v is None:
                        if c:
                            t[k] = c
                    else:
                        v = v + c
                        if v:
                            t[k] = v
                        else:
                            del t[k]
            return ZPoly(t)
        if isinstance(other, int):
            other = RatQ.from_int(other)
        if isinstance(other, RatQ):
            if not other:
                return ZPoly({})
            return ZPoly({k: c * other for k, c in self.terms.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = ZPoly.one()
        for _ in range(n):
            out = out * self
        return out

    def __truediv__(self, other):
        if isinstance(other, int):
            other = RatQ.from_int(other)
        if not isinstance(other, RatQ):
            return NotImplemented
        return self * other.inv()

    def __eq__(self, other):
        if isinstance(other, ZPoly):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __bool__(self):
        return bool(self.terms)

    # -- structure ---------------------------------------------------------------

    def coeff(self, partition):
        return self.terms.get(tuple(sorted(partition, reverse=True)), ZERO)

    def graded_part(self, n):
        return ZPoly({k: c for k, c in self.terms.items() if sum(k) == n})

    def max_grade(self):
        return max((sum(k) for k in self.terms), default=0)

    def max_var(self):
        return max((k[0] for k in self.terms if k), default=0)

    def theta(self):
        """Evaluate all variables at 0 (the grade-0 coefficient)."""
        return self.terms.get((), ZERO)

    def subst(self, images):
        """Substitute z_n -> images[n] (a dict int -> ZPoly), extended as an
        algebra homomorphism.  Missing variables are reported."""
        out = ZPoly.zero()
        pow_memo = {}
        for part, c in self.terms.items():
            acc = ZPoly.const(c)
            for n in part:
                img = pow_memo.get(n)
                if img is None:
                    if n not in images:
                        raise KeyError(
                            f"substitution image for z_{n} not provided")
                    img = images[n]
                    pow_memo[n] = img
                acc = acc * img
            out = out + acc
        return out

    def map_coeffs(self, f):
        t = {}
        for k, c in self.terms.items():
            c2 = f(c)
            if c2:
                t[k] = c2
        return ZPoly(t)

    # -- rendering ----------------------------------------------------------------

    @staticmethod
    def _mono_name(part):
        if not part:
            return "1"
        pieces = []
        i = 0
        while i < len(part):
            j = i
            while j < len(part) and part[j] == part[i]:
                j += 1
            e = j - i
            pieces.append(f"z{part[i]}" + (f"^{e}" if e > 1 else ""))
            i = j
        return "*".join(pieces)

    def __str__(self):
        if not self.terms:
            return "0"
        keys = sorted(self.terms, key=lambda k: (sum(k), k), reverse=True)
        return " + ".join(f"({self.terms[k]})*{self._mono_name(k)}"
                          for k in keys)

    __repr__ = __str__


# ---------------------------------------------------------------------------
# the triangular families


def zdown(n):
    """The degree-lowering combination of the z's (zd_0 = 1)."""
    if n == 0:
        return ZPoly.one()
    b2 = TWO_BRACKET
    out = ZPoly.zero()
    for ell in range((n - 1) // 2 + 1):
        c = RatQ.from_int((-1) ** ell * comb(n - 1 - ell, ell)) \
            * (b2 ** (-2 * ell) if ell else ONE)
        out = out + ZPoly.gen(n - 2 * ell, c)
    return out


def zvee(n):
    """The product-side combination zv_n (zv_0 = 1)."""
    b2n = TWO_BRACKET ** n
    out = ZPoly.zero()
    for k in range(n + 1):
        out = out + zdown(k) * zdown(n - k) * (b2n * q_pow(n - 2 * k))
    return out


# -- scalar series with ZPoly coefficients, only what zsubst needs -------------


def _series_mul(a, b, order):
    out = {}
    for i, c in a.items():
        if i > order:
            continue
        for j, d in b.items():
            if i + j > order:
                continue
            v = out.get(i + j)
            p = c * d
            if v is None:
                if p:
                    out[i + j] = p
            else:
                v = v + p
                if v:
                    out[i + j] = v
                else:
                    del out[i + j]
    return out


def z_of_scalar_series(inner, order):
    """Z(inner(t)) truncated at the given order.

    ``inner`` is a dict exponent -> RatQ with no constant term; the result is
    a dict exponent -> ZPoly.
    """
    if 0 in inner and inner[0]:
        raise ValueError("inner series must vanish at t = 0")
    out = {0: ZPoly.one()}
    power = {0: ONE}
    n = 1
    while True:
        power = _series_mul(power, inner, order)
        if not power or min(power) > order:
            break
        zn = ZPoly.gen(n)
        for e, c in power.items():
            v = out.get(e)
            p = zn * c
            out[e] = p if v is None else v + p
        n += 1
    return out


def standard_inner(order, shift=0):
    """(q+q^-1)/(t+t^-1) with t -> q^shift * t, as a dict exp -> RatQ."""
    out = {}
    sign = ONE
    for e in range(1, order + 1, 2):
        out[e] = TWO_BRACKET * q_pow(shift * e) * sign
        sign = -sign
    return out


def zsubst_ST(order):
    """Z(S), Z(T) (coefficients: ZPoly) and the product-side table zvee.

    Internally verifies both generating-function statements:
      * Z(S) coefficient of t^n equals zd_n q^-n [2]^n  (and Z(T) with q^n)
      * Z(S) Z(T) coefficient of t^n equals zv_n
    A mismatch raises: these are exact identities, not empirical checks.
    """
    zs = z_of_scalar_series(standard_inner(order, -1), order)
    zt = z_of_scalar_series(standard_inner(order, +1), order)
    for n in range(order + 1):
        d = zdown(n)
        b = TWO_BRACKET ** n
        if zs.get(n, ZPoly.zero()) != d * (b * q_pow(-n)):
            raise ArithmeticError(
                f"Z(S) coefficient mismatch at t^{n}: substitution "
                f"disagrees with the closed form")
        if zt.get(n, ZPoly.zero()) != d * (b * q_pow(n)):
            raise ArithmeticError(
                f"Z(T) coefficient mismatch at t^{n}")
    prod = _series_mul(zs, zt, order)
    vee = {}
    for n in range(order + 1):
        vee[n] = zvee(n)
        if prod.get(n, ZPoly.zero()) != vee[n]:
            raise ArithmeticError(
                f"product identity fails at t^{n}: Z(S)Z(T) != Z-vee")
    return zs, zt, vee


# -- the vee endomorphism and its inverse ---------------------------------------


def vee_map(p, n_max=None):
    """Apply z_n -> zv_n to a polynomial (images built up to its max var)."""
    top = p.max_var() if n_max is None else n_max
    return p.subst({n: zvee(n) for n in range(1, top + 1)})


def vee_inverse_table(n_max):
    """Triangular inversion: entry n expresses z_n as a polynomial in the
    vee elements, *represented* as a ZPoly whose variable z_k stands for
    zv_k.  Verified by round-trip substitution; a singular or inconsistent
    step is a hard failure."""
    inv = {}
    for n in range(1, n_max + 1):
        v = zvee(n)
        lead = v.coeff((n,))
        if not lead:
            raise ArithmeticError(
                f"triangular solve singular at step {n}: no z_{n} term")
        rest = v - ZPoly.gen(n, lead)
        if rest.max_var() >= n:
            raise ArithmeticError(
                f"triangular solve inconsistent at step {n}: "
                f"unexpected high variable in the remainder")
        rest_in_v = rest.subst(dict(inv)) if rest else ZPoly.zero()
        inv[n] = (ZPoly.gen(n) - rest_in_v) * lead.inv()
    # round-trip check: substituting the actual vee elements recovers z_n
    images = {k: zvee(k) for k in range(1, n_max + 1)}
    for n in range(1, n_max + 1):
        if inv[n].subst(images) != ZPoly.gen(n):
            raise ArithmeticError(
                f"vee inverse round-trip failed at n={n}")
    return [inv[n] for n in range(1, n_max + 1)]


def theta(p):
    return p.theta()


# ---------------------------------------------------------------------------
# finite-grade linear algebra (filtration and kernel coincidences)


def partitions(n, max_part=None):
    """All partitions of n as weakly decreasing tuples."""
    if n == 0:
        yield ()
        return
    if max_part is None or max_part > n:
        max_part = n
    for first in range(max_part, 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def _part_key(k):
    return (sum(k), k)


def _row_reduce_insert(stair, p):
    """Insert a ZPoly into a row-reduced span; returns its residue."""
    terms = dict(p.terms)
    while terms:
        lead = max(terms, key=_part_key)
        piv = stair.get(lead)
        if piv is None:
            c = terms[lead]
            inv = c.inv()
            stair[lead] = {k: v * inv for k, v in terms.items()}
            return None
        c = terms.pop(lead)
        for k, v in piv.items():
            if k == lead:
                continue
            nv = terms.get(k)
            nv = (nv - c * v) if nv is not None else -(c * v)
            if nv:
                terms[k] = nv
            elif k in terms:
                del terms[k]
    return ZPoly.zero()


def span_membership(generators, elements):
    """Row-reduce the generators; return [bool membership] per element."""
    stair = {}
    for gp in generators:
        _row_reduce_insert(stair, gp)
    out = []
    for p in elements:
        terms = dict(p.terms)
        ok = True
        while terms:
            lead = max(terms, key=_part_key)
            piv = stair.get(lead)
            if piv is None:
                ok = False
                break
            c = terms.pop(lead)
            for k, v in piv.items():
                if k == lead:
                    continue
                nv = terms.get(k)
                nv = (nv - c * v) if nv is not None else -(c * v)
                if nv:
                    terms[k] = nv
                elif k in terms:
                    del terms[k]
        out.append(ok)
    return out


def filtration_equal_upto(d):
    """span{(z_lambda)^vee : 1 <= |lambda| <= d} = span{z_lambda : same},
    checked by exact linear algebra in both directions."""
    basis = [ZPoly.monomial(lam) for n in range(1, d + 1)
             for lam in partitions(n)]
    images = [vee_map(b, n_max=d) for b in basis]
    fwd = span_membership(images, basis)
    bwd = span_membership(basis, images)
    return all(fwd) and all(bwd)


def theta_kernel_coincidence(d):
    """To grade d: ker(theta) = ideal(z_n) = ideal(zv_n), by linear algebra.

    Returns a dict of booleans, one per coincidence.
    """
    kernel_basis = [ZPoly.monomial(lam) for n in range(1, d + 1)
                    for lam in partitions(n)]
    ideal_z = [ZPoly.gen(k) * ZPoly.monomial(mu)
               for k in range(1, d + 1)
               for m in range(0, d - k + 1)
               for mu in partitions(m)]
    ideal_v = [zvee(k) * ZPoly.monomial(mu)
               for k in range(1, d + 1)
               for m in range(0, d - k + 1)
               for mu in partitions(m)]
    out = {
        "ideal_z_covers_kernel": all(span_membership(ideal_z, kernel_basis)),
        "ideal_v_covers_kernel": all(span_membership(ideal_v, kernel_basis)),
        "kernel_covers_ideal_v": all(p.theta() == 0 for p in ideal_v),
        "kernel_covers_ideal_z": all(p.theta() == 0 for p in ideal_z),
    }
    return out
