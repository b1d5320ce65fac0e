"""Exact arithmetic in the field Q(q) of rational functions in one variable q.

Elements are reduced fractions num/den of dense integer polynomials in q.
Canonical form: num and den are coprime as polynomials, the integer contents
of num and den are coprime, and den has positive leading coefficient.  The
zero element is the interned singleton ZERO with den = 1.  Negative powers of
q are ordinary fractions with a monomial denominator.

Polynomials are tuples of ints indexed by exponent, trailing zeros stripped;
() is the zero polynomial.
"""

from __future__ import annotations

import re
from math import gcd as _igcd


# ---------------------------------------------------------------------------
# dense integer polynomial helpers


def _trim(cs):
    n = len(cs)
    while n and cs[n - 1] == 0:
        n -= 1
    return tuple(cs[:n])


def _padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return _trim(out)


def _psub(a, b):
    out = list(a) + [0] * (len(b) - len(a))
    for i, c in enumerate(b):
        out[i] -= c
    return _trim(out)


def _pneg(a):
    return tuple(-c for c in a)


def _pack_eval(a, bits):
    """a(2^bits) via shift-accumulate (Horner on a power of two)."""
    f = 0
    for c in reversed(a):
        f = (f << bits) + c
    return f


def _unpack_eval(f, bits, length):
    """Balanced base-2^bits digits of f; inverse of _pack_eval provided every
    true coefficient lies strictly inside (-2^(bits-1), 2^(bits-1))."""
    neg = f < 0
    if neg:
        f = -f
    if bits & 7 or f.bit_length() > bits * length:
        # digit walk: odd widths, or an overlong value (the caller's
        # verification rejects the resulting truncation)
        out = []
        half = 1 << (bits - 1)
        full = 1 << bits
        for _ in range(length):
            if not f:
                break
            r = f & (full - 1)
            if r >= half:
                r -= full
            out.append(r)
            f = (f - r) >> bits
        return [-d for d in out] if neg else out
    # byte-aligned width: slice the two's-complement-free raw bytes and fix
    # the balanced digits up with a single carry sweep
    nb = bits >> 3
    raw = f.to_bytes(nb * length + nb, "little")
    half = 1 << (bits - 1)
    full = 1 << bits
    out = []
    carry = 0
    fb = int.from_bytes
    for i in range(length):
        t = fb(raw[i * nb:(i + 1) * nb], "little") + carry
        if t >= half:
            out.append(t - full)
            carry = 1
        else:
            out.append(t)
            carry = 0
    if neg:
        return [-d for d in out]
    return out


def _pmul(a, b):
    if not a or not b:
        return ()
    if len(a) == 1:
        c = a[0]
        return tuple(c * x for x in b)
    if len(b) == 1:
        c = b[0]
        return tuple(c * x for x in a)
    la, lb = len(a), len(b)
    if la + lb >= 16:
        # Kronecker substitution: one big-integer multiply, then digit
        # extraction; the slot width leaves room for the convolution sums
        ha = 1
        for c in a:
            if c < 0:
                c = -c
            if c > ha:
                ha = c
        hb = 1
        for c in b:
            if c < 0:
                c = -c
            if c > hb:
                hb = c
        bits = (ha.bit_length() + hb.bit_length()
                + min(la, lb).bit_length() + 3)
        bits = (bits + 7) & ~7
        prod = _pack_eval(a, bits) * _pack_eval(b, bits)
        return _trim(_unpack_eval(prod, bits, la + lb - 1))
    out = [0] * (la + lb - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                if cb:
                    out[i + j] += ca * cb
    return _trim(out)


def _content(a):
    """gcd of the coefficients, always >= 0 (0 only for the zero poly)."""
    g = 0
    for c in a:
        if c:
            g = _igcd(g, c)
            if g == 1:
                return 1
    return g


def _primitive(a):
    """Divide out +-content so the result is primitive with positive lc."""
    if not a:
        return ()
    c = _content(a)
    if a[-1] < 0:
        c = -c
    if c == 1:
        return a
    return tuple(x // c for x in a)


def _valuation(a):
    for i, c in enumerate(a):
        if c:
            return i
    return 0


def _is_monomial(a):
    seen = False
    for c in a:
        if c:
            if seen:
                return False
            seen = True
    return seen


def _prem(a, b):
    """Pseudo-remainder of a by b (deg a >= deg b >= 0, b nonzero)."""
    da, db = len(a) - 1, len(b) - 1
    if da < db:
        return a
    lb = b[-1]
    r = list(a)
    for i in range(da - db, -1, -1):
        top = r[db + i]
        for j in range(len(r)):
            r[j] *= lb
        if top:
            for j in range(db + 1):
                r[i + j] -= top * b[j]
    return _trim(r)


def _heu_gcd(a, b):
    """Evaluation-homomorphism gcd attempt (a, b primitive, non-monomial).

    Evaluate at a power of two wide enough for any divisor's coefficients,
    take the integer gcd, reconstruct from balanced digits, and confirm by
    exact division — so a non-None answer is always correct.  Returns None
    when verification keeps failing (caller falls back to the PRS).
    """
    da, db = len(a) - 1, len(b) - 1
    dm = min(da, db)
    ha = 1
    for c in a:
        if c < 0:
            c = -c
        if c > ha:
            ha = c
    hb = 1
    for c in b:
        if c < 0:
            c = -c
        if c > hb:
            hb = c
    bits = (min(ha.bit_length(), hb.bit_length()) + dm + 13) & ~7
    for _ in range(3):
        gint = _igcd(_pack_eval(a, bits), _pack_eval(b, bits))
        if gint == 1:
            return _ONE_P
        digits = _unpack_eval(gint, bits, dm + 2)
        if len(digits) > dm + 1:
            bits += (bits >> 1) + 7
            continue
        cand = _primitive(_trim(digits))
        if cand:
            if len(cand) == 1:
                return _ONE_P
            try:
                _pdivexact(a, cand)
                _pdivexact(b, cand)
            except ArithmeticError:
                pass
            else:
                return cand
        bits += (bits >> 1) + 7
    return None


def _pgcd(a, b):
    """gcd of the primitive parts of a, b: primitive, positive lc.

    Monomials are special-cased; the general case tries the verified
    evaluation heuristic and falls back to the primitive PRS.
    """
    if not a:
        return _primitive(b)
    if not b:
        return _primitive(a)
    if _is_monomial(a) or _is_monomial(b):
        v = min(_valuation(a), _valuation(b))
        if _is_monomial(a) and _is_monomial(b):
            out = [0] * (v + 1)
            out[v] = 1
            return tuple(out)
        # gcd(q^k, prim(p)) = q^min(k, val(p))
        out = [0] * (v + 1)
        out[v] = 1
        return tuple(out)
    a = _primitive(a)
    b = _primitive(b)
    g = _heu_gcd(a, b)
    if g is not None:
        return g
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _prem(a, b)
        a, b = b, _primitive(_trim(r))
        if len(b) > len(a):
            a, b = b, a
    return a if a[-1] > 0 else _pneg(a)


def _pdivexact(a, b):
    """Exact division a // b in Z[q]; raises if not exact (internal check)."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return ()
    da, db = len(a) - 1, len(b) - 1
    if da < db:
        raise ArithmeticError("inexact polynomial division")
    lb = b[-1]
    rem = list(a)
    quot = [0] * (da - db + 1)
    for i in range(da - db, -1, -1):
        top = rem[db + i]
        if top % lb:
            raise ArithmeticError("inexact polynomial division")
        c = top // lb
        quot[i] = c
        if c:
            for j in range(db + 1):
                rem[i + j] -= c * b[j]
    if _trim(rem):
        raise ArithmeticError("inexact polynomial division")
    return _trim(quot)


_ONE_P = (1,)


# ---------------------------------------------------------------------------
# the field element


class RatQ:
    """An element of Q(q) in canonical reduced form.  Immutable, hashable."""

    __slots__ = ("num", "den", "_h")

    def __init__(self, num, den):
        # raw constructor: callers must pass canonical data (use _make)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "_h", None)

    def __setattr__(self, *a):  # pragma: no cover - guards immutability
        raise AttributeError("RatQ is immutable")

    # -- construction -------------------------------------------------------

    @staticmethod
    def _pack(num, den):
        """Finish construction of an already poly-coprime num/den pair:
        integer contents, denominator sign, interned constants."""
        cn = _content(num)
        cd = _content(den)
        c = _igcd(cn, cd)
        if c > 1:
            num = tuple(x // c for x in num)
            den = tuple(x // c for x in den)
        if den[-1] < 0:
            num = _pneg(num)
            den = _pneg(den)
        if den == _ONE_P:
            if num == _ONE_P:
                return ONE
            if num == (-1,):
                return MINUS_ONE
        return RatQ(num, den)

    @staticmethod
    def _make(num, den):
        if num and num[-1] == 0:
            num = _trim(num)
        if den and den[-1] == 0:
            den = _trim(den)
        if not den:
            raise ZeroDivisionError("division by zero in Q(q)")
        if not num:
            return ZERO
        if _is_monomial(den):
            # gcd with a monomial is just a valuation shift
            v = min(_valuation(num), _valuation(den))
            if v:
                num = num[v:]
                den = den[v:]
        else:
            g = _pgcd(num, den)
            if g != _ONE_P:
                num = _pdivexact(num, g)
                den = _pdivexact(den, g)
        return RatQ._pack(num, den)

    @staticmethod
    def from_int(n):
        if n == 0:
            return ZERO
        if n == 1:
            return ONE
        if n == -1:
            return MINUS_ONE
        return RatQ((n,), _ONE_P)

    @staticmethod
    def from_ratio(p, r):
        """p/r for integers p, r."""
        return RatQ._make((p,), (r,))

    # -- arithmetic ---------------------------------------------------------

    @staticmethod
    def _add_reduced(n1, d1, n2, d2):
        """num/den of n1/d1 + n2/d2 with both inputs poly-coprime.

        Classical denominator-gcd scheme: with g = gcd(d1, d2) and
        t = n1 (d2/g) + n2 (d1/g), any surviving common factor of the sum
        divides g, so only gcd(t, g) is ever recomputed — never a gcd of
        full products.
        """
        if d1 == d2:
            t = _padd(n1, n2)
            if not t:
                return ZERO
            if _is_monomial(d1):
                v = min(_valuation(t), _valuation(d1))
                return RatQ._pack(t[v:], d1[v:])
            h = _pgcd(t, d1)
            if h != _ONE_P:
                return RatQ._pack(_pdivexact(t, h), _pdivexact(d1, h))
            return RatQ._pack(t, d1)
        g = _pgcd(d1, d2)
        if g == _ONE_P:
            t = _padd(_pmul(n1, d2), _pmul(n2, d1))
            if not t:
                return ZERO
            return RatQ._pack(t, _pmul(d1, d2))
        q1 = _pdivexact(d1, g)
        q2 = _pdivexact(d2, g)
        t = _padd(_pmul(n1, q2), _pmul(n2, q1))
        if not t:
            return ZERO
        h = _pgcd(t, g)
        if h != _ONE_P:
            t = _pdivexact(t, h)
            den = _pmul(q1, _pdivexact(d2, h))
        else:
            den = _pmul(q1, d2)
        return RatQ._pack(t, den)

    def __add__(self, other):
        if isinstance(other, int):
            other = RatQ.from_int(other)
        elif not isinstance(other, RatQ):
            return NotImplemented
        if self is ZERO:
            return other
        if other is ZERO:
            return self
        return RatQ._add_reduced(self.num, self.den, other.num, other.den)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            other = RatQ.from_int(other)
        elif not isinstance(other, RatQ):
            return NotImplemented
        if other is ZERO:
            return self
        if self is ZERO:
            return -other
        return RatQ._add_reduced(self.num, self.den,
                                 _pneg(other.num), other.den)

    def __rsub__(self, other):
        if isinstance(other, int):
            return RatQ.from_int(other) - self
        return NotImplemented

    def __neg__(self):
        if self is ZERO:
            return ZERO
        return RatQ(_pneg(self.num), self.den)

    def __mul__(self, other):
        if isinstance(other, int):
            other = RatQ.from_int(other)
        elif not isinstance(other, RatQ):
            return NotImplemented
        if self is ZERO or other is ZERO:
            return ZERO
        if self is ONE:
            return other
        if other is ONE:
            return self
        # cross-cancel; the factors are then pairwise coprime, so the
        # product needs no further polynomial gcd
        a_num, a_den = self.num, self.den
        b_num, b_den = other.num, other.den
        if b_den != _ONE_P:
            g1 = _pgcd(a_num, b_den)
            if g1 != _ONE_P:
                a_num = _pdivexact(a_num, g1)
                b_den = _pdivexact(b_den, g1)
        if a_den != _ONE_P:
            g2 = _pgcd(b_num, a_den)
            if g2 != _ONE_P:
                b_num = _pdivexact(b_num, g2)
                a_den = _pdivexact(a_den, g2)
        return RatQ._pack(_pmul(a_num, b_num), _pmul(a_den, b_den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, int):
            other = RatQ.from_int(other)
        elif not isinstance(other, RatQ):
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        if isinstance(other, int):
            return RatQ.from_int(other) * self.inv()
        return NotImplemented

    def inv(self):
        if self is ZERO:
            raise ZeroDivisionError("inverting 0 in Q(q)")
        num, den = self.den, self.num
        if den[-1] < 0:
            num, den = _pneg(num), _pneg(den)
        if den == _ONE_P:
            if num == _ONE_P:
                return ONE
            if num == (-1,):
                return MINUS_ONE
        return RatQ(num, den)

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inv() ** (-n)
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    # -- comparison / hashing ----------------------------------------------

    def __eq__(self, other):
        if isinstance(other, RatQ):
            return self.num == other.num and self.den == other.den
        if isinstance(other, int):
            return self.den == _ONE_P and self.num == ((other,) if other else ())
        return NotImplemented

    def __hash__(self):
        h = self._h
        if h is None:
            h = hash((self.num, self.den))
            object.__setattr__(self, "_h", h)
        return h

    def __bool__(self):
        return bool(self.num)

    # -- inspection ---------------------------------------------------------

    def is_scalar(self):
        """True when the element is a rational number (q-free)."""
        return len(self.num) <= 1 and len(self.den) <= 1

    def as_int(self):
        if self.den != _ONE_P or len(self.num) > 1:
            raise ValueError(f"{self} is not an integer")
        return self.num[0] if self.num else 0

    # -- rendering / parsing -------------------------------------------------

    def __str__(self):
        if not self.num:
            return "0"
        ns = _poly_str(self.num)
        if self.den == _ONE_P:
            return ns
        return f"({ns})/({_poly_str(self.den)})"

    def __repr__(self):
        return f"RatQ({self})"


def _poly_str(p):
    parts = []
    for e in range(len(p) - 1, -1, -1):
        c = p[e]
        if not c:
            continue
        sign = "-" if c < 0 else ("+" if parts else "")
        mag = abs(c)
        if e == 0:
            body = str(mag)
        else:
            v = "q" if e == 1 else f"q^{e}"
            body = v if mag == 1 else f"{mag}*{v}"
        parts.append(sign + body)
    return "".join(parts)


ZERO = RatQ((), _ONE_P)
ONE = RatQ(_ONE_P, _ONE_P)
MINUS_ONE = RatQ((-1,), _ONE_P)
Q = RatQ((0, 1), _ONE_P)
QINV = RatQ(_ONE_P, (0, 1))


def q_pow(k):
    """q**k for any integer k."""
    if k == 0:
        return ONE
    if k > 0:
        return RatQ((0,) * k + (1,), _ONE_P)
    return RatQ(_ONE_P, (0,) * (-k) + (1,))


_qint_cache = {}


def qint(n):
    """The q-integer [n]_q = (q^n - q^-n)/(q - q^-1).

    [0] = 0, [-n] = -[n]; for n >= 1 this is q^(n-1) + q^(n-3) + ... + q^(1-n).
    """
    v = _qint_cache.get(n)
    if v is not None:
        return v
    if n == 0:
        v = ZERO
    elif n < 0:
        v = -qint(-n)
    else:
        num = [0] * (2 * n - 1)
        for i in range(0, 2 * n - 1, 2):
            num[i] = 1
        v = RatQ._make(tuple(num), (0,) * (n - 1) + (1,) if n > 1 else _ONE_P)
    _qint_cache[n] = v
    return v


def qsym(n):
    """q^n + q^-n (n >= 0); qsym(0) = 2."""
    if n == 0:
        return RatQ.from_int(2)
    num = [0] * (2 * n + 1)
    num[0] = 1
    num[2 * n] = 1
    return RatQ._make(tuple(num), (0,) * n + (1,))


# [2]_q = q + q^-1, used constantly
TWO_BRACKET = qint(2)


# ---------------------------------------------------------------------------
# parsing (round-trip of str())


def parse(text):
    """Parse the str() form back into a RatQ.

    Accepts integer-coefficient Laurent expressions in q on either side of at
    most one '/', each side optionally parenthesized, e.g. "(q^2+1)/(q^3)",
    "q^2+1", "-3*q^-2+1", "5", "3/2".
    """
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty Q(q) literal")
    num_s, den_s = _split_top_fraction(s)
    num = _parse_laurent(_strip_parens(num_s))
    if den_s is None:
        den = {0: 1}
    else:
        den = _parse_laurent(_strip_parens(den_s))
    return _laurent_fraction(num, den)


def _split_top_fraction(s):
    depth = 0
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "/" and depth == 0:
            return s[:i], s[i + 1:]
    return s, None


def _strip_parens(s):
    while s.startswith("(") and s.endswith(")"):
        depth = 0
        ok = True
        for i, ch in enumerate(s):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
                if depth == 0 and i != len(s) - 1:
                    ok = False
                    break
        if ok:
            s = s[1:-1]
        else:
            break
    return s


_TERM_RE = re.compile(r"([+-]?)(?:(\d+)\*?)?(q(?:\^(-?\d+))?)?")


def _parse_laurent(s):
    if not s:
        raise ValueError("empty polynomial literal")
    out = {}
    pos = 0
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse Q(q) literal at ...{s[pos:]!r}")
        sign, coeff, qpart, expo = m.groups()
        if coeff is None and qpart is None:
            raise ValueError(f"cannot parse Q(q) literal at ...{s[pos:]!r}")
        c = int(coeff) if coeff is not None else 1
        if sign == "-":
            c = -c
        e = 0
        if qpart is not None:
            e = int(expo) if expo is not None else 1
        out[e] = out.get(e, 0) + c
        pos = m.end()
    return out


def _laurent_fraction(num, den):
    shift_n = min((e for e in num), default=0)
    shift_d = min((e for e in den), default=0)
    shift = min(shift_n, shift_d, 0)
    np = [0] * (max(num) - shift + 1) if num else []
    for e, c in num.items():
        np[e - shift] = c
    dp = [0] * (max(den) - shift + 1) if den else []
    for e, c in den.items():
        dp[e - shift] = c
    return RatQ._make(_trim(np), _trim(dp))
