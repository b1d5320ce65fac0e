"""Free associative algebra over an exact commutative coefficient ring.

Symbols are ints encoding (family, index); the int order *is* the alphabet
order used everywhere downstream:

    G1 < G2 < ... < Wm0 < Wm1 < ... < Wp1 < Wp2 < ... < Gt1 < Gt2 < ...
    < W0 < W1

Wm{k} is the generator of index -k of the central extension, Wp{n} the one of
index n >= 1, G{n}/Gt{n} the two central-series families (n >= 1; the index-0
elements are scalars, not symbols), and W0/W1 the generators of the plain
algebra.  Words are tuples of symbols; polynomials are dicts word -> coeff
with no explicit zero coefficients.  Coefficients may be RatQ or any
commutative ring object with +, -, *, bool (the z-polynomial ring reuses
this).
"""

from __future__ import annotations

from .coeff import ONE, Q, QINV, RatQ

STRIDE = 1 << 20
FAM_G, FAM_WM, FAM_WP, FAM_GT, FAM_W = range(5)
_FAM_NAMES = ("G", "Wm", "Wp", "Gt", "W")


def g(n):
    """Symbol for the untilded central-series generator of index n >= 1."""
    if n < 1:
        raise ValueError("G index starts at 1 (index 0 is a scalar)")
    return FAM_G * STRIDE + (n - 1)


def wm(k):
    """Symbol for the extension generator of index -k, k >= 0."""
    if k < 0:
        raise ValueError("negative-side generators are indexed by k >= 0")
    return FAM_WM * STRIDE + k


def wp(n):
    """Symbol for the extension generator of index n >= 1."""
    if n < 1:
        raise ValueError("positive-side generators are indexed by n >= 1")
    return FAM_WP * STRIDE + (n - 1)


def gt(n):
    """Symbol for the tilded central-series generator of index n >= 1."""
    if n < 1:
        raise ValueError("Gt index starts at 1 (index 0 is a scalar)")
    return FAM_GT * STRIDE + (n - 1)


W0 = FAM_W * STRIDE
W1 = FAM_W * STRIDE + 1


def sym_family(s):
    return s >> 20


def sym_index(s):
    """Internal index (0-based within the family)."""
    return s & (STRIDE - 1)


def name_of(s):
    fam, idx = s >> 20, s & (STRIDE - 1)
    if fam == FAM_G:
        return f"G{idx + 1}"
    if fam == FAM_WM:
        return f"Wm{idx}"
    if fam == FAM_WP:
        return f"Wp{idx + 1}"
    if fam == FAM_GT:
        return f"Gt{idx + 1}"
    if fam == FAM_W and idx in (0, 1):
        return f"W{idx}"
    raise ValueError(f"unknown symbol code {s}")


def parse_sym(name):
    for fam, prefix in ((FAM_GT, "Gt"), (FAM_WM, "Wm"), (FAM_WP, "Wp"),
                        (FAM_G, "G"), (FAM_W, "W")):
        if name.startswith(prefix) and name[len(prefix):].lstrip("-").isdigit():
            n = int(name[len(prefix):])
            if fam == FAM_G:
                return g(n)
            if fam == FAM_WM:
                return wm(n)
            if fam == FAM_WP:
                return wp(n)
            if fam == FAM_GT:
                return gt(n)
            if n in (0, 1):
                return W0 + n
    raise ValueError(f"cannot parse symbol name {name!r}")


def word_name(w):
    return " ".join(name_of(s) for s in w) if w else "1"


def deglex_key(w):
    return (len(w), w)


class NcPoly:
    """Noncommutative polynomial: dict word -> nonzero coefficient."""

    __slots__ = ("terms",)
    __hash__ = None

    def __init__(self, terms=None):
        self.terms = terms if terms is not None else {}

    # -- constructors --------------------------------------------------------

    @staticmethod
    def zero():
        return NcPoly({})

    @staticmethod
    def scalar(c):
        return NcPoly({(): c}) if c else NcPoly({})

    @staticmethod
    def sym(s, c=ONE):
        return NcPoly({(s,): c}) if c else NcPoly({})

    @staticmethod
    def word(w, c=ONE):
        return NcPoly({tuple(w): c}) if c else NcPoly({})

    @staticmethod
    def from_terms(pairs):
        t = {}
        for w, c in pairs:
            if not c:
                continue
            v = t.get(w)
            if v is None:
                t[w] = c
            else:
                v = v + c
                if v:
                    t[w] = v
                else:
                    del t[w]
        return NcPoly(t)

    # -- ring operations -----------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, NcPoly):
            return NotImplemented
        a, b = self.terms, other.terms
        if not a:
            return other
        if not b:
            return self
        t = dict(a)
        for w, c in b.items():
            v = t.get(w)
            if v is None:
                t[w] = c
            else:
                v = v + c
                if v:
                    t[w] = v
                else:
                    del t[w]
        return NcPoly(t)

    def __sub__(self, other):
        if not isinstance(other, NcPoly):
            return NotImplemented
        t = dict(self.terms)
        for w, c in other.terms.items():
            v = t.get(w)
            if v is None:
                t[w] = -c
            else:
                v = v - c
                if v:
                    t[w] = v
                else:
                    del t[w]
        return NcPoly(t)

    def __neg__(self):
        return NcPoly({w: -c for w, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, NcPoly):
            t = {}
            for w1, c1 in self.terms.items():
                for w2, c2 in other.terms.items():
                    k = w1 + w2
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
            return NcPoly(t)
        # scalar from the coefficient ring (or int)
        if not other:
            return NcPoly({})
        t = {}
        for w, c in self.terms.items():
            c2 = c * other
            if c2:
                t[w] = c2
        return NcPoly(t)

    def __rmul__(self, other):
        # coefficient ring is commutative; left and right scaling agree
        if isinstance(other, NcPoly):
            return NotImplemented
        return self.__mul__(other)

    def __truediv__(self, other):
        if isinstance(other, int):
            other = RatQ.from_int(other)
        if not isinstance(other, RatQ):
            return NotImplemented
        return self.__mul__(other.inv())

    def __eq__(self, other):
        if isinstance(other, NcPoly):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    # -- inspection ----------------------------------------------------------

    def coeff(self, w):
        return self.terms.get(tuple(w))

    def scalar_part(self):
        return self.terms.get((), None)

    def max_len(self):
        return max((len(w) for w in self.terms), default=0)

    def max_sym_index(self):
        """Largest internal family index appearing (W0/W1 excluded)."""
        m = -1
        for w in self.terms:
            for s in w:
                if s >> 20 != FAM_W:
                    i = s & (STRIDE - 1)
                    if i > m:
                        m = i
        return m

    def leading_word(self):
        if not self.terms:
            raise ValueError("zero polynomial has no leading word")
        return max(self.terms, key=deglex_key)

    def map_coeffs(self, f):
        t = {}
        for w, c in self.terms.items():
            c2 = f(c)
            if c2:
                t[w] = c2
        return NcPoly(t)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, key=deglex_key, reverse=True):
            parts.append(f"({self.terms[w]})*{word_name(w)}")
        return " + ".join(parts)

    __repr__ = __str__


ZERO_P = NcPoly({})
ONE_P = NcPoly({(): ONE})


def comm(a, b):
    """[a, b] = ab - ba."""
    return a * b - b * a


def qcomm(a, b, qq=Q, qqi=QINV):
    """[a, b]_q = q*ab - q^-1*ba."""
    return a * b * qq - b * a * qqi


class GenMap:
    """Algebra (anti)homomorphism given by images of generators.

    `images` maps symbol -> NcPoly.  For an antihomomorphism the image of a
    word is the reversed product.  `coeff_map` (optional) is applied to every
    coefficient; the default is the identity (coefficients are fixed).
    """

    __slots__ = ("images", "antihom", "coeff_map", "name", "_word_memo")

    def __init__(self, images, antihom=False, coeff_map=None, name=""):
        self.images = images
        self.antihom = antihom
        self.coeff_map = coeff_map
        self.name = name
        self._word_memo = {}

    def word_image(self, w):
        memo = self._word_memo
        out = memo.get(w)
        if out is not None:
            return out
        if not w:
            out = ONE_P
        else:
            seq = reversed(w) if self.antihom else w
            out = None
            for s in seq:
                img = self.images.get(s)
                if img is None:
                    raise KeyError(
                        f"symbol {name_of(s)} not in the domain of map "
                        f"{self.name or '<anonymous>'}")
                out = img if out is None else out * img
        memo[w] = out
        return out

    def __call__(self, p):
        cm = self.coeff_map
        acc = NcPoly({})
        for w, c in p.terms.items():
            c2 = cm(c) if cm is not None else c
            if not c2:
                continue
            acc = acc + self.word_image(w) * c2
        return acc


def compose_maps(outer, inner, name=""):
    """The map x -> outer(inner(x)) as a new GenMap over inner's domain."""
    if inner.coeff_map is not None or outer.coeff_map is not None:
        raise ValueError("composition with coefficient maps is not supported")
    images = {s: outer(p) for s, p in inner.images.items()}
    return GenMap(images, antihom=outer.antihom != inner.antihom, name=name)
