"""The alternating central extension of the q-Onsager algebra.

Generators come in four families (two W families, G, and G-tilde) subject to
eleven families of relations whose leading words all have length two.  This
module builds the truncated presentation at an index cutoff K, completes it,
assembles the generating functions and the central series Psi(t) / Zvee(t) /
Z(t), and realises the maps tying the extension to the base algebra, to the
base algebra tensored with the polynomial ring, and to the polynomial ring
itself.
"""

from . import cache
from .coeff import Q, QINV, RatQ, TWO_BRACKET, q_pow
from .ncpoly import (
    FAM_WM, FAM_WP, GenMap, NcPoly, ONE_P, W0, W1, ZERO_P,
    comm, g, gt, sym_family, sym_index, wm, wp,
)
from .onsager import (
    BDELTA0, D1, D2, GT0, alternating_gf_residuals, alternating_relations,
    dolan_grady_relations, series_terms, series2_terms, vartheta,
)
from .rewrite import Presentation
from .series import NcSeries, NcSeries2, u_series
from .zpoly import ZPoly, theta as ztheta

# the distinguished pair, written in the extension letters
XW0 = NcPoly.sym(wm(0))
XW1 = NcPoly.sym(wp(1))

# scalar of the central factorization: -q (q - q^-1) (q^2 - q^-2)^-4
XI = -Q * D1 / D2 ** 4

D2SQ_INV = (D2 * D2).inv()


def bdelta_ext():
    """q^-2 W_1 W_0 - W_0 W_1 in the extension letters (the image of the
    lowest delta element under the inclusion of the base algebra)."""
    return (NcPoly.word((wp(1), wm(0)), q_pow(-2))
            - NcPoly.word((wm(0), wp(1))))


class _Letters:
    """Symbol-backed accessor with the same W/G/Gt interface as the
    alternating-generator table of the base algebra."""

    def __init__(self, K):
        self.K = K

    def W(self, n):
        if n <= 0:
            if -n > self.K:
                raise IndexError(f"W_{n} outside the index window {self.K}")
            return NcPoly.sym(wm(-n))
        if n > self.K + 1:
            raise IndexError(f"W_{n} outside the index window {self.K}")
        return NcPoly.sym(wp(n))

    def G(self, n):
        if n == 0:
            return NcPoly.scalar(GT0)
        if n > self.K + 1:
            raise IndexError(f"G_{n} outside the index window {self.K}")
        return NcPoly.sym(g(n))

    def Gt(self, n):
        if n == 0:
            return NcPoly.scalar(GT0)
        if n > self.K + 1:
            raise IndexError(f"Gt_{n} outside the index window {self.K}")
        return NcPoly.sym(gt(n))


def extension_alphabet(K):
    letters = [g(n) for n in range(1, K + 2)]
    letters += [wm(n) for n in range(K + 1)]
    letters += [wp(n) for n in range(1, K + 2)]
    letters += [gt(n) for n in range(1, K + 2)]
    return letters


def extension_presentation(K):
    """All relation instances whose subscripts stay inside the window."""
    acc = _Letters(K)
    rels = alternating_relations(acc, K, K, w_lo=K, w_hi=K + 1, g_hi=K + 1)
    return Presentation(f"alt-extension K={K}", extension_alphabet(K),
                        [p for _, p in rels])


class AltContext:
    """The extension at index cutoff K with a completed rewrite system."""

    def __init__(self, K, max_len=4):
        self.K = K
        self.max_len = max_len
        self.presentation = extension_presentation(K)
        self.rs = cache.completed(self.presentation, max_len)
        self.acc = _Letters(K)
        sig, dag, tau = {}, {}, {}
        for k in range(K + 1):
            sig[wm(k)] = NcPoly.sym(wp(k + 1))
            sig[wp(k + 1)] = NcPoly.sym(wm(k))
            sig[g(k + 1)] = NcPoly.sym(gt(k + 1))
            sig[gt(k + 1)] = NcPoly.sym(g(k + 1))
            dag[wm(k)] = NcPoly.sym(wm(k))
            dag[wp(k + 1)] = NcPoly.sym(wp(k + 1))
            dag[g(k + 1)] = NcPoly.sym(gt(k + 1))
            dag[gt(k + 1)] = NcPoly.sym(g(k + 1))
            tau[wm(k)] = NcPoly.sym(wp(k + 1))
            tau[wp(k + 1)] = NcPoly.sym(wm(k))
            tau[g(k + 1)] = NcPoly.sym(g(k + 1))
            tau[gt(k + 1)] = NcPoly.sym(gt(k + 1))
        self.sigma = GenMap(sig, name="sigma")
        self.dagger = GenMap(dag, antihom=True, name="dagger")
        self.tau = GenMap(tau, antihom=True, name="tau")
        self._iota = GenMap({W0: XW0, W1: XW1}, name="iota")

    def reduce(self, p):
        return self.rs.normal_form(p)[0]

    def is_zero(self, p):
        return self.rs.reduces_to_zero(p)

    def iota(self, p):
        """Inclusion of the base algebra: letterwise substitution of the
        distinguished pair."""
        return self._iota(p)

    # -- generating functions --------------------------------------------

    def wm_series(self, order):
        if order > self.K:
            raise ValueError(
                f"series order {order} exceeds the index window {self.K}")
        return NcSeries.from_coeff_fn(lambda n: NcPoly.sym(wm(n)), order)

    def wp_series(self, order):
        if order > self.K:
            raise ValueError(
                f"series order {order} exceeds the index window {self.K}")
        return NcSeries.from_coeff_fn(lambda n: NcPoly.sym(wp(n + 1)), order)

    def g_series(self, order):
        if order > self.K + 1:
            raise ValueError(
                f"series order {order} exceeds the index window {self.K}")
        return NcSeries.from_coeff_fn(self.acc.G, order)

    def gt_series(self, order):
        if order > self.K + 1:
            raise ValueError(
                f"series order {order} exceeds the index window {self.K}")
        return NcSeries.from_coeff_fn(self.acc.Gt, order)


_CONTEXTS = {}


def get_alt_context(K, max_len=4):
    key = (K, max_len)
    ctx = _CONTEXTS.get(key)
    if ctx is None:
        ctx = _CONTEXTS[key] = AltContext(K, max_len)
    return ctx


# ---------------------------------------------------------------------------
# the central series


def st_pair(order):
    """The standard substitution pair: u(q^-1 t) and u(q t) where
    u = (q+q^-1)/(t+t^-1)."""
    u = u_series(TWO_BRACKET, order)
    return u.scale_var(QINV), u.scale_var(Q)


def psi_series(ctx, order):
    """The long generating function whose coefficients, after
    normalization, are the central elements."""
    if ctx.K < order + 2:
        raise ValueError(
            f"index window {ctx.K} too small for central order {order}")
    n = order + 1
    S, T = st_pair(n)
    Wm_S = ctx.wm_series(n).subst(S)
    Wp_S = ctx.wp_series(n).subst(S)
    Wm_T = ctx.wm_series(n).subst(T)
    Wp_T = ctx.wp_series(n).subst(T)
    G_S = ctx.g_series(n).subst(S)
    Gt_T = ctx.gt_series(n).subst(T)
    ST = S * T
    psi = ((ST * (Wm_S * Wp_T)).shift(-1)
           + (ST * (Wp_S * Wm_T)).shift(1)
           - (ST * (Wm_S * Wm_T)) * q_pow(2)
           - (ST * (Wp_S * Wp_T)) * q_pow(-2)
           + (G_S * Gt_T) * D2SQ_INV)
    return psi.truncate(order)


def zvee_table(ctx, order):
    """Normalized central elements, reduced, indexed 0..order."""
    zv = psi_series(ctx, order) * (TWO_BRACKET * TWO_BRACKET).inv()
    return [ctx.reduce(zv.coeff(k)) for k in range(order + 1)]


def zvee_series(ctx, order):
    tab = zvee_table(ctx, order)
    return NcSeries({n: tab[n] for n in range(order + 1)}, order)


def z_table(ctx, octx, n_max):
    """The other central family, defined by the triangular solve against the
    G~ family of the base algebra (scalar leading coefficient)."""
    alt = octx.alt(n_max)
    inv0 = GT0.inv()
    zs = [ONE_P]
    for n in range(1, n_max + 1):
        acc = NcPoly.sym(gt(n))
        for k in range(n):
            acc = acc - ctx.iota(alt.gt[n - k]) * zs[k]
        zs.append(ctx.reduce(acc * inv0))
    return zs


def z_series(ctx, octx, order):
    tab = z_table(ctx, octx, order)
    return NcSeries({n: tab[n] for n in range(order + 1)}, order)


# ---------------------------------------------------------------------------
# residual builders for the identity suite


def gf_relation_residuals(ctx, order):
    """The eleven relation families in generating-function form."""
    n = order + 1
    return alternating_gf_residuals(
        XW0, XW1, ctx.wm_series(n), ctx.wp_series(n),
        ctx.g_series(n), ctx.gt_series(n), order)


def symmetry_residuals(ctx):
    """The three maps send every defining relation into the ideal."""
    out = []
    for name, mp in (("sigma", ctx.sigma), ("dagger", ctx.dagger),
                     ("tau", ctx.tau)):
        for i, rel in enumerate(ctx.presentation.relations):
            out.append((f"{name} preserves relation {i}", mp(rel)))
    return out


def iota_residuals(ctx):
    """Images of the base defining relations under the inclusion."""
    return [(f"iota relation {i}", ctx.iota(r))
            for i, r in enumerate(dolan_grady_relations())]


def central_residuals(ctx, order):
    """Centrality and map-fixedness of the normalized central elements."""
    tab = zvee_table(ctx, order)
    out = [("zvee 0 is 1", tab[0] - ONE_P)]
    for n in range(1, order + 1):
        zn = tab[n]
        out.append((f"[zvee {n}, W0]", comm(zn, XW0)))
        out.append((f"[zvee {n}, W1]", comm(zn, XW1)))
        out.append((f"sigma fixes zvee {n}", ctx.sigma(zn) - zn))
        out.append((f"dagger fixes zvee {n}", ctx.dagger(zn) - zn))
        out.append((f"tau fixes zvee {n}", ctx.tau(zn) - zn))
    return out


def g1_residuals(ctx):
    """The lowest tilde generator plus q times the lowest delta element is
    central."""
    c = NcPoly.sym(gt(1)) + bdelta_ext() * Q
    return [("[Gt1 + q Bdelta, W0]", comm(c, XW0)),
            ("[Gt1 + q Bdelta, W1]", comm(c, XW1))]


def gbd_residuals(ctx, n_max):
    """The lowest delta element commutes with the whole tilde family."""
    bd = bdelta_ext()
    return [(f"[Bdelta, Gt{n}]", comm(bd, NcPoly.sym(gt(n))))
            for n in range(1, n_max + 1)]


def wind_residuals(ctx, n_max):
    """Index-lowering recurrences for the W families, elementwise."""
    bd = bdelta_ext()
    W, Gt = ctx.acc.W, ctx.acc.Gt
    out = []
    for n in range(1, n_max + 1):
        r1 = (W(-n) - W(n) + (XW0 * Gt(n)) * (D1 * D2SQ_INV)
              - comm(bd, W(1 - n)) * (q_pow(2) * D2SQ_INV))
        out.append((f"wind minus n={n}", r1))
        r2 = (W(n + 1) - W(1 - n) + (XW1 * Gt(n)) * (D1 * D2SQ_INV)
              + comm(bd, W(n)) * D2SQ_INV)
        out.append((f"wind plus n={n}", r2))
    return out


def _comm_ps(p, f):
    return f.lmul_poly(p) - f.rmul_poly(p)


def wind_gf_residuals(ctx, order):
    """Generating-function form of the index-lowering recurrences."""
    bd = bdelta_ext()
    Wm = ctx.wm_series(order)
    Wp = ctx.wp_series(order)
    Gt = ctx.gt_series(order)
    r1 = (Wm - Wp.shift(1)
          + Gt.lmul_poly(XW0) * (D1 * D2SQ_INV)
          - _comm_ps(bd, Wm).shift(1) * (q_pow(2) * D2SQ_INV))
    r2 = (Wp - Wm.shift(1)
          + Gt.lmul_poly(XW1) * (D1 * D2SQ_INV)
          + _comm_ps(bd, Wp).shift(1) * D2SQ_INV)
    return (series_terms("wind gf minus", r1.truncate(order))
            + series_terms("wind gf plus", r2.truncate(order)))


def _iota_series(ctx, f):
    return f.map_coeffs(ctx.iota)


def bsolve_residuals(ctx, octx, order):
    """The four closed forms for the alpha-family generating functions,
    multiplied through by the tilde series so no inversion is needed."""
    n = order + 1
    S, T = st_pair(n)
    Bm = _iota_series(ctx, octx.b.minus_series(n))
    Bp = _iota_series(ctx, octx.b.plus_series(n))
    Wm_S = ctx.wm_series(n).subst(S)
    Wp_S = ctx.wp_series(n).subst(S)
    Wm_T = ctx.wm_series(n).subst(T)
    Wp_T = ctx.wp_series(n).subst(T)
    Gt_S = ctx.gt_series(n).subst(S)
    Gt_T = ctx.gt_series(n).subst(T)
    out = []
    rhs = (S * (Wp_S * QINV - Wm_S.shift(-1) * Q)) * D2
    out += series_terms("bsolve right minus",
                        (Bm * Gt_S - rhs).truncate(order))
    rhs = (T * (Wm_T * Q - Wp_T.shift(-1) * QINV)) * D2
    out += series_terms("bsolve right plus",
                        (Bp * Gt_T - rhs).truncate(order))
    rhs = ((Wp_T * Q - Wm_T.shift(-1) * QINV) * T) * D2
    out += series_terms("bsolve left minus",
                        (Gt_T * Bm - rhs).truncate(order))
    rhs = ((Wm_S * QINV - Wp_S.shift(-1) * Q) * S) * D2
    out += series_terms("bsolve left plus",
                        (Gt_S * Bp - rhs).truncate(order))
    return out


def _tfactor(f):
    """(t - t^-1) times the series."""
    return f.shift(1) - f.shift(-1)


def zzznote_residuals(ctx, octx, order):
    """The four substituted-variable identities tying the W series to the
    alpha series, multiplied through by (q^2-q^-2)(t-t^-1)."""
    n = order + 1
    u = u_series(TWO_BRACKET, n)
    Wm_u = ctx.wm_series(n).subst(u)
    Wp_u = ctx.wp_series(n).subst(u)
    Gt_u = ctx.gt_series(n).subst(u)
    Bm_q = _iota_series(ctx, octx.b.minus_series(n)).scale_var(Q)
    Bp_qi = _iota_series(ctx, octx.b.plus_series(n)).scale_var(QINV)
    Bm_qi = _iota_series(ctx, octx.b.minus_series(n)).scale_var(QINV)
    Bp_q = _iota_series(ctx, octx.b.plus_series(n)).scale_var(Q)
    lhs_m = _tfactor(u * Wm_u) * D2
    lhs_p = _tfactor(u * Wp_u) * D2
    out = []
    rhs = (Bp_qi.shift(1) * QINV + Bm_q) * Gt_u
    out += series_terms("subst right minus", (lhs_m - rhs).truncate(order))
    rhs = (Bp_qi + Bm_q.shift(1) * Q) * Gt_u
    out += series_terms("subst right plus", (lhs_p - rhs).truncate(order))
    rhs = Gt_u * (Bp_q.shift(1) * Q + Bm_qi)
    out += series_terms("subst left minus", (lhs_m - rhs).truncate(order))
    rhs = Gt_u * (Bp_q + Bm_qi.shift(1) * QINV)
    out += series_terms("subst left plus", (lhs_p - rhs).truncate(order))
    return out


def extra1_residuals(ctx, octx, order):
    """q-commutators of the distinguished pair with the substituted tilde
    series, in both bracketing orders, multiplied through by (t-t^-1)."""
    n = order + 1
    u = u_series(TWO_BRACKET, n)
    Gt_u = ctx.gt_series(n).subst(u)
    Bm_q = _iota_series(ctx, octx.b.minus_series(n)).scale_var(Q)
    Bp_qi = _iota_series(ctx, octx.b.plus_series(n)).scale_var(QINV)
    Bm_qi = _iota_series(ctx, octx.b.minus_series(n)).scale_var(QINV)
    Bp_q = _iota_series(ctx, octx.b.plus_series(n)).scale_var(Q)
    lhs0 = _tfactor(Gt_u.rmul_poly(XW0) * Q - Gt_u.lmul_poly(XW0) * QINV)
    lhs1 = _tfactor(Gt_u.lmul_poly(XW1) * Q - Gt_u.rmul_poly(XW1) * QINV)
    out = []
    t1 = (Bm_q.shift(1) * Q - Bm_q.shift(-1) * QINV) * (Q * D1)
    t2 = (Bp_qi.shift(2) * QINV - Bp_qi * Q) * D1
    out += series_terms("extra W0 right",
                        (lhs0 - (t1 - t2) * Gt_u).truncate(order))
    t1 = (Bm_qi.shift(1) * QINV - Bm_qi.shift(-1) * Q) * (QINV * D1)
    t2 = (Bp_q.shift(2) * Q - Bp_q * QINV) * D1
    out += series_terms("extra W0 left",
                        (lhs0 - Gt_u * (t1 - t2)).truncate(order))
    t1 = (Bp_qi.shift(1) * QINV - Bp_qi.shift(-1) * Q) * (QINV * D1)
    t2 = (Bm_q.shift(2) * Q - Bm_q * QINV) * D1
    out += series_terms("extra W1 right",
                        (lhs1 - (t1 - t2) * Gt_u).truncate(order))
    t1 = (Bp_q.shift(1) * Q - Bp_q.shift(-1) * QINV) * (Q * D1)
    t2 = (Bm_qi.shift(2) * QINV - Bm_qi * Q) * D1
    out += series_terms("extra W1 left",
                        (lhs1 - Gt_u * (t1 - t2)).truncate(order))
    return out


def ex2_residuals(ctx, octx, order):
    """The substituted plain-G series against four quadratic alpha-family
    expressions, multiplied through by (t-t^-1)."""
    n = order + 1
    u = u_series(TWO_BRACKET, n)
    G_u = ctx.g_series(n).subst(u)
    Gt_u = ctx.gt_series(n).subst(u)
    Bd_q = _iota_series(ctx, octx.b.delta_series(n)).scale_var(Q)
    Bd_qi = _iota_series(ctx, octx.b.delta_series(n)).scale_var(QINV)
    Bm_q = _iota_series(ctx, octx.b.minus_series(n)).scale_var(Q)
    Bp_qi = _iota_series(ctx, octx.b.plus_series(n)).scale_var(QINV)
    Bm_qi = _iota_series(ctx, octx.b.minus_series(n)).scale_var(QINV)
    Bp_q = _iota_series(ctx, octx.b.plus_series(n)).scale_var(Q)
    lhs = _tfactor(G_u)
    inv0 = BDELTA0.inv()
    out = []
    P = Bm_q * Bp_qi
    inner = (_tfactor(Bd_q) * inv0 + (Bm_q * Bm_q).shift(1) * (Q * D1)
             - P.shift(2) * QINV + P * Q)
    out += series_terms("quad right qt",
                        (lhs - inner * Gt_u).truncate(order))
    P = Bp_qi * Bm_q
    inner = (_tfactor(Bd_qi) * inv0 - (Bp_qi * Bp_qi).shift(1) * (QINV * D1)
             - P.shift(2) * Q + P * QINV)
    out += series_terms("quad right qinvt",
                        (lhs - inner * Gt_u).truncate(order))
    P = Bm_qi * Bp_q
    inner = (_tfactor(Bd_q) * inv0 + (Bp_q * Bp_q).shift(1) * (Q * D1)
             - P.shift(2) * QINV + P * Q)
    out += series_terms("quad left qt",
                        (lhs - Gt_u * inner).truncate(order))
    P = Bp_q * Bm_qi
    inner = (_tfactor(Bd_qi) * inv0 - (Bm_qi * Bm_qi).shift(1) * (QINV * D1)
             - P.shift(2) * Q + P * QINV)
    out += series_terms("quad left qinvt",
                        (lhs - Gt_u * inner).truncate(order))
    return out


def mn_residuals(ctx, octx, order):
    """The central series factors through the delta series, sandwiched by
    the two substituted tilde series."""
    S, T = st_pair(order)
    Gt_S = ctx.gt_series(order).subst(S)
    Gt_T = ctx.gt_series(order).subst(T)
    Bd = _iota_series(ctx, octx.b.delta_series(order))
    zv = zvee_series(ctx, order)
    res = zv - (Gt_S * Bd * Gt_T) * XI
    return series_terms("factorization", res.truncate(order))


def perm_residuals(ctx, octx, order):
    """All six arrangements of the three factors give the central series."""
    S, T = st_pair(order)
    Gt_S = ctx.gt_series(order).subst(S)
    Gt_T = ctx.gt_series(order).subst(T)
    Bd = _iota_series(ctx, octx.b.delta_series(order))
    zv = zvee_series(ctx, order)
    arrangements = [
        ("S B T", Gt_S * Bd * Gt_T),
        ("B S T", Bd * Gt_S * Gt_T),
        ("S T B", Gt_S * Gt_T * Bd),
        ("T B S", Gt_T * Bd * Gt_S),
        ("B T S", Bd * Gt_T * Gt_S),
        ("T S B", Gt_T * Gt_S * Bd),
    ]
    out = []
    for name, prod in arrangements:
        res = zv - prod * XI
        out += series_terms(f"arrangement {name}", res.truncate(order))
    return out


def bz_residuals(ctx, octx, order):
    """The inverse form of the factorization, exercising series inversion."""
    S, T = st_pair(order)
    inv_S = ctx.gt_series(order).subst(S).invert()
    inv_T = ctx.gt_series(order).subst(T).invert()
    Bd = _iota_series(ctx, octx.b.delta_series(order))
    zv = zvee_series(ctx, order)
    res = Bd - (inv_S * zv * inv_T) * XI.inv()
    return series_terms("inverse factorization", res.truncate(order))


def bg_residuals(ctx, octx, order):
    """The tilde series commutes with the delta series (two variables)."""
    Gt_s = NcSeries2.embed(ctx.gt_series(order), 0)
    Bd_t = NcSeries2.embed(_iota_series(ctx, octx.b.delta_series(order)), 1)
    res = Gt_s * Bd_t - Bd_t * Gt_s
    return series2_terms("delta commutes with tilde", res.truncate(order))


def bgc_residuals(ctx, octx, k_max, n_max):
    """Elementwise commutators of tilde generators with delta elements."""
    out = []
    for k in range(k_max + 1):
        gk = NcPoly.sym(gt(k + 1))
        for n in range(1, n_max + 1):
            out.append((f"[Gt{k + 1}, Bdelta{n}]",
                        comm(gk, ctx.iota(octx.b.delta(n)))))
    return out


def zst_residuals(ctx, octx, order):
    """The normalized central series is the product of the plain central
    series at the two standard substitutions."""
    S, T = st_pair(order)
    Zt = z_series(ctx, octx, order)
    res = zvee_series(ctx, order) - Zt.subst(S) * Zt.subst(T)
    return series_terms("central product", res.truncate(order))


def zst_family_residuals(ctx, octx, order):
    """Each extension family is the corresponding base family times the
    plain central series."""
    alt = octx.alt(order)
    Zt = z_series(ctx, octx, order)
    pairs = [
        ("W minus", ctx.wm_series(order),
         _iota_series(ctx, alt.w_minus_series(order))),
        ("W plus", ctx.wp_series(order),
         _iota_series(ctx, alt.w_plus_series(order))),
        ("G", ctx.g_series(order), _iota_series(ctx, alt.g_series(order))),
        ("G tilde", ctx.gt_series(order),
         _iota_series(ctx, alt.gt_series(order))),
    ]
    out = []
    for name, ext, base in pairs:
        res = ext - base * Zt
        out += series_terms(f"family {name}", res.truncate(order))
    return out


def pov_residuals(ctx, octx, n_max):
    """Elementwise form of the family factorizations."""
    alt = octx.alt(n_max)
    ztab = z_table(ctx, octx, n_max)
    out = []
    for n in range(n_max + 1):
        acc = NcPoly.sym(wm(n))
        for k in range(n + 1):
            acc = acc - ctx.iota(alt.w[k - n]) * ztab[k]
        out.append((f"W_-{n} factorization", acc))
        acc = NcPoly.sym(wp(n + 1))
        for k in range(n + 1):
            acc = acc - ctx.iota(alt.w[n + 1 - k]) * ztab[k]
        out.append((f"W_{n + 1} factorization", acc))
        if n >= 1:
            acc = NcPoly.sym(g(n))
            for k in range(n + 1):
                acc = acc - ctx.iota(alt.g[n - k]) * ztab[k]
            out.append((f"G_{n} factorization", acc))
            acc = NcPoly.sym(gt(n))
            for k in range(n + 1):
                acc = acc - ctx.iota(alt.gt[n - k]) * ztab[k]
            out.append((f"Gt_{n} factorization", acc))
    return out


# ---------------------------------------------------------------------------
# maps out of the extension


def gamma_hat_map(octx, n_max):
    """Letterwise substitution of the alternating generators of the base
    algebra, then base reduction; defined on letters with index <= n_max."""
    alt = octx.alt(n_max)
    images = {}
    for k in range(n_max + 1):
        images[wm(k)] = alt.w[-k]
    for k in range(1, n_max + 2):
        images[wp(k)] = alt.w[k]
    for k in range(1, n_max + 1):
        images[g(k)] = alt.g[k]
        images[gt(k)] = alt.gt[k]
    return GenMap(images, name="gamma")


class TensorPoly:
    """An element of the base algebra tensored with the polynomial ring:
    finitely many z-monomials (partition keys, parts descending), each
    carrying a free-algebra polynomial coefficient."""

    __slots__ = ("parts",)

    def __init__(self, parts=None):
        self.parts = {}
        if parts:
            for lam, p in parts.items():
                if p:
                    self.parts[lam] = p

    @staticmethod
    def zero():
        return TensorPoly()

    @staticmethod
    def of_poly(p):
        return TensorPoly({(): p})

    @staticmethod
    def of_zpoly(zp):
        return TensorPoly({lam: NcPoly.scalar(c)
                           for lam, c in zp.terms.items()})

    def __add__(self, other):
        out = dict(self.parts)
        for lam, p in other.parts.items():
            cur = out.get(lam)
            out[lam] = p if cur is None else cur + p
        return TensorPoly(out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return TensorPoly({lam: -p for lam, p in self.parts.items()})

    def __mul__(self, other):
        if isinstance(other, TensorPoly):
            out = {}
            for lam, p in self.parts.items():
                for mu, r in other.parts.items():
                    key = tuple(sorted(lam + mu, reverse=True))
                    cur = out.get(key)
                    pr = p * r
                    out[key] = pr if cur is None else cur + pr
            return TensorPoly(out)
        if isinstance(other, (RatQ, int)):
            return TensorPoly({lam: p * other
                               for lam, p in self.parts.items()})
        return NotImplemented

    def __eq__(self, other):
        return isinstance(other, TensorPoly) and self.parts == other.parts

    def __bool__(self):
        return bool(self.parts)

    def map_poly(self, f):
        return TensorPoly({lam: f(p) for lam, p in self.parts.items()})

    def reduce(self, octx):
        return self.map_poly(octx.reduce)

    def is_zero_under(self, octx):
        return all(octx.is_zero(p) for p in self.parts.values())

    def scalar_zpoly(self):
        """The polynomial-ring part, when every coefficient is scalar."""
        out = {}
        for lam, p in self.parts.items():
            c = p.scalar_part()
            if c is None:
                raise ValueError("tensor element is not scalar")
            if c:
                out[lam] = c
        return ZPoly(out)

    def __repr__(self):
        return f"TensorPoly({len(self.parts)} z-monomials)"


def varphi_images(octx, n_max):
    """Generator images of the isomorphism onto the tensor product."""
    alt = octx.alt(n_max)
    images = {}
    for n in range(n_max + 1):
        images[wm(n)] = TensorPoly(
            {(k,) if k else (): alt.w[k - n] for k in range(n + 1)})
    for n in range(1, n_max + 2):
        images[wp(n)] = TensorPoly(
            {(k,) if k else (): alt.w[n - k] for k in range(n)})
    for n in range(1, n_max + 1):
        images[g(n)] = TensorPoly(
            {(k,) if k else (): alt.g[n - k] for k in range(n + 1)})
        images[gt(n)] = TensorPoly(
            {(k,) if k else (): alt.gt[n - k] for k in range(n + 1)})
    return images


def apply_varphi(images, p):
    """Letterwise application on an extension polynomial."""
    out = TensorPoly.zero()
    for word, c in p.terms.items():
        acc = TensorPoly.of_poly(NcPoly.scalar(c))
        for s in word:
            acc = acc * images[s]
        out = out + acc
    return out


def eta(p):
    """The surjection onto the polynomial ring: both W families die, each
    G-family letter contributes its index as a z-variable weighted by the
    common scalar seed."""
    out = {}
    for word, c in p.terms.items():
        lam = []
        coeff = c
        dead = False
        for s in word:
            fam = sym_family(s)
            if fam in (FAM_WM, FAM_WP):
                dead = True
                break
            coeff = coeff * GT0
            lam.append(sym_index(s))
        if dead:
            continue
        key = tuple(sorted(lam, reverse=True))
        cur = out.get(key)
        coeff = coeff if cur is None else cur + coeff
        if coeff:
            out[key] = coeff
        elif key in out:
            del out[key]
    return ZPoly(out)


def phi_of_tensor(ctx, tp, zvee_tab):
    """The isomorphism from the tensor product onto the extension: the
    noncommutative part goes through the inclusion, each z-variable becomes
    the corresponding normalized central element."""
    out = ZERO_P
    for lam, p in tp.parts.items():
        acc = ctx.iota(p)
        for part in lam:
            acc = acc * zvee_tab[part]
        out = out + acc
    return out


# ---------------------------------------------------------------------------
# diagram checks on generators


def gamma_diagram_residuals(ctx, octx, n_max):
    """gamma agrees with (apply varphi, evaluate the polynomial leg at
    theta) on every letter of the window."""
    gam = gamma_hat_map(octx, n_max)
    images = varphi_images(octx, n_max)
    out = []
    for s in sorted(images):
        tp = images[s]
        acc = ZERO_P
        for lam, p in tp.parts.items():
            th = ztheta(ZPoly.monomial(lam))
            if th:
                acc = acc + p * th
        out.append((f"gamma via tensor on {s}", acc - gam(NcPoly.sym(s))))
    return out


def eta_diagram_residuals(ctx, octx, n_max):
    """eta agrees with (apply varphi, evaluate the base leg at the trivial
    character) on every letter of the window."""
    images = varphi_images(octx, n_max)
    out = []
    for s in sorted(images):
        tp = images[s]
        zp = ZPoly.zero()
        for lam, p in tp.parts.items():
            c = vartheta(octx.reduce(p))
            if c:
                zp = zp + ZPoly.monomial(lam, c)
        out.append((f"eta via tensor on {s}", zp - eta(NcPoly.sym(s))))
    return out


def morecom_residuals(ctx, octx, n_max):
    """The three base-algebra maps intertwine gamma with the extension
    maps, letter by letter."""
    gam = gamma_hat_map(octx, n_max)
    pairs = [("sigma", ctx.sigma, octx.sigma),
             ("dagger", ctx.dagger, octx.dagger),
             ("tau", ctx.tau, octx.tau)]
    out = []
    for letter in extension_alphabet(n_max):
        if sym_index(letter) > n_max:
            continue
        p = NcPoly.sym(letter)
        for name, ext_map, base_map in pairs:
            try:
                lhs = gam(ext_map(p))
            except KeyError:
                continue
            out.append((f"{name} intertwines gamma on {letter}",
                        lhs - base_map(gam(p))))
    return out


def varphi_relation_residuals(ctx, octx, n_max):
    """The tensor images of the defining relations vanish after base
    reduction (homomorphism property)."""
    images = varphi_images(octx, n_max)
    acc = _Letters(n_max - 1)
    rels = alternating_relations(acc, n_max - 1, n_max - 1,
                                 w_lo=n_max - 1, w_hi=n_max, g_hi=n_max)
    return [(f"varphi of {label}", apply_varphi(images, rel))
            for label, rel in rels]


def eta_relation_residuals(ctx):
    """The polynomial images of the defining relations vanish identically
    (homomorphism property of the surjection)."""
    return [(f"eta of relation {i}", eta(rel))
            for i, rel in enumerate(ctx.presentation.relations)]
