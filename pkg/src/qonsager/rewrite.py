"""Truncated completion and reduction for finitely presented free algebras.

Monomial order: degree-lexicographic (deglex) with the global symbol order of
ncpoly.  Relations are oriented into rules lead -> tail where the lead word
strictly exceeds every tail word, so every rewrite step decreases the deglex
multiset and reduction terminates unconditionally.  Completion resolves
overlap and inclusion ambiguities whose combined word length stays within
``max_len``; ``complete_upto`` records the length up to which confluence is
certified.  Completion over a truncated alphabet is *empirical*: when a
candidate rule would mention a generator index beyond ``max_index`` it is
skipped, logged, and its leading word is remembered so that any later
reduction touching it reports ``overflow`` instead of pretending the word is
irreducible.

Reduction is deterministic: at each step the leftmost position with a match
is rewritten, ties at a position broken by the longest matching lead.
"""

from __future__ import annotations

import json
import time
from collections import deque
from math import gcd as _igcd

from .coeff import (ONE, RatQ, _ONE_P, _content, _padd, _pdivexact, _pgcd,
                    _pmul, _valuation)
from .ncpoly import FAM_W, STRIDE, NcPoly, deglex_key, name_of, word_name

REDUCED_ZERO = "reduced_zero"
IRREDUCIBLE_NONZERO = "irreducible_nonzero"
OVERFLOW = "overflow"


def _ff_strip(den, nums):
    """Remove factors common to the denominator and every numerator of a
    cleared fraction: q-powers and integer content always, full polynomial
    junk only once the denominator has grown past a threshold (the junk is
    what keeps cleared fractions from blowing up along deep reductions)."""
    if not nums:
        return _ONE_P, nums
    v = _valuation(den)
    if v:
        for n in nums.values():
            nv = _valuation(n)
            if nv < v:
                v = nv
                if not v:
                    break
        if v:
            den = den[v:]
            nums = {w: n[v:] for w, n in nums.items()}
    g = _content(den)
    if g > 1:
        for n in nums.values():
            g = _igcd(g, _content(n))
            if g == 1:
                break
        if g > 1:
            den = tuple(c // g for c in den)
            nums = {w: tuple(c // g for c in n) for w, n in nums.items()}
    if len(den) > 48:
        pg = den
        for n in nums.values():
            pg = _pgcd(pg, n)
            if len(pg) == 1:
                pg = None
                break
        if pg is not None and len(pg) > 1:
            den = _pdivexact(den, pg)
            nums = {w: _pdivexact(n, pg) for w, n in nums.items()}
    return den, nums


class Presentation:
    """A free algebra presentation: alphabet (symbol ints) + relations."""

    __slots__ = ("name", "alphabet", "relations")

    def __init__(self, name, alphabet, relations):
        self.name = name
        self.alphabet = tuple(sorted(alphabet))
        self.relations = list(relations)

    def __repr__(self):
        return (f"Presentation({self.name!r}, |alphabet|={len(self.alphabet)}, "
                f"|relations|={len(self.relations)})")


class Rule:
    """Oriented rewrite rule lead -> tail (tail: dict word -> RatQ).

    ``ff_den``/``ff_nums`` hold the tail with cleared denominators (one
    integer polynomial under everything), which is what reduction actually
    applies — per-term rational arithmetic is deferred to the very end of a
    reduction.
    """

    __slots__ = ("lead", "tail", "origin", "idx", "ff_den", "ff_nums")

    def __init__(self, lead, tail, origin, idx):
        self.lead = lead
        self.tail = tail
        self.origin = origin
        self.idx = idx
        den = _ONE_P
        for c in tail.values():
            if c.den != _ONE_P and den != c.den:
                g = _pgcd(den, c.den)
                den = _pdivexact(_pmul(den, c.den), g)
        self.ff_den = den
        self.ff_nums = {
            w: _pmul(c.num, _pdivexact(den, c.den)) if c.den != den
            else c.num
            for w, c in tail.items()}

    def as_poly(self):
        t = dict(self.tail)
        v = t.get(self.lead)
        t[self.lead] = (v - ONE) if v is not None else -ONE
        return NcPoly({w: -c for w, c in t.items() if c})

    def __repr__(self):
        return f"Rule#{self.idx}({word_name(self.lead)} -> {len(self.tail)} terms)"


def _word_max_index(w):
    m = -1
    for s in w:
        if s >> 20 != FAM_W:
            i = s & (STRIDE - 1)
            if i > m:
                m = i
    return m


def _terms_max_index(terms):
    m = -1
    for w in terms:
        i = _word_max_index(w)
        if i > m:
            m = i
    return m


class RewriteSystem:
    __slots__ = ("pres", "max_len", "max_index", "rules", "overflow_log",
                 "complete_upto", "stats", "_by_first", "_of_by_first",
                 "_of_at", "_lead_set", "_memo", "_frozen", "_automaton")

    def __init__(self, pres, max_len, max_index=None):
        self.pres = pres
        self.max_len = max_len
        self.max_index = max_index
        self.rules = []
        self.overflow_log = []
        self.complete_upto = max_len
        self.stats = {"candidates": 0, "rules_added": 0, "spolys_enqueued": 0,
                      "wall_time": 0.0}
        self._by_first = {}
        self._of_by_first = {}
        self._of_at = {}
        self._lead_set = set()
        self._memo = {}
        self._frozen = False
        self._automaton = None

    # -- structure maintenance ------------------------------------------------

    def _add_rule(self, lead, tail, origin):
        rule = Rule(lead, tail, origin, len(self.rules))
        self.rules.append(rule)
        lst = self._by_first.setdefault(lead[0], [])
        lst.append(rule)
        lst.sort(key=lambda r: -len(r.lead))
        self._lead_set.add(lead)
        self._memo = {}
        self._automaton = None
        self.stats["rules_added"] += 1
        return rule

    def _add_overflow_lead(self, lead):
        lst = self._of_by_first.setdefault(lead[0], [])
        if lead not in lst:
            lst.append(lead)
            lst.sort(key=len, reverse=True)
        self._of_at.setdefault(lead, len(self.rules))
        self._memo = {}

    def _log_overflow(self, kind, lead, detail=""):
        affects = len(lead)
        self.overflow_log.append({
            "kind": kind,
            "lead": word_name(lead),
            "affects_len": affects,
            "at_rules": len(self.rules),
            "detail": detail,
        })
        if affects - 1 < self.complete_upto:
            self.complete_upto = affects - 1

    # -- reduction -------------------------------------------------------------

    def _find_match(self, w, rule_bound=None):
        """Leftmost-longest match: (pos, rule, is_overflow) or None."""
        by_first = self._by_first
        of_first = self._of_by_first
        n = len(w)
        for i in range(n):
            s = w[i]
            best = None
            blen = 0
            lst = by_first.get(s)
            if lst:
                for r in lst:
                    if rule_bound is not None and r.idx >= rule_bound:
                        continue
                    L = len(r.lead)
                    if L > n - i:
                        continue
                    if w[i:i + L] == r.lead:
                        best = r
                        blen = L
                        break
            oflst = of_first.get(s)
            if oflst:
                for lw in oflst:
                    L = len(lw)
                    if L <= blen:
                        break
                    if rule_bound is not None and self._of_at.get(lw, 0) > rule_bound:
                        continue
                    if L <= n - i and w[i:i + L] == lw:
                        return (i, None, True)
            if best is not None:
                return (i, best, False)
        return None

    def _nf_word(self, w, memo, rule_bound=None):
        """Normal form of a single word as a cleared fraction.

        Returns (den, dict word -> integer-poly numerator, overflowed); the
        true coefficient of each word is numerator/den.  Keeping one
        denominator per node turns the inner merge loops into integer
        polynomial adds and multiplies.
        """
        hit = memo.get(w)
        if hit is not None:
            return hit
        stack = [w]
        pending = {}
        while stack:
            cur = stack[-1]
            if cur in memo:
                stack.pop()
                continue
            fr = pending.get(cur)
            if fr is None:
                m = self._find_match(cur, rule_bound)
                if m is None:
                    memo[cur] = (_ONE_P, {cur: _ONE_P}, False)
                    stack.pop()
                    continue
                pos, rule, is_of = m
                if is_of:
                    memo[cur] = (_ONE_P, {cur: _ONE_P}, True)
                    stack.pop()
                    continue
                prefix = cur[:pos]
                suffix = cur[pos + len(rule.lead):]
                children = [prefix + tw + suffix for tw in rule.ff_nums]
                pending[cur] = (rule, children)
                todo = [c for c in children if c not in memo]
                if todo:
                    stack.extend(todo)
                    continue
                fr = pending[cur]
            rule, children = fr
            missing = [c for c in children if c not in memo]
            if missing:
                stack.extend(missing)
                continue
            lcm = _ONE_P
            subs = []
            ov = False
            for child, tnum in zip(children, rule.ff_nums.values()):
                sd, sn, so = memo[child]
                if so:
                    ov = True
                if sn:
                    subs.append((sd, sn, tnum))
                    if sd != _ONE_P and lcm != sd:
                        if lcm == _ONE_P:
                            lcm = sd
                        else:
                            g = _pgcd(lcm, sd)
                            lcm = _pdivexact(_pmul(lcm, sd), g)
            out = {}
            for sd, sn, tnum in subs:
                wt = tnum if sd == lcm else _pmul(
                    tnum, _pdivexact(lcm, sd))
                for w2, n2 in sn.items():
                    nn = _pmul(wt, n2)
                    v = out.get(w2)
                    if v is None:
                        out[w2] = nn
                    else:
                        s = _padd(v, nn)
                        if s:
                            out[w2] = s
                        else:
                            del out[w2]
            den, out = _ff_strip(_pmul(rule.ff_den, lcm), out)
            memo[cur] = (den, out, ov)
            del pending[cur]
            stack.pop()
        return memo[w]

    def reduce_terms(self, terms, memo=None, rule_bound=None):
        """Reduce a dict word -> coeff; returns (dict, overflowed)."""
        if memo is None:
            memo = self._memo if self._frozen else {}
        ov = False
        lcm = _ONE_P
        pieces = []
        for w, c in terms.items():
            sd, sn, so = self._nf_word(w, memo, rule_bound)
            if so:
                ov = True
            if not sn:
                continue
            d = _pmul(c.den, sd) if c.den != _ONE_P else sd
            pieces.append((d, sn, c.num))
            if d != _ONE_P and lcm != d:
                if lcm == _ONE_P:
                    lcm = d
                else:
                    g = _pgcd(lcm, d)
                    lcm = _pdivexact(_pmul(lcm, d), g)
        acc = {}
        for d, sn, cnum in pieces:
            wt = cnum if d == lcm else _pmul(cnum, _pdivexact(lcm, d))
            for w2, n2 in sn.items():
                nn = _pmul(wt, n2)
                v = acc.get(w2)
                if v is None:
                    acc[w2] = nn
                else:
                    s = _padd(v, nn)
                    if s:
                        acc[w2] = s
                    else:
                        del acc[w2]
        out = {w2: RatQ._make(n, lcm) for w2, n in acc.items()}
        return out, ov

    def normal_form(self, p):
        """Reduce an NcPoly; returns (NcPoly, status).

        ``reduced_zero`` is a proof of ideal membership.  ``overflow`` means
        reduction touched a word whose rewriting was blocked by the index
        cutoff — the result is a valid partial reduction but proves nothing.
        ``irreducible_nonzero`` certifies non-membership only when the
        words involved stay within ``complete_upto``.
        """
        terms = p.terms if isinstance(p, NcPoly) else p
        out, ov = self.reduce_terms(terms)
        if ov:
            status = OVERFLOW
        elif not out:
            status = REDUCED_ZERO
        else:
            status = IRREDUCIBLE_NONZERO
        return NcPoly(dict(out)), status

    def reduces_to_zero(self, p):
        return self.normal_form(p)[1] == REDUCED_ZERO

    # -- randomized-strategy reduction (confluence evidence) -------------------

    def normal_form_random_order(self, p, rng):
        """Reduce choosing a random applicable rewrite at each step.

        Returns (NcPoly, overflowed).  Used to corroborate confluence: on the
        certified range the result must match normal_form regardless of rng.
        """
        terms = dict(p.terms if isinstance(p, NcPoly) else p)
        ov = False
        while True:
            options = []
            for w in terms:
                n = len(w)
                for i in range(n):
                    lst = self._by_first.get(w[i])
                    if lst:
                        for r in lst:
                            L = len(r.lead)
                            if L <= n - i and w[i:i + L] == r.lead:
                                options.append((w, i, r))
                    oflst = self._of_by_first.get(w[i])
                    if oflst:
                        for lw in oflst:
                            if lw == w[i:i + len(lw)]:
                                ov = True
            if not options:
                return NcPoly({w: c for w, c in terms.items() if c}), ov
            w, i, r = options[rng.randrange(len(options))]
            c = terms.pop(w)
            prefix, suffix = w[:i], w[i + len(r.lead):]
            for tw, tc in r.tail.items():
                k = prefix + tw + suffix
                v = terms.get(k)
                nv = (v + c * tc) if v is not None else c * tc
                if nv:
                    terms[k] = nv
                elif v is not None:
                    del terms[k]

    # -- irreducible-word counting ---------------------------------------------

    def _build_automaton(self):
        """Aho-Corasick-style DFA over proper prefixes of the rule leads."""
        leads = self._lead_set
        prefixes = {(): 0}
        for lead in sorted(leads, key=deglex_key):
            for j in range(1, len(lead)):
                p = lead[:j]
                if p not in prefixes and p not in leads:
                    prefixes[p] = len(prefixes)
        id_of = prefixes
        states = sorted(id_of, key=id_of.get)
        delta = []
        for p in states:
            row = {}
            for a in self.pres.alphabet:
                w = p + (a,)
                dead = False
                nxt = None
                while True:
                    if w in leads:
                        dead = True
                        break
                    if w in id_of:
                        nxt = id_of[w]
                        break
                    w = w[1:]
                row[a] = None if dead else nxt
            delta.append(row)
        self._automaton = (states, delta)
        return self._automaton

    def pbw_count(self, d):
        """Number of irreducible words of length exactly d.

        Only meaningful (and only allowed) for d <= complete_upto, where
        irreducible words biject with the monomial basis.
        """
        if d > self.complete_upto:
            raise ValueError(
                f"pbw_count({d}) exceeds certified completion bound "
                f"{self.complete_upto}")
        auto = self._automaton or self._build_automaton()
        states, delta = auto
        vec = {0: 1}
        for _ in range(d):
            nxt = {}
            for st, cnt in vec.items():
                row = delta[st]
                for a in self.pres.alphabet:
                    t = row[a]
                    if t is not None:
                        nxt[t] = nxt.get(t, 0) + cnt
            vec = nxt
        return sum(vec.values())

    # -- certificates ------------------------------------------------------------

    def candidate_from_origin(self, origin):
        """Rebuild the unreduced source polynomial of a rule/candidate."""
        kind = origin[0]
        if kind == "relation":
            return dict(self.pres.relations[origin[1]].terms)
        if kind == "overlap":
            _, i, j, k = origin
            r1, r2 = self.rules[i], self.rules[j]
            out = {}
            for tw, tc in r1.tail.items():
                w = tw + r2.lead[k:]
                out[w] = out.get(w, RatQ.from_int(0)) + tc
            for tw, tc in r2.tail.items():
                w = r1.lead[:len(r1.lead) - k] + tw
                out[w] = out.get(w, RatQ.from_int(0)) - tc
            return {w: c for w, c in out.items() if c}
        if kind == "inclusion":
            _, i, j, p = origin
            big, small = self.rules[i], self.rules[j]
            out = dict(big.tail)
            for tw, tc in small.tail.items():
                w = big.lead[:p] + tw + big.lead[p + len(small.lead):]
                v = out.get(w)
                nv = (v - tc) if v is not None else -tc
                if nv:
                    out[w] = nv
                elif v is not None:
                    del out[w]
            return out
        raise ValueError(f"unknown certificate kind {kind!r}")

    def replay_rule(self, idx):
        """Re-derive rule idx from its origin using only earlier rules."""
        rule = self.rules[idx]
        cand = self.candidate_from_origin(rule.origin)
        red, _ = self.reduce_terms(cand, memo={}, rule_bound=idx)
        if not red:
            return False
        lead = max(red, key=deglex_key)
        c = red[lead]
        tail = {w: -(v / c) for w, v in red.items() if w != lead}
        return lead == rule.lead and tail == rule.tail

    def verify_certificates(self):
        return all(self.replay_rule(i) for i in range(len(self.rules)))

    # -- serialization -------------------------------------------------------------

    def dump_state(self):
        """Machine-reversible snapshot: plain ints everywhere.

        Counterpart of :func:`load_state`.  Words are symbol-int lists and
        coefficients are ``[numerator, denominator]`` integer coefficient
        lists, so a dump survives json round-trips exactly.
        """
        def _coeff(c):
            return [list(c.num), list(c.den)]

        def _terms(d):
            return [[list(w), _coeff(c)] for w, c in
                    sorted(d.items(), key=lambda t: deglex_key(t[0]))]

        return {
            "format": 1,
            "presentation": presentation_state(self.pres),
            "max_len": self.max_len,
            "max_index": self.max_index,
            "complete_upto": self.complete_upto,
            "rules": [{"lead": list(r.lead), "tail": _terms(r.tail),
                       "origin": list(r.origin)} for r in self.rules],
            "overflow_leads": [[list(lw), at] for lw, at in
                               sorted(self._of_at.items(),
                                      key=lambda t: deglex_key(t[0]))],
            "overflow_log": self.overflow_log,
            "stats": self.stats,
        }

    def to_json(self):
        rules = []
        for r in self.rules:
            rules.append({
                "lead": word_name(r.lead),
                "tail": [[word_name(w), str(c)]
                         for w, c in sorted(r.tail.items(), key=lambda t: deglex_key(t[0]),
                                            reverse=True)],
                "origin": list(r.origin),
            })
        return json.dumps({
            "presentation": self.pres.name,
            "alphabet": [name_of(s) for s in self.pres.alphabet],
            "max_len": self.max_len,
            "max_index": self.max_index,
            "complete_upto": self.complete_upto,
            "rules": rules,
            "overflow_log": self.overflow_log,
            "stats": self.stats,
        }, indent=2)


def complete(pres, max_len, max_index=None):
    """Run truncated completion; returns a frozen RewriteSystem."""
    t0 = time.monotonic()
    rs = RewriteSystem(pres, max_len, max_index)
    queue = deque(("relation", i) for i in range(len(pres.relations)))
    # one word -> normal-form memo shared across candidates; entries are
    # valid only for the current rule/overflow-lead sets, so it is dropped
    # whenever either grows
    memo = {}
    while queue:
        origin = queue.popleft()
        rs.stats["candidates"] += 1
        cand = rs.candidate_from_origin(origin)
        red, ov = rs.reduce_terms(cand, memo=memo)
        if not red:
            continue
        lead = max(red, key=deglex_key)
        if not lead:
            raise ValueError(
                f"presentation {pres.name!r} is inconsistent: the ideal "
                f"contains the nonzero scalar {red[lead]}")
        if max_index is not None and _terms_max_index(red) > max_index:
            rs._add_overflow_lead(lead)
            rs._log_overflow("index-overflow", lead,
                             detail=f"origin={origin!r}")
            memo = {}
            continue
        if len(lead) > max_len:
            rs._add_overflow_lead(lead)
            rs._log_overflow("length-overflow", lead,
                             detail=f"origin={origin!r}")
            memo = {}
            continue
        if ov:
            # sound to keep (every reduction step stays in the ideal), but
            # confluence at this length is no longer certified
            rs._log_overflow("candidate-touched-overflow", lead,
                             detail=f"origin={origin!r}")
        c = red[lead]
        tail = {w: -(v / c) for w, v in red.items() if w != lead}
        rule = rs._add_rule(lead, tail, origin)
        memo = {}
        # ambiguities of the new rule against every rule so far (incl. itself)
        for other in rs.rules:
            _enqueue_ambiguities(rs, queue, other, rule)
            if other is not rule:
                _enqueue_ambiguities(rs, queue, rule, other)
    rs.stats["wall_time"] = time.monotonic() - t0
    rs._frozen = True
    return rs


def presentation_state(pres):
    """Canonical plain-data form of a presentation (for dumps and hashing)."""
    def _terms(d):
        return [[list(w), [list(c.num), list(c.den)]] for w, c in
                sorted(d.items(), key=lambda t: deglex_key(t[0]))]
    return {
        "name": pres.name,
        "alphabet": [int(s) for s in pres.alphabet],
        "relations": [_terms(r.terms) for r in pres.relations],
    }


def load_state(state, pres):
    """Rebuild a frozen RewriteSystem from :meth:`RewriteSystem.dump_state`.

    ``pres`` must be the presentation the snapshot was taken from: alphabet
    and relations are compared exactly and a mismatch raises ValueError (a
    snapshot can never be applied to relations it was not computed for).
    Every rule's orientation invariant (lead strictly deglex-above the tail)
    is rechecked on load; the derivation certificates stay replayable via
    :meth:`RewriteSystem.verify_certificates`.
    """
    if state.get("format") != 1:
        raise ValueError(f"unknown snapshot format {state.get('format')!r}")
    if state["presentation"] != presentation_state(pres):
        raise ValueError(
            "snapshot presentation does not match the supplied presentation")

    def _terms(lst):
        return {tuple(w): RatQ(tuple(num), tuple(den))
                for w, (num, den) in lst}

    rs = RewriteSystem(pres, state["max_len"], state["max_index"])
    for rd in state["rules"]:
        lead = tuple(rd["lead"])
        tail = _terms(rd["tail"])
        lk = deglex_key(lead)
        for w in tail:
            if not deglex_key(w) < lk:
                raise ValueError(
                    f"snapshot rule {word_name(lead)} is not oriented")
        rs._add_rule(lead, tail, tuple(rd["origin"]))
    for lw, at in state.get("overflow_leads", ()):
        lw = tuple(lw)
        rs._add_overflow_lead(lw)
        rs._of_at[lw] = at
    rs.overflow_log = list(state["overflow_log"])
    rs.complete_upto = state["complete_upto"]
    rs.stats = dict(state["stats"])
    rs._memo = {}
    rs._frozen = True
    return rs


def _enqueue_ambiguities(rs, queue, r1, r2):
    """Overlap/inclusion ambiguities with r1's lead on the left."""
    l1, l2 = r1.lead, r2.lead
    n1, n2 = len(l1), len(l2)
    # proper overlaps: a suffix of l1 equals a prefix of l2
    for k in range(1, min(n1, n2)):
        if n1 + n2 - k > rs.max_len:
            continue
        if l1[n1 - k:] == l2[:k]:
            queue.append(("overlap", r1.idx, r2.idx, k))
            rs.stats["spolys_enqueued"] += 1
    # inclusion: l2 a proper factor of l1 (the longer rule is r1)
    if r1 is not r2 and n2 < n1:
        for p in range(n1 - n2 + 1):
            if l1[p:p + n2] == l2:
                queue.append(("inclusion", r1.idx, r2.idx, p))
                rs.stats["spolys_enqueued"] += 1


# ---------------------------------------------------------------------------
# linear-algebra ideal membership oracle


class MembershipOracle:
    """Row-reduced span of {u * r * v} for all relations r and words u, v
    keeping every product within total length L (and index cutoff).

    Completely independent of the rewrite engine: plain Gaussian elimination
    over Q(q) on the finite-dimensional truncation.  ``member`` is definitive;
    ``not_witnessed`` only reports that the element is not in the truncated
    span (callers decide what that means at their L).
    """

    def __init__(self, relations, alphabet, L, max_index=None,
                 max_rows=200000, time_limit=60.0):
        self.L = L
        self.max_index = max_index
        self.status = "ok"
        self.rows_inserted = 0
        if max_index is not None:
            alphabet = [s for s in alphabet
                        if s >> 20 == FAM_W or (s & (STRIDE - 1)) <= max_index]
        self.alphabet = tuple(sorted(alphabet))
        self._stair = {}
        t0 = time.monotonic()
        rels = []
        for r in relations:
            terms = r.terms if isinstance(r, NcPoly) else r
            if not terms:
                continue
            if max_index is not None and _terms_max_index(terms) > max_index:
                continue
            rels.append(terms)
        done = False
        for pad in range(0, L + 1):
            if done:
                break
            for terms in rels:
                if done:
                    break
                mlen = max(len(w) for w in terms)
                if mlen + pad > L:
                    continue
                for a in range(pad + 1):
                    b = pad - a
                    for u in _words(self.alphabet, a):
                        for v in _words(self.alphabet, b):
                            row = {u + w + v: c for w, c in terms.items()}
                            self._insert(row)
                            self.rows_inserted += 1
                            if (self.rows_inserted >= max_rows
                                    or time.monotonic() - t0 > time_limit):
                                self.status = "aborted"
                                done = True
                                break
                        if done:
                            break
                    if done:
                        break

    def _insert(self, row):
        stair = self._stair
        while row:
            lead = max(row, key=deglex_key)
            piv = stair.get(lead)
            if piv is None:
                c = row[lead]
                if c != ONE:
                    inv = c.inv()
                    row = {w: v * inv for w, v in row.items()}
                stair[lead] = row
                return
            c = row.pop(lead)
            for w, v in piv.items():
                if w == lead:
                    continue
                nv = row.get(w)
                nv = (nv - c * v) if nv is not None else -(c * v)
                if nv:
                    row[w] = nv
                elif w in row:
                    del row[w]

    def test(self, p):
        """Membership of p in the truncated span: dict with status."""
        terms = dict(p.terms if isinstance(p, NcPoly) else p)
        if any(len(w) > self.L for w in terms):
            return {"status": "not_witnessed", "L": self.L,
                    "reason": "element exceeds truncation length"}
        stair = self._stair
        while terms:
            lead = max(terms, key=deglex_key)
            piv = stair.get(lead)
            if piv is None:
                res = {"status": "not_witnessed", "L": self.L,
                       "blocked_at": word_name(lead)}
                if self.status == "aborted":
                    res["status"] = "aborted"
                return res
            c = terms.pop(lead)
            for w, v in piv.items():
                if w == lead:
                    continue
                nv = terms.get(w)
                nv = (nv - c * v) if nv is not None else -(c * v)
                if nv:
                    terms[w] = nv
                elif w in terms:
                    del terms[w]
        return {"status": "member", "L": self.L}

    @property
    def dim(self):
        return len(self._stair)


def _words(alphabet, n):
    if n == 0:
        yield ()
        return
    for w in _words(alphabet, n - 1):
        for a in alphabet:
            yield w + (a,)
