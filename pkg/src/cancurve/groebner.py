"""Groebner bases for ideals and free modules over F_p.

Engine elements are lists of terms (key, component, exponents, coeff)
sorted by strictly decreasing key.  Keys come from an EngineOrder and are
additive: multiplying by a monomial shifts a fixed slice of the key by the
monomial's key vector, so products never re-derive keys from scratch.

Syzygy levels use the order induced by the leads of the previous level.
Under that order the pair syzygies of a basis form a basis of the syzygy
module, so repeated syzygy steps need no completion.
"""

from __future__ import annotations

import heapq

from .poly import Monomial, Polynomial, Ring, m_div, m_lcm, m_mul

Term = tuple  # (key, comp, expo, coeff)
Element = list


class EngineOrder:
    """Total order on module monomials x^e * basis[comp], additive in e.

    key(comp, e) = head[comp] + (keyfn(e) + addvec[comp]) + tail[comp].
    The middle slice starts at `off` and has length `L`; multiplication by
    x^m adds keyfn(m) to that slice only.
    """

    __slots__ = ("keyfn", "L", "off", "heads", "addvecs", "tails")

    def __init__(self, keyfn, L, off, heads, addvecs, tails):
        self.keyfn = keyfn
        self.L = L
        self.off = off
        self.heads = heads
        self.addvecs = addvecs
        self.tails = tails

    @property
    def rank(self) -> int:
        return len(self.addvecs)

    @classmethod
    def term_over_position(cls, keyfn, nvars: int, rank: int) -> "EngineOrder":
        L = len(keyfn((0,) * nvars))
        zero = (0,) * L
        return cls(
            keyfn,
            L,
            0,
            ((),) * rank,
            (zero,) * rank,
            tuple((-c,) for c in range(rank)),
        )

    @classmethod
    def position_over_term(cls, keyfn, nvars: int, rank: int) -> "EngineOrder":
        L = len(keyfn((0,) * nvars))
        zero = (0,) * L
        return cls(
            keyfn,
            L,
            1,
            tuple((-c,) for c in range(rank)),
            (zero,) * rank,
            ((),) * rank,
        )

    def key(self, comp: int, expo: Monomial):
        core = tuple(a + b for a, b in zip(self.keyfn(expo), self.addvecs[comp]))
        return self.heads[comp] + core + self.tails[comp]

    def mul_key(self, key, kvec):
        off = self.off
        end = off + self.L
        return (
            key[:off]
            + tuple(a + b for a, b in zip(key[off:end], kvec))
            + key[end:]
        )

    def schreyer(self, leads: list[tuple[int, Monomial]]) -> "EngineOrder":
        """Order induced on a free module mapping basis i onto lead i."""
        heads, addvecs, tails = [], [], []
        for i, (c, e) in enumerate(leads):
            heads.append(self.heads[c])
            addvecs.append(
                tuple(a + b for a, b in zip(self.keyfn(e), self.addvecs[c]))
            )
            tails.append(self.tails[c] + (-i,))
        return EngineOrder(
            self.keyfn, self.L, self.off, tuple(heads), tuple(addvecs), tuple(tails)
        )


# -- element arithmetic --------------------------------------------------------


def element_from_poly(f: Polynomial, order: EngineOrder, comp: int = 0) -> Element:
    out = [(order.key(comp, e), comp, e, c) for e, c in f.terms.items()]
    out.sort(reverse=True)
    return out


def element_to_polys(el: Element, ring: Ring, rank: int) -> list[Polynomial]:
    buckets: list[dict] = [{} for _ in range(rank)]
    for _, c, e, v in el:
        buckets[c][e] = v
    return [Polynomial(ring, b) for b in buckets]


def e_add(a: Element, b: Element, p: int) -> Element:
    out = []
    i = j = 0
    na, nb = len(a), len(b)
    while i < na and j < nb:
        ka, kb = a[i][0], b[j][0]
        if ka > kb:
            out.append(a[i])
            i += 1
        elif kb > ka:
            out.append(b[j])
            j += 1
        else:
            c = (a[i][3] + b[j][3]) % p
            if c:
                out.append((ka, a[i][1], a[i][2], c))
            i += 1
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return out

def e_scale(a: Element, c: int, p: int) -> Element:
    c %= p
    if c == 0:
        return []
    if c == 1:
        return list(a)
    return [(k, comp, e, v * c % p) for k, comp, e, v in a]


def e_mono_mul(a: Element, expo: Monomial, coeff: int, order: EngineOrder, p: int) -> Element:
    coeff %= p
    if coeff == 0 or not a:
        return []
    kvec = order.keyfn(expo)
    return [
        (order.mul_key(k, kvec), comp, m_mul(e, expo), v * coeff % p)
        for k, comp, e, v in a
    ]


def e_poly_mul(a: Element, f: Polynomial, order: EngineOrder, p: int) -> Element:
    out: Element = []
    for e, c in sorted(f.terms.items()):
        out = e_add(out, e_mono_mul(a, e, c, order, p), p)
    return out


# -- division -------------------------------------------------------------------


class DivisorSet:
    """A fixed family of nonzero elements indexed for lead-divisibility tests."""

    def __init__(self, elements: list[Element]):
        self.elements: list[Element] = []
        self.by_comp: dict[int, list[tuple[Monomial, int]]] = {}
        for g in elements:
            self.append(g)

    def append(self, g: Element):
        i = len(self.elements)
        self.elements.append(g)
        _, c, e, _ = g[0]
        self.by_comp.setdefault(c, []).append((e, i))


def divide(
    f: Element,
    divs: DivisorSet,
    order: EngineOrder,
    p: int,
    want_quotients: bool = False,
):
    """Normal form of f, scanning divisors in index order at each step.

    Returns (remainder, quotients); quotients[i] lists (expo, coeff) with
    f = sum quotients[i] * g_i + remainder.
    """
    rem: Element = []  # filled largest-first: each append is the current max
    work = list(reversed(f))  # ascending, lead at the end
    quot = [[] for _ in divs.elements] if want_quotients else None
    while work:
        key, c, e, coeff = work[-1]
        hit = -1
        for de, i in divs.by_comp.get(c, ()):
            q = m_div(e, de)
            if q is not None:
                hit = i
                break
        if hit < 0:
            rem.append(work.pop())
            continue
        g = divs.elements[hit]
        factor = coeff * pow(g[0][3], p - 2, p) % p
        if quot is not None:
            quot[hit].append((q, factor))
        kvec = order.keyfn(q)
        neg = p - factor
        sub = [
            (order.mul_key(k2, kvec), c2, m_mul(e2, q), v * neg % p)
            for k2, c2, e2, v in g
        ]
        work = _merge_ascending(work, sub, p)
    return rem, quot


def _merge_ascending(work: Element, sub_desc: Element, p: int) -> Element:
    out = []
    i = len(work) - 1
    j = 0
    nb = len(sub_desc)
    while i >= 0 and j < nb:
        ka, kb = work[i][0], sub_desc[j][0]
        if ka > kb:
            out.append(work[i])
            i -= 1
        elif kb > ka:
            out.append(sub_desc[j])
            j += 1
        else:
            c = (work[i][3] + sub_desc[j][3]) % p
            if c:
                out.append((ka, work[i][1], work[i][2], c))
            i -= 1
            j += 1
    while i >= 0:
        out.append(work[i])
        i -= 1
    out.extend(sub_desc[j:])
    out.reverse()
    return out


# -- Buchberger ------------------------------------------------------------------


def buchberger(gens: list[Element], order: EngineOrder, p: int) -> list[Element]:
    """Reduced basis of the module generated by gens, sorted lead-descending."""
    basis: list[Element] = []
    divs = DivisorSet([])
    for g in gens:
        if g:
            basis.append(e_scale(g, pow(g[0][3], p - 2, p), p))
            divs.append(basis[-1])
    rank1 = order.rank == 1
    done: set[tuple[int, int]] = set()
    heap: list = []
    for j in range(len(basis)):
        _push_pairs(basis, j, order, heap)
    while heap:
        _, i, j = heapq.heappop(heap)
        if (i, j) in done:
            continue
        done.add((i, j))
        ci, ai = basis[i][0][1], basis[i][0][2]
        aj = basis[j][0][2]
        lcm = m_lcm(ai, aj)
        if rank1 and lcm == m_mul(ai, aj):
            continue
        if _chain_skip(basis, i, j, ci, lcm, done):
            continue
        s = e_add(
            e_mono_mul(basis[i], m_div(lcm, ai), 1, order, p),
            e_mono_mul(basis[j], m_div(lcm, aj), p - 1, order, p),
            p,
        )
        rem, _ = divide(s, divs, order, p)
        if rem:
            rem = e_scale(rem, pow(rem[0][3], p - 2, p), p)
            basis.append(rem)
            divs.append(rem)
            _push_pairs(basis, len(basis) - 1, order, heap)
    return _interreduce(basis, order, p)


def _push_pairs(basis, j, order, heap):
    cj, aj = basis[j][0][1], basis[j][0][2]
    for i in range(j):
        ci, ai = basis[i][0][1], basis[i][0][2]
        if ci == cj:
            lcm = m_lcm(ai, aj)
            heapq.heappush(heap, (order.key(ci, lcm), i, j))


def _chain_skip(basis, i, j, comp, lcm, done) -> bool:
    for k in range(len(basis)):
        if k == i or k == j:
            continue
        kc, ke = basis[k][0][1], basis[k][0][2]
        if kc != comp or m_div(lcm, ke) is None:
            continue
        pik = (min(i, k), max(i, k))
        pjk = (min(j, k), max(j, k))
        if pik in done and pjk in done:
            return True
    return False


def _interreduce(basis: list[Element], order: EngineOrder, p: int) -> list[Element]:
    order_idx = sorted(range(len(basis)), key=lambda i: basis[i][0][0])
    kept: list[Element] = []
    for i in order_idx:
        _, c, e, _ = basis[i][0]
        redundant = any(
            g[0][1] == c and m_div(e, g[0][2]) is not None for g in kept
        )
        if not redundant:
            kept.append(basis[i])
    final: list[Element] = []
    for i, g in enumerate(kept):
        others = DivisorSet([h for j, h in enumerate(kept) if j != i])
        rem, _ = divide(g, others, order, p)
        if rem:
            final.append(e_scale(rem, pow(rem[0][3], p - 2, p), p))
        kept[i] = final[-1] if rem else g
    final.sort(key=lambda g: g[0][0], reverse=True)
    return final


# -- Schreyer syzygies ------------------------------------------------------------


def syzygies(
    gb: list[Element], order: EngineOrder, p: int
) -> tuple[list[Element], EngineOrder]:
    """Basis of the syzygy module of a basis, under the induced order.

    gb must be a basis under `order` (every pair element reduces to zero),
    sorted by decreasing lead key; syzygy components index into that list.
    The result is itself a basis for the returned order.
    """
    els = gb
    for a, b in zip(els, els[1:]):
        if a[0][0] < b[0][0]:
            raise ValueError("syzygies expects lead-descending input")
    leads = [(g[0][1], g[0][2]) for g in els]
    new_order = order.schreyer(leads)
    divs = DivisorSet(els)
    out: list[Element] = []
    for i, gi in enumerate(els):
        ci, ai = leads[i]
        witness: dict[Monomial, int] = {}
        for j in range(i + 1, len(els)):
            cj, aj = leads[j]
            if cj != ci:
                continue
            m = m_div(m_lcm(ai, aj), ai)
            if m not in witness:
                witness[m] = j
        for m in _minimal_monomials(witness, order.keyfn):
            j = witness[m]
            lcm = m_mul(m, ai)
            mj = m_div(lcm, leads[j][1])
            s = e_add(
                e_mono_mul(gi, m, 1, order, p),
                e_mono_mul(els[j], mj, p - 1, order, p),
                p,
            )
            rem, quot = divide(s, divs, order, p, want_quotients=True)
            if rem:
                raise ArithmeticError("input to syzygies was not a basis")
            acc: dict[tuple[int, Monomial], int] = {(i, m): 1, (j, mj): p - 1}
            for k, terms in enumerate(quot):
                for e, c in terms:
                    key = (k, e)
                    acc[key] = (acc.get(key, 0) - c) % p
            syz = [
                (new_order.key(c2, e2), c2, e2, v)
                for (c2, e2), v in acc.items()
                if v
            ]
            syz.sort(reverse=True)
            if syz[0][1] != i or syz[0][2] != m:
                raise ArithmeticError("syzygy lead disagrees with its frame slot")
            out.append(syz)
    return out, new_order


def _minimal_monomials(monos, keyfn) -> list[Monomial]:
    ms = sorted(monos, key=keyfn)
    out: list[Monomial] = []
    for m in ms:
        if not any(m_div(m, q) is not None for q in out):
            out.append(m)
    return out


# -- public ideal interface --------------------------------------------------------


class GroebnerBasis:
    """Reduced Groebner basis of an ideal in a polynomial ring.

    order: "grevlex", "lex", or "block" (with `front` leading variables
    forming the elimination block).
    """

    def __init__(self, ring: Ring, polys: list[Polynomial], order: str = "grevlex", front: int | None = None):
        from .poly import BlockOrder, LexOrder

        self.ring = ring
        if order == "grevlex":
            keyfn = ring.grevlex.key
        elif order == "lex":
            keyfn = LexOrder(ring).key
        elif order == "block":
            keyfn = BlockOrder(ring, front).key
        else:
            raise ValueError(f"unknown order {order!r}")
        self.order_name = order
        self.base_order = EngineOrder.term_over_position(keyfn, ring.nvars, 1)
        gens = [element_from_poly(f, self.base_order) for f in polys if f]
        self.elements = buchberger(gens, self.base_order, ring.p)
        self._divs = DivisorSet(self.elements)

    @property
    def polynomials(self) -> list[Polynomial]:
        return [
            element_to_polys(g, self.ring, 1)[0] for g in self.elements
        ]

    def lead_monomials(self) -> list[Monomial]:
        return [g[0][2] for g in self.elements]

    def normal_form(self, f: Polynomial) -> Polynomial:
        el = element_from_poly(f, self.base_order)
        rem, _ = divide(el, self._divs, self.base_order, self.ring.p)
        return element_to_polys(rem, self.ring, 1)[0]

    def contains(self, f: Polynomial) -> bool:
        return not self.normal_form(f)

    def standard_monomial_count(self, degree: int) -> int:
        """Dimension of (ring/ideal) in one degree, for the plain grading."""
        leads = self.lead_monomials()
        count = 0
        for m in self.ring.monomials_of_degree(degree):
            if not any(m_div(m, q) is not None for q in leads):
                count += 1
        return count


def eliminate(ring: Ring, polys: list[Polynomial], front: int) -> list[Polynomial]:
    """Generators of the ideal's intersection with the back-variable subring."""
    if front == 0:
        return GroebnerBasis(ring, polys).polynomials
    gb = GroebnerBasis(ring, polys, order="block", front=front)
    out = []
    for f in gb.polynomials:
        if all(all(e == 0 for e in m[:front]) for m in f.terms):
            out.append(f)
    return out


# -- kernels of module maps ---------------------------------------------------------


def kernel_of_columns(
    columns: list[dict[int, Polynomial]], rank: int, ring: Ring
) -> list[dict[int, Polynomial]]:
    """Generators of the syzygy module of the given columns of R^rank.

    Columns are sparse comp -> coefficient maps.  Used by the stepwise
    resolution mode, where matrices stop being bases after pruning.
    """
    p = ring.p
    keyfn = ring.grevlex.key
    order = EngineOrder.term_over_position(keyfn, ring.nvars, max(rank, 1))
    gens: list[Element] = []
    for col in columns:
        el: Element = []
        for comp, f in col.items():
            for e, c in f.terms.items():
                el.append((order.key(comp, e), comp, e, c))
        el.sort(reverse=True)
        gens.append(el)
    nonzero = [(i, g) for i, g in enumerate(gens) if g]
    if not nonzero:
        return [
            {i: ring.one()} for i in range(len(gens))
        ]
    basis: list[Element] = []
    history: list[dict[int, Polynomial]] = []
    divs = DivisorSet([])
    for i, g in nonzero:
        inv = pow(g[0][3], p - 2, p)
        basis.append(e_scale(g, inv, p))
        history.append({i: ring.constant(inv)})
        divs.append(basis[-1])
    done: set[tuple[int, int]] = set()
    heap: list = []
    for j in range(len(basis)):
        _push_pairs(basis, j, order, heap)
    while heap:
        _, i, j = heapq.heappop(heap)
        if (i, j) in done:
            continue
        done.add((i, j))
        ai = basis[i][0][2]
        aj = basis[j][0][2]
        lcm = m_lcm(ai, aj)
        s = e_add(
            e_mono_mul(basis[i], m_div(lcm, ai), 1, order, p),
            e_mono_mul(basis[j], m_div(lcm, aj), p - 1, order, p),
            p,
        )
        rem, quot = divide(s, divs, order, p, want_quotients=True)
        hist = _hist_combine(
            ring,
            [
                (history[i], m_div(lcm, ai), 1),
                (history[j], m_div(lcm, aj), p - 1),
            ]
            + [
                (history[k], e, p - c)
                for k, terms in enumerate(quot)
                for e, c in terms
            ],
        )
        if rem:
            inv = pow(rem[0][3], p - 2, p)
            basis.append(e_scale(rem, inv, p))
            history.append(_hist_scale(hist, inv, ring))
            divs.append(basis[-1])
            _push_pairs(basis, len(basis) - 1, order, heap)
    by_lead = sorted(range(len(basis)), key=lambda i: basis[i][0][0], reverse=True)
    sorted_basis = [basis[i] for i in by_lead]
    sorted_history = [history[i] for i in by_lead]
    syz_basis, _ = syzygies(sorted_basis, order, p)
    out: list[dict[int, Polynomial]] = []
    for s in syz_basis:
        combo = _hist_combine(
            ring,
            [(sorted_history[c], e, v) for _, c, e, v in s],
        )
        if combo:
            out.append(combo)
    # completions from rewriting the original columns through the basis
    express: list[dict[int, Polynomial]] = []
    for i, g in enumerate(gens):
        if not g:
            express.append({})
            continue
        rem, quot = divide(g, divs, order, p, want_quotients=True)
        if rem:
            raise ArithmeticError("column failed to reduce against its own basis")
        row: dict[int, Polynomial] = {}
        for k, terms in enumerate(quot):
            if terms:
                row[k] = ring.from_terms({e: c for e, c in terms})
        express.append(row)
    for i in range(len(gens)):
        combo: dict[int, Polynomial] = {i: ring.one()}
        for k, fk in express[i].items():
            for tgt, coef in history[k].items():
                cur = combo.get(tgt, ring.zero()) - fk * coef
                if cur:
                    combo[tgt] = cur
                elif tgt in combo:
                    del combo[tgt]
        combo = {c: f for c, f in combo.items() if f}
        if combo:
            out.append(combo)
    return out


def _hist_combine(ring: Ring, parts) -> dict[int, Polynomial]:
    acc: dict[int, Polynomial] = {}
    for hist, expo, coeff in parts:
        if not hist:
            continue
        mono = ring.monomial(expo, coeff)
        for comp, f in hist.items():
            cur = acc.get(comp, ring.zero()) + mono * f
            if cur:
                acc[comp] = cur
            elif comp in acc:
                del acc[comp]
    return acc


def _hist_scale(hist: dict[int, Polynomial], c: int, ring: Ring) -> dict[int, Polynomial]:
    return {comp: f.scale(c) for comp, f in hist.items()}
