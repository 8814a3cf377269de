"""Buchberger's algorithm and ideal arithmetic.

Ideals in a quotient ring ``R = k[x]/Q`` are handled by always carrying the
basis of ``Q`` along: every basis computed here is a basis of ``A + Q``.

Lengths are "global": ``dim_k R/A``.  They coincide with the local length at
the origin exactly when the origin is the only point of ``V(A)``, which is
what :func:`is_only_origin` checks.
"""

from __future__ import annotations

import heapq
from itertools import combinations_with_replacement
from typing import Iterable, Sequence

from .monomial import INFINITE, minimalize, mono_colon, mono_intersection, mono_product
from .ring import MonomialOrder, Polynomial, Ring, RingError, combinatorial_dimension


class _Elt:
    """A monic basis element: leading monomial plus tail terms ``(P, key, c)``."""

    __slots__ = ("lm", "lmkey", "lmexp", "tail", "sugar", "deg")

    def __init__(self, lm, lmkey, lmexp, tail, sugar, deg):
        self.lm = lm
        self.lmkey = lmkey
        self.lmexp = lmexp
        self.tail = tail
        self.sugar = sugar
        self.deg = deg


class _Engine:
    """Reduction machinery over a growing list of reducers."""

    def __init__(self, ring: Ring):
        self.ring = ring
        self.p = ring.p
        self.neg = ring.negmask
        self.guard = ring.guard
        self.reducers: list[tuple[int, _Elt]] = []
        self._cache: dict[int, object] = {}

    def make_elt(self, terms: list[tuple[int, int, int]], sugar: int) -> _Elt:
        """Build a monic element from descending ``(P, key, c)`` terms."""
        ring = self.ring
        p = self.p
        P0, k0, c0 = terms[0]
        if c0 != 1:
            inv = pow(c0, -1, p)
            tail = [(P, k, c * inv % p) for P, k, c in terms[1:]]
        else:
            tail = terms[1:]
        return _Elt(P0, k0, ring.unpack(P0), tail, sugar, ring.mono_degree(P0))

    def add_reducer(self, g: _Elt) -> None:
        self.reducers.append((g.lm, g))

    def find(self, P: int):
        cache = self._cache
        hit = cache.get(P)
        start = 0
        if hit is not None:
            if type(hit) is not int:
                return hit
            start = hit
        red = self.reducers
        guard = self.guard
        for i in range(start, len(red)):
            lm, g = red[i]
            if not ((P - lm) & guard):
                cache[P] = g
                return g
        cache[P] = len(red)
        return None

    def reduce(self, f: dict[int, int]) -> list[tuple[int, int, int]]:
        """Full normal form of ``f`` (consumed).  Returns descending terms."""
        p = self.p
        neg = self.neg
        heap = [(-(P - ((P & neg) << 1)), P) for P in f]
        heapq.heapify(heap)
        pop = heapq.heappop
        push = heapq.heappush
        find = self.find
        out = []
        while heap:
            nk, P = pop(heap)
            c = f.pop(P, 0)
            if not c:
                continue
            g = find(P)
            if g is None:
                out.append((P, -nk, c))
                continue
            s = P - g.lm
            ks = -nk - g.lmkey
            for u, ku, d in g.tail:
                q = u + s
                old = f.get(q)
                if old is None:
                    f[q] = (-c * d) % p
                    push(heap, (-(ku + ks), q))
                else:
                    v = (old - c * d) % p
                    if v:
                        f[q] = v
                    else:
                        del f[q]
        return out

    def reduce_poly(self, f: Polynomial) -> Polynomial:
        out = self.reduce(dict(f.coeffs))
        return Polynomial(self.ring, {P: c for P, _, c in out})


def _terms_of(ring: Ring, f: Polynomial) -> dict[int, int]:
    return dict(f.coeffs)


def _pack_lcm(ring: Ring, a: tuple, b: tuple) -> int:
    P = 0
    for x, y, vm in zip(a, b, ring.var_mono):
        P += (x if x > y else y) * vm
    return P


def _is_degree_saturated(engine: _Engine, ring: Ring, degree: int) -> bool:
    """True when every monomial of ``degree`` is divisible by a leading monomial."""
    n = ring.nvars
    vm = ring.var_mono
    for combo in combinations_with_replacement(range(n), degree):
        P = 0
        for i in combo:
            P += vm[i]
        if engine.find(P) is None:
            return False
    return True


def _buchberger(ring: Ring, gens: Sequence[Polynomial], base: GroebnerBasis | None = None):
    """Groebner basis of ``(gens) + (base)``.

    Generators and S-pairs are processed together in sugar order, so a
    generator that reduces to zero is redundant given the ones kept before it.
    Returns ``(basis, kept)`` with ``kept`` the indices of non-redundant gens.
    """
    engine = _Engine(ring)
    p = ring.p
    neg = ring.negmask
    guard = ring.guard
    key = ring.key
    mono_degree = ring.mono_degree

    elts: list[_Elt] = []
    active: list[int] = []
    pairs: list[tuple] = []  # heap of (sugar, lcmkey, lcm, i, j)

    homogeneous = all(g.is_homogeneous() for g in gens)
    if base is not None:
        homogeneous = homogeneous and base.homogeneous
        for e in base._elts:
            elts.append(e)
            engine.add_reducer(e)
        active = [i for i in range(len(elts))]

    queue = []
    for idx, g in enumerate(gens):
        if not g:
            continue
        top = max(g.coeffs, key=key)
        queue.append((g.degree(), key(top), idx))
    queue.sort(key=lambda t: (-t[0], t[1], -t[2]))  # pop() yields smallest sugar first

    kept: list[int] = []
    pure_vars = set()
    for e in elts:
        nz = [i for i, x in enumerate(e.lmexp) if x]
        if len(nz) == 1:
            pure_vars.add(nz[0])
    current_degree = -1
    saturated = False

    def insert(h: _Elt) -> None:
        hi = len(elts)
        elts.append(h)
        engine.add_reducer(h)
        hlm, hexp = h.lm, h.lmexp
        hs = h.sugar - h.deg
        # Gebauer-Moeller update
        cands = []
        for gi in active:
            g = elts[gi]
            L = _pack_lcm(ring, g.lmexp, hexp)
            cands.append((gi, L, L == g.lm + hlm))
        chosen = []
        for idx, (gi, L, coprime) in enumerate(cands):
            if coprime:
                chosen.append((gi, L, coprime))
                continue
            redundant = False
            for jdx, (gj, L2, _) in enumerate(cands):
                if jdx != idx and not ((L - L2) & guard):
                    # L2 | L: keep only one representative of equal lcms
                    if L2 != L or jdx < idx:
                        redundant = True
                        break
            if not redundant:
                chosen.append((gi, L, coprime))
        new_pairs = []
        for gi, L, coprime in chosen:
            if coprime:
                continue
            g = elts[gi]
            s = max(g.sugar - g.deg, hs) + mono_degree(L)
            new_pairs.append((s, key(L), L, gi, hi))
        kept_pairs = []
        for pr in pairs:
            L = pr[2]
            if not ((L - hlm) & guard):
                a, b = elts[pr[3]], elts[pr[4]]
                if _pack_lcm(ring, a.lmexp, hexp) != L and _pack_lcm(ring, b.lmexp, hexp) != L:
                    continue
            kept_pairs.append(pr)
        kept_pairs.extend(new_pairs)
        heapq.heapify(kept_pairs)
        pairs[:] = kept_pairs
        active[:] = [gi for gi in active if (elts[gi].lm - hlm) & guard] + [hi]
        nz = [i for i, x in enumerate(hexp) if x]
        if len(nz) == 1:
            pure_vars.add(nz[0])

    while pairs or queue:
        # pairs before generators of equal sugar keeps the kept list minimal
        take_gen = bool(queue) and (not pairs or queue[-1][0] < pairs[0][0])
        sugar = queue[-1][0] if take_gen else pairs[0][0]
        if homogeneous and sugar > current_degree:
            current_degree = sugar
            if len(pure_vars) == ring.nvars and _is_degree_saturated(engine, ring, sugar):
                saturated = True
                break
        if take_gen:
            _, _, idx = queue.pop()
            f = _terms_of(ring, gens[idx])
        else:
            _, _, L, i, j = heapq.heappop(pairs)
            a, b = elts[i], elts[j]
            sa = L - a.lm
            sb = L - b.lm
            f = {}
            for u, _, c in a.tail:
                f[u + sa] = c
            for u, _, c in b.tail:
                q = u + sb
                v = (f.get(q, 0) - c) % p
                if v:
                    f[q] = v
                else:
                    f.pop(q, None)
        out = engine.reduce(f)
        if not out:
            continue
        if take_gen:
            kept.append(idx)
        h = engine.make_elt(out, sugar if not take_gen else gens[idx].degree())
        insert(h)
        if h.deg == 0:
            break  # unit ideal

    # reduced basis from the active elements
    minimal = [elts[i] for i in active]
    if any(e.deg == 0 for e in minimal):
        one = _Elt(0, 0, ring.unpack(0), [], 0, 0)
        return GroebnerBasis._from_elts(ring, [one], homogeneous), kept
    final = []
    for e in minimal:
        tail = engine.reduce({P: c for P, _, c in e.tail}) if e.tail else []
        final.append(_Elt(e.lm, e.lmkey, e.lmexp, tail, e.sugar, e.deg))
    final.sort(key=lambda e: -e.lmkey)
    return GroebnerBasis._from_elts(ring, final, homogeneous), kept


class GroebnerBasis:
    """A reduced Groebner basis of ``A + Q`` for an ideal ``A`` of a ring."""

    def __init__(self, ring: Ring, elements: Sequence[Polynomial]):
        # trusted constructor path goes through _from_elts
        gb, _ = _buchberger(ring, list(elements))
        self.__dict__.update(gb.__dict__)

    @classmethod
    def _from_elts(cls, ring: Ring, elts: list[_Elt], homogeneous: bool) -> GroebnerBasis:
        gb = cls.__new__(cls)
        gb.ring = ring
        gb.order = ring.order
        gb._elts = elts
        gb.homogeneous = homogeneous
        gb._engine = None
        gb.elements = tuple(
            Polynomial(ring, {e.lm: 1, **{P: c for P, _, c in e.tail}}) for e in elts
        )
        return gb

    @property
    def leading_monomials(self) -> tuple[int, ...]:
        return tuple(e.lm for e in self._elts)

    @property
    def staircase(self) -> tuple[tuple[int, ...], ...]:
        """Minimal generators of the initial ideal, as exponent vectors."""
        return tuple(e.lmexp for e in self._elts)

    def is_unit(self) -> bool:
        return any(e.deg == 0 for e in self._elts)

    @property
    def engine(self) -> _Engine:
        if self._engine is None:
            eng = _Engine(self.ring)
            for e in self._elts:
                eng.add_reducer(e)
            self._engine = eng
        return self._engine

    def normal_form(self, f: Polynomial) -> Polynomial:
        _check_ring(self.ring, f.ring)
        return self.engine.reduce_poly(f)

    def contains(self, f: Polynomial) -> bool:
        return not self.normal_form(f)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroebnerBasis):
            return NotImplemented
        return self.ring == other.ring and self.elements == other.elements

    def __hash__(self) -> int:
        return hash(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __repr__(self) -> str:
        return f"GroebnerBasis([{', '.join(map(str, self.elements))}])"

    def s_pairs_reduce_to_zero(self) -> bool:
        """Buchberger criterion, checked naively over all pairs."""
        ring = self.ring
        elems = self.elements
        for i in range(len(elems)):
            for j in range(i + 1, len(elems)):
                f, g = elems[i], elems[j]
                L = ring.mono_lcm(f.lm, g.lm)
                s = f.mul_monomial(L - f.lm) - g.mul_monomial(L - g.lm)
                if self.normal_form(s):
                    return False
        return True

    def is_reduced(self) -> bool:
        ring = self.ring
        lms = self.leading_monomials
        for f in self.elements:
            if f.lc != 1:
                return False
            for P in f.coeffs:
                for L in lms:
                    if L != f.lm and ring.divides(L, P):
                        return False
        return True


def _check_ring(a: Ring, b: Ring) -> None:
    if a is not b and a != b:
        raise RingError("objects belong to different rings")


def groebner_basis_of(ring: Ring, gens: Sequence[Polynomial], base: GroebnerBasis | None = None) -> GroebnerBasis:
    return _buchberger(ring, list(gens), base)[0]


# -- ideals ---------------------------------------------------------------------


class Ideal:
    """A finitely generated ideal of ``ring`` (of ``k[x]/Q`` if quotiented).

    The Groebner basis is computed lazily and cached; ideals are treated as
    immutable.
    """

    def __init__(self, ring: Ring, gens: Iterable[Polynomial | str]):
        polys = []
        for g in gens:
            if isinstance(g, str):
                g = ring.parse(g)
            _check_ring(ring, g.ring)
            if g:
                polys.append(g)
        self.ring = ring
        self.gens = tuple(polys)
        self._gb: GroebnerBasis | None = None
        self._length = None

    @classmethod
    def unit(cls, ring: Ring) -> Ideal:
        return cls(ring, [ring.one()])

    @classmethod
    def maximal(cls, ring: Ring) -> Ideal:
        return cls(ring, ring.gens())

    @property
    def is_monomial(self) -> bool:
        return not self.ring.has_quotient and all(g.is_monomial() for g in self.gens)

    @property
    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.gens)

    def monomial_exps(self) -> tuple[tuple[int, ...], ...]:
        return minimalize(self.ring.unpack(g.lm) for g in self.gens)

    @property
    def gb(self) -> GroebnerBasis:
        if self._gb is None:
            if self.is_monomial:
                self._gb = _monomial_gb(self.ring, self.monomial_exps())
            else:
                self._gb, kept = _buchberger(self.ring, self.gens, self.ring.quotient)
                if len(kept) < len(self.gens):
                    self.gens = tuple(self.gens[i] for i in sorted(kept))
        return self._gb

    def contains(self, f: Polynomial) -> bool:
        return self.gb.contains(f)

    def __contains__(self, f: Polynomial) -> bool:
        return self.contains(f)

    def issubset(self, other: Ideal) -> bool:
        return all(other.contains(g) for g in self.gens)

    def __le__(self, other: Ideal) -> bool:
        return self.issubset(other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ring == other.ring and self.gb == other.gb

    def __hash__(self) -> int:
        return hash(self.gb)

    def __add__(self, other: Ideal) -> Ideal:
        return ideal_sum(self, other)

    def __mul__(self, other: Ideal) -> Ideal:
        return ideal_product(self, other)

    def __pow__(self, k: int) -> Ideal:
        return ideal_power(self, k)

    def __repr__(self) -> str:
        return f"Ideal({', '.join(map(str, self.gens))})"

    def __str__(self) -> str:
        return "(" + ", ".join(map(str, self.gens)) + ")"


def _monomial_gb(ring: Ring, exps: Sequence[tuple[int, ...]]) -> GroebnerBasis:
    elts = []
    for e in exps:
        P = ring.pack(e)
        elts.append(_Elt(P, ring.key(P), tuple(e), [], sum(e), sum(e)))
    if any(e.deg == 0 for e in elts):
        elts = [e for e in elts if e.deg == 0]
    elts.sort(key=lambda e: -e.lmkey)
    return GroebnerBasis._from_elts(ring, elts, True)


def _monomial_ideal(ring: Ring, exps: Iterable[tuple[int, ...]]) -> Ideal:
    exps = minimalize(exps)
    I = Ideal(ring, [ring.monomial(e) for e in exps])
    I._gb = _monomial_gb(ring, exps)
    return I


def ideal_from_gb_extension(ring: Ring, gens: Sequence[Polynomial], contained: Ideal) -> Ideal:
    """The ideal ``(gens) + contained``.

    The basis is grown from ``contained``'s basis, which is much cheaper than
    starting over when ``contained`` is large.
    """
    extra = [g for g in gens if g]
    I = Ideal(ring, extra + list(contained.gens))
    if I.is_monomial:
        return I
    I._gb, _ = _buchberger(ring, extra, contained.gb)
    return I


def groebner_basis(I: Ideal) -> GroebnerBasis:
    return I.gb


def normal_form(f: Polynomial, G: GroebnerBasis | Ideal) -> Polynomial:
    if isinstance(G, Ideal):
        G = G.gb
    return G.normal_form(f)


def ideal_sum(A: Ideal, B: Ideal) -> Ideal:
    _check_ring(A.ring, B.ring)
    if A.is_monomial and B.is_monomial:
        return _monomial_ideal(A.ring, A.monomial_exps() + B.monomial_exps())
    if A._gb is not None or B._gb is not None:
        big, small = (A, B) if A._gb is not None and (B._gb is None or len(A.gb) >= len(B.gb)) else (B, A)
        S = Ideal(A.ring, list(big.gens) + list(small.gens))
        S._gb, _ = _buchberger(A.ring, small.gens, big.gb)
        return S
    return Ideal(A.ring, list(A.gens) + list(B.gens))


def ideal_product(A: Ideal, B: Ideal) -> Ideal:
    _check_ring(A.ring, B.ring)
    ring = A.ring
    if A.is_monomial and B.is_monomial:
        return _monomial_ideal(ring, mono_product(A.monomial_exps(), B.monomial_exps()))
    gens = []
    seen = set()
    for a in A.gens:
        for b in B.gens:
            c = a * b
            if c and c not in seen:
                seen.add(c)
                gens.append(c)
    P = Ideal(ring, gens)
    P.gb  # interreduces the generator list
    return P


def ideal_power(A: Ideal, k: int) -> Ideal:
    if k < 0:
        raise ValueError("negative power")
    if k == 0:
        return Ideal.unit(A.ring)
    result = A
    for _ in range(k - 1):
        result = ideal_product(result, A)
    return result


def ideal_combine(kind: str, A: Ideal, B) -> Ideal:
    """``sum``/``product`` with an ideal ``B`` or ``power`` with an integer ``B``."""
    if kind == "sum":
        return ideal_sum(A, B)
    if kind == "product":
        return ideal_product(A, B)
    if kind == "power":
        return ideal_power(A, int(B))
    raise ValueError(f"unknown combination {kind!r}")


# -- elimination, intersection, colon ------------------------------------------------


def _transfer(f: Polynomial, target: Ring) -> Polynomial:
    src = f.ring
    idx = [src.index.get(v) for v in target.variables]
    for name, i in src.index.items():
        if name not in target.index:
            for P in f.coeffs:
                if src.unpack(P)[i]:
                    raise RingError(f"variable {name} does not exist in the target ring")
    out = {}
    for P, c in f.coeffs.items():
        e = src.unpack(P)
        out[target.pack([e[i] if i is not None else 0 for i in idx])] = c
    return Polynomial(target, out)


def _fresh_name(ring: Ring, stem: str = "t_") -> str:
    name = stem
    k = 0
    while name in ring.index:
        k += 1
        name = f"{stem}{k}"
    return name


def _with_quotient(I: Ideal) -> list[Polynomial]:
    extra = list(I.ring.quotient.elements) if I.ring.quotient is not None else []
    return list(I.gens) + extra


def ideal_eliminate(A: Ideal, keep: Sequence[str]) -> Ideal:
    """Generators of ``(A + Q) ∩ k[keep]``, returned in ``A``'s ring."""
    ring = A.ring
    keep = [v for v in ring.variables if v in set(keep)]
    drop = [v for v in ring.variables if v not in set(keep)]
    if not drop:
        return Ideal(ring, A.gb.elements)
    if not keep:
        gb = A.gb
        return Ideal.unit(ring) if gb.is_unit() else Ideal(ring, [])
    T = Ring(drop + keep, ring.p, MonomialOrder("block", len(drop)))
    gens = [_transfer(g, T) for g in _with_quotient(A)]
    gb = groebner_basis_of(T, gens)
    k = len(drop)
    out = [g for g in gb.elements if all(not any(T.unpack(P)[:k]) for P in g.coeffs)]
    return Ideal(ring, [_transfer(g, ring) for g in out])


def _exact_divide(f: Polynomial, b: Polynomial) -> Polynomial:
    ring = f.ring
    p = ring.p
    inv = pow(b.lc, -1, p)
    blm = b.lm
    q: dict[int, int] = {}
    r = f
    while r:
        lm = r.lm
        if not ring.divides(blm, lm):
            raise ArithmeticError("division is not exact")
        m = lm - blm
        c = r.lc * inv % p
        q[m] = c
        r = r - b.mul_monomial(m, c)
    return Polynomial(ring, q)


def _intersect_polys(ring: Ring, A: list[Polynomial], B: list[Polynomial]) -> list[Polynomial]:
    """Generators of ``(A) ∩ (B)`` in ``k[x]`` (no quotient) via a tag variable."""
    t = _fresh_name(ring)
    T = Ring((t,) + ring.variables, ring.p, MonomialOrder("block", 1))
    tv = T.var(t)
    gens = [tv * _transfer(a, T) for a in A] + [(1 - tv) * _transfer(b, T) for b in B]
    gb = groebner_basis_of(T, gens)
    return [_transfer(g, ring) for g in gb.elements if all(T.unpack(P)[0] == 0 for P in g.coeffs)]


def ideal_intersection(A: Ideal, B: Ideal) -> Ideal:
    _check_ring(A.ring, B.ring)
    if A.is_monomial and B.is_monomial:
        return _monomial_ideal(A.ring, mono_intersection(A.monomial_exps(), B.monomial_exps()))
    gens = _intersect_polys(A.ring, _with_quotient(A), _with_quotient(B))
    return _trim(Ideal(A.ring, gens))


def _colon_element(A: Ideal, b: Polynomial) -> Ideal:
    ring = A.ring
    if A.contains(b):
        return Ideal.unit(ring)
    gens = _intersect_polys(ring, _with_quotient(A), [b])
    return Ideal(ring, [_exact_divide(g, b) for g in gens])


def _trim(I: Ideal) -> Ideal:
    """Drop generators lying in the ideal of the others."""
    I.gb
    gens = list(I.gens)
    if len(gens) > 24:
        return I
    gens.sort(key=lambda g: (-g.degree(), -len(g)))
    i = 0
    while i < len(gens) and len(gens) > 1:
        rest = gens[:i] + gens[i + 1:]
        if Ideal(I.ring, rest).contains(gens[i]):
            gens = rest
        else:
            i += 1
    out = Ideal(I.ring, sorted(gens, key=lambda g: -I.ring.key(g.lm)))
    out._gb = I.gb
    return out


def ideal_colon(A: Ideal, B: Ideal) -> Ideal:
    """``(A : B) = {f : f B ⊆ A}``, intersecting the colons by each generator."""
    _check_ring(A.ring, B.ring)
    ring = A.ring
    if A.is_monomial and B.is_monomial:
        return _monomial_ideal(ring, mono_colon(A.monomial_exps(), B.monomial_exps()))
    result = None
    for b in B.gens:
        part = _colon_element(A, b)
        if result is None or part.issubset(result):
            result = part
        elif not result.issubset(part):
            result = ideal_intersection(result, part)
    if result is None:
        return Ideal.unit(ring)
    return _trim(result)


# -- numeric queries -----------------------------------------------------------------


def count_standard_monomials(nvars: int, lead: Sequence[Sequence[int]]) -> int | float:
    """Monomials outside the monomial ideal generated by ``lead``."""
    lead = [tuple(g) for g in lead]
    if any(sum(g) == 0 for g in lead):
        return 0
    for i in range(nvars):
        if not any(g[i] and sum(g) == g[i] for g in lead):
            return INFINITE
    return _count(nvars, lead)


def _count(n: int, lead: list[tuple[int, ...]]) -> int:
    if n == 1:
        return min(g[0] for g in lead)
    if any(sum(g) == 0 for g in lead):
        return 0
    # slice on the last variable; the slice ideal only changes at these levels
    levels = sorted({g[-1] for g in lead})
    bound = min(g[-1] for g in lead if sum(g) == g[-1])
    total = 0
    for idx, a in enumerate(levels):
        if a >= bound:
            break
        nxt = levels[idx + 1] if idx + 1 < len(levels) else bound
        nxt = min(nxt, bound)
        sl = minimalize(g[:-1] for g in lead if g[-1] <= a)
        total += (nxt - a) * _count(n - 1, list(sl))
    return total


def length_of_quotient(A: Ideal) -> int | float:
    """``dim_k R/A`` by staircase counting, or ``INFINITE``."""
    if A._length is None:
        A._length = count_standard_monomials(A.ring.nvars, A.gb.staircase)
    return A._length


def krull_dim(A: Ideal) -> int:
    """Krull dimension of ``R/A`` (-1 for the unit ideal)."""
    return combinatorial_dimension(A.ring.nvars, A.gb.staircase)


def maximal_times(A: Ideal, contained: Ideal | None = None) -> Ideal:
    """``m*A``; ``contained`` is an ideal known to lie inside ``m*A``."""
    ring = A.ring
    if A.is_monomial:
        return ideal_product(Ideal.maximal(ring), A)
    gens = []
    seen = set()
    for g in A.gens:
        for x in ring.gens():
            h = g * x
            if h not in seen:
                seen.add(h)
                gens.append(h)
    if contained is not None:
        return ideal_from_gb_extension(ring, gens, contained)
    return Ideal(ring, gens)


def in_maximal_ideal(A: Ideal) -> bool:
    return all(g.constant_term() == 0 for g in A.gens)


def min_gens(A: Ideal) -> int:
    """``mu(A) = lambda(R/mA) - lambda(R/A)`` for ideals inside ``m``."""
    if not in_maximal_ideal(A):
        raise ValueError("ideal is not contained in the maximal ideal")
    if A.is_monomial:
        return len(A.monomial_exps())
    la = length_of_quotient(A)
    lm = length_of_quotient(maximal_times(A))
    if la == INFINITE or lm == INFINITE:
        raise ValueError("minimal generator count needs an ideal of finite colength")
    return int(lm - la)


def is_only_origin(A: Ideal) -> bool:
    """Finite colength and every variable acts nilpotently on ``R/A``."""
    L = length_of_quotient(A)
    if L == INFINITE:
        return False
    if L == 0:
        return True
    if A.is_monomial:
        return True
    ring = A.ring
    for i in range(ring.nvars):
        e = [0] * ring.nvars
        e[i] = int(L)
        if A.gb.normal_form(ring.monomial(e)):
            return False
    return True
