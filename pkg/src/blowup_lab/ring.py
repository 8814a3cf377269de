"""Polynomial rings over prime fields with packed monomials.

A monomial is stored as one Python int holding its exponent fields (plus
one total-degree field per order block).  Every field is ``FIELD_BITS``
wide and the top bit of each field is kept clear, so

* multiplication of monomials is integer addition,
* ``a | b`` iff ``(b - a) & guard == 0``,
* the order key ``P - 2*(P & negmask)`` is additive and compares like the
  monomial order (degrevlex fields are stored negated in the key).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .parser import parse_polynomial

FIELD_BITS = 16
FIELD_MASK = (1 << FIELD_BITS) - 1
MAX_EXPONENT = (1 << (FIELD_BITS - 1)) - 1
DEFAULT_PRIME = 32003

ORDER_KINDS = ("degrevlex", "lex", "block")


class RingError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:  # deterministic for n < 3.3e24
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class PrimeField:
    p: int = DEFAULT_PRIME

    def __post_init__(self):
        if not is_prime(self.p):
            raise RingError(f"characteristic {self.p} is not prime")
        if self.p >= 1 << 31:
            raise RingError("prime must be below 2^31 so products fit in 62 bits")

    def inv(self, a: int) -> int:
        return pow(a, -1, self.p)


@dataclass(frozen=True)
class MonomialOrder:
    """``degrevlex``, ``lex``, or ``block`` (degrevlex on the first ``split``
    variables, ties broken by degrevlex on the rest); the block order
    eliminates the first ``split`` variables."""

    kind: str = "degrevlex"
    split: int = 0

    def __post_init__(self):
        if self.kind not in ORDER_KINDS:
            raise RingError(f"unknown monomial order {self.kind!r}")
        if self.kind != "block" and self.split:
            raise RingError("split index only applies to block orders")

    def __str__(self) -> str:
        return f"block({self.split})" if self.kind == "block" else self.kind

    @classmethod
    def parse(cls, text: str) -> MonomialOrder:
        text = text.strip()
        if text.startswith("block(") and text.endswith(")"):
            return cls("block", int(text[6:-1]))
        return cls(text)


class Ring:
    """A polynomial ring ``F_p[vars]``, optionally modulo a quotient ideal.

    Build instances with :func:`make_ring`; the constructor alone does not
    compute the quotient basis or the dimension.
    """

    def __init__(self, variables: Sequence[str], p: int = DEFAULT_PRIME, order: MonomialOrder | str = "degrevlex"):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise RingError(f"duplicate variable names in {variables}")
        for v in variables:
            if not v.isidentifier():
                raise RingError(f"invalid variable name {v!r}")
        if isinstance(order, str):
            order = MonomialOrder.parse(order)
        if order.kind == "block" and not 0 < order.split < len(variables):
            raise RingError("block split must leave both blocks non-empty")
        self.variables = variables
        self.nvars = len(variables)
        self.field = PrimeField(p)
        self.p = self.field.p
        self.order = order
        self.index = {v: i for i, v in enumerate(variables)}
        self.quotient = None  # GroebnerBasis of Q, set by make_ring
        self.quotient_gens: tuple[str, ...] = ()
        self._dim: int | None = None
        self._layout()

    # -- layout -------------------------------------------------------------

    def _layout(self) -> None:
        n = self.nvars
        # fields listed from most to least significant
        if self.order.kind == "degrevlex":
            blocks = [list(range(n))]
        elif self.order.kind == "block":
            k = self.order.split
            blocks = [list(range(k)), list(range(k, n))]
        else:
            blocks = None
        fields: list[tuple[str, object]] = []
        if blocks is None:
            fields = [("exp", i) for i in range(n)] + [("deg", 0)]
            deg_of_var = [0] * n
        else:
            deg_of_var = [0] * n
            for b, block in enumerate(blocks):
                fields.append(("deg", b))
                for i in reversed(block):
                    fields.append(("exp", i))
                    deg_of_var[i] = b
        nf = len(fields)
        shift_exp = [0] * n
        shift_deg = {}
        neg = 0
        for pos, (kind, what) in enumerate(fields):
            shift = FIELD_BITS * (nf - 1 - pos)
            if kind == "exp":
                shift_exp[what] = shift
                if blocks is not None:
                    neg |= FIELD_MASK << shift
            else:
                shift_deg[what] = shift
        self._shift_exp = shift_exp
        self._deg_shifts = tuple(shift_deg.values())
        self.negmask = neg
        self.guard = sum(1 << (FIELD_BITS * j + FIELD_BITS - 1) for j in range(nf))
        self.var_mono = tuple((1 << shift_exp[i]) + (1 << shift_deg[deg_of_var[i]]) for i in range(n))

    # -- monomials ------------------------------------------------------------

    def pack(self, exps: Sequence[int]) -> int:
        if len(exps) != self.nvars:
            raise RingError(f"exponent vector {tuple(exps)} has wrong length for {self.nvars} variables")
        P = 0
        for e, vm in zip(exps, self.var_mono):
            if e < 0 or e > MAX_EXPONENT:
                raise RingError(f"exponent {e} out of range")
            P += e * vm
        return P

    def unpack(self, P: int) -> tuple[int, ...]:
        return tuple((P >> s) & FIELD_MASK for s in self._shift_exp)

    def key(self, P: int) -> int:
        return P - ((P & self.negmask) << 1)

    def mono_degree(self, P: int) -> int:
        return sum((P >> s) & FIELD_MASK for s in self._deg_shifts)

    def divides(self, a: int, b: int) -> bool:
        return not ((b - a) & self.guard)

    def mono_lcm(self, a: int, b: int) -> int:
        return self.pack([max(x, y) for x, y in zip(self.unpack(a), self.unpack(b))])

    # -- polynomials -------------------------------------------------------------

    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    def one(self) -> Polynomial:
        return Polynomial(self, {0: 1})

    def constant(self, c: int) -> Polynomial:
        c %= self.p
        return Polynomial(self, {0: c} if c else {})

    def var(self, name: str) -> Polynomial:
        return Polynomial(self, {self.var_mono[self.index[name]]: 1})

    def gens(self) -> list[Polynomial]:
        return [self.var(v) for v in self.variables]

    def monomial(self, exps: Sequence[int], coeff: int = 1) -> Polynomial:
        coeff %= self.p
        return Polynomial(self, {self.pack(exps): coeff} if coeff else {})

    def from_terms(self, terms: Iterable[tuple[Sequence[int], int]]) -> Polynomial:
        d: dict[int, int] = {}
        p = self.p
        for exps, c in terms:
            P = self.pack(exps)
            d[P] = (d.get(P, 0) + c) % p
        return Polynomial(self, {P: c for P, c in d.items() if c})

    def parse(self, text: str, line: int = 1, column_offset: int = 0) -> Polynomial:
        return parse_polynomial(self, text, line, column_offset)

    def __call__(self, text: str) -> Polynomial:
        return self.parse(text)

    # -- identity -----------------------------------------------------------------

    @property
    def signature(self) -> tuple:
        return (self.variables, self.p, self.order, self.quotient_gens)

    def __eq__(self, other) -> bool:
        return self is other or (isinstance(other, Ring) and self.signature == other.signature)

    def __hash__(self) -> int:
        return hash(self.signature)

    def __repr__(self) -> str:
        q = f" / ({', '.join(self.quotient_gens)})" if self.quotient_gens else ""
        return f"Ring(F_{self.p}[{', '.join(self.variables)}]{q}, {self.order})"

    @property
    def dim(self) -> int:
        """Krull dimension of the ring (of ``k[x]/Q``)."""
        if self._dim is None:
            if self.quotient is None:
                self._dim = self.nvars
            else:
                self._dim = combinatorial_dimension(self.nvars, [self.unpack(m) for m in self.quotient.leading_monomials])
        return self._dim

    @property
    def has_quotient(self) -> bool:
        return self.quotient is not None

    def extended(self, new_vars: Sequence[str], order: MonomialOrder) -> Ring:
        """Ring on ``new_vars`` (a superset/permutation of ours), same field,
        with our quotient carried over (unreduced; callers add it to ideals)."""
        return Ring(new_vars, self.p, order)


def combinatorial_dimension(nvars: int, lead_exps: Sequence[Sequence[int]]) -> int:
    """Largest size of a variable set that supports no leading monomial."""
    supports = [frozenset(i for i, e in enumerate(exps) if e) for exps in lead_exps]
    if any(not s for s in supports):
        return -1  # unit ideal: empty variety
    for size in range(nvars, -1, -1):
        for subset in combinations(range(nvars), size):
            s = frozenset(subset)
            if not any(sup <= s for sup in supports):
                return size
    return 0


def make_ring(variables: Sequence[str], p: int = DEFAULT_PRIME, order: MonomialOrder | str = "degrevlex",
              quotient_gens: Sequence[str | Polynomial] = ()) -> Ring:
    """Create a ring context; ``quotient_gens`` define ``R = k[x]/Q``."""
    from .groebner import groebner_basis_of

    ring = Ring(variables, p, order)
    if quotient_gens:
        polys = [g if isinstance(g, Polynomial) else ring.parse(g) for g in quotient_gens]
        polys = [Polynomial(ring, g.coeffs) for g in polys]
        gb = groebner_basis_of(ring, [g for g in polys if g])
        if gb.is_unit():
            raise RingError("quotient ideal is the whole ring")
        if gb.elements:
            ring.quotient = gb
            ring.quotient_gens = tuple(str(g) for g in polys)
    return ring


class Polynomial:
    """An immutable polynomial; ``coeffs`` maps packed monomials to residues.

    Arithmetic never reduces modulo the ring's quotient ideal; use
    :func:`blowup_lab.groebner.normal_form` for that.
    """

    __slots__ = ("ring", "coeffs", "_sorted", "_hash")

    def __init__(self, ring: Ring, coeffs: dict[int, int]):
        self.ring = ring
        self.coeffs = coeffs
        self._sorted = None
        self._hash = None

    # -- structure -----------------------------------------------------------------

    @property
    def terms(self) -> tuple[tuple[int, int], ...]:
        """(packed monomial, coefficient) pairs, descending in the ring order."""
        if self._sorted is None:
            key = self.ring.key
            self._sorted = tuple(sorted(self.coeffs.items(), key=lambda t: key(t[0]), reverse=True))
        return self._sorted

    def exponent_terms(self) -> list[tuple[tuple[int, ...], int]]:
        return [(self.ring.unpack(P), c) for P, c in self.terms]

    @property
    def lm(self) -> int:
        return self.terms[0][0]

    @property
    def lc(self) -> int:
        return self.terms[0][1]

    def degree(self) -> int:
        return max((self.ring.mono_degree(P) for P in self.coeffs), default=-1)

    def is_homogeneous(self) -> bool:
        return len({self.ring.mono_degree(P) for P in self.coeffs}) <= 1

    def is_monomial(self) -> bool:
        return len(self.coeffs) == 1

    def constant_term(self) -> int:
        return self.coeffs.get(0, 0)

    def monic(self) -> Polynomial:
        if not self.coeffs:
            return self
        inv = self.ring.field.inv(self.lc)
        p = self.ring.p
        return Polynomial(self.ring, {P: c * inv % p for P, c in self.coeffs.items()})

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    # -- arithmetic -----------------------------------------------------------------

    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.ring is not self.ring and other.ring != self.ring:
                raise RingError("polynomials belong to different rings")
            return other
        if isinstance(other, int):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other) -> Polynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.p
        d = dict(self.coeffs)
        for P, c in other.coeffs.items():
            v = (d.get(P, 0) + c) % p
            if v:
                d[P] = v
            else:
                d.pop(P, None)
        return Polynomial(self.ring, d)

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        p = self.ring.p
        return Polynomial(self.ring, {P: p - c for P, c in self.coeffs.items()})

    def __sub__(self, other) -> Polynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> Polynomial:
        return (-self) + other

    def __mul__(self, other) -> Polynomial:
        if isinstance(other, int):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.p
        d: dict[int, int] = {}
        for P, c in self.coeffs.items():
            for Q, e in other.coeffs.items():
                R = P + Q
                d[R] = (d.get(R, 0) + c * e) % p
        return Polynomial(self.ring, {P: c for P, c in d.items() if c})

    __rmul__ = __mul__

    def scale(self, c: int) -> Polynomial:
        p = self.ring.p
        c %= p
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {P: a * c % p for P, a in self.coeffs.items()})

    def mul_monomial(self, M: int, c: int = 1) -> Polynomial:
        p = self.ring.p
        return Polynomial(self.ring, {P + M: a * c % p for P, a in self.coeffs.items()})

    def __pow__(self, k: int) -> Polynomial:
        if k < 0:
            raise RingError("negative exponent")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- comparison and printing ------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.coeffs.items()))
        return self._hash

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        ring = self.ring
        p = ring.p
        parts = []
        for P, c in self.terms:
            neg = c > p // 2
            a = p - c if neg else c
            exps = ring.unpack(P)
            factors = [v if e == 1 else f"{v}^{e}" for v, e in zip(ring.variables, exps) if e]
            if not factors:
                body = str(a)
            elif a == 1:
                body = "*".join(factors)
            else:
                body = f"{a}*" + "*".join(factors)
            if not parts:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"Polynomial({self})"


def poly_arith(op: str, f: Polynomial, g) -> Polynomial:
    """Dispatch ``add``/``sub``/``mul``/``scalar_mul``."""
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    if op == "scalar_mul":
        return f.scale(int(g))
    raise ValueError(f"unknown operation {op!r}")
