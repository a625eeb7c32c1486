"""Exact arithmetic in rings of cyclotomic integers.

An element of Z[zeta_n] is stored as an integer vector in the power basis
1, x, ..., x^(phi(n)-1) modulo the n-th cyclotomic polynomial, so equality
and zero-testing are structural.  Binary operations between elements of
different orders lift both to the lcm lazily.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from math import gcd


def euler_phi(n: int) -> int:
    if n < 1:
        raise ValueError("euler_phi requires n >= 1")
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def prime_factors(n: int) -> list[int]:
    """Distinct prime divisors of n, ascending."""
    out = []
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            out.append(p)
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        out.append(m)
    return out


# -- dense integer polynomial helpers (constant term first) --------------


def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _trim(out)


def _poly_divmod(a: list[int], b: list[int]) -> tuple[list[int], list[int]]:
    """Divide by a monic polynomial b; exact integer arithmetic."""
    assert b and b[-1] == 1, "divisor must be monic"
    rem = list(a)
    quot = [0] * max(len(a) - len(b) + 1, 0)
    db = len(b) - 1
    while len(_trim(rem)) - 1 >= db and rem:
        d = len(rem) - 1
        c = rem[-1]
        quot[d - db] = c
        for i in range(len(b)):
            rem[d - db + i] -= c * b[i]
        _trim(rem)
    return _trim(quot), rem


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial, constant term first."""
    if n < 1:
        raise ValueError("cyclotomic_polynomial requires n >= 1")
    if n == 1:
        return (-1, 1)
    num = [0] * (n + 1)
    num[0], num[n] = -1, 1
    den = [1]
    for d in range(1, n):
        if n % d == 0:
            den = _poly_mul(den, list(cyclotomic_polynomial(d)))
    quot, rem = _poly_divmod(num, den)
    assert not rem, "cyclotomic division must be exact"
    return tuple(quot)


def _reduce_mod_cyclotomic(coeffs: list[int], n: int) -> tuple[int, ...]:
    """Reduce a polynomial in zeta_n (exponents already arbitrary) to the
    power basis of length phi(n)."""
    # fold exponents mod n first: zeta_n^n = 1
    folded = [0] * n
    for i, c in enumerate(coeffs):
        if c:
            folded[i % n] += c
    phi = cyclotomic_polynomial(n)
    _, rem = _poly_divmod(folded, list(phi))
    d = euler_phi(n)
    rem = rem + [0] * (d - len(rem))
    return tuple(rem[:d])


class Cyclo:
    """An exact cyclotomic integer, canonically reduced."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: tuple[int, ...]):
        # assumed already reduced; use the constructors below
        self.order = order
        self.coeffs = coeffs

    # -- constructors ----------------------------------------------------

    @staticmethod
    def from_int(k: int) -> "Cyclo":
        return Cyclo(1, (k,) if k else ())

    @staticmethod
    def zero() -> "Cyclo":
        return Cyclo(1, ())

    @staticmethod
    def one() -> "Cyclo":
        return Cyclo(1, (1,))

    @staticmethod
    def from_poly(order: int, coeffs) -> "Cyclo":
        """Element sum_i coeffs[i] * zeta_order^i, reduced."""
        if order < 1:
            raise ValueError("order must be positive")
        red = _reduce_mod_cyclotomic(list(coeffs), order)
        if not any(red):
            return Cyclo.zero()
        return Cyclo(order, red)

    # -- basics ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_one(self) -> bool:
        return self == Cyclo.one()

    def as_int(self) -> int:
        """The value if it is a rational integer, else raise."""
        if all(c == 0 for c in self.coeffs[1:]):
            return self.coeffs[0] if self.coeffs else 0
        lifted = self  # a nontrivial basis expression can still be rational
        raise ValueError(f"{lifted!r} is not a rational integer")

    def lift(self, m: int) -> "Cyclo":
        """Rewrite in Z[zeta_m]; requires order | m."""
        n = self.order
        if m == n:
            return self
        if m % n != 0:
            raise ValueError(f"cannot lift order {n} to {m}")
        step = m // n
        out = [0] * m
        for i, c in enumerate(self.coeffs):
            if c:
                out[i * step] += c
        return Cyclo(m, _reduce_mod_cyclotomic(out, m))

    def _pair(self, other: "Cyclo") -> tuple["Cyclo", "Cyclo", int]:
        m = self.order * other.order // gcd(self.order, other.order)
        return self.lift(m), other.lift(m), m

    # -- ring operations -------------------------------------------------

    def __add__(self, other):
        if isinstance(other, int):
            other = Cyclo.from_int(other)
        a, b, m = self._pair(other)
        ca, cb = list(a.coeffs), list(b.coeffs)
        ca += [0] * (len(cb) - len(ca))
        cb += [0] * (len(ca) - len(cb))
        return Cyclo(m, tuple(x + y for x, y in zip(ca, cb)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclo(self.order, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        if isinstance(other, int):
            other = Cyclo.from_int(other)
        return self + (-other)

    def __rsub__(self, other):
        return Cyclo.from_int(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            return Cyclo(self.order, tuple(other * c for c in self.coeffs))
        a, b, m = self._pair(other)
        prod = _poly_mul(list(a.coeffs), list(b.coeffs))
        return Cyclo(m, _reduce_mod_cyclotomic(prod, m))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not supported")
        result = Cyclo.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conj(self) -> "Cyclo":
        """Complex conjugation, zeta_n -> zeta_n^(-1)."""
        n = self.order
        out = [0] * n
        for i, c in enumerate(self.coeffs):
            if c:
                out[(-i) % n] += c
        return Cyclo(n, _reduce_mod_cyclotomic(out, n))

    # -- comparisons -----------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            other = Cyclo.from_int(other)
        if not isinstance(other, Cyclo):
            return NotImplemented
        a, b, _ = self._pair(other)
        ca, cb = list(a.coeffs), list(b.coeffs)
        ca += [0] * (len(cb) - len(ca))
        cb += [0] * (len(ca) - len(cb))
        return ca == cb

    def __hash__(self):
        # hash via a canonical lift-free signature: strip trailing zeros
        c = list(self.coeffs)
        _trim(c)
        if all(x == 0 for x in c[1:]) and c:
            return hash(c[0])  # rational integers hash alike at any order
        return hash((self.order, tuple(c)))

    # -- misc ------------------------------------------------------------

    def to_complex(self) -> complex:
        import cmath

        z = cmath.exp(2j * cmath.pi / self.order)
        return sum(c * z**i for i, c in enumerate(self.coeffs))

    def multiplicative_order(self) -> int:
        """Order of self as a root of unity; raises if not one."""
        for m in range(1, 2 * self.order + 1):
            if self**m == Cyclo.one():
                return m
        raise ValueError(f"{self!r} is not a root of unity")

    def __repr__(self):
        return f"Cyclo({self.render()!r})"

    def render(self) -> str:
        """Textual form like `z8^3 - z8 + 2`."""
        if self.is_zero():
            return "0"
        parts = []
        sym = f"z{self.order}"
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            term = "" if i == 0 else sym if i == 1 else f"{sym}^{i}"
            mag = abs(c)
            body = f"{mag}" if (i == 0 or mag != 1) else ""
            sep = "*" if body and term else ""
            chunk = f"{body}{sep}{term}" or "0"
            if not parts:
                parts.append(("-" if c < 0 else "") + chunk)
            else:
                parts.append((" - " if c < 0 else " + ") + chunk)
        return "".join(parts)


def root_of_unity(n: int, k: int) -> Cyclo:
    """zeta_n^k, stored at its exact multiplicative order n/gcd(n, k)."""
    if n < 1:
        raise ValueError("root_of_unity requires n >= 1")
    k %= n
    g = gcd(n, k)
    n, k = n // g, k // g
    coeffs = [0] * (k + 1)
    coeffs[k] = 1
    return Cyclo.from_poly(n, coeffs)


def vanishing_sum_possible(n_terms: int, m: int) -> bool:
    """Necessary condition for a vanishing sum of n_terms elements of U_m:
    n_terms must be a nonnegative integer combination of the primes of m."""
    if m < 1:
        raise ValueError("m must be positive")
    if n_terms < 1:
        raise ValueError("n_terms must be positive")
    primes = prime_factors(m)
    if not primes:
        return False  # m = 1: only n copies of 1, never zero
    reachable = [False] * (n_terms + 1)
    reachable[0] = True
    for p in primes:
        for s in range(p, n_terms + 1):
            if reachable[s - p]:
                reachable[s] = True
    return reachable[n_terms]


# -- six-term sums of 2-power roots of unity -----------------------------


class SixSumVerdict(Enum):
    NONZERO_BY_PART1 = "nonzero-by-part1"
    ZERO_PART2_SHAPE = "zero-part2-shape"
    ZERO_PART3_SHAPE = "zero-part3-shape"
    NONZERO = "nonzero"
    ZERO = "zero"


@dataclass(frozen=True)
class SixSumResult:
    verdict: SixSumVerdict
    total: Cyclo
    delta: tuple[Cyclo, Cyclo, Cyclo]


class SixSumPreconditionError(ValueError):
    """The product constraints eps1*eps2*eps3 = eta1*eta2*eta3 = 1 fail."""


class LemmaViolationError(AssertionError):
    """An exact computation contradicts a proven statement; a bug."""


def _two_power_exponent(v: Cyclo, big: int) -> int:
    """Exponent k with v = zeta_big^k, for big a power of two."""
    if big & (big - 1) or big < 1:
        raise ValueError("ambient order must be a power of two")
    w = v.lift(big) if big > 1 else v
    nz = [(i, c) for i, c in enumerate(w.coeffs) if c]
    if len(nz) != 1 or nz[0][1] not in (1, -1):
        raise ValueError(f"{v!r} is not in U_{big}")
    i, c = nz[0]
    return i if c == 1 else (i + big // 2) % big


def six_sum_classifier(n: int, eps, eta) -> SixSumResult:
    """Classify Sigma = eps1+eps2+eps3+eta1+eta2+eta3 for roots in U_(2^n)
    subject to eps1*eps2*eps3 = eta1*eta2*eta3 = 1.

    The shape tests are up to the permutation symmetry of the constraint;
    no index-ordering convention is imposed on the inputs.
    """
    if n < 1:
        raise ValueError("n must be positive")
    big = 2**n
    ae = [_two_power_exponent(v, big) for v in eps]
    be = [_two_power_exponent(v, big) for v in eta]
    if len(ae) != 3 or len(be) != 3:
        raise ValueError("need exactly three eps and three eta values")
    if sum(ae) % big or sum(be) % big:
        raise SixSumPreconditionError("product constraints violated")

    # exact zero test by folding exponent counts through x^(big/2) = -1
    counts = [0] * big
    for k in ae + be:
        counts[k] += 1
    half = big // 2
    if half:
        fold = [counts[i] - counts[i + half] for i in range(half)]
        total_zero = not any(fold)
    else:
        total_zero = counts[0] == 0
    total = Cyclo.from_poly(big, counts)
    assert total.is_zero() == total_zero

    delta_exp = [(b - a) % big for a, b in zip(ae, be)]
    delta = tuple(root_of_unity(big, d) for d in delta_exp)

    def order_of(k: int) -> int:
        return big // gcd(big, k)

    if all(order_of(d) <= 2 for d in delta_exp):
        if total_zero:
            raise LemmaViolationError("part 1 predicts a nonzero sum")
        return SixSumResult(SixSumVerdict.NONZERO_BY_PART1, total, delta)

    if not total_zero:
        return SixSumResult(SixSumVerdict.NONZERO, total, delta)

    def as_u4(k: int) -> int:
        # exponent of an order<=4 root written in U_4
        assert (k * 4) % big == 0
        return (k * 4 // big) % 4

    all_orders = [order_of(k) for k in ae + be]
    if max(all_orders) <= 4:
        # values lie in U_4; part 2 applies
        te = sorted(as_u4(a) for a in ae)
        th = sorted(as_u4(b) for b in be)
        shapes = {(0, 1, 3), (0, 2, 2)}
        if {tuple(te), tuple(th)} == shapes:
            return SixSumResult(SixSumVerdict.ZERO_PART2_SHAPE, total, delta)
        raise LemmaViolationError("part 2 predicts the {zeta4, -zeta4} shape")

    eps_orders = [order_of(a) for a in ae]
    if all(order_of(d) <= 4 for d in delta_exp) and max(eps_orders) >= 8:
        dset = {as_u4(d) for d in delta_exp}
        if dset in ({1, 2}, {3, 2}):
            return SixSumResult(SixSumVerdict.ZERO_PART3_SHAPE, total, delta)
        raise LemmaViolationError("part 3 predicts delta in {±zeta4, -1}")

    return SixSumResult(SixSumVerdict.ZERO, total, delta)


def enumerate_six_sums(n: int):
    """All admissible (eps_exponents, eta_exponents) tuples over U_(2^n):
    the independent brute-force enumerator for the six-sum lemma."""
    big = 2**n
    for a1, a2 in itertools.product(range(big), repeat=2):
        a3 = (-a1 - a2) % big
        for b1, b2 in itertools.product(range(big), repeat=2):
            b3 = (-b1 - b2) % big
            yield (a1, a2, a3), (b1, b2, b3)
