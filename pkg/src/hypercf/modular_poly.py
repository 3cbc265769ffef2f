"""Arithmetic in F_p and in the polynomial rings F_p[T] and F_p[T][X].

Elements of F_p are plain Python ints in ``range(p)``.  Polynomials in T are
:class:`DensePoly` instances holding an immutable ascending numpy coefficient
vector together with the prime, so no global modulus is ever consulted.
"""
from __future__ import annotations

import json
import math
import os
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import DomainError

#: Degree of the zero polynomial.  Compares below every integer.
NEG_INF = float("-inf")

_EXACT_FLOAT_BOUND = 1 << 52


def _fft_threshold_from_env() -> int | None:
    raw = os.environ.get("HYPERCF_FFT_THRESHOLD", "2048").strip().lower()
    if raw in ("off", "none", "schoolbook", ""):
        return None
    return int(raw)


#: Operand length above which products switch to a rounded float FFT.
#: ``HYPERCF_FFT_THRESHOLD=off`` forces schoolbook multiplication everywhere.
FFT_THRESHOLD: int | None = _fft_threshold_from_env()


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def check_odd_prime(p: int) -> int:
    if not isinstance(p, (int, np.integer)) or not is_prime(int(p)) or p == 2:
        raise DomainError(f"p must be an odd prime, got {p!r}")
    if (p - 1) ** 2 >= _EXACT_FLOAT_BOUND:
        raise DomainError(f"p={p} is too large for machine-word coefficients")
    return int(p)


def inv(a: int, p: int) -> int:
    """Inverse of ``a`` in F_p by Fermat exponentiation."""
    a %= p
    if a == 0:
        raise DomainError("0 has no inverse in F_p")
    return pow(a, p - 2, p)


def frac(num: int, den: int, p: int) -> int:
    """Reduce the rational number num/den into F_p."""
    return num * inv(den, p) % p


def convolve(a: np.ndarray, b: np.ndarray, p: int, n: int | None = None) -> np.ndarray:
    """Product of two coefficient vectors mod p, optionally cut to ``n`` terms.

    Uses exact float64 schoolbook convolution, a rounded FFT when both operands
    exceed :data:`FFT_THRESHOLD`, and Python ints as the last resort when the
    accumulated sums could exceed 2**52.
    """
    if n is not None:
        a = a[:n]
        b = b[:n]
    la, lb = len(a), len(b)
    if la == 0 or lb == 0:
        return np.zeros(0, dtype=np.int64)
    bound = (p - 1) ** 2 * min(la, lb)
    if bound < _EXACT_FLOAT_BOUND:
        fa = a.astype(np.float64)
        fb = b.astype(np.float64)
        if (FFT_THRESHOLD is not None and min(la, lb) > FFT_THRESHOLD
                and bound < (1 << 40)):
            size = 1 << (la + lb - 1).bit_length()
            prod = np.fft.irfft(np.fft.rfft(fa, size) * np.fft.rfft(fb, size), size)
            out = np.rint(prod[: la + lb - 1])
        else:
            out = np.convolve(fa, fb)
        res = np.fmod(out, p).astype(np.int64)
    else:
        res = np.convolve(a.astype(object), b.astype(object)) % p
        res = res.astype(np.int64)
    if n is not None:
        res = res[:n]
    return res


def series_inverse(u: np.ndarray, n: int, p: int) -> np.ndarray:
    """First ``n`` coefficients of 1/u for a power series u with u[0] != 0."""
    if n <= 0:
        return np.zeros(0, dtype=np.int64)
    if u[0] % p == 0:
        raise DomainError("power series with zero constant term is not invertible")
    w = np.array([inv(int(u[0]), p)], dtype=np.int64)
    m = 1
    while m < n:
        m = min(2 * m, n)
        e = convolve(u[:m], w, p, m)
        corr = (-e) % p
        corr[0] = (corr[0] + 2) % p
        w = convolve(w, corr, p, m)
    return w


class DensePoly:
    """Dense univariate polynomial over F_p, coefficients in ascending order.

    Instances are immutable and hashable.  The zero polynomial has an empty
    coefficient vector and degree :data:`NEG_INF`.
    """

    __slots__ = ("p", "coeffs", "_hash")

    def __init__(self, coeffs: Iterable[int] | np.ndarray, p: int):
        arr = np.asarray(coeffs if isinstance(coeffs, np.ndarray) else list(coeffs),
                         dtype=np.int64) % p
        nz = np.flatnonzero(arr)
        arr = arr[: nz[-1] + 1] if len(nz) else arr[:0]
        arr.setflags(write=False)
        self.p = p
        self.coeffs = arr
        self._hash = None

    # -- constructors ---------------------------------------------------
    @classmethod
    def zero(cls, p: int) -> "DensePoly":
        return cls((), p)

    @classmethod
    def const(cls, c: int, p: int) -> "DensePoly":
        return cls((c,), p)

    @classmethod
    def monomial(cls, c: int, d: int, p: int) -> "DensePoly":
        arr = np.zeros(d + 1, dtype=np.int64)
        arr[d] = c
        return cls(arr, p)

    @classmethod
    def t(cls, p: int) -> "DensePoly":
        """The indeterminate T."""
        return cls((0, 1), p)

    # -- basic properties -------------------------------------------------
    @property
    def degree(self) -> int | float:
        return len(self.coeffs) - 1 if len(self.coeffs) else NEG_INF

    @property
    def lead(self) -> int:
        return int(self.coeffs[-1]) if len(self.coeffs) else 0

    def is_zero(self) -> bool:
        return len(self.coeffs) == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i: int) -> int:
        return int(self.coeffs[i]) if 0 <= i < len(self.coeffs) else 0

    def to_list(self) -> list[int]:
        return [int(c) for c in self.coeffs]

    def _same_field(self, other: "DensePoly") -> None:
        if other.p != self.p:
            raise DomainError(f"mixing polynomials over F_{self.p} and F_{other.p}")

    def _coerce(self, other) -> "DensePoly":
        if isinstance(other, DensePoly):
            self._same_field(other)
            return other
        if isinstance(other, (int, np.integer)):
            return DensePoly((int(other),), self.p)
        return NotImplemented

    # -- ring operations ----------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = a.copy()
        out[: len(b)] += b
        return DensePoly(out, self.p)

    __radd__ = __add__

    def __neg__(self) -> "DensePoly":
        return DensePoly(-self.coeffs, self.p)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)):
            return DensePoly(self.coeffs * (int(other) % self.p), self.p)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return DensePoly(convolve(self.coeffs, other.coeffs, self.p), self.p)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "DensePoly":
        return pow_mod_p(self, e)

    def divrem(self, den: "DensePoly") -> tuple["DensePoly", "DensePoly"]:
        return divrem(self, den)

    def __floordiv__(self, den: "DensePoly") -> "DensePoly":
        return divrem(self, den)[0]

    def __mod__(self, den: "DensePoly") -> "DensePoly":
        return divrem(self, den)[1]

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, np.integer)):
            other = DensePoly((int(other),), self.p)
        if not isinstance(other, DensePoly):
            return NotImplemented
        return self.p == other.p and np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.p, self.coeffs.tobytes()))
        return self._hash

    def __call__(self, x: int) -> int:
        return eval_poly(self, x)

    def scale(self, c: int) -> "DensePoly":
        return DensePoly(self.coeffs * (c % self.p), self.p)

    def monic(self) -> "DensePoly":
        if self.is_zero():
            raise DomainError("zero polynomial has no monic associate")
        return self.scale(inv(self.lead, self.p))

    def shift(self, d: int) -> "DensePoly":
        """Multiply by T**d (d >= 0)."""
        if self.is_zero() or d == 0:
            return self
        return DensePoly(np.concatenate([np.zeros(d, dtype=np.int64), self.coeffs]), self.p)

    def derivative(self) -> "DensePoly":
        n = len(self.coeffs)
        if n <= 1:
            return DensePoly.zero(self.p)
        return DensePoly(self.coeffs[1:] * (np.arange(1, n) % self.p), self.p)

    # -- text forms ----------------------------------------------------------
    def to_text(self) -> str:
        return json.dumps(self.to_list())

    @classmethod
    def from_text(cls, text: str | Sequence[int], p: int) -> "DensePoly":
        """Parse an ascending coefficient list such as ``[1,0,3,0,1]``."""
        data = json.loads(text) if isinstance(text, str) else list(text)
        if not isinstance(data, list) or not all(isinstance(c, int) for c in data):
            raise DomainError(f"expected a list of integers, got {text!r}")
        bad = [c for c in data if not 0 <= c < p]
        if bad:
            raise DomainError(f"coefficients {bad} outside [0, {p})")
        return cls(data, p)

    def __repr__(self) -> str:
        if self.is_zero():
            return "0"
        terms = []
        for d in range(len(self.coeffs) - 1, -1, -1):
            c = int(self.coeffs[d])
            if c == 0:
                continue
            mono = "" if d == 0 else ("T" if d == 1 else f"T^{d}")
            if not mono:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}{mono}")
        return " + ".join(terms)


def divrem(num: DensePoly, den: DensePoly) -> tuple[DensePoly, DensePoly]:
    """Euclidean division: ``num = q*den + r`` with ``deg r < deg den``."""
    num._same_field(den)
    p = num.p
    if den.is_zero():
        raise DomainError("division by the zero polynomial")
    n, m = len(num.coeffs) - 1, len(den.coeffs) - 1
    if n < m:
        return DensePoly.zero(p), num
    dq = n - m
    if m == 0:
        return num.scale(inv(den.lead, p)), DensePoly.zero(p)
    # reversed polynomials turn the quotient into a truncated series quotient
    rnum = num.coeffs[::-1][: dq + 1]
    rden = den.coeffs[::-1][: dq + 1]
    if dq == 0:
        rq = np.array([rnum[0] * inv(int(rden[0]), p) % p], dtype=np.int64)
    else:
        rq = convolve(rnum, series_inverse(rden, dq + 1, p), p, dq + 1)
    q = rq[::-1].copy()
    low = convolve(q, den.coeffs, p, m)
    rem = (num.coeffs[:m] - np.pad(low, (0, m - len(low)))) % p
    return DensePoly(q, p), DensePoly(rem, p)


def eval_poly(f: DensePoly, x: int) -> int:
    """Horner evaluation of ``f`` at ``x`` in F_p."""
    p = f.p
    x %= p
    acc = 0
    for c in f.coeffs[::-1]:
        acc = (acc * x + int(c)) % p
    return acc


def dilate(f: DensePoly, r: int) -> DensePoly:
    """Exponent dilation T^d -> T^(d*r): equals f**r when r is a power of p."""
    if f.is_zero() or r == 1:
        return f
    out = np.zeros((len(f.coeffs) - 1) * r + 1, dtype=np.int64)
    out[::r] = f.coeffs
    return DensePoly(out, f.p)


def pow_mod_p(f: DensePoly, e: int) -> DensePoly:
    """``f**e``, using Frobenius dilation for every base-p digit of ``e``."""
    if e < 0:
        raise DomainError("negative exponent")
    p = f.p
    result = DensePoly.const(1, p)
    base = f
    while e:
        e, digit = divmod(e, p)
        if digit:
            piece = DensePoly.const(1, p)
            sq = base
            d = digit
            while d:
                if d & 1:
                    piece = piece * sq
                d >>= 1
                if d:
                    sq = sq * sq
            result = result * piece
        if e:
            base = dilate(base, p)
    return result


def is_power_of(r: int, p: int) -> bool:
    if r < 1:
        return False
    while r % p == 0:
        r //= p
    return r == 1


class XPoly:
    """Sparse polynomial in X whose coefficients lie in F_p[T].

    ``terms`` maps an exponent of X to a nonzero :class:`DensePoly`.
    """

    __slots__ = ("p", "terms")

    def __init__(self, terms: Mapping[int, DensePoly], p: int):
        self.p = p
        self.terms = {int(e): c for e, c in sorted(terms.items()) if not c.is_zero()}
        for c in self.terms.values():
            if c.p != p:
                raise DomainError("coefficient over the wrong field")

    @classmethod
    def from_list(cls, coeffs: Sequence[DensePoly], p: int) -> "XPoly":
        return cls(dict(enumerate(coeffs)), p)

    @property
    def degree(self) -> int | float:
        return max(self.terms) if self.terms else NEG_INF

    def coeff(self, e: int) -> DensePoly:
        return self.terms.get(e, DensePoly.zero(self.p))

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "XPoly") -> "XPoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out[e] + c if e in out else c
        return XPoly(out, self.p)

    def __neg__(self) -> "XPoly":
        return XPoly({e: -c for e, c in self.terms.items()}, self.p)

    def __sub__(self, other: "XPoly") -> "XPoly":
        return self + (-other)

    def __mul__(self, other) -> "XPoly":
        if isinstance(other, (DensePoly, int)):
            return XPoly({e: c * other for e, c in self.terms.items()}, self.p)
        out: dict[int, DensePoly] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                prod = c1 * c2
                e = e1 + e2
                out[e] = out[e] + prod if e in out else prod
        return XPoly(out, self.p)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, XPoly):
            return NotImplemented
        return self.p == other.p and self.terms == other.terms

    def hasse(self, j: int) -> "XPoly":
        """j-th Hasse derivative: sum of C(e, j) c_e X^(e-j)."""
        out = {}
        for e, c in self.terms.items():
            if e >= j:
                b = math.comb(e, j) % self.p
                if b:
                    out[e - j] = c * b
        return XPoly(out, self.p)

    def derivative(self) -> "XPoly":
        return self.hasse(1)

    def divrem_monic(self, divisor: "XPoly") -> tuple["XPoly", "XPoly"]:
        """Division by a divisor whose leading X-coefficient is the constant 1."""
        d = divisor.degree
        if d == NEG_INF or divisor.coeff(int(d)) != DensePoly.const(1, self.p):
            raise DomainError("divisor must be monic in X")
        d = int(d)
        rem = dict(self.terms)
        quo: dict[int, DensePoly] = {}
        top = int(self.degree) if self.terms else -1
        for e in range(top, d - 1, -1):
            c = rem.pop(e, None)
            if c is None or c.is_zero():
                continue
            quo[e - d] = c
            for de, dc in divisor.terms.items():
                if de == d:
                    continue
                k = e - d + de
                prod = c * dc
                rem[k] = rem[k] - prod if k in rem else -prod
        return XPoly(quo, self.p), XPoly(rem, self.p)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({c})X^{e}" for e, c in sorted(self.terms.items(), reverse=True))
