"""
Exact univariate polynomials in `t` with integer coefficients.

Exponents may go negative in intermediate results (the symmetrization used
by the KaLu recursion needs Laurent polynomials for one step); every value
that leaves the engine has only non-negative, even exponents.

>>> h(2)
IntPoly('1 + t^2 + t^4')
>>> gauss_poincare(2, 4)
IntPoly('1 + t^2 + 2*t^4 + t^6 + t^8')
>>> u_tilde(IntPoly({4: 1, 6: 1}), 5)
IntPoly('t^4 + t^6')
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Mapping

__all__ = [
    "IntPoly", "ZERO", "ONE",
    "h", "big_p", "gauss_poincare",
    "truncate_below", "symmetrize_about_zero", "shift", "u_tilde",
]


class IntPoly:
    """Sparse polynomial: a map exponent -> nonzero integer coefficient."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        self._c: dict[int, int] = {
            int(e): int(c) for e, c in (coeffs or {}).items() if c
        }
        self._hash = None

    @classmethod
    def _raw(cls, c: dict[int, int]) -> IntPoly:
        # caller guarantees no zero coefficients
        out = cls.__new__(cls)
        out._c = c
        out._hash = None
        return out

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> IntPoly:
        return cls({exp: coeff})

    # --- inspection ---

    def items(self) -> list[tuple[int, int]]:
        return sorted(self._c.items())

    def coeff(self, exp: int) -> int:
        return self._c.get(exp, 0)

    def exponents(self) -> list[int]:
        return sorted(self._c)

    @property
    def degree(self) -> int:
        """Largest exponent; -1 for the zero polynomial."""
        return max(self._c) if self._c else -1

    @property
    def low_degree(self) -> int | None:
        return min(self._c) if self._c else None

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self):
        return bool(self._c)

    def has_nonnegative_exponents(self) -> bool:
        return all(e >= 0 for e in self._c)

    def has_even_exponents(self) -> bool:
        return all(e % 2 == 0 for e in self._c)

    def has_nonnegative_coeffs(self) -> bool:
        return all(c > 0 for c in self._c.values())

    def is_palindromic(self, center: int = 0) -> bool:
        """Coefficient at center - a equals coefficient at center + a."""
        return all(self._c.get(2 * center - e, 0) == c for e, c in self._c.items())

    def __call__(self, t):
        return sum(c * t ** e for e, c in self._c.items())

    # --- arithmetic ---

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPoly({0: other})
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __neg__(self):
        return IntPoly._raw({e: -c for e, c in self._c.items()})

    def __add__(self, other):
        if isinstance(other, int):
            other = IntPoly({0: other})
        if not isinstance(other, IntPoly):
            return NotImplemented
        c = dict(self._c)
        for e, v in other._c.items():
            s = c.get(e, 0) + v
            if s:
                c[e] = s
            else:
                c.pop(e, None)
        return IntPoly._raw(c)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            other = IntPoly({0: other})
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            other = IntPoly({0: other})
        if not isinstance(other, IntPoly):
            return NotImplemented
        c: dict[int, int] = {}
        for e1, c1 in self._c.items():
            for e2, c2 in other._c.items():
                c[e1 + e2] = c.get(e1 + e2, 0) + c1 * c2
        return IntPoly._raw({e: v for e, v in c.items() if v})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = ONE
        for _ in range(n):
            out = out * self
        return out

    def divmod(self, divisor: IntPoly) -> tuple[IntPoly, IntPoly]:
        """
        Long division by a polynomial with non-negative exponents.

        The quotient is integral only if every leading-coefficient division
        is exact; a non-exact step raises ArithmeticError.
        """
        if not divisor:
            raise ZeroDivisionError("polynomial division by zero")
        dlead_e = divisor.degree
        dlead_c = divisor._c[dlead_e]
        rem = dict(self._c)
        quot: dict[int, int] = {}
        while rem:
            e = max(rem)
            if e < dlead_e:
                break
            c = rem[e]
            if c % dlead_c:
                raise ArithmeticError(f"non-integral quotient: {c} / {dlead_c}")
            qc = c // dlead_c
            qe = e - dlead_e
            quot[qe] = qc
            for de, dc in divisor._c.items():
                k = qe + de
                v = rem.get(k, 0) - qc * dc
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        return IntPoly._raw(quot), IntPoly._raw(rem)

    def exact_div(self, divisor: IntPoly) -> IntPoly:
        q, r = self.divmod(divisor)
        assert not r, f"non-exact division: remainder {r}"
        return q

    # --- rendering ---

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for i, (e, c) in enumerate(self.items()):
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                mono = "t" if e == 1 else f"t^{e}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            if i == 0:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def __repr__(self):
        return f"IntPoly('{self}')"

    def to_json(self) -> list[list]:
        """Sorted [exponent, decimal-string coefficient] pairs."""
        return [[e, str(c)] for e, c in self.items()]

    @classmethod
    def from_json(cls, data: Iterable) -> IntPoly:
        return cls({int(e): int(c) for e, c in data})


ZERO = IntPoly()
ONE = IntPoly({0: 1})


def h(beta: int) -> IntPoly:
    """1 + t^2 + ... + t^(2 beta); zero for beta < 0."""
    return IntPoly({2 * a: 1 for a in range(beta + 1)})


@lru_cache(maxsize=None)
def big_p(alpha: int) -> IntPoly:
    """h(0) h(1) ... h(alpha - 1), with P_0 = 1 and P_alpha = 0 below zero."""
    if alpha < 0:
        return ZERO
    out = ONE
    for b in range(alpha):
        out = out * h(b)
    return out


@lru_cache(maxsize=None)
def gauss_poincare(k: int, l: int) -> IntPoly:
    """Poincare polynomial of G_k(C^l), computed as P_l / (P_k P_{l-k})."""
    assert 0 <= k <= l, f"need 0 <= k <= l, got k={k}, l={l}"
    return big_p(l).exact_div(big_p(k) * big_p(l - k))


def truncate_below(p: IntPoly, beta: int) -> IntPoly:
    """Keep the terms of exponent >= beta."""
    return IntPoly._raw({e: c for e, c in p._c.items() if e >= beta})


def symmetrize_about_zero(p: IntPoly) -> IntPoly:
    """c_0 + sum_{a >= 1} c_a (t^a + t^-a)."""
    assert p.has_nonnegative_exponents(), f"negative exponent in {p}"
    out = dict(p._c)
    for e, c in p._c.items():
        if e > 0:
            out[-e] = c
    return IntPoly._raw(out)


def shift(p: IntPoly, beta: int) -> IntPoly:
    """Multiply by t^beta (beta may be negative)."""
    return IntPoly._raw({e + beta: c for e, c in p._c.items()})


def u_tilde(r: IntPoly, m: int) -> IntPoly:
    """
    Keep the terms of `r` of degree >= m and mirror them about degree m.

    A negative exponent in the result means deg r > 2m, which the fiber
    dimension bound rules out; that is reported as an AssertionError.
    """
    out = shift(symmetrize_about_zero(shift(truncate_below(r, m), -m)), m)
    assert out.has_nonnegative_exponents(), (
        f"u_tilde produced negative exponents: deg R = {r.degree} > 2m = {2 * m}"
    )
    return out
