"""Exact integer polynomials, the shifted order ``<<_k`` and sign certificates.

Polynomials are immutable and stored as a tuple of Python integers from the
constant term upwards with no trailing zeros, so equal polynomials compare
and hash equal.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence, Union

Scalar = int
PolyLike = Union["IntPoly", int]


def _trim(coeffs: Iterable[int]) -> tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class IntPoly:
    """Univariate polynomial with integer coefficients."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Iterable[int] = ()) -> None:
        c = _trim(coeffs)
        for a in c:
            if not isinstance(a, int) or isinstance(a, bool):
                raise TypeError(f"coefficients must be int, got {type(a).__name__}")
        self._c = c
        self._hash = hash(c)

    # construction helpers
    @classmethod
    def _raw(cls, coeffs: tuple[int, ...]) -> "IntPoly":
        p = cls.__new__(cls)
        p._c = coeffs
        p._hash = hash(coeffs)
        return p

    @classmethod
    def const(cls, a: int) -> "IntPoly":
        return cls((a,))

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> "IntPoly":
        if degree < 0:
            raise ValueError("negative degree")
        return cls((0,) * degree + (coeff,))

    @classmethod
    def linear(cls, root: int) -> "IntPoly":
        """The monic linear factor ``y - root``."""
        return cls((-root, 1))

    @classmethod
    def from_roots(cls, roots: Iterable[int]) -> "IntPoly":
        p = ONE
        for r in roots:
            p = p * cls.linear(r)
        return p

    # basic accessors
    @property
    def coeffs(self) -> tuple[int, ...]:
        return self._c

    @property
    def degree(self) -> int:
        """Degree, with ``-1`` for the zero polynomial."""
        return len(self._c) - 1

    @property
    def leading(self) -> int:
        return self._c[-1] if self._c else 0

    def is_zero(self) -> bool:
        return not self._c

    def __getitem__(self, i: int) -> int:
        return self._c[i] if 0 <= i < len(self._c) else 0

    def __len__(self) -> int:
        return len(self._c)

    def __bool__(self) -> bool:
        return bool(self._c)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, IntPoly):
            return self._c == other._c
        if isinstance(other, int):
            return self._c == _trim((other,))
        return NotImplemented

    def __hash__(self) -> int:
        return self._hash

    # arithmetic
    @staticmethod
    def _coerce(x: PolyLike) -> "IntPoly":
        if isinstance(x, IntPoly):
            return x
        if isinstance(x, int) and not isinstance(x, bool):
            return IntPoly((x,))
        raise TypeError(f"cannot combine IntPoly with {type(x).__name__}")

    def __add__(self, other: PolyLike) -> "IntPoly":
        o = self._coerce(other)._c
        a = self._c
        if len(a) < len(o):
            a, o = o, a
        out = list(a)
        for i, v in enumerate(o):
            out[i] += v
        return IntPoly._raw(_trim(out))

    __radd__ = __add__

    def __neg__(self) -> "IntPoly":
        return IntPoly._raw(tuple(-v for v in self._c))

    def __sub__(self, other: PolyLike) -> "IntPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other: PolyLike) -> "IntPoly":
        return self._coerce(other) - self

    def __mul__(self, other: PolyLike) -> "IntPoly":
        o = self._coerce(other)._c
        a = self._c
        if not a or not o:
            return ZERO
        out = [0] * (len(a) + len(o) - 1)
        for i, x in enumerate(a):
            if x:
                for j, z in enumerate(o):
                    out[i + j] += x * z
        return IntPoly._raw(_trim(out))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "IntPoly":
        if e < 0:
            raise ValueError("negative exponent")
        result, base = ONE, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def divmod(self, divisor: "IntPoly") -> tuple["IntPoly", "IntPoly"]:
        """Division by a polynomial whose leading coefficient is +-1."""
        d = divisor._c
        if not d:
            raise ZeroDivisionError("division by the zero polynomial")
        lead = d[-1]
        if lead not in (1, -1):
            raise ValueError("divisor must be monic up to sign")
        rem = list(self._c)
        q = [0] * max(len(rem) - len(d) + 1, 0)
        for i in range(len(q) - 1, -1, -1):
            c = rem[i + len(d) - 1] * lead
            q[i] = c
            if c:
                for j, dv in enumerate(d):
                    rem[i + j] -= c * dv
        return IntPoly(q), IntPoly(rem)

    def exact_div(self, divisor: "IntPoly") -> "IntPoly":
        q, r = self.divmod(divisor)
        if r:
            raise ValueError(f"{self} is not divisible by {divisor}")
        return q

    def divide_by_power_of_y(self, e: int) -> "IntPoly":
        """Return ``self / y**e``, failing unless the division is exact."""
        if e < 0:
            raise ValueError("negative exponent")
        if any(self._c[:e]):
            raise ValueError(f"{self} is not divisible by y^{e}")
        return IntPoly._raw(self._c[e:])

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self._c):
            acc = acc * x + c
        return acc

    def compose_shift(self, k: int) -> "IntPoly":
        """Coefficients of ``p(z + k)`` by repeated synthetic division."""
        c = list(self._c)
        n = len(c)
        for i in range(n):
            for j in range(n - 2, i - 1, -1):
                c[j] += k * c[j + 1]
        return IntPoly._raw(tuple(c))

    # presentation
    def __repr__(self) -> str:
        return f"IntPoly({list(self._c)})"

    def __str__(self) -> str:
        return format_poly(self)


ZERO = IntPoly._raw(())
ONE = IntPoly._raw((1,))
Y = IntPoly._raw((0, 1))


def compose_shift(p: IntPoly, k: int) -> IntPoly:
    return p.compose_shift(k)


def shifted_difference(p2: IntPoly, p1: IntPoly, k: int) -> IntPoly:
    """The witness ``(p1 - p2)(z + k)`` used by the shifted order."""
    return (p1 - p2).compose_shift(k)


def ll_leq(p2: IntPoly, p1: IntPoly, k: int) -> bool:
    """True when ``p2 <<_k p1``: every coefficient of ``(p1 - p2)(z+k)`` is >= 0."""
    return all(c >= 0 for c in shifted_difference(p2, p1, k).coeffs)


def bound_poly(k: int, n: int) -> IntPoly:
    """``(y+1) y^(n-k+1) (y-1)...(y-(k-2))``, the conjectured extremal value."""
    if k < 2 or n < k:
        raise ValueError(f"need 2 <= k <= n, got k={k}, n={n}")
    return IntPoly((1, 1)) * IntPoly.monomial(n - k + 1) * IntPoly.from_roots(range(1, k - 1))


class Sign(Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    ZERO = "zero"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class SignCertificate:
    """Outcome of a sign classification on the integers ``y >= k``.

    ``shift`` is the ``m`` for which the shifted coefficients certify the sign
    from ``m`` onwards; ``point_checks`` lists the integers in ``[k, m)`` that
    were evaluated directly.  Signs are weak: a positive polynomial may vanish
    at finitely many of the checked integers.
    """

    sign: Sign
    k: int
    shift: int | None
    point_checks: tuple[int, ...] = ()
    vanishes_at: tuple[int, ...] = ()

    @property
    def n_point_checks(self) -> int:
        return len(self.point_checks)


def is_nonneg_for_integers_geq(p: IntPoly, k: int, extra_checks: int = 8) -> SignCertificate | None:
    """Try to certify ``p(y) >= 0`` for all integers ``y >= k``.

    Shifts ``m = k, ..., k + extra_checks`` are tried in turn; for a shift
    ``m`` the values at ``k, ..., m-1`` are checked one by one.  Returns
    ``None`` when no shift in range works, which does not prove anything.
    """
    for m in range(k, k + extra_checks + 1):
        pts = tuple(range(k, m))
        vals = [p(y) for y in pts]
        if any(v < 0 for v in vals):
            return None
        if all(c >= 0 for c in p.compose_shift(m).coeffs):
            zeros = tuple(y for y, v in zip(pts, vals) if v == 0)
            if p(m) == 0:
                zeros += (m,)
            return SignCertificate(Sign.POSITIVE, k, m, pts, zeros)
    return None


def classify_sign(p: IntPoly, k: int = 4, extra_checks: int = 8) -> SignCertificate:
    """Classify ``p`` as weakly positive, weakly negative or zero on ``y >= k``."""
    if p.is_zero():
        return SignCertificate(Sign.ZERO, k, k)
    cert = is_nonneg_for_integers_geq(p, k, extra_checks)
    if cert is not None:
        return cert
    cert = is_nonneg_for_integers_geq(-p, k, extra_checks)
    if cert is not None:
        return SignCertificate(Sign.NEGATIVE, k, cert.shift, cert.point_checks, cert.vanishes_at)
    return SignCertificate(Sign.INCONCLUSIVE, k, None)


_SUPERSCRIPT = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")


def format_poly(p: IntPoly, var: str = "y", style: str = "plain") -> str:
    """Render ``p`` from the highest degree down, e.g. ``y^3 - 2y^2 + 7``.

    ``style`` is ``plain`` (caret exponents), ``latex`` (braced exponents)
    or ``unicode`` (superscripts).
    """
    if p.is_zero():
        return "0"
    parts: list[str] = []
    for i in range(p.degree, -1, -1):
        c = p[i]
        if not c:
            continue
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            if i == 1:
                mono = var
            elif style == "latex":
                mono = f"{var}^{{{i}}}"
            elif style == "unicode":
                mono = var + str(i).translate(_SUPERSCRIPT)
            else:
                mono = f"{var}^{i}"
            body = mono if mag == 1 else f"{mag}{mono}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)


_TERM = re.compile(r"([+-]?)(\d*)(?:\*?([a-z])(?:\^\{?(\d+)\}?)?)?")


def parse_poly(text: str) -> IntPoly:
    """Parse forms such as ``y^6 - 3y^5``, ``y^{8}-7y^{7}`` or ``2*z^2+1``.

    Any single lower-case letter is accepted as the variable, but only one
    variable may appear.
    """
    s = text.replace(" ", "").replace("$", "").replace("\\,", "")
    if not s:
        raise ValueError("empty polynomial")
    coeffs: dict[int, int] = {}
    var: str | None = None
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos or (m.group(2) == "" and m.group(3) is None):
            raise ValueError(f"cannot parse polynomial {text!r} at offset {pos}")
        if pos > 0 and not m.group(1):
            raise ValueError(f"missing operator in {text!r} at offset {pos}")
        sign = -1 if m.group(1) == "-" else 1
        c = int(m.group(2)) if m.group(2) else 1
        if m.group(3):
            if var is not None and m.group(3) != var:
                raise ValueError(f"mixed variables in {text!r}")
            var = m.group(3)
            e = int(m.group(4)) if m.group(4) else 1
        else:
            e = 0
        coeffs[e] = coeffs.get(e, 0) + sign * c
        pos = m.end()
    top = max(coeffs)
    return IntPoly(coeffs.get(i, 0) for i in range(top + 1))


def poly_from_coeffs(coeffs: Sequence[int]) -> IntPoly:
    return IntPoly(int(c) for c in coeffs)
