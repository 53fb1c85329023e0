"""Exact rational and configurable-precision scalar kernel.

Rationals are :class:`fractions.Fraction`; high-precision reals and complexes
are :mod:`mpmath` ``mpf``/``mpc`` values evaluated at the working precision
``P`` (decimal digits, default 60). Everything that can stay exact does; the
promotion to HP happens at the last step.
"""

from __future__ import annotations

import contextlib
import functools
import re
from fractions import Fraction
from numbers import Integral

import mpmath
from mpmath import libmp

DEFAULT_PREC = 60

_prec = DEFAULT_PREC


class NumericDomainError(ArithmeticError):
    """A value fell outside the domain where a formula is defined."""


class PoleError(NumericDomainError):
    """Evaluation at a pole or singular point."""


class NegativeRadicandError(NumericDomainError):
    """Square root of a negative quantity where a real value was required."""


def get_prec() -> int:
    return _prec


def set_prec(P: int) -> None:
    global _prec
    if P < 10:
        raise ValueError(f"precision must be at least 10 digits, got {P}")
    _prec = int(P)


@contextlib.contextmanager
def precision(P: int):
    """Temporarily set the working precision to ``P`` digits."""
    old = _prec
    set_prec(P)
    try:
        with mpmath.workdps(P):
            yield
    finally:
        set_prec(old)


def hp_function(fn):
    """Run ``fn`` at the configured working precision."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        with mpmath.workdps(_prec):
            return fn(*args, **kwargs)

    return wrapper


_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")
_DECIMAL_RE = re.compile(r"^\s*[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?\s*$")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or a finite decimal like ``"0.25"`` exactly."""
    m = _RATIONAL_RE.match(text)
    if m:
        den = int(m.group(2)) if m.group(2) is not None else 1
        if den == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return Fraction(int(m.group(1)), den)
    if _DECIMAL_RE.match(text):
        return Fraction(text.strip())
    raise ValueError(f"malformed rational {text!r}")


def rational_str(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def is_exact(x) -> bool:
    return isinstance(x, (Integral, Fraction))


def to_hp(x):
    """Promote ``x`` to an mpmath number with at most one rounding."""
    if isinstance(x, (mpmath.mpf, mpmath.mpc)):
        return x
    if isinstance(x, Integral):
        return mpmath.mpf(int(x))
    if isinstance(x, Fraction):
        prec = mpmath.mp.prec
        return mpmath.mpf(libmp.from_rational(x.numerator, x.denominator, prec, libmp.round_nearest))
    return mpmath.mpmathify(x)


def like(x, v):
    """Return ``v`` in the arithmetic of ``x`` (exact stays exact, HP promotes)."""
    if is_exact(x) and is_exact(v):
        return Fraction(v)
    return to_hp(v)


def hp_str(x, P: int | None = None) -> str:
    """Decimal string of ``x`` with ``P`` significant digits; exact zero is ``"0"``."""
    if is_exact(x):
        if x == 0:
            return "0"
        x = to_hp(x)
    if x == 0:
        return "0"
    return mpmath.nstr(x, P or _prec, strip_zeros=False)


def pochhammer(a, m: int):
    """Rising factorial ``a (a+1) ... (a+m-1)``; exact for exact ``a``."""
    if m < 0:
        raise ValueError("pochhammer index must be non-negative")
    r = Fraction(1) if is_exact(a) else to_hp(1)
    for i in range(m):
        r *= a + i
    return r


def factorial(n: int) -> int:
    if n < 0:
        raise ValueError(f"factorial of negative integer {n}")
    return pochhammer(1, n).numerator


def binom_general(a, k: int):
    """``a (a-1) ... (a-k+1) / k!`` for ``k >= 0`` and zero for ``k < 0``."""
    if k < 0:
        return Fraction(0) if is_exact(a) else to_hp(0)
    num = Fraction(1) if is_exact(a) else to_hp(1)
    for i in range(k):
        num *= a - i
    return num / factorial(k)


def _check_pole(x):
    if is_exact(x):
        if Fraction(x).denominator == 1 and x <= 0:
            raise PoleError(f"Gamma has a pole at {x}")
    elif mpmath.isint(x) and x <= 0:
        raise PoleError(f"Gamma has a pole at {x}")


@hp_function
def gamma_hp(x):
    _check_pole(x)
    return mpmath.gamma(to_hp(x))


@hp_function
def sqrt_hp(x):
    """Real square root at working precision; negative radicands raise."""
    if x < 0:
        raise NegativeRadicandError(f"negative radicand {x}")
    return mpmath.sqrt(to_hp(x))


@hp_function
def gamma_ratio(num, den):
    """``prod Gamma(num) / prod Gamma(den)``."""
    r = mpmath.mpf(1)
    for x in num:
        r *= gamma_hp(x)
    for x in den:
        r /= gamma_hp(x)
    return r


@hp_function
def gauss_jacobi(n: int, a, b):
    """Gauss–Jacobi nodes and weights for ``(1-x)^a (1+x)^b`` on [-1, 1].

    Golub–Welsch on the symmetric Jacobi matrix. The weights sum to
    ``2^(a+b+1) B(a+1, b+1)``.
    """
    if n < 1:
        raise ValueError("need at least one node")
    a = to_hp(a)
    b = to_hp(b)
    if a <= -1 or b <= -1:
        raise NumericDomainError("Jacobi weight exponents must exceed -1")
    T = mpmath.zeros(n, n)
    for k in range(n):
        s = 2 * k + a + b
        if k == 0:
            T[0, 0] = (b - a) / (a + b + 2)
        else:
            T[k, k] = (b * b - a * a) / (s * (s + 2))
        if k + 1 < n:
            j = k + 1
            sj = 2 * j + a + b
            if j == 1:
                beta2 = 4 * (1 + a) * (1 + b) / ((2 + a + b) ** 2 * (3 + a + b))
            else:
                beta2 = 4 * j * (j + a) * (j + b) * (j + a + b) / (sj**2 * (sj + 1) * (sj - 1))
            T[k, k + 1] = T[k + 1, k] = mpmath.sqrt(beta2)
    evals, evecs = mpmath.eigsy(T)
    mu0 = 2 ** (a + b + 1) * mpmath.beta(a + 1, b + 1)
    nodes = [evals[i] for i in range(n)]
    weights = [mu0 * evecs[0, i] ** 2 for i in range(n)]
    order = sorted(range(n), key=lambda i: nodes[i])
    return [nodes[i] for i in order], [weights[i] for i in order]
