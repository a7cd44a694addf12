"""Self-contained special-function kernel.

Pochhammer symbols, complex log-gamma, terminating and non-terminating
hypergeometric series, the Bessel series, Bernoulli polynomials, and the
Bernoulli-polynomial form of the asymptotic log-gamma expansion.

All series are written in plain Python arithmetic over whatever scalar type
is fed in (float, complex, ``fractions.Fraction``, numpy scalars), so exact
rational evaluation of terminating sums comes for free.  Non-terminating
series stop when the current term drops below ``EPS_SERIES`` times the
running partial-sum scale; a hard iteration cap raises ``DivergenceError``
instead of looping forever.  Logs and non-integer powers take principal
branches everywhere.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from typing import NamedTuple

EPS_SERIES = 1e-16
MAX_TERMS = 100_000
LOG_2PI = math.log(2.0 * math.pi)

# Re(z) threshold above which the Stirling/Bernoulli tail of log-gamma is
# accurate to full double precision with the 12 coefficients below.
_STIRLING_CUT = 16.0


class PoleError(ArithmeticError):
    """A gamma-type pole was hit (argument at a non-positive integer)."""


class DivergenceError(ArithmeticError):
    """A series failed its convergence criterion."""


def _check_finite(*values):
    for v in values:
        if isinstance(v, Fraction):
            continue
        c = complex(v)
        if not (math.isfinite(c.real) and math.isfinite(c.imag)):
            raise ValueError(f"non-finite argument: {v!r}")


def _as_nonpos_int(x):
    """Return x as a Python int if it is exactly a non-positive integer.

    Only exact representations qualify (ints, integral Fractions, floats
    with ``is_integer()``, complex with zero imaginary part); values that
    are merely close to an integer do not terminate a series.
    """
    if isinstance(x, bool):
        return None
    if isinstance(x, int):
        return x if x <= 0 else None
    if isinstance(x, Fraction):
        return int(x) if (x.denominator == 1 and x <= 0) else None
    if isinstance(x, float):
        return int(x) if (x.is_integer() and x <= 0.0) else None
    if isinstance(x, complex):
        if x.imag == 0.0:
            return _as_nonpos_int(x.real)
        return None
    try:  # numpy scalars
        c = complex(x)
    except TypeError:
        return None
    return _as_nonpos_int(c)


def pochhammer(a, m):
    """Rising factorial (a)_m = a (a+1) ... (a+m-1), with (a)_0 = 1.

    Evaluated as an explicit product so that a factor hitting zero gives an
    exact zero, and so that Fraction input stays exact.
    """
    if m < 0 or int(m) != m:
        raise ValueError("pochhammer order must be a non-negative integer")
    _check_finite(a)
    out = 1
    for k in range(int(m)):
        out = out * (a + k)
    return out


def _stirling_coefficients():
    # B_{2k} / (2k (2k-1)) for k = 1..12, exact then floated once.
    table = BernoulliTable(26)
    return [
        float(table.number(2 * k)) / (2 * k * (2 * k - 1)) for k in range(1, 13)
    ]


def log_gamma(z):
    """Principal branch of log Gamma(z) for complex z.

    Uses the Stirling series with Bernoulli-number coefficients once
    Re(z) >= 16, shifting smaller arguments up through the recurrence
    log Gamma(z) = log Gamma(z+1) - log z.  The recurrence preserves the
    principal branch on the cut plane C minus (-inf, 0].
    """
    _check_finite(z)
    w = complex(z)
    if w.imag == 0.0 and w.real <= 0.0 and w.real == int(w.real):
        raise PoleError(f"log_gamma pole at z = {w.real:g}")
    shift = 0.0 + 0.0j
    while w.real < _STIRLING_CUT:
        shift += cmath.log(w)
        w += 1.0
    value = (w - 0.5) * cmath.log(w) - w + 0.5 * LOG_2PI
    w2 = w * w
    zk = w
    for coeff in _STIRLING_COEFFS:
        value += coeff / zk
        zk *= w2
    return value - shift


def gauss_2f1(a, b, c, z):
    """Gauss hypergeometric series F(a, b; c; z).

    When a or b is exactly a non-positive integer the sum is the
    terminating polynomial (exactly N+1 terms for termination at -N) and is
    evaluated for any z, exactly so for rational input.  Otherwise the
    series is summed for |z| < 1 with term-ratio monitoring; |z| >= 1
    raises DivergenceError, a non-positive-integer c that is not rescued by
    earlier termination raises PoleError.
    """
    _check_finite(a, b, c, z)
    stop_a = _as_nonpos_int(a)
    stop_b = _as_nonpos_int(b)
    n_stop = None
    for s in (stop_a, stop_b):
        if s is not None:
            n_stop = -s if n_stop is None else min(n_stop, -s)
    c_pole = _as_nonpos_int(c)
    if c_pole is not None and (n_stop is None or n_stop > -c_pole):
        raise PoleError(f"gauss_2f1 pole from c = {c}")
    if n_stop is None and abs(complex(z)) >= 1.0:
        raise DivergenceError(f"gauss_2f1 series diverges at |z| = {abs(complex(z)):g}")

    term = 1
    total = term
    scale = 1.0
    m = 0
    while True:
        if n_stop is not None and m == n_stop:
            return total
        term = term * (a + m) * (b + m) * z / ((c + m) * (m + 1))
        total = total + term
        m += 1
        if n_stop is None:
            mag = abs(complex(term))
            scale = max(scale, abs(complex(total)))
            if m >= 2 and mag <= EPS_SERIES * scale:
                return total
            if m >= MAX_TERMS:
                raise DivergenceError("gauss_2f1 series hit the iteration cap")


def kummer_1f1(a, c, z):
    """Confluent hypergeometric series phi(a; c; z).

    Exact polynomial when a is a non-positive integer; otherwise the entire
    series is summed with the standard stopping rule.
    """
    _check_finite(a, c, z)
    stop_a = _as_nonpos_int(a)
    n_stop = None if stop_a is None else -stop_a
    c_pole = _as_nonpos_int(c)
    if c_pole is not None and (n_stop is None or n_stop > -c_pole):
        raise PoleError(f"kummer_1f1 pole from c = {c}")

    term = 1
    total = term
    scale = 1.0
    m = 0
    while True:
        if n_stop is not None and m == n_stop:
            return total
        term = term * (a + m) * z / ((c + m) * (m + 1))
        total = total + term
        m += 1
        if n_stop is None:
            mag = abs(complex(term))
            scale = max(scale, abs(complex(total)))
            if m >= 2 and mag <= EPS_SERIES * scale:
                return total
            if m >= MAX_TERMS:
                raise DivergenceError("kummer_1f1 series hit the iteration cap")


class AsymptoticValue(NamedTuple):
    value: complex
    error_estimate: float


def tricomi_psi_asymptotic(a, c, z, terms):
    """Truncated large-argument expansion of the Tricomi function psi(a, c; z).

    Sums the stated number of terms of
    sum_m (-1)^m (a)_m (a-c+1)_m / m! * z^(-a-m)
    and reports the magnitude of the first dropped term as an error
    estimate.  The caller is responsible for |z| being large enough.
    """
    if terms < 1 or int(terms) != terms:
        raise ValueError("terms must be a positive integer")
    _check_finite(a, c, z)
    a_c = complex(a)
    z_c = complex(z)
    term = cmath.exp(-a_c * cmath.log(z_c))
    total = 0.0 + 0.0j
    for m in range(int(terms)):
        total += term
        term = term * (-1) * (a_c + m) * (a_c - complex(c) + 1 + m) / ((m + 1) * z_c)
    return AsymptoticValue(total, abs(term))


def bessel_j(nu, z):
    """Bessel function J_nu(z) by direct series summation.

    Negative integer orders use J_{-k} = (-1)^k J_k; the z^nu prefactor
    takes the principal branch for non-integer nu.
    """
    _check_finite(nu, z)
    k = _as_nonpos_int(nu)
    if k is not None and k < 0:
        return (-1) ** (-k) * bessel_j(-k, z)
    z_c = complex(z)
    nu_c = complex(nu)
    if z_c == 0:
        if nu_c == 0:
            return 1.0 + 0.0j
        if nu_c.real > 0:
            return 0.0 + 0.0j
        raise PoleError("bessel_j singular at z = 0 for Re(nu) <= 0")
    half = z_c / 2.0
    prefactor = cmath.exp(nu_c * cmath.log(half))
    try:
        term = cmath.exp(-log_gamma(nu_c + 1))
    except PoleError as exc:  # non-integer handling above covers cancelling poles
        raise PoleError("bessel_j hit a non-cancelling gamma pole") from exc
    total = 0.0 + 0.0j
    scale = 1.0
    m = 0
    while True:
        total += term
        term = term * (-(half * half)) / ((m + 1) * (nu_c + m + 1))
        m += 1
        mag = abs(term)
        scale = max(scale, abs(total))
        if m >= 2 and mag <= EPS_SERIES * scale:
            break
        if m >= MAX_TERMS:
            raise DivergenceError("bessel_j series hit the iteration cap")
    return prefactor * total


class BernoulliTable:
    """Exact coefficient table of the Bernoulli polynomials B_0 .. B_max.

    Row n holds the Fraction coefficients of x^0 .. x^n in B_n(x), built
    from the Bernoulli numbers through B_n(x) = sum_k C(n,k) B_{n-k} x^k.
    The table is immutable after construction.
    """

    def __init__(self, max_degree: int = 32):
        if max_degree < 0:
            raise ValueError("max_degree must be non-negative")
        self._max_degree = max_degree
        numbers = [Fraction(1)]
        for m in range(1, max_degree + 1):
            acc = Fraction(0)
            for k in range(m):
                acc += math.comb(m + 1, k) * numbers[k]
            numbers.append(-acc / (m + 1))
        self._numbers = tuple(numbers)
        rows = []
        for n in range(max_degree + 1):
            rows.append(
                tuple(math.comb(n, k) * numbers[n - k] for k in range(n + 1))
            )
        self._rows = tuple(rows)

    @property
    def max_degree(self) -> int:
        return self._max_degree

    def number(self, n: int) -> Fraction:
        """Bernoulli number B_n (= B_n(0))."""
        self._check(n)
        return self._numbers[n]

    def coefficients(self, n: int):
        """Fraction coefficients of x^0 .. x^n in B_n(x)."""
        self._check(n)
        return self._rows[n]

    def _check(self, n: int):
        if n < 0 or n > self._max_degree:
            raise ValueError(
                f"Bernoulli degree {n} outside table range 0..{self._max_degree}"
            )


BERNOULLI = BernoulliTable(32)
_STIRLING_COEFFS = _stirling_coefficients()


def bernoulli_poly(n, a, table: BernoulliTable = BERNOULLI):
    """Bernoulli polynomial B_n(a), exact for rational a."""
    _check_finite(a)
    coeffs = table.coefficients(n)
    out = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        out = out * a + c
    return out


def log_gamma_asymptotic(z, a, terms, table: BernoulliTable = BERNOULLI):
    """Large-z expansion of log Gamma(z + a) in Bernoulli polynomials:

    (z + a - 1/2) log z - z + log(2 pi)/2
        + sum_{n=1}^{terms} (-1)^(n+1) B_{n+1}(a) / (n (n+1)) * z^(-n).

    The alternating sign is invisible at a = 0 and a = 1/2 (odd-degree
    Bernoulli values vanish there) but required for general complex a, as
    the two-path Gamma-ratio comparison confirms.  ``terms`` may be zero
    (plain Stirling leading form); the highest Bernoulli degree used is
    terms + 1, which must lie inside the table.
    """
    if terms < 0 or int(terms) != terms:
        raise ValueError("terms must be a non-negative integer")
    if terms + 1 > table.max_degree:
        raise ValueError("requested terms exceed the Bernoulli table range")
    _check_finite(z, a)
    z_c = complex(z)
    a_c = complex(a)
    value = (z_c + a_c - 0.5) * cmath.log(z_c) - z_c + 0.5 * LOG_2PI
    zk = z_c
    for n in range(1, int(terms) + 1):
        sign = 1.0 if n % 2 else -1.0
        value += sign * complex(bernoulli_poly(n + 1, a_c, table)) / (n * (n + 1)) / zk
        zk *= z_c
    return value
