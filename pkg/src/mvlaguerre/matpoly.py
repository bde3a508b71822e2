"""Polynomials with square rational-matrix coefficients.

Constant matrices are numpy object arrays of exact rationals. Helpers that
take matrix positions (:func:`elementary`, :func:`entry`) use 1-based indices
``k = 1..N``; everything else is plain numpy indexing.

The adjoint of a matrix polynomial is realised as the coefficientwise
transpose. This is only correct because all parameters are real rationals;
complex data would need conjugation as well.
"""

from __future__ import annotations

from math import factorial as _ifactorial
from typing import Iterable, Sequence

import numpy as np

from ._backend import ONE, RATIONAL_TYPES, ZERO, Q

# ---------------------------------------------------------------------------
# constant matrices


def as_matrix(rows) -> np.ndarray:
    """Convert nested sequences (ints, rationals, ``"p/q"`` strings) to a matrix."""
    arr = np.asarray(rows, dtype=object)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {arr.shape}")
    out = np.empty(arr.shape, dtype=object)
    for idx, v in np.ndenumerate(arr):
        out[idx] = Q(v)
    return out


def zeros(n: int) -> np.ndarray:
    out = np.empty((n, n), dtype=object)
    out.fill(ZERO)
    return out


def identity(n: int) -> np.ndarray:
    out = zeros(n)
    for k in range(n):
        out[k, k] = ONE
    return out


def diag(values: Iterable) -> np.ndarray:
    values = [Q(v) for v in values]
    out = zeros(len(values))
    for k, v in enumerate(values):
        out[k, k] = v
    return out


def elementary(n: int, k: int, l: int) -> np.ndarray:
    """``E_{k,l}`` with 1-based ``k, l``."""
    out = zeros(n)
    out[k - 1, l - 1] = ONE
    return out


def entry(m: np.ndarray, k: int, l: int):
    """Entry ``(k, l)`` of ``m`` with 1-based indices."""
    return m[k - 1, l - 1]


def scale(m: np.ndarray, c) -> np.ndarray:
    c = Q(c)
    out = np.empty(m.shape, dtype=object)
    for idx, v in np.ndenumerate(m):
        out[idx] = v * c
    return out


def is_zero(m: np.ndarray) -> bool:
    return all(v == 0 for v in m.flat)


def mat_equal(a: np.ndarray, b: np.ndarray) -> bool:
    return a.shape == b.shape and all(x == y for x, y in zip(a.flat, b.flat))


def mat_power(m: np.ndarray, k: int) -> np.ndarray:
    if k < 0:
        return mat_power(mat_inv(m), -k)
    out = identity(m.shape[0])
    for _ in range(k):
        out = out @ m
    return out


def to_float(m: np.ndarray) -> np.ndarray:
    return np.array([[float(v) for v in row] for row in m], dtype=float)


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a


# ---------------------------------------------------------------------------
# exact linear algebra


class SingularMatrixError(ArithmeticError):
    pass


def rref(rows: list[list]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form over the rationals.

    Returns the reduced rows and the list of pivot columns. ``rows`` is
    copied, not modified.
    """
    a = [list(r) for r in rows]
    if not a:
        return a, []
    n_rows, n_cols = len(a), len(a[0])
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        p = next((i for i in range(r, n_rows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = ONE / a[r][c]
        a[r] = [v * inv for v in a[r]]
        for i in range(n_rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                ai, ar = a[i], a[r]
                a[i] = [x - f * y for x, y in zip(ai, ar)]
        pivots.append(c)
        r += 1
    return a, pivots


def solve_linear(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Solve ``a @ X = b`` for square nonsingular ``a`` (``b`` may be 2-D)."""
    n = a.shape[0]
    b2 = b.reshape(n, -1)
    aug = [list(a[i]) + list(b2[i]) for i in range(n)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(pivots) > n:
        raise SingularMatrixError("matrix is singular")
    sol = np.array([row[n:] for row in red], dtype=object)
    return sol.reshape(b.shape)


def mat_inv(m: np.ndarray) -> np.ndarray:
    return solve_linear(m, identity(m.shape[0]))


def det(m: np.ndarray):
    a = [list(r) for r in m]
    n = len(a)
    out = ONE
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            return ZERO
        if p != c:
            a[c], a[p] = a[p], a[c]
            out = -out
        out *= a[c][c]
        inv = ONE / a[c][c]
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return out


def leading_minors(m: np.ndarray) -> list:
    return [det(m[:k, :k]) for k in range(1, m.shape[0] + 1)]


def neumann_inverse(m: np.ndarray) -> np.ndarray:
    """``(I + m)^{-1}`` for nilpotent ``m`` as the terminating series of ``(-m)^k``."""
    n = m.shape[0]
    out, term = identity(n), identity(n)
    for _ in range(n):
        term = -(term @ m)
        out = out + term
    if not is_zero(term @ m):
        raise ValueError("matrix is not nilpotent")
    return out


# ---------------------------------------------------------------------------
# matrix polynomials


class MatPoly:
    """Polynomial ``sum_k C_k x^k`` with ``N x N`` rational coefficients.

    ``@`` is the (non-commutative) ring product; constant matrices on either
    side of ``@`` are promoted. ``*`` only scales by a rational.
    """

    __slots__ = ("size", "coeffs")
    __array_ufunc__ = None  # let numpy defer to our reflected operators

    def __init__(self, coeffs: Sequence[np.ndarray], size: int | None = None):
        cs = list(coeffs)
        if size is None:
            if not cs:
                raise ValueError("size is required for an empty coefficient list")
            size = cs[0].shape[0]
        for c in cs:
            if c.shape != (size, size):
                raise ValueError(f"coefficient shape {c.shape} != {(size, size)}")
        while cs and is_zero(cs[-1]):
            cs.pop()
        for c in cs:
            c.flags.writeable = False
        self.size = size
        self.coeffs = tuple(cs)

    # constructors -----------------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> MatPoly:
        return cls([], n)

    @classmethod
    def constant(cls, m: np.ndarray) -> MatPoly:
        return cls([m.copy()])

    @classmethod
    def identity(cls, n: int) -> MatPoly:
        return cls([identity(n)])

    @classmethod
    def monomial(cls, k: int, m: np.ndarray) -> MatPoly:
        n = m.shape[0]
        return cls([zeros(n)] * k + [m.copy()])

    @classmethod
    def x(cls, n: int) -> MatPoly:
        return cls.monomial(1, identity(n))

    @classmethod
    def from_entries(cls, n: int, entries) -> MatPoly:
        """Build from a callable ``entries(i, j) -> RatPoly`` with 0-based indices."""
        table = [[entries(i, j) for j in range(n)] for i in range(n)]
        deg = max((p.degree for row in table for p in row), default=-1)
        cs = []
        for k in range(deg + 1):
            c = zeros(n)
            for i in range(n):
                for j in range(n):
                    c[i, j] = table[i][j].coeff(k)
            cs.append(c)
        return cls(cs, n)

    # basic properties ---------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree; ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def coeff(self, k: int) -> np.ndarray:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return zeros(self.size)

    def leading(self) -> np.ndarray:
        return self.coeff(self.degree)

    def is_zero(self) -> bool:
        return not self.coeffs

    def valuation(self) -> int | None:
        """Lowest power with a nonzero coefficient (``None`` for zero)."""
        for k, c in enumerate(self.coeffs):
            if not is_zero(c):
                return k
        return None

    def __call__(self, x) -> np.ndarray:
        if isinstance(x, float):
            out = np.zeros((self.size, self.size))
            for c in reversed(self.coeffs):
                out = out * x + to_float(c)
            return out
        x = Q(x)
        out = zeros(self.size)
        for c in reversed(self.coeffs):
            out = scale(out, x) + c
        return out

    # ring operations ----------------------------------------------------------

    def _check(self, other: MatPoly):
        if other.size != self.size:
            raise ValueError(f"size mismatch: {self.size} vs {other.size}")

    @staticmethod
    def _promote(other, n) -> MatPoly | None:
        if isinstance(other, MatPoly):
            return other
        if isinstance(other, np.ndarray):
            return MatPoly.constant(other)
        if isinstance(other, (int, np.integer, *RATIONAL_TYPES)):
            return MatPoly.constant(scale(identity(n), other))
        return None

    def __add__(self, other) -> MatPoly:
        other = self._promote(other, self.size)
        if other is None:
            return NotImplemented
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return MatPoly([self.coeff(k) + other.coeff(k) for k in range(n)], self.size)

    __radd__ = __add__

    def __neg__(self) -> MatPoly:
        return MatPoly([-c for c in self.coeffs], self.size)

    def __sub__(self, other) -> MatPoly:
        other = self._promote(other, self.size)
        return NotImplemented if other is None else self + (-other)

    def __rsub__(self, other) -> MatPoly:
        other = self._promote(other, self.size)
        return NotImplemented if other is None else other - self

    def __matmul__(self, other) -> MatPoly:
        other = self._promote(other, self.size)
        if other is None:
            return NotImplemented
        self._check(other)
        if self.is_zero() or other.is_zero():
            return MatPoly.zero(self.size)
        out = [zeros(self.size) for _ in range(len(self.coeffs) + len(other.coeffs) - 1)]
        for i, a in enumerate(self.coeffs):
            if is_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a @ b
        return MatPoly(out, self.size)

    def __rmatmul__(self, other) -> MatPoly:
        other = self._promote(other, self.size)
        return NotImplemented if other is None else other @ self

    def __mul__(self, c) -> MatPoly:
        if isinstance(c, (MatPoly, np.ndarray)):
            raise TypeError("use @ for matrix products; * scales by a rational")
        return MatPoly([scale(m, c) for m in self.coeffs], self.size)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, MatPoly):
            if isinstance(other, np.ndarray):
                other = MatPoly.constant(other)
            else:
                return NotImplemented
        return (
            self.size == other.size
            and len(self.coeffs) == len(other.coeffs)
            and all(mat_equal(a, b) for a, b in zip(self.coeffs, other.coeffs))
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"MatPoly(size={self.size}, degree={self.degree})"

    # calculus and structure ---------------------------------------------------

    def derivative(self, times: int = 1) -> MatPoly:
        out = self
        for _ in range(times):
            out = MatPoly([scale(c, k) for k, c in enumerate(out.coeffs) if k], self.size)
        return out

    def transpose(self) -> MatPoly:
        return MatPoly([c.T.copy() for c in self.coeffs], self.size)

    @property
    def T(self) -> MatPoly:
        return self.transpose()

    def shift(self, k: int) -> MatPoly:
        """Multiply by ``x^k``."""
        if self.is_zero():
            return self
        return MatPoly([zeros(self.size)] * k + list(self.coeffs), self.size)

    def divide_x(self, k: int = 1) -> MatPoly:
        """Exact division by ``x^k``; raises if not divisible."""
        v = self.valuation()
        if v is not None and v < k:
            raise ArithmeticError(f"polynomial is not divisible by x^{k}")
        return MatPoly(list(self.coeffs[k:]), self.size)

    def substitute_scaled(self, s) -> MatPoly:
        """Return ``P(s x)``."""
        s = Q(s)
        return MatPoly([scale(c, s**k) for k, c in enumerate(self.coeffs)], self.size)

    def map_entries(self, f) -> MatPoly:
        return MatPoly([f(c) for c in self.coeffs], self.size)


def derivative(p: MatPoly) -> MatPoly:
    return p.derivative()


def transpose_poly(p: MatPoly) -> MatPoly:
    return p.transpose()


def nilpotent_exp(a: np.ndarray, negate: bool = False) -> MatPoly:
    """``exp(+/- x a)`` for nilpotent ``a`` as a finite matrix polynomial."""
    n = a.shape[0]
    powers = [identity(n)]
    for _ in range(n):
        powers.append(powers[-1] @ a)
    if not is_zero(powers[n]):
        raise ValueError("matrix is not nilpotent")
    sign = -1 if negate else 1
    return MatPoly([scale(powers[k], Q(sign**k, _ifactorial(k))) for k in range(n)], n)


def unipotent_inverse(p: MatPoly) -> MatPoly:
    """Inverse of a unipotent lower triangular matrix polynomial.

    Forward substitution on ``P X = I``: column by column, each
    subdiagonal entry is minus a polynomial combination of the entries above.
    """
    n = p.size
    if any(p.coeff(0)[i, i] != 1 for i in range(n)):
        raise ValueError("not unipotent")
    for k, c in enumerate(p.coeffs):
        if k and any(c[i, i] != 0 for i in range(n)):
            raise ValueError("not unipotent")
        if any(c[i, j] != 0 for i in range(n) for j in range(i + 1, n)):
            raise ValueError("not lower triangular")
    from .scalar import RatPoly

    ent = [[RatPoly(c[i, j] for c in p.coeffs) for j in range(n)] for i in range(n)]
    inv = [[RatPoly() for _ in range(n)] for _ in range(n)]
    for j in range(n):
        inv[j][j] = RatPoly.constant(1)
        for i in range(j + 1, n):
            acc = RatPoly()
            for k in range(j, i):
                acc = acc + ent[i][k] * inv[k][j]
            inv[i][j] = -acc
    return MatPoly.from_entries(n, lambda i, j: inv[i][j])


def matrix_pochhammer(x: MatPoly, k: int) -> MatPoly:
    """``X (X+1) ... (X+k-1)``, multiplied left to right; ``I`` for ``k == 0``."""
    out = MatPoly.identity(x.size)
    for i in range(k):
        out = out @ (x + i)
    return out


class NoUniqueSolution(ArithmeticError):
    pass


def solve_right_linear(q: MatPoly, r: MatPoly, deg_bound: int) -> MatPoly:
    """Find the unique ``P`` with ``deg P <= deg_bound`` and ``P @ q == r``.

    Coefficients are matched power by power; all rows of ``P`` share one
    coefficient matrix, so the system is reduced once for ``N`` right-hand
    sides. Raises :class:`NoUniqueSolution` when the system is inconsistent
    or underdetermined.
    """
    n = q.size
    if r.size != n:
        raise ValueError("size mismatch")
    n_unknown = n * (deg_bound + 1)
    top = max(deg_bound + max(q.degree, 0), r.degree)
    # row vector p = [p_0 .. p_d]; (p @ q)_t = sum_a p_a q_{t-a}
    # transpose: sum_a q_{t-a}^T p_a^T = r_t^T  -> system rows indexed by (t, col)
    rows = []
    for t in range(top + 1):
        for col in range(n):
            row = [ZERO] * n_unknown
            for a in range(deg_bound + 1):
                qa = q.coeff(t - a) if t - a >= 0 else None
                if qa is None:
                    continue
                for m in range(n):
                    row[a * n + m] = qa[m, col]
            rhs = [r.coeff(t)[i, col] for i in range(n)]
            rows.append(row + rhs)
    red, pivots = rref(rows)
    if any(p >= n_unknown for p in pivots):
        raise NoUniqueSolution("no polynomial solution within the degree bound")
    if len(pivots) < n_unknown:
        raise NoUniqueSolution("solution is not unique within the degree bound")
    sol = [[red[k][n_unknown + i] for i in range(n)] for k in range(n_unknown)]
    coeffs = []
    for a in range(deg_bound + 1):
        c = zeros(n)
        for m in range(n):
            for i in range(n):
                c[i, m] = sol[a * n + m][i]
        coeffs.append(c)
    return MatPoly(coeffs, n)
