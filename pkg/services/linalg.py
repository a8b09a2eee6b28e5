"""Exact linear algebra over the rationals or a prime field.

Matrices are sympy ``DomainMatrix`` objects over ``QQ`` or ``GF(p)``. Every
helper here tolerates zero-sized shapes, which show up constantly once
modules vanish at some vertices.
"""
import logging
import random
import re
from typing import List, NamedTuple, Optional, Sequence, Tuple

from sympy import Poly, Rational, Symbol, isprime
from sympy.polys.domains import GF, QQ
from sympy.polys.matrices import DomainMatrix

from services.errors import InputError

logger = logging.getLogger(__name__)

FIELD_RE = re.compile(r"^\s*(?:(Q|QQ)|(?:GF|F)\(?\s*(\d+)\s*\)?)\s*$", re.IGNORECASE)

_X = Symbol("x")


class LinearSolution(NamedTuple):
    particular: List
    kernel: List[List]


def make_field(label: str = "Q"):
    """Parse ``Q`` or ``GF(p)`` into a sympy domain."""
    match = FIELD_RE.match(label or "Q")
    if not match:
        raise InputError(f"unknown field '{label}', expected Q or GF(p)")
    if match.group(1):
        return QQ
    p = int(match.group(2))
    if not isprime(p):
        raise InputError(f"GF({p}): {p} is not prime")
    return GF(p, symmetric=False)


def field_label(K) -> str:
    if K.is_QQ:
        return "Q"
    return f"GF({K.characteristic()})"


def scalar(value, K):
    """Convert an int, fraction string or sympy rational into the field."""
    try:
        q = Rational(value)
    except (TypeError, ValueError) as exc:
        raise InputError(f"not an exact scalar: {value!r}") from exc
    den = K.convert(int(q.q))
    if K.is_zero(den):
        raise InputError(f"denominator of {value} vanishes in {field_label(K)}")
    return K.quo(K.convert(int(q.p)), den)


def format_scalar(x, K) -> str:
    return str(K.to_sympy(x))


def zeros(rows: int, cols: int, K) -> DomainMatrix:
    return DomainMatrix([[K.zero] * cols for _ in range(rows)], (rows, cols), K)


def identity(n: int, K) -> DomainMatrix:
    return DomainMatrix([[K.one if i == j else K.zero for j in range(n)] for i in range(n)], (n, n), K)


def scalar_identity(c, n: int, K) -> DomainMatrix:
    return DomainMatrix([[c if i == j else K.zero for j in range(n)] for i in range(n)], (n, n), K)


def from_rows(rows: Sequence[Sequence], K, cols: Optional[int] = None, convert: bool = True) -> DomainMatrix:
    rows = [list(r) for r in rows]
    if cols is None:
        cols = len(rows[0]) if rows else 0
    for r in rows:
        if len(r) != cols:
            raise InputError(f"ragged matrix: expected {cols} columns, got {len(r)}")
    if convert:
        rows = [[scalar(x, K) for x in r] for r in rows]
    return DomainMatrix(rows, (len(rows), cols), K)


def from_columns(columns: Sequence[Sequence], n: int, K) -> DomainMatrix:
    rows = [[col[i] for col in columns] for i in range(n)]
    return DomainMatrix(rows, (n, len(columns)), K)


def to_rows(M: DomainMatrix) -> List[List]:
    rows, cols = M.shape
    if rows == 0:
        return []
    if cols == 0:
        return [[] for _ in range(rows)]
    return [list(r) for r in M.to_list()]


def columns(M: DomainMatrix) -> List[List]:
    rows, cols = M.shape
    data = to_rows(M)
    return [[data[i][j] for i in range(rows)] for j in range(cols)]


def matmul(A: DomainMatrix, B: DomainMatrix) -> DomainMatrix:
    if A.shape[1] != B.shape[0]:
        raise InputError(f"dimension mismatch in product: {A.shape} x {B.shape}")
    if 0 in (A.shape[0], A.shape[1], B.shape[1]):
        return zeros(A.shape[0], B.shape[1], A.domain)
    return A.matmul(B)


def add(A: DomainMatrix, B: DomainMatrix) -> DomainMatrix:
    if A.shape != B.shape:
        raise InputError(f"dimension mismatch in sum: {A.shape} + {B.shape}")
    if 0 in A.shape:
        return A
    return A + B


def sub(A: DomainMatrix, B: DomainMatrix) -> DomainMatrix:
    if A.shape != B.shape:
        raise InputError(f"dimension mismatch in difference: {A.shape} - {B.shape}")
    if 0 in A.shape:
        return A
    return A - B


def scale(A: DomainMatrix, c) -> DomainMatrix:
    K = A.domain
    return DomainMatrix([[c * x for x in r] for r in to_rows(A)], A.shape, K)


def transpose(A: DomainMatrix) -> DomainMatrix:
    rows, cols = A.shape
    data = to_rows(A)
    return DomainMatrix([[data[i][j] for i in range(rows)] for j in range(cols)], (cols, rows), A.domain)


def hstack(mats: Sequence[DomainMatrix], rows: int, K) -> DomainMatrix:
    out = [[] for _ in range(rows)]
    total = 0
    for M in mats:
        if M.shape[0] != rows:
            raise InputError(f"hstack: expected {rows} rows, got {M.shape[0]}")
        for i, r in enumerate(to_rows(M)):
            out[i].extend(r)
        total += M.shape[1]
    return DomainMatrix(out, (rows, total), K)


def vstack(mats: Sequence[DomainMatrix], cols: int, K) -> DomainMatrix:
    out = []
    for M in mats:
        if M.shape[1] != cols:
            raise InputError(f"vstack: expected {cols} columns, got {M.shape[1]}")
        out.extend(to_rows(M))
    return DomainMatrix(out, (len(out), cols), K)


def block_diagonal(mats: Sequence[DomainMatrix], K) -> DomainMatrix:
    rows = sum(M.shape[0] for M in mats)
    cols = sum(M.shape[1] for M in mats)
    out = [[K.zero] * cols for _ in range(rows)]
    r0 = c0 = 0
    for M in mats:
        for i, r in enumerate(to_rows(M)):
            out[r0 + i][c0:c0 + len(r)] = r
        r0 += M.shape[0]
        c0 += M.shape[1]
    return DomainMatrix(out, (rows, cols), K)


def submatrix(M: DomainMatrix, row_idx: Sequence[int], col_idx: Sequence[int]) -> DomainMatrix:
    data = to_rows(M)
    return DomainMatrix([[data[i][j] for j in col_idx] for i in row_idx], (len(row_idx), len(col_idx)), M.domain)


def is_zero(M: DomainMatrix) -> bool:
    K = M.domain
    return all(K.is_zero(x) for r in to_rows(M) for x in r)


def equal(A: DomainMatrix, B: DomainMatrix) -> bool:
    return A.shape == B.shape and to_rows(A) == to_rows(B)


def rref(M: DomainMatrix) -> Tuple[DomainMatrix, Tuple[int, ...]]:
    """Reduced row echelon form with unit pivots."""
    if 0 in M.shape:
        return M, ()
    R, pivots = M.rref()
    return R, tuple(pivots)


def rank(M: DomainMatrix) -> int:
    return len(rref(M)[1])


def kernel_with_free(M: DomainMatrix) -> Tuple[List[List], List[int]]:
    """Kernel basis plus the free columns; basis vector k is 1 at free[k], 0 at the other free columns."""
    K = M.domain
    n = M.shape[1]
    R, pivots = rref(M)
    data = to_rows(R)
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for f in free:
        v = [K.zero] * n
        v[f] = K.one
        for i, p in enumerate(pivots):
            v[p] = -data[i][f]
        basis.append(v)
    return basis, free


def kernel(M: DomainMatrix) -> DomainMatrix:
    """Columns form a basis of the null space."""
    basis, _ = kernel_with_free(M)
    return from_columns(basis, M.shape[1], M.domain)


def image(M: DomainMatrix) -> DomainMatrix:
    """Columns form a basis of the column space (the pivot columns of M)."""
    _, pivots = rref(M)
    return submatrix(M, range(M.shape[0]), pivots)


def cokernel_projection(M: DomainMatrix) -> DomainMatrix:
    """A surjection Q with ker Q = im M; its rows span the left kernel of M."""
    left = kernel_with_free(transpose(M))[0]
    return DomainMatrix([list(v) for v in left], (len(left), M.shape[0]), M.domain)


def solve_linear(A: DomainMatrix, b: Sequence) -> Optional[LinearSolution]:
    K = A.domain
    rows, cols = A.shape
    if len(b) != rows:
        raise InputError(f"dimension mismatch: {rows} equations, right-hand side of length {len(b)}")
    kern = kernel_with_free(A)[0]
    if rows == 0:
        return LinearSolution([K.zero] * cols, kern)
    aug = hstack([A, from_columns([list(b)], rows, K)], rows, K)
    R, pivots = rref(aug)
    if cols in pivots:
        return None
    data = to_rows(R)
    x = [K.zero] * cols
    for i, p in enumerate(pivots):
        x[p] = data[i][cols]
    return LinearSolution(x, kern)


def in_span(vectors: Sequence[Sequence], v: Sequence, n: int, K) -> bool:
    if not vectors:
        return all(K.is_zero(x) for x in v)
    return solve_linear(from_columns(vectors, n, K), v) is not None


def extend_to_basis(U: DomainMatrix) -> List[int]:
    """Indices of standard basis vectors completing the columns of U to a basis."""
    n, k = U.shape
    K = U.domain
    aug = hstack([U, identity(n, K)], n, K)
    _, pivots = rref(aug)
    return [p - k for p in pivots if p >= k]


def left_inverse(U: DomainMatrix) -> DomainMatrix:
    """L with L·U = 1 for U of full column rank."""
    n, k = U.shape
    K = U.domain
    if k == 0:
        return zeros(0, n, K)
    _, rows = rref(transpose(U))
    if len(rows) != k:
        raise InputError("left_inverse: columns are linearly dependent")
    square_inv = submatrix(U, rows, range(k)).inv()
    inv_rows = to_rows(square_inv)
    out = [[K.zero] * n for _ in range(k)]
    for j, r in enumerate(rows):
        for i in range(k):
            out[i][r] = inv_rows[i][j]
    return DomainMatrix(out, (k, n), K)


class Reducer:
    """Reduction modulo a subspace of K^n: coordinates of the quotient are the non-pivot entries."""

    def __init__(self, spanning: Sequence[Sequence], n: int, K):
        self.n = n
        self.K = K
        if spanning:
            R, pivots = rref(DomainMatrix([list(v) for v in spanning], (len(spanning), n), K))
            self.rows = to_rows(R)[:len(pivots)]
        else:
            pivots = ()
            self.rows = []
        self.pivots = tuple(pivots)
        self.free = [j for j in range(n) if j not in self.pivots]

    @property
    def quotient_dim(self) -> int:
        return len(self.free)

    def reduce(self, v: Sequence) -> List:
        v = list(v)
        for row, p in zip(self.rows, self.pivots):
            c = v[p]
            if not self.K.is_zero(c):
                v = [a - c * b for a, b in zip(v, row)]
        return v

    def coordinates(self, v: Sequence) -> List:
        r = self.reduce(v)
        return [r[j] for j in self.free]

    def contains(self, v: Sequence) -> bool:
        return all(self.K.is_zero(x) for x in self.reduce(v))


_SEED = 20240917


def set_seed(seed: int):
    global _SEED
    _SEED = int(seed)


def get_seed() -> int:
    return _SEED


def rng_for(*parts) -> random.Random:
    """A generator seeded from the session seed and a context string, independent of call order."""
    return random.Random(":".join(str(p) for p in (_SEED,) + parts))


def random_scalar(rng: random.Random, K, bound: int = 1000):
    return K.convert(rng.randint(-bound, bound))


def charpoly(M: DomainMatrix) -> Poly:
    K = M.domain
    if M.shape[0] == 0:
        return Poly(1, _X, domain=K)
    coeffs = M.charpoly()
    return Poly([K.to_sympy(c) for c in coeffs], _X, domain=K)


def polynomial_at(poly: Poly, M: DomainMatrix) -> DomainMatrix:
    """Horner evaluation of a polynomial at a square matrix."""
    K = M.domain
    n = M.shape[0]
    result = zeros(n, n, K)
    for c in poly.all_coeffs():
        result = add(matmul(result, M), scalar_identity(K.from_sympy(c), n, K))
    return result


def factor_polynomial(poly: Poly) -> List[Tuple[Poly, int]]:
    _, factors = poly.factor_list()
    return [(f, e) for f, e in factors if f.degree() > 0]
