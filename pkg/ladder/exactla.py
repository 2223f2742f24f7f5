"""
Exact dense linear algebra over the rationals and prime fields.

Scalars are `fractions.Fraction` over Q and `int` in `range(p)` over F_p.
Matrices are immutable and hashable; elimination, rank, determinants and
inverses run on sympy's `DomainMatrix` over `QQ` or `GF(p)`. Subspaces of
K^n are represented by a basis matrix whose columns span them;
`column_echelon` returns the canonical such basis, so two subspaces are equal
exactly when their canonical bases are.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations, product
import random
from typing import Any, Iterator, List, NamedTuple, Optional, Sequence, Tuple, Union

from sympy import isprime
from sympy.polys.domains import GF
from sympy.polys.domains import QQ as RATIONALS
from sympy.polys.domains.domain import Domain
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMNonInvertibleMatrixError

from ladder.error import raisef, ShapeError, ValidationError
from ladder.panic import invariant

Scalar = Union[int, Fraction]

MAX_PRIME = 2**16

SingularMatrixError = ValidationError.from_string("matrix is singular")


@lru_cache(maxsize=None)
def _domain(p: int) -> Domain:
    return GF(p) if p else RATIONALS


@dataclass(frozen=True)
class Field:
    """
    The rationals (p = 0) or the prime field F_p.
    """

    p: int = 0

    def __post_init__(self) -> None:
        if self.p != 0 and (self.p > MAX_PRIME or not isprime(self.p)):
            raisef(
                ValidationError,
                "field characteristic {} is not a prime <= 2^16",
                self.p,
            )

    @classmethod
    def rationals(cls) -> "Field":
        return cls(0)

    @classmethod
    def prime(cls, p: int) -> "Field":
        return cls(p)

    @property
    def is_finite(self) -> bool:
        return self.p != 0

    @property
    def domain(self) -> Domain:
        """
        The sympy domain the matrices of this field are reduced over.
        """
        return _domain(self.p)

    @property
    def zero(self) -> Scalar:
        return 0 if self.p else Fraction(0)

    @property
    def one(self) -> Scalar:
        return 1 if self.p else Fraction(1)

    def to_domain(self, x: Scalar) -> Any:
        if self.p:
            return self.domain(int(x))
        x = Fraction(x)
        return self.domain(x.numerator, x.denominator)

    def from_domain(self, a: Any) -> Scalar:
        k = self.domain
        if self.p:
            return int(k.to_int(a)) % self.p
        return Fraction(int(k.numer(a)), int(k.denom(a)))

    def __call__(self, x: Union[int, Fraction]) -> Scalar:
        """
        Coerce an integer or rational into the field.
        """
        if isinstance(x, bool) or not isinstance(x, (int, Fraction)):
            raisef(ValidationError, "{!r} is not an exact scalar", x)
        if not self.p:
            return Fraction(x)
        x = Fraction(x)
        if x.denominator % self.p == 0:
            raisef(
                ValidationError, "{} has a denominator divisible by {}", x, self.p
            )
        k = self.domain
        return self.from_domain(k.quo(k(x.numerator), k(x.denominator)))

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        return (a + b) % self.p if self.p else a + b

    def sub(self, a: Scalar, b: Scalar) -> Scalar:
        return (a - b) % self.p if self.p else a - b

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        return a * b % self.p if self.p else a * b

    def neg(self, a: Scalar) -> Scalar:
        return -a % self.p if self.p else -a

    def inv(self, a: Scalar) -> Scalar:
        if a == 0:
            raisef(ValidationError, "division by zero in {}", self)
        return self.from_domain(self.domain.revert(self.to_domain(a)))

    def div(self, a: Scalar, b: Scalar) -> Scalar:
        return self.mul(a, self.inv(b))

    def power(self, a: Scalar, e: int) -> Scalar:
        if e < 0:
            return self.power(self.inv(a), -e)
        return self.from_domain(self.domain.pow(self.to_domain(a), e))

    def elements(self) -> List[Scalar]:
        if not self.p:
            raisef(ValidationError, "the rationals cannot be enumerated")
        return list(range(self.p))

    def random(self, rng: random.Random, box: int = 10) -> Scalar:
        if self.p:
            return rng.randrange(self.p)
        return Fraction(rng.randint(-box, box))

    def __str__(self) -> str:
        return f"F_{self.p}" if self.p else "Q"


QQ = Field()


@dataclass(frozen=True)
class Matrix:
    """
    An immutable rows x cols matrix over a field.
    """

    field: Field
    rows: int
    cols: int
    entries: Tuple[Tuple[Scalar, ...], ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raisef(ShapeError, "negative shape {}x{}", self.rows, self.cols)
        if len(self.entries) != self.rows or any(
            len(row) != self.cols for row in self.entries
        ):
            raisef(
                ShapeError, "entries do not form a {}x{} matrix", self.rows, self.cols
            )

    @classmethod
    def of(
        cls,
        field: Field,
        data: Sequence[Sequence[Union[int, Fraction]]],
        cols: Optional[int] = None,
    ) -> "Matrix":
        """
        Build a matrix from nested rows, coercing entries into the field. An
        empty row list needs an explicit column count.
        """
        rows = len(data)
        if cols is None:
            if rows == 0:
                cols = 0
            else:
                cols = len(data[0])
        entries = tuple(tuple(field(x) for x in row) for row in data)
        return cls(field, rows, cols, entries)

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Matrix":
        z = field.zero
        return cls(
            field, rows, cols, tuple(tuple(z for _ in range(cols)) for _ in range(rows))
        )

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        return cls(
            field,
            n,
            n,
            tuple(
                tuple(field.one if i == j else field.zero for j in range(n))
                for i in range(n)
            ),
        )

    @classmethod
    def from_columns(
        cls, field: Field, rows: int, columns: Sequence[Sequence[Scalar]]
    ) -> "Matrix":
        return cls(
            field,
            rows,
            len(columns),
            tuple(tuple(col[i] for col in columns) for i in range(rows)),
        )

    @classmethod
    def unit_columns(cls, field: Field, n: int, indices: Sequence[int]) -> "Matrix":
        return cls.from_columns(
            field,
            n,
            [[field.one if i == k else field.zero for i in range(n)] for k in indices],
        )

    @classmethod
    def hstack(cls, field: Field, rows: int, blocks: Sequence["Matrix"]) -> "Matrix":
        cols = sum(b.cols for b in blocks)
        for b in blocks:
            if b.rows != rows:
                raisef(ShapeError, "cannot stack {} rows next to {} rows", b.rows, rows)
        return cls(
            field,
            rows,
            cols,
            tuple(tuple(x for b in blocks for x in b.entries[i]) for i in range(rows)),
        )

    @classmethod
    def vstack(cls, field: Field, cols: int, blocks: Sequence["Matrix"]) -> "Matrix":
        for b in blocks:
            if b.cols != cols:
                raisef(
                    ShapeError, "cannot stack {} columns over {} columns", b.cols, cols
                )
        return cls(
            field,
            sum(b.rows for b in blocks),
            cols,
            tuple(r for b in blocks for r in b.entries),
        )

    @classmethod
    def block_diagonal(cls, field: Field, blocks: Sequence["Matrix"]) -> "Matrix":
        rows = sum(b.rows for b in blocks)
        cols = sum(b.cols for b in blocks)
        data = [[field.zero] * cols for _ in range(rows)]
        r0 = c0 = 0
        for b in blocks:
            for i in range(b.rows):
                for j in range(b.cols):
                    data[r0 + i][c0 + j] = b.entries[i][j]
            r0 += b.rows
            c0 += b.cols
        return cls(field, rows, cols, tuple(tuple(r) for r in data))

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij: Tuple[int, int]) -> Scalar:
        i, j = ij
        return self.entries[i][j]

    def column(self, j: int) -> Tuple[Scalar, ...]:
        return tuple(row[j] for row in self.entries)

    def columns(self) -> List[Tuple[Scalar, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def select_columns(self, indices: Sequence[int]) -> "Matrix":
        return Matrix(
            self.field,
            self.rows,
            len(indices),
            tuple(tuple(row[j] for j in indices) for row in self.entries),
        )

    def select_rows(self, indices: Sequence[int]) -> "Matrix":
        return Matrix(
            self.field, len(indices), self.cols, tuple(self.entries[i] for i in indices)
        )

    @cached_property
    def T(self) -> "Matrix":
        return Matrix(
            self.field,
            self.cols,
            self.rows,
            tuple(
                tuple(self.entries[i][j] for i in range(self.rows))
                for j in range(self.cols)
            ),
        )

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)

    def _check_field(self, other: "Matrix") -> None:
        if self.field != other.field:
            raisef(
                ShapeError,
                "matrices over {} and {} do not combine",
                self.field,
                other.field,
            )

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check_field(other)
        if self.cols != other.rows:
            raisef(
                ShapeError,
                "cannot multiply {}x{} by {}x{}",
                self.rows,
                self.cols,
                other.rows,
                other.cols,
            )
        f = self.field
        if not (self.rows and self.cols and other.cols):
            return Matrix.zeros(f, self.rows, other.cols)
        prod = self.to_domain_matrix().matmul(other.to_domain_matrix())
        return Matrix.from_domain_matrix(f, prod)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_field(other)
        if self.shape != other.shape:
            raisef(ShapeError, "cannot add {} and {}", self.shape, other.shape)
        f = self.field
        return Matrix(
            f,
            self.rows,
            self.cols,
            tuple(
                tuple(f.add(a, b) for a, b in zip(r, s))
                for r, s in zip(self.entries, other.entries)
            ),
        )

    def __neg__(self) -> "Matrix":
        return self.scale(self.field.neg(self.field.one))

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, c: Scalar) -> "Matrix":
        f = self.field
        c = f(c)
        data = tuple(tuple(f.mul(c, x) for x in r) for r in self.entries)
        return Matrix(f, self.rows, self.cols, data)

    def reduce(self, field: Field) -> "Matrix":
        """
        Map a rational matrix into another field.
        """
        data = tuple(tuple(field(x) for x in r) for r in self.entries)
        return Matrix(field, self.rows, self.cols, data)

    def to_lists(self) -> List[List[Scalar]]:
        return [list(r) for r in self.entries]

    def to_domain_matrix(self) -> DomainMatrix:
        f = self.field
        rows = [[f.to_domain(x) for x in row] for row in self.entries]
        return DomainMatrix(rows, self.shape, f.domain)

    @classmethod
    def from_domain_matrix(cls, field: Field, dm: DomainMatrix) -> "Matrix":
        rows, cols = dm.shape
        entries = tuple(
            tuple(field.from_domain(x) for x in row) for row in dm.to_list()
        )
        return cls(field, rows, cols, entries)

    def __repr__(self) -> str:
        return f"Matrix({self.field}, {self.to_lists()})"


def rref(m: Matrix) -> Tuple[Matrix, Tuple[int, ...]]:
    """
    The reduced row echelon form of m and its pivot columns.
    """
    if not m.rows or not m.cols:
        return m, ()
    reduced, pivots = m.to_domain_matrix().rref()
    return Matrix.from_domain_matrix(m.field, reduced), tuple(pivots)


def rank(m: Matrix) -> int:
    if not m.rows or not m.cols:
        return 0
    return m.to_domain_matrix().rank()


class RankKernelImage(NamedTuple):
    rank: int
    kernel: Matrix
    image: Matrix


def rank_kernel_image(m: Matrix) -> RankKernelImage:
    """
    The rank of m, a basis of its kernel and a basis of its column space, as
    columns. The kernel basis has a one in each free column of rref(m).
    """
    f = m.field
    reduced, pivots = rref(m)
    free = [c for c in range(m.cols) if c not in pivots]
    kernel_cols = []
    for c in free:
        v = [f.zero] * m.cols
        v[c] = f.one
        for r, pc in enumerate(pivots):
            v[pc] = f.neg(reduced.entries[r][c])
        kernel_cols.append(v)
    kernel = Matrix.from_columns(f, m.cols, kernel_cols)
    image = m.select_columns(pivots)
    invariant(len(pivots) + kernel.cols == m.cols, "rank-nullity failed")
    return RankKernelImage(len(pivots), kernel, image)


def kernel(m: Matrix) -> Matrix:
    return rank_kernel_image(m).kernel


def image(m: Matrix) -> Matrix:
    return rank_kernel_image(m).image


def det(m: Matrix) -> Scalar:
    if not m.is_square:
        raisef(ShapeError, "determinant of a non-square {}x{} matrix", m.rows, m.cols)
    if m.rows == 0:
        return m.field.one
    return m.field.from_domain(m.to_domain_matrix().det())


def solve(m: Matrix, b: Matrix) -> Optional[Matrix]:
    """
    One solution x of m x = b, or None when the system is inconsistent.
    """
    if m.rows != b.rows:
        raisef(
            ShapeError,
            "cannot solve {} equations against {} right-hand rows",
            m.rows,
            b.rows,
        )
    f = m.field
    aug = Matrix.hstack(f, m.rows, [m, b])
    reduced, pivots = rref(aug)
    if any(pc >= m.cols for pc in pivots):
        return None
    data = [[f.zero] * b.cols for _ in range(m.cols)]
    for r, pc in enumerate(pivots):
        data[pc] = list(reduced.entries[r][m.cols :])
    return Matrix(f, m.cols, b.cols, tuple(tuple(r) for r in data))


def inverse(m: Matrix) -> Matrix:
    if not m.is_square:
        raisef(ShapeError, "inverse of a non-square {}x{} matrix", m.rows, m.cols)
    if m.rows == 0:
        return m
    try:
        return Matrix.from_domain_matrix(m.field, m.to_domain_matrix().inv())
    except DMNonInvertibleMatrixError as exc:
        raise SingularMatrixError() from exc


def is_invertible(m: Matrix) -> bool:
    return m.is_square and rank(m) == m.rows


def column_echelon(m: Matrix) -> Matrix:
    """
    The canonical basis of the column space of m: the transpose of the
    nonzero rows of rref(m^T).
    """
    reduced, pivots = rref(m.T)
    return reduced.select_rows(list(range(len(pivots)))).T if pivots else Matrix.zeros(
        m.field, m.rows, 0
    )


def pivot_rows(basis: Matrix) -> Tuple[int, ...]:
    """
    The leading row of each column of a canonical basis.
    """
    return tuple(
        next(i for i in range(basis.rows) if basis[i, j] != 0)
        for j in range(basis.cols)
    )


def complement(basis: Matrix) -> Matrix:
    """
    Unit vectors spanning a complement of the space of a canonical basis.
    """
    used = set(pivot_rows(basis))
    free = [i for i in range(basis.rows) if i not in used]
    return Matrix.unit_columns(basis.field, basis.rows, free)


def span_contains(basis: Matrix, vectors: Matrix) -> bool:
    if vectors.cols == 0:
        return True
    both = Matrix.hstack(basis.field, basis.rows, [basis, vectors])
    return rank(both) == rank(basis)


def sum_spaces(a: Matrix, b: Matrix) -> Matrix:
    return column_echelon(Matrix.hstack(a.field, a.rows, [a, b]))


def intersect_spaces(a: Matrix, b: Matrix) -> Matrix:
    if a.cols == 0 or b.cols == 0:
        return Matrix.zeros(a.field, a.rows, 0)
    k = kernel(Matrix.hstack(a.field, a.rows, [a, -b]))
    return column_echelon(a @ k.select_rows(list(range(a.cols))))


def coordinates(basis: Matrix, vectors: Matrix) -> Matrix:
    """
    Coordinates of vectors with respect to independent basis columns.
    """
    x = solve(basis, vectors)
    if x is None:
        raisef(ValidationError, "vectors do not lie in the span of the basis")
    return x


def extend_basis(small: Matrix, big: Matrix) -> Matrix:
    """
    Columns of big which, together with the columns of small, form a basis of
    span(small) + span(big).
    """
    f = small.field
    chosen: List[Tuple[Scalar, ...]] = []
    current = small
    r = rank(current)
    for col in big.columns():
        extra = Matrix.from_columns(f, small.rows, [col])
        trial = Matrix.hstack(f, small.rows, [current, extra])
        tr = rank(trial)
        if tr > r:
            chosen.append(col)
            current, r = trial, tr
    return Matrix.from_columns(f, small.rows, chosen)


def gaussian_binomial(n: int, k: int, q: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def count_subspaces(p: int, n: int) -> int:
    return sum(gaussian_binomial(n, k, p) for k in range(n + 1))


def subspaces(field: Field, n: int, k: Optional[int] = None) -> Iterator[Matrix]:
    """
    Every subspace of F_p^n (of dimension k, if given), as canonical bases.
    Subspaces are enumerated through their reduced row echelon generators,
    pivot set first.
    """
    dims = range(n + 1) if k is None else [k]
    elems = field.elements()
    for dim in dims:
        for pivots in combinations(range(n), dim):
            slots = [
                (r, c)
                for r, pc in enumerate(pivots)
                for c in range(pc + 1, n)
                if c not in pivots
            ]
            for values in product(elems, repeat=len(slots)):
                rows = [[0] * n for _ in range(dim)]
                for r, pc in enumerate(pivots):
                    rows[r][pc] = 1
                for (r, c), x in zip(slots, values):
                    rows[r][c] = x
                if not dim:
                    yield Matrix.zeros(field, n, 0)
                else:
                    yield Matrix(field, dim, n, tuple(tuple(r) for r in rows)).T


def subspaces_containing(field: Field, lower: Matrix) -> Iterator[Matrix]:
    """
    Every subspace of F_p^n containing span(lower), as canonical bases.
    """
    lower = column_echelon(lower)
    comp = complement(lower)
    for s in subspaces(field, comp.cols):
        yield column_echelon(Matrix.hstack(field, lower.rows, [lower, comp @ s]))


def count_general_linear(p: int, n: int) -> int:
    total = 1
    for i in range(n):
        total *= p**n - p**i
    return total


def general_linear(field: Field, n: int) -> Iterator[Matrix]:
    """
    Every invertible n x n matrix over F_p.
    """
    elems = field.elements()
    for values in product(elems, repeat=n * n):
        data = tuple(tuple(values[i * n : (i + 1) * n]) for i in range(n))
        m = Matrix(field, n, n, data)
        if det(m) != 0:
            yield m


def random_matrix(
    field: Field, rows: int, cols: int, rng: random.Random, box: int = 10
) -> Matrix:
    return Matrix(
        field,
        rows,
        cols,
        tuple(tuple(field.random(rng, box) for _ in range(cols)) for _ in range(rows)),
    )


def random_invertible(
    field: Field, n: int, rng: random.Random, box: int = 10
) -> Matrix:
    while True:
        m = random_matrix(field, n, n, rng, box)
        if is_invertible(m):
            return m
