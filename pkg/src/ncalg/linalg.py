"""Dense exact linear algebra over the scalar fields.

Everything is done with plain Gaussian elimination; division is exact in
a field, so no pivoting strategy or fraction-free bookkeeping is needed
for correctness at the dimensions this engine works with.
"""

from __future__ import annotations

from .errors import DivisionByZero, SizeMismatch, VariantMismatch
from .scalars import Field, Scalar


class Matrix:
    """Immutable matrix with entries in one scalar field."""

    __slots__ = ("field", "rows", "nrows", "ncols")

    def __init__(self, field: Field, rows):
        self.field = field
        self.rows = tuple(tuple(field.coerce(x) for x in row) for row in rows)
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        if any(len(r) != self.ncols for r in self.rows):
            raise SizeMismatch("ragged rows")

    # ------------------------------------------------------------------
    @classmethod
    def zeros(cls, field, n, m=None):
        m = n if m is None else m
        z = field.zero()
        return cls(field, [[z] * m for _ in range(n)])

    @classmethod
    def identity(cls, field, n):
        z, o = field.zero(), field.one()
        return cls(field, [[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def from_function(cls, field, n, m, f):
        return cls(field, [[f(i, j) for j in range(m)] for i in range(n)])

    # ------------------------------------------------------------------
    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def shape(self):
        return (self.nrows, self.ncols)

    def is_square(self):
        return self.nrows == self.ncols

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.field == other.field
            and self.shape() == other.shape()
            and all(
                a == b
                for ra, rb in zip(self.rows, other.rows)
                for a, b in zip(ra, rb)
            )
        )

    def __hash__(self):
        return hash((self.field, self.rows))

    def is_zero(self):
        return all(x.is_zero() for row in self.rows for x in row)

    def _check(self, other):
        if not isinstance(other, Matrix):
            raise VariantMismatch("expected a Matrix")
        if self.field != other.field:
            raise VariantMismatch("matrices over different fields")

    def __add__(self, other):
        self._check(other)
        if self.shape() != other.shape():
            raise SizeMismatch("shape mismatch in addition")
        return Matrix(
            self.field,
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ],
        )

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Matrix(self.field, [[-a for a in row] for row in self.rows])

    def __mul__(self, other):
        if isinstance(other, Matrix):
            self._check(other)
            if self.ncols != other.nrows:
                raise SizeMismatch("inner dimensions differ")
            z = self.field.zero()
            out = [[z] * other.ncols for _ in range(self.nrows)]
            for i, row in enumerate(self.rows):
                orow = out[i]
                for k, a in enumerate(row):
                    if a.is_zero():
                        continue
                    for j, b in enumerate(other.rows[k]):
                        if not b.is_zero():
                            orow[j] = orow[j] + a * b
            return Matrix(self.field, out)
        c = self.field.coerce(other)
        return Matrix(self.field, [[a * c for a in row] for row in self.rows])

    def __rmul__(self, other):
        return self * other

    def __pow__(self, n: int):
        if not self.is_square():
            raise SizeMismatch("powers need a square matrix")
        out = Matrix.identity(self.field, self.nrows)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def transpose(self):
        return Matrix(self.field, list(zip(*self.rows))) if self.rows else self

    def trace(self):
        if not self.is_square():
            raise SizeMismatch("trace of non-square matrix")
        acc = self.field.zero()
        for i in range(self.nrows):
            acc = acc + self.rows[i][i]
        return acc

    def kron(self, other):
        self._check(other)
        out = []
        for ra in self.rows:
            for rb in other.rows:
                out.append([a * b for a in ra for b in rb])
        return Matrix(self.field, out)

    def apply(self, vec):
        """Matrix times a column vector given as a tuple of scalars."""
        if len(vec) != self.ncols:
            raise SizeMismatch("vector length mismatch")
        return tuple(
            sum((a * v for a, v in zip(row, vec)), self.field.zero())
            for row in self.rows
        )

    # ------------------------------------------------------------------
    def rref(self):
        """Reduced row echelon form; returns (matrix, pivot column tuple)."""
        rows = [list(r) for r in self.rows]
        pivots = []
        r = 0
        for c in range(self.ncols):
            pivot = None
            for i in range(r, self.nrows):
                if not rows[i][c].is_zero():
                    pivot = i
                    break
            if pivot is None:
                continue
            rows[r], rows[pivot] = rows[pivot], rows[r]
            inv = rows[r][c].inv()
            rows[r] = [x * inv for x in rows[r]]
            for i in range(self.nrows):
                if i != r and not rows[i][c].is_zero():
                    f = rows[i][c]
                    rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
            pivots.append(c)
            r += 1
            if r == self.nrows:
                break
        return Matrix(self.field, rows), tuple(pivots)

    def rank(self):
        return len(self.rref()[1])

    def nullspace(self):
        """Basis of the right kernel, as a list of coordinate tuples."""
        R, pivots = self.rref()
        z, o = self.field.zero(), self.field.one()
        free = [c for c in range(self.ncols) if c not in pivots]
        basis = []
        for fc in free:
            vec = [z] * self.ncols
            vec[fc] = o
            for r, pc in enumerate(pivots):
                vec[pc] = -R.rows[r][fc]
            basis.append(tuple(vec))
        return basis

    def solve(self, b):
        """Solve self * x = b (b a tuple); (particular, kernel basis) or None."""
        if len(b) != self.nrows:
            raise SizeMismatch("rhs length mismatch")
        aug = Matrix(
            self.field, [list(row) + [bv] for row, bv in zip(self.rows, b)]
        )
        R, pivots = aug.rref()
        if self.ncols in pivots:
            return None
        z = self.field.zero()
        x = [z] * self.ncols
        for r, pc in enumerate(pivots):
            x[pc] = R.rows[r][self.ncols]
        return tuple(x), self.nullspace()

    def det(self):
        if not self.is_square():
            raise SizeMismatch("determinant of non-square matrix")
        rows = [list(r) for r in self.rows]
        n = self.nrows
        det = self.field.one()
        for c in range(n):
            pivot = None
            for i in range(c, n):
                if not rows[i][c].is_zero():
                    pivot = i
                    break
            if pivot is None:
                return self.field.zero()
            if pivot != c:
                rows[c], rows[pivot] = rows[pivot], rows[c]
                det = -det
            det = det * rows[c][c]
            inv = rows[c][c].inv()
            for i in range(c + 1, n):
                if not rows[i][c].is_zero():
                    f = rows[i][c] * inv
                    rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
        return det

    def inverse(self):
        if not self.is_square():
            raise SizeMismatch("inverse of non-square matrix")
        n = self.nrows
        ident = Matrix.identity(self.field, n)
        aug = Matrix(
            self.field,
            [list(r) + list(i) for r, i in zip(self.rows, ident.rows)],
        )
        R, pivots = aug.rref()
        if pivots[:n] != tuple(range(n)):
            raise DivisionByZero("matrix is singular")
        return Matrix(self.field, [row[n:] for row in R.rows])

    def charpoly(self):
        """Characteristic polynomial det(tI - A), low degree first.

        Faddeev-LeVerrier; valid in characteristic zero.
        """
        if not self.is_square():
            raise SizeMismatch("charpoly of non-square matrix")
        n = self.nrows
        coeffs = [self.field.one()]  # leading coefficient of t^n
        M = Matrix.zeros(self.field, n)
        ident = Matrix.identity(self.field, n)
        c = self.field.one()
        for k in range(1, n + 1):
            M = self * (M + ident * c)
            c = -(M.trace() / self.field.from_int(k))
            coeffs.append(c)
        coeffs.reverse()  # now low degree first
        return coeffs

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols} over {self.field.name})"


def vec_add(u, v):
    return tuple(a + b for a, b in zip(u, v))

def vec_scale(u, c):
    return tuple(a * c for a in u)

def vec_is_zero(u):
    return all(a.is_zero() for a in u)


def span_rank(field, vectors):
    """Rank of the span of coordinate tuples."""
    if not vectors:
        return 0
    return Matrix(field, list(vectors)).rank()


class SpanTracker:
    """Incremental row echelon form for testing membership in a growing span."""

    def __init__(self, field, width):
        self.field = field
        self.width = width
        self.rows = []    # echelon rows
        self.pivots = []  # pivot column per row

    @property
    def dim(self):
        return len(self.rows)

    def add(self, vec):
        """Reduce vec against the span; add if independent.  True if added."""
        vec = list(vec)
        for row, p in zip(self.rows, self.pivots):
            if not vec[p].is_zero():
                f = vec[p]
                vec = [a - f * b for a, b in zip(vec, row)]
        for p in range(self.width):
            if not vec[p].is_zero():
                inv = vec[p].inv()
                vec = [a * inv for a in vec]
                self.rows.append(vec)
                self.pivots.append(p)
                return True
        return False


def in_span(field, vectors, target):
    """Coordinates of target in the span of vectors, or None."""
    if not vectors:
        return None if not vec_is_zero(target) else ()
    A = Matrix(field, list(zip(*vectors)))  # columns are the vectors
    sol = A.solve(tuple(target))
    if sol is None:
        return None
    return sol[0]
