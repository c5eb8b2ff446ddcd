"""Matrix representations of finitely presented algebras.

Verification evaluates every relation exactly; irreducibility is decided
through the commutant (dimension 1 certifies absolute irreducibility),
with a brute-force invariant-subspace search as an independent oracle;
equivalence goes through exact intertwiner solves.  The classifier for
the rank-one quantum Weyl algebra at a root of unity enumerates candidate
matrices for the first generator, solves the affine-linear equation for
the second, then filters and dedups.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .errors import (
    BadOrder,
    BadParameter,
    DimensionTooLarge,
    SizeMismatch,
    UnsupportedField,
    VariantMismatch,
)
from .freealg import NcPoly, evaluate_on_matrices
from .linalg import Matrix, SpanTracker, in_span, vec_is_zero
from .rewrite import Presentation, preset
from .scalars import QQ, CyclotomicField, RationalField, Scalar, cyclotomic_field


class MatRep:
    """One square matrix per generator, over the presentation's field."""

    def __init__(self, pres: Presentation, mats: dict):
        self.pres = pres
        self.mats = dict(mats)
        dims = {M.nrows for M in self.mats.values()}
        if len(dims) != 1:
            raise SizeMismatch("all generator matrices must share one size")
        for name in pres.alphabet.names:
            if name not in self.mats:
                raise SizeMismatch(f"no matrix for generator {name!r}")
            if not self.mats[name].is_square():
                raise SizeMismatch(f"matrix for {name!r} is not square")
            if self.mats[name].field != pres.field:
                raise VariantMismatch("matrix field differs from presentation")
        self.dim = next(iter(dims))
        self.field = pres.field

    def matrices(self):
        return [self.mats[n] for n in self.pres.alphabet.names]

    def evaluate(self, p: NcPoly) -> Matrix:
        return evaluate_on_matrices(p, self.mats)

    def evaluate_word(self, w) -> Matrix:
        M = Matrix.identity(self.field, self.dim)
        for idx in w:
            M = M * self.mats[self.pres.alphabet.names[idx]]
        return M

    def conjugate(self, P: Matrix) -> "MatRep":
        Pinv = P.inverse()
        return MatRep(self.pres, {n: P * M * Pinv for n, M in self.mats.items()})

    def __repr__(self):
        return f"MatRep(dim={self.dim}, pres={self.pres.name})"


@dataclass
class VerificationResult:
    ok: bool
    violations: list  # [(relation, residual Matrix)]

    def __bool__(self):
        return self.ok


def verify_representation(pres: Presentation, rep) -> VerificationResult:
    """Verified iff every relation evaluates to the exact zero matrix."""
    mats = rep.mats if isinstance(rep, MatRep) else rep
    violations = []
    for r in pres.relations:
        residual = evaluate_on_matrices(r, mats)
        if not residual.is_zero():
            violations.append((r, residual))
    return VerificationResult(not violations, violations)


# ---------------------------------------------------------------------------
# Weyl algebra obstruction and truncations
# ---------------------------------------------------------------------------

@dataclass
class ObstructionCertificate:
    n: int
    lhs_trace: Scalar      # trace of PQ - QP, always 0
    rhs_trace: Scalar      # trace of I, equals n
    contradiction: bool    # lhs != rhs, so no finite solution exists
    samples_checked: int


def weyl_trace_obstruction(n: int, seed: int = 0, samples: int = 5) -> ObstructionCertificate:
    """The trace certificate 0 = tr(PQ - QP) != tr(I) = n.

    Also spot-checks the two trace identities the argument rests on
    (additivity and tr(XY) = tr(YX)) on seeded random rational matrices.
    """
    if n < 1:
        raise BadParameter("n must be >= 1")
    rng = random.Random(seed)

    def rand_matrix():
        return Matrix(QQ, [[Fraction(rng.randint(-9, 9), rng.randint(1, 4))
                            for _ in range(n)] for _ in range(n)])

    for _ in range(samples):
        X, Y = rand_matrix(), rand_matrix()
        assert (X + Y).trace() == X.trace() + Y.trace()
        assert (X - Y).trace() == X.trace() - Y.trace()
        assert (X * Y).trace() == (Y * X).trace()
        assert ((X * Y - Y * X).trace()).is_zero()
    zero = QQ.zero()
    return ObstructionCertificate(n, zero, QQ.from_int(n), n != 0, samples)


def truncated_weyl_rep(N: int):
    """N-by-N truncations of the superdiagonal/subdiagonal pair.

    Returns (P, Q, defect) with defect = PQ - QP - I; the truncation error
    is concentrated in the single entry (N, N) with value -N.
    """
    if N < 1:
        raise BadParameter("N must be >= 1")
    z = Fraction(0)
    P = Matrix(QQ, [[Fraction(i + 1) if j == i + 1 else z for j in range(N)]
                    for i in range(N)])
    Q = Matrix(QQ, [[Fraction(1) if j == i - 1 else z for j in range(N)]
                    for i in range(N)])
    defect = P * Q - Q * P - Matrix.identity(QQ, N)
    return P, Q, defect


# ---------------------------------------------------------------------------
# commutant, irreducibility, equivalence
# ---------------------------------------------------------------------------

def _unflatten(field, vec, n):
    return Matrix(field, [list(vec[i * n:(i + 1) * n]) for i in range(n)])


def commutant(rep: MatRep) -> list:
    """Basis of {M : M X_g = X_g M for every generator g}."""
    n = rep.dim
    fld = rep.field
    z = fld.zero()
    rows = []
    for X in rep.matrices():
        for i in range(n):
            for j in range(n):
                row = [z] * (n * n)
                # (X M - M X)_{ij}: coefficient of M_{kl}
                for k in range(n):
                    row[k * n + j] = row[k * n + j] + X[i, k]
                for l in range(n):
                    row[i * n + l] = row[i * n + l] - X[l, j]
                rows.append(row)
    basis = Matrix(fld, rows).nullspace()
    return [_unflatten(fld, v, n) for v in basis]


@dataclass
class IrreducibilityResult:
    absolutely_irreducible: bool
    commutant_dim: int
    commutant_basis: list
    image_algebra_dim: int = 0

    def __bool__(self):
        return self.absolutely_irreducible


def image_algebra_dimension(rep: MatRep) -> int:
    """Dimension of the span of all word images (the image algebra)."""
    n = rep.dim
    tracker = SpanTracker(rep.field, n * n)
    ident = Matrix.identity(rep.field, n)
    tracker.add([ident[i, j] for i in range(n) for j in range(n)])
    frontier = [ident]
    gens = rep.matrices()
    while frontier and tracker.dim < n * n:
        nxt = []
        for M in frontier:
            for X in gens:
                prod = M * X
                if tracker.add([prod[i, j] for i in range(n) for j in range(n)]):
                    nxt.append(prod)
        frontier = nxt
    return tracker.dim


def is_irreducible(rep: MatRep) -> IrreducibilityResult:
    """Absolute irreducibility certificate.

    A representation is absolutely irreducible iff its word images span
    the full matrix algebra (Burnside); the commutant being scalars is
    necessary but, for non-semisimple modules, not sufficient, so both
    are computed and the commutant basis is returned as evidence.
    """
    basis = commutant(rep)
    img = image_algebra_dimension(rep)
    absolutely = img == rep.dim ** 2
    if absolutely:
        assert len(basis) == 1, "full image algebra forces a scalar commutant"
    return IrreducibilityResult(absolutely, len(basis), basis, img)


@dataclass
class EquivalenceResult:
    status: str                 # "equivalent" | "inequivalent" | "unknown"
    intertwiner: Matrix | None = None
    intertwiner_space: list = dc_field(default_factory=list)

    def __bool__(self):
        return self.status == "equivalent"


def intertwiner_space(r1: MatRep, r2: MatRep) -> list:
    """Basis of {P : P X_i = X'_i P} (maps from r1's space to r2's)."""
    if r1.pres.alphabet != r2.pres.alphabet or r1.field != r2.field:
        raise VariantMismatch("representations of different presentations")
    n1, n2 = r1.dim, r2.dim
    fld = r1.field
    z = fld.zero()
    rows = []
    for X1, X2 in zip(r1.matrices(), r2.matrices()):
        # P is n2 x n1; (X2 P - P X1)_{ij} = 0
        for i in range(n2):
            for j in range(n1):
                row = [z] * (n2 * n1)
                for k in range(n2):
                    row[k * n1 + j] = row[k * n1 + j] + X2[i, k]
                for l in range(n1):
                    row[i * n1 + l] = row[i * n1 + l] - X1[l, j]
                rows.append(row)
    vecs = Matrix(fld, rows).nullspace()
    return [Matrix(fld, [list(v[i * n1:(i + 1) * n1]) for i in range(n2)])
            for v in vecs]


_SWEEP_COEFFS = (0, 1, -1, 2, -2)


def trace_fingerprint(rep: MatRep, maxlen: int = 4) -> tuple:
    """Traces of all generator words up to the given length.

    Equivalent representations have identical fingerprints, so a mismatch
    is a cheap certificate of inequivalence.  Cached per representation.
    """
    cached = getattr(rep, "_fingerprint", None)
    if cached is not None and cached[0] == maxlen:
        return cached[1]
    gens = rep.matrices()
    ident = Matrix.identity(rep.field, rep.dim)
    level = [ident]
    out = [ident.trace()]
    for _ in range(maxlen):
        nxt = []
        for M in level:
            for X in gens:
                prod = M * X
                nxt.append(prod)
                out.append(prod.trace())
        level = nxt
    rep._fingerprint = (maxlen, tuple(out))
    return rep._fingerprint[1]


def are_equivalent(r1: MatRep, r2: MatRep,
                   assume_irreducible: bool = False) -> EquivalenceResult:
    """Equivalence via an exact invertible intertwiner.

    A trace-fingerprint mismatch short-circuits to inequivalent.  For a
    pair of (absolutely) irreducible representations any nonzero
    intertwiner is invertible, so the solve is decisive.  Otherwise a
    deterministic sweep of small integer combinations looks for an
    invertible element; if the space is larger than 4-dimensional the
    answer 'unknown' is returned with the basis rather than guessing.
    """
    if r1.dim != r2.dim:
        return EquivalenceResult("inequivalent")
    if trace_fingerprint(r1) != trace_fingerprint(r2):
        return EquivalenceResult("inequivalent")
    basis = intertwiner_space(r1, r2)
    if not basis:
        return EquivalenceResult("inequivalent")
    if assume_irreducible or (is_irreducible(r1).absolutely_irreducible and
                              is_irreducible(r2).absolutely_irreducible):
        P = basis[0]
        assert not P.det().is_zero()
        return EquivalenceResult("equivalent", P)
    for P in basis:
        if not P.det().is_zero():
            return EquivalenceResult("equivalent", P)
    if len(basis) > 4:
        return EquivalenceResult("unknown", intertwiner_space=basis)
    fld = r1.field
    for coeffs in itertools.product(_SWEEP_COEFFS, repeat=len(basis)):
        if all(c == 0 for c in coeffs):
            continue
        P = Matrix.zeros(fld, r1.dim)
        for c, B in zip(coeffs, basis):
            if c:
                P = P + B * fld.from_int(c)
        if not P.det().is_zero():
            return EquivalenceResult("equivalent", P)
    return EquivalenceResult("unknown", intertwiner_space=basis)


# ---------------------------------------------------------------------------
# invariant subspace oracle (independent of the commutant)
# ---------------------------------------------------------------------------

def _to_fraction(x: Scalar) -> Fraction:
    if isinstance(x, Scalar):
        v = getattr(x, "value", None)
        if isinstance(v, Fraction):
            return v
        if hasattr(x, "rational_value"):
            return x.rational_value()
    raise UnsupportedField("field has no exact rational view")


def _is_q_like(field) -> bool:
    return isinstance(field, RationalField) or (
        isinstance(field, CyclotomicField) and field.degree == 1
    )


def _rational_roots(coeffs) -> list:
    """All rational roots (with multiplicity) of a rational-coefficient poly."""
    from sympy import divisors

    cs = list(coeffs)
    while cs and cs[-1] == 0:
        cs.pop()
    if len(cs) <= 1:
        return []
    den = 1
    for c in cs:
        den = den * c.denominator // _gcd_int(den, c.denominator)
    ints = [int(c * den) for c in cs]
    roots = []
    while len(ints) > 1 and ints[0] == 0:
        roots.append(Fraction(0))
        ints = ints[1:]
    changed = True
    while changed and len(ints) > 1:
        changed = False
        a0, an = abs(ints[0]), abs(ints[-1])
        cands = set()
        for p in divisors(a0):
            for q in divisors(an):
                cands.add(Fraction(p, q))
                cands.add(Fraction(-p, q))
        for r in sorted(cands):
            while len(ints) > 1 and _horner(ints, r) == 0:
                ints = _deflate(ints, r)
                roots.append(r)
                changed = True
    return roots


def _gcd_int(a, b):
    while b:
        a, b = b, a % b
    return a


def _horner(ints, r: Fraction):
    acc = Fraction(0)
    for c in reversed(ints):
        acc = acc * r + c
    return acc


def _deflate(ints, r: Fraction):
    # synthetic division by (x - r); exact, result rescaled to integers
    coeffs = [Fraction(c) for c in ints]
    n = len(coeffs) - 1
    new = [Fraction(0)] * n
    new[n - 1] = coeffs[n]
    for i in range(n - 2, -1, -1):
        new[i] = coeffs[i + 1] + r * new[i + 1]
    den = 1
    for c in new:
        den = den * c.denominator // _gcd_int(den, c.denominator)
    return [int(c * den) for c in new]


def _eigenvalues_in_field(M: Matrix) -> list:
    cp = M.charpoly()
    fracs = [_to_fraction(c) for c in cp]
    roots = sorted(set(_rational_roots(fracs)))
    return [M.field.from_fraction(r) for r in roots]


def _subspace_intersect(field, basis_a, basis_b):
    """Basis of span(basis_a) intersect span(basis_b)."""
    if not basis_a or not basis_b:
        return []
    cols = [list(v) for v in basis_a] + [list(-field.coerce(x) for x in v) for v in basis_b]
    A = Matrix(field, list(zip(*cols)))
    combos = A.nullspace()
    out = []
    for combo in combos:
        vec = [field.zero()] * len(basis_a[0])
        for c, v in zip(combo[:len(basis_a)], basis_a):
            vec = [acc + c * x for acc, x in zip(vec, v)]
        if not vec_is_zero(vec):
            out.append(tuple(vec))
    return _independent(field, out)


def _independent(field, vectors):
    kept = []
    for v in vectors:
        if vec_is_zero(v):
            continue
        if in_span(field, kept, v) is None:
            kept.append(v)
    return kept


def _common_eigenvectors(mats) -> list:
    """Nonzero intersection of eigenspaces, one eigenvalue choice per matrix."""
    field = mats[0].field
    n = mats[0].nrows
    ident = Matrix.identity(field, n)
    spaces = [tuple(ident.rows[i] for i in range(n))]
    for X in mats:
        eigs = _eigenvalues_in_field(X)
        nxt = []
        for lam in eigs:
            E = (X - ident * lam).nullspace()
            for S in spaces:
                T = _subspace_intersect(field, list(S), E)
                if T:
                    nxt.append(tuple(T))
        spaces = nxt
        if not spaces:
            return []
    return [s[0] for s in spaces]


def _closure(rep: MatRep, v):
    """Smallest subspace containing v invariant under all generators."""
    field = rep.field
    basis = [tuple(v)]
    frontier = [tuple(v)]
    while frontier:
        nxt = []
        for w in frontier:
            for X in rep.matrices():
                img = X.apply(w)
                if not vec_is_zero(img) and in_span(field, basis, img) is None:
                    basis.append(tuple(img))
                    nxt.append(tuple(img))
        frontier = nxt
    return basis


def _annihilator(field, w, n):
    A = Matrix(field, [list(w)])
    return A.nullspace()


def invariant_subspace_oracle(rep: MatRep, max_dim: int = 4):
    """Brute-force search for a proper nonzero invariant subspace.

    Complete for dimensions <= 3 over the rationals (and order-1/2
    cyclotomic fields, which coincide with them): 1-dimensional invariant
    subspaces are common eigenvectors, codimension-1 ones are found
    through the transposed action, and eigenvalues of vectors in the
    field are always roots of characteristic polynomials in the field.
    In dimension 4 a 2-dimensional invariant subspace on which no
    generator has an eigenvalue in the field can be missed; closures of
    eigenvectors cover the reachable ones.  Raises UnsupportedField over
    fields without exact rational root finding.
    """
    n = rep.dim
    if n > max_dim or n > 4:
        raise DimensionTooLarge("oracle supports dimension <= 4")
    if not _is_q_like(rep.field):
        raise UnsupportedField(
            "invariant-subspace oracle needs a rational-isomorphic field"
        )
    if n == 1:
        return None
    mats = rep.matrices()
    common = _common_eigenvectors(mats)
    if common:
        return [common[0]]
    dual = _common_eigenvectors([M.transpose() for M in mats])
    if dual:
        W = _annihilator(rep.field, dual[0], n)
        return W
    if n == 4:
        seen = []
        for X in mats:
            for lam in _eigenvalues_in_field(X):
                E = (X - Matrix.identity(rep.field, n) * lam).nullspace()
                for v in E:
                    W = _closure(rep, v)
                    if 0 < len(W) < n:
                        return W
    return None


# ---------------------------------------------------------------------------
# decomposability
# ---------------------------------------------------------------------------

def _spoly_strip(p):
    p = list(p)
    while p and p[-1].is_zero():
        p.pop()
    return p


def _spoly_divmod(a, b):
    a = list(a)
    fld = b[-1].field
    q = [fld.zero()] * max(0, len(a) - len(b) + 1)
    inv = b[-1].inv()
    while len(a) >= len(b) and _spoly_strip(a):
        a = _spoly_strip(a)
        if len(a) < len(b):
            break
        c = a[-1] * inv
        k = len(a) - len(b)
        q[k] = c
        for i, cb in enumerate(b):
            a[k + i] = a[k + i] - c * cb
        a.pop()
    return q, _spoly_strip(a)


def _spoly_gcd(a, b):
    a, b = _spoly_strip(a), _spoly_strip(b)
    while b:
        a, b = b, _spoly_divmod(a, b)[1]
    if not a:
        return a
    inv = a[-1].inv()
    return [c * inv for c in a]


def _spoly_xgcd(a, b):
    fld = (a or b)[0].field
    one, zero = fld.one(), fld.zero()
    r0, r1 = _spoly_strip(a), _spoly_strip(b)
    s0, s1 = [one], []
    t0, t1 = [], [one]

    def p_add(u, v):
        m = max(len(u), len(v))
        return _spoly_strip([
            (u[i] if i < len(u) else zero) + (v[i] if i < len(v) else zero)
            for i in range(m)
        ])

    def p_mul(u, v):
        if not u or not v:
            return []
        out = [zero] * (len(u) + len(v) - 1)
        for i, cu in enumerate(u):
            for j, cv in enumerate(v):
                out[i + j] = out[i + j] + cu * cv
        return _spoly_strip(out)

    while r1:
        q, r = _spoly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, p_add(s0, [-c for c in p_mul(q, s1)])
        t0, t1 = t1, p_add(t0, [-c for c in p_mul(q, t1)])
    inv = r0[-1].inv()
    return [c * inv for c in r0], [c * inv for c in s0], [c * inv for c in t0]


def _spoly_deriv(p):
    fld = p[0].field
    return _spoly_strip([p[i] * fld.from_int(i) for i in range(1, len(p))])


def matrix_minpoly(M: Matrix) -> list:
    """Monic minimal polynomial, low degree first, by power iteration."""
    fld = M.field
    n = M.nrows
    powers = [Matrix.identity(fld, n)]
    while True:
        k = len(powers)
        rows = [[P[i, j] for P in powers] for i in range(n) for j in range(n)]
        target = powers[-1] * M
        rhs = tuple(target[i, j] for i in range(n) for j in range(n))
        sol = Matrix(fld, rows).solve(rhs)
        if sol is not None:
            coeffs = list(sol[0])
            return _spoly_strip([-c for c in coeffs] + [fld.one()]) or [fld.one()]
        powers.append(target)


def _coprime_split(p, field):
    """Split p = p1 * p2 with gcd(p1, p2) = 1, both nonconstant, or None."""
    # distinct-power split through gcd with the derivative
    g = _spoly_gcd(p, _spoly_deriv(p))
    if len(g) > 1:
        u = _spoly_divmod(p, g)[0]  # squarefree radical
        # peel p = u_part * rest with u_part := product of simple factors
        h = _spoly_gcd(g, u)
        simple = _spoly_divmod(u, h)[0] if len(h) >= 1 else u
        if len(simple) > 1 and len(simple) < len(p):
            rest = _spoly_divmod(p, simple)[0]
            if len(_spoly_gcd(simple, rest)) == 1:
                return simple, rest
    # rational-root split (any field with a rational view)
    try:
        fracs = [_to_fraction(c) for c in p]
    except UnsupportedField:
        fracs = None
    if fracs is not None:
        roots = sorted(set(_rational_roots(fracs)))
        for r in roots:
            lin = [field.from_fraction(-r), field.one()]
            f1 = list(lin)
            rest = _spoly_divmod(p, lin)[0]
            while _horner_scalars(rest, field.from_fraction(r), field).is_zero():
                rest = _spoly_divmod(rest, lin)[0]
                f1 = _mul_scalars(f1, lin, field)
            # f1 = (x-r)^e with e the multiplicity of r; rest = p / f1
            if len(f1) > 1 and len(rest) > 1:
                return f1, rest
        # full factorization over Q as a last resort
        if len(fracs) > 2:
            split = _sympy_coprime_split(fracs, field)
            if split is not None:
                return split
    return None


def _horner_scalars(p, x, field):
    acc = field.zero()
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _mul_scalars(u, v, field):
    out = [field.zero()] * (len(u) + len(v) - 1)
    for i, cu in enumerate(u):
        for j, cv in enumerate(v):
            out[i + j] = out[i + j] + cu * cv
    return out


def _sympy_coprime_split(fracs, field):
    from sympy import Poly, Rational, symbols

    t = symbols("t")
    poly = Poly(sum(Rational(c.numerator, c.denominator) * t ** i
                    for i, c in enumerate(fracs)), t)
    _, factors = poly.factor_list()
    if len(factors) < 2:
        return None
    f1_poly, e1 = factors[0]
    f1 = [field.from_fraction(Fraction(int(c.numerator), int(c.denominator)))
          for c in reversed(f1_poly.all_coeffs())]
    p1 = list(f1)
    for _ in range(e1 - 1):
        p1 = _mul_scalars(p1, f1, field)
    full = [field.from_fraction(c) for c in fracs]
    p2 = _spoly_divmod(full, p1)[0]
    if len(p2) <= 1:
        return None
    return _spoly_strip(p1), _spoly_strip(p2)


@dataclass
class DecomposabilityResult:
    status: str                   # "decomposable" | "indecomposable" | "unknown"
    idempotent: Matrix | None = None
    commutant_dim: int = 0

    def __bool__(self):
        return self.status == "decomposable"


def _radical_dim(field, basis):
    """Dimension of the Jacobson radical of the spanned matrix algebra.

    Characteristic zero: the radical is the kernel of the trace form
    (x, y) -> trace(xy) on the algebra.
    """
    m = len(basis)
    G = Matrix(field, [[(basis[i] * basis[j]).trace() for j in range(m)]
                       for i in range(m)])
    return len(G.nullspace())


def is_decomposable(rep: MatRep) -> DecomposabilityResult:
    """Search the commutant for a nontrivial idempotent.

    A splitting of some commutant element's minimal polynomial into
    coprime factors produces an exact idempotent by Bezout.  When the
    commutant modulo its radical is one-dimensional the ring is local and
    indecomposability is certified; inconclusive cases return 'unknown'.
    """
    basis = commutant(rep)
    m = len(basis)
    fld = rep.field
    if m == 1:
        return DecomposabilityResult("indecomposable", commutant_dim=1)
    ident = Matrix.identity(fld, rep.dim)
    candidates = list(basis)
    for i in range(m):
        for j in range(i + 1, m):
            candidates.append(basis[i] + basis[j])
            candidates.append(basis[i] - basis[j])
    semisimple_dim = m - _radical_dim(fld, basis)
    if semisimple_dim == 1:
        return DecomposabilityResult("indecomposable", commutant_dim=m)
    saw_irreducible_of_full_degree = False
    for C in candidates:
        p = matrix_minpoly(C)
        split = _coprime_split(p, fld)
        if split is not None:
            p1, p2 = split
            _, u, _ = _spoly_xgcd(p1, p2)
            # E = (u * p1)(C) is idempotent: 0 on the p1-block, 1 on the p2-block
            up1 = _mul_scalars(u, p1, fld)
            E = Matrix.zeros(fld, rep.dim)
            Ck = ident
            for c in up1:
                E = E + Ck * c
                Ck = Ck * C
            if E * E == E and not E.is_zero() and E != ident:
                return DecomposabilityResult("decomposable", E, m)
        else:
            if len(p) - 1 == semisimple_dim and _certified_irreducible(p, fld):
                saw_irreducible_of_full_degree = True
    if saw_irreducible_of_full_degree:
        # the semisimple quotient is a field: no nontrivial idempotents
        return DecomposabilityResult("indecomposable", commutant_dim=m)
    return DecomposabilityResult("unknown", commutant_dim=m)


def _certified_irreducible(p, field) -> bool:
    try:
        fracs = [_to_fraction(c) for c in p]
    except UnsupportedField:
        return False
    from sympy import Poly, Rational, symbols

    t = symbols("t")
    poly = Poly(sum(Rational(c.numerator, c.denominator) * t ** i
                    for i, c in enumerate(fracs)), t)
    _, factors = poly.factor_list()
    return len(factors) == 1 and factors[0][1] == 1


# ---------------------------------------------------------------------------
# the quantum Weyl relation as an affine-linear equation in Y
# ---------------------------------------------------------------------------

def solve_Y_given_X(q: Scalar, X: Matrix):
    """Solve Y X - q X Y = I for Y; (particular, homogeneous basis) or None."""
    n = X.nrows
    fld = X.field
    q = fld.coerce(q)
    z = fld.zero()
    rows = []
    rhs = []
    for i in range(n):
        for j in range(n):
            row = [z] * (n * n)
            for l in range(n):
                row[i * n + l] = row[i * n + l] + X[l, j]
            for k in range(n):
                row[k * n + j] = row[k * n + j] - q * X[i, k]
            rows.append(row)
            rhs.append(fld.one() if i == j else z)
    sol = Matrix(fld, rows).solve(tuple(rhs))
    if sol is None:
        return None
    particular, hom = sol
    Y0 = _unflatten(fld, particular, n)
    return Y0, [_unflatten(fld, v, n) for v in hom]


# ---------------------------------------------------------------------------
# classification of irreducibles of the rank-one quantum Weyl algebra
# ---------------------------------------------------------------------------

@dataclass
class Representative:
    rep_id: int
    dim: int
    candidate: str
    rep: MatRep
    commutant_dim: int
    image_algebra_dim: int = 0


@dataclass
class ClassificationReport:
    order: int
    q: Scalar
    grid: list
    sweep: tuple
    dims_searched: list
    families: list
    representatives: list
    dedup_log: list
    dimensions_found: list
    max_dim_found: int
    claims: list
    seed: int


def _candidate_matrices(field, q, ell, grid, extra_dim):
    ident1 = field.one()
    cands = []
    seen = []
    for d in range(1, ell + extra_dim + 1):
        for gi, lam in enumerate(grid):
            if lam.is_zero():
                continue
            forms = []
            diag = Matrix(field, [[lam * q ** i if i == j else field.zero()
                                   for j in range(d)] for i in range(d)])
            forms.append((f"diag(d={d},grid={gi})", diag))
            if d >= 2:
                jordan = Matrix(field, [[lam if i == j else
                                         (ident1 if j == i + 1 else field.zero())
                                         for j in range(d)] for i in range(d)])
                forms.append((f"jordan(d={d},grid={gi})", jordan))
                comp = Matrix(field, [[lam if (i == 0 and j == d - 1) else
                                       (ident1 if i == j + 1 else field.zero())
                                       for j in range(d)] for i in range(d)])
                forms.append((f"companion(d={d},grid={gi})", comp))
            for desc, M in forms:
                if all(M != S for S in seen if S.shape() == M.shape()):
                    seen.append(M)
                    cands.append((desc, M))
    return cands


def default_grid(field):
    zeta = field.zeta()
    return [field.one(), zeta, field.one() + zeta, field.from_int(2),
            field.from_fraction(Fraction(1, 2))]


def classify_a1q_irreducibles(ell: int, grid=None, sweep=(0, 1, -1),
                              seed: int = 0, extra_dim: int = 1,
                              q_power: int = 1) -> ClassificationReport:
    """Search-classify irreducible representations at a primitive root of unity.

    Candidates for X run over diagonal (spectrum lam * q^i), Jordan and
    companion forms up to dimension ell + extra_dim; Y is solved from the
    defining relation, swept over the homogeneous solution space with
    small coefficients, then verified, filtered by the commutant
    certificate and deduplicated by exact equivalence.  The report is
    search-complete within the declared candidate forms and grid.
    """
    if ell < 2:
        raise BadOrder("order must be >= 2")
    if _gcd_int(q_power % ell, ell) != 1:
        raise BadOrder("q_power must be coprime to the order")
    field = cyclotomic_field(ell)
    q = field.zeta() ** q_power
    pres = preset("qweyl1", q=q)
    if grid is None:
        grid = default_grid(field)
    grid = [field.coerce(g) for g in grid]
    cands = _candidate_matrices(field, q, ell, grid, extra_dim)
    if seed:
        random.Random(seed).shuffle(cands)

    one_minus_q_inv = (field.one() - q).inv()
    families = [{
        "dim": 1,
        "description": "x -> (alpha), y -> (beta) with alpha*beta = 1/(1-q)",
        "product_value": one_minus_q_inv,
    }]

    reps: list[Representative] = []
    log = []
    for desc, X in cands:
        sol = solve_Y_given_X(q, X)
        if sol is None:
            log.append({"candidate": desc, "outcome": "no_solution"})
            continue
        Y0, hom = sol
        space = hom[:4]  # sweep cap keeps the enumeration bounded
        combos = list(itertools.product(sweep, repeat=len(space)))
        for combo in combos:
            Y = Y0
            for c, H in zip(combo, space):
                if c:
                    Y = Y + H * field.from_int(c)
            rep = MatRep(pres, {"x": X, "y": Y})
            ver = verify_representation(pres, rep)
            assert ver.ok, "solved candidates must verify"
            tag = f"{desc},c={list(combo)}"
            img = image_algebra_dimension(rep)
            if img < rep.dim ** 2:
                log.append({"candidate": tag, "outcome": "reducible",
                            "image_algebra_dim": img})
                continue
            irr = is_irreducible(rep)
            match = None
            for known in reps:
                if known.dim != rep.dim:
                    continue
                verdict = are_equivalent(known.rep, rep, assume_irreducible=True)
                if verdict.status == "equivalent":
                    match = known.rep_id
                    break
            if match is None:
                reps.append(Representative(len(reps), rep.dim, tag, rep,
                                           irr.commutant_dim,
                                           irr.image_algebra_dim))
                log.append({"candidate": tag, "outcome": "new",
                            "rep_id": len(reps) - 1})
            else:
                log.append({"candidate": tag, "outcome": "equivalent_to",
                            "rep_id": match})
    dims_found = sorted({r.dim for r in reps})
    max_dim = max(dims_found, default=0)
    claims = [
        f"search covered dimensions 1..{ell + extra_dim}",
        f"irreducibles found only in dimensions {dims_found}",
        f"no irreducible of dimension > {ell} found within the search space"
        if max_dim <= ell else
        f"WARNING: irreducible of dimension {max_dim} > {ell} found",
        "search-complete within the declared candidate forms and grid",
    ]
    return ClassificationReport(
        order=ell, q=q, grid=list(grid), sweep=tuple(sweep),
        dims_searched=list(range(1, ell + extra_dim + 1)),
        families=families, representatives=reps, dedup_log=log,
        dimensions_found=dims_found, max_dim_found=max_dim,
        claims=claims, seed=seed,
    )
