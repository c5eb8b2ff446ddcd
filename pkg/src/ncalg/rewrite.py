"""Finitely presented algebras as rewrite systems.

A presentation is oriented into rules ``leading word -> lower-order
polynomial`` under deglex.  Normal forms are computed by leftmost
rewriting; the diamond lemma (all overlap ambiguities resolve) is
checked, never assumed, so monomial bases are only reported as certified
when the system has been verified locally confluent far enough.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .errors import (
    BadParameter,
    NonOrientable,
    NonQuadraticRelation,
    StepLimitExceeded,
    VariantMismatch,
)
from .freealg import Alphabet, NcPoly, Word, alphabet, deglex_key
from .linalg import Matrix, in_span
from .scalars import QQ, Field, Scalar

DEFAULT_STEP_LIMIT = 10 ** 6


@dataclass(frozen=True)
class Presentation:
    """Alphabet plus relations, each read as ``relation = 0``."""

    alphabet: Alphabet
    relations: tuple
    field: Field
    name: str | None = None

    def __post_init__(self):
        for r in self.relations:
            if r.is_zero():
                raise BadParameter("zero relation")
            if r.alphabet != self.alphabet or r.field != self.field:
                raise VariantMismatch("relation over wrong alphabet or field")

    def rewrite_system(self) -> "RewriteSystem":
        rs = self.__dict__.get("_rs")
        if rs is None:
            rs = orient(self)
            object.__setattr__(self, "_rs", rs)
        return rs

    def normal_form(self, p: NcPoly) -> NcPoly:
        return normal_form(self.rewrite_system(), p)

    def gen(self, name: str) -> NcPoly:
        return NcPoly.gen(self.alphabet, self.field, name)

    def one(self) -> NcPoly:
        return NcPoly.one(self.alphabet, self.field)


@dataclass(frozen=True)
class Rule:
    """Oriented rule lhs -> rhs with lhs a word, rhs a lower-order poly."""

    lhs: Word
    rhs: NcPoly


class RewriteSystem:
    """Inter-reduced oriented rules plus a confluence status cache."""

    def __init__(self, alphabet: Alphabet, field: Field, rules):
        self.alphabet = alphabet
        self.field = field
        self.rules = tuple(sorted(rules, key=lambda r: deglex_key(r.lhs)))
        for r in self.rules:
            for w in r.rhs.terms:
                if deglex_key(w) >= deglex_key(r.lhs):
                    raise NonOrientable(
                        f"rule {r.lhs} does not decrease the monomial order"
                    )
        self.confluent_degree = 0  # highest degree certified so far
        self.counterexample = None

    def __repr__(self):
        return f"RewriteSystem({len(self.rules)} rules over {self.field.name})"

    def find_reduction(self, w: Word):
        """Leftmost-first reducible position: (rule, position) or None."""
        best = None
        for rule in self.rules:
            L = len(rule.lhs)
            if L > len(w):
                continue
            for i in range(len(w) - L + 1):
                if w[i:i + L] == rule.lhs:
                    if best is None or i < best[1]:
                        best = (rule, i)
                    break
        return best


def _rule_from_poly(p: NcPoly) -> Rule:
    w, c = p.leading_term()
    rhs = NcPoly.monomial(p.alphabet, p.field, w) - p * c.inv()
    return Rule(w, rhs)


def orient(pres: Presentation) -> RewriteSystem:
    """Orient and inter-reduce the relations into a rewrite system."""
    queue = [r for r in pres.relations]
    rules: list[Rule] = []
    guard = 0
    while queue:
        guard += 1
        if guard > 10000:
            raise NonOrientable("inter-reduction did not stabilise")
        p = queue.pop(0)
        if rules:
            p = normal_form(RewriteSystem(pres.alphabet, pres.field, rules), p)
        if p.is_zero():
            continue
        new = _rule_from_poly(p)
        # requeue any rule whose lhs or rhs the new rule can touch
        keep = []
        for r in rules:
            lhs_hit = any(
                r.lhs[i:i + len(new.lhs)] == new.lhs
                for i in range(len(r.lhs) - len(new.lhs) + 1)
            )
            rhs_hit = any(
                w[i:i + len(new.lhs)] == new.lhs
                for w in r.rhs.terms
                for i in range(len(w) - len(new.lhs) + 1)
            )
            if lhs_hit or rhs_hit:
                queue.append(NcPoly.monomial(pres.alphabet, pres.field, r.lhs) - r.rhs)
            else:
                keep.append(r)
        keep.append(new)
        rules = keep
    return RewriteSystem(pres.alphabet, pres.field, rules)


def normal_form(rs: RewriteSystem, p: NcPoly, step_limit=DEFAULT_STEP_LIMIT) -> NcPoly:
    """Rewrite until no rule's leading word occurs in any monomial."""
    if p.alphabet != rs.alphabet:
        raise VariantMismatch("polynomial over a different alphabet")
    work = dict(p.terms)
    done = {}
    steps = 0
    while work:
        w = max(work, key=deglex_key)
        c = work.pop(w)
        hit = rs.find_reduction(w)
        if hit is None:
            acc = done.get(w)
            acc = c if acc is None else acc + c
            if acc.is_zero():
                done.pop(w, None)
            else:
                done[w] = acc
            continue
        steps += 1
        if steps > step_limit:
            raise StepLimitExceeded(f"more than {step_limit} rewrite steps")
        rule, i = hit
        pre, post = w[:i], w[i + len(rule.lhs):]
        for rw, rc in rule.rhs.terms.items():
            nw = pre + rw + post
            nc = c * rc
            acc = work.get(nw)
            acc = nc if acc is None else acc + nc
            if acc.is_zero():
                work.pop(nw, None)
            else:
                work[nw] = acc
    return NcPoly(rs.alphabet, p.field, done)


@dataclass
class ConfluenceResult:
    locally_confluent: bool
    checked_degree: int
    counterexample: tuple | None = None  # (word, nf1, nf2)

    def __bool__(self):
        return self.locally_confluent


def _apply_rule_at(rs, rule, word, pos):
    pre = NcPoly.monomial(rs.alphabet, rs.field, word[:pos])
    post = NcPoly.monomial(rs.alphabet, rs.field, word[pos + len(rule.lhs):])
    return pre * rule.rhs * post


def check_local_confluence(rs: RewriteSystem, maxdeg: int) -> ConfluenceResult:
    """Resolve every overlap/inclusion ambiguity up to the given degree."""
    maxlen = max((len(r.lhs) for r in rs.rules), default=0)
    if maxdeg < maxlen:
        raise BadParameter("maxdeg below the largest rule degree")
    ambiguities = []  # (word, rule1, pos1, rule2, pos2)
    for a, r1 in enumerate(rs.rules):
        for b, r2 in enumerate(rs.rules):
            l1, l2 = r1.lhs, r2.lhs
            # proper overlap: nonempty proper suffix of l1 = prefix of l2
            for k in range(1, min(len(l1), len(l2))):
                if l1[len(l1) - k:] == l2[:k]:
                    w = l1 + l2[k:]
                    if len(w) <= maxdeg:
                        ambiguities.append((w, r1, 0, r2, len(l1) - k))
            # inclusion: l2 occurs inside l1 (distinct rules only)
            if a != b and len(l2) <= len(l1):
                for i in range(len(l1) - len(l2) + 1):
                    if l1[i:i + len(l2)] == l2 and len(l1) <= maxdeg:
                        ambiguities.append((l1, r1, 0, r2, i))
    ambiguities.sort(key=lambda t: deglex_key(t[0]))
    for w, r1, p1, r2, p2 in ambiguities:
        t1 = normal_form(rs, _apply_rule_at(rs, r1, w, p1))
        t2 = normal_form(rs, _apply_rule_at(rs, r2, w, p2))
        if t1 != t2:
            rs.counterexample = (w, t1, t2)
            return ConfluenceResult(False, maxdeg, (w, t1, t2))
    rs.confluent_degree = max(rs.confluent_degree, maxdeg)
    return ConfluenceResult(True, maxdeg)


@dataclass
class BasisResult:
    words: list
    provisional: bool

    def __iter__(self):
        return iter(self.words)

    def __len__(self):
        return len(self.words)


def basis_up_to_degree(rs: RewriteSystem, d: int) -> BasisResult:
    """All irreducible words of degree <= d in deglex order.

    The result is flagged provisional unless local confluence has been
    certified up to degree 2d.
    """
    lhss = [r.lhs for r in rs.rules]
    level = [()]
    words = [()]
    n = len(rs.alphabet)
    for _ in range(d):
        nxt = []
        for w in level:
            for g in range(n):
                cand = w + (g,)
                # a new reducible subword must end at the appended letter
                if any(cand[len(cand) - len(l):] == l
                       for l in lhss if len(l) <= len(cand)):
                    continue
                nxt.append(cand)
        level = nxt
        words.extend(level)
    words.sort(key=deglex_key)
    return BasisResult(words, provisional=rs.confluent_degree < 2 * d)


# ---------------------------------------------------------------------------
# preset presentations
# ---------------------------------------------------------------------------

def _require_invertible(q, what):
    if not isinstance(q, Scalar):
        raise BadParameter(f"{what} must be a scalar")
    if q.is_zero():
        raise BadParameter(f"{what} must be invertible")


def preset(name: str, **params) -> Presentation:
    """Named presentations used throughout the engine.

    kq_poly(q)      quantum plane: yx - q xy
    weyl(m)         m-th Weyl algebra
    qweyl1(q)       one-generator-pair quantum Weyl algebra: yx - q xy - 1
    qweyl(m, q)     one-parameter quantum Weyl algebra on 2m generators
    hq(q)           the Hopf-algebra carrier on g, g^-1 (written gi), h
    dual_numbers()  k[h]/(h^2)
    quat(a, b)      generalized quaternions on i, j, k
    free(gens)      free algebra, no relations
    """
    key = name.lower().replace("-", "_")
    builder = _PRESETS.get(key)
    if builder is None:
        raise BadParameter(f"unknown preset {name!r}")
    return builder(**params)


def _preset_kq_poly(q):
    _require_invertible(q, "q")
    fld = q.field
    A = alphabet("x", "y")
    x, y = (NcPoly.gen(A, fld, n) for n in "xy")
    return Presentation(A, (y * x - x * y * q,), fld, name="kq_poly")


def _preset_weyl(m=1, field=QQ):
    if m < 1:
        raise BadParameter("m must be >= 1")
    names = [f"x{i}" for i in range(1, m + 1)] + [f"y{i}" for i in range(1, m + 1)]
    if m == 1:
        names = ["x", "y"]
    A = alphabet(*names)
    fld = field
    xs = [NcPoly.gen(A, fld, names[i]) for i in range(m)]
    ys = [NcPoly.gen(A, fld, names[m + i]) for i in range(m)]
    rels = []
    for i in range(m):
        for j in range(i + 1, m):
            rels.append(xs[i] * xs[j] - xs[j] * xs[i])
            rels.append(ys[i] * ys[j] - ys[j] * ys[i])
    one = NcPoly.one(A, fld)
    for i in range(m):
        for j in range(m):
            r = ys[i] * xs[j] - xs[j] * ys[i]
            if i == j:
                r = r - one
            rels.append(r)
    return Presentation(A, tuple(rels), fld, name=f"weyl({m})")


def _preset_qweyl1(q):
    _require_invertible(q, "q")
    fld = q.field
    A = alphabet("x", "y")
    x, y = (NcPoly.gen(A, fld, n) for n in "xy")
    return Presentation(A, (y * x - x * y * q - 1,), fld, name="qweyl1")


def _preset_qweyl(m, q):
    if m == 1:
        return _preset_qweyl1(q)
    if m < 1:
        raise BadParameter("m must be >= 1")
    _require_invertible(q, "q")
    fld = q.field
    names = [f"x{i}" for i in range(1, m + 1)] + [f"y{i}" for i in range(1, m + 1)]
    A = alphabet(*names)
    xs = [NcPoly.gen(A, fld, f"x{i}") for i in range(1, m + 1)]
    ys = [NcPoly.gen(A, fld, f"y{i}") for i in range(1, m + 1)]
    qinv = q.inv()
    q2 = q * q
    one = NcPoly.one(A, fld)
    rels = []
    for i in range(m):
        for j in range(m):
            if i < j:
                rels.append(xs[i] * xs[j] - xs[j] * xs[i] * q)
                rels.append(ys[i] * ys[j] - ys[j] * ys[i] * qinv)
            if i != j:
                rels.append(ys[i] * xs[j] - xs[j] * ys[i] * q)
    for i in range(m):
        r = ys[i] * xs[i] - one - xs[i] * ys[i] * q2
        for j in range(i + 1, m):
            r = r - xs[j] * ys[j] * (q2 - 1)
        rels.append(r)
    return Presentation(A, tuple(rels), fld, name=f"qweyl({m})")


def _preset_hq(q):
    """Carrier algebra of the q-deformed Hopf structure on g, g^-1, h.

    Besides the defining relations, the derived relation
    h*gi - q^2*gi*h (a consequence of g h = q^-2 h g ... i.e. of
    gh - q^2 hg and invertibility of g) is included so that the oriented
    system is locally confluent without completion.
    """
    _require_invertible(q, "q")
    fld = q.field
    A = alphabet("g", "gi", "h")
    g, gi, h = (NcPoly.gen(A, fld, n) for n in ("g", "gi", "h"))
    q2 = q * q
    rels = (
        g * gi - 1,
        gi * g - 1,
        g * h - h * g * q2,
        h * gi - gi * h * q2,
    )
    return Presentation(A, rels, fld, name="hq")


def _preset_dual_numbers(field=QQ):
    A = alphabet("h",)
    h = NcPoly.gen(A, field, "h")
    return Presentation(A, (h * h,), field, name="dual_numbers")


def _preset_quat(a, b):
    """Quaternion presentation on i, j, k.

    Relations are the three generating rules i^2 = a, j^2 = b, ij = -ji = k
    together with their degree-2 consequences (ik = a j, ki = -a j,
    jk = -b i, kj = b i, k^2 = -ab), which make the oriented system
    confluent with monomial basis {1, i, j, k}.
    """
    _require_invertible(a, "a")
    _require_invertible(b, "b")
    if a.field != b.field:
        raise BadParameter("a and b must share a field")
    fld = a.field
    A = alphabet("i", "j", "k")
    i, j, k = (NcPoly.gen(A, fld, n) for n in ("i", "j", "k"))
    rels = (
        i * i - a,
        j * j - b,
        i * j - k,
        j * i + k,
        i * k - j * a,
        k * i + j * a,
        j * k + i * b,
        k * j - i * b,
        k * k + a * b,
    )
    return Presentation(A, rels, fld, name="quat")


def _preset_free(gens=("x", "y"), field=QQ):
    return Presentation(alphabet(*gens), (), field, name="free")


_PRESETS = {
    "kq_poly": _preset_kq_poly,
    "weyl": _preset_weyl,
    "qweyl1": _preset_qweyl1,
    "qweyl": _preset_qweyl,
    "hq": _preset_hq,
    "dual_numbers": _preset_dual_numbers,
    "quat": _preset_quat,
    "free": _preset_free,
}


# ---------------------------------------------------------------------------
# ideal preservation under a degree-preserving linear substitution
# ---------------------------------------------------------------------------

@dataclass
class IdealMapResult:
    preserved: bool
    coefficients: list | None = None   # per relation: coordinates in the relation span
    lam: Scalar | None = None          # the single scalar when the span is 1-dim
    witness: tuple | None = None       # (relation index, image NcPoly)


def _quadratic_vector(p: NcPoly, n: int):
    vec = [p.field.zero()] * (n * n)
    for w, c in p.terms.items():
        if len(w) != 2:
            raise NonQuadraticRelation(
                "relations must be homogeneous of degree 2"
            )
        vec[w[0] * n + w[1]] = c
    return tuple(vec)


def ideal_preserved_by_linear_map(pres: Presentation, g: Matrix) -> IdealMapResult:
    """Decide whether the diagonal degree-2 action of g preserves the span
    of the (quadratic, homogeneous) relations.

    ``g`` maps the generator with index t to sum_s g[s, t] * generator_s
    (columns are images).  The image of each relation is computed on the
    degree-2 coefficient space and tested for membership in the span of
    the relations.
    """
    n = len(pres.alphabet)
    if g.shape() != (n, n):
        raise NonQuadraticRelation("matrix size must match the generator count")
    if g.field != pres.field:
        raise VariantMismatch("matrix field differs from presentation field")
    rel_vecs = [_quadratic_vector(r, n) for r in pres.relations]
    fld = pres.field
    zero = fld.zero()
    images = []
    for r in pres.relations:
        vec = [zero] * (n * n)
        for (u, v), c in r.terms.items():
            for s in range(n):
                gu = g[s, u]
                if gu.is_zero():
                    continue
                for t in range(n):
                    gv = g[t, v]
                    if gv.is_zero():
                        continue
                    idx = s * n + t
                    vec[idx] = vec[idx] + c * gu * gv
        images.append(tuple(vec))
    coeff_rows = []
    for ridx, img in enumerate(images):
        coords = in_span(fld, rel_vecs, img)
        if coords is None:
            witness_poly = NcPoly(
                pres.alphabet,
                fld,
                {(idx // n, idx % n): c for idx, c in enumerate(img)},
            )
            return IdealMapResult(False, witness=(ridx, witness_poly))
        coeff_rows.append(list(coords))
    lam = coeff_rows[0][0] if len(pres.relations) == 1 else None
    return IdealMapResult(True, coefficients=coeff_rows, lam=lam)
