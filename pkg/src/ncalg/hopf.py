"""Bialgebra and Hopf structures on finitely presented algebras.

Coproducts take values in the tensor square of the presented algebra,
stored with both components in normal form; since normal words tensor
normal words form a basis of H (x) H, zero-testing there is exact.  All
axiom checks are degree-bounded (the algebra may be infinite-dimensional)
and every result records the bound it was checked to.

Actions of a Hopf algebra on a presented algebra carry closed-form rules
per generator; the module-algebra checks run the two independent
computation paths (closed form vs iterated-coproduct extension) against
each other.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .errors import (
    ActionTableIncomplete,
    BadParameter,
    HeckeViolation,
    MissingAntipode,
    SizeNotSquare,
    VariantMismatch,
    VerificationFailed,
    ZeroQ,
)
from .freealg import NcPoly, Word
from .linalg import Matrix
from .rep import MatRep, verify_representation
from .rewrite import (
    Presentation,
    alphabet,
    basis_up_to_degree,
    check_local_confluence,
    preset,
)
from .scalars import QNumberContext, Scalar, q_number


def _ensure_confluent(pres: Presentation):
    """Certify local confluence; every critical word is shorter than twice
    the longest rule, so one bounded check settles all ambiguities."""
    rs = pres.rewrite_system()
    maxlen = max((len(r.lhs) for r in rs.rules), default=0)
    need = max(2 * maxlen - 1, maxlen, 1)
    if rs.confluent_degree < need:
        res = check_local_confluence(rs, need)
        if not res:
            raise VerificationFailed(
                f"rewrite system is not locally confluent: {res.counterexample}"
            )
    return rs


class TensorSquare:
    """Element of H (x) H with both components in normal form."""

    __slots__ = ("pres", "terms")

    def __init__(self, pres: Presentation, terms=None):
        self.pres = pres
        self.terms = {}
        for (w1, w2), c in (terms or {}).items():
            if not c.is_zero():
                self.terms[(tuple(w1), tuple(w2))] = c

    @classmethod
    def zero(cls, pres):
        return cls(pres)

    @classmethod
    def from_pair(cls, pres, left: NcPoly, right: NcPoly, coeff=1):
        left = pres.normal_form(left)
        right = pres.normal_form(right)
        c0 = pres.field.coerce(coeff)
        out = {}
        for w1, c1 in left.terms.items():
            for w2, c2 in right.terms.items():
                _accumulate(out, (w1, w2), c0 * c1 * c2)
        return cls(pres, out)

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        out = dict(self.terms)
        for key, c in other.terms.items():
            _accumulate(out, key, c)
        return TensorSquare(self.pres, out)

    def __sub__(self, other):
        return self + other.scale(self.pres.field.from_int(-1))

    def scale(self, c: Scalar):
        return TensorSquare(self.pres,
                            {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        """(a (x) b)(c (x) d) = ac (x) bd, renormalized componentwise."""
        pres = self.pres
        out = {}
        for (w1, w2), c in self.terms.items():
            for (u1, u2), d in other.terms.items():
                left = pres.normal_form(
                    NcPoly.monomial(pres.alphabet, pres.field, w1 + u1))
                right = pres.normal_form(
                    NcPoly.monomial(pres.alphabet, pres.field, w2 + u2))
                cd = c * d
                for v1, c1 in left.terms.items():
                    for v2, c2 in right.terms.items():
                        _accumulate(out, (v1, v2), cd * c1 * c2)
        return TensorSquare(pres, out)

    def __eq__(self, other):
        return isinstance(other, TensorSquare) and self.terms == other.terms

    def __repr__(self):
        ws = self.pres.alphabet.word_str
        bits = [f"{c!r}*({ws(w1)} (x) {ws(w2)})"
                for (w1, w2), c in sorted(self.terms.items())]
        return "TensorSquare(" + (" + ".join(bits) or "0") + ")"


def _accumulate(d, key, c):
    acc = d.get(key)
    acc = c if acc is None else acc + c
    if acc.is_zero():
        d.pop(key, None)
    else:
        d[key] = acc


@dataclass
class HopfStructure:
    """Coproduct/counit (and optional antipode) data on generators.

    The maps extend multiplicatively (the antipode anti-multiplicatively);
    nothing is assumed well-defined until the check operations say so.
    """

    pres: Presentation
    coproduct: dict
    counit: dict
    antipode: dict | None = None

    def __post_init__(self):
        for name in self.pres.alphabet.names:
            if name not in self.coproduct or name not in self.counit:
                raise BadParameter(f"missing coproduct/counit for {name!r}")
        self.counit = {k: self.pres.field.coerce(v)
                       for k, v in self.counit.items()}

    # multiplicative extensions ------------------------------------------
    def delta_word(self, w: Word) -> TensorSquare:
        out = TensorSquare.from_pair(self.pres, self.pres.one(), self.pres.one())
        for idx in w:
            out = out * self.coproduct[self.pres.alphabet.names[idx]]
        return out

    def delta(self, p: NcPoly) -> TensorSquare:
        out = TensorSquare.zero(self.pres)
        for w, c in p.terms.items():
            out = out + self.delta_word(w).scale(c)
        return out

    def eps_word(self, w: Word) -> Scalar:
        out = self.pres.field.one()
        for idx in w:
            out = out * self.counit[self.pres.alphabet.names[idx]]
        return out

    def eps(self, p: NcPoly) -> Scalar:
        out = self.pres.field.zero()
        for w, c in p.terms.items():
            out = out + c * self.eps_word(w)
        return out

    def antipode_word(self, w: Word) -> NcPoly:
        if self.antipode is None:
            raise MissingAntipode("no antipode declared")
        out = self.pres.one()
        for idx in reversed(w):
            out = out * self.antipode[self.pres.alphabet.names[idx]]
        return self.pres.normal_form(out)

    def antipode_poly(self, p: NcPoly) -> NcPoly:
        out = NcPoly.zero(self.pres.alphabet, self.pres.field)
        for w, c in p.terms.items():
            out = out + self.antipode_word(w) * c
        return self.pres.normal_form(out)


@dataclass
class CheckResult:
    ok: bool
    kind: str
    maxdeg: int | None = None
    witness: tuple | None = None  # (label, item, residual)

    def __bool__(self):
        return self.ok


def check_coproduct_algebra_map(H: HopfStructure) -> CheckResult:
    """Delta and epsilon must kill every relation (be well defined)."""
    _ensure_confluent(H.pres)
    for r in H.pres.relations:
        image = H.delta(r)
        if not image.is_zero():
            return CheckResult(False, "coproduct_algebra_map",
                               witness=("coproduct", r, image))
        eps_val = H.eps(r)
        if not eps_val.is_zero():
            return CheckResult(False, "coproduct_algebra_map",
                               witness=("counit", r, eps_val))
    return CheckResult(True, "coproduct_algebra_map")


def _basis_words(H, maxdeg):
    rs = _ensure_confluent(H.pres)
    return basis_up_to_degree(rs, maxdeg).words


def check_counit(H: HopfStructure, maxdeg: int = 6) -> CheckResult:
    """(eps (x) id) o Delta = id = (id (x) eps) o Delta on basis words."""
    A = H.pres.alphabet
    fld = H.pres.field
    for w in _basis_words(H, maxdeg):
        ts = H.delta_word(w)
        left = NcPoly.zero(A, fld)
        right = NcPoly.zero(A, fld)
        for (w1, w2), c in ts.terms.items():
            left = left + NcPoly.monomial(A, fld, w2, c * H.eps_word(w1))
            right = right + NcPoly.monomial(A, fld, w1, c * H.eps_word(w2))
        target = NcPoly.monomial(A, fld, w)
        if left != target or right != target:
            return CheckResult(False, "counit", maxdeg, ("word", w, (left, right)))
    return CheckResult(True, "counit", maxdeg)


def _cube_left(H, ts):
    out = {}
    for (w1, w2), c in ts.terms.items():
        inner = H.delta_word(w1)
        for (u1, u2), d in inner.terms.items():
            _accumulate(out, (u1, u2, w2), c * d)
    return out


def _cube_right(H, ts):
    out = {}
    for (w1, w2), c in ts.terms.items():
        inner = H.delta_word(w2)
        for (u1, u2), d in inner.terms.items():
            _accumulate(out, (w1, u1, u2), c * d)
    return out


def check_coassociativity(H: HopfStructure, maxdeg: int = 6) -> CheckResult:
    """(Delta (x) id) o Delta = (id (x) Delta) o Delta on basis words."""
    for w in _basis_words(H, maxdeg):
        ts = H.delta_word(w)
        if _cube_left(H, ts) != _cube_right(H, ts):
            return CheckResult(False, "coassociativity", maxdeg, ("word", w, None))
    return CheckResult(True, "coassociativity", maxdeg)


def check_antipode(H: HopfStructure, maxdeg: int = 6) -> CheckResult:
    """m o (S (x) id) o Delta = eta o eps = m o (id (x) S) o Delta.

    Also requires the anti-multiplicative extension of S to kill every
    relation, i.e. to be well defined on the quotient.
    """
    if H.antipode is None:
        raise MissingAntipode("no antipode declared")
    A = H.pres.alphabet
    fld = H.pres.field
    for r in H.pres.relations:
        rT = NcPoly.zero(A, fld)
        for w, c in r.terms.items():
            rT = rT + H.antipode_word(w) * c
        rT = H.pres.normal_form(rT)
        if not rT.is_zero():
            return CheckResult(False, "antipode", maxdeg,
                               ("relation", r, rT))
    one = H.pres.one()
    for w in _basis_words(H, maxdeg):
        ts = H.delta_word(w)
        left = NcPoly.zero(A, fld)
        right = NcPoly.zero(A, fld)
        for (w1, w2), c in ts.terms.items():
            left = left + H.antipode_word(w1) * NcPoly.monomial(A, fld, w2) * c
            right = right + NcPoly.monomial(A, fld, w1) * H.antipode_word(w2) * c
        target = one * H.eps_word(w)
        if H.pres.normal_form(left) != target or \
                H.pres.normal_form(right) != target:
            return CheckResult(False, "antipode", maxdeg, ("word", w, (left, right)))
    return CheckResult(True, "antipode", maxdeg)


def check_bialgebra(H: HopfStructure, maxdeg: int = 6) -> list:
    """Run all structure checks; returns the list of CheckResults."""
    results = [check_coproduct_algebra_map(H)]
    if results[0].ok:
        results.append(check_counit(H, maxdeg))
        results.append(check_coassociativity(H, maxdeg))
        if H.antipode is not None:
            results.append(check_antipode(H, maxdeg))
    return results


# ---------------------------------------------------------------------------
# actions on a presented algebra
# ---------------------------------------------------------------------------

@dataclass
class ActionSpec:
    """Action of the Hopf generators on basis words of the target algebra.

    ``rules`` maps H-generator names to callables Word -> NcPoly (closed
    forms); ``table`` maps (generator, word) pairs for finite coverage.
    """

    hopf: HopfStructure
    target: Presentation
    rules: dict = dc_field(default_factory=dict)
    table: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        if self.hopf.pres.field != self.target.field:
            raise VariantMismatch("action needs a shared scalar field")

    def generator_action(self, gen: str, word: Word) -> NcPoly:
        rule = self.rules.get(gen)
        if rule is not None:
            return rule(tuple(word))
        entry = self.table.get((gen, tuple(word)))
        if entry is None:
            raise ActionTableIncomplete(f"no action of {gen!r} on word {word}")
        return entry

    def _apply_generator(self, gen: str, p: NcPoly) -> NcPoly:
        out = NcPoly.zero(self.target.alphabet, self.target.field)
        for w, c in p.terms.items():
            out = out + self.generator_action(gen, w) * c
        return out


def act(spec: ActionSpec, h: NcPoly, a: NcPoly) -> NcPoly:
    """Apply an element of H to an element of the target algebra.

    Products in H act by composition; the inputs are brought to normal
    form first.
    """
    hp = spec.hopf.pres.normal_form(h)
    ap = spec.target.normal_form(a)
    names = spec.hopf.pres.alphabet.names
    out = NcPoly.zero(spec.target.alphabet, spec.target.field)
    for hw, hc in hp.terms.items():
        cur = ap
        for idx in reversed(hw):
            cur = spec._apply_generator(names[idx], cur)
        out = out + cur * hc
    return spec.target.normal_form(out)


def _iterated_coproduct(H: HopfStructure, p: NcPoly, k: int) -> dict:
    """k-fold tensor expansion of p (k >= 1): dict[word-tuple -> scalar]."""
    tensors = {(w,): c for w, c in H.pres.normal_form(p).terms.items()}
    for _ in range(k - 1):
        new = {}
        for tup, c in tensors.items():
            ts = H.delta_word(tup[-1])
            for (u1, u2), d in ts.terms.items():
                _accumulate(new, tup[:-1] + (u1, u2), c * d)
        tensors = new
    return tensors


def act_on_free_word(spec: ActionSpec, h: NcPoly, w: Word) -> NcPoly:
    """Sweedler extension of the action to an arbitrary free-algebra word:
    h(l1 ... lk) = sum h_(1)(l1) ... h_(k)(lk)."""
    A, fld = spec.target.alphabet, spec.target.field
    k = len(w)
    H = spec.hopf
    if k == 0:
        return NcPoly.one(A, fld) * H.eps(h)
    out = NcPoly.zero(A, fld)
    for tup, c in _iterated_coproduct(H, h, k).items():
        prod = NcPoly.one(A, fld)
        names = H.pres.alphabet.names
        for comp_word, letter in zip(tup, w):
            letter_poly = NcPoly.monomial(A, fld, (letter,))
            cur = letter_poly
            for idx in reversed(comp_word):
                cur = spec._apply_generator(names[idx], cur)
            prod = prod * cur
        out = out + prod * c
    return spec.target.normal_form(out)


def check_module_algebra(spec: ActionSpec, maxdeg: int = 6) -> CheckResult:
    """Module-algebra conditions for the action.

    (i) every relation of H acts as zero on target basis words up to the
    degree bound; (ii) the action sends every target relation (lifted to
    the free algebra, extended by the Sweedler rule) into the ideal.
    """
    rs = _ensure_confluent(spec.target)
    words = basis_up_to_degree(rs, maxdeg).words
    for rho in spec.hopf.pres.relations:
        for w in words:
            target_word = NcPoly.monomial(spec.target.alphabet,
                                          spec.target.field, w)
            img = act(spec, rho, target_word)
            if not img.is_zero():
                return CheckResult(False, "module_algebra", maxdeg,
                                   ("hopf_relation", rho, (w, img)))
    gen_names = spec.hopf.pres.alphabet.names
    for r in spec.target.relations:
        for gen in gen_names:
            hgen = NcPoly.gen(spec.hopf.pres.alphabet, spec.hopf.pres.field, gen)
            img = NcPoly.zero(spec.target.alphabet, spec.target.field)
            for w, c in r.terms.items():
                img = img + act_on_free_word(spec, hgen, w) * c
            img = spec.target.normal_form(img)
            if not img.is_zero():
                return CheckResult(False, "module_algebra", maxdeg,
                                   ("target_relation", r, (gen, img)))
    return CheckResult(True, "module_algebra", maxdeg)


def check_action_sweedler_consistency(spec: ActionSpec, h: NcPoly,
                                      a: NcPoly, b: NcPoly) -> bool:
    """h(a*b) computed directly must match sum h1(a) h2(b)."""
    direct = act(spec, h, a * b)
    an = spec.target.normal_form(a)
    bn = spec.target.normal_form(b)
    out = NcPoly.zero(spec.target.alphabet, spec.target.field)
    for (w1, w2), c in spec.hopf.delta(h).terms.items():
        names = spec.hopf.pres.alphabet.names
        left = an
        for idx in reversed(w1):
            left = spec._apply_generator(names[idx], left)
        right = bn
        for idx in reversed(w2):
            right = spec._apply_generator(names[idx], right)
        out = out + left * right * c
    return direct == spec.target.normal_form(out)


# ---------------------------------------------------------------------------
# tensor and dual modules
# ---------------------------------------------------------------------------

def tensor_module(H: HopfStructure, r1: MatRep, r2: MatRep) -> MatRep:
    """Action on the tensor product through the coproduct."""
    mats = {}
    for gen in H.pres.alphabet.names:
        ts = H.coproduct[gen]
        total = None
        for (w1, w2), c in ts.terms.items():
            term = r1.evaluate_word(w1).kron(r2.evaluate_word(w2)) * c
            total = term if total is None else total + term
        if total is None:
            total = Matrix.zeros(H.pres.field, r1.dim * r2.dim)
        mats[gen] = total
    rep = MatRep(H.pres, mats)
    ver = verify_representation(H.pres, rep)
    if not ver.ok:
        raise VerificationFailed("tensor module violates the relations")
    return rep


def dual_module(H: HopfStructure, r: MatRep) -> MatRep:
    """Action on the linear dual through the antipode: transpose of r(S(g))."""
    if H.antipode is None:
        raise MissingAntipode("dual module needs an antipode")
    mats = {}
    for gen in H.pres.alphabet.names:
        s_img = H.antipode[gen]
        mats[gen] = r.evaluate(s_img).transpose()
    rep = MatRep(H.pres, mats)
    ver = verify_representation(H.pres, rep)
    if not ver.ok:
        raise VerificationFailed("dual module violates the relations")
    return rep


def trivial_module(H: HopfStructure) -> MatRep:
    """The one-dimensional module where each generator acts by its counit."""
    mats = {gen: Matrix(H.pres.field, [[H.counit[gen]]])
            for gen in H.pres.alphabet.names}
    return MatRep(H.pres, mats)


# ---------------------------------------------------------------------------
# braidings and Hecke symmetries
# ---------------------------------------------------------------------------

def _tensor_dim(c: Matrix) -> int:
    if not c.is_square():
        raise SizeNotSquare("operator on V (x) V must be square")
    n = c.nrows
    m = int(round(n ** 0.5))
    if m * m != n:
        raise SizeNotSquare("matrix size is not a perfect square")
    return m


def check_braid(c: Matrix) -> CheckResult:
    """Braid relation (c12 c23 c12 = c23 c12 c23) checked exactly on V^3."""
    m = _tensor_dim(c)
    ident = Matrix.identity(c.field, m)
    c12 = c.kron(ident)
    c23 = ident.kron(c)
    lhs = c12 * c23 * c12
    rhs = c23 * c12 * c23
    if lhs == rhs:
        return CheckResult(True, "braid")
    return CheckResult(False, "braid", witness=("residual", lhs - rhs, None))


def check_hecke(Hmat: Matrix, q: Scalar) -> CheckResult:
    """(H - q id)(H + q^-1 id) = 0 plus the braid relation."""
    q = Hmat.field.coerce(q)
    if q.is_zero():
        raise ZeroQ("q must be invertible")
    n = Hmat.nrows
    _tensor_dim(Hmat)
    ident = Matrix.identity(Hmat.field, n)
    quad = (Hmat - ident * q) * (Hmat + ident * q.inv())
    if not quad.is_zero():
        return CheckResult(False, "hecke", witness=("quadratic", quad, None))
    braid = check_braid(Hmat)
    if not braid.ok:
        return CheckResult(False, "hecke", witness=("braid", None, None))
    return CheckResult(True, "hecke")


def flip_operator(field, m: int) -> Matrix:
    """The flip v (x) w -> w (x) v on an m-dimensional space."""
    n = m * m
    z, o = field.zero(), field.one()
    rows = [[z] * n for _ in range(n)]
    for i in range(m):
        for j in range(m):
            rows[j * m + i][i * m + j] = o
    return Matrix(field, rows)


def standard_hecke_operator(q: Scalar, m: int) -> Matrix:
    """The one-parameter Hecke symmetry deforming the flip.

    e_i (x) e_i -> q e_i (x) e_i; e_i (x) e_j -> e_j (x) e_i for i < j;
    e_i (x) e_j -> e_j (x) e_i + (q - q^-1) e_i (x) e_j for i > j.
    """
    fld = q.field
    n = m * m
    z = fld.zero()
    o = fld.one()
    rows = [[z] * n for _ in range(n)]
    qdiff = q - q.inv()
    for i in range(m):
        for j in range(m):
            col = i * m + j
            if i == j:
                rows[col][col] = q
            elif i < j:
                rows[j * m + i][col] = o
            else:
                rows[j * m + i][col] = o
                rows[col][col] = qdiff
    return Matrix(fld, rows)


def hecke_symmetric_algebra(Hmat: Matrix, q: Scalar, gens=None) -> Presentation:
    """Quadratic algebra T(V)/(Image(H - q id)).

    The degree-2 relations are a canonical (echelonized) basis of the
    image of H - q id on V (x) V.
    """
    q = Hmat.field.coerce(q)
    hecke = check_hecke(Hmat, q)
    if not hecke.ok:
        raise HeckeViolation("operator is not a Hecke symmetry at this q")
    m = _tensor_dim(Hmat)
    if gens is None:
        gens = tuple(f"x{i}" for i in range(1, m + 1))
    if len(gens) != m:
        raise BadParameter("generator count must match the tensor dimension")
    A = alphabet(*gens)
    fld = Hmat.field
    ident = Matrix.identity(fld, m * m)
    diff = Hmat - ident * q
    image_rows, _ = diff.transpose().rref()
    relations = []
    for row in image_rows.rows:
        if all(x.is_zero() for x in row):
            continue
        terms = {}
        for idx, c in enumerate(row):
            if not c.is_zero():
                terms[(idx // m, idx % m)] = c
        relations.append(NcPoly(A, fld, terms))
    return Presentation(A, tuple(relations), fld, name="hecke_symmetric")


# ---------------------------------------------------------------------------
# the concrete q-deformed structure and its action on the quantum plane
# ---------------------------------------------------------------------------

def hq_hopf(q: Scalar) -> HopfStructure:
    """The Hopf structure on the preset algebra with generators g, gi, h:
    g grouplike, h skew-primitive (Delta h = 1 (x) h + h (x) g),
    S(g) = gi, S(h) = -h gi."""
    pres = preset("hq", q=q)
    g = pres.gen("g")
    gi = pres.gen("gi")
    h = pres.gen("h")
    one = pres.one()
    coproduct = {
        "g": TensorSquare.from_pair(pres, g, g),
        "gi": TensorSquare.from_pair(pres, gi, gi),
        "h": TensorSquare.from_pair(pres, one, h) +
             TensorSquare.from_pair(pres, h, g),
    }
    counit = {"g": 1, "gi": 1, "h": 0}
    antipode = {"g": gi, "gi": g, "h": -(h * gi)}
    return HopfStructure(pres, coproduct, counit, antipode)


def _xy_exponents(word: Word) -> tuple:
    """Split a normal word of the quantum plane into (i, j) with x^i y^j."""
    i = 0
    k = 0
    while k < len(word) and word[k] == 0:
        i += 1
        k += 1
    j = len(word) - k
    if any(idx != 1 for idx in word[k:]):
        raise ActionTableIncomplete(f"word {word} is not of the form x^i y^j")
    return i, j


def hq_action_on_quantum_plane(H: HopfStructure, target: Presentation,
                               q: Scalar) -> ActionSpec:
    """Closed-form action on the quantum plane basis x^i y^j:

    g   -> q^(i-j) x^i y^j
    gi  -> q^(j-i) x^i y^j
    h   -> [j]_q x^(i+1) y^(j-1)

    ``q`` must be the parameter both presentations were built from.
    """
    fld = target.field
    A = target.alphabet
    q = fld.coerce(q)
    ctx = QNumberContext(q)

    def monom(i, j, coeff):
        return NcPoly.monomial(A, fld, (0,) * i + (1,) * j, coeff)

    def act_g(word):
        i, j = _xy_exponents(word)
        return monom(i, j, q ** (i - j))

    def act_gi(word):
        i, j = _xy_exponents(word)
        return monom(i, j, q ** (j - i))

    def act_h(word):
        i, j = _xy_exponents(word)
        if j == 0:
            return NcPoly.zero(A, fld)
        return monom(i + 1, j - 1, q_number(j, ctx))

    return ActionSpec(H, target, rules={"g": act_g, "gi": act_gi, "h": act_h})
