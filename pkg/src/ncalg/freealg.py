"""Free (tensor) algebras: words, noncommutative polynomials, evaluation.

Words are tuples of generator indices; the empty word is the identity.
The monomial order used throughout is degree-lexicographic (deglex) with
the alphabet order, which every preset relation set orients into a
terminating rewrite system.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .errors import AlphabetMismatch, SizeMismatch, VariantMismatch
from .linalg import Matrix
from .scalars import Field, Scalar

Word = tuple  # tuple of generator indices


@dataclass(frozen=True)
class Alphabet:
    """Ordered generator names; the order induces the monomial order."""

    names: tuple

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise AlphabetMismatch("generator names must be unique")

    @cached_property
    def _index(self):
        return {name: i for i, name in enumerate(self.names)}

    def __len__(self):
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise AlphabetMismatch(f"unknown generator {name!r}") from None

    def word(self, *names) -> Word:
        return tuple(self.index(n) for n in names)

    def word_str(self, w: Word) -> str:
        return "*".join(self.names[i] for i in w) if w else "1"


def alphabet(*names) -> Alphabet:
    return Alphabet(tuple(names))


def deglex_key(w: Word):
    return (len(w), w)


class NcPoly:
    """Finitely supported map from words to scalars of one field."""

    __slots__ = ("alphabet", "field", "terms")

    def __init__(self, alphabet: Alphabet, field: Field, terms=None):
        self.alphabet = alphabet
        self.field = field
        clean = {}
        for w, c in (terms or {}).items():
            c = field.coerce(c)
            if not c.is_zero():
                clean[tuple(w)] = c
        self.terms = clean

    # constructors ------------------------------------------------------
    @classmethod
    def zero(cls, alphabet, field):
        return cls(alphabet, field)

    @classmethod
    def one(cls, alphabet, field):
        return cls(alphabet, field, {(): field.one()})

    @classmethod
    def monomial(cls, alphabet, field, word, coeff=1):
        return cls(alphabet, field, {tuple(word): coeff})

    @classmethod
    def gen(cls, alphabet, field, name):
        return cls.monomial(alphabet, field, (alphabet.index(name),))

    # queries ------------------------------------------------------------
    def is_zero(self):
        return not self.terms

    def degree(self):
        return max((len(w) for w in self.terms), default=-1)

    def leading_term(self):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        w = max(self.terms, key=deglex_key)
        return w, self.terms[w]

    def coeff(self, word) -> Scalar:
        return self.terms.get(tuple(word), self.field.zero())

    def sorted_terms(self, reverse=True):
        return sorted(self.terms.items(), key=lambda t: deglex_key(t[0]), reverse=reverse)

    def _check(self, other):
        if self.alphabet != other.alphabet:
            raise AlphabetMismatch("polynomials over different alphabets")
        if self.field != other.field:
            raise VariantMismatch("polynomials over different fields")

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, NcPoly):
            other = NcPoly(self.alphabet, self.field, {(): other})
        self._check(other)
        terms = dict(self.terms)
        for w, c in other.terms.items():
            acc = terms.get(w)
            acc = c if acc is None else acc + c
            if acc.is_zero():
                terms.pop(w, None)
            else:
                terms[w] = acc
        out = NcPoly.__new__(NcPoly)
        out.alphabet, out.field, out.terms = self.alphabet, self.field, terms
        return out

    __radd__ = __add__

    def __neg__(self):
        out = NcPoly.__new__(NcPoly)
        out.alphabet, out.field = self.alphabet, self.field
        out.terms = {w: -c for w, c in self.terms.items()}
        return out

    def __sub__(self, other):
        if not isinstance(other, NcPoly):
            other = NcPoly(self.alphabet, self.field, {(): other})
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, NcPoly):
            c = self.field.coerce(other)
            return NcPoly(self.alphabet, self.field,
                          {w: a * c for w, a in self.terms.items()})
        self._check(other)
        terms = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                c = c1 * c2
                acc = terms.get(w)
                acc = c if acc is None else acc + c
                if acc.is_zero():
                    terms.pop(w, None)
                else:
                    terms[w] = acc
        out = NcPoly.__new__(NcPoly)
        out.alphabet, out.field, out.terms = self.alphabet, self.field, terms
        return out

    def __rmul__(self, other):
        # scalars commute with everything
        return self * other

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers undefined in a free algebra")
        out = NcPoly.one(self.alphabet, self.field)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, NcPoly):
            return NotImplemented
        return (
            self.alphabet == other.alphabet
            and self.field == other.field
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.alphabet, self.field, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "NcPoly(0)"
        bits = []
        for w, c in self.sorted_terms():
            bits.append(f"{c!r}*{self.alphabet.word_str(w)}")
        return "NcPoly(" + " + ".join(bits) + ")"


def evaluate_on_matrices(p: NcPoly, assignment: dict) -> Matrix:
    """Algebra homomorphism: words to matrix products, identity word to I.

    ``assignment`` maps generator names to square matrices of one size
    over the polynomial's field.
    """
    mats = {}
    n = None
    for name, M in assignment.items():
        if not M.is_square():
            raise SizeMismatch(f"matrix for {name} is not square")
        if n is None:
            n = M.nrows
        elif M.nrows != n:
            raise SizeMismatch("matrices of different sizes")
        if M.field != p.field:
            raise VariantMismatch("matrix field differs from polynomial field")
        mats[p.alphabet.index(name)] = M
    if n is None:
        raise SizeMismatch("empty assignment")
    acc = Matrix.zeros(p.field, n)
    ident = Matrix.identity(p.field, n)
    for w, c in p.terms.items():
        M = ident
        for idx in w:
            try:
                M = M * mats[idx]
            except KeyError:
                raise SizeMismatch(
                    f"no matrix assigned to generator {p.alphabet.names[idx]!r}"
                ) from None
        acc = acc + M * c
    return acc
