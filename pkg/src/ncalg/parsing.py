"""Text formats: expressions, scalars, presentation and Hopf files, matrix JSON.

Round-tripping is bit-exact: serialize(parse(t)) parses back to an equal
value.  Expression syntax: `*` for products (juxtaposition also works),
`+`/`-`, `^` for integer powers, parentheses, integer literals; `/` is
division by a scalar-valued subexpression.  Scalar fields are written
`Q`, `Qq`, `cyclo N`, or `R`; the cyclotomic generator is `z`, the
rational-function indeterminate is `q`.  In tensor expressions the token
`(x)` separates the two legs.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .errors import BadParameter, ParseError
from .freealg import Alphabet, NcPoly, deglex_key
from .hopf import HopfStructure, TensorSquare
from .linalg import Matrix
from .rewrite import Presentation, preset
from .scalars import (
    QQ,
    Approx,
    Cyc,
    CyclotomicField,
    Field,
    Qq,
    Rat,
    RatFun,
    RR,
    Scalar,
    cyclotomic_field,
)

SCHEMA_VERSION = 1


# ---------------------------------------------------------------------------
# field specs
# ---------------------------------------------------------------------------

def parse_field(text: str) -> Field:
    parts = text.strip().split()
    if not parts:
        raise ParseError("empty field spec")
    head = parts[0]
    if head == "Q" and len(parts) == 1:
        return QQ
    if head == "Qq" and len(parts) == 1:
        return Qq
    if head == "R" and len(parts) == 1:
        return RR
    if head == "cyclo" and len(parts) == 2 and parts[1].isdigit():
        return cyclotomic_field(int(parts[1]))
    raise ParseError(f"unknown field spec {text!r}")


def format_field(field: Field) -> str:
    return field.name


# ---------------------------------------------------------------------------
# tokenizer
# ---------------------------------------------------------------------------

_OPS = set("+-*/^()")


def _tokenize(text: str):
    tokens = []
    i, line, col = 0, 1, 1
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            i += 1
            col += 1
            continue
        if ch in _OPS:
            tokens.append((ch, ch, line, col))
            i += 1
            col += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("num", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[i:j], line, col))
            col += j - i
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    return tokens


class _ExprParser:
    """Recursive descent over tokens, producing an NcPoly."""

    def __init__(self, tokens, alphabet: Alphabet, field: Field):
        self.tokens = tokens
        self.pos = 0
        self.alphabet = alphabet
        self.field = field

    def _peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _next(self):
        tok = self._peek()
        if tok is None:
            raise ParseError("unexpected end of expression")
        self.pos += 1
        return tok

    def parse(self) -> NcPoly:
        value = self.expr()
        tok = self._peek()
        if tok is not None:
            raise ParseError(f"unexpected token {tok[1]!r}", tok[2], tok[3])
        return value

    def expr(self) -> NcPoly:
        value = self.term()
        while True:
            tok = self._peek()
            if tok is None or tok[0] not in "+-":
                return value
            self._next()
            rhs = self.term()
            value = value + rhs if tok[0] == "+" else value - rhs

    def term(self) -> NcPoly:
        value = self.factor()
        while True:
            tok = self._peek()
            if tok is None:
                return value
            if tok[0] == "*":
                self._next()
                value = value * self.factor()
            elif tok[0] == "/":
                self._next()
                value = value * self._scalar_inv(self.factor(), tok)
            elif tok[0] in ("num", "name", "("):
                value = value * self.factor()  # juxtaposition
            else:
                return value

    def factor(self) -> NcPoly:
        tok = self._peek()
        if tok is not None and tok[0] == "-":
            self._next()
            return -self.factor()
        return self.power()

    def power(self) -> NcPoly:
        base = self.atom()
        tok = self._peek()
        if tok is not None and tok[0] == "^":
            self._next()
            sign = 1
            tok2 = self._next()
            if tok2[0] == "-":
                sign = -1
                tok2 = self._next()
            if tok2[0] != "num":
                raise ParseError("exponent must be an integer", tok2[2], tok2[3])
            e = sign * int(tok2[1])
            if e < 0:
                inv = self._scalar_inv(base, tok2)
                return inv ** (-e)
            return base ** e
        return base

    def atom(self) -> NcPoly:
        tok = self._next()
        kind, text, line, col = tok
        if kind == "num":
            return NcPoly.one(self.alphabet, self.field) * int(text)
        if kind == "(":
            value = self.expr()
            closing = self._next()
            if closing[0] != ")":
                raise ParseError("expected ')'", closing[2], closing[3])
            return value
        if kind == "name":
            if text in self.alphabet.names:
                return NcPoly.gen(self.alphabet, self.field, text)
            special = _special_scalar(self.field, text)
            if special is not None:
                return NcPoly.one(self.alphabet, self.field) * special
            raise ParseError(f"unknown name {text!r}", line, col)
        raise ParseError(f"unexpected token {text!r}", line, col)

    def _scalar_inv(self, p: NcPoly, tok) -> NcPoly:
        if p.degree() > 0:
            raise ParseError("division by a non-scalar expression",
                             tok[2], tok[3])
        c = p.coeff(())
        if c.is_zero():
            raise ParseError("division by zero", tok[2], tok[3])
        return NcPoly.one(self.alphabet, self.field) * c.inv()


def _special_scalar(field: Field, name: str):
    if name == "q" and field == Qq:
        return field.q()
    if name == "z" and isinstance(field, CyclotomicField):
        return field.zeta()
    return None


def parse_expression(text: str, alphabet: Alphabet, field: Field) -> NcPoly:
    return _ExprParser(_tokenize(text), alphabet, field).parse()


def parse_scalar(text: str, field: Field | None = None) -> Scalar:
    """Parse a scalar; `expr @ field` suffixes pick the field inline."""
    if "@" in text:
        body, _, fspec = text.partition("@")
        field = parse_field(fspec)
        text = body
    if field is None:
        field = QQ
    if field == RR:
        try:
            return Approx(float(text))
        except ValueError:
            raise ParseError(f"bad real literal {text!r}") from None
    empty = Alphabet(())
    p = parse_expression(text, empty, field)
    if p.degree() > 0:
        raise ParseError("expected a scalar, found generators")
    return p.coeff(())


# ---------------------------------------------------------------------------
# formatting
# ---------------------------------------------------------------------------

def _format_fraction(fr: Fraction) -> str:
    return str(fr.numerator) if fr.denominator == 1 else f"{fr.numerator}/{fr.denominator}"


def _format_univariate(coeffs, var: str) -> str:
    """Dense Fraction coefficients, low degree first, printed high first."""
    terms = []
    for deg in range(len(coeffs) - 1, -1, -1):
        c = coeffs[deg]
        if c == 0:
            continue
        if deg == 0:
            body = _format_fraction(abs(c))
        else:
            mag = abs(c)
            head = "" if mag == 1 else _format_fraction(mag) + "*"
            body = head + (var if deg == 1 else f"{var}^{deg}")
        terms.append(("-" if c < 0 else "+", body))
    if not terms:
        return "0"
    sign, body = terms[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def format_scalar(s: Scalar, with_field_tag: bool = False) -> str:
    if isinstance(s, Rat):
        return _format_fraction(s.value)
    if isinstance(s, Cyc):
        body = _format_univariate(list(s.coeffs), "z")
        return f"{body} @ cyclo {s.field.ell}" if with_field_tag else body
    if isinstance(s, RatFun):
        num = _format_univariate(list(s.num), "q")
        if s.den == (Fraction(1),):
            body = num
        else:
            den = _format_univariate(list(s.den), "q")
            body = f"({num})/({den})"
        return f"{body} @ Qq" if with_field_tag else body
    if isinstance(s, Approx):
        return format(s.value, ".17g")
    raise BadParameter(f"unknown scalar {s!r}")


def _has_toplevel_sign(text: str) -> bool:
    depth = 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif depth == 0 and ch == "+":
            return True
        elif depth == 0 and ch == "-" and i > 0:
            return True
    return False


def _coeff_piece(cs: str, word: str | None):
    """(sign, body) for a coefficient string and optional word string."""
    sign = "+"
    if cs.startswith("-") and not _has_toplevel_sign(cs[1:]):
        sign, cs = "-", cs[1:]
    composite = _has_toplevel_sign(cs) or cs.startswith("-")
    if word is None:
        body = f"({cs})" if composite else cs
    elif cs == "1":
        body = word
    elif composite:
        body = f"({cs})*{word}"
    else:
        body = f"{cs}*{word}"
    return sign, body


def _format_word(alphabet: Alphabet, w) -> str:
    if not w:
        return "1"
    runs = []
    for idx in w:
        if runs and runs[-1][0] == idx:
            runs[-1][1] += 1
        else:
            runs.append([idx, 1])
    return "*".join(
        alphabet.names[idx] if e == 1 else f"{alphabet.names[idx]}^{e}"
        for idx, e in runs
    )


def format_ncpoly(p: NcPoly) -> str:
    if p.is_zero():
        return "0"
    pieces = []
    for w, c in p.sorted_terms():
        word = _format_word(p.alphabet, w) if w else None
        pieces.append(_coeff_piece(format_scalar(c), word))
    sign, body = pieces[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


# ---------------------------------------------------------------------------
# presentation files
# ---------------------------------------------------------------------------

def parse_presentation(text: str) -> Presentation:
    """Header lines `field:` and `gens:`, then one relation per line."""
    field = None
    gens = None
    name = None
    relations = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("field:"):
            field = parse_field(line[len("field:"):])
            continue
        if line.startswith("gens:"):
            gens = tuple(line[len("gens:"):].split())
            continue
        if line.startswith("name:"):
            name = line[len("name:"):].strip()
            continue
        if field is None or gens is None:
            raise ParseError("field: and gens: must precede relations", lineno)
        alphabet = Alphabet(gens)
        try:
            relations.append(parse_expression(line, alphabet, field))
        except ParseError as exc:
            raise ParseError(f"bad relation: {exc}", lineno) from None
    if field is None or gens is None:
        raise ParseError("missing field: or gens: header")
    return Presentation(Alphabet(gens), tuple(relations), field, name=name)


def format_presentation(pres: Presentation) -> str:
    lines = []
    if pres.name:
        lines.append(f"name: {pres.name}")
    lines.append(f"field: {format_field(pres.field)}")
    lines.append("gens: " + " ".join(pres.alphabet.names))
    for r in pres.relations:
        lines.append(format_ncpoly(r))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Hopf structure files
# ---------------------------------------------------------------------------

TENSOR_MARK = "(x)"


def _parse_tensor_expr(text: str, pres: Presentation) -> TensorSquare:
    """Sums of `left (x) right` with signs; each leg is an expression."""
    marked = text.replace(TENSOR_MARK, "\x01")
    summands = []
    depth = 0
    cur = []
    sign = 1
    for ch in marked:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if depth == 0 and ch in "+-" and cur and "".join(cur).strip():
            summands.append((sign, "".join(cur)))
            sign = 1 if ch == "+" else -1
            cur = []
            continue
        if depth == 0 and ch in "+-" and not "".join(cur).strip():
            sign = sign if ch == "+" else -sign
            continue
        cur.append(ch)
    if "".join(cur).strip():
        summands.append((sign, "".join(cur)))
    out = TensorSquare.zero(pres)
    for sgn, chunk in summands:
        if "\x01" not in chunk:
            raise ParseError(f"tensor summand missing {TENSOR_MARK}: {chunk!r}")
        left_text, _, right_text = chunk.partition("\x01")
        left = parse_expression(left_text, pres.alphabet, pres.field)
        right = parse_expression(right_text, pres.alphabet, pres.field)
        out = out + TensorSquare.from_pair(pres, left * sgn, right)
    return out


def format_tensor_square(ts: TensorSquare) -> str:
    if ts.is_zero():
        return "0"
    pieces = []
    A = ts.pres.alphabet
    for (w1, w2), c in sorted(ts.terms.items(),
                              key=lambda t: (deglex_key(t[0][0]), deglex_key(t[0][1]))):
        pair = f"{_format_word(A, w1)} {TENSOR_MARK} {_format_word(A, w2)}"
        sign, body = _coeff_piece(format_scalar(c), pair)
        pieces.append((sign, body))
    sign, body = pieces[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


def parse_hopf_file(text: str) -> HopfStructure:
    """Presentation headers and relations, then `coproduct:`, `counit:` and
    optional `antipode:` blocks with `gen -> expr` lines."""
    pres_lines = []
    blocks = {"coproduct": [], "counit": [], "antipode": []}
    current = None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].rstrip()
        stripped = line.strip()
        if not stripped:
            continue
        low = stripped.lower()
        if low in ("coproduct:", "counit:", "antipode:"):
            current = low[:-1]
            continue
        if current is None:
            pres_lines.append(line)
        else:
            blocks[current].append(stripped)
    pres = parse_presentation("\n".join(pres_lines))

    def split_arrow(line):
        if "->" not in line:
            raise ParseError(f"expected 'gen -> value': {line!r}")
        gen, _, value = line.partition("->")
        return gen.strip(), value.strip()

    coproduct = {}
    for line in blocks["coproduct"]:
        gen, value = split_arrow(line)
        coproduct[gen] = _parse_tensor_expr(value, pres)
    counit = {}
    for line in blocks["counit"]:
        gen, value = split_arrow(line)
        counit[gen] = parse_scalar(value, pres.field)
    antipode = None
    if blocks["antipode"]:
        antipode = {}
        for line in blocks["antipode"]:
            gen, value = split_arrow(line)
            antipode[gen] = parse_expression(value, pres.alphabet, pres.field)
    return HopfStructure(pres, coproduct, counit, antipode)


def format_hopf_file(H: HopfStructure) -> str:
    lines = [format_presentation(H.pres).rstrip(), "coproduct:"]
    for gen in H.pres.alphabet.names:
        lines.append(f"{gen} -> {format_tensor_square(H.coproduct[gen])}")
    lines.append("counit:")
    for gen in H.pres.alphabet.names:
        lines.append(f"{gen} -> {format_scalar(H.counit[gen])}")
    if H.antipode is not None:
        lines.append("antipode:")
        for gen in H.pres.alphabet.names:
            lines.append(f"{gen} -> {format_ncpoly(H.antipode[gen])}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# matrices as JSON
# ---------------------------------------------------------------------------

def matrix_to_json(M: Matrix) -> dict:
    return {
        "field": format_field(M.field),
        "entries": [[format_scalar(x) for x in row] for row in M.rows],
    }


def matrix_from_json(obj: dict) -> Matrix:
    field = parse_field(obj["field"])
    rows = [[parse_scalar(e, field) for e in row] for row in obj["entries"]]
    return Matrix(field, rows)


def matrices_to_json(field: Field, mats: dict) -> dict:
    return {
        "field": format_field(field),
        "matrices": {
            name: [[format_scalar(x) for x in row] for row in M.rows]
            for name, M in mats.items()
        },
    }


def matrices_from_json(obj: dict, field: Field | None = None) -> dict:
    fld = parse_field(obj["field"]) if "field" in obj else field
    if fld is None:
        raise ParseError("matrix JSON needs a field")
    return {
        name: Matrix(fld, [[parse_scalar(e, fld) for e in row] for row in rows])
        for name, rows in obj["matrices"].items()
    }


# ---------------------------------------------------------------------------
# classification report serialization
# ---------------------------------------------------------------------------

def classification_report_to_json(report) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "order": report.order,
        "q": format_scalar(report.q, with_field_tag=True),
        "grid": [format_scalar(g) for g in report.grid],
        "sweep": list(report.sweep),
        "seed": report.seed,
        "dims_searched": report.dims_searched,
        "dimensions_found": report.dimensions_found,
        "max_dim_found": report.max_dim_found,
        "families": [
            {
                "dim": fam["dim"],
                "description": fam["description"],
                "product_value": format_scalar(fam["product_value"]),
            }
            for fam in report.families
        ],
        "representatives": [
            {
                "id": r.rep_id,
                "dim": r.dim,
                "candidate": r.candidate,
                "commutant_dim": r.commutant_dim,
                "image_algebra_dim": r.image_algebra_dim,
                "matrices": {
                    name: [[format_scalar(x) for x in row] for row in M.rows]
                    for name, M in r.rep.mats.items()
                },
            }
            for r in report.representatives
        ],
        "dedup_log": report.dedup_log,
        "claims": report.claims,
    }


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)
