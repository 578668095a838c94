"""Text formats: polynomials, ring descriptors, MFX files, module files.

The formatter is canonical (one rendering per object) and the parser accepts
a slight superset (arbitrary whitespace).  Files produced by format_mfx /
format_module round-trip byte-exactly through the parsers.

Polynomial grammar: terms joined by + / -; a term is an optional coefficient
(`3`, `1/2`, or Gaussian `(1/2-3i)`) times `*`-separated powers `x^e`.
Ring descriptor block:

    field: Q | Q(i) | GF(p)
    vars: x,u,v,t
    degs: 1,1,1,1
    order: grevlex
    mod: x^2 + u*v          (omitted for the ambient ring; '; '-separated)
"""
from __future__ import annotations

import re
from fractions import Fraction

from .fields import GaussianRational, PrimeField, QI, QQ, field_from_name
from .rings import GradedRing, PolyRing


class ParseError(ValueError):
    pass


# ---------------------------------------------------------------------------
# coefficients
# ---------------------------------------------------------------------------


def _format_fraction(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_coeff(field, c) -> str:
    """Canonical coefficient text; Gaussian values with im != 0 are parenthesized."""
    if isinstance(c, GaussianRational):
        if c.im == 0:
            return _format_fraction(c.re)
        im = _format_fraction(abs(c.im))
        sign = "+" if c.im > 0 else "-"
        return f"({_format_fraction(c.re)}{sign}{im}i)"
    if isinstance(c, Fraction):
        return _format_fraction(c)
    return str(c)  # prime field representative


def _coeff_is_negative_real(field, c) -> bool:
    if isinstance(c, GaussianRational):
        return c.im == 0 and c.re < 0
    if isinstance(c, Fraction):
        return c < 0
    return False  # GF(p) representatives are canonical nonnegative


# ---------------------------------------------------------------------------
# polynomial formatting
# ---------------------------------------------------------------------------


def _format_monomial(ring, mono) -> str:
    parts = []
    for name, e in zip(ring.names, mono):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_poly(p) -> str:
    if p.is_zero():
        return "0"
    ring, field = p.ring, p.ring.field
    pieces = []
    for k, (mono, c) in enumerate(p.terms):
        neg = _coeff_is_negative_real(field, c)
        cc = field.neg(c) if neg else c
        mono_txt = _format_monomial(ring, mono)
        if not mono_txt:
            body = format_coeff(field, cc)
        elif field.is_one(cc):
            body = mono_txt
        else:
            body = f"{format_coeff(field, cc)}*{mono_txt}"
        if k == 0:
            pieces.append(f"-{body}" if neg else body)
        else:
            pieces.append(f" - {body}" if neg else f" + {body}")
    return "".join(pieces)


# ---------------------------------------------------------------------------
# polynomial parsing
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
                    r"|(?P<op>[-+*/^()]))")


def _tokenize(text):
    tokens, pos = [], 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip() == "":
                break
            raise ParseError(f"bad character in polynomial: {text[pos:]!r}")
        pos = m.end()
        if m.lastgroup == "int":
            tokens.append(("int", int(m.group("int"))))
        elif m.lastgroup == "name":
            tokens.append(("name", m.group("name")))
        else:
            tokens.append((m.group("op"), None))
    return tokens


class _PolyParser:
    def __init__(self, tokens, ring):
        self.tokens = tokens
        self.i = 0
        self.ring = ring

    def peek(self):
        return self.tokens[self.i][0] if self.i < len(self.tokens) else None

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def parse(self):
        p = self.parse_term_signed(first=True)
        while self.peek() in ("+", "-"):
            op, _ = self.next()
            q = self.parse_term()
            p = p + q if op == "+" else p - q
        if self.i != len(self.tokens):
            raise ParseError(f"trailing tokens in polynomial at {self.tokens[self.i:]}")
        return p

    def parse_term_signed(self, first=False):
        sign = 1
        while self.peek() in ("+", "-"):
            op, _ = self.next()
            if op == "-":
                sign = -sign
        t = self.parse_term()
        return t if sign == 1 else -t

    def parse_term(self):
        p = self.parse_factor()
        while self.peek() == "*":
            self.next()
            p = p * self.parse_factor()
        return p

    def parse_factor(self):
        kind = self.peek()
        if kind == "int":
            _, n = self.next()
            num = Fraction(n)
            if self.peek() == "/":
                self.next()
                k2, d = self.next()
                if k2 != "int":
                    raise ParseError("expected integer denominator")
                num = Fraction(n, d)
            return self.ring.constant(self.ring.field.from_fraction(num))
        if kind == "name":
            _, name = self.next()
            if name == "i" and "i" not in self.ring.names:
                return self._imaginary()
            if name not in self.ring.names:
                raise ParseError(f"unknown variable {name!r}")
            p = self.ring.var(name)
            if self.peek() == "^":
                self.next()
                k2, e = self.next()
                if k2 != "int":
                    raise ParseError("expected integer exponent")
                p = p ** e
            return p
        if kind == "(":
            self.next()
            inner = self.parse_term_signed()
            while self.peek() in ("+", "-"):
                op, _ = self.next()
                q = self.parse_term()
                inner = inner + q if op == "+" else inner - q
            if self.peek() != ")":
                raise ParseError("expected ')'")
            self.next()
            return inner
        raise ParseError(f"unexpected token {kind!r} in polynomial")

    def _imaginary(self):
        unit = self.ring.field.imaginary_unit()
        if unit is None:
            raise ParseError(f"field {self.ring.field.name} has no element i")
        return self.ring.constant(unit)


def parse_poly(text: str, ring) -> "Polynomial":
    text = text.strip()
    if text == "0":
        return ring.zero()
    return _PolyParser(_tokenize(text), ring).parse()


# ---------------------------------------------------------------------------
# ring descriptors
# ---------------------------------------------------------------------------


def format_ring(ring: GradedRing) -> str:
    amb = ring.ambient
    lines = [f"field: {amb.field.name}",
             f"vars: {','.join(amb.names)}",
             f"degs: {','.join(str(d) for d in amb.degrees)}",
             f"order: {amb.order}"]
    if ring.modulus:
        lines.append("mod: " + "; ".join(format_poly(g) for g in ring.modulus))
    return "\n".join(lines)


def _parse_kv(line, expected_key):
    key, _, value = line.partition(":")
    if key.strip() != expected_key:
        raise ParseError(f"expected '{expected_key}:' line, got {line!r}")
    return value.strip()


def parse_ring(lines: list[str], start: int = 0) -> tuple[GradedRing, int]:
    """Parse a ring block starting at lines[start]; returns (ring, next line index)."""
    i = start
    field = QQ
    order = "grevlex"
    if i < len(lines) and lines[i].startswith("field:"):
        field = field_from_name(_parse_kv(lines[i], "field"))
        i += 1
    names = tuple(n.strip() for n in _parse_kv(lines[i], "vars").split(","))
    i += 1
    degs = tuple(int(x) for x in _parse_kv(lines[i], "degs").split(","))
    i += 1
    if i < len(lines) and lines[i].startswith("order:"):
        order = _parse_kv(lines[i], "order")
        i += 1
    ambient = PolyRing(field, names, degs, order)
    modulus = ()
    if i < len(lines) and lines[i].startswith("mod:"):
        text = _parse_kv(lines[i], "mod")
        modulus = tuple(parse_poly(part, ambient) for part in text.split(";"))
        i += 1
    return GradedRing(ambient, modulus), i


# ---------------------------------------------------------------------------
# MFX files (matrix factorizations)
# ---------------------------------------------------------------------------


def _format_int_list(xs):
    return ",".join(str(x) for x in xs)


def format_mfx(m) -> str:
    """Canonical MFX text for a MatrixFactorization."""
    lines = ["mf"]
    lines.append(format_ring(GradedRing(m.ring, ())))
    lines.append(f"f: {format_poly(m.potential)}")
    lines.append(f"rows: {_format_int_list(m.row_twists)}")
    lines.append(f"cols: {_format_int_list(m.col_twists)}")
    lines.append("phi:")
    for row in m.phi:
        lines.append(", ".join(format_poly(p) for p in row))
    lines.append("psi:")
    for row in m.psi:
        lines.append(", ".join(format_poly(p) for p in row))
    return "\n".join(lines) + "\n"


def parse_mfx(text: str):
    from .matfac import MatrixFactorization
    lines = [ln.rstrip() for ln in text.strip().split("\n")]
    if lines[0].strip() != "mf":
        raise ParseError("MFX file must start with 'mf'")
    ring, i = parse_ring(lines, 1)
    if ring.modulus:
        raise ParseError("MFX ring block must be an ambient ring (no mod line)")
    amb = ring.ambient
    f = parse_poly(_parse_kv(lines[i], "f"), amb)
    i += 1
    rows_txt = _parse_kv(lines[i], "rows")
    rows = tuple(int(x) for x in rows_txt.split(",")) if rows_txt else ()
    i += 1
    cols_txt = _parse_kv(lines[i], "cols")
    cols = tuple(int(x) for x in cols_txt.split(",")) if cols_txt else ()
    i += 1
    n = len(rows)
    if lines[i].strip() != "phi:":
        raise ParseError("expected 'phi:' line")
    i += 1
    phi = tuple(tuple(parse_poly(e, amb) for e in lines[i + r].split(","))
                for r in range(n))
    i += n
    if lines[i].strip() != "psi:":
        raise ParseError("expected 'psi:' line")
    i += 1
    psi = tuple(tuple(parse_poly(e, amb) for e in lines[i + r].split(","))
                for r in range(n))
    i += n
    if i != len(lines):
        raise ParseError("trailing content in MFX file")
    return MatrixFactorization(amb, f, phi, psi, rows, cols)


# ---------------------------------------------------------------------------
# module files (graded presentations)
# ---------------------------------------------------------------------------


def format_module(M) -> str:
    lines = ["module"]
    lines.append(format_ring(M.ring))
    lines.append(f"gens: {_format_int_list(M.gen_degrees)}")
    if not M.relations or not M.relations[0]:
        lines.append("rels: none")
    else:
        lines.append("rels:")
        for row in M.relations:
            lines.append(", ".join(format_poly(p) for p in row))
    return "\n".join(lines) + "\n"


def parse_module(text: str):
    from .modules import GradedModulePresentation
    lines = [ln.rstrip() for ln in text.strip().split("\n")]
    if lines[0].strip() != "module":
        raise ParseError("module file must start with 'module'")
    ring, i = parse_ring(lines, 1)
    gens_txt = _parse_kv(lines[i], "gens")
    gens = tuple(int(x) for x in gens_txt.split(",")) if gens_txt else ()
    i += 1
    rel_line = lines[i].strip()
    if rel_line == "rels: none":
        relations = tuple(() for _ in gens)
        i += 1
    else:
        if rel_line != "rels:":
            raise ParseError("expected 'rels:' line")
        i += 1
        relations = tuple(tuple(parse_poly(e, ring.ambient)
                                for e in lines[i + r].split(","))
                          for r in range(len(gens)))
        i += len(gens)
    if i != len(lines):
        raise ParseError("trailing content in module file")
    return GradedModulePresentation(ring, gens, relations)
