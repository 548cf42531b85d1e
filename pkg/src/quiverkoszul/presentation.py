"""Quivers, paths, tensor elements and the text format for presentations kQ/I.

Paths compose left to right: in ``p.q`` the path p is traversed first, so
``p.q`` exists when p ends where q starts.
"""
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import NamedTuple
import re

from .scalars import Field, is_prime, parse_rational


class PresentationError(ValueError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)


class Arrow(NamedTuple):
    name: str
    source: int
    target: int


class Path(NamedTuple):
    source: int
    target: int
    arrows: tuple

    @property
    def length(self):
        return len(self.arrows)

    def sort_key(self):
        return (len(self.arrows), self.arrows, self.source)


def compose(p, q):
    """The concatenation p.q, or None when p does not end where q starts."""
    if p.target != q.source:
        return None
    return Path(p.source, q.target, p.arrows + q.arrows)


def split(path, r, quiver):
    """Split a path into its first r arrows and the rest."""
    a = path.arrows
    mid = quiver.arrows[a[r]].source if r < len(a) else path.target
    return Path(path.source, mid, a[:r]), Path(mid, path.target, a[r:])


@dataclass(frozen=True)
class Quiver:
    vertices: tuple
    arrows: tuple

    def __post_init__(self):
        if not self.vertices:
            raise PresentationError("a quiver needs at least one vertex")
        names = list(self.vertices) + [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise PresentationError("vertex and arrow names must be unique")
        for a in self.arrows:
            if not (0 <= a.source < len(self.vertices) and 0 <= a.target < len(self.vertices)):
                raise PresentationError(f"arrow {a.name} has an undeclared endpoint")

    def vertex_path(self, v):
        return Path(v, v, ())

    def arrow_path(self, i):
        a = self.arrows[i]
        return Path(a.source, a.target, (i,))

    def path_from_names(self, names):
        """Build a path from arrow names (or a single vertex name)."""
        if len(names) == 1 and names[0] in self.vertices:
            v = self.vertices.index(names[0])
            return Path(v, v, ())
        index = {a.name: i for i, a in enumerate(self.arrows)}
        p = None
        for nm in names:
            if nm not in index:
                raise PresentationError(f"unknown arrow {nm!r}")
            q = self.arrow_path(index[nm])
            if p is None:
                p = q
            else:
                r = compose(p, q)
                if r is None:
                    raise PresentationError(f"path {'.'.join(names)} is not composable")
                p = r
        if p is None:
            raise PresentationError("empty path")
        return p

    def path_name(self, p):
        if not p.arrows:
            return self.vertices[p.source]
        return ".".join(self.arrows[i].name for i in p.arrows)


class TensorElement:
    """A linear combination of length-n paths, i.e. an element of V^{⊗n}."""

    __slots__ = ("degree", "terms")

    def __init__(self, degree, terms):
        self.degree = degree
        self.terms = {p: c for p, c in terms.items() if c}
        for p in self.terms:
            if p.length != degree:
                raise ValueError(f"path {p} is not of length {degree}")

    def endpoints(self):
        """``(source, target)`` if uniform, else None."""
        ends = {(p.source, p.target) for p in self.terms}
        return ends.pop() if len(ends) == 1 else None

    def is_uniform(self):
        return self.endpoints() is not None

    def __add__(self, other):
        terms = dict(self.terms)
        for p, c in other.terms.items():
            terms[p] = terms.get(p, 0) + c
        return TensorElement(self.degree, terms)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, s):
        return TensorElement(self.degree, {p: s * c for p, c in self.terms.items()})

    def __mul__(self, other):
        """Tensor (concatenation) product; non-composable pairs vanish."""
        if not isinstance(other, TensorElement):
            return self.scale(other)
        terms = {}
        for p, a in self.terms.items():
            for q, b in other.terms.items():
                r = compose(p, q)
                if r is not None:
                    terms[r] = terms.get(r, 0) + a * b
        return TensorElement(self.degree + other.degree, terms)

    __rmul__ = scale

    def __eq__(self, other):
        return (
            isinstance(other, TensorElement)
            and self.degree == other.degree
            and self.terms == other.terms
        )

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        inner = " + ".join(f"{c}*{p.arrows or p.source}" for p, c in sorted(
            self.terms.items(), key=lambda t: t[0].sort_key()))
        return f"TensorElement({self.degree}: {inner or 0})"


@dataclass
class Presentation:
    quiver: Quiver
    field: Field
    relations: list
    params: dict = dc_field(default_factory=dict)
    maxdeg: int = 5

    def __eq__(self, other):
        return (
            isinstance(other, Presentation)
            and self.quiver == other.quiver
            and self.field == other.field
            and self.relations == other.relations
            and self.params == other.params
            and self.maxdeg == other.maxdeg
        )


_NAME = r"[A-Za-z_][A-Za-z0-9_']*"
_TOKEN = re.compile(
    rf"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>{_NAME})|(?P<op>[+\-*.()^]))"
)


def _tokens(text, lineno, offset):
    # offset is the 1-based column of text[0]
    pos = 0
    out = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            skip = len(text[pos:]) - len(text[pos:].lstrip())
            raise PresentationError(f"unexpected character {text[pos + skip]!r}",
                                    lineno, offset + pos + skip)
        kind = m.lastgroup
        col = offset + m.start(kind)
        out.append((kind, m.group(kind), col))
        pos = m.end()
    return out


def _parse_relation(text, lineno, offset, quiver, params, field):
    """``[±] term (± term)*`` with term = factor (* factor)*, factor = number | param | path."""
    arrow_names = {a.name for a in quiver.arrows}
    toks = _tokens(text, lineno, offset)
    if not toks:
        raise PresentationError("empty relation", lineno, offset)
    terms = {}
    i = 0
    sign = 1
    expect_term = True
    while i < len(toks):
        kind, val, col = toks[i]
        if kind == "op" and val in "+-" and expect_term:
            if val == "-":
                sign = -sign
            i += 1
            continue
        if not expect_term:
            if kind == "op" and val in "+-":
                sign = 1 if val == "+" else -1
                expect_term = True
                i += 1
                continue
            raise PresentationError(f"expected '+' or '-', got {val!r}", lineno, col)
        coeff = Fraction(sign)
        names = []
        need_factor = True
        while i < len(toks):
            kind, val, col = toks[i]
            if need_factor:
                if kind == "num":
                    coeff *= parse_rational(val)
                elif kind == "name" and val in params:
                    coeff *= params[val]
                elif kind == "name" and val in arrow_names:
                    names.append(val)
                    while i + 2 < len(toks) and toks[i + 1][1] == "." and toks[i + 2][0] == "name":
                        if toks[i + 2][1] not in arrow_names:
                            raise PresentationError(f"unknown arrow {toks[i + 2][1]!r}", lineno, toks[i + 2][2])
                        names.append(toks[i + 2][1])
                        i += 2
                elif kind == "name":
                    raise PresentationError(f"unknown arrow or unbound parameter {val!r}", lineno, col)
                else:
                    raise PresentationError(f"unexpected {val!r}", lineno, col)
                need_factor = False
                i += 1
            elif kind == "op" and val in "*.":
                need_factor = True
                i += 1
            else:
                break
        if need_factor:
            raise PresentationError("dangling operator", lineno, col)
        if not names:
            raise PresentationError("relation term has no path", lineno, col)
        try:
            path = quiver.path_from_names(names)
        except PresentationError as exc:
            raise PresentationError(str(exc), lineno, col) from None
        if path.length != 2:
            raise PresentationError(
                f"term {'.'.join(names)} has degree {path.length}; relations must be homogeneous quadratic",
                lineno, col)
        try:
            terms[path] = terms.get(path, 0) + field(coeff)
        except (ZeroDivisionError, ValueError):
            raise PresentationError(f"coefficient {coeff} is not defined in {field!r}", lineno, col) from None
        expect_term = False
    if expect_term:
        raise PresentationError("relation ends with an operator", lineno, offset + len(text) - 1)
    rel = TensorElement(2, terms)
    if not rel:
        raise PresentationError("relation is zero", lineno, offset)
    return rel


def parse(text):
    """Parse the line-oriented presentation format into a Presentation."""
    field = None
    vertices = []
    arrows = []
    params = {}
    relation_lines = []
    maxdeg = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        stripped = line.lstrip()
        if not stripped:
            continue
        indent = len(line) - len(stripped)
        keyword, _, rest = stripped.partition(" ")
        rest_col = indent + len(keyword) + 2
        rest = rest.strip()
        if keyword == "field":
            parts = rest.split()
            if parts == ["Q"]:
                field = Field(0)
            elif len(parts) == 2 and parts[0] == "Fp" and parts[1].isdigit():
                p = int(parts[1])
                if not is_prime(p):
                    raise PresentationError(f"{p} is not prime", lineno, rest_col)
                field = Field(p)
            else:
                raise PresentationError("expected 'field Q' or 'field Fp <p>'", lineno, rest_col)
        elif keyword == "vertex":
            if not re.fullmatch(_NAME, rest):
                raise PresentationError(f"bad vertex name {rest!r}", lineno, rest_col)
            vertices.append(rest)
        elif keyword == "arrow":
            m = re.fullmatch(rf"({_NAME})\s*:\s*({_NAME})\s*->\s*({_NAME})", rest)
            if not m:
                raise PresentationError("expected 'arrow <name> : <src> -> <tgt>'", lineno, rest_col)
            name, src, tgt = m.groups()
            for v in (src, tgt):
                if v not in vertices:
                    raise PresentationError(f"unknown vertex {v!r}", lineno, rest_col + rest.index(v))
            arrows.append(Arrow(name, vertices.index(src), vertices.index(tgt)))
        elif keyword == "param":
            m = re.fullmatch(rf"({_NAME})\s*=\s*(\S+)", rest)
            if not m:
                raise PresentationError("expected 'param <name> = <rational>'", lineno, rest_col)
            try:
                params[m.group(1)] = parse_rational(m.group(2))
            except ValueError:
                raise PresentationError(f"bad rational {m.group(2)!r}", lineno,
                                        rest_col + m.start(2)) from None
        elif keyword == "relation":
            relation_lines.append((lineno, rest_col, rest))
        elif keyword == "maxdeg":
            if not rest.isdigit():
                raise PresentationError("maxdeg must be a non-negative integer", lineno, rest_col)
            maxdeg = int(rest)
        else:
            raise PresentationError(f"unknown keyword {keyword!r}", lineno, indent + 1)
    if field is None:
        field = Field(0)
    quiver = Quiver(tuple(vertices), tuple(arrows))
    clash = set(params) & (set(vertices) | {a.name for a in arrows})
    if clash:
        raise PresentationError(f"parameter names clash with quiver names: {sorted(clash)}")
    try:
        fparams = {k: field(v) for k, v in params.items()}
    except (ZeroDivisionError, ValueError) as exc:
        raise PresentationError(f"parameter not in the field: {exc}") from None
    relations = [
        _parse_relation(text_, lineno, col, quiver, params, field)
        for lineno, col, text_ in relation_lines
    ]
    return Presentation(quiver, field, relations, fparams, 5 if maxdeg is None else maxdeg)


def serialize(pres):
    q = pres.quiver
    f = pres.field
    lines = ["field Q" if f.characteristic == 0 else f"field Fp {f.characteristic}"]
    lines += [f"vertex {v}" for v in q.vertices]
    lines += [f"arrow {a.name} : {q.vertices[a.source]} -> {q.vertices[a.target]}" for a in q.arrows]
    lines += [f"param {k} = {f.format(v)}" for k, v in pres.params.items()]
    for rel in pres.relations:
        parts = []
        for p, c in sorted(rel.terms.items(), key=lambda t: t[0].sort_key()):
            parts.append(f"{f.format(c)}*{q.path_name(p)}")
        lines.append("relation " + " + ".join(parts))
    lines.append(f"maxdeg {pres.maxdeg}")
    return "\n".join(lines) + "\n"


def read(path):
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())
