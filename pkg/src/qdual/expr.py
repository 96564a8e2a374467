"""Expression mini-language for q-series and Eulerian descriptors.

Precedence, tightest first: ``^``, unary ``-``, ``* /``, ``+ -``.  Function
arguments are split into groups by ``;`` and inside a group by ``,``.  Error
positions are byte offsets into the UTF-8 encoded input.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Union

from . import functions as fn
from .dual import EulerianDescriptor, Mono, Poch
from .series import INF, ParamValue, QSeries, as_fraction, format_exponent


class ExpressionError(ValueError):
    """Base class for parse and evaluation errors."""


class ParseError(ExpressionError):
    def __init__(self, message: str, offset: int, expected: tuple[str, ...] = ()):
        self.offset = offset
        self.expected = expected
        text = f"syntax error at byte {offset}: {message}"
        if expected:
            text += f" (expected {' or '.join(expected)})"
        super().__init__(text)


class ArityError(ExpressionError):
    pass


class SlotError(ExpressionError):
    """A ParamValue or integer argument slot received something else."""


# -- syntax tree ---------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: Fraction
    offset: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Name:
    name: str
    offset: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Neg:
    arg: "Node"
    offset: int = field(default=0, compare=False)


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"
    offset: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Call:
    name: str
    groups: tuple[tuple["Node", ...], ...]
    offset: int = field(default=0, compare=False)


Node = Union[Num, Name, Neg, BinOp, Call]

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}


def to_text(node: Node) -> str:
    """Print ``node`` so that parsing the text gives back an equal tree."""
    return _text(node, 0)


def _text(node: Node, ctx: int) -> str:
    if isinstance(node, Num):
        v = node.value
        s = str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
        return s if v.denominator == 1 else f"({s})"
    if isinstance(node, Name):
        return node.name
    if isinstance(node, Neg):
        s = "-" + _text(node.arg, 3)
        return s if ctx <= 2 else f"({s})"
    if isinstance(node, Call):
        return node.name + "(" + "; ".join(", ".join(_text(a, 0) for a in g) for g in node.groups) + ")"
    op = node.op
    if op == "^":
        r = node.right
        right = "-" + _text(r.arg, 4) if isinstance(r, Neg) else _text(r, 4)
        s = _text(node.left, 4) + "^" + right
        return s if ctx <= 3 else f"({s})"
    p = _PREC[op]
    s = _text(node.left, p) + f" {op} " + _text(node.right, p + 1)
    return s if ctx <= p else f"({s})"


# -- tokenizer and parser --------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>>=|[-+*/^();,]))")


@dataclass
class _Tok:
    kind: str
    text: str
    offset: int


def tokenize(text: str) -> list[_Tok]:
    toks: list[_Tok] = []
    pos = 0
    byte = lambda i: len(text[:i].encode())
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip() == "":
                break
            bad = len(text) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", byte(bad))
        kind = m.lastgroup
        if kind is None:
            break
        tok = _Tok(kind, m.group(kind), byte(m.start(kind)))
        if kind == "name" and toks and toks[-1].kind == "num" and m.start(kind) == pos:
            # "2n" is shorthand for "2*n"
            toks.append(_Tok("op", "*", tok.offset))
        toks.append(tok)
        pos = m.end()
    toks.append(_Tok("end", "", len(text.encode())))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, text: str) -> _Tok:
        if self.tok.text != text or self.tok.kind == "end":
            raise ParseError(f"unexpected {self._show()}", self.tok.offset, (repr(text),))
        return self.take()

    def _show(self) -> str:
        return "end of input" if self.tok.kind == "end" else repr(self.tok.text)

    def expression(self) -> Node:
        left = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            t = self.take()
            left = BinOp(t.text, left, self.term(), t.offset)
        return left

    def term(self) -> Node:
        left = self.unary()
        while self.tok.kind == "op" and self.tok.text in "*/":
            t = self.take()
            left = BinOp(t.text, left, self.unary(), t.offset)
        return left

    def unary(self) -> Node:
        if self.tok.kind == "op" and self.tok.text == "-":
            t = self.take()
            return Neg(self.unary(), t.offset)
        return self.power()

    def power(self) -> Node:
        base = self.primary()
        if self.tok.kind == "op" and self.tok.text == "^":
            t = self.take()
            return BinOp("^", base, self.exponent(), t.offset)
        return base

    def exponent(self) -> Node:
        # allows q^-1 and right-associative towers
        if self.tok.kind == "op" and self.tok.text == "-":
            t = self.take()
            return Neg(self.exponent(), t.offset)
        return self.power()

    def primary(self) -> Node:
        t = self.tok
        if t.kind == "num":
            self.take()
            return Num(Fraction(int(t.text)), t.offset)
        if t.kind == "name":
            self.take()
            if self.tok.text == "(" and self.tok.kind == "op":
                return self.call(t)
            return Name(t.text, t.offset)
        if t.kind == "op" and t.text == "(":
            self.take()
            node = self.expression()
            self.expect(")")
            return node
        raise ParseError(f"unexpected {self._show()}", t.offset, ("number", "name", "'('", "'-'"))

    def call(self, name: _Tok) -> Call:
        self.expect("(")
        groups: list[tuple[Node, ...]] = []
        group: list[Node] = []
        if self.tok.text == ")":
            self.take()
            return Call(name.text, (), name.offset)
        while True:
            if self.tok.kind == "op" and self.tok.text in ";,)":
                raise ParseError(f"empty argument before {self._show()}", self.tok.offset, ("expression",))
            group.append(self.expression())
            t = self.tok
            if t.kind == "op" and t.text == ",":
                self.take()
            elif t.kind == "op" and t.text == ";":
                self.take()
                groups.append(tuple(group))
                group = []
            elif t.kind == "op" and t.text == ")":
                self.take()
                groups.append(tuple(group))
                return Call(name.text, tuple(groups), name.offset)
            else:
                raise ParseError(f"unexpected {self._show()}", t.offset, ("','", "';'", "')'"))

    def finish(self):
        if self.tok.kind != "end":
            raise ParseError(f"unexpected {self._show()}", self.tok.offset, ("operator", "end of input"))


def parse_expression(text: str) -> Node:
    p = _Parser(text)
    node = p.expression()
    p.finish()
    return node


# -- evaluation ------------------------------------------------------------------

# name -> argument group sizes; None marks an optional trailing group
SIGNATURES: dict[str, tuple[tuple[int, ...], ...]] = {
    "j": ((1,), (1, 1)),
    "J": ((2,),),
    "Jbar": ((2,),),
    "Jm": ((1,),),
    "m": ((1, 1, 1),),
    "g": ((1,), (1, 1)),
    "f": ((3, 1, 1), (3, 1, 1, 1)),
    "poch": ((1, 1, 1),),
    "pochinf": ((1,), (1, 1)),
    "gauss": ((2,),),
    "pt": ((1,), (1, 1)),
    "star": ((1,),),
}


def _arity(node: Call):
    shapes = SIGNATURES.get(node.name)
    if shapes is None:
        raise ExpressionError(f"unknown function {node.name!r} at byte {node.offset}")
    got = tuple(len(g) for g in node.groups)
    if got not in shapes:
        want = " or ".join(";".join(str(k) for k in s) for s in shapes)
        raise ArityError(
            f"arity mismatch in {node.name}(...) at byte {node.offset}: got argument groups {got}, expected group sizes {want}"
        )


class Evaluator:
    """Evaluates a syntax tree to a :class:`QSeries` at a working order."""

    def __init__(self, order, lattice: int = 1, bindings: Mapping[str, ParamValue] | None = None):
        self.order = as_fraction(order)
        self.lattice = lattice
        self.bindings = dict(bindings or {})

    # exact helpers
    def monomial(self, node: Node) -> ParamValue:
        v = self.exact(node)
        if v is None or len(v.terms()) != 1:
            raise SlotError(f"argument at byte {node.offset} must be a monomial c*q^e, got {to_text(node)!r}")
        (e, c), = v.terms()
        return ParamValue(c, e)

    def rational(self, node: Node) -> Fraction:
        v = self.exact(node)
        if v is None or (v.terms() and (len(v.terms()) != 1 or v.terms()[0][0] != 0)):
            raise SlotError(f"argument at byte {node.offset} must be a rational constant, got {to_text(node)!r}")
        return v.coefficient(0)

    def integer(self, node: Node) -> int:
        r = self.rational(node)
        if r.denominator != 1:
            raise SlotError(f"argument at byte {node.offset} must be an integer, got {r}")
        return int(r)

    def base(self, node: Node) -> Fraction:
        p = self.monomial(node)
        if p.c != 1 or p.e <= 0:
            raise SlotError(f"base at byte {node.offset} must be q^m with m > 0, got {to_text(node)!r}")
        return p.e

    def exact(self, node: Node) -> QSeries | None:
        """Value of a function-free subtree as an exact polynomial, else None."""
        D = self.lattice
        if isinstance(node, Num):
            return QSeries({0: node.value}, INF, D)
        if isinstance(node, Name):
            if node.name == "q":
                return QSeries({1: 1}, INF, D)
            if node.name in self.bindings:
                p = ParamValue.of(self.bindings[node.name])
                return QSeries({p.e: p.c}, INF, D)
            raise ExpressionError(f"unknown name {node.name!r} at byte {node.offset}")
        if isinstance(node, Neg):
            v = self.exact(node.arg)
            return None if v is None else -v
        if isinstance(node, Call):
            # Gaussian binomials are the only polynomial-valued functions
            return self.call(node, INF) if node.name == "gauss" else None
        left = self.exact(node.left)
        if node.op == "^":
            if left is None:
                return None
            k = self.rational(node.right)
            return _power(left, k, node)
        right = self.exact(node.right)
        if left is None or right is None:
            return None
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        if node.op == "*":
            return left * right
        if len(right.terms()) == 1:
            return left / right
        return None

    def eval(self, node: Node, w: Fraction) -> QSeries:
        ex = self.exact(node)
        if ex is not None:
            return ex
        if isinstance(node, Neg):
            return -self.eval(node.arg, w)
        if isinstance(node, Call):
            return self.call(node, w)
        if node.op == "^":
            k = self.rational(node.right)
            if k.denominator != 1:
                raise SlotError(f"only integer powers of series are supported (byte {node.offset})")
            base = self.eval(node.left, w)
            return _truncated(base, w) ** int(k)
        left, right = self.eval(node.left, w), self.eval(node.right, w)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        if node.op == "*":
            return left * right
        if right.is_exact and len(right.terms()) != 1:
            right = right.truncate(w)
        return left / right

    def call(self, node: Call, w: Fraction) -> QSeries:
        _arity(node)
        D = self.lattice
        g = node.groups
        name = node.name
        one_base = lambda k: self.base(g[k][0]) if len(g) > k else Fraction(1)
        try:
            if name == "j":
                return fn.theta_j(self.monomial(g[0][0]), one_base(1), w, D)
            if name in ("J", "Jbar"):
                a, m = (self.rational(x) for x in g[0])
                return fn.theta_J(a, m, "plain" if name == "J" else "bar", w, D)
            if name == "Jm":
                return fn.Jm(self.rational(g[0][0]), w, D)
            if name == "m":
                (x,), (b,), (z,) = g
                return fn.appell_m(self.monomial(x), self.base(b), self.monomial(z), w, D)
            if name == "g":
                return fn.universal_g(self.monomial(g[0][0]), one_base(1), w, D)
            if name == "f":
                A, B, C = (self.integer(x) for x in g[0])
                rest = g[1:]
                base = self.base(rest[2][0]) if len(rest) > 2 else Fraction(1)
                return fn.hecke_f(A, B, C, self.monomial(rest[0][0]), self.monomial(rest[1][0]), base, w, D)
            if name == "poch":
                (x,), (b,), (n,) = g
                k = self.integer(n)
                s = fn.pochhammer(self.monomial(x), self.base(b), k, INF if k >= 0 else w, D)
                return s
            if name == "pochinf":
                return fn.pochhammer_inf(self.monomial(g[0][0]), one_base(1), w, D)
            if name == "gauss":
                n, k = (self.integer(x) for x in g[0])
                return fn.gaussian_binomial(n, k).refine(D) if D != 1 else fn.gaussian_binomial(n, k)
            if name == "pt":
                return fn.partial_theta(self.monomial(g[0][0]), one_base(1), w, D)
            if name == "star":
                return fn.starred_sum(self.monomial(g[0][0]), w, D)
        except ExpressionError:
            raise
        except (ArithmeticError, ValueError) as exc:
            raise EvaluationError(f"in {to_text(node)}: {exc}") from exc
        raise ExpressionError(f"unknown function {name!r}")


class EvaluationError(ExpressionError):
    """A special function raised while evaluating a call; names the call."""


def _truncated(s: QSeries, w) -> QSeries:
    if s.is_exact and len(s.terms()) > 1:
        return s.truncate(w)
    return s


def _power(s: QSeries, k: Fraction, node: Node) -> QSeries:
    if k.denominator == 1:
        if k < 0 and len(s.terms()) != 1:
            return None
        return s ** int(k)
    if len(s.terms()) != 1:
        raise SlotError(f"fractional power at byte {node.offset} needs a monomial base")
    (e, c), = s.terms()
    if c != 1:
        raise SlotError(f"fractional power at byte {node.offset} needs a coefficient-one monomial")
    return QSeries({e * k: 1}, INF, s.lattice)


def evaluate(node: Node | str, order, lattice: int = 1, bindings: Mapping[str, ParamValue] | None = None) -> QSeries:
    """Evaluate to exactly ``order`` (exact polynomials stay exact).

    ``bindings`` maps parameter names such as ``a`` to monomials.
    """
    if isinstance(node, str):
        node = parse_expression(node)
    ev = Evaluator(order, lattice, bindings)
    ex = ev.exact(node)
    if ex is not None:
        return ex
    return fn.stable(lambda w: ev.eval(node, as_fraction(w)), order)


# -- descriptors ----------------------------------------------------------------

_HEAD = re.compile(r"\s*sum\s*\(\s*n\s*(?:>=\s*(?P<start>-?\d+)|in\s+Z)\s*\)")


@dataclass
class _Sym:
    """Symbolic product ``coeff ratio^n q^quad slots^(a n + b) num / den``."""

    coeff: Fraction
    ratio: Fraction
    quad: dict[int, Fraction]
    params: dict[str, tuple[Fraction, Fraction]]
    num: list[Poch]
    den: list[Poch]

    @classmethod
    def unit(cls) -> "_Sym":
        return cls(Fraction(1), Fraction(1), {}, {}, [], [])

    def times(self, o: "_Sym", sign: int = 1) -> "_Sym":
        out = _Sym(self.coeff, self.ratio, dict(self.quad), dict(self.params), list(self.num), list(self.den))
        out.coeff *= o.coeff**sign
        out.ratio *= o.ratio**sign
        for k, v in o.quad.items():
            out.quad[k] = out.quad.get(k, 0) + sign * v
        for k, (a, b) in o.params.items():
            a0, b0 = out.params.get(k, (0, 0))
            out.params[k] = (a0 + sign * a, b0 + sign * b)
        if sign > 0:
            out.num += o.num
            out.den += o.den
        else:
            out.num += o.den
            out.den += o.num
        return out

    @property
    def is_monomial(self) -> bool:
        return not self.num and not self.den


def _poly(node: Node, ctx: str) -> dict[int, Fraction]:
    """Polynomial in ``n`` with rational coefficients."""
    if isinstance(node, Num):
        return {0: node.value}
    if isinstance(node, Name) and node.name == "n":
        return {1: Fraction(1)}
    if isinstance(node, Neg):
        return {k: -v for k, v in _poly(node.arg, ctx).items()}
    if isinstance(node, BinOp):
        a = _poly(node.left, ctx)
        if node.op == "^":
            b = _poly(node.right, ctx)
            if set(b) - {0} or b.get(0, 0).denominator != 1 or b.get(0, 0) < 0:
                raise SlotError(f"{ctx}: exponent at byte {node.offset} must be a nonnegative integer")
            out = {0: Fraction(1)}
            for _ in range(int(b.get(0, 0))):
                out = _pmul(out, a)
            return out
        b = _poly(node.right, ctx)
        if node.op in "+-":
            s = 1 if node.op == "+" else -1
            out = dict(a)
            for k, v in b.items():
                out[k] = out.get(k, 0) + s * v
            return out
        if node.op == "*":
            return _pmul(a, b)
        if set(b) - {0} or b.get(0, 0) == 0:
            raise SlotError(f"{ctx}: can only divide by a nonzero constant (byte {node.offset})")
        return {k: v / b[0] for k, v in a.items()}
    raise SlotError(f"{ctx}: expected a polynomial in n at byte {getattr(node, 'offset', 0)}")


def _pmul(a, b):
    out: dict[int, Fraction] = {}
    for i, x in a.items():
        for j, y in b.items():
            out[i + j] = out.get(i + j, 0) + x * y
    return out


def _clean(p: dict[int, Fraction]) -> dict[int, Fraction]:
    return {k: v for k, v in p.items() if v}


def _sym(node: Node) -> _Sym:
    if isinstance(node, Num):
        s = _Sym.unit()
        s.coeff = node.value
        return s
    if isinstance(node, Name):
        s = _Sym.unit()
        if node.name == "q":
            s.quad = {0: Fraction(1)}
        elif node.name == "n":
            raise SlotError(f"the summation index may only appear in exponents and lengths (byte {node.offset})")
        else:
            s.params = {node.name: (Fraction(0), Fraction(1))}
        return s
    if isinstance(node, Neg):
        s = _sym(node.arg)
        s.coeff = -s.coeff
        return s
    if isinstance(node, Call):
        if node.name != "poch":
            raise SlotError(f"descriptor factors must be poch(...) calls, got {node.name!r} at byte {node.offset}")
        if tuple(len(g) for g in node.groups) != (1, 1, 1):
            raise ArityError(f"poch needs three argument groups (byte {node.offset})")
        (x,), (b,), (length,) = node.groups
        arg = _mono(_sym(x), x)
        base = _mono(_sym(b), b)
        if base.c != 1 or base.e1 or base.slots or base.e0 <= 0:
            raise SlotError(f"Pochhammer base at byte {b.offset} must be q^m with constant m > 0")
        L = _clean(_poly(length, "Pochhammer length"))
        if set(L) - {0, 1} or any(v.denominator != 1 for v in L.values()):
            raise SlotError(f"Pochhammer length at byte {length.offset} must be lam*n + mu with integers")
        s = _Sym.unit()
        s.num = [Poch(arg, base.e0, int(L.get(1, 0)), int(L.get(0, 0)))]
        return s
    if node.op == "*":
        return _sym(node.left).times(_sym(node.right))
    if node.op == "/":
        return _sym(node.left).times(_sym(node.right), -1)
    if node.op == "^":
        base = _sym(node.left)
        k = _clean(_poly(node.right, "exponent"))
        if set(k) <= {0} and k.get(0, Fraction(0)).denominator == 1:
            kk = int(k.get(0, 0))
            out = _Sym.unit()
            for _ in range(abs(kk)):
                out = out.times(base, 1 if kk > 0 else -1)
            if base.is_monomial or kk >= 0:
                return out
        if not base.is_monomial:
            raise SlotError(f"only monomials may be raised to n-dependent powers (byte {node.offset})")
        if set(k) - {0, 1, 2}:
            raise SlotError(f"exponent at byte {node.offset} has degree above 2 in n")
        out = _Sym.unit()
        a, b = k.get(1, Fraction(0)), k.get(0, Fraction(0))
        if base.coeff != 1:
            if k.get(2) or a.denominator != 1 or b.denominator != 1:
                raise SlotError(f"constant bases need integer linear exponents (byte {node.offset})")
            out.ratio = base.coeff ** int(a)
            out.coeff = base.coeff ** int(b)
        if base.ratio != 1:
            raise SlotError(f"nested n-powers are not supported (byte {node.offset})")
        qc = base.quad
        if set(qc) - {0}:
            raise SlotError(f"q-exponent of a raised monomial must be constant (byte {node.offset})")
        e = qc.get(0, Fraction(0))
        out.quad = _clean({d: e * c for d, c in k.items()})
        for name, (pa, pb) in base.params.items():
            if pa:
                raise SlotError(f"nested n-powers are not supported (byte {node.offset})")
            if k.get(2) or (pb * a).denominator != 1 or (pb * b).denominator != 1:
                raise SlotError(f"parameter exponents must be integer linear in n (byte {node.offset})")
            out.params[name] = (pb * a, pb * b)
        return out
    raise SlotError(f"a descriptor body must be a single product of factors; found {node.op!r} at byte {node.offset}")


def _mono(s: _Sym, node: Node) -> Mono:
    if not s.is_monomial or s.ratio != 1:
        raise SlotError(f"argument at byte {node.offset} must be a monomial")
    quad = _clean(s.quad)
    if quad.get(2):
        raise SlotError(f"argument at byte {node.offset} may depend on n only linearly")
    slots = []
    for name, (a, b) in s.params.items():
        if a or b.denominator != 1:
            raise SlotError(f"parameter powers inside arguments must be constant integers (byte {node.offset})")
        slots.append((name, int(b)))
    return Mono(s.coeff, quad.get(0, 0), quad.get(1, 0), tuple(slots))


def parse_descriptor(text: str) -> EulerianDescriptor:
    """Parse ``sum(n>=k) <product>`` or ``sum(n in Z) <product>``."""
    m = _HEAD.match(text)
    if not m:
        raise ParseError("descriptor must start with 'sum(n>=k)' or 'sum(n in Z)'", 0, ("'sum('",))
    start = None if m.group("start") is None else int(m.group("start"))
    head_bytes = len(text[: m.end()].encode())
    body_text = text[m.end():]
    try:
        node = parse_expression(body_text)
    except ParseError as exc:
        raise ParseError(str(exc).split(": ", 1)[1].split(" (expected")[0], exc.offset + head_bytes, exc.expected) from None
    s = _sym(node)
    quad = _clean(s.quad)
    if set(quad) - {0, 1, 2}:
        raise SlotError("q-exponent of a descriptor must have degree at most 2 in n")
    params = []
    for name, (a, b) in sorted(s.params.items()):
        if a.denominator != 1 or b.denominator != 1:
            raise SlotError(f"parameter {name!r} must carry integer exponents")
        params.append((name, int(a), int(b)))
    return EulerianDescriptor(
        start,
        s.coeff,
        s.ratio,
        (quad.get(2, Fraction(0)), quad.get(1, Fraction(0)), quad.get(0, Fraction(0))),
        tuple(params),
        tuple(s.num),
        tuple(s.den),
    )


def format_series(s: QSeries) -> str:
    return str(s)


__all__ = [
    "ArityError",
    "EvaluationError",
    "ExpressionError",
    "ParseError",
    "SlotError",
    "evaluate",
    "format_exponent",
    "parse_descriptor",
    "parse_expression",
    "to_text",
]
