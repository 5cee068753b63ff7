"""Exact differential ring for ``y(x, w)`` and its partial derivatives.

Elements are polynomials with rational coefficients in

    u, u1 (= u'), a, b, am (= a(x,-w)), bm (= b(x,-w)), x, w

carrying two derivations.  ``d/dx`` acts by

    u -> u1,  u1 -> 2u^3 + xu,  a -> u b,  b -> u a - 2w b,
    am -> u bm,  bm -> u am + 2w bm

and ``d/dw`` by the w-flow of ``(a, b)`` and, through the chain rule, of
``(am, bm)``.  Since ``b bm - a am`` spans a differential ideal, every
element is stored in the normal form with no monomial containing both
``b`` and ``bm`` (rewrite ``b bm -> a am``).  Second and higher
derivatives of ``u`` never appear as generators.
"""
import ast
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
import math

import numpy as np

from .errors import ContractError

GENS = ("u", "u1", "a", "b", "am", "bm", "x", "w")
_IDX = {g: i for i, g in enumerate(GENS)}
_NGEN = len(GENS)
_AB = (2, 3, 4, 5)


def _canon(mono):
    k = min(mono[3], mono[5])
    if k == 0:
        return mono
    m = list(mono)
    m[2] += k
    m[4] += k
    m[3] -= k
    m[5] -= k
    return tuple(m)


class DiffPoly:
    """Immutable polynomial in the generators `GENS` with `Fraction` coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        for mono, c in (terms or {}).items():
            mono = _canon(tuple(mono))
            c = clean.get(mono, 0) + Fraction(c)
            if c:
                clean[mono] = c
            else:
                clean.pop(mono, None)
        self._terms = clean
        self._hash = None

    # construction -------------------------------------------------------
    @classmethod
    def const(cls, c):
        return cls({(0,) * _NGEN: c})

    @classmethod
    def gen(cls, name, power=1):
        mono = [0] * _NGEN
        mono[_IDX[name]] = power
        return cls({tuple(mono): 1})

    @classmethod
    def parse(cls, text):
        """Build from an arithmetic expression such as ``"2*u**2*a*am - x"``.

        ``u2`` and ``u3`` stand for ``u''`` and ``u'''`` and are reduced on
        the spot.
        """
        return _Parser().run(text)

    # access -------------------------------------------------------------
    @property
    def terms(self):
        return dict(self._terms)

    def __len__(self):
        return len(self._terms)

    def is_zero(self):
        return not self._terms

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = DiffPoly.const(other)
        return isinstance(other, DiffPoly) and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # arithmetic ---------------------------------------------------------
    @staticmethod
    def _lift(v):
        return v if isinstance(v, DiffPoly) else DiffPoly.const(v)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return DiffPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return DiffPoly({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return DiffPoly({m: c * other for m, c in self._terms.items()})
        other = self._lift(other)
        out = {}
        for (m1, c1), (m2, c2) in product(self._terms.items(), other._terms.items()):
            m = _canon(tuple(i + j for i, j in zip(m1, m2)))
            out[m] = out.get(m, 0) + c1 * c2
        return DiffPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, (int, Fraction)) or other == 0:
            raise ContractError("DiffPoly can only be divided by a nonzero rational")
        return self * (Fraction(1) / Fraction(other))

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ContractError("only non-negative integer powers")
        out = DiffPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    # derivations --------------------------------------------------------
    def d_dx(self):
        return _derive(self, _dx_rule)

    def d_dw(self):
        return _derive(self, _dw_rule)

    # output -------------------------------------------------------------
    def sorted_terms(self):
        """Terms in graded lexicographic order over the ring generators, then x, w."""
        def key(item):
            m = item[0]
            core = m[:6]
            return (-sum(core), tuple(-e for e in core), -m[6], -m[7])
        return sorted(self._terms.items(), key=key)

    def pretty(self):
        if not self._terms:
            return "0"
        parts = []
        for mono, c in self.sorted_terms():
            factors = []
            for g, e in zip(GENS, mono):
                if e == 1:
                    factors.append(g)
                elif e > 1:
                    factors.append("%s^%d" % (g, e))
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = str(mag) + "*" + "*".join(factors)
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += " %s %s" % (sign, body)
        return text

    def __repr__(self):
        return "DiffPoly(%s)" % self.pretty()

    __str__ = pretty

    # numerics -----------------------------------------------------------
    def compile(self):
        """A fast float evaluator ``f(u, u1, a, b, am, bm, x, w)``."""
        if not self._terms:
            return lambda *vals: 0.0 * np.asarray(vals[0], dtype=float)
        monos = np.array(list(self._terms), dtype=int)
        coefs = np.array([float(c) for c in self._terms.values()])

        def evaluate(*vals):
            if len(vals) != _NGEN:
                raise ContractError("expected %d values in order %s" % (_NGEN, GENS))
            arrs = np.broadcast_arrays(*[np.asarray(v, dtype=float) for v in vals])
            out = np.zeros(arrs[0].shape)
            for mono, c in zip(monos, coefs):
                term = np.full(arrs[0].shape, c)
                for k, e in enumerate(mono):
                    if e:
                        term = term * arrs[k] ** e
                out = out + term
            return out[()] if out.ndim == 0 else out

        return evaluate

    def evaluate(self, **vals):
        missing = [g for g in GENS if g not in vals]
        if missing:
            raise ContractError("missing values for %s" % ", ".join(missing))
        return self.compile()(*(vals[g] for g in GENS))


def _g(name, power=1):
    return DiffPoly.gen(name, power)


def _build_rules():
    u, u1, a, b, am, bm, x, w = (_g(n) for n in GENS)
    dx = {
        "u": u1,
        "u1": 2 * u ** 3 + x * u,
        "a": u * b,
        "b": u * a - 2 * w * b,
        "am": u * bm,
        "bm": u * am + 2 * w * bm,
        "x": DiffPoly.const(1),
        "w": DiffPoly(),
    }
    dw = {
        "u": DiffPoly(),
        "u1": DiffPoly(),
        "a": 2 * u ** 2 * a - (4 * w * u + 2 * u1) * b,
        "b": (-4 * w * u + 2 * u1) * a + (8 * w ** 2 - 2 * x - 2 * u ** 2) * b,
        "am": -2 * u ** 2 * am + (-4 * w * u + 2 * u1) * bm,
        "bm": -(4 * w * u + 2 * u1) * am - (8 * w ** 2 - 2 * x - 2 * u ** 2) * bm,
        "x": DiffPoly(),
        "w": DiffPoly.const(1),
    }
    return dx, dw


_DX, _DW = _build_rules()


@lru_cache(maxsize=None)
def _dx_rule(mono):
    return _mono_derivative(mono, _DX)


@lru_cache(maxsize=None)
def _dw_rule(mono):
    return _mono_derivative(mono, _DW)


def _mono_derivative(mono, rules):
    out = DiffPoly()
    for k, e in enumerate(mono):
        if not e:
            continue
        rest = list(mono)
        rest[k] -= 1
        out = out + DiffPoly({tuple(rest): e}) * rules[GENS[k]]
    return out


def _derive(p, rule):
    acc = {}
    for mono, c in p._terms.items():
        for m, d in rule(mono)._terms.items():
            acc[m] = acc.get(m, 0) + c * d
    return DiffPoly(acc)


def d_dx(p):
    """Leibniz x-derivative, reduced to normal form."""
    return p.d_dx()


def d_dw(p):
    """Leibniz w-derivative, reduced to normal form."""
    return p.d_dw()


class _Parser:
    def __init__(self):
        u, u1, x = _g("u"), _g("u1"), _g("x")
        self.names = {g: _g(g) for g in GENS}
        self.names["u2"] = 2 * u ** 3 + x * u
        self.names["u3"] = self.names["u2"].d_dx()

    def run(self, text):
        return self._eval(ast.parse(text, mode="eval").body)

    def _eval(self, node):
        if isinstance(node, ast.BinOp):
            left, right = self._eval(node.left), self._eval(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if isinstance(node.op, ast.Div):
                return left / self._rational(right)
            if isinstance(node.op, ast.Pow):
                return left ** int(self._rational(right))
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            val = self._eval(node.operand)
            return -val if isinstance(node.op, ast.USub) else val
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return DiffPoly.const(node.value)
        if isinstance(node, ast.Name) and node.id in self.names:
            return self.names[node.id]
        raise ContractError("cannot parse %r" % ast.unparse(node))

    @staticmethod
    def _rational(p):
        t = p.terms
        if not t:
            return Fraction(0)
        if len(t) == 1 and (0,) * _NGEN in t:
            return t[(0,) * _NGEN]
        raise ContractError("expected a rational constant")


def build_y():
    """``(2u^2 + x - 4w^2) a am - (u1 + 2wu) b am - (u1 - 2wu) a bm``."""
    return DiffPoly.parse("(2*u**2 + x - 4*w**2)*a*am - (u1 + 2*w*u)*b*am - (u1 - 2*w*u)*a*bm")


def swap_w(p):
    """Apply ``w -> -w, a <-> am, b <-> bm``."""
    out = {}
    for mono, c in p.terms.items():
        m = list(mono)
        m[2], m[4] = mono[4], mono[2]
        m[3], m[5] = mono[5], mono[3]
        out[tuple(m)] = c * (-1) ** mono[7]
    return DiffPoly(out)


# ---------------------------------------------------------------------------
# y-partials


_PARTIAL_SPEC = {
    # name: (x-derivatives, w-derivatives)
    "y": (0, 0), "y1": (1, 0), "y2": (2, 0), "y3": (3, 0), "y4": (4, 0), "y5": (5, 0),
    "yw": (0, 1), "y1w": (1, 1), "y2w": (2, 1), "yww": (0, 2), "y1ww": (1, 2),
}


@lru_cache(maxsize=None)
def y_partial(nx, nw):
    """``d_x^nx d_w^nw y`` (w-derivatives applied first)."""
    p = build_y()
    for _ in range(nw):
        p = p.d_dw()
    for _ in range(nx):
        p = p.d_dx()
    return p


def y_partials():
    """Mapping of ``y, y1..y5, yw, y1w, y2w, yww, y1ww`` to their DiffPolys."""
    return {name: y_partial(*spec) for name, spec in _PARTIAL_SPEC.items()}


# Printed closed forms.  ab(-w) is a*bm, ba(-w) is b*am.
PRINTED = {
    "y1": "a*am",
    "y2": "u*b*am + u*a*bm",
    "y3": "(u1 - 2*w*u)*b*am + 4*u**2*a*am + (u1 + 2*w*u)*a*bm",
    "y4": "12*u*u1*a*am + (4*u**3 + u2 + 4*w*u1 + 4*w**2*u)*a*bm"
          " + (u2 + 4*u**3 - 4*w*u1 + 4*w**2*u)*b*am",
    "y5": "(12*u1**2 + 16*u*u2 + 16*u**4 + 16*w**2*u**2)*a*am"
          " + (24*u**2*u1 + u3 + 6*w*u2 + 12*w**2*u1 + 8*w*u**3 + 8*w**3*u)*a*bm"
          " + (24*u**2*u1 + u3 - 6*w*u2 - 8*w*u**3 + 12*w**2*u1 - 8*w**3*u)*b*am",
    "yw": "-8*w*a*am + 2*u*a*bm + (-2*u)*b*am",
    "yww": "(-8 - 16*u*u1)*a*am + (16*w**2*u - 16*w*u1 + 8*u**3 + 4*u*x)*a*bm"
           " + (16*w**2*u + 16*w*u1 + 8*u**3 + 4*u*x)*b*am",
}

# The printed third-derivative rule for u, and the one implied by u'' = 2u^3 + xu.
PRINTED_U3_RULE = "6*u*u1 + u + x*u1"


@dataclass(frozen=True)
class GoldenLine:
    name: str
    printed: DiffPoly
    derived: DiffPoly

    @property
    def delta(self):
        return self.printed - self.derived

    @property
    def match(self):
        return self.delta.is_zero()


def golden_report():
    """Compare each printed closed form with the mechanical derivation.

    The last entry, ``"u3-rule"``, checks the printed reduction rule for
    ``u'''`` against the derivative of ``2u^3 + xu``.
    """
    derived = y_partials()
    lines = [GoldenLine(n, DiffPoly.parse(t), derived[n]) for n, t in PRINTED.items()]
    u2 = DiffPoly.parse("u2")
    lines.append(GoldenLine("u3-rule", DiffPoly.parse(PRINTED_U3_RULE), u2.d_dx()))
    return lines


def format_golden_report(lines=None):
    lines = golden_report() if lines is None else lines
    out = []
    for ln in lines:
        status = "ok" if ln.match else "MISMATCH"
        out.append("%-8s %s" % (ln.name, status))
        if not ln.match:
            out.append("    printed - derived = %s" % ln.delta.pretty())
    return "\n".join(out)


# ---------------------------------------------------------------------------
# the KP target expression (times y^3)

# (outer factor, [(inner coefficient, (factor, factor, factor)), ...])
TARGET = (
    ("1/12", [(1, ("y5", "y", "y")), (-5, ("y1", "y4", "y")), (2, ("y2", "y3", "y")),
              (-6, ("y1", "y2", "y2")), (8, ("y1", "y1", "y3"))]),
    ("-1/6", [(1, ("y2", "y", "y")), (-1, ("y1", "y1", "y"))]),
    ("1/16", [(1, ("y1ww", "y", "y")), (-2, ("y1w", "yw", "y")), (-1, ("y1", "yww", "y")),
              (2, ("y1", "yw", "yw"))]),
    ("w/3", [(1, ("y2w", "y", "y")), (-1, ("y2", "yw", "y")), (-2, ("y1", "y1w", "y")),
             (2, ("y1", "y1", "yw"))]),
    ("-x/3", [(1, ("y3", "y", "y")), (-3, ("y1", "y2", "y")), (2, ("y1", "y1", "y1"))]),
    ("-u**2", [(1, ("y3", "y", "y")), (-3, ("y1", "y2", "y")), (2, ("y1", "y1", "y1"))]),
    ("-2*u*u1", [(1, ("y2", "y", "y")), (-1, ("y1", "y1", "y"))]),
)


def target_coefficients():
    """Flat list of the rational coefficients of `TARGET` as (block, slot) keys.

    ``slot`` is ``None`` for the block's outer rational factor.
    """
    keys = []
    for i, (_, inner) in enumerate(TARGET):
        keys.append((i, None))
        keys.extend((i, j) for j in range(len(inner)))
    return keys


@lru_cache(maxsize=None)
def _target_pieces():
    parts = y_partials()
    pieces = []
    for outer, inner in TARGET:
        base = DiffPoly.parse(outer)
        scale = _leading_rational(base)
        shape = base / scale
        prods = [parts[f1] * parts[f2] * parts[f3] for _, (f1, f2, f3) in inner]
        pieces.append((scale, shape, [c for c, _ in inner], prods))
    return pieces


def _leading_rational(p):
    return next(iter(p.terms.values()))


def assemble_target(mutate=None):
    """The target expression; `mutate` maps a coefficient key to a replacement."""
    mutate = mutate or {}
    total = DiffPoly()
    for i, (scale, shape, coefs, prods) in enumerate(_target_pieces()):
        scale = Fraction(mutate.get((i, None), scale))
        block = DiffPoly()
        for j, (c, pr) in enumerate(zip(coefs, prods)):
            block = block + pr * Fraction(mutate.get((i, j), c))
        total = total + shape * scale * block
    return total


def target_coefficient(key):
    i, j = key
    scale, _, coefs, _ = _target_pieces()[i]
    return scale if j is None else Fraction(coefs[j])


def verify_kp_cancellation(mutate=None):
    """Assemble the KP target in exact arithmetic.

    Returns ``{"zero": bool, "reduced": DiffPoly}``.
    """
    reduced = assemble_target(mutate)
    return {"zero": reduced.is_zero(), "reduced": reduced}


def mutation_survey(delta=Fraction(1, 7)):
    """Perturb every coefficient of the target by `delta` in turn.

    Returns ``{key: still_zero}``; a sound cancellation has all False.
    """
    out = {}
    for key in target_coefficients():
        res = verify_kp_cancellation({key: target_coefficient(key) + delta})
        out[key] = res["zero"]
    return out


# ---------------------------------------------------------------------------
# coefficient tables


@dataclass(frozen=True)
class CoeffTable:
    """``{(a, b, am, bm) exponents: coefficient DiffPoly in u, u1, x, w}``."""

    entries: dict

    def evaluate(self, u, u1, x, w):
        return {k: float(p.evaluate(u=u, u1=u1, a=1, b=1, am=1, bm=1, x=x, w=w))
                for k, p in self.entries.items()}

    def value(self, u, u1, a, b, am, bm, x, w):
        total = 0.0
        for (ea, eb, eam, ebm), c in self.evaluate(u, u1, x, w).items():
            total += c * a ** ea * b ** eb * am ** eam * bm ** ebm
        return total

    def labels(self):
        names = ("a", "b", "am", "bm")
        out = {}
        for key in self.entries:
            out[key] = "*".join(n if e == 1 else "%s^%d" % (n, e)
                                for n, e in zip(names, key) if e) or "1"
        return out


def export_coeff_table(p):
    """Split `p` by its ``(a, b, am, bm)`` monomials."""
    entries = {}
    for mono, c in p.terms.items():
        key = tuple(mono[i] for i in _AB)
        if sum(key) > 3:
            raise ContractError("export_coeff_table supports total (a, b, am, bm) degree <= 3")
        rest = list(mono)
        for i in _AB:
            rest[i] = 0
        entries.setdefault(key, {})[tuple(rest)] = c
    return CoeffTable({k: DiffPoly(v) for k, v in sorted(entries.items(), reverse=True)})


@lru_cache(maxsize=None)
def compiled_partials():
    """Float evaluators for every entry of `y_partials`."""
    return {name: p.compile() for name, p in y_partials().items()}
