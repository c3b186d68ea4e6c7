"""Sparse multivariate polynomials with exact rational coefficients.

A :class:`Polynomial` is a mapping from exponent tuples to nonzero rationals
attached to a :class:`RingSpec`.  Coefficients are stored as ``int`` when
integral and as ``Fraction`` otherwise, which keeps the common integral case
fast without giving up exactness.

Membership questions (ideal and subalgebra) are answered by degree-bounded
linear solves.  A solve either returns a :class:`Certificate` that has been
re-expanded and checked, or the falsy :data:`UNKNOWN` value.  Nothing here
ever claims non-membership.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .linalg import EchelonBasis, normalize_scalar, rref

Exponent = Tuple[int, ...]
Scalar = Union[int, Fraction]


class RingMismatchError(ValueError):
    """Raised when polynomials over different rings are combined."""


class PolynomialParseError(ValueError):
    pass


@dataclass(frozen=True)
class RingSpec:
    """An ordered list of variable names with optional integer weights."""

    variables: Tuple[str, ...]
    weights: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if self.weights is not None:
            object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        if not self.variables:
            raise ValueError("a ring needs at least one variable")
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"duplicate variable names in {self.variables}")
        for name in self.variables:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name):
                raise ValueError(f"bad variable name {name!r}")
        if self.weights is not None and len(self.weights) != len(self.variables):
            raise ValueError("weights must match variables in length")

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise KeyError(f"{name!r} is not a variable of {self.variables}") from None

    def var(self, name: str) -> "Polynomial":
        i = self.index(name)
        exp = tuple(1 if j == i else 0 for j in range(self.nvars))
        return Polynomial(self, {exp: 1})

    def gens(self) -> List["Polynomial"]:
        return [self.var(v) for v in self.variables]

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        c = normalize_scalar(c)
        if not c:
            return self.zero()
        return Polynomial(self, {(0,) * self.nvars: c})

    def monomial(self, exp: Sequence[int], coeff=1) -> "Polynomial":
        return Polynomial(self, {tuple(exp): normalize_scalar(coeff)})

    def parse(self, text: str, symbols: Optional[Mapping[str, "Polynomial"]] = None) -> "Polynomial":
        return parse_polynomial(text, self, symbols)

    def extend(self, names: Sequence[str], weights: Optional[Sequence[int]] = None) -> "RingSpec":
        """Append fresh variables.  Weights are kept only if both sides have them."""
        for n in names:
            if n in self.variables:
                raise ValueError(f"variable {n!r} already present")
        if self.weights is not None and weights is not None:
            new_w = self.weights + tuple(weights)
        else:
            new_w = None
        return RingSpec(self.variables + tuple(names), new_w)

    def without_weights(self) -> "RingSpec":
        return RingSpec(self.variables, None)

    def with_weights(self, weights: Sequence[int]) -> "RingSpec":
        return RingSpec(self.variables, tuple(weights))


def grlex_key(exp: Exponent):
    """Sort key for graded lex order: larger key means larger monomial."""
    return (sum(exp), exp)


class Polynomial:
    """Immutable sparse polynomial over a :class:`RingSpec`."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: RingSpec, terms: Optional[Mapping[Exponent, Scalar]] = None, _trusted: bool = False):
        self.ring = ring
        if terms is None:
            terms = {}
        if _trusted:
            self._terms = terms
        else:
            clean = {}
            n = ring.nvars
            for exp, c in terms.items():
                exp = tuple(int(e) for e in exp)
                if len(exp) != n or any(e < 0 for e in exp):
                    raise ValueError(f"bad exponent vector {exp} for ring with {n} variables")
                c = normalize_scalar(c)
                if c:
                    clean[exp] = normalize_scalar(clean.get(exp, 0) + c)
                    if not clean[exp]:
                        del clean[exp]
            self._terms = clean
        self._hash = None

    # -- basic access -------------------------------------------------
    @property
    def terms(self) -> Dict[Exponent, Scalar]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and not any(next(iter(self._terms))))

    def constant_term(self) -> Scalar:
        return self._terms.get((0,) * self.ring.nvars, 0)

    def coefficient(self, exp: Sequence[int]) -> Scalar:
        return self._terms.get(tuple(exp), 0)

    def total_degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def min_degree(self) -> int:
        if not self._terms:
            return -1
        return min(sum(e) for e in self._terms)

    def degree_in(self, name: str) -> int:
        i = self.ring.index(name)
        if not self._terms:
            return -1
        return max(e[i] for e in self._terms)

    def sorted_terms(self) -> List[Tuple[Exponent, Scalar]]:
        """Terms in grlex-descending order."""
        return sorted(self._terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def leading_term(self) -> Tuple[Exponent, Scalar]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        exp = max(self._terms, key=grlex_key)
        return exp, self._terms[exp]

    def used_variables(self) -> List[str]:
        used = set()
        for exp in self._terms:
            for i, e in enumerate(exp):
                if e:
                    used.add(i)
        return [self.ring.variables[i] for i in sorted(used)]

    def monomial_weight(self, exp: Exponent) -> int:
        w = self.ring.weights
        if w is None:
            raise ValueError("ring has no weights")
        return sum(a * b for a, b in zip(w, exp))

    def weights_present(self) -> List[int]:
        return sorted({self.monomial_weight(e) for e in self._terms})

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def is_weight_homogeneous(self) -> bool:
        return len(self.weights_present()) <= 1

    def weight(self) -> int:
        """Weight of a nonzero weight-homogeneous polynomial."""
        ws = self.weights_present()
        if len(ws) != 1:
            raise ValueError("polynomial is zero or not weight-homogeneous")
        return ws[0]

    # -- arithmetic ---------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatchError(f"ring mismatch: {self.ring.variables} vs {other.ring.variables}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(other._terms) > len(self._terms):
            big, small = other._terms, self._terms
        else:
            big, small = self._terms, other._terms
        res = dict(big)
        for e, c in small.items():
            v = res.get(e, 0) + c
            if v:
                res[e] = normalize_scalar(v)
            else:
                res.pop(e, None)
        return Polynomial(self.ring, res, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {e: -c for e, c in self._terms.items()}, _trusted=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c) -> "Polynomial":
        c = normalize_scalar(c)
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {e: normalize_scalar(v * c) for e, v in self._terms.items()}, _trusted=True)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        res: Dict[Exponent, Scalar] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = res.get(e, 0) + c1 * c2
                if v:
                    res[e] = v
                else:
                    del res[e]
        return Polynomial(self.ring, {e: normalize_scalar(c) for e, c in res.items()}, _trusted=True)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero")
            return self.scale(Fraction(1) / Fraction(other))
        return NotImplemented

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.ring.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == self.ring.const(other)._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"

    def __str__(self):
        return format_polynomial(self)

    # -- structural operations ------------------------------------------
    def derivative(self, name: str) -> "Polynomial":
        i = self.ring.index(name)
        res = {}
        for e, c in self._terms.items():
            if e[i]:
                ne = e[:i] + (e[i] - 1,) + e[i + 1:]
                res[ne] = normalize_scalar(c * e[i])
        return Polynomial(self.ring, res, _trusted=True)

    def evaluate(self, point: Mapping[str, Scalar]):
        """Evaluate at rational values for every used variable."""
        vals = []
        for v in self.ring.variables:
            vals.append(Fraction(point[v]) if v in point else None)
        total = Fraction(0)
        for e, c in self._terms.items():
            t = Fraction(c)
            for val, k in zip(vals, e):
                if k:
                    if val is None:
                        raise KeyError("missing value for a used variable")
                    t *= val ** k
            total += t
        return normalize_scalar(total)

    def embed(self, ring: RingSpec) -> "Polynomial":
        """Re-express in a ring that contains all used variables by name."""
        if ring == self.ring:
            return self
        pos = []
        for name in self.ring.variables:
            pos.append(ring.variables.index(name) if name in ring.variables else None)
        n = ring.nvars
        res = {}
        for e, c in self._terms.items():
            ne = [0] * n
            for i, k in enumerate(e):
                if k:
                    if pos[i] is None:
                        raise RingMismatchError(f"variable {self.ring.variables[i]} missing in target ring")
                    ne[pos[i]] = k
            res[tuple(ne)] = c
        return Polynomial(ring, res, _trusted=True)

    def homogeneous_components(self) -> Dict[int, "Polynomial"]:
        comps: Dict[int, Dict[Exponent, Scalar]] = {}
        for e, c in self._terms.items():
            comps.setdefault(sum(e), {})[e] = c
        return {d: Polynomial(self.ring, t, _trusted=True) for d, t in sorted(comps.items())}

    def exact_divide(self, divisor: "Polynomial") -> Optional["Polynomial"]:
        """Return q with q * divisor == self, or None when no such q exists."""
        divisor = self._coerce(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lexp, lc = divisor.leading_term()
        rem = self
        quot: Dict[Exponent, Scalar] = {}
        while rem:
            rexp, rc = rem.leading_term()
            if any(a < b for a, b in zip(rexp, lexp)):
                return None
            qexp = tuple(a - b for a, b in zip(rexp, lexp))
            qc = normalize_scalar(Fraction(rc) / Fraction(lc))
            quot[qexp] = qc
            rem = rem - divisor * Polynomial(self.ring, {qexp: qc}, _trusted=True)
        return Polynomial(self.ring, quot)


def substitute(p: Polynomial, images: Mapping[str, Polynomial], target: Optional[RingSpec] = None) -> Polynomial:
    """Apply the ring homomorphism sending each variable to its image."""
    if target is None:
        if images:
            target = next(iter(images.values())).ring
        else:
            target = p.ring
    imgs = []
    for i, name in enumerate(p.ring.variables):
        if name in images:
            img = images[name]
            if isinstance(img, (int, Fraction)):
                img = target.const(img)
            elif img.ring != target:
                raise RingMismatchError("images must share one target ring")
            imgs.append(img)
        else:
            imgs.append(None)
    cache: Dict[Tuple[int, int], Polynomial] = {}

    def power(i, k):
        key = (i, k)
        if key not in cache:
            cache[key] = imgs[i] ** k
        return cache[key]

    result = target.zero()
    for e, c in p.items():
        term = target.const(c)
        for i, k in enumerate(e):
            if k:
                if imgs[i] is None:
                    raise KeyError(f"no image given for variable {p.ring.variables[i]}")
                term = term * power(i, k)
        result = result + term
    return result


def weighted_components(p: Polynomial) -> Dict[int, Polynomial]:
    """Split ``p`` into weight-homogeneous pieces using the ring weights."""
    if p.ring.weights is None:
        raise ValueError("ring has no weights")
    comps: Dict[int, Dict[Exponent, Scalar]] = {}
    for e, c in p.items():
        comps.setdefault(p.monomial_weight(e), {})[e] = c
    return {w: Polynomial(p.ring, t, _trusted=True) for w, t in sorted(comps.items())}


# -- monomial enumeration ------------------------------------------------

@lru_cache(maxsize=None)
def _exponents_of_degree(nvars: int, degree: int) -> Tuple[Exponent, ...]:
    """All exponent vectors of a given total degree, lex-descending."""
    if nvars == 1:
        return ((degree,),)
    out = []
    for first in range(degree, -1, -1):
        for rest in _exponents_of_degree(nvars - 1, degree - first):
            out.append((first,) + rest)
    return tuple(out)


def exponents_up_to(ring: RingSpec, max_total_degree: int, weight: Optional[int] = None) -> List[Exponent]:
    out = []
    w = ring.weights
    if weight is not None and w is None:
        raise ValueError("ring has no weights")
    for d in range(max_total_degree + 1):
        for e in _exponents_of_degree(ring.nvars, d):
            if weight is None or sum(a * b for a, b in zip(w, e)) == weight:
                out.append(e)
    return out


def monomial_basis(ring: RingSpec, max_total_degree: int, weight: Optional[int] = None) -> List[Polynomial]:
    """Monomials of total degree at most the bound, in grlex order.

    Degree ascends; within one degree, monomials are listed lex-descending
    (so ``x`` precedes ``y``).
    """
    if max_total_degree < 0:
        raise ValueError("max_total_degree must be non-negative")
    return [Polynomial(ring, {e: 1}, _trusted=True) for e in exponents_up_to(ring, max_total_degree, weight)]


# -- text format ---------------------------------------------------------

def _format_scalar(c: Scalar) -> str:
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    return str(c)


def format_monomial(ring: RingSpec, exp: Exponent) -> str:
    parts = []
    for name, k in zip(ring.variables, exp):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def format_polynomial(p: Polynomial) -> str:
    if p.is_zero():
        return "0"
    out = []
    for i, (exp, c) in enumerate(p.sorted_terms()):
        neg = c < 0
        a = -c if neg else c
        mono = format_monomial(p.ring, exp)
        if not mono:
            body = _format_scalar(a)
        elif a == 1:
            body = mono
        else:
            body = f"{_format_scalar(a)}*{mono}"
        if i == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise PolynomialParseError(f"unexpected character at {pos} in {text!r}")
        num, ident, op = m.groups()
        if num is not None:
            tokens.append(("num", int(num)))
        elif ident is not None:
            tokens.append(("id", ident))
        else:
            tokens.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return tokens


def _split_identifier(ident: str, names: Sequence[str]) -> List[str]:
    """Split juxtaposed names like ``x0x2`` greedily by longest match."""
    if ident in names:
        return [ident]
    by_len = sorted(names, key=len, reverse=True)
    out = []
    i = 0
    while i < len(ident):
        for n in by_len:
            if ident.startswith(n, i):
                out.append(n)
                i += len(n)
                break
        else:
            raise PolynomialParseError(f"unknown name {ident[i:]!r} in {ident!r}")
    return out


class _Parser:
    def __init__(self, text, ring, symbols):
        self.tokens = _tokenize(text)
        self.i = 0
        self.ring = ring
        self.env: Dict[str, Polynomial] = {v: ring.var(v) for v in ring.variables}
        for k, v in (symbols or {}).items():
            if isinstance(v, (int, Fraction)):
                v = ring.const(v)
            elif v.ring != ring:
                v = v.embed(ring)
            self.env[k] = v
        self.names = list(self.env)

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, op):
        tok = self.take()
        if tok != ("op", op):
            raise PolynomialParseError(f"expected {op!r}, got {tok[1]!r}")

    def parse(self):
        if not self.tokens:
            raise PolynomialParseError("empty polynomial text")
        value = self.expr()
        if self.i != len(self.tokens):
            raise PolynomialParseError(f"trailing input near token {self.peek()[1]!r}")
        return value

    def expr(self):
        value = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while True:
            tok = self.peek()
            if tok == ("op", "*"):
                self.take()
                value = value * self.unary()
            elif tok == ("op", "/"):
                self.take()
                den = self.unary()
                if not den.is_constant() or den.is_zero():
                    raise PolynomialParseError("division only by nonzero constants")
                value = value / Fraction(den.constant_term())
            elif tok[0] in ("num", "id") or tok == ("op", "("):
                value = value * self.power()
            else:
                return value

    def unary(self):
        tok = self.peek()
        if tok == ("op", "-"):
            self.take()
            return -self.unary()
        if tok == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num":
                raise PolynomialParseError("exponent must be a non-negative integer literal")
            base = base ** val
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return self.ring.const(val)
        if kind == "id":
            parts = _split_identifier(val, self.names)
            value = self.ring.one()
            for i, part in enumerate(parts):
                factor = self.env[part]
                # a trailing ^ binds only to the last juxtaposed name
                if i < len(parts) - 1:
                    value = value * factor
                else:
                    last = factor
            if self.peek() == ("op", "^") and len(parts) > 1:
                self.take()
                k, e = self.take()
                if k != "num":
                    raise PolynomialParseError("exponent must be a non-negative integer literal")
                return value * last ** e
            return value * last
        if (kind, val) == ("op", "("):
            value = self.expr()
            self.expect(")")
            return value
        raise PolynomialParseError(f"unexpected token {val!r}")


def parse_polynomial(text: str, ring: RingSpec, symbols: Optional[Mapping[str, Polynomial]] = None) -> Polynomial:
    """Parse text like ``2*x0*x2 - x1^2``; ``symbols`` adds named shorthands."""
    return _Parser(text, ring, symbols).parse()


# -- certificates and bounded membership ------------------------------------

@dataclass(frozen=True)
class Unknown:
    """Outcome of a bounded search that found no witness.  Always falsy."""

    reason: str = "no certificate within bound"
    bound: Optional[int] = None

    def __bool__(self):
        return False


UNKNOWN = Unknown()


@dataclass(frozen=True)
class Certificate:
    """Explicit witness of ideal or subalgebra membership.

    For ``kind == "ideal"`` the combiners are ``(generator index, coefficient
    polynomial)`` pairs with ``sum(c * g[i]) == target``.  For
    ``kind == "subalgebra"`` each combiner is ``(exponent tuple over the
    generators, rational coefficient)``.
    """

    kind: str
    target: Polynomial
    generators: Tuple[Polynomial, ...]
    combiners: Tuple
    bound: int

    def expand(self) -> Polynomial:
        ring = self.target.ring
        total = ring.zero()
        if self.kind == "ideal":
            for i, coeff in self.combiners:
                total = total + coeff * self.generators[i]
        elif self.kind == "subalgebra":
            for exps, c in self.combiners:
                total = total + _product_of_powers(self.generators, exps, ring).scale(c)
        else:
            raise ValueError(f"unknown certificate kind {self.kind!r}")
        return total

    def verify(self) -> bool:
        return self.expand() == self.target

    def __bool__(self):
        return True

    def describe(self) -> str:
        if self.kind == "ideal":
            parts = [f"({c})*g{i}" for i, c in self.combiners]
        else:
            parts = []
            for exps, c in self.combiners:
                mono = "*".join(f"g{i}^{k}" if k > 1 else f"g{i}" for i, k in enumerate(exps) if k) or "1"
                parts.append(f"{_format_scalar(c)}*{mono}")
        return " + ".join(parts) if parts else "0"


def _product_of_powers(gens: Sequence[Polynomial], exps: Sequence[int], ring: RingSpec) -> Polynomial:
    out = ring.one()
    for g, k in zip(gens, exps):
        if k:
            out = out * g ** k
    return out


def _gradings(polys: Sequence[Polynomial]) -> List[Callable[[Exponent], int]]:
    """Gradings (total degree, ring weight) in which every input is homogeneous."""
    ring = polys[0].ring
    candidates: List[Callable[[Exponent], int]] = [sum]
    if ring.weights is not None:
        w = ring.weights
        candidates.append(lambda e, w=w: sum(a * b for a, b in zip(w, e)))
    good = []
    for g in candidates:
        if all(len({g(e) for e, _ in p.items()}) <= 1 for p in polys if p):
            good.append(g)
    return good


def _degree_of(p: Polynomial, grading) -> int:
    return grading(next(iter(p._terms)))


def _check_ring(polys: Sequence[Polynomial]):
    ring = polys[0].ring
    for p in polys:
        if p.ring != ring:
            raise RingMismatchError("all polynomials must share one ring")
    return ring


def bounded_ideal_membership(target: Polynomial, generators: Sequence[Polynomial], bound: int):
    """Search for coefficients of degree at most ``bound`` expressing target.

    Returns a verified :class:`Certificate` or :data:`UNKNOWN`.
    """
    if bound < 0:
        raise ValueError("bound must be non-negative")
    gens = tuple(generators)
    ring = _check_ring((target,) + gens)
    if target.is_zero():
        return Certificate("ideal", target, gens, (), bound)
    for i, g in enumerate(gens):
        if g == target:
            return Certificate("ideal", target, gens, ((i, ring.one()),), bound)
    # homogeneity pruning: when target and generators are homogeneous for a
    # grading, only multipliers landing in the target's degree can help
    gradings = _gradings([target] + [g for g in gens if g])
    columns: List[Tuple[int, Exponent]] = []
    basis = EchelonBasis()
    for i, g in enumerate(gens):
        if not g:
            continue
        for exp in exponents_up_to(ring, bound):
            if any(gr(exp) + _degree_of(g, gr) != _degree_of(target, gr) for gr in gradings):
                continue
            vec = {}
            for ge, c in g.items():
                vec[tuple(a + b for a, b in zip(ge, exp))] = c
            basis.add(vec)
            columns.append((i, exp))
    coeffs = basis.express(dict(target.items()))
    if coeffs is None:
        return Unknown(bound=bound)
    per_gen: Dict[int, Dict[Exponent, Scalar]] = {}
    for label, c in coeffs.items():
        i, exp = columns[label]
        per_gen.setdefault(i, {})[exp] = c
    combiners = tuple((i, Polynomial(ring, t)) for i, t in sorted(per_gen.items()))
    cert = Certificate("ideal", target, gens, combiners, bound)
    if not cert.verify():
        raise AssertionError("internal error: ideal certificate failed to re-expand")
    return cert


def _generator_monomials(degrees: Sequence[int], bound: int) -> List[Tuple[int, ...]]:
    n = len(degrees)
    out = []
    for total in range(bound + 1):
        for exps in _exponents_of_degree(n, total) if n else [()]:
            out.append(exps)
    return out


def bounded_subalgebra_membership(target: Polynomial, generators: Sequence[Polynomial], bound: int):
    """Search for a polynomial expression of degree at most ``bound`` in the generators."""
    if bound < 0:
        raise ValueError("bound must be non-negative")
    gens = tuple(generators)
    ring = _check_ring((target,) + gens)
    for i, g in enumerate(gens):
        if g == target:
            exps = tuple(1 if j == i else 0 for j in range(len(gens)))
            return Certificate("subalgebra", target, gens, ((exps, 1),), bound)
    if target.is_zero():
        return Certificate("subalgebra", target, gens, (), bound)
    pruning = _homogeneous_pruning(target, gens)
    basis = EchelonBasis()
    labels = []
    power_cache: Dict[Tuple[int, int], Polynomial] = {}

    def pw(i, k):
        if (i, k) not in power_cache:
            power_cache[(i, k)] = gens[i] ** k
        return power_cache[(i, k)]

    for exps in _generator_monomials([0] * len(gens), bound):
        if pruning is not None and not pruning(exps):
            continue
        prod = ring.one()
        for i, k in enumerate(exps):
            if k:
                prod = prod * pw(i, k)
        basis.add(dict(prod.items()))
        labels.append(exps)
    coeffs = basis.express(dict(target.items()))
    if coeffs is None:
        return Unknown(bound=bound)
    combiners = tuple((labels[l], c) for l, c in sorted(coeffs.items()))
    cert = Certificate("subalgebra", target, gens, combiners, bound)
    if not cert.verify():
        raise AssertionError("internal error: subalgebra certificate failed to re-expand")
    return cert


def _homogeneous_pruning(target: Polynomial, gens: Sequence[Polynomial]):
    """A filter on generator exponent vectors from gradings where all inputs are homogeneous.

    Products whose degree misses every degree present in the target are
    dropped; zero or constant generators disable pruning for safety.
    """
    if any(not g for g in gens):
        return None
    polys = list(gens)
    gradings = []
    ring = target.ring
    candidates = [sum]
    if ring.weights is not None:
        w = ring.weights
        candidates.append(lambda e, w=w: sum(a * b for a, b in zip(w, e)))
    for gr in candidates:
        if all(len({gr(e) for e, _ in p.items()}) == 1 for p in polys):
            gdeg = [gr(next(iter(p._terms))) for p in polys]
            tdeg = {gr(e) for e, _ in target.items()}
            gradings.append((gdeg, tdeg))
    if not gradings:
        return None

    def keep(exps):
        for gdeg, tdeg in gradings:
            if sum(k * d for k, d in zip(exps, gdeg)) not in tdeg:
                return False
        return True

    return keep


def linear_kernel_on_slice(linear_map: Callable[[Polynomial], Polynomial], ring: RingSpec, bound: int,
                           weight: Optional[int] = None) -> List[Polynomial]:
    """Reduced echelon basis of the kernel of a linear map on a monomial slice.

    The slice is all polynomials of total degree at most ``bound`` (and of the
    given weight, if any).
    """
    monos = exponents_up_to(ring, bound, weight)
    columns = []
    for e in monos:
        img = linear_map(Polynomial(ring, {e: 1}, _trusted=True))
        columns.append(dict(img.items()))
    basis = EchelonBasis()
    kernel_vectors = []
    for col in columns:
        independent, dep = basis.add(col)
        if not independent:
            kernel_vectors.append({monos[j]: c for j, c in dep.items()})
    rows = rref(kernel_vectors)
    out = [Polynomial(ring, r) for r in rows]
    out.sort(key=lambda p: grlex_key(p.leading_term()[0]))
    return out


def span_contains(basis: Sequence[Polynomial], p: Polynomial) -> bool:
    """Is ``p`` a rational linear combination of ``basis``?"""
    eb = EchelonBasis()
    for b in basis:
        eb.add(dict(b.items()))
    return eb.contains(dict(p.items()))


def span_rank(polys: Iterable[Polynomial]) -> int:
    eb = EchelonBasis()
    for p in polys:
        eb.add(dict(p.items()))
    return eb.rank


def same_span(a: Sequence[Polynomial], b: Sequence[Polynomial]) -> bool:
    ra, rb = span_rank(a), span_rank(b)
    return ra == rb == span_rank(list(a) + list(b))


class SubalgebraOracle:
    """Reusable bounded subalgebra membership for many targets.

    Builds the span of all generator monomials of degree at most ``bound``
    once; each query is then a single reduction.
    """

    def __init__(self, generators: Sequence[Polynomial], bound: int):
        self.generators = tuple(generators)
        self.bound = bound
        self.ring = _check_ring(self.generators)
        self._basis = EchelonBasis()
        self._labels: List[Tuple[int, ...]] = []
        for exps in _generator_monomials([0] * len(self.generators), bound):
            prod = _product_of_powers(self.generators, exps, self.ring)
            self._basis.add(dict(prod.items()))
            self._labels.append(exps)

    def query(self, target: Polynomial):
        coeffs = self._basis.express(dict(target.items()))
        if coeffs is None:
            return Unknown(bound=self.bound)
        combiners = tuple((self._labels[l], c) for l, c in sorted(coeffs.items()))
        cert = Certificate("subalgebra", target, self.generators, combiners, self.bound)
        if not cert.verify():
            raise AssertionError("internal error: subalgebra certificate failed to re-expand")
        return cert
