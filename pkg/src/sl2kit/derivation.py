"""Derivations of polynomial rings given by their values on the variables.

Only generator images are stored; application to an arbitrary polynomial is
the Leibniz extension.  Besides application and brackets this module offers
the D-degree, transvectants, the cleared Dixmier map and D-cables.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Mapping, Optional, Sequence, Tuple

from .linalg import normalize_scalar
from .polyring import Polynomial, RingMismatchError, RingSpec, parse_polynomial

NEG_INF = float("-inf")
DEFAULT_CAP = 64


class DegreeCapExceeded(RuntimeError):
    """Iterating the derivation did not reach zero within the cap."""


class TransvectantError(ValueError):
    pass


class DixmierError(ValueError):
    pass


class CableError(ValueError):
    pass


class Derivation:
    """A k-derivation of ``ring`` fixed by the images of the variables."""

    __slots__ = ("ring", "images", "_image_terms")

    def __init__(self, ring: RingSpec, images: Sequence[Polynomial]):
        images = tuple(images)
        if len(images) != ring.nvars:
            raise ValueError("need one image per variable")
        for img in images:
            if img.ring != ring:
                raise RingMismatchError("derivation images must live in the derivation's ring")
        self.ring = ring
        self.images = images
        self._image_terms = tuple(tuple(img.items()) for img in images)

    @classmethod
    def from_mapping(cls, ring: RingSpec, mapping: Mapping[str, Polynomial]) -> "Derivation":
        """Build from ``{variable: image}``; missing variables map to 0."""
        for k in mapping:
            ring.index(k)
        imgs = []
        for v in ring.variables:
            img = mapping.get(v, ring.zero())
            if isinstance(img, str):
                img = ring.parse(img)
            imgs.append(img)
        return cls(ring, imgs)

    @classmethod
    def zero(cls, ring: RingSpec) -> "Derivation":
        return cls(ring, [ring.zero()] * ring.nvars)

    def image(self, name: str) -> Polynomial:
        return self.images[self.ring.index(name)]

    def __call__(self, p: Polynomial) -> Polynomial:
        return derive_apply(self, p)

    def power(self, p: Polynomial, k: int) -> Polynomial:
        for _ in range(k):
            if not p:
                break
            p = derive_apply(self, p)
        return p

    def __add__(self, other: "Derivation") -> "Derivation":
        _same_ring(self, other)
        return Derivation(self.ring, [a + b for a, b in zip(self.images, other.images)])

    def __sub__(self, other: "Derivation") -> "Derivation":
        _same_ring(self, other)
        return Derivation(self.ring, [a - b for a, b in zip(self.images, other.images)])

    def scale(self, c) -> "Derivation":
        return Derivation(self.ring, [img.scale(c) for img in self.images])

    def times(self, p: Polynomial) -> "Derivation":
        """The derivation p*D."""
        return Derivation(self.ring, [p * img for img in self.images])

    def __neg__(self):
        return self.scale(-1)

    def is_zero(self) -> bool:
        return not any(self.images)

    def __eq__(self, other):
        return isinstance(other, Derivation) and self.ring == other.ring and self.images == other.images

    def __hash__(self):
        return hash((self.ring, self.images))

    def embed(self, ring: RingSpec) -> "Derivation":
        """Extend to a larger ring by sending the new variables to 0."""
        imgs = []
        for v in ring.variables:
            if v in self.ring.variables:
                imgs.append(self.image(v).embed(ring))
            else:
                imgs.append(ring.zero())
        return Derivation(ring, imgs)

    def __repr__(self):
        return f"Derivation({format_derivation(self)!r})"


def _same_ring(d: Derivation, e: Derivation):
    if d.ring != e.ring:
        raise RingMismatchError("derivations over different rings")


def derive_apply(D: Derivation, p: Polynomial) -> Polynomial:
    """Apply D to p via the Leibniz rule."""
    if p.ring != D.ring:
        raise RingMismatchError("polynomial and derivation live in different rings")
    res: Dict[Tuple[int, ...], object] = {}
    image_terms = D._image_terms
    for exp, c in p.items():
        for i, k in enumerate(exp):
            if not k or not image_terms[i]:
                continue
            base = exp[:i] + (k - 1,) + exp[i + 1:]
            ck = c * k
            for iexp, ic in image_terms[i]:
                e = tuple(a + b for a, b in zip(base, iexp))
                v = res.get(e, 0) + ck * ic
                if v:
                    res[e] = v
                else:
                    del res[e]
    return Polynomial(D.ring, {e: normalize_scalar(v) for e, v in res.items()}, _trusted=True)


def lie_bracket(D: Derivation, E: Derivation) -> Derivation:
    """[D, E] = DE - ED, computed on generators."""
    _same_ring(D, E)
    return Derivation(D.ring, [derive_apply(D, ei) - derive_apply(E, di) for di, ei in zip(D.images, E.images)])


def deg_of(D: Derivation, p: Polynomial, cap: int = DEFAULT_CAP):
    """Least n with D^(n+1) p == 0; ``NEG_INF`` for p == 0."""
    if cap < 0:
        raise ValueError("cap must be non-negative")
    if not p:
        return NEG_INF
    n = 0
    q = derive_apply(D, p)
    while q:
        n += 1
        if n > cap:
            raise DegreeCapExceeded(f"D-degree exceeds cap {cap}")
        q = derive_apply(D, q)
    return n


def transvectant(D: Derivation, f: Polynomial, g: Polynomial, n: int, cap: int = DEFAULT_CAP) -> Polynomial:
    """The degree-n transvectant: sum over i of (-1)^(n-i) D^i f * D^(n-i) g."""
    if n < 0:
        raise TransvectantError("order must be non-negative")
    if deg_of(D, f, cap) > n or deg_of(D, g, cap) > n:
        raise TransvectantError(f"deg_D of an argument exceeds the order {n}")
    df = [f]
    dg = [g]
    for _ in range(n):
        df.append(derive_apply(D, df[-1]))
        dg.append(derive_apply(D, dg[-1]))
    total = D.ring.zero()
    for i in range(n + 1):
        term = df[i] * dg[n - i]
        total = total + (term if (n - i) % 2 == 0 else -term)
    if derive_apply(D, total):
        raise AssertionError("internal error: transvectant not annihilated by D")
    return total


def dixmier_image(D: Derivation, r: Polynomial, b: Polynomial, cap: int = DEFAULT_CAP) -> Tuple[Polynomial, int]:
    """Cleared Dixmier map for a local slice r.

    With a = D(r) and e = deg_D(b), returns (q, e) such that the kernel
    element pi_r(b) equals q / a^e, where
    q = sum over i of (-1)^i / i! * D^i(b) * r^i * a^(e-i).
    """
    a = derive_apply(D, r)
    if not a or derive_apply(D, a):
        raise DixmierError("r must have D-degree exactly 1")
    e = deg_of(D, b, cap)
    if e == NEG_INF:
        return D.ring.zero(), 0
    q = D.ring.zero()
    dib = b
    for i in range(e + 1):
        term = dib * r ** i * a ** (e - i)
        q = q + term.scale(Fraction((-1) ** i, math.factorial(i)))
        dib = derive_apply(D, dib)
    # a lies in ker D, so D(q / a^e) == D(q) / a^e
    if derive_apply(D, q):
        raise AssertionError("internal error: Dixmier image not in ker D")
    return q, e


@dataclass(frozen=True)
class Cable:
    """A D-cable P_0, ..., P_d with D(P_j) = t_j * P_(j-1) and D(P_0) = 0."""

    vertices: Tuple[Polynomial, ...]
    scalars: Tuple[object, ...]

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    def root(self) -> Polynomial:
        return self.vertices[0]


def _proportionality(p: Polynomial, q: Polynomial):
    """Scalar t with p == t * q, or None."""
    if not q:
        return 0 if not p else None
    if not p:
        return 0
    exp, c = q.leading_term()
    t = normalize_scalar(Fraction(p.coefficient(exp)) / Fraction(c))
    if t and p == q.scale(t):
        return t
    return None


def build_cable(D: Derivation, U: Derivation, root: Polynomial, length: Optional[int] = None,
                cap: int = DEFAULT_CAP) -> Cable:
    """Vertices U^j(root), trimmed at the first zero, with verified scalars."""
    if not root:
        raise CableError("root must be nonzero")
    if derive_apply(D, root):
        raise CableError("root is not in ker D")
    limit = cap if length is None else length
    verts = [root]
    scalars = []
    while len(verts) - 1 < limit:
        nxt = derive_apply(U, verts[-1])
        if not nxt:
            break
        t = _proportionality(derive_apply(D, nxt), verts[-1])
        if t is None or t == 0:
            raise CableError(f"D(P_{len(verts)}) is not a nonzero multiple of P_{len(verts) - 1}")
        verts.append(nxt)
        scalars.append(t)
    else:
        if length is None:
            raise DegreeCapExceeded("cable did not terminate within cap")
    return Cable(tuple(verts), tuple(scalars))


# -- text format -----------------------------------------------------------

def format_derivation(D: Derivation) -> str:
    lines = []
    for v, img in zip(D.ring.variables, D.images):
        if img:
            lines.append(f"{v} -> {img}")
    return "\n".join(lines)


_LINE = re.compile(r"^\s*([A-Za-z_][A-Za-z0-9_]*)\s*->\s*(.+?)\s*$")


def parse_derivation(text: str, ring: RingSpec, symbols: Optional[Mapping[str, Polynomial]] = None) -> Derivation:
    """Parse lines ``xi -> <polynomial>``; omitted variables map to 0."""
    mapping: Dict[str, Polynomial] = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _LINE.match(line)
        if not m:
            raise ValueError(f"bad derivation line: {raw!r}")
        name, body = m.groups()
        if name in mapping:
            raise ValueError(f"variable {name} given twice")
        ring.index(name)
        mapping[name] = parse_polynomial(body, ring, symbols)
    return Derivation.from_mapping(ring, mapping)
