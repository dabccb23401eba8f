"""Parametric model of the even rational cohomology ring of a polarized surface.

The ring has basis ``1``, ``h`` (a polarization class), ``k`` (the canonical
class), optional extra middle classes ``u1 .. ub``, and the point class
``pt``.  Products of degree-2 classes are determined by the intersection
numbers ``h.h = d``, ``h.k = pi``, ``k.k = kappa`` and ``ui.ui = 1``; all
cross products with the ``ui`` vanish, as do products of degree above four.
The topological Euler number is ``e = 4 + b2_extra``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Tuple

Q = Fraction


class DegeneratePairing(ValueError):
    """The degree-2 intersection form is singular: d*kappa == pi**2."""


def _rat(x) -> Q:
    return x if isinstance(x, Q) else Q(x)


class CohClass:
    """A sparse rational linear combination of the basis symbols."""

    __slots__ = ("coeff",)

    def __init__(self, coeff: Optional[Mapping[str, object]] = None):
        data: Dict[str, Q] = {}
        if coeff:
            for sym, c in coeff.items():
                c = _rat(c)
                if c:
                    data[sym] = c
        self.coeff = data

    def is_zero(self) -> bool:
        return not self.coeff

    def __add__(self, other: "CohClass") -> "CohClass":
        data = dict(self.coeff)
        for sym, c in other.coeff.items():
            data[sym] = data.get(sym, Q(0)) + c
        return CohClass(data)

    def __sub__(self, other: "CohClass") -> "CohClass":
        return self + (-other)

    def __neg__(self) -> "CohClass":
        return CohClass({s: -c for s, c in self.coeff.items()})

    def scale(self, c) -> "CohClass":
        c = _rat(c)
        return CohClass({s: c * x for s, x in self.coeff.items()})

    def __rmul__(self, c) -> "CohClass":
        return self.scale(c)

    def __eq__(self, other) -> bool:
        return isinstance(other, CohClass) and self.coeff == other.coeff

    def __hash__(self):
        return hash(frozenset(self.coeff.items()))

    def __repr__(self) -> str:
        return "CohClass(%s)" % render_class(self)


def _sym_rank(sym: str) -> Tuple[int, int]:
    # Global ordering of basis symbols: 1 < h < k < u1 < u2 < ... < pt.
    if sym == "1":
        return (0, 0)
    if sym == "h":
        return (1, 0)
    if sym == "k":
        return (2, 0)
    if sym == "pt":
        return (4, 0)
    return (3, int(sym[1:]))


def render_class(a: CohClass) -> str:
    """Render a class as e.g. ``1-h+1/2*pt``."""
    if a.is_zero():
        return "0"
    parts = []
    for sym in sorted(a.coeff, key=_sym_rank):
        c = a.coeff[sym]
        mag = abs(c)
        if sym == "1":
            body = str(mag)
        elif mag == 1:
            body = sym
        else:
            body = "%s*%s" % (mag, sym)
        if not parts:
            parts.append(body if c > 0 else "-" + body)
        else:
            parts.append(("+" if c > 0 else "-") + body)
    return "".join(parts)


_TERM_RE = re.compile(
    r"([+-]?)\s*(\d+(?:/\d+)?)?\s*\*?\s*(1|h|k|pt|u\d+)?\s*"
)


def parse_class(text: str, model: "SurfaceModel") -> CohClass:
    """Parse a class expression such as ``2h-k`` or ``1-h+1/2*pt``."""
    data: Dict[str, Q] = {}
    pos = 0
    text = text.strip()
    if not text:
        raise ValueError("empty class expression")
    while pos < len(text):
        m = _TERM_RE.match(text, pos)
        if not m or (m.group(2) is None and m.group(3) is None):
            raise ValueError("malformed class expression: %r" % text)
        sign = -1 if m.group(1) == "-" else 1
        coeff = Q(m.group(2)) if m.group(2) else Q(1)
        sym = m.group(3) or "1"
        if sym not in model.symbols:
            raise ValueError("unknown symbol %r for this model" % sym)
        data[sym] = data.get(sym, Q(0)) + sign * coeff
        pos = m.end()
    return CohClass(data)


class SurfaceModel:
    """Intersection theory of a polarized surface with parameters (d, pi, kappa, e).

    Raises :class:`DegeneratePairing` when ``d*kappa == pi**2``, since the
    diagonal class (and hence every operator built from it) needs the
    degree-2 intersection form to be invertible.
    """

    def __init__(self, d, pi, kappa, b2_extra: int = 0):
        self.d = _rat(d)
        self.pi = _rat(pi)
        self.kappa = _rat(kappa)
        if not isinstance(b2_extra, int) or b2_extra < 0:
            raise ValueError("b2_extra must be a nonnegative integer")
        self.b2_extra = b2_extra
        self.det = self.d * self.kappa - self.pi * self.pi
        if self.det == 0:
            raise DegeneratePairing(
                "d*kappa - pi^2 = 0: degree-2 intersection form is singular"
            )
        self.e = 4 + b2_extra

        extras = tuple("u%d" % (i + 1) for i in range(b2_extra))
        self.symbols: Tuple[str, ...] = ("1", "h", "k") + extras + ("pt",)
        self.symbol_index = {s: i for i, s in enumerate(self.symbols)}
        self.degree = {"1": 0, "h": 2, "k": 2, "pt": 4}
        for u in extras:
            self.degree[u] = 2

        # Product table on basis symbols: (s, t) -> (coefficient, symbol).
        prod: Dict[Tuple[str, str], Tuple[Q, str]] = {}
        for s in self.symbols:
            prod[("1", s)] = (Q(1), s)
            prod[(s, "1")] = (Q(1), s)
        prod[("h", "h")] = (self.d, "pt")
        prod[("h", "k")] = (self.pi, "pt")
        prod[("k", "h")] = (self.pi, "pt")
        prod[("k", "k")] = (self.kappa, "pt")
        for u in extras:
            prod[(u, u)] = (Q(1), "pt")
        self._prod = prod

        # Intersection numbers of pairs of basis symbols.
        pair: Dict[Tuple[str, str], Q] = {}
        for s in self.symbols:
            for t in self.symbols:
                p = prod.get((s, t))
                pair[(s, t)] = p[0] if p and p[1] == "pt" else Q(0)
        self._pair = pair

        # Dual basis with respect to the intersection form.
        dual: Dict[str, CohClass] = {
            "1": CohClass({"pt": 1}),
            "pt": CohClass({"1": 1}),
            "h": CohClass({"h": self.kappa / self.det, "k": -self.pi / self.det}),
            "k": CohClass({"h": -self.pi / self.det, "k": self.d / self.det}),
        }
        for u in extras:
            dual[u] = CohClass({u: 1})
        self._dual = dual

        # Diagonal class of each basis symbol, expanded into symbol pairs:
        # delta(s) = sum of c * (s1 tensor s2).
        delta: Dict[str, Tuple[Tuple[Q, str, str], ...]] = {}
        for s in self.symbols:
            triples: Dict[Tuple[str, str], Q] = {}
            for b in self.symbols:
                p = prod.get((s, b))
                if p is None:
                    continue
                c0, left = p
                if not c0:
                    continue
                for s2, c2 in dual[b].coeff.items():
                    key = (left, s2)
                    triples[key] = triples.get(key, Q(0)) + c0 * c2
            delta[s] = tuple(
                (c, s1, s2) for (s1, s2), c in triples.items() if c
            )
        self._delta = delta

    # -- ring operations ---------------------------------------------------

    def prod_sym(self, s: str, t: str) -> Optional[Tuple[Q, str]]:
        """Product of two basis symbols as (coefficient, symbol), or None."""
        return self._prod.get((s, t))

    def mul(self, a: CohClass, b: CohClass) -> CohClass:
        data: Dict[str, Q] = {}
        for s, cs in a.coeff.items():
            for t, ct in b.coeff.items():
                p = self._prod.get((s, t))
                if p is None:
                    continue
                c, sym = p
                if c:
                    data[sym] = data.get(sym, Q(0)) + cs * ct * c
        return CohClass(data)

    def integrate(self, a: CohClass) -> Q:
        """Evaluate against the fundamental class: the coefficient of pt."""
        return a.coeff.get("pt", Q(0))

    def pair(self, a: CohClass, b: CohClass) -> Q:
        return self.integrate(self.mul(a, b))

    def pair_sym(self, s: str, t: str) -> Q:
        return self._pair[(s, t)]

    def dual_basis(self, s: str) -> CohClass:
        return self._dual[s]

    def diagonal(self, a: CohClass) -> List[Tuple[CohClass, CohClass]]:
        """Push-forward of ``a`` along the diagonal, as tensor factors.

        Returns pairs (x_i, y_i) with delta(a) = sum of x_i tensor y_i,
        one pair per basis symbol b of the model: (a*b, dual(b)).
        """
        out = []
        for b in self.symbols:
            left = self.mul(a, CohClass({b: 1}))
            if not left.is_zero():
                out.append((left, self._dual[b]))
        return out

    def delta_triples(self, s: str) -> Tuple[Tuple[Q, str, str], ...]:
        """delta(s) fully expanded into (coefficient, symbol, symbol)."""
        return self._delta[s]

    # -- distinguished classes ---------------------------------------------

    def unit(self) -> CohClass:
        return CohClass({"1": 1})

    def point(self) -> CohClass:
        return CohClass({"pt": 1})

    def h_class(self) -> CohClass:
        return CohClass({"h": 1})

    def canonical_class(self) -> CohClass:
        return CohClass({"k": 1})

    def c2_class(self) -> CohClass:
        """Second Chern class of the tangent bundle: e * pt."""
        return CohClass({"pt": self.e})

    def __repr__(self) -> str:
        return "SurfaceModel(d=%s, pi=%s, kappa=%s, b2_extra=%d)" % (
            self.d,
            self.pi,
            self.kappa,
            self.b2_extra,
        )


def new_model(d, pi, kappa, b2_extra: int = 0) -> SurfaceModel:
    """Construct a surface model; raises DegeneratePairing if d*kappa == pi^2."""
    return SurfaceModel(d, pi, kappa, b2_extra)


class KClassSpec:
    """A K-theory class given by rank and the first two Chern classes."""

    __slots__ = ("rank", "c1", "c2")

    def __init__(self, rank: int, c1: CohClass, c2: CohClass):
        for sym in c1.coeff:
            if sym in ("1", "pt"):
                raise ValueError("c1 must be a degree-2 class")
        for sym in c2.coeff:
            if sym != "pt":
                raise ValueError("c2 must be a degree-4 class")
        self.rank = rank
        self.c1 = c1
        self.c2 = c2

    @classmethod
    def line_bundle(cls, c1: CohClass) -> "KClassSpec":
        return cls(1, c1, CohClass())

    @classmethod
    def trivial(cls, rank: int = 1) -> "KClassSpec":
        return cls(rank, CohClass(), CohClass())

    def negate(self, model: SurfaceModel) -> "KClassSpec":
        # Chern classes of -u: c1 -> -c1, c2 -> c1^2 - c2.
        return KClassSpec(
            -self.rank, -self.c1, model.mul(self.c1, self.c1) - self.c2
        )

    def __add__(self, other: "KClassSpec"):
        raise TypeError("sums of K-classes need a model; use add(model, other)")

    def add(self, model: SurfaceModel, other: "KClassSpec") -> "KClassSpec":
        return KClassSpec(
            self.rank + other.rank,
            self.c1 + other.c1,
            self.c2 + other.c2 + model.mul(self.c1, other.c1),
        )

    def total_chern(self, model: SurfaceModel) -> CohClass:
        return model.unit() + self.c1 + self.c2

    def chern_character(self, model: SurfaceModel) -> CohClass:
        sq = model.mul(self.c1, self.c1)
        ch2 = Q(1, 2) * (sq - self.c2.scale(2))
        return CohClass({"1": self.rank}) + self.c1 + ch2

    def __repr__(self) -> str:
        return "KClassSpec(rank=%d, c1=%s, c2=%s)" % (
            self.rank,
            render_class(self.c1),
            render_class(self.c2),
        )


def chern_data(u: KClassSpec, model: SurfaceModel) -> Tuple[CohClass, CohClass]:
    """Total Chern class and Chern character of a K-class."""
    return u.total_chern(model), u.chern_character(model)
