"""Fock space model for the direct sum of cohomologies of Hilbert schemes.

Vectors are rational linear combinations of normal-ordered monomials in
creation operators applied to the vacuum.  A monomial is a tuple of factors
``(index, symbol)`` with positive indices, sorted by descending index and,
for equal indices, by the symbol order ``1 < h < k < u1 < ... < pt``.
The bidegree of a factor is ``(index, 2*index - 2 + deg(symbol))``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional, Tuple

from .surface import CohClass, SurfaceModel, _rat, _sym_rank

Q = Fraction

Factor = Tuple[int, str]
Monomial = Tuple[Factor, ...]


def _factor_key(f: Factor):
    return (-f[0], _sym_rank(f[1]))


def mono_weight(M: Monomial) -> int:
    return sum(i for i, _ in M)


def mono_degree(M: Monomial, model: SurfaceModel) -> int:
    return sum(2 * i - 2 + model.degree[s] for i, s in M)


def mono_insert(M: Monomial, n: int, sym: str) -> Monomial:
    """Insert a creation factor, keeping the canonical order."""
    f = (n, sym)
    key = _factor_key(f)
    out = list(M)
    lo = 0
    while lo < len(out) and _factor_key(out[lo]) <= key:
        lo += 1
    out.insert(lo, f)
    return tuple(out)


def render_monomial(M: Monomial) -> str:
    if not M:
        return "1"
    return "*".join("q%d[%s]" % (i, s) for i, s in M)


class FockVector:
    """A finite rational combination of canonical monomials."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[Monomial, object]] = None):
        data: Dict[Monomial, Q] = {}
        if terms:
            for M, c in terms.items():
                c = _rat(c)
                if c:
                    data[M] = c
        self.terms = data

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "FockVector") -> "FockVector":
        data = dict(self.terms)
        for M, c in other.terms.items():
            data[M] = data.get(M, Q(0)) + c
        return FockVector(data)

    def __sub__(self, other: "FockVector") -> "FockVector":
        return self + (-other)

    def __neg__(self) -> "FockVector":
        return FockVector({M: -c for M, c in self.terms.items()})

    def scale(self, c) -> "FockVector":
        c = _rat(c)
        return FockVector({M: c * x for M, x in self.terms.items()})

    def __rmul__(self, c) -> "FockVector":
        return self.scale(c)

    def __eq__(self, other) -> bool:
        return isinstance(other, FockVector) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def coefficient(self, M: Monomial) -> Q:
        return self.terms.get(M, Q(0))

    def weight_component(self, n: int) -> "FockVector":
        return FockVector(
            {M: c for M, c in self.terms.items() if mono_weight(M) == n}
        )

    def max_weight(self) -> int:
        return max((mono_weight(M) for M in self.terms), default=0)

    def __repr__(self) -> str:
        return "FockVector(%s)" % render_vector(self)


def vacuum() -> FockVector:
    return FockVector({(): 1})


def render_vector(v: FockVector) -> str:
    if v.is_zero():
        return "0"
    keys = sorted(
        v.terms,
        key=lambda M: (mono_weight(M), tuple(_factor_key(f) for f in M)),
    )
    parts = []
    for M in keys:
        c = v.terms[M]
        body = render_monomial(M)
        mag = abs(c)
        if body == "1":
            text = str(mag)
        elif mag == 1:
            text = body
        else:
            text = "%s*%s" % (mag, body)
        if not parts:
            parts.append(text if c > 0 else "-" + text)
        else:
            parts.append((" + " if c > 0 else " - ") + text)
    return "".join(parts)


def create(n: int, a: CohClass, v: FockVector, model: SurfaceModel) -> FockVector:
    """Apply the creation operator q_n(a), n >= 1."""
    if n < 1:
        raise ValueError("creation index must be positive")
    data: Dict[Monomial, Q] = {}
    for sym, ca in a.coeff.items():
        for M, c in v.terms.items():
            M2 = mono_insert(M, n, sym)
            data[M2] = data.get(M2, Q(0)) + c * ca
    return FockVector(data)


def annihilate(n: int, a: CohClass, v: FockVector, model: SurfaceModel) -> FockVector:
    """Apply the annihilation operator q_{-n}(a), n >= 1.

    Removing a factor q_m(b) contributes the contraction coefficient
    ``-n * (a.b integrated over the surface)`` when m == n.
    """
    if n < 1:
        raise ValueError("annihilation index must be positive")
    data: Dict[Monomial, Q] = {}
    pair = model.pair_sym
    for M, c in v.terms.items():
        for j, (m, s) in enumerate(M):
            if m != n:
                continue
            coeff = Q(0)
            for sym, ca in a.coeff.items():
                coeff += ca * pair(sym, s)
            if not coeff:
                continue
            M2 = M[:j] + M[j + 1:]
            data[M2] = data.get(M2, Q(0)) - n * coeff * c
    return FockVector(data)


def q_op(m: int, a: CohClass, v: FockVector, model: SurfaceModel) -> FockVector:
    """The signed oscillator q_m(a); q_0 = 0 by convention."""
    if m > 0:
        return create(m, a, v, model)
    if m < 0:
        return annihilate(-m, a, v, model)
    return FockVector()


def pairing(v: FockVector, w: FockVector, model: SurfaceModel) -> Q:
    """The graded intersection pairing.

    Computed by fully annihilating the monomials of ``v`` against ``w`` and
    reading off the vacuum coefficient, with the sign (-1)**weight.
    """
    total = Q(0)
    for M, c in v.terms.items():
        wt = mono_weight(M)
        cur = {N: x for N, x in w.terms.items() if mono_weight(N) == wt}
        for n, s in M:
            if not cur:
                break
            cur = annihilate(n, CohClass({s: 1}), FockVector(cur), model).terms
        vac = cur.get((), Q(0)) if cur else Q(0)
        if vac:
            total += (Q(-1) ** wt) * c * vac
    return total


def integrate_hilb(v: FockVector, n: int, model: SurfaceModel) -> Q:
    """Evaluate the weight-n component against the fundamental class.

    Equals the pairing with q_1(1)^n / n! applied to the vacuum; only the
    monomial q_1(pt)^n survives the contraction.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    M = ((1, "pt"),) * n
    return v.terms.get(M, Q(0))


def dimension(n: int, i: int, model: SurfaceModel) -> int:
    """Number of canonical monomials of weight n and cohomological degree i."""
    if n < 0:
        return 0
    table = _dimension_table(n, model)
    return table.get((n, i), 0)


def _dimension_table(n: int, model: SurfaceModel) -> Dict[Tuple[int, int], int]:
    # Unbounded knapsack over the factor alphabet (m, symbol), m <= n.
    dp: Dict[Tuple[int, int], int] = {(0, 0): 1}
    for m in range(1, n + 1):
        for sym in model.symbols:
            dg = 2 * m - 2 + model.degree[sym]
            # iterate in increasing weight so multiples accumulate
            for w in range(m, n + 1):
                for (ww, ii), cnt in sorted(dp.items()):
                    if ww == w - m:
                        key = (w, ii + dg)
                        dp[key] = dp.get(key, 0) + cnt
    return dp
