"""Independent cross-checks computed without the Groebner engine.

Each oracle attacks a special class of inputs with a method of its own:
truncated-jet linear algebra for Milnor numbers, the join formula for sums
of polynomials in disjoint variables, the factor count for homogeneous
plane curves, and inclusion-exclusion for monomial ideals. Pipelines and
tests compare against these to certify the main computation.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import _kernel
from .polyparse import (
    InputError,
    MathematicalRefusal,
    Polynomial,
    VariableFrame,
)

Exponent = Tuple[int, ...]

_F0 = Fraction(0)


class OracleResult:
    """Value plus the method that produced it and a small certificate."""

    __slots__ = ("value", "method", "certificate")

    def __init__(self, value: int, method: str, certificate: dict):
        self.value = value
        self.method = method
        self.certificate = certificate

    def __repr__(self) -> str:
        return "OracleResult(%r, %r)" % (self.value, self.method)

    def __eq__(self, other) -> bool:
        if isinstance(other, OracleResult):
            return (self.value, self.method) == (other.value, other.method)
        return NotImplemented


# -- Milnor number by truncated jets -------------------------------------------

def _jet_colength(partials: Sequence[Polynomial], frame: VariableFrame, K: int) -> int:
    """Codimension of the span of monomial multiples of the partials inside
    the space of jets of order below K."""
    n = frame.ambient_dimension
    key = _kernel.make_key((_kernel.KIND_DEGREVLEX, tuple(range(n)), 0))
    echelon: Dict[Exponent, Dict[Exponent, Fraction]] = {}

    def reduce_insert(row: Dict[Exponent, Fraction]) -> None:
        while row:
            pivot = max(row, key=key)
            got = echelon.get(pivot)
            if got is None:
                inv = Fraction(1) / row[pivot]
                echelon[pivot] = {e: c * inv for e, c in row.items()}
                return
            factor = row[pivot]
            for e, c in got.items():
                v = row.get(e, _F0) - factor * c
                if v:
                    row[e] = v
                else:
                    row.pop(e, None)

    for g in partials:
        if g.is_zero():
            continue
        room = K - 1 - g.min_total_degree()
        if room < 0:
            continue
        for deg in range(room + 1):
            for combo in itertools.combinations_with_replacement(range(n), deg):
                shift = [0] * n
                for i in combo:
                    shift[i] += 1
                row: Dict[Exponent, Fraction] = {}
                for e, c in g.terms.items():
                    t = tuple(a + b for a, b in zip(e, shift))
                    if sum(t) < K:
                        row[t] = row.get(t, _F0) + c
                row = {e: c for e, c in row.items() if c}
                if row:
                    reduce_insert(row)

    jet_dim = math.comb(K - 1 + n, n)
    return jet_dim - len(echelon)


def milnor_via_macaulay(f: Polynomial, degree_bound: int = 24) -> OracleResult:
    """Milnor number at the origin by rank computations on truncated jets.

    The codimension of the Jacobian span is monotone in the truncation
    order; two consecutive equal values certify stabilization. Failure to
    stabilize within the bound means the critical locus is not isolated.
    """
    if f.is_constant():
        raise InputError("constant polynomial has no Milnor number")
    frame = f.frame
    partials = [f.partial(i) for i in range(frame.ambient_dimension)]
    prev: Optional[int] = None
    for K in range(2, degree_bound + 1):
        c = _jet_colength(partials, frame, K)
        if prev is not None and c == prev:
            return OracleResult(
                c,
                "macaulay",
                {
                    "stabilized_at": K,
                    "jet_dimension": math.comb(K - 1 + frame.ambient_dimension, frame.ambient_dimension),
                },
            )
        prev = c
    raise MathematicalRefusal(
        "jet codimensions did not stabilize by degree %d; the critical locus is not isolated"
        % degree_bound
    )


# -- univariate helpers ----------------------------------------------------------

def _u_trim(a: List[Fraction]) -> List[Fraction]:
    while a and not a[-1]:
        a.pop()
    return a


def _u_deriv(a: List[Fraction]) -> List[Fraction]:
    return _u_trim([a[i] * i for i in range(1, len(a))])


def _u_mod(a: List[Fraction], b: List[Fraction]) -> List[Fraction]:
    a = list(a)
    db = len(b) - 1
    lead = b[-1]
    while len(a) - 1 >= db and a:
        factor = a[-1] / lead
        shift = len(a) - 1 - db
        for i in range(len(b)):
            a[shift + i] -= factor * b[i]
        a = _u_trim(a)
    return a


def _u_gcd_degree(a: List[Fraction], b: List[Fraction]) -> int:
    a = _u_trim(list(a))
    b = _u_trim(list(b))
    while b:
        a, b = b, _u_mod(a, b)
    return len(a) - 1 if a else -1


# -- homogeneous plane curves -----------------------------------------------------

def chi_homogeneous_plane(f: Polynomial) -> OracleResult:
    """Euler characteristic of the Milnor fibre of a nonzero homogeneous
    polynomial in two variables: n * (2 - r) for degree n with r distinct
    linear factors."""
    frame = f.frame
    if frame.ambient_dimension != 2:
        raise InputError("homogeneous plane oracle needs exactly two variables")
    if f.is_zero():
        raise InputError("zero polynomial has no Milnor fibre")
    if not f.is_homogeneous():
        raise InputError("polynomial is not homogeneous")
    n = f.total_degree()
    if n == 0:
        raise InputError("polynomial does not vanish at the origin")
    # u(t) = f(t, 1); the second variable contributes one more factor when
    # it divides f, which shows as a degree drop
    u = [Fraction(0)] * (n + 1)
    for (a, b), c in f.terms.items():
        u[a] = c
    u = _u_trim(u)
    du = len(u) - 1
    if du <= 0:
        r0 = 0
    else:
        g = _u_gcd_degree(u, _u_deriv(u))
        r0 = du - max(g, 0)
    r = r0 + (1 if du < n else 0)
    chi = n * (2 - r)
    return OracleResult(chi, "homogeneous_fibre", {"degree": n, "distinct_factors": r})


# -- sums in disjoint variables ----------------------------------------------------

def _restrict(p: Polynomial, names: Tuple[str, ...]) -> Polynomial:
    """Terms of p supported inside the named block, as a polynomial on it."""
    sub = VariableFrame(names)
    idx = [p.frame.index[nm] for nm in names]
    inside = set(idx)
    out: Dict[Exponent, Fraction] = {}
    for e, c in p.terms.items():
        if all(v == 0 or i in inside for i, v in enumerate(e)):
            out[tuple(e[i] for i in idx)] = c
    return Polynomial(sub, out)


def chi_thom_sebastiani(f: Polynomial) -> OracleResult:
    """Euler characteristic of the Milnor fibre of a sum of polynomials in
    disjoint variable blocks, by the join formula on reduced Euler
    characteristics. Each block must be univariate or a homogeneous
    polynomial in two variables."""
    if f.is_zero() or f.is_constant():
        raise InputError("need a nonconstant polynomial vanishing at the origin")
    if f.constant_term:
        raise InputError("polynomial does not vanish at the origin")
    frame = f.frame
    used = f.variables_used()
    # connected components of the variable graph, two variables adjacent
    # when they share a term
    parent = {nm: nm for nm in used}

    def find(a: str) -> str:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for e in f.terms:
        support = [frame.names[i] for i, v in enumerate(e) if v]
        for other in support[1:]:
            ra, rb = find(support[0]), find(other)
            if ra != rb:
                parent[rb] = ra
    blocks: Dict[str, List[str]] = {}
    for nm in used:
        blocks.setdefault(find(nm), []).append(nm)
    block_vars = sorted(
        (tuple(sorted(vs, key=frame.index.get)) for vs in blocks.values()),
        key=lambda vs: frame.index[vs[0]],
    )

    reduced = Fraction(1)
    cert_blocks = []
    for names in block_vars:
        part = _restrict(f, names)
        if len(names) == 1:
            ct = part.min_total_degree() - 1
            kind = "univariate"
        elif len(names) == 2 and part.is_homogeneous():
            ct = chi_homogeneous_plane(part).value - 1
            kind = "plane_homogeneous"
        else:
            raise MathematicalRefusal(
                "block (%s) is neither univariate nor homogeneous in two "
                "variables; no disjoint-block decomposition applies" % ", ".join(names)
            )
        cert_blocks.append({"variables": list(names), "kind": kind, "reduced_chi": ct})
        reduced *= ct
    r = len(block_vars)
    reduced_total = (-1) ** (r - 1) * reduced
    chi = 1 + reduced_total
    assert chi.denominator == 1
    return OracleResult(
        int(chi),
        "thom_sebastiani",
        {"blocks": cert_blocks, "reduced_chi": int(reduced_total)},
    )


# -- monomial ideals ------------------------------------------------------------------

def monomial_colength(monomials: Sequence[Polynomial]) -> OracleResult:
    """Colength of a monomial ideal by inclusion-exclusion over its
    generators, a different route than the staircase walk in the engine."""
    monomials = list(monomials)
    if not monomials:
        raise InputError("need at least one monomial generator")
    frame = monomials[0].frame
    exps = set()
    for p in monomials:
        if p.frame != frame:
            raise InputError("monomial frames differ")
        if len(p.terms) != 1:
            raise InputError("generator %s is not a monomial" % p)
        exps.add(next(iter(p.terms)))
    E = sorted(exps)
    n = frame.ambient_dimension
    if any(sum(e) == 0 for e in E):
        return OracleResult(0, "monomial_count", {"generators": len(E), "box": [0] * n})
    bounds: List[Optional[int]] = [None] * n
    for e in E:
        support = [i for i, v in enumerate(e) if v]
        if len(support) == 1:
            i = support[0]
            if bounds[i] is None or e[i] < bounds[i]:
                bounds[i] = e[i]
    if any(b is None for b in bounds):
        raise MathematicalRefusal(
            "monomial ideal has infinite colength (missing a pure power)"
        )
    total = 0
    for size in range(len(E) + 1):
        for S in itertools.combinations(E, size):
            l = [0] * n
            for e in S:
                l = [max(a, b) for a, b in zip(l, e)]
            prod = 1
            for b, li in zip(bounds, l):
                prod *= max(0, b - li)
                if not prod:
                    break
            total += (-1) ** size * prod
    return OracleResult(
        total, "monomial_count", {"generators": len(E), "box": list(bounds)}
    )
