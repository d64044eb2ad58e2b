"""Pure-Python normal-form kernel.

The interface is a flat term representation: a term list is a list of
(exponent_tuple, Fraction) pairs sorted strictly descending under the
order key. The order is passed as a descriptor (kind, perm) where kind
is 0 for lex, 1 for degrevlex, 2 for block elimination; perm is the
variable permutation (for kind 2 the block prefix length rides along).

normal_form_terms reduces a term list modulo a list of such term lists
(each nonzero, leading term first) and returns the fully reduced remainder
in the same representation.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, List, Sequence, Tuple

Exponent = Tuple[int, ...]
Term = Tuple[Exponent, Fraction]

KIND_LEX = 0
KIND_DEGREVLEX = 1
KIND_BLOCK = 2

BACKEND = "pure"


def make_key(descriptor) -> Callable[[Exponent], tuple]:
    """Comparison key for exponent tuples under the descriptor's order."""
    kind, perm, block = descriptor
    if kind == KIND_LEX:
        def key(exp, _perm=perm):
            return tuple(exp[p] for p in _perm)
        return key
    if kind == KIND_DEGREVLEX:
        rev = tuple(reversed(perm))

        def key(exp, _rev=rev):
            return (sum(exp), tuple(-exp[p] for p in _rev))
        return key
    if kind == KIND_BLOCK:
        head = perm[:block]
        tail = perm[block:]
        rhead = tuple(reversed(head))
        rtail = tuple(reversed(tail))

        def key(exp, _h=head, _t=tail, _rh=rhead, _rt=rtail):
            dh = sum(exp[p] for p in _h)
            dt = sum(exp[p] for p in _t)
            return (
                dh,
                tuple(-exp[p] for p in _rh),
                dt,
                tuple(-exp[p] for p in _rt),
            )
        return key
    raise ValueError("unknown order kind %r" % (kind,))


def _divides(a: Exponent, b: Exponent) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def normal_form_terms(
    terms: Sequence[Term],
    basis: Sequence[Sequence[Term]],
    descriptor,
) -> List[Term]:
    """Remainder of `terms` on division by `basis`, every term fully reduced.

    Reduction always uses the first basis element whose leading monomial
    divides the term under consideration, so the result is deterministic
    for a fixed basis order.
    """
    key = make_key(descriptor)
    work = {exp: c for exp, c in terms}
    remainder: List[Term] = []
    lead = [(b[0][0], b[0][1], b) for b in basis]

    while work:
        exp = max(work, key=key)
        coeff = work.pop(exp)
        if not coeff:
            continue
        hit = None
        for lm, lc, b in lead:
            if _divides(lm, exp):
                hit = (lm, lc, b)
                break
        if hit is None:
            remainder.append((exp, coeff))
            continue
        lm, lc, b = hit
        factor = coeff / lc
        shift = tuple(e - m for e, m in zip(exp, lm))
        for bexp, bc in b:
            if bexp == lm:
                continue
            t = tuple(e + s for e, s in zip(bexp, shift))
            v = work.get(t, _ZERO) - factor * bc
            if v:
                work[t] = v
            else:
                work.pop(t, None)

    remainder.sort(key=lambda t: key(t[0]), reverse=True)
    return remainder


_ZERO = Fraction(0)
