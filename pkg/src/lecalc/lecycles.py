"""Le cycles and Le numbers of a polynomial germ at the origin.

The chain runs a downward induction: starting from the ambient space, each
level k adds one more partial derivative, splits off the polar part by
saturating away the critical locus, and leaves the level-k cycle, whose
intersection number with a coordinate plane is the k-th Le number.

Coordinate choice matters. A CoordinateFrame records the change that was
applied; properness of every step (polar dimensions, isolation of the cuts,
and agreement of the coordinate cuts with generic ones) is logged, and the
automatic driver retries with deterministic pseudo-random changes until a
frame passes or the budget runs out.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from ._rng import DeterministicRng
from .groebner import (
    Ideal,
    contains,
    dim_at_origin,
    eliminate,
    embed,
    is_zero_ideal,
    maximal_ideal,
    multiplicity_at_origin,
    random_linear_form,
    saturate,
    zero_ideal,
)
from .polyparse import (
    InputError,
    LinearChange,
    MathematicalRefusal,
    Polynomial,
    VariableFrame,
    apply_linear_change,
)

_CUT_SEED = 0x0C07C0DE
_FRAME_SEED_MIX = 0x9E3779B1


class CoordinateFrame:
    """A coordinate system for the chain: a variable order plus an
    invertible linear change, with provenance for reports."""

    __slots__ = ("base_frame", "work_frame", "change", "provenance", "seed", "attempt")

    def __init__(
        self,
        base_frame: VariableFrame,
        work_frame: VariableFrame,
        change: LinearChange,
        provenance: str,
        seed: Optional[int] = None,
        attempt: int = 1,
    ):
        if set(work_frame.names) != set(base_frame.names):
            raise InputError("work frame must use the same variable names")
        if change.frame != work_frame:
            raise InputError("linear change must live on the work frame")
        self.base_frame = base_frame
        self.work_frame = work_frame
        self.change = change
        self.provenance = provenance
        self.seed = seed
        self.attempt = attempt

    @classmethod
    def identity(cls, frame: VariableFrame) -> "CoordinateFrame":
        return cls(frame, frame, LinearChange.identity(frame), "identity")

    @classmethod
    def from_order(cls, frame: VariableFrame, names: Sequence[str]) -> "CoordinateFrame":
        """Reorder the variables; the first name becomes z_1 and so on."""
        work = VariableFrame(names)
        if set(work.names) != set(frame.names):
            raise InputError("order must be a permutation of the frame variables")
        return cls(frame, work, LinearChange.identity(work), "reordered")

    @classmethod
    def from_matrix(
        cls,
        frame: VariableFrame,
        matrix,
        provenance: str = "user",
        seed: Optional[int] = None,
        attempt: int = 1,
    ) -> "CoordinateFrame":
        return cls(frame, frame, LinearChange(frame, matrix), provenance, seed, attempt)

    def transform(self, p: Polynomial) -> Polynomial:
        """Express p in the chain coordinates."""
        if p.frame != self.base_frame:
            raise InputError("polynomial does not live on the base frame")
        q = embed(p, self.work_frame)
        return apply_linear_change(q, self.change)

    def describe(self) -> dict:
        return {
            "provenance": self.provenance,
            "attempt": self.attempt,
            "seed": self.seed,
            "variables": list(self.work_frame.names),
            "matrix": [[str(c) for c in row] for row in self.change.matrix],
        }

    def __repr__(self) -> str:
        return "CoordinateFrame(%s, %r)" % (",".join(self.work_frame.names), self.provenance)


class GammaChain:
    """Everything one run of the induction produced: the polar ideals, the
    cycle ideals, the counted numbers, and the properness log."""

    __slots__ = (
        "frame",
        "gamma_ideal",
        "lambda_ideal",
        "lambda_contribution",
        "properness_log",
        "proper",
        "extras",
    )

    def __init__(
        self,
        frame: CoordinateFrame,
        gamma_ideal: Dict[int, Ideal],
        lambda_ideal: Dict[int, Ideal],
        lambda_contribution: Dict[int, Optional[int]],
        properness_log: List[dict],
        proper: bool,
        extras: Optional[dict] = None,
    ):
        self.frame = frame
        self.gamma_ideal = gamma_ideal
        self.lambda_ideal = lambda_ideal
        self.lambda_contribution = lambda_contribution
        self.properness_log = properness_log
        self.proper = proper
        self.extras = extras or {}


class LeNumbers:
    """The numbers themselves: s is the dimension of the critical set at
    the origin (-1 when the origin is not critical), and lambda_numbers
    maps k to the k-th number for 0 <= k <= s.

    Equality ignores the coordinate frame: two runs agree when they found
    the same invariants.
    """

    __slots__ = ("s", "d", "lambda_numbers", "frame", "mode")

    def __init__(
        self,
        s: int,
        d: int,
        lambda_numbers: Dict[int, int],
        frame: CoordinateFrame,
        mode: str,
    ):
        self.s = s
        self.d = d
        self.lambda_numbers = dict(lambda_numbers)
        self.frame = frame
        self.mode = mode

    def __eq__(self, other) -> bool:
        if not isinstance(other, LeNumbers):
            return NotImplemented
        return (
            self.s == other.s
            and self.d == other.d
            and self.mode == other.mode
            and self.lambda_numbers == other.lambda_numbers
        )

    def __repr__(self) -> str:
        return "LeNumbers(s=%d, %r, mode=%s)" % (self.s, self.lambda_numbers, self.mode)


# -- shared chain machinery -----------------------------------------------------

def _variable_poly(frame: VariableFrame, i: int) -> Polynomial:
    return Polynomial.variable(frame, frame.names[i])


def _sampled_cut_values(lam_down: Ideal, base: VariableFrame, k: int) -> List[int]:
    """Multiplicities of the cycle ideal cut by k random hyperplanes, two
    successful samples out of a handful of deterministic tries."""
    vals: List[int] = []
    tries = 0
    while len(vals) < 2 and tries < 6:
        rng = DeterministicRng(_CUT_SEED ^ (k * 131071) ^ (tries * 7919))
        forms = tuple(random_linear_form(base, rng) for _ in range(k))
        tries += 1
        try:
            vals.append(
                multiplicity_at_origin(Ideal(base, lam_down.generators + forms))
            )
        except MathematicalRefusal:
            continue
    return vals


def _run_chain(
    coord: CoordinateFrame,
    total_frame: VariableFrame,
    start_ideal: Ideal,
    cut_polys: List[Polynomial],
    sigma: Ideal,
    w_names: Tuple[str, ...],
    s_check: int,
    extras: Optional[dict] = None,
) -> GammaChain:
    """The downward induction, shared by the affine and conormal routes.

    Level k adds cut_polys[k] to the previous polar ideal, saturates by
    sigma to extract the new polar part, and saturates the polar part away
    to leave the level-k cycle. Nothing raises here: failures are recorded
    in the properness log and the chain is marked improper.
    """
    base = coord.work_frame
    N = base.ambient_dimension
    gamma: Dict[int, Ideal] = {N: start_ideal}
    lam_ideal: Dict[int, Ideal] = {}
    lam: Dict[int, Optional[int]] = {}
    log: List[dict] = []
    proper = True
    stopped = False
    m_total = maximal_ideal(total_frame)
    m_base = maximal_ideal(base)

    for k in range(N - 1, -1, -1):
        if stopped:
            lam[k] = None
            log.append(
                {
                    "stage": "gamma_dimension",
                    "k": k,
                    "ok": False,
                    "detail": "not evaluated (chain stopped above)",
                }
            )
            continue
        T = Ideal(total_frame, gamma[k + 1].generators + (cut_polys[k],))
        G = saturate(T, sigma)
        gamma[k] = G
        dG = dim_at_origin(G)
        ok = dG <= k
        log.append(
            {
                "stage": "gamma_dimension",
                "k": k,
                "ok": ok,
                "detail": "polar dimension %d at the origin (bound %d)" % (dG, k),
            }
        )
        if not ok:
            proper = False
            stopped = True
            lam[k] = None
            continue

        L = saturate(T, G)
        if k >= 1:
            # the level-k cycle is purely k-dimensional, so components
            # supported at the origin alone are construction debris
            L = saturate(L, m_total)
        if w_names:
            lam_down = eliminate(L, w_names)
            if k >= 1:
                lam_down = saturate(lam_down, m_base)
        else:
            lam_down = L
        lam_ideal[k] = lam_down

        cut_gens = lam_down.generators + tuple(_variable_poly(base, i) for i in range(k))
        try:
            val = multiplicity_at_origin(Ideal(base, cut_gens))
        except MathematicalRefusal as exc:
            lam[k] = None
            proper = False
            log.append(
                {"stage": "lambda_cut", "k": k, "ok": False, "detail": str(exc)}
            )
            continue
        lam[k] = val
        log.append(
            {
                "stage": "lambda_cut",
                "k": k,
                "ok": True,
                "detail": "isolated cut with multiplicity %d" % val,
            }
        )

        if k >= 1:
            samples = _sampled_cut_values(lam_down, base, k)
            ok = bool(samples) and val == min(samples)
            log.append(
                {
                    "stage": "cut_genericity",
                    "k": k,
                    "ok": ok,
                    "detail": "coordinate cut %d vs sampled cuts %s" % (val, samples),
                }
            )
            if not ok:
                proper = False

        if k > s_check:
            ok = val == 0
            log.append(
                {
                    "stage": "lambda_above_s",
                    "k": k,
                    "ok": ok,
                    "detail": "level %d exceeds critical dimension %d; number is %d"
                    % (k, s_check, val),
                }
            )
            if not ok:
                proper = False

    return GammaChain(coord, gamma, lam_ideal, lam, log, proper, extras)


# -- the affine route ------------------------------------------------------------

def critical_locus(f: Polynomial) -> Tuple[Ideal, int]:
    """Jacobian ideal of f and the dimension of its zero set at the origin
    (-1 when the origin is not critical)."""
    if f.is_constant():
        raise InputError("critical locus of a constant is not defined")
    frame = f.frame
    J = Ideal(frame, tuple(f.partial(i) for i in range(frame.ambient_dimension)))
    return J, dim_at_origin(J)


def _affine_chain(f: Polynomial, coord: CoordinateFrame) -> GammaChain:
    g = coord.transform(f)
    base = coord.work_frame
    J, s = critical_locus(g)
    partials = [g.partial(i) for i in range(base.ambient_dimension)]
    chain = _run_chain(
        coord,
        base,
        zero_ideal(base),
        partials,
        J,
        (),
        s,
        extras={"s": s, "s_reported": s, "d": base.ambient_dimension, "jacobian": J},
    )
    return chain


def _numbers_from_chain(chain: GammaChain, mode: str) -> LeNumbers:
    s_rep = chain.extras["s_reported"]
    d = chain.extras["d"]
    numbers: Dict[int, int] = {}
    for k in range(0, max(s_rep, -1) + 1):
        val = chain.lambda_contribution.get(k)
        numbers[k] = 0 if val is None else val
    return LeNumbers(s_rep, d, numbers, chain.frame, mode)


def _improper_message(chain: GammaChain) -> str:
    bad = [e for e in chain.properness_log if not e["ok"]]
    first = bad[0] if bad else {"stage": "unknown", "k": -1, "detail": ""}
    return "frame %r is not generic enough: %s fails at k = %d (%s)" % (
        chain.frame.provenance,
        first["stage"],
        first["k"],
        first["detail"],
    )


def _frame_attempts(frame: VariableFrame, seed: int, budget: int):
    yield CoordinateFrame.identity(frame)
    n = frame.ambient_dimension
    for attempt in range(2, budget + 1):
        rng = DeterministicRng(((seed & 0xFFFFFFFF) << 20) ^ (attempt * _FRAME_SEED_MIX))
        while True:
            try:
                change = LinearChange(frame, rng.square_matrix(n))
                break
            except InputError:
                continue
        yield CoordinateFrame(
            frame,
            frame,
            change,
            "genericized",
            seed=seed,
            attempt=attempt,
        )


def _genericize(run: Callable[[CoordinateFrame], GammaChain], frame, seed, budget):
    failures: List[str] = []
    for coord in _frame_attempts(frame, seed, budget):
        chain = run(coord)
        if chain.proper:
            return coord, chain
        failures.append("attempt %d (%s): %s" % (coord.attempt, coord.provenance, _improper_message(chain)))
    raise MathematicalRefusal(
        "no generic coordinate frame found within budget %d; %s"
        % (budget, "; ".join(failures[-3:]))
    )


def _coerce_frame(base: VariableFrame, frame) -> Optional[CoordinateFrame]:
    if frame is None:
        return None
    if isinstance(frame, CoordinateFrame):
        if frame.base_frame != base:
            raise InputError("coordinate frame does not match the polynomial frame")
        return frame
    if isinstance(frame, LinearChange):
        return CoordinateFrame(base, base, frame, "user")
    if isinstance(frame, (tuple, list)) and all(isinstance(nm, str) for nm in frame):
        return CoordinateFrame.from_order(base, frame)
    raise InputError("frame must be a CoordinateFrame, a LinearChange, or a variable order")


def _check_affine_input(f: Polynomial) -> None:
    if f.is_constant():
        raise InputError("need a nonconstant polynomial")
    if f.constant_term:
        raise InputError("polynomial does not vanish at the origin")


def polar_gamma(f: Polynomial, k: int, frame=None) -> Ideal:
    """The level-k relative polar ideal in the chain coordinates.

    Raises when some polar ideal at level >= k has dimension above its
    bound, naming the offending level.
    """
    _check_affine_input(f)
    base = f.frame
    N = base.ambient_dimension
    if not 0 <= k <= N:
        raise InputError("polar level %d out of range 0..%d" % (k, N))
    coord = _coerce_frame(base, frame) or CoordinateFrame.identity(base)
    chain = _affine_chain(f, coord)
    for entry in chain.properness_log:
        if entry["stage"] == "gamma_dimension" and not entry["ok"] and entry["k"] >= k:
            raise MathematicalRefusal(
                "improper polar dimension (dim > k) at k = %d: %s"
                % (entry["k"], entry["detail"])
            )
    return chain.gamma_ideal[k]


def le_numbers_affine(
    f: Polynomial,
    frame=None,
    seed: int = 0,
    budget: int = 25,
) -> Tuple[LeNumbers, GammaChain]:
    """Le numbers of f at the origin, with the chain that produced them.

    With an explicit frame the computation runs once and raises if the
    frame is not generic enough; otherwise frames are tried automatically.
    """
    _check_affine_input(f)
    coord = _coerce_frame(f.frame, frame)
    if coord is not None:
        chain = _affine_chain(f, coord)
        if not chain.proper:
            raise MathematicalRefusal(_improper_message(chain))
    else:
        _, chain = _genericize(lambda c: _affine_chain(f, c), f.frame, seed, budget)
    return _numbers_from_chain(chain, "affine"), chain


def auto_genericize(f: Polynomial, seed: int = 0, budget: int = 25) -> CoordinateFrame:
    """First coordinate frame, in the deterministic attempt order, whose
    whole chain passes the properness checks."""
    _check_affine_input(f)
    coord, _ = _genericize(lambda c: _affine_chain(f, c), f.frame, seed, budget)
    return coord


def verify_properness(chain: GammaChain, frame: Optional[CoordinateFrame] = None) -> dict:
    """Aggregate the chain's properness log into a report; never raises."""
    if frame is not None and frame is not chain.frame:
        return {
            "proper": False,
            "frame": frame.describe(),
            "checks": [
                {
                    "stage": "frame",
                    "k": -1,
                    "ok": False,
                    "detail": "chain was computed in a different frame",
                }
            ],
        }
    return {
        "proper": chain.proper,
        "frame": chain.frame.describe(),
        "checks": list(chain.properness_log),
    }
