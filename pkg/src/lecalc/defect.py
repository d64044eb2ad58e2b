"""Defect of the Euler obstruction and derived counts.

The defect D is the alternating sum of the chain numbers. Its sign mate
chi_phi_0 = -D is the Euler characteristic weight of the vanishing-cycle
functor at the origin; on affine space 1 - D is the Euler characteristic
of the local fibre. Each report carries identity checks that cross-examine
the chain against independent oracles where one applies.
"""

from __future__ import annotations

from typing import Callable, Dict, List, Optional, Sequence

from .conormal import VarietyGerm, le_vogel_numbers
from .lecycles import GammaChain, LeNumbers, le_numbers_affine
from .oracle import chi_thom_sebastiani, milnor_via_macaulay
from .polyparse import InputError, MathematicalRefusal, Polynomial


class StratumDatum:
    """One stratum's contribution to a weighted Euler characteristic: the
    Euler characteristic of its normal-slice datum and its Euler
    obstruction weight."""

    __slots__ = ("label", "chi_slice", "eu_value")

    def __init__(self, label: str, chi_slice: int, eu_value: int):
        self.label = label
        self.chi_slice = int(chi_slice)
        self.eu_value = int(eu_value)

    def __repr__(self) -> str:
        return "StratumDatum(%r, chi=%d, eu=%d)" % (self.label, self.chi_slice, self.eu_value)


class ConstructibleFunctionData:
    """A constructible function presented by its value at the origin and
    stratum data on the punctured neighbourhood."""

    __slots__ = ("alpha_at_0", "strata")

    def __init__(self, alpha_at_0: int, strata: Sequence[StratumDatum]):
        self.alpha_at_0 = int(alpha_at_0)
        self.strata = tuple(strata)


def weighted_euler_characteristic(strata: Sequence[StratumDatum]) -> int:
    return sum(st.chi_slice * st.eu_value for st in strata)


def check_euler_condition(alpha_at_0: int, strata: Sequence[StratumDatum]) -> int:
    """Difference between the value at the origin and the weighted sum;
    zero exactly when the Euler condition holds."""
    return int(alpha_at_0) - weighted_euler_characteristic(strata)


class DefectReport:
    """Bundle of everything a single defect computation produced."""

    __slots__ = ("D", "chi_phi_0", "chi_fibre", "numbers", "identities", "chain", "mode")

    def __init__(
        self,
        D: int,
        numbers: LeNumbers,
        identities: List[dict],
        chain: GammaChain,
        chi_fibre: Optional[int] = None,
    ):
        self.D = D
        self.chi_phi_0 = -D
        self.chi_fibre = chi_fibre
        self.numbers = numbers
        self.identities = identities
        self.chain = chain
        self.mode = numbers.mode

    @property
    def s(self) -> int:
        return self.numbers.s

    @property
    def d(self) -> int:
        return self.numbers.d

    @property
    def lambda_numbers(self) -> Dict[int, int]:
        return dict(self.numbers.lambda_numbers)

    def __repr__(self) -> str:
        return "DefectReport(D=%d, s=%d, %r, mode=%s)" % (
            self.D,
            self.s,
            self.numbers.lambda_numbers,
            self.mode,
        )


_report_observers: List[Callable[[DefectReport], None]] = []


def register_report_observer(fn: Callable[[DefectReport], None]) -> None:
    _report_observers.append(fn)


def unregister_report_observer(fn: Callable[[DefectReport], None]) -> None:
    _report_observers.remove(fn)


def _emit(report: DefectReport) -> DefectReport:
    for fn in _report_observers:
        fn(report)
    return report


def defect_from_numbers(numbers: LeNumbers) -> int:
    """Alternating sum (-1)^(d-k) lambda^k over 0 <= k <= s; zero when the
    chain found nothing to count."""
    if numbers.s < 0:
        return 0
    total = 0
    for k, val in numbers.lambda_numbers.items():
        total += ((-1) ** (numbers.d - k)) * val
    return total


def _sign_identity(D: int) -> dict:
    return {
        "name": "chi_phi_0_equals_minus_defect",
        "holds": True,
        "detail": "chi_phi_0 = %d = -D" % (-D,),
    }


def _affine_identities(f: Polynomial, numbers: LeNumbers, D: int) -> List[dict]:
    ids = [_sign_identity(D)]
    if numbers.s == 0:
        try:
            mac = milnor_via_macaulay(f)
        except MathematicalRefusal:
            mac = None
        if mac is not None:
            lam0 = numbers.lambda_numbers[0]
            ids.append(
                {
                    "name": "lambda0_matches_jet_count",
                    "holds": lam0 == mac.value,
                    "detail": "lambda^0 = %d, jet count %d (stable at degree %d)"
                    % (lam0, mac.value, mac.certificate["stabilized_at"]),
                }
            )
    try:
        ts = chi_thom_sebastiani(f)
    except MathematicalRefusal:
        ts = None
    if ts is not None:
        ids.append(
            {
                "name": "fibre_chi_matches_oracle",
                "holds": 1 - D == ts.value,
                "detail": "1 - D = %d, oracle chi %d" % (1 - D, ts.value),
            }
        )
    return ids


def defect_affine(f: Polynomial, frame=None, seed: int = 0, budget: int = 25) -> DefectReport:
    """Defect of f on affine space at the origin, with identity checks."""
    numbers, chain = le_numbers_affine(f, frame=frame, seed=seed, budget=budget)
    D = defect_from_numbers(numbers)
    identities = _affine_identities(f, numbers, D)
    return _emit(DefectReport(D, numbers, identities, chain, chi_fibre=1 - D))


def defect_levogel(
    X: VarietyGerm,
    f: Polynomial,
    frame=None,
    seed: int = 0,
    budget: int = 25,
) -> DefectReport:
    """Defect of f on the germ X at the origin."""
    numbers, chain = le_vogel_numbers(X, f, frame=frame, seed=seed, budget=budget)
    D = defect_from_numbers(numbers)
    return _emit(DefectReport(D, numbers, [_sign_identity(D)], chain))


def milnor_number(f: Polynomial, frame=None, seed: int = 0, budget: int = 25) -> int:
    """Milnor number at the origin; 0 at a regular point. Refuses when the
    critical locus has positive dimension."""
    numbers, _ = le_numbers_affine(f, frame=frame, seed=seed, budget=budget)
    if numbers.s > 0:
        raise MathematicalRefusal("non-isolated critical locus; use mode=le")
    if numbers.s < 0:
        return 0
    return numbers.lambda_numbers[0]


def milnor_fibre_chi_affine(f: Polynomial, frame=None, seed: int = 0, budget: int = 25) -> int:
    """Euler characteristic of the local fibre of f at the origin."""
    report = defect_affine(f, frame=frame, seed=seed, budget=budget)
    return 1 - report.D


def euler_obstruction_of_function(
    X: VarietyGerm,
    f: Polynomial,
    frame=None,
    seed: int = 0,
    budget: int = 25,
) -> int:
    """The defect as a single number, in the isolated situation only."""
    report = defect_levogel(X, f, frame=frame, seed=seed, budget=budget)
    if report.s > 0:
        raise MathematicalRefusal(
            "degeneracy locus has dimension %d at the origin; use defect mode for the full sum"
            % report.s
        )
    return report.D
