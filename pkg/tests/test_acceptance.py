"""End-to-end acceptance battery.

Each check records its verdict through the shared registry before asserting,
so the terminal summary always prints one line per criterion. The module is
collected last (see conftest) because the aggregate checks replay every
basis and every report recorded during the rest of the suite.
"""

import json
import subprocess
import sys
from functools import lru_cache

import conftest

from lecalc import (
    Ideal,
    VariableFrame,
    VarietyGerm,
    chi_homogeneous_plane,
    chi_thom_sebastiani,
    colength,
    defect_affine,
    defect_from_numbers,
    defect_levogel,
    generic_linear_form_on_germ,
    isolated_intersection_number,
    le_numbers_affine,
    le_vogel_numbers,
    milnor_number,
    milnor_via_macaulay,
    monomial_colength,
    parse_polynomial,
)
from lecalc._kernel import make_key, normal_form_terms
from lecalc._rng import DeterministicRng
from lecalc import Polynomial
from lecalc.groebner import spoly_terms

F2 = ("x", "y")
F3 = ("x", "y", "z")

# isolated corpus with independently computed Milnor numbers: the two- and
# three-variable entries are classical (Brieskorn grid, ordinary triple
# point, line-plus-cusp curves), each value cross-checked by the jet oracle
CORPUS = [
    ("x^2 + y^2", F2, 1),
    ("x^3 + y^2", F2, 2),
    ("x^3 + y^3", F2, 4),
    ("x^4 + y^4", F2, 9),
    ("x^3 - x*y^2", F2, 4),
    ("x^2*y + y^4", F2, 5),
    ("x^3 + x*y^3", F2, 7),
    ("x^2 + y^2 + z^2", F3, 1),
    ("x^2 + y^3 + z^5", F3, 8),
    ("x^3 + y^3 + z^3", F3, 8),
]


def P(text, names=F2):
    return parse_polynomial(text, VariableFrame(names))


@lru_cache(maxsize=None)
def _affine(text, names, seed=0):
    return le_numbers_affine(P(text, names), seed=seed)


@lru_cache(maxsize=None)
def _germ(eqns, names, dim):
    frame = VariableFrame(names)
    if not eqns:
        return VarietyGerm.ambient(frame)
    ideal = Ideal(frame, [parse_polynomial(t, frame) for t in eqns])
    return VarietyGerm(frame, ideal, dim)


@lru_cache(maxsize=None)
def _levogel(eqns, f_text, names, dim, seed=0):
    X = _germ(eqns, names, dim)
    return le_vogel_numbers(X, parse_polynomial(f_text, X.frame), seed=seed)


def _finish(num, desc, problems):
    conftest.record_acceptance(num, desc, not problems, "; ".join(problems[:4]))
    assert not problems, "; ".join(problems)


def test_ac1_brieskorn_grid():
    problems = []
    for p in (2, 3, 4, 5):
        for q in (2, 3, 4, 5):
            f = P("x^%d + y^%d" % (p, q))
            want = (p - 1) * (q - 1)
            chain_mu = milnor_number(f)
            jet_mu = milnor_via_macaulay(f).value
            if not (chain_mu == jet_mu == want):
                problems.append(
                    "x^%d+y^%d: chain %d, jet %d, expected %d"
                    % (p, q, chain_mu, jet_mu, want)
                )
    _finish(1, "Brieskorn grid: chain route and jet oracle give (p-1)(q-1)", problems)


def test_ac2_isolated_corpus():
    problems = []
    for text, names, mu in CORPUS:
        nums, _ = _affine(text, names)
        if nums.s != 0:
            problems.append("%s: s = %d" % (text, nums.s))
            continue
        if nums.lambda_numbers != {0: mu}:
            problems.append("%s: table %s, expected {0: %d}" % (text, nums.lambda_numbers, mu))
        oracle = milnor_via_macaulay(P(text, names)).value
        if oracle != mu:
            problems.append("%s: oracle %d, expected %d" % (text, oracle, mu))
    _finish(2, "isolated corpus: s = 0 and lambda^0 = mu on all ten germs", problems)


def test_ac3_line_singularities():
    problems = []
    rep = defect_affine(P("x*y^2"))
    if (rep.s, rep.lambda_numbers, rep.D) != (1, {0: 2, 1: 1}, 1):
        problems.append("x*y^2: s=%d table=%s D=%d" % (rep.s, rep.lambda_numbers, rep.D))
    chi = 1 - rep.D
    for oracle in (chi_homogeneous_plane, chi_thom_sebastiani):
        got = oracle(P("x*y^2")).value
        if got != chi:
            problems.append("x*y^2: chain chi %d, %s %d" % (chi, oracle.__name__, got))

    rep = defect_affine(P("x^2 + y^2*z", F3))
    if (rep.s, rep.lambda_numbers, rep.D) != (1, {0: 2, 1: 1}, -1):
        problems.append(
            "x^2+y^2*z: s=%d table=%s D=%d" % (rep.s, rep.lambda_numbers, rep.D)
        )
    got = chi_thom_sebastiani(P("x^2 + y^2*z", F3)).value
    if got != 1 - rep.D:
        problems.append("x^2+y^2*z: chain chi %d, oracle %d" % (1 - rep.D, got))
    _finish(3, "tables (2,1) for x*y^2 and x^2+y^2*z with oracle-confirmed chi", problems)


def test_ac4_generic_linear_forms():
    problems = []
    for eqn in ("x*y", "x^2 - y^3"):
        X = _germ((eqn,), F2, 1)
        l = generic_linear_form_on_germ(X)
        rep = defect_levogel(X, l)
        if rep.D != 0:
            problems.append("V(%s), f = %s: D = %d" % (eqn, l.to_string(), rep.D))
    _finish(4, "certified-generic linear forms on the node and cusp have defect 0", problems)


def test_ac5_hatted_matches_affine_on_ambient():
    problems = []
    entries = [
        ("x^2 + y^2", F2),
        ("x^3 + y^2", F2),
        ("x*y^2", F2),
        ("x^3 - x*y^2", F2),
        ("x^2 + y^2*z", F3),
    ]
    for text, names in entries:
        aff, _ = _affine(text, names)
        hat, _ = _levogel((), text, names, len(names))
        if (hat.s, hat.d) != (aff.s, aff.d) or hat.lambda_numbers != aff.lambda_numbers:
            problems.append(
                "%s: hatted (s=%d, %s) vs affine (s=%d, %s)"
                % (text, hat.s, hat.lambda_numbers, aff.s, aff.lambda_numbers)
            )
    _finish(5, "hatted chain on ambient space reproduces the affine numbers", problems)


def test_ac6_zero_function_defect_is_multiplicity():
    problems = []
    for eqn in ("x*y", "x^2 - y^3"):
        X = _germ((eqn,), F2, 1)
        rep = defect_levogel(X, parse_polynomial("0", X.frame))
        mult = parse_polynomial(eqn, X.frame).min_total_degree()
        if rep.D != mult:
            problems.append("V(%s): D = %d, multiplicity %d" % (eqn, rep.D, mult))
    _finish(6, "zero function on plane-curve germs: defect equals the multiplicity", problems)


def test_ac7_isolated_consistency():
    problems = []
    for text, names, mu in CORPUS:
        nums, _ = _affine(text, names)
        if nums.s != 0:
            problems.append("%s: s = %d" % (text, nums.s))
            continue
        ambient = VarietyGerm.ambient(VariableFrame(names))
        iin = isolated_intersection_number(ambient, P(text, names))
        if iin != nums.lambda_numbers[0]:
            problems.append(
                "%s: intersection number %d, lambda^0 %d"
                % (text, iin, nums.lambda_numbers[0])
            )
        rep = defect_affine(P(text, names))
        n = len(names)
        if rep.D != (-1) ** n * mu:
            problems.append("%s: D = %d, (-1)^%d mu = %d" % (text, rep.D, n, (-1) ** n * mu))
    _finish(7, "s = 0 cases: lambda^0 is the intersection number and D = (-1)^N mu", problems)


def test_ac8_all_emitted_reports_consistent():
    problems = []
    reports = conftest.RECORDED_REPORTS
    if not reports:
        problems.append("no reports were recorded")
    for rep in reports:
        if rep.D != defect_from_numbers(rep.numbers):
            problems.append("%s report: D %d != alternating sum" % (rep.mode, rep.D))
        if rep.chi_phi_0 != -rep.D:
            problems.append("%s report: chi %d != -D" % (rep.mode, rep.chi_phi_0))
        for ident in rep.identities:
            if not ident["holds"]:
                problems.append("identity %s failed: %s" % (ident["name"], ident["detail"]))
    conftest.record_acceptance(
        8,
        "all %d emitted reports satisfy chi_phi_0 = -D with every identity holding"
        % len(reports),
        not problems,
        "; ".join(problems[:4]),
    )
    assert not problems, "; ".join(problems)


def test_ac9_seed_stability():
    problems = []
    affine_entries = [("x^2 + y^2*z", F3), ("x^2*y^2", F2)]
    for text, names in affine_entries:
        a, _ = _affine(text, names, 0)
        b, _ = _affine(text, names, 1)
        if a.frame.provenance != "genericized":
            problems.append("%s did not need genericization" % text)
        if a != b:
            problems.append(
                "%s: seed 0 gives %s, seed 1 gives %s"
                % (text, a.lambda_numbers, b.lambda_numbers)
            )
    for eqn in ("x*y", "x^2 - y^3"):
        a, _ = _levogel((eqn,), "0", F2, 1, 0)
        b, _ = _levogel((eqn,), "0", F2, 1, 1)
        if a.frame.provenance != "genericized":
            problems.append("V(%s) did not need genericization" % eqn)
        if a != b:
            problems.append(
                "V(%s): seed 0 gives %s, seed 1 gives %s"
                % (eqn, a.lambda_numbers, b.lambda_numbers)
            )
    _finish(9, "seeds 0 and 1 agree on every genericization-dependent entry", problems)


def test_ac10_basis_certificates():
    problems = []
    bases = conftest.RECORDED_BASES
    if not bases:
        problems.append("no bases were recorded")
    checked = 0
    for descriptor, basis in bases:
        key = make_key(descriptor)
        for i in range(len(basis)):
            for j in range(i + 1, len(basis)):
                if normal_form_terms(spoly_terms(basis[i], basis[j], key), basis, descriptor):
                    problems.append(
                        "S-polynomial (%d, %d) does not reduce to zero (descriptor %s)"
                        % (i, j, descriptor)
                    )
                checked += 1

    rng = DeterministicRng(0x57A1C5)
    staircases = 0
    while staircases < 50:
        n = 2 + (staircases % 2)
        frame = VariableFrame(F2 if n == 2 else F3)
        monos = []
        for i in range(n):
            e = [0] * n
            e[i] = rng.uniform_int(1, 5)
            monos.append(Polynomial(frame, {tuple(e): 1}))
        for _ in range(rng.uniform_int(0, 3)):
            exp = tuple(rng.uniform_int(0, 4) for _ in range(n))
            monos.append(Polynomial(frame, {exp: 1}))
        staircases += 1
        engine = colength(Ideal(frame, monos))
        counted = monomial_colength(monos).value
        if engine != counted:
            problems.append(
                "staircase %d: engine %d, counting %d" % (staircases, engine, counted)
            )
    conftest.record_acceptance(
        10,
        "%d recorded bases pass S-polynomial reduction (%d pairs); 50 staircase"
        " colengths match direct counting" % (len(bases), checked),
        not problems,
        "; ".join(problems[:4]),
    )
    assert not problems, "; ".join(problems)


def test_ac11_byte_identical_reruns(tmp_path):
    problems = []
    battery = [
        {"mode": "le", "vars": ["x", "y"], "f": "x*y^2"},
        {"mode": "le", "vars": ["x", "y", "z"], "f": "x^2 + y^2*z"},
        {"mode": "le", "vars": ["x", "y"], "f": "x^3 + y^2"},
        {"mode": "le", "vars": ["x", "y", "z"], "f": "x^2 + y^2*z", "order": ["z", "y", "x"]},
        {"mode": "milnor", "vars": ["x", "y"], "f": "x*y^2"},
        {"mode": "levogel", "vars": ["x", "y"], "X": ["x*y"], "f": "0"},
        {"mode": "defect", "vars": ["x", "y"], "f": "x^2*y^2"},
        {"mode": "oracle", "vars": ["x", "y", "z"], "f": "x^2 + y^3 + z^5"},
        {"mode": "euler-check", "vars": ["x", "y"], "X": ["x*y"], "f": "-3*x - 7*y"},
    ]
    path = tmp_path / "battery.ndjson"
    lines = [json.dumps(entry) for entry in battery]
    lines.append("not a json job")
    path.write_text("\n".join(lines) + "\n")

    def cold_run():
        return subprocess.run(
            [sys.executable, "-m", "lecalc", "--jobs", str(path)],
            capture_output=True,
            timeout=300,
        )

    first = cold_run()
    second = cold_run()
    if first.returncode != 2 or second.returncode != 2:
        problems.append(
            "exit codes %d / %d, expected 2" % (first.returncode, second.returncode)
        )
    if first.stdout != second.stdout:
        problems.append("stdout differs between runs")
    if not first.stdout:
        problems.append("no output produced")
    _finish(11, "two cold CLI runs over the job battery are byte-identical", problems)
