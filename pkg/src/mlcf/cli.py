"""Command-line front end.

    mlcf eval --cf fibonacci --N 5
    mlcf rank --omega1 1/6 --omega2 5/6
    mlcf limits --omega1 1/6 --omega2 5/6 --p ramanujan:q=0.2 --q zero --tol 1e-9
    mlcf qlimits --m 5 --q 0.15
    mlcf ramanujan --q 0.2 [--a 0] | --m 7 --q 0.1
    mlcf poincare --omega1 1/6 --omega2 5/6 --a geometric:r=0.5 --b zero --u 0 --v 1
    mlcf bernoulli --construction theorem4 --G linear:c=0.25 --z 0.5 --m 3
    mlcf verify

Output is CSV (header row) or a JSON object ``{config, rows, residuals}``;
floats carry 17 significant digits.  Exit status: 0 success, 1 invalid
input, 2 no convergence, 3 a cross-check failed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

from . import bernoulli, multilimit, poincare, qseries
from .cf_core import CFSpec, ProjectivePoint, approximants, value_at
from .errors import IndexOutOfRange, InvalidInput, MultiLimitError, NoConvergence, PoleInFormula
from .roots import RootOfUnity, common_order
from .sequences import PerturbationSeq

EXIT_OK, EXIT_INVALID, EXIT_NO_CONVERGENCE, EXIT_CHECK_FAILED = 0, 1, 2, 3


# --- parameter parsing -----------------------------------------------------


def parse_complex(text: str) -> complex:
    """``"re"``, ``"re,im"`` or Python complex syntax such as ``"0.2+0.1j"``."""
    text = text.strip()
    try:
        if "," in text:
            re_, im = text.split(",", 1)
            return complex(float(re_), float(im))
        return complex(text.replace(" ", ""))
    except ValueError as exc:
        raise InvalidInput(f"cannot read {text!r} as a complex number") from exc


def parse_root(text: str) -> RootOfUnity:
    # Decimals are refused: a root must be exact for its order to be exact.
    if not re.fullmatch(r"\s*[+-]?\d+(\s*/\s*\d+)?\s*", text):
        raise InvalidInput(f"cannot read {text!r} as a turn fraction num/den")
    try:
        return RootOfUnity.parse(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidInput(f"cannot read {text!r} as a turn fraction num/den") from exc


def parse_positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError as exc:
        raise InvalidInput(f"expected an integer, got {text!r}") from exc
    if v < 1:
        raise InvalidInput(f"expected a positive integer, got {v}")
    return v


def parse_tol(text: str) -> float:
    try:
        v = float(text)
    except ValueError as exc:
        raise InvalidInput(f"expected a tolerance, got {text!r}") from exc
    if not 0 < v < 1:
        raise InvalidInput(f"tolerance must lie in (0, 1), got {v}")
    return v


def _kv(text: str) -> tuple[str, dict[str, str]]:
    name, _, rest = text.partition(":")
    params: dict[str, str] = {}
    for item in filter(None, rest.split(",")):
        key, eq, val = item.partition("=")
        if not eq:
            raise InvalidInput(f"parameter {item!r} in {text!r} is not key=value")
        params[key.strip()] = val.strip()
    return name.strip(), params


def _take(params: dict[str, str], allowed: dict[str, complex], text: str) -> dict[str, complex]:
    unknown = set(params) - set(allowed)
    if unknown:
        raise InvalidInput(f"unknown parameter(s) {sorted(unknown)} in {text!r}")
    out = dict(allowed)
    for k, v in params.items():
        out[k] = parse_complex(v)
    return out


def parse_sequence(text: str) -> PerturbationSeq:
    """Named summable sequences.

    ``zero``; ``geometric:r=..,c=..`` (c r^n); ``ramanujan:q=..`` (q^n);
    ``power:s=..,c=..`` (c / n^s); ``rr:q=..`` (q^-ceil(n/2), needs |q| > 1).
    """
    name, params = _kv(text)
    try:
        if name == "zero":
            _take(params, {}, text)
            return PerturbationSeq.zero()
        if name == "geometric":
            p = _take(params, {"r": 0.5, "c": 1}, text)
            return PerturbationSeq.geometric(p["r"], p["c"])
        if name == "ramanujan":
            p = _take(params, {"q": 0.5}, text)
            return PerturbationSeq.geometric(p["q"], 1)
        if name == "power":
            p = _take(params, {"s": 2, "c": 1}, text)
            if p["s"].imag:
                raise InvalidInput("power exponent s must be real")
            return PerturbationSeq.power(p["s"].real, p["c"])
        if name == "rr":
            p = _take(params, {"q": 2}, text)
            if abs(p["q"]) <= 1:
                raise InvalidInput("rr:q=.. needs |q| > 1")
            return PerturbationSeq.paired_geometric(1 / p["q"], 1)
    except ValueError as exc:
        if isinstance(exc, InvalidInput):
            raise
        raise InvalidInput(str(exc)) from exc
    raise InvalidInput(f"unknown sequence {name!r}; expected zero, geometric, ramanujan, power or rr")


def named_cf(name: str, q: complex, m: int) -> CFSpec:
    """Built-in fractions for ``eval``."""
    if name == "fibonacci":
        return CFSpec.constant(1, 1, b0=1)
    if name == "r3":  # -1/(1+q) - 1/(1+q^2) - ...
        return CFSpec(lambda n: -1, lambda n: 1 + q**n)
    if name == "rr":  # 1 + q/1 + q^2/1 + ...
        return CFSpec(lambda n: q**n, lambda n: 1, b0=1)
    if name == "rrt":  # 1 + 1/(1/q) + 1/(1/q) + 1/(1/q^2) + ...
        return CFSpec(lambda n: 1, lambda n: q ** -((n + 1) // 2), b0=1)
    if name == "ramgen":  # 1/(c+q) - 1/(c+q^2) - ..., c = 2cos(2 pi/m)
        w = RootOfUnity(1, m)
        c = w.value + w.inverse().value
        return CFSpec(lambda n: 1 if n == 1 else -1, lambda n: c + q**n)
    if name == "double_root":  # K((-1 - 4/(4n^2-1))/2)
        return CFSpec(lambda n: -1 - 4 / (4 * n * n - 1), lambda n: 2)
    raise InvalidInput(f"unknown continued fraction {name!r}; expected fibonacci, r3, rr, rrt, ramgen or double_root")


def parse_analytic(text: str) -> Callable[[complex], complex]:
    """``zero`` or ``linear:c=..`` (``G(w) = c w``)."""
    name, params = _kv(text)
    if name == "zero":
        _take(params, {}, text)
        return lambda w: 0j
    if name == "linear":
        c = _take(params, {"c": 0.25}, text)["c"]
        return lambda w: c * w
    raise InvalidInput(f"unknown function {name!r}; expected zero or linear")


def parse_convergent(text: str) -> bernoulli.ConvergentSequence:
    """``const:v=..`` or ``harmonic:v=..,c=..`` (``v + c/n``)."""
    name, params = _kv(text)
    if name == "const":
        v = _take(params, {"v": 1}, text)["v"]
        return bernoulli.ConvergentSequence.constant(v)
    if name == "harmonic":
        p = _take(params, {"v": 1, "c": 1}, text)
        return bernoulli.ConvergentSequence(lambda n: p["v"] + p["c"] / n, p["v"])
    raise InvalidInput(f"unknown convergent sequence {name!r}; expected const or harmonic")


# Per-command parameters: name -> (parser, default, help).
Param = tuple[Callable[[str], Any], Any, str]
COMMANDS: dict[str, dict[str, Param]] = {
    "eval": {
        "cf": (str, "fibonacci", "fibonacci, r3, rr, rrt, ramgen or double_root"),
        "N": (parse_positive_int, "10", "convergent number, counting b0 as the first"),
        "q": (parse_complex, "0.5", "parameter q of r3, rr, rrt, ramgen"),
        "m": (parse_positive_int, "5", "order for ramgen"),
    },
    "limits": {
        "omega1": (parse_root, None, "first root as a turn fraction num/den"),
        "omega2": (parse_root, None, "second root as a turn fraction num/den"),
        "p": (parse_sequence, "zero", "perturbation of the partial denominators"),
        "q": (parse_sequence, "zero", "perturbation of the partial numerators"),
        "b0": (parse_complex, "0", "leading term"),
        "tol": (parse_tol, "1e-12", "convergence tolerance"),
        "kmax": (parse_positive_int, "200000", "block cap"),
    },
    "rank": {
        "omega1": (parse_root, None, "first root as a turn fraction num/den"),
        "omega2": (parse_root, None, "second root as a turn fraction num/den"),
    },
    "qlimits": {
        "m": (parse_positive_int, "5", "order of the primitive root, at least 3"),
        "q": (parse_complex, "0.15", "nome with |q| < 1"),
        "tol": (parse_tol, "1e-12", "series tolerance"),
    },
    "ramanujan": {
        "q": (parse_complex, "0.2", "nome with |q| < 1"),
        "a": (parse_complex, "0", "shift of the last partial denominator (three-limit form)"),
        "m": (parse_positive_int, "3", "order; 3 gives the three-limit closed form, otherwise the general quotient"),
        "tol": (parse_tol, "1e-12", "series tolerance"),
    },
    "poincare": {
        "omega1": (parse_root, None, "first characteristic root"),
        "omega2": (parse_root, None, "second characteristic root"),
        "a": (parse_sequence, "zero", "perturbation a_n"),
        "b": (parse_sequence, "zero", "perturbation b_n"),
        "u": (parse_complex, "0", "x_0"),
        "v": (parse_complex, "1", "x_1"),
        "tol": (parse_tol, "1e-12", "convergence tolerance"),
    },
    "bernoulli": {
        "construction": (str, "theorem4", "theorem4, three or rational"),
        "G": (parse_analytic, "linear:c=0.25", "analytic function for theorem4/three"),
        "z": (parse_complex, "0.5", "point with |z| < 1"),
        "m": (parse_positive_int, "3", "number of limits (theorem4, rational)"),
        "N": (parse_positive_int, "120", "approximant index used for the comparison"),
        "ca": (parse_convergent, "const:v=1", "sequence a_n (rational)"),
        "cc": (parse_convergent, "const:v=1", "sequence c_n (rational)"),
        "cd": (parse_convergent, "const:v=2", "sequence d_n (rational)"),
        "ce": (parse_convergent, "const:v=1", "sequence e_n (rational)"),
    },
    "verify": {},
}


@dataclass
class RunConfig:
    command: str
    parameters: dict[str, str] = field(default_factory=dict)
    output_format: str = "csv"
    output_path: str | None = None

    def validate(self) -> dict[str, Any]:
        """Parsed parameters with defaults filled in; rejects unknown keys."""
        if self.command not in COMMANDS:
            raise InvalidInput(f"unknown command {self.command!r}")
        if self.output_format not in ("csv", "json"):
            raise InvalidInput(f"output format must be csv or json, got {self.output_format!r}")
        spec = COMMANDS[self.command]
        unknown = set(self.parameters) - set(spec)
        if unknown:
            raise InvalidInput(f"unknown parameter(s) for {self.command}: {sorted(unknown)}")
        out = {}
        for key, (parse, default, _) in spec.items():
            raw = self.parameters.get(key, default)
            if raw is None:
                raise InvalidInput(f"{self.command} requires --{key}")
            out[key] = parse(str(raw))
        return out


# --- output ----------------------------------------------------------------


@dataclass
class Result:
    columns: list[str]
    rows: list[list[Any]]
    residuals: dict[str, Any] = field(default_factory=dict)
    failed: bool = False


def fmt_float(x: float) -> str | None:
    if not math.isfinite(x):
        return None
    return "%.17g" % (x + 0.0)  # folds -0.0 into 0


def _json(obj: Any) -> str:
    if obj is None or isinstance(obj, bool):
        return json.dumps(obj)
    if isinstance(obj, float):
        s = fmt_float(obj)
        return "null" if s is None else s
    if isinstance(obj, (int, str)):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_json(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_json(v) for v in obj) + "]"
    return json.dumps(str(obj))


def _csv_cell(v: Any) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        s = fmt_float(v)
        return "" if s is None else s
    return "" if v is None else str(v)


def render(result: Result, config: RunConfig) -> str:
    if config.output_format == "json":
        rows = [dict(zip(result.columns, r)) for r in result.rows]
        cfg = {"command": config.command, "parameters": dict(sorted(config.parameters.items()))}
        return _json({"config": cfg, "rows": rows, "residuals": result.residuals}) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(result.columns)
    for r in result.rows:
        w.writerow([_csv_cell(v) for v in r])
    return buf.getvalue()


def _point_cells(pt: ProjectivePoint) -> list[Any]:
    if pt.is_infinite:
        return [None, None, True]
    v = pt.value()
    return [float(v.real), float(v.imag), False]


def _c(z: complex) -> list[float]:
    return [float(complex(z).real), float(complex(z).imag)]


# --- commands --------------------------------------------------------------


def cmd_eval(p: dict[str, Any]) -> Result:
    cf = named_cf(p["cf"], p["q"], p["m"])
    n = p["N"] - 1
    if n == 0:
        pt = ProjectivePoint(complex(cf.b0), 1)
    else:
        pt = value_at(approximants(cf, n, renormalize=True), n)
    return Result(["index", "re", "im", "is_infinite"], [[n] + _point_cells(pt)])


def cmd_rank(p: dict[str, Any]) -> Result:
    r = multilimit.rank(p["omega1"], p["omega2"])
    m = common_order(p["omega1"], p["omega2"])
    return Result(["omega1", "omega2", "m", "rank"], [[str(p["omega1"]), str(p["omega2"]), m, r]])


def cmd_limits(p: dict[str, Any]) -> Result:
    ml = multilimit.build(p["omega1"], p["omega2"], p["p"], p["q"], p["b0"])
    prof = multilimit.residue_limits(ml, p["tol"], p["kmax"])
    rows = []
    for i in range(prof.m):
        rows.append([i] + _c(prof.A[i]) + _c(prof.B[i]) + _point_cells(prof.points[i]))
    worst = 0.0
    for i in range(prof.m):
        closed = multilimit.det_pairing_closed_form(i + 1, i, ml.omega1, ml.omega2, ml.q, p["tol"])
        worst = max(worst, abs(closed - prof.pairing(i + 1, i)))
    residuals = {
        "rank": prof.rank,
        "distinct_limits": prof.distinct_count(),
        "blocks": prof.blocks,
        "det_pairing": worst,
    }
    cols = ["residue", "re_A", "im_A", "re_B", "im_B", "re_limit", "im_limit", "is_infinite"]
    return Result(cols, rows, residuals)


def cmd_qlimits(p: dict[str, Any]) -> Result:
    m, q, tol = p["m"], p["q"], p["tol"]
    w = RootOfUnity.primitive(m)
    if m < 3:
        raise InvalidInput("qlimits needs m >= 3")
    qseries.QParam(q)
    K = 200
    P, Q = qseries.recurrence_PQ(w, m * K + m, q)
    rows, worst = [], 0.0
    for i in range(1, m + 1):
        lp, lq = qseries.limit_P(w, i, q, tol), qseries.limit_Q(w, i, q, tol)
        worst = max(worst, abs(lp - P[m * K + i]), abs(lq - Q[m * K + i]))
        rows.append([i] + _c(lp) + _c(lq))
    return Result(["i", "re_P", "im_P", "re_Q", "im_Q"], rows, {"recurrence_gap": worst})


def cmd_ramanujan(p: dict[str, Any]) -> Result:
    q, m, tol = p["q"], p["m"], p["tol"]
    qseries.QParam(q)
    if m == 3 and p["a"] is not None:
        lhs = qseries.three_limit_lhs_cf(q, p["a"])
        n0 = 3 * 200
        rows, worst = [], 0.0
        for n in range(3):
            rhs = qseries.ramanujan_three_limit_rhs(q, n, p["a"])
            it = lhs(n0 + n + 1)
            worst = max(worst, abs(rhs - it))
            rows.append([n] + _c(rhs) + _c(it))
        return Result(["n_mod_3", "re_rhs", "im_rhs", "re_iterated", "im_iterated"], rows, {"max_gap": worst})
    if m < 3:
        raise InvalidInput("ramanujan needs m >= 3")
    w = RootOfUnity.primitive(m)
    c = w.value + w.inverse().value
    cf = CFSpec(lambda n: 1 if n == 1 else -1, lambda n: c + q**n)
    K = 200
    tab = approximants(cf, m * K + m, renormalize=True)
    rows, worst, pts = [], 0.0, []
    for i in range(1, m + 1):
        pt = qseries.ramanujan_general_limit(m, i, q, tol)
        pts.append(pt)
        worst = max(worst, pt.chordal_distance(value_at(tab, m * K + i - 1)))
        rows.append([i] + _point_cells(pt))
    res = {"distinct_limits": multilimit.count_distinct(pts), "max_chordal_gap": worst}
    return Result(["i", "re_limit", "im_limit", "is_infinite"], rows, res)


def cmd_poincare(p: dict[str, Any]) -> Result:
    w1, w2 = p["omega1"], p["omega2"]
    vec = poincare.order_two(w1, w2, p["a"], p["b"], p["u"], p["v"], p["tol"])
    rec = poincare.order_two_recurrence(w1, w2, p["a"], p["b"], p["u"], p["v"])
    via = poincare.limits_via_matrices(rec, [w1, w2], p["tol"])
    rows = [[j] + _c(vec.l[j]) for j in range(vec.m)]
    res = {
        "limit_recurrence": poincare.limit_recurrence_residual(vec, rec.limit_coeff),
        "representation": poincare.representation_residual(vec),
        "matrix_route": max(abs(a - b) for a, b in zip(vec.l, via)),
    }
    return Result(["j", "re_l", "im_l"], rows, res)


def _iterated(cf: CFSpec, N: int) -> list[complex]:
    tab = approximants(cf, N, renormalize=True)
    return [value_at(tab, n).value() for n in range(N + 1)]


def cmd_bernoulli(p: dict[str, Any]) -> Result:
    kind, N = p["construction"], p["N"]
    if kind == "theorem4":
        cf, limits = bernoulli.theorem4_cf(p["G"], p["z"], p["m"], N)
    elif kind == "three":
        cf, *limits = bernoulli.three_limit_analytic(p["G"], p["z"], N)
    elif kind == "rational":
        cf, limits = bernoulli.rational_multi_limit(p["ca"], p["cc"], p["cd"], p["ce"], p["m"], N)
    else:
        raise InvalidInput(f"construction must be theorem4, three or rational, got {kind!r}")
    m = len(limits)
    vals = _iterated(cf, N)
    rows, worst = [], 0.0
    for i in range(m):
        n = N - ((N - i) % m)  # largest index <= N in class i
        worst = max(worst, abs(vals[n] - limits[i]))
        rows.append([i] + _c(limits[i]) + _c(vals[n]))
    return Result(["residue", "re_predicted", "im_predicted", "re_iterated", "im_iterated"], rows, {"max_gap": worst})


# (name, residual, tolerance)
Check = tuple[str, float, float]


def _verify_checks() -> list[Check]:
    out: list[Check] = []
    zero = PerturbationSeq.zero()

    # Trivial two-limit profile of K(1/0).
    prof = multilimit.residue_limits(multilimit.build(RootOfUnity(0, 1), RootOfUnity(1, 2), zero, zero))
    out.append(("trivial_pairing", abs(prof.pairing(1, 0) - 1), 0.0))

    # Three limits of 1/1 - 1/(1+q) - ... against the closed form.
    lhs = qseries.three_limit_lhs_cf(0.2)
    gap = max(abs(lhs(601 + n) - qseries.ramanujan_three_limit_rhs(0.2, n)) for n in range(3))
    out.append(("three_limit_closed_form", gap, 1e-9))

    # Two-root closed form and determinant identity.
    w1, w2 = RootOfUnity(1, 6), RootOfUnity(5, 6)
    pq = PerturbationSeq.geometric(0.2)
    ml = multilimit.build(w1, w2, pq, pq)
    prof = multilimit.residue_limits(ml)
    gap = max(abs(multilimit.extend_limits(prof.A[0], prof.A[1], w1, w2, i) - prof.A[i]) for i in range(ml.m))
    out.append(("closed_form_limits", gap, 1e-8))
    gap = max(
        abs(multilimit.det_pairing_closed_form(i, j, w1, w2, pq) - prof.pairing(i, j))
        for i in range(ml.m)
        for j in range(ml.m)
    )
    out.append(("determinant_pairing", gap, 1e-8))
    via = multilimit.residue_limits_via_matrices(ml)
    gap = max(a.chordal_distance(b) for a, b in zip(prof.points, via.points))
    out.append(("matrix_route", gap, 1e-9))

    # Poincare order two against the companion matrix product.
    a = PerturbationSeq.geometric(0.5)
    vec = poincare.order_two(w1, w2, a, zero, 0, 1)
    rec = poincare.order_two_recurrence(w1, w2, a, zero, 0, 1)
    gap = max(abs(x - y) for x, y in zip(vec.l, poincare.limits_via_matrices(rec, [w1, w2])))
    out.append(("poincare_matrix_route", gap, 1e-9))
    out.append(("poincare_representation", poincare.representation_residual(vec), 1e-8))

    # q-series sums against their recurrences.
    w = RootOfUnity(1, 5)
    P, Q = qseries.recurrence_PQ(w, 25, 0.3)
    gap = max(max(abs(qseries.pn_sum(w, N, 0.3) - P[N]), abs(qseries.qn_sum(w, N, 0.3) - Q[N])) for N in range(1, 26))
    out.append(("pn_qn_sums", gap, 1e-11))
    P, Q = qseries.recurrence_PQ(w, 5 * 60 + 5, 0.15)
    gap = max(abs(qseries.limit_P(w, i, 0.15) - P[300 + i]) for i in range(1, 6))
    out.append(("limit_series", gap, 1e-8))

    # Bernoulli constructions.
    G = lambda z: z / 3  # noqa: E731
    cf, *L = bernoulli.three_limit_analytic(G, 0.3, 120)
    vals = _iterated(cf, 120)
    out.append(("three_limit_analytic", max(abs(vals[117 + r] - L[r]) for r in range(3)), 1e-8))
    cf, limits = bernoulli.theorem4_cf(lambda z: z / 4, 0.3, 4, 80)
    vals = _iterated(cf, 80)
    out.append(("theorem4", max(abs(vals[76 + i] - limits[i]) for i in range(4)), 1e-9))
    return out


def cmd_verify(p: dict[str, Any]) -> Result:
    checks = _verify_checks()
    rows = [[name, float(res), float(tol), res <= tol] for name, res, tol in checks]
    result = Result(["check", "residual", "tolerance", "passed"], rows, {name: float(res) for name, res, _ in checks})
    result.failed = not all(r[3] for r in rows)
    return result


HANDLERS: dict[str, Callable[[dict[str, Any]], Result]] = {
    "eval": cmd_eval,
    "limits": cmd_limits,
    "rank": cmd_rank,
    "qlimits": cmd_qlimits,
    "ramanujan": cmd_ramanujan,
    "poincare": cmd_poincare,
    "bernoulli": cmd_bernoulli,
    "verify": cmd_verify,
}


def execute(config: RunConfig) -> tuple[int, str]:
    """Run a validated config; returns ``(exit status, emitted text)``."""
    params = config.validate()
    result = HANDLERS[config.command](params)
    return (EXIT_CHECK_FAILED if result.failed else EXIT_OK), render(result, config)


def run(config: RunConfig, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        status, text = execute(config)
    except NoConvergence as exc:
        print(f"no convergence: {exc}", file=stderr)
        return EXIT_NO_CONVERGENCE
    except (InvalidInput, PoleInFormula, IndexOutOfRange) as exc:
        print(f"invalid input ({type(exc).__name__}): {exc}", file=stderr)
        return EXIT_INVALID
    except MultiLimitError as exc:
        print(f"check failed ({type(exc).__name__}): {exc}", file=stderr)
        return EXIT_CHECK_FAILED
    if config.output_path:
        with open(config.output_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return status


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # type: ignore[override]
        raise InvalidInput(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mlcf", description="Multi-limit continued fractions and related recurrences.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, spec in COMMANDS.items():
        sp = sub.add_parser(name)
        for key, (_, default, help_) in spec.items():
            suffix = "" if default is None else f" (default {default})"
            sp.add_argument(f"--{key}", dest=key, default=None, help=help_ + suffix)
        sp.add_argument("--format", dest="output_format", choices=["csv", "json"], default="csv")
        sp.add_argument("--output", dest="output_path", default=None, help="write to a file instead of stdout")
    return parser


def parse_args(argv: Sequence[str] | None) -> RunConfig:
    ns = vars(build_parser().parse_args(argv))
    command = ns.pop("command")
    fmt = ns.pop("output_format")
    path = ns.pop("output_path")
    params = {k: v for k, v in ns.items() if v is not None}
    return RunConfig(command, params, fmt, path)


def main(argv: Sequence[str] | None = None) -> int:
    try:
        config = parse_args(argv)
    except InvalidInput as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    return run(config)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
