"""Verification suites: runnable bundles of checks with serializable reports.

Each suite produces a :class:`SuiteReport` whose records are sorted by check
id, so a report's bytes depend only on the configuration and seed.  Checks
are either exact (pass means the residual is identically zero in rational
arithmetic) or tolerance-gated floats; diagnostic records are reported but
can never affect an exit status.
"""

from __future__ import annotations

import configparser
import csv
import io
import json
import math
import time
from dataclasses import dataclass, field, fields
from fractions import Fraction

from . import contraction as ct
from . import euclidean as eu
from . import groups as gr
from . import heisenberg as hb
from .errors import ConfigError
from .numeric import Polynomial, X, Y, Z

SUITE_NAMES = ("groups", "hermite", "bessel", "contraction")

#: tolerances pinned by the acceptance gates; per-check overrides go through
#: SuiteConfig.tolerance_overrides
DEFAULT_TOLERANCES = {
    "groups/e2_axioms": 1e-12,
    "groups/e2_apply_rotation": 1e-12,
    "groups/generator_fd": 1e-8,
    "bessel/identity": 1e-10,
    "bessel/identity_ode_small_r": 1e-9,
    "bessel/ladder_crosscheck": 1e-6,
    "bessel/genfunc_A11": 1e-8,
    "bessel/j0_root": 1e-10,
    "bessel/selfconsistency": 1e-13,
    "contraction/rate_band": 0.1,
    "contraction/polar_ladder_rate": 0.3,
    "contraction/monotone": 1.0,
    "contraction/legendre_closed_forms": 1e-12,
    "contraction/legendre_ode_rate": 0.5,
    "contraction/bessel_operator": 1e-9,
    "contraction/mehler_heine_margin": 1.0,
}


@dataclass
class SuiteConfig:
    """Knobs for the verification suites; defaults match the acceptance gates."""

    seed: int = 1234
    output_format: str = "text"
    out_path: str | None = None
    tolerance_overrides: dict = field(default_factory=dict)
    group_samples: int = 100
    hermite_max_n: int = 64
    genfunc_order: int = 64
    disentangle_order: int = 32
    orthonormality_max: int = 20
    spectrum_max: int = 32
    discrete_dim: int = 40
    bessel_orders: tuple = tuple(range(11))
    bessel_r_grid: tuple = (0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0)
    genfunc_terms: int = 30
    contraction_R: tuple = (8, 16, 32, 64, 128, 256, 512, 1024)
    legendre_l: tuple = (64, 128, 256, 512, 1024)
    flow_steps: int = 10_000

    def __post_init__(self):
        if self.output_format not in ("json", "csv", "text"):
            raise ConfigError(f"unknown output format {self.output_format!r}")
        for name in ("bessel_orders", "bessel_r_grid", "contraction_R",
                     "legendre_l"):
            if not getattr(self, name):
                raise ConfigError(f"{name} must not be empty")
        for key, value in self.tolerance_overrides.items():
            if value <= 0:
                raise ConfigError(f"tolerance for {key} must be positive")

    def tolerance(self, key: str) -> float:
        if key in self.tolerance_overrides:
            return self.tolerance_overrides[key]
        return DEFAULT_TOLERANCES[key]

    def echo(self) -> dict:
        out = {}
        for f in fields(self):
            value = getattr(self, f.name)
            if isinstance(value, tuple):
                value = list(value)
            out[f.name] = value
        return out


_INT_LIST_FIELDS = {"bessel_orders", "contraction_R", "legendre_l"}
_FLOAT_LIST_FIELDS = {"bessel_r_grid"}
_INT_FIELDS = {"seed", "group_samples", "hermite_max_n", "genfunc_order",
               "disentangle_order", "orthonormality_max", "spectrum_max",
               "discrete_dim", "genfunc_terms", "flow_steps"}


def _parse_number_list(text: str, cast):
    try:
        return tuple(cast(part.strip()) for part in text.split(",") if part.strip())
    except ValueError as exc:
        raise ConfigError(f"bad list value {text!r}") from exc


def load_config(path: str) -> dict:
    """Read the sectioned key=value config format into override kwargs.

    Sections group keys per suite for readability; keys map directly onto
    :class:`SuiteConfig` fields.  ``tolerance.<check-key>`` entries feed the
    per-check overrides.
    """
    parser = configparser.ConfigParser()
    read = parser.read(path)
    if not read:
        raise ConfigError(f"config file {path!r} not found")
    overrides: dict = {}
    tolerances: dict = {}
    valid = {f.name for f in fields(SuiteConfig)}
    for section in parser.sections():
        for key, raw in parser.items(section):
            if key.startswith("tolerance."):
                check_key = key[len("tolerance."):]
                try:
                    tolerances[check_key] = float(raw)
                except ValueError as exc:
                    raise ConfigError(f"bad tolerance {raw!r}") from exc
                continue
            if key not in valid:
                raise ConfigError(f"unknown config key {key!r} in [{section}]")
            if key in _INT_LIST_FIELDS:
                overrides[key] = _parse_number_list(raw, int)
            elif key in _FLOAT_LIST_FIELDS:
                overrides[key] = _parse_number_list(raw, float)
            elif key in _INT_FIELDS:
                try:
                    overrides[key] = int(raw)
                except ValueError as exc:
                    raise ConfigError(f"bad integer {raw!r} for {key}") from exc
            else:
                overrides[key] = raw
    if tolerances:
        overrides["tolerance_overrides"] = tolerances
    return overrides


# ---------------------------------------------------------------------------
# check records
# ---------------------------------------------------------------------------

@dataclass
class CheckRecord:
    check_id: str
    params: dict
    residual: float
    exact: bool
    tolerance: float | None
    status: str  # pass | fail | diagnostic

    def to_dict(self) -> dict:
        return {
            "check_id": self.check_id,
            "params": self.params,
            "residual": self.residual,
            "exact_zero": self.exact and self.residual == 0.0,
            "tolerance": self.tolerance,
            "status": self.status,
        }


@dataclass
class SuiteReport:
    suite: str
    records: list
    config_echo: dict
    wall_time_s: float = 0.0

    @property
    def passed(self) -> bool:
        return all(r.status != "fail" for r in self.records)

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "config": self.config_echo,
            "checks": [r.to_dict() for r in sorted(self.records,
                                                   key=lambda r: r.check_id)],
        }


def _exact_zero(residual) -> bool:
    flag = getattr(residual, "is_zero", None)
    if flag is not None:
        return bool(flag)
    return residual == 0


def _exact_magnitude(residual) -> float:
    if isinstance(residual, Polynomial):
        if residual.is_zero:
            return 0.0
        return max(abs(float(c)) for c in residual.terms.values())
    if isinstance(residual, ct.VectorFieldOp):
        worst = 0.0
        for c in residual.coeffs.values():
            worst = max(worst, _exact_magnitude(c))
        return worst
    try:
        return abs(float(residual))
    except (TypeError, OverflowError):
        return math.inf


class _Recorder:
    def __init__(self, config: SuiteConfig):
        self.config = config
        self.records: list[CheckRecord] = []

    def exact(self, check_id: str, residual, params: dict | None = None):
        zero = _exact_zero(residual)
        self.records.append(CheckRecord(
            check_id=check_id, params=params or {},
            residual=0.0 if zero else max(_exact_magnitude(residual),
                                          math.ulp(0.0)),
            exact=True, tolerance=None,
            status="pass" if zero else "fail"))

    def exact_all(self, check_id: str, residuals, params: dict | None = None):
        """One record for a family of exact residuals; every member must be
        identically zero (summing first could let nonzero members cancel)."""
        worst = 0.0
        for residual in residuals:
            if not _exact_zero(residual):
                worst = max(worst, _exact_magnitude(residual), math.ulp(0.0))
        self.records.append(CheckRecord(
            check_id=check_id, params=params or {}, residual=worst,
            exact=True, tolerance=None,
            status="pass" if worst == 0.0 else "fail"))

    def gated(self, check_id: str, residual: float, tol_key: str,
              params: dict | None = None):
        tol = self.config.tolerance(tol_key)
        self.records.append(CheckRecord(
            check_id=check_id, params=params or {}, residual=float(residual),
            exact=False, tolerance=tol,
            status="pass" if residual <= tol else "fail"))

    def diagnostic(self, check_id: str, residual: float,
                   params: dict | None = None):
        self.records.append(CheckRecord(
            check_id=check_id, params=params or {}, residual=float(residual),
            exact=False, tolerance=None, status="diagnostic"))


# ---------------------------------------------------------------------------
# the four verification suites plus the diagnostics block
# ---------------------------------------------------------------------------

def run_groups(config: SuiteConfig) -> SuiteReport:
    rec = _Recorder(config)
    started = time.perf_counter()

    for group in ("h3", "e2"):
        report = gr.axiom_suite(group, config.group_samples, config.seed)
        for axiom, residual in sorted(report.max_residuals.items()):
            params = {"samples": config.group_samples, "axiom": axiom}
            if group == "h3":
                rec.exact(f"h3_axiom_{axiom}",
                          Fraction(0) if report.exact or residual == 0.0
                          else Fraction(1), params)
            else:
                rec.gated(f"e2_axiom_{axiom}", residual, "groups/e2_axioms",
                          params)

    sample = gr.H3AlgebraElement(Fraction(1), Fraction(0), Fraction(1))
    rec.exact("h3_exp_closed_form",
              Fraction(0) if gr.h3_exp(sample) == gr.H3Element(1, Fraction(1, 2), 1)
              else Fraction(1), {"element": "(1,0,1)"})
    probe = gr.H3AlgebraElement(Fraction(3, 2), Fraction(-1, 7), Fraction(5))
    mat = probe.to_matrix()
    series = gr.Matrix3.identity() + mat + (mat * mat) * Fraction(1, 2)
    rec.exact("h3_exp_matches_series", gr.h3_exp(probe).to_matrix() - series)
    rec.exact("h3_exp_log_roundtrip",
              Fraction(0) if gr.h3_log(gr.h3_exp(probe)) == probe else Fraction(1))
    rec.exact("h3_algebra_cube_zero", mat * mat * mat)

    comm = gr.commutator
    rec.exact("h3_commutator_ab", comm(gr.H3_BASIS_A, gr.H3_BASIS_B))
    rec.exact("h3_commutator_bc", comm(gr.H3_BASIS_B, gr.H3_BASIS_C))
    rec.exact("h3_commutator_ac_minus_b",
              comm(gr.H3_BASIS_A, gr.H3_BASIS_C) - gr.H3_BASIS_B)
    rec.exact("e2_commutator_xy", comm(gr.E2_BASIS_X, gr.E2_BASIS_Y))
    rec.exact("e2_commutator_rot_x_minus_y",
              comm(gr.E2_BASIS_ROT, gr.E2_BASIS_X) - gr.E2_BASIS_Y)
    rec.exact("e2_commutator_y_rot_minus_x",
              comm(gr.E2_BASIS_Y, gr.E2_BASIS_ROT) - gr.E2_BASIS_X)

    for group in ("h3", "e2"):
        worst = 0.0
        for index in (1, 2, 3):
            fd = gr.generators_at_identity(group, index)
            exact = gr.EXACT_GENERATORS[(group, index)]
            exact_float = gr.Matrix3([[float(e) for e in r] for r in exact.rows])
            worst = max(worst, fd.max_abs_diff(exact_float))
        rec.gated(f"{group}_generators_fd", worst, "groups/generator_fd",
                  {"step": gr.GENERATOR_FD_STEP})

    t = Fraction(5, 3)
    shift = gr.e2_exp_translation(t, "x") - gr.Matrix3.identity()
    rec.exact("e2_translation_nilpotent", shift * shift, {"t": "5/3"})
    a = gr.e2_exp_translation(Fraction(3, 7), "x")
    b = gr.e2_exp_translation(Fraction(-2, 5), "y")
    rec.exact("e2_translations_commute", a * b - b * a)
    moved = gr.e2_exp_translation(t, "y").apply((Fraction(2), Fraction(3), Fraction(1)))
    rec.exact("e2_translation_shift_action",
              Fraction(0) if moved == (Fraction(2), Fraction(3) + t, Fraction(1))
              else Fraction(1))

    turned = gr.e2_apply(gr.E2Element(0.0, 0.0, math.pi / 2), (1.0, 0.0))
    rec.gated("e2_apply_rotation",
              max(abs(turned[0] - 0.0), abs(turned[1] - 1.0)),
              "groups/e2_apply_rotation", {"theta": "pi/2"})

    return SuiteReport("groups", rec.records, config.echo(),
                       time.perf_counter() - started)


def run_hermite(config: SuiteConfig) -> SuiteReport:
    rec = _Recorder(config)
    started = time.perf_counter()
    max_n = config.hermite_max_n

    rec.exact_all(
        "rodrigues_vs_recurrence",
        (hb.hermite_rodrigues(n, max_n) - hb.hermite_recurrence(n)
         for n in range(max_n + 1)),
        {"max_n": max_n})

    for which in ("ode_A2", "recursion_A3", "diffrel_A4"):
        rec.exact_all(
            which,
            (hb.verify_hermite_identity(which, n, max_n)
             for n in range(max_n + 1)),
            {"max_n": max_n})

    rec.exact_all(
        "parity",
        (hb.hermite_rodrigues(n, max_n).substitute({"x": -X})
         - (-1) ** n * hb.hermite_rodrigues(n, max_n)
         for n in range(max_n + 1)),
        {"max_n": max_n})

    rec.exact("genfunc_A5", hb.hermite_genfunc_check(config.genfunc_order),
              {"order": config.genfunc_order})
    rec.exact("disentangle", hb.disentangle_check(config.disentangle_order),
              {"order": config.disentangle_order})

    rec.exact_all(
        "orthonormality",
        (hb.verify_hermite_identity("orthonormality", n)
         for n in range(config.orthonormality_max + 1)),
        {"max_n": config.orthonormality_max})

    rec.exact_all(
        "anticommutator_spectrum",
        (hb.verify_hermite_identity("anticommutator", n)
         for n in range(config.spectrum_max + 1)),
        {"max_n": config.spectrum_max})

    def ladder_residuals():
        for k in range(13):
            f = hb.GaussianWeighted(X ** k)
            comm = (hb.apply_word(("lower", "raise"), f)
                    - hb.apply_word(("raise", "lower"), f))
            yield (comm - 2 * f).poly
    rec.exact_all("ladder_commutator_identity", ladder_residuals(),
                  {"max_degree": 12})

    def raising_residuals():
        for n in range(config.orthonormality_max + 1):
            poly_residual, norm_residual = hb.raising_consistency_residual(n)
            yield poly_residual
            yield norm_residual
    rec.exact_all("raising_consistency", raising_residuals(),
                  {"max_n": config.orthonormality_max})

    dim = config.discrete_dim
    anti_matrix = hb.discrete_anticommutator(dim)
    bad = Fraction(0)
    for i in range(dim):
        for j in range(dim):
            entry = anti_matrix[i, j]
            if i == j and i <= dim - 2:
                bad += abs(entry.as_fraction() - (2 * i + 1))
            elif i != j:
                bad += abs(entry.coeff)
    rec.exact("discrete_anticommutator_diagonal", bad, {"dimension": dim})

    comm_matrix = hb.discrete_commutator(dim)
    bad = Fraction(0)
    for i in range(dim):
        for j in range(dim):
            entry = comm_matrix[i, j]
            if i == j and i <= dim - 2:
                bad += abs(entry.as_fraction() - 1)
            elif i != j:
                bad += abs(entry.coeff)
    rec.exact("discrete_commutator_identity", bad, {"dimension": dim})

    return SuiteReport("hermite", rec.records, config.echo(),
                       time.perf_counter() - started)


def run_bessel(config: SuiteConfig) -> SuiteReport:
    rec = _Recorder(config)
    started = time.perf_counter()
    ev = eu.BesselEval()

    for which in eu.BESSEL_IDENTITIES:
        worst = 0.0
        worst_small_r = 0.0
        for n in config.bessel_orders:
            for r in config.bessel_r_grid:
                residual = eu.verify_bessel_identity(which, n, r, ev)
                if which == "ode_A6" and r < 0.2:
                    worst_small_r = max(worst_small_r, residual)
                else:
                    worst = max(worst, residual)
        params = {"orders": list(config.bessel_orders),
                  "r_grid": list(config.bessel_r_grid)}
        rec.gated(which, worst, "bessel/identity", params)
        if which == "ode_A6" and worst_small_r:
            rec.gated("ode_A6_small_r", worst_small_r,
                      "bessel/identity_ode_small_r", {"r": 0.1})

    worst = 0.0
    for op in ("raise", "lower"):
        for n in range(0, 6):
            for r in (0.2, 1.0, 4.0, 10.0):
                worst = max(worst, eu.polar_numeric_crosscheck(op, n, r, 0.4, ev))
    rec.gated("ladder_crosscheck_fd", worst, "bessel/ladder_crosscheck",
              {"orders": "0..5", "step": 1e-5})

    f = eu.CylFunc([eu.CylTerm(0, 1.5), eu.CylTerm(4, -2j), eu.CylTerm(-1, 1.0)])
    round_trip_up = eu.apply_polar_op("raise", eu.apply_polar_op("lower", f))
    round_trip_down = eu.apply_polar_op("lower", eu.apply_polar_op("raise", f))
    rec.exact("ladder_roundtrip_identity",
              Fraction(0) if round_trip_up == f and round_trip_down == f
              else Fraction(1))

    eigen = eu.apply_polar_op("lz", eu.CylFunc.basis(3, 2.0))
    rec.exact("lz_eigenvalue",
              Fraction(0) if eigen == eu.CylFunc([eu.CylTerm(3, 6.0)])
              else Fraction(1), {"order": 3})

    wide = eu.BesselEval(max_order=max(config.bessel_orders)
                         + config.genfunc_terms + 5)
    worst = 0.0
    for n in (0, 1, 2):
        for r in (1.0, 2.0, 5.0):
            for phi in (0.0, 0.7, math.pi / 3):
                for t in (0.5, -0.25, 0.5j, -0.5j):
                    worst = max(worst, eu.genfunc_a11_check(
                        n, r, phi, t, config.genfunc_terms, wide))
    rec.gated("genfunc_A11", worst, "bessel/genfunc_A11",
              {"terms": config.genfunc_terms, "t": "[0.5, -0.25, 0.5j, -0.5j]"})

    root = eu.find_j0_root(ev)
    rec.gated("j0_root_bisection", abs(ev.j(0, root)), "bessel/j0_root",
              {"root": root})

    double = eu.BesselEval(max_terms=400)
    worst = 0.0
    for n in (0, 5, 10, 20):
        for r in (0.1, 1.0, 5.0, 15.0, 30.0):
            a, b = ev.j(n, r), double.j(n, r)
            worst = max(worst, abs(a - b) / max(abs(a), 1e-300))
    rec.gated("selfconsistency_double_terms", worst, "bessel/selfconsistency",
              {"max_terms": [200, 400]})

    return SuiteReport("bessel", rec.records, config.echo(),
                       time.perf_counter() - started)


def run_contraction(config: SuiteConfig) -> SuiteReport:
    rec = _Recorder(config)
    started = time.perf_counter()
    ev = eu.BesselEval()

    lx, ly, lz = (ct.angular_momentum_x(), ct.angular_momentum_y(),
                  ct.angular_momentum_z())
    rec.exact("so3_commutator_xy", ct.vf_commutator(lx, ly) + lz)
    rec.exact("so3_commutator_yz", ct.vf_commutator(ly, lz) + lx)
    rec.exact("so3_commutator_zx", ct.vf_commutator(lz, lx) + ly)

    for R in (1, 10, 1000):
        rec.exact_all(f"scaled_commutators_R{R}",
                      ct.scaled_commutator_check(R).values(), {"R": R})

    rec.exact_all("contracted_relations",
                  ct.contracted_relations_check().values())

    rec.exact_all(
        "jacobi_identity",
        (ct.vf_commutator(a, ct.vf_commutator(b, c))
         + ct.vf_commutator(b, ct.vf_commutator(c, a))
         + ct.vf_commutator(c, ct.vf_commutator(a, b))
         for a, b, c in ((lx, ly, lz), (lx, lz, ly), (ly, lz, lx))))

    R_list = [Fraction(R) for R in config.contraction_R]
    rate_polys = {"xxyyyz": X ** 2 * Y ** 3 * Z, "xyz": X * Y * Z,
                  "y5z": Y ** 5 * Z}
    worst_band = 0.0
    for name, poly in rate_polys.items():
        residuals = ct.contraction_residual(poly, R_list)
        values = [residuals[R] for R in R_list]
        for a, b in zip(values, values[1:]):
            if a == 0:
                continue
            worst_band = max(worst_band, abs(float(b / a) - 0.5))
    rec.gated("contraction_rate_band", worst_band, "contraction/rate_band",
              {"R": list(config.contraction_R),
               "polynomials": sorted(rate_polys)})

    z_free = ct.contraction_residual(X ** 2 * Y, R_list)
    rec.exact("contraction_z_free_zero", sum(z_free.values(), Fraction(0)),
              {"polynomial": "x^2 y"})

    ladder = ct.polar_ladder_limit(0, 1.0, 0.0,
                                   [float(R) for R in config.contraction_R], ev)
    values = [ladder[float(R)] for R in config.contraction_R]
    worst_ratio = max(b / a for a, b in zip(values, values[1:]))
    rec.gated("polar_ladder_rate", worst_ratio, "contraction/polar_ladder_rate",
              {"n": 0, "r": 1.0})
    monotone_worst = 0.0
    for n in (1, 2):
        res = ct.polar_ladder_limit(n, 2.0, 0.7,
                                    [float(R) for R in config.contraction_R], ev)
        seq = [res[float(R)] for R in config.contraction_R]
        monotone_worst = max(monotone_worst,
                             max(b / a for a, b in zip(seq, seq[1:])))
    rec.gated("polar_ladder_monotone", monotone_worst, "contraction/monotone",
              {"orders": [1, 2], "r": 2.0})

    worst = 0.0
    for x in (-0.9, -0.3, 0.0, 0.4, 0.99):
        worst = max(worst,
                    abs(ct.assoc_legendre(2, 0, x) - (3 * x * x - 1) / 2),
                    abs(ct.assoc_legendre(2, 1, x)
                        - 3 * x * math.sqrt(1 - x * x)))
    rec.gated("legendre_closed_forms", worst,
              "contraction/legendre_closed_forms", {"degree": 2})

    worst_ratio = 0.0
    for r in (1.0, 2.0, 4.0):
        seq = [ct.legendre_ode_residual(l, 0, r, ev) for l in config.legendre_l]
        worst_ratio = max(worst_ratio,
                          max(b / a for a, b in zip(seq, seq[1:])))
    rec.gated("legendre_ode_rate_m0", worst_ratio,
              "contraction/legendre_ode_rate",
              {"l": list(config.legendre_l), "r": [1.0, 2.0, 4.0]})
    monotone_worst = 0.0
    for m in (1, 2, 3):
        seq = [ct.legendre_ode_residual(l, m, 2.0, ev) for l in config.legendre_l]
        monotone_worst = max(monotone_worst,
                             max(b / a for a, b in zip(seq, seq[1:])))
    rec.gated("legendre_ode_monotone", monotone_worst, "contraction/monotone",
              {"m": [1, 2, 3], "r": 2.0})

    worst = 0.0
    for m in range(4):
        for r in (0.5, 1.0, 2.0, 5.0, 8.0):
            worst = max(worst, ct.bessel_operator_residual(m, r, ev))
    rec.gated("bessel_operator_exact_form", worst, "contraction/bessel_operator",
              {"m": "0..3"})

    worst_margin = 0.0
    l_final = max(config.legendre_l)
    for m in range(4):
        for r in (1.0, 2.0, 4.0):
            errs = ct.mehler_heine_check(m, r, list(config.legendre_l), ev)
            seq = [errs[l] for l in config.legendre_l]
            gate = 0.02 * abs(ev.j(m, r).real) + 0.005
            worst_margin = max(worst_margin, seq[-1] / gate)
            # tail must be decreasing as well
            if any(b >= a for a, b in zip(seq, seq[1:])):
                worst_margin = math.inf
    rec.gated("mehler_heine_margin", worst_margin,
              "contraction/mehler_heine_margin",
              {"l_final": l_final, "m": "0..3", "r": [1.0, 2.0, 4.0]})

    return SuiteReport("contraction", rec.records, config.echo(),
                       time.perf_counter() - started)


def run_diagnostics(config: SuiteConfig) -> SuiteReport:
    """Recorded-only block: residuals with no pass/fail semantics."""
    rec = _Recorder(config)
    started = time.perf_counter()
    wide = eu.BesselEval(max_order=config.genfunc_terms + 10)

    for n, r, phi, t in ((0, 2.0, 0.5, 0.2), (1, 3.0, 1.0, 0.1)):
        report = eu.genfunc_a12_diagnostic(n, r, phi, t,
                                           config.genfunc_terms, wide)
        params = {"n": n, "r": r, "phi": phi, "t": t}
        rec.diagnostic(f"a12_catalog_form_n{n}",
                       report["residual_catalog_form"], params)
        rec.diagnostic(f"a12_substituted_form_n{n}",
                       report["residual_substituted_form"], params)

    literal = eu.genfunc_a11_literal_diagnostic(0, 2.0, 0.7, 0.3,
                                                config.genfunc_terms, wide)
    rec.diagnostic("a11_literal_form", literal["residual_literal_form"],
                   {"n": 0, "r": 2.0, "phi": 0.7, "t": 0.3})

    flow = eu.flow_solve(2.0, 0.5, 0.3, config.flow_steps)
    params = {"r0": 2.0, "phi0": 0.5, "t": 0.3, "steps": config.flow_steps}
    rec.diagnostic("flow_vs_closed_form_r", flow.r_discrepancy, params)
    rec.diagnostic("flow_vs_closed_form_phi", flow.phi_discrepancy, params)
    rec.diagnostic("flow_q_drift", flow.q_drift, params)
    rec.diagnostic("flow_integrator_selfcheck", flow.integrator_error, params)

    return SuiteReport("diagnostics", rec.records, config.echo(),
                       time.perf_counter() - started)


_RUNNERS = {
    "groups": run_groups,
    "hermite": run_hermite,
    "bessel": run_bessel,
    "contraction": run_contraction,
    "diagnostics": run_diagnostics,
}


def run_suite(name: str, config: SuiteConfig) -> list[SuiteReport]:
    """Run one named suite, or all four plus the diagnostics block."""
    if name == "all":
        return [_RUNNERS[s](config) for s in
                ("groups", "hermite", "bessel", "contraction", "diagnostics")]
    if name not in _RUNNERS:
        raise ConfigError(f"unknown suite {name!r}")
    return [_RUNNERS[name](config)]


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def reports_to_document(reports: list[SuiteReport]) -> dict:
    if len(reports) == 1:
        return reports[0].to_dict()
    return {"suites": [r.to_dict() for r in reports]}


def emit_json(reports: list[SuiteReport]) -> str:
    return json.dumps(reports_to_document(reports), sort_keys=True, indent=2) + "\n"


def _params_text(params: dict) -> str:
    return ";".join(f"{k}={params[k]}" for k in sorted(params))


def emit_csv(reports: list[SuiteReport]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, delimiter=",", lineterminator="\n")
    writer.writerow(["suite", "check_id", "params", "residual",
                     "exact_zero", "tolerance", "status"])
    for report in reports:
        for record in sorted(report.records, key=lambda r: r.check_id):
            writer.writerow([
                report.suite, record.check_id, _params_text(record.params),
                repr(record.residual),
                str(record.exact and record.residual == 0.0).lower(),
                "" if record.tolerance is None else repr(record.tolerance),
                record.status,
            ])
    return buffer.getvalue()


def emit_text(reports: list[SuiteReport]) -> str:
    lines = []
    for report in reports:
        lines.append(f"== suite {report.suite} ==")
        for record in sorted(report.records, key=lambda r: r.check_id):
            if record.status == "diagnostic":
                lines.append(f"DIAG  {record.check_id}: residual={record.residual:.6e}")
            elif record.exact:
                label = "exact zero" if record.residual == 0.0 else \
                    f"NONZERO ~{record.residual:.3e}"
                lines.append(f"{record.status.upper():4}  {record.check_id}: {label}")
            else:
                lines.append(
                    f"{record.status.upper():4}  {record.check_id}: "
                    f"residual={record.residual:.6e} tol={record.tolerance:.1e}")
        counts = {"pass": 0, "fail": 0, "diagnostic": 0}
        for record in report.records:
            counts[record.status] += 1
        lines.append(f"-- {counts['pass']} passed, {counts['fail']} failed, "
                     f"{counts['diagnostic']} diagnostic")
    return "\n".join(lines) + "\n"


EMITTERS = {"json": emit_json, "csv": emit_csv, "text": emit_text}
