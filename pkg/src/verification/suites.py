import json
import logging
import math
from dataclasses import asdict, dataclass
from datetime import datetime
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional, Sequence

import numpy as np
import pandas as pd

from src.arith.exact import Polynomial
from src.bessel.bessel_functions import bessel_j, bessel_j_integral, bessel_product
from src.closed_forms.closed_forms import (ClosedFormConfig, DEFAULT_CLOSED_FORM_CONFIG,
                                           b_first, b_first_binomial, b_first_table, b_second,
                                           b_second_binomial, b_second_table, f_closed, g_closed,
                                           kapteyn_operator, p_polynomial,
                                           pochhammer_identity_holds, s1_closed,
                                           sinh_power_derivative, sinh_power_derivative_binomial)
from src.errors import DomainError, KapteynError
from src.series.series_eval import (DEFAULT_SUM_CONFIG, SumConfig, eval_kapteyn1, eval_kapteyn2,
                                    eval_s1, power_weight)
from src.transforms import first_kind, second_kind
from src.transforms.records import KapteynFirstCoeffs, KapteynSecondCoeffs, TaylorCoeffs

logger = logging.getLogger(__name__)

SUITES = ("biortho1", "biortho2", "lemma", "closed-vs-sum", "roundtrip",
          "bessel-xcheck", "operator", "tables")

# Known numerators, lowest degree first.
REFERENCE_P = {
    0: (1,),
    1: (1, 9),
    2: (1, 54, 225),
    3: (1, 243, 4131, 11025),
}
REFERENCE_G = {
    1: (1, (1, 0, 1)),
    2: (1, (1, 0, 37, 0, 118, 0, 27)),
    3: (1, (1, 0, 217, 0, 5036, 0, 23630, 0, 22910, 0, 2250)),
}
REFERENCE_S1_M2 = (Fraction(1, 256), 2, (64, 0, 592, 0, 472, 0, 27), Fraction(13, 2))


@dataclass
class CheckResult:
    """One cell of a verification suite"""
    suite: str
    case: str
    passed: bool
    detail: str = ""
    error: float = 0.0


class VerificationReport:
    """Collected checks of one or more suites"""

    def __init__(self, suite: str):
        self.suite = suite
        self.checks: List[CheckResult] = []

    def add(self, case: str, passed: bool, detail: str = "", error: float = 0.0):
        self.checks.append(CheckResult(self.suite, case, bool(passed), detail, float(error)))
        if not passed:
            logger.warning("%s %s failed: %s", self.suite, case, detail)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def failures(self) -> List[CheckResult]:
        return [check for check in self.checks if not check.passed]

    def generate_report(self) -> Dict[str, Any]:
        return {
            'suite': self.suite,
            'passed': self.passed,
            'total': len(self.checks),
            'failures': len(self.failures()),
            'checks': [asdict(check) for check in self.checks],
            'timestamp': datetime.now().isoformat(),
        }

    def generate_text(self) -> str:
        """Plain-text summary, failures listed with their coordinates"""
        status = "PASS" if self.passed else "FAIL"
        lines = [f"Verification: {self.suite}",
                 f"Status: {status} ({len(self.checks) - len(self.failures())}/{len(self.checks)} checks)"]
        for check in self.failures():
            lines.append(f"  FAILED {check.suite} {check.case}: {check.detail}")
        return "\n".join(lines) + "\n"

    def export_report(self, format: str = 'json', filepath: Optional[str] = None) -> str:
        """Export the report as json, csv or pretty text"""
        if format == 'json':
            text = json.dumps(self.generate_report(), indent=4)
        elif format == 'csv':
            df = pd.DataFrame([asdict(check) for check in self.checks],
                              columns=['suite', 'case', 'passed', 'detail', 'error'])
            text = df.to_csv(index=False)
        elif format == 'pretty':
            text = self.generate_text()
        else:
            raise ValueError(f"Unsupported format: {format}")
        if filepath:
            with open(filepath, 'w') as f:
                f.write(text)
        return text


def _within(value: float, reference: float, tol: float) -> bool:
    return abs(value - reference) <= tol * max(1.0, abs(reference))


def _defect_detail(defects, labels) -> str:
    first = defects[0]
    coords = ", ".join(f"{name}={value}" for name, value in zip(labels, first[:-1]))
    return f"{len(defects)} defects, first at {coords}: {first[-1]}"


def verify_biortho1(nus: Iterable[int], s_max: int) -> VerificationReport:
    """sum_j u_{2j+p, j-k} v_{2s+p, s-j} = delta_{k,s} on both parity chains."""
    report = VerificationReport("biortho1")
    for nu in nus:
        for parity in (0, 1):
            defects = first_kind.biorthogonality_defects(nu, s_max, parity)
            report.add(f"nu={nu} parity={parity} s<={s_max}", not defects,
                       _defect_detail(defects, ("k", "s")) if defects else "")
    return report


def verify_biortho2(mus: Iterable[int], nus: Sequence[int], s_max: int) -> VerificationReport:
    report = VerificationReport("biortho2")
    for mu in mus:
        for nu in nus:
            defects = second_kind.biorthogonality_defects(mu, nu, s_max)
            report.add(f"mu={mu} nu={nu} s<={s_max}", not defects,
                       _defect_detail(defects, ("j", "s")) if defects else "")
    return report


def verify_lemma(r_max: int, m_max: int) -> VerificationReport:
    """m-th derivative of sinh^r at 0 against its binomial sum."""
    report = VerificationReport("lemma")
    for r in range(r_max + 1):
        mismatches = [m for m in range(m_max + 1)
                      if sinh_power_derivative(r, m) != sinh_power_derivative_binomial(r, m)]
        report.add(f"r={r} m<={m_max}", not mismatches,
                   f"mismatch at m={mismatches}" if mismatches else "")
    return report


def verify_closed_vs_sum(ps: Iterable[int], zs: Sequence[float], tol: float = 1e-9,
                         a_values: Sequence[float] = (),
                         sum_cfg: SumConfig = DEFAULT_SUM_CONFIG,
                         cf_cfg: ClosedFormConfig = DEFAULT_CLOSED_FORM_CONFIG) -> VerificationReport:
    """Closed forms against direct Kapteyn summation.

    f_p is checked at every |z| < 1, g_p only at |z| < 1/2, S1(p, a) at each a.
    """
    report = VerificationReport("closed-vs-sum")
    for p in ps:
        weight = power_weight(p)
        f, g = f_closed(p, cf_cfg), g_closed(p, cf_cfg)
        for z in zs:
            if abs(z) < 1:
                _compare(report, f"f_{p}({z})", f.evaluate(z),
                         lambda: eval_kapteyn1(weight, 0, z, sum_cfg).value, tol)
            if abs(z) < 0.5:
                _compare(report, f"g_{p}({z})", g.evaluate(z),
                         lambda: eval_kapteyn2(weight, None, 0, 0, z, sum_cfg).value, tol)
        if a_values:
            s1 = s1_closed(p, cf_cfg)
            for a in a_values:
                _compare(report, f"S1({p}, {a})", s1.evaluate(a),
                         lambda: eval_s1(p, a, sum_cfg).value, tol)
    return report


def _compare(report: VerificationReport, case: str, reference: float, summed, tol: float):
    try:
        value = summed()
    except KapteynError as e:
        report.add(case, False, str(e), math.inf)
        return
    error = abs(value - reference)
    report.add(case, _within(value, reference, tol),
               f"closed {reference!r} vs sum {value!r}", error)


def _random_fractions(rng: np.random.Generator, length: int) -> List[Fraction]:
    nums = rng.integers(-50, 51, size=length)
    dens = rng.integers(1, 30, size=length)
    return [Fraction(int(n), int(d)) for n, d in zip(nums, dens)]


def verify_roundtrip(samples: int = 100, max_len: int = 20, seed: int = 0) -> VerificationReport:
    """Both transform pairs are exact mutual inverses on random rational data."""
    report = VerificationReport("roundtrip")
    rng = np.random.default_rng(seed)
    for i in range(samples):
        length = int(rng.integers(1, max_len + 1))
        values = _random_fractions(rng, length)
        nu = int(rng.integers(0, 4))
        mu = int(rng.integers(0, 3))
        tc = TaylorCoeffs.of(values)

        back = first_kind.kapteyn1_to_taylor(first_kind.taylor_to_kapteyn1(tc, nu))
        report.add(f"sample={i} taylor->kapteyn1->taylor nu={nu}", back == tc)
        kc1 = KapteynFirstCoeffs.of(nu, values)
        again = first_kind.taylor_to_kapteyn1(first_kind.kapteyn1_to_taylor(kc1), nu)
        report.add(f"sample={i} kapteyn1->taylor->kapteyn1 nu={nu}", again == kc1)

        padded = TaylorCoeffs.of(values + [Fraction(0)] * (length % 2))
        back2 = second_kind.kapteyn2_to_taylor(second_kind.taylor_to_kapteyn2(tc, mu, nu))
        report.add(f"sample={i} taylor->kapteyn2->taylor mu={mu} nu={nu}", back2 == padded)
        half = (length + 1) // 2
        kc2 = KapteynSecondCoeffs.of(mu, nu, values[:half], (values[half:] + values)[:half])
        again2 = second_kind.taylor_to_kapteyn2(second_kind.kapteyn2_to_taylor(kc2), mu, nu)
        report.add(f"sample={i} kapteyn2->taylor->kapteyn2 mu={mu} nu={nu}", again2 == kc2)
    return report


def verify_bessel_xcheck(n_max: int = 8, zs: Sequence[float] = (0.0, 0.5, 1.0, 1.5, 2.0),
                         tol: float = 1e-9, product_tol: float = 1e-11) -> VerificationReport:
    """Series against quadrature for J_n, and the product series against a product of series."""
    report = VerificationReport("bessel-xcheck")
    for n in range(n_max + 1):
        for z in zs:
            series, integral = bessel_j(n, z), bessel_j_integral(n, z)
            report.add(f"J_{n}({z})", abs(series - integral) <= tol,
                       f"series {series!r} vs integral {integral!r}", abs(series - integral))
    orders = (0.0, 1.0, 2.0, 2.5)
    for mu in orders:
        for nu in orders:
            for z in zs:
                product = bessel_product(mu, nu, z)
                separate = bessel_j(mu, z) * bessel_j(nu, z)
                report.add(f"J_{mu}J_{nu}({z})", abs(product - separate) <= product_tol,
                           f"product {product!r} vs {separate!r}", abs(product - separate))
    return report


def verify_operator(p_max: int = 4, order: int = 30,
                    cf_cfg: ClosedFormConfig = DEFAULT_CLOSED_FORM_CONFIG) -> VerificationReport:
    """(1-z^2)^-1 (z d/dz)^2 f_p reproduces the Taylor coefficients of f_(p+1)."""
    report = VerificationReport("operator")
    for p in range(p_max + 1):
        image = kapteyn_operator(f_closed(p, cf_cfg).taylor(order))
        expected = f_closed(p + 1, cf_cfg).taylor(order)
        bad = [j for j in range(order) if image.coeffs[j] != expected.coeffs[j]]
        report.add(f"p={p} order={order}", not bad, f"differs at z^{bad[0]}" if bad else "")
    return report


def verify_tables(cf_cfg: ClosedFormConfig = DEFAULT_CLOSED_FORM_CONFIG,
                  s_max: int = 20) -> VerificationReport:
    """Reproduce the known closed forms, numerator polynomials and coefficient formulas."""
    report = VerificationReport("tables")

    f0 = f_closed(0, cf_cfg)
    report.add("f_0", (f0.constant, f0.prefactor, f0.z_power, f0.numerator, f0.exponent)
               == (Fraction(1, 2), Fraction(1, 2), 0, Polynomial.from_ints(1), 1), f0.render())
    for p in range(1, 5):
        f = f_closed(p, cf_cfg)
        expected = Polynomial.from_ints(*REFERENCE_P[p - 1])
        report.add(f"f_{p}", (f.prefactor, f.z_power, f.numerator, f.exponent)
                   == (Fraction(1, 2), 1, expected, 3 * p + 1), f.render())

    for n, coeffs in REFERENCE_P.items():
        poly = p_polynomial(n, cf_cfg)
        report.add(f"P_{n}", poly == Polynomial.from_ints(*coeffs), poly.render())

    g0 = g_closed(0, cf_cfg)
    report.add("g_0", (g0.constant, g0.prefactor, g0.numerator, g0.exponent)
               == (Fraction(1, 2), Fraction(1, 2), Polynomial.from_ints(1), Fraction(1, 2)),
               g0.render())
    for p, (prefactor, coeffs) in REFERENCE_G.items():
        g = g_closed(p, cf_cfg)
        report.add(f"g_{p}", (g.prefactor, g.z_power, g.numerator, g.exponent)
                   == (prefactor, 2, Polynomial.from_ints(*coeffs), Fraction(6 * p + 1, 2)),
                   g.render())

    prefactor, z_power, coeffs, exponent = REFERENCE_S1_M2
    s1 = s1_closed(2, cf_cfg)
    report.add("S1 m=2", (s1.prefactor, s1.z_power, s1.numerator, s1.exponent)
               == (prefactor, z_power, Polynomial.from_ints(*coeffs), exponent), s1.render())

    for p in range(5):
        first_bad = [s for s in range(s_max + 1)
                     if not b_first(p, s) == b_first_table(p, s) == b_first_binomial(p, s)]
        report.add(f"b_s({p}) s<={s_max}", not first_bad, f"mismatch at s={first_bad}" if first_bad else "")
        second_bad = [s for s in range(s_max + 1)
                      if not b_second(p, s) == b_second_table(p, s) == b_second_binomial(p, s)]
        report.add(f"b_2s({p}) s<={s_max}", not second_bad,
                   f"mismatch at s={second_bad}" if second_bad else "")
        poch_bad = [s for s in range(s_max + 1) if not pochhammer_identity_holds(p, s)]
        report.add(f"pochhammer p={p}", not poch_bad, f"fails at s={poch_bad}" if poch_bad else "")
    return report


def run_suite(name: str, **options: Any) -> VerificationReport:
    """Dispatch a suite by its command-line name."""
    runners = {
        "biortho1": verify_biortho1,
        "biortho2": verify_biortho2,
        "lemma": verify_lemma,
        "closed-vs-sum": verify_closed_vs_sum,
        "roundtrip": verify_roundtrip,
        "bessel-xcheck": verify_bessel_xcheck,
        "operator": verify_operator,
        "tables": verify_tables,
    }
    if name not in runners:
        raise DomainError(f"Unknown verification suite {name!r}; choose from {', '.join(SUITES)}")
    logger.info("running verification suite %s", name)
    return runners[name](**options)
