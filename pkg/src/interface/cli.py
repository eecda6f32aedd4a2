"""
Command-line front end: convert, closed-form, eval, verify and kepler.

Exit codes: 0 success, 1 verification failure or failed exactness guard,
2 unreadable input, 3 domain or bound error (including non-convergence).
"""
import argparse
import json
import logging
import sys
from typing import Any, Callable, Dict, List, Optional, Sequence

import pandas as pd

from src.closed_forms.closed_forms import ClosedFormConfig, f_closed, g_closed, s1_closed
from src.errors import DomainError, GuardCheckFailed, NonConvergence, ParseError
from src.series.kepler import KeplerParams, kepler_bessel, kepler_newton, residual
from src.series.series_eval import (EvalReport, SumConfig, eval_kapteyn1, eval_kapteyn2, eval_s1,
                                    power_weight)
from src.transforms.first_kind import kapteyn1_to_taylor, taylor_to_kapteyn1
from src.transforms.records import (KapteynFirstCoeffs, KapteynSecondCoeffs, Mode, Record,
                                    TaylorCoeffs, record_from_json, record_to_json)
from src.transforms.second_kind import kapteyn2_to_taylor, taylor_to_kapteyn2
from src.verification.suites import SUITES, VerificationReport, run_suite

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_PARSE_ERROR = 2
EXIT_DOMAIN_ERROR = 3


def parse_int_range(text: str) -> List[int]:
    """"0..3" -> [0, 1, 2, 3]; "1,4" -> [1, 4]; "2" -> [2]."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return list(range(int(lo), int(hi) + 1))
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError as e:
        raise ParseError(f"Bad integer range {text!r}") from e


def parse_float_list(text: str) -> List[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError as e:
        raise ParseError(f"Bad number list {text!r}") from e


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--out', help='Write the result to this file instead of stdout')
    common.add_argument('--format', choices=['json', 'csv', 'pretty'], default='json',
                        help='Output format')
    common.add_argument('--tol', type=float, default=1e-12,
                        help='Summation tolerance (relative to the partial sum)')
    common.add_argument('--max-n', type=int, default=2000,
                        help='Maximum number of series terms')
    common.add_argument('-v', '--verbose', action='store_true', help='Debug logging on stderr')
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(
        description='Kapteyn series toolkit: transforms, closed forms and evaluation')
    sub = parser.add_subparsers(dest='command', required=True)

    convert = sub.add_parser('convert', parents=[common],
                             help='Convert between Taylor and Kapteyn coefficients')
    convert.add_argument('--to', choices=['taylor', 'kapteyn1', 'kapteyn2'], required=True)
    convert.add_argument('--kind', choices=['first', 'second'], default='first',
                         help='Kapteyn kind of the input when converting to taylor')
    convert.add_argument('--nu', default='0', help='Order nu of the target series')
    convert.add_argument('--mu', default='0', help='Order mu of a second-kind target')
    convert.add_argument('--input', default='-', help='Input JSON file, - for stdin')

    closed = sub.add_parser('closed-form', parents=[common], help='Generate a closed form')
    closed.add_argument('family', choices=['fp', 'gp', 's1'])
    closed.add_argument('--p', type=int, required=True, help='Power index p (m for s1)')
    closed.add_argument('--bound', type=int, default=12, help='Largest p generated')

    evaluate = sub.add_parser('eval', parents=[common], help='Sum a series numerically')
    evaluate.add_argument('series', choices=['kapteyn1', 'kapteyn2', 's1'])
    evaluate.add_argument('--z', type=float, help='Argument z')
    evaluate.add_argument('--nu', type=float, default=0.0)
    evaluate.add_argument('--mu', type=float, default=0.0)
    evaluate.add_argument('--weight', default='n^2p', help='"n^2p" (with --p)')
    evaluate.add_argument('--p', type=int, default=0)
    evaluate.add_argument('--coeffs', help='Coefficient JSON file used instead of --weight')
    evaluate.add_argument('--m', type=int, default=0, help='Power index of S1')
    evaluate.add_argument('--a', type=float, help='Argument a of S1')

    verify = sub.add_parser('verify', parents=[common], help='Run a verification suite')
    verify.add_argument('suite', choices=SUITES)
    verify.add_argument('--nu', default='0..3', help='Orders nu, e.g. 0..3')
    verify.add_argument('--mu', default='0..2', help='Orders mu, e.g. 0..2')
    verify.add_argument('--s', type=int, default=15, help='Largest index s')
    verify.add_argument('--r', type=int, default=10, help='Largest power r (lemma)')
    verify.add_argument('--m', type=int, default=14, help='Largest derivative m (lemma)')
    verify.add_argument('--p', default='0..4', help='Power indices p')
    verify.add_argument('--z', default='0.05,0.1,0.2,0.3', help='Arguments z')
    verify.add_argument('--a', default='', help='Arguments a for S1')
    verify.add_argument('--agreement', type=float, default=1e-9,
                        help='Allowed closed-form vs sum difference')
    verify.add_argument('--samples', type=int, default=100)
    verify.add_argument('--seed', type=int, default=0)

    kepler = sub.add_parser('kepler', parents=[common], help="Solve Kepler's equation")
    kepler.add_argument('--ecc', type=float, required=True, help='Eccentricity in [0, 1)')
    kepler.add_argument('--M', type=float, required=True, help='Mean anomaly in radians')
    kepler.add_argument('--method', choices=['newton', 'bessel', 'both'], default='both')
    return parser


def _read_json(path: str) -> Any:
    try:
        if path == '-':
            return json.load(sys.stdin)
        with open(path) as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        raise ParseError(f"Invalid JSON in {path}: {e}") from e
    except OSError as e:
        raise ParseError(f"Cannot read {path}: {e}") from e


def _coeff_rows(record: Record) -> pd.DataFrame:
    if isinstance(record, KapteynSecondCoeffs):
        return pd.DataFrame({'index': range(len(record)), 'a': [str(v) for v in record.a],
                             'c': [str(v) for v in record.c]})
    values = record.b if isinstance(record, TaylorCoeffs) else record.a
    return pd.DataFrame({'index': range(len(values)), 'value': [str(v) for v in values]})


def format_record(record: Record, fmt: str) -> str:
    if fmt == 'json':
        return json.dumps(record_to_json(record), indent=2) + "\n"
    if fmt == 'csv':
        return _coeff_rows(record).to_csv(index=False)
    name = {TaylorCoeffs: 'b', KapteynFirstCoeffs: 'a', KapteynSecondCoeffs: '(a, c)'}[type(record)]
    rows = _coeff_rows(record)
    lines = [f"{name}_{row['index']} = " + ", ".join(str(row[col]) for col in rows.columns[1:])
             for _, row in rows.iterrows()]
    return "\n".join(lines) + "\n"


def cmd_convert(args: argparse.Namespace) -> str:
    data = _read_json(args.input)
    if args.to == 'taylor':
        record = record_from_json(data, default_kind='kapteyn1' if args.kind == 'first' else 'kapteyn2')
        if isinstance(record, KapteynFirstCoeffs):
            result = kapteyn1_to_taylor(record)
        elif isinstance(record, KapteynSecondCoeffs):
            result = kapteyn2_to_taylor(record)
        else:
            raise ParseError("Conversion to taylor needs a kapteyn1 or kapteyn2 record")
    else:
        record = record_from_json(data, default_kind='taylor')
        if not isinstance(record, TaylorCoeffs):
            raise ParseError(f"Conversion to {args.to} needs a taylor record")
        if args.to == 'kapteyn1':
            result = taylor_to_kapteyn1(record, _order_arg(args.nu, record.mode))
        else:
            result = taylor_to_kapteyn2(record, _order_arg(args.mu, record.mode),
                                        _order_arg(args.nu, record.mode))
    logger.info("converted %d coefficients to %s", len(record), args.to)
    return format_record(result, args.format)


def _order_arg(text: str, mode: Mode):
    if mode is Mode.FLOAT:
        try:
            return float(text)
        except ValueError as e:
            raise ParseError(f"Bad order {text!r}") from e
    return text


def cmd_closed_form(args: argparse.Namespace) -> str:
    cfg = ClosedFormConfig(bound=args.bound)
    builder = {'fp': f_closed, 'gp': g_closed, 's1': s1_closed}[args.family]
    form = builder(args.p, cfg)
    if args.format == 'json':
        return json.dumps(form.to_json(), indent=2) + "\n"
    if args.format == 'csv':
        return pd.DataFrame({'index': range(len(form.numerator.coeffs)),
                             'value': form.numerator.to_json()}).to_csv(index=False)
    return form.render() + "\n"


def _sequence_fn(values: Sequence) -> Callable[[int], float]:
    return lambda n: float(values[n]) if n < len(values) else 0.0


def cmd_eval(args: argparse.Namespace) -> str:
    cfg = SumConfig(tol=args.tol, max_n=args.max_n)
    if args.series == 's1':
        if args.a is None:
            raise ParseError("eval s1 needs --a")
        report = eval_s1(args.m, args.a, cfg)
    else:
        if args.z is None:
            raise ParseError(f"eval {args.series} needs --z")
        if args.coeffs:
            record = record_from_json(_read_json(args.coeffs), default_kind=args.series)
        elif args.weight == 'n^2p':
            record = None
        else:
            raise ParseError(f"Unknown weight {args.weight!r}; use n^2p or --coeffs")
        if args.series == 'kapteyn1':
            if record is None:
                report = eval_kapteyn1(power_weight(args.p), args.nu, args.z, cfg)
            elif isinstance(record, KapteynFirstCoeffs):
                report = eval_kapteyn1(_sequence_fn(record.a), float(record.nu), args.z, cfg,
                                       n_terms=len(record))
            else:
                raise ParseError("eval kapteyn1 needs a kapteyn1 coefficient record")
        else:
            if record is None:
                report = eval_kapteyn2(power_weight(args.p), None, args.mu, args.nu, args.z, cfg)
            elif isinstance(record, KapteynSecondCoeffs):
                report = eval_kapteyn2(_sequence_fn(record.a), _sequence_fn(record.c),
                                       float(record.mu), float(record.nu), args.z, cfg,
                                       n_terms=len(record))
            else:
                raise ParseError("eval kapteyn2 needs a kapteyn2 coefficient record")
    return format_report(report, args.format)


def format_report(report: EvalReport, fmt: str) -> str:
    data = report.to_json()
    if fmt == 'json':
        return json.dumps(data, indent=2) + "\n"
    if fmt == 'csv':
        return pd.DataFrame([data]).to_csv(index=False)
    return (f"value = {report.value!r}\nterms_used = {report.terms_used}\n"
            f"last_term = {report.last_term!r}\ntail_estimate = {report.tail_estimate!r}\n")


def cmd_kepler(args: argparse.Namespace) -> str:
    kp = KeplerParams(args.ecc, args.M)
    result: Dict[str, Any] = {'eccentricity': kp.eccentricity, 'mean_anomaly': kp.mean_anomaly}
    if args.method in ('newton', 'both'):
        E = kepler_newton(kp, tol=args.tol)
        result['newton'] = E
        result['newton_residual'] = residual(kp, E)
    if args.method in ('bessel', 'both'):
        report = kepler_bessel(kp, SumConfig(tol=args.tol, max_n=args.max_n))
        result['bessel'] = report.to_json()
        result['bessel_residual'] = residual(kp, report.value)
    if args.method == 'both':
        result['difference'] = abs(result['newton'] - result['bessel']['value'])
    if args.format == 'json':
        return json.dumps(result, indent=2) + "\n"
    flat = {k: v for k, v in result.items() if k != 'bessel'}
    if 'bessel' in result:
        flat['bessel'] = result['bessel']['value']
        flat['terms_used'] = result['bessel']['terms_used']
    if args.format == 'csv':
        return pd.DataFrame([flat]).to_csv(index=False)
    return "".join(f"{k} = {v!r}\n" for k, v in flat.items())


def _suite_options(args: argparse.Namespace) -> Dict[str, Any]:
    cfg = SumConfig(tol=args.tol, max_n=args.max_n)
    return {
        'biortho1': lambda: {'nus': parse_int_range(args.nu), 's_max': args.s},
        'biortho2': lambda: {'mus': parse_int_range(args.mu), 'nus': parse_int_range(args.nu),
                             's_max': args.s},
        'lemma': lambda: {'r_max': args.r, 'm_max': args.m},
        'closed-vs-sum': lambda: {'ps': parse_int_range(args.p), 'zs': parse_float_list(args.z),
                                  'a_values': parse_float_list(args.a), 'tol': args.agreement,
                                  'sum_cfg': cfg},
        'roundtrip': lambda: {'samples': args.samples, 'seed': args.seed},
        'bessel-xcheck': lambda: {},
        'operator': lambda: {'p_max': max(parse_int_range(args.p))},
        'tables': lambda: {},
    }[args.suite]()


def cmd_verify(args: argparse.Namespace) -> VerificationReport:
    return run_suite(args.suite, **_suite_options(args))


def _emit(text: str, out: Optional[str]):
    if out:
        with open(out, 'w') as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format='%(levelname)s %(name)s: %(message)s', stream=sys.stderr)
    try:
        if args.command == 'verify':
            report = cmd_verify(args)
            text = report.export_report(args.format)
            _emit(text, args.out)
            return EXIT_OK if report.passed else EXIT_VERIFY_FAILED
        handlers = {'convert': cmd_convert, 'closed-form': cmd_closed_form,
                    'eval': cmd_eval, 'kepler': cmd_kepler}
        _emit(handlers[args.command](args), args.out)
        return EXIT_OK
    except ParseError as e:
        logger.error("%s", e)
        return EXIT_PARSE_ERROR
    except (DomainError, NonConvergence) as e:
        logger.error("%s", e)
        return EXIT_DOMAIN_ERROR
    except GuardCheckFailed as e:
        logger.error("exactness guard failed: %s", e)
        return EXIT_VERIFY_FAILED
