"""
Command-line front end.

``gpgcd compute`` approximates the GCD of two polynomials given on the
command line or in a JSON file; ``gpgcd bench`` runs a named instance
family and writes one report record per instance plus aggregate means.

Exit codes: 0 success, 1 parse error, 2 precondition violation or
unknown suite, 3 non-convergence (``compute`` only; the result is still
printed).
"""

import argparse
import csv
import json
import math
import re
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, fields
from typing import Optional

import numpy as np

from . import encodings as enc
from . import testgen
from .extraction import gpgcd
from .optimizer import SolverConfig
from .polynomial import UniPoly, relative_error

__all__ = [
    'SCHEMA_VERSION', 'RunReport', 'parse_coefficient', 'parse_poly',
    'format_coefficient', 'write_reports', 'read_reports', 'SUITES', 'main',
]

SCHEMA_VERSION = 1

EXIT_OK, EXIT_PARSE, EXIT_PRECONDITION, EXIT_NOT_CONVERGED = 0, 1, 2, 3

METHODS = {'newton': 'modified_newton', 'projection': 'gradient_projection'}

SUITES = ('random', 'root_circles', 'clustered', 'large_gcd',
          'multiplicity_bini', 'multiplicity_zeng')


class ParseError(ValueError):
    pass


# -- polynomial text format -------------------------------------------------

_BARE_I = re.compile(r'(^|[+-])i$')


def parse_coefficient(tok):
    """One coefficient token: ``3``, ``-2.5e-3``, ``1+2i``, ``-0.5i``, ``i``.

    Real tokens go through ``float`` (exact for up to 17 significant
    digits); complex tokens through ``complex`` with ``i`` as the unit.
    """
    t = tok.strip()
    if not t:
        raise ParseError('empty coefficient')
    try:
        if 'i' not in t.lower() or t.lower() in ('inf', '-inf', '+inf'):
            v = float(t)
        else:
            t = _BARE_I.sub(r'\g<1>1i', t.lower().replace(' ', ''))
            v = complex(t.replace('i', 'j'))
    except ValueError:
        raise ParseError(f'bad coefficient {tok!r}') from None
    if not np.isfinite(v):
        raise ParseError(f'non-finite coefficient {tok!r}')
    return v


def _pair_token(pair):
    if len(pair) != 2 or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in pair):
        raise ParseError(f'bad coefficient pair {pair!r}')
    return f'{float(pair[0])!r}{float(pair[1]):+}i'


def parse_poly(text):
    """Whitespace-separated coefficients, highest degree first.

    A list (from a JSON input file) may mix numbers, tokens and
    ``[re, im]`` pairs.
    """
    if isinstance(text, (list, tuple)):
        toks = [_pair_token(t) if isinstance(t, (list, tuple)) else str(t) for t in text]
    else:
        toks = str(text).replace(',', ' ').split()
    if not toks:
        raise ParseError('no coefficients')
    vals = [parse_coefficient(t) for t in toks]
    if any(isinstance(v, complex) for v in vals):
        return UniPoly(np.array(vals, dtype=complex), 'complex')
    return UniPoly(np.array(vals, dtype=float), 'real')


def format_coefficient(c):
    """Inverse of :func:`parse_coefficient` (``repr`` precision)."""
    c = complex(c)
    if c.imag == 0:
        return repr(c.real)
    if c.real == 0:
        return f'{c.imag!r}i'
    return f'{c.real!r}{"+" if c.imag >= 0 else "-"}{abs(c.imag)!r}i'


def format_poly(p):
    return ' '.join(format_coefficient(c) for c in p.coeffs)


# -- reports -------------------------------------------------------------------

@dataclass
class RunReport:
    schema_version: int
    suite: str
    instance_id: str
    m: int
    n: int
    d: int
    method: str
    kind: str
    perturbation: Optional[float]
    relative_gcd_error: Optional[float]
    iterations: int
    converged: bool
    termination: str
    wall_time_seconds: float


REPORT_COLUMNS = tuple(f.name for f in fields(RunReport))
_FLOAT_COLUMNS = ('perturbation', 'relative_gcd_error', 'wall_time_seconds')
_INT_COLUMNS = ('schema_version', 'm', 'n', 'd', 'iterations')
NA = 'NA'


def _finite_or_none(v):
    return float(v) if v is not None and math.isfinite(v) else None


def _aggregate(reports):
    def mean(key):
        vals = [getattr(r, key) for r in reports if getattr(r, key) is not None]
        return float(np.mean(vals)) if vals else None
    return dict(
        aggregate=True, schema_version=SCHEMA_VERSION, count=len(reports),
        converged=sum(r.converged for r in reports),
        mean_perturbation=mean('perturbation'),
        mean_relative_gcd_error=mean('relative_gcd_error'),
        mean_iterations=mean('iterations'),
        mean_wall_time_seconds=mean('wall_time_seconds'),
    )


def write_reports(reports, stream, fmt, aggregate=True):
    """Write report records; the aggregate means come last."""
    agg = _aggregate(reports) if aggregate else None
    if fmt == 'json-lines':
        for r in reports:
            stream.write(json.dumps(asdict(r), allow_nan=False) + '\n')
        if agg is not None:
            stream.write(json.dumps(agg, allow_nan=False) + '\n')
    elif fmt == 'csv':
        w = csv.writer(stream, lineterminator='\n')
        w.writerow(REPORT_COLUMNS)
        for r in reports:
            w.writerow([_csv_cell(getattr(r, c)) for c in REPORT_COLUMNS])
        if agg is not None:
            row = {c: '' for c in REPORT_COLUMNS}
            row.update(schema_version=SCHEMA_VERSION, suite='aggregate', instance_id='mean',
                       perturbation=agg['mean_perturbation'],
                       relative_gcd_error=agg['mean_relative_gcd_error'],
                       iterations=agg['mean_iterations'],
                       converged=f"{agg['converged']}/{agg['count']}",
                       wall_time_seconds=agg['mean_wall_time_seconds'])
            w.writerow([_csv_cell(row[c]) for c in REPORT_COLUMNS])
    else:
        stream.write(f"{'id':>14} {'m':>4} {'n':>4} {'d':>4} {'perturbation':>12} "
                     f"{'rel.err':>10} {'iter':>5} {'status':>14} {'time':>8}\n")
        for r in reports:
            stream.write(f'{r.instance_id:>14} {r.m:>4} {r.n:>4} {r.d:>4} '
                         f'{_short(r.perturbation):>12} {_short(r.relative_gcd_error):>10} '
                         f'{r.iterations:>5} {r.termination:>14} {r.wall_time_seconds:>8.3f}\n')
        if agg is not None:
            stream.write(f"mean perturbation {_short(agg['mean_perturbation'])}, "
                         f"mean rel.err {_short(agg['mean_relative_gcd_error'])}, "
                         f"mean iterations {_short(agg['mean_iterations'])}, "
                         f"converged {agg['converged']}/{agg['count']}\n")


def _csv_cell(v):
    if v is None:
        return NA
    if isinstance(v, float):
        return repr(float(v))
    return str(v)


def _short(v):
    return NA if v is None else f'{v:.3e}' if isinstance(v, float) else str(v)


def read_reports(stream, fmt):
    """Parse records written by :func:`write_reports`.

    Returns ``(reports, aggregate)``; ``aggregate`` is a dict or None.
    """
    reports, agg = [], None
    if fmt == 'json-lines':
        for line in stream:
            if not line.strip():
                continue
            rec = json.loads(line)
            if rec.get('aggregate'):
                agg = rec
            else:
                reports.append(RunReport(**rec))
    elif fmt == 'csv':
        for row in csv.DictReader(stream):
            if row['suite'] == 'aggregate':
                agg = row
                continue
            vals = {}
            for c in REPORT_COLUMNS:
                s = row[c]
                if c in _FLOAT_COLUMNS:
                    vals[c] = None if s == NA else float(s)
                elif c in _INT_COLUMNS:
                    vals[c] = int(s)
                elif c == 'converged':
                    vals[c] = s == 'True'
                else:
                    vals[c] = s
            reports.append(RunReport(**vals))
    else:
        raise ValueError(f'cannot read format {fmt!r}')
    return reports, agg


# -- running instances -----------------------------------------------------------

def _kind(complex_, monic):
    return enc.EncodingKind('complex' if complex_ else 'real', bool(monic))


def _config(args, default_iter=100):
    return SolverConfig(epsilon=args.epsilon,
                        max_iterations=args.max_iter or default_iter,
                        method=METHODS[args.method])


def _run(F, G, d, kind, cfg):
    if kind.is_complex is False and 'complex' in (F.field, G.field):
        kind = enc.EncodingKind('complex', kind.monic)
    t0 = time.perf_counter()
    res = gpgcd(F, G, d, kind=kind, cfg=cfg)
    return res, time.perf_counter() - t0, kind


def _report(suite, iid, F, G, d, kind, cfg, true_gcd=None):
    res, dt, kind = _run(F, G, d, kind, cfg)
    rel = None
    if true_gcd is not None and np.all(np.isfinite(res.h.coeffs)):
        try:
            rel = _finite_or_none(relative_error(res.h, true_gcd))
        except ValueError:
            rel = None
    return RunReport(
        schema_version=SCHEMA_VERSION, suite=suite, instance_id=str(iid),
        m=max(F.degree, G.degree), n=min(F.degree, G.degree), d=d,
        method=cfg.method, kind=str(kind),
        perturbation=_finite_or_none(res.perturbation),
        relative_gcd_error=rel, iterations=res.iterations,
        converged=res.converged, termination=res.termination,
        wall_time_seconds=dt,
    )


def _failed_report(suite, iid, d, kind, cfg, termination):
    return RunReport(SCHEMA_VERSION, suite, str(iid), 0, 0, d, cfg.method, str(kind),
                     None, None, 0, False, termination, 0.0)


def _int_list(text):
    try:
        return [int(t) for t in str(text).split(',') if t.strip()]
    except ValueError:
        raise ParseError(f'bad integer list {text!r}') from None


def _mults_list(text):
    out = []
    for group in str(text).split(';'):
        ms = _int_list(group)
        if len(ms) != 4:
            raise ParseError(f'multiplicities need 4 entries, got {group!r}')
        out.append(ms)
    return out


def suite_instances(args):
    """``(instance_id, F, G, d, true_gcd)`` for ``args.suite``; generator
    failures (coefficient overflow) are yielded as ``(id, None, exc, d, None)``."""
    s = args.suite
    if s == 'random':
        m = args.m if args.m is not None else 10
        n = args.n if args.n is not None else m
        d = args.d if args.d is not None else n // 2
        spec = testgen.RandomGcdSpec(m=max(m, n), n=min(m, n), d=d,
                                     noise_f=args.noise, noise_g=args.noise, seed=args.seed,
                                     field='complex' if args.complex else 'real')
        for i, (f, g, h) in enumerate(testgen.random_suite(spec, args.count)):
            yield i, f, g, d, h
    elif s == 'root_circles':
        for n in _int_list(args.n_list or '6,8,10,12,14,16,18,20'):
            p, q, u = testgen.zeng_root_circles(n)
            yield f'n={n}', p, q, n, u
    elif s == 'clustered':
        p, q = testgen.zeng_clustered_roots()
        for d in _int_list(args.d_list or ','.join(map(str, range(1, 11)))):
            yield f'd={d}', p, q, d, None
    elif s == 'large_gcd':
        for n in _int_list(args.n_list or '50,100,200,500,1000'):
            p, q, u = testgen.zeng_large_gcd(n, seed=args.seed, literal_w=args.literal_w)
            yield f'n={n}', p, q, n, u
    elif s == 'multiplicity_bini':
        for k in _int_list(args.k or '15,25,35,45'):
            u, v, w = testgen.high_multiplicity_bini(k)
            yield f'k={k}', u, v, k - 1, w
    elif s == 'multiplicity_zeng':
        default = '2,1,1,0;3,2,1,0;4,3,2,1;5,3,2,1;9,6,4,2;20,14,10,5;80,60,40,20;100,60,40,20'
        for ms in _mults_list(args.mults or default):
            iid = '[' + ','.join(map(str, ms)) + ']'
            try:
                p, q, w = testgen.high_multiplicity_zeng(*ms)
            except OverflowError as exc:
                yield iid, None, exc, sum(max(x - 1, 0) for x in ms), None
                continue
            yield iid, p, q, w.degree, w
    else:
        raise KeyError(s)


# -- commands ----------------------------------------------------------------------

def _load_input(path):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f'cannot read {path}: {exc}') from None
    if not isinstance(data, dict) or 'f' not in data or 'g' not in data:
        raise ParseError('input file needs keys "f" and "g"')
    return data


def cmd_compute(args, out):
    data = _load_input(args.input) if args.input else {}
    f_text = args.f if args.f is not None else data.get('f')
    g_text = args.g if args.g is not None else data.get('g')
    d = args.d if args.d is not None else data.get('d')
    if f_text is None or g_text is None or d is None:
        raise ParseError('need --f, --g and --d (or an --input file)')
    if isinstance(d, bool) or not isinstance(d, int):
        raise ParseError(f'd must be an integer, got {d!r}')
    F, G = parse_poly(f_text), parse_poly(g_text)
    kind = _kind(args.complex, args.monic)
    cfg = _config(args)
    res, dt, kind = _run(F, G, d, kind, cfg)
    report = RunReport(
        schema_version=SCHEMA_VERSION, suite='compute', instance_id='0',
        m=max(F.degree, G.degree), n=min(F.degree, G.degree), d=d,
        method=cfg.method, kind=str(kind),
        perturbation=_finite_or_none(res.perturbation), relative_gcd_error=None,
        iterations=res.iterations, converged=res.converged,
        termination=res.termination, wall_time_seconds=dt,
    )
    if args.format == 'text':
        status = 'converged' if res.converged else 'NOT converged'
        out.write(f'kind {kind}, method {cfg.method}, d = {d}\n')
        out.write(f'{status}: {res.termination} after {res.iterations} iterations\n')
        if res.message:
            out.write(f'note: {res.message}\n')
        out.write(f'perturbation: {res.perturbation!r}\n')
        out.write(f'H:  {format_poly(res.h)}\n')
        out.write(f'Ft: {format_poly(res.f_tilde)}\n')
        out.write(f'Gt: {format_poly(res.g_tilde)}\n')
        if np.all(np.isfinite(res.h.coeffs)):
            z = ' '.join(format_coefficient(complex(np.round(c, 15))) for c in res.common_zeros())
            out.write(f'common zeros: {z}\n')
    elif args.format == 'json-lines':
        rec = asdict(report)
        rec.update(h=format_poly(res.h), f_tilde=format_poly(res.f_tilde),
                   g_tilde=format_poly(res.g_tilde), message=res.message)
        out.write(json.dumps(rec, allow_nan=False) + '\n')
    else:
        write_reports([report], out, 'csv', aggregate=False)
    return EXIT_OK if res.converged else EXIT_NOT_CONVERGED


def cmd_bench(args, out):
    if args.suite not in SUITES:
        sys.stderr.write(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}\n")
        return EXIT_PRECONDITION
    kind = _kind(args.complex, args.monic)
    cfg = _config(args, default_iter=200 if args.suite == 'random' else 100)
    instances = list(suite_instances(args))

    def one(inst):
        iid, F, G, d, true_gcd = inst
        if F is None:
            return _failed_report(args.suite, iid, d, kind, cfg, 'overflow')
        return _report(args.suite, iid, F, G, d, kind, cfg, true_gcd)

    if args.jobs > 1:
        with ThreadPoolExecutor(args.jobs) as ex:
            reports = list(ex.map(one, instances))
    else:
        reports = [one(i) for i in instances]
    if args.output:
        with open(args.output, 'w', newline='') as fh:
            write_reports(reports, fh, args.format)
    else:
        write_reports(reports, out, args.format)
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f'{self.prog}: error: {message}\n')
        raise SystemExit(EXIT_PARSE)


def _common(p):
    p.add_argument('--epsilon', type=float, default=1e-8, help='stop when ||d|| < epsilon')
    p.add_argument('--max-iter', type=int, default=None,
                   help='iteration limit (default 100; 200 for the random bench suite)')
    p.add_argument('--method', choices=sorted(METHODS), default='newton')
    p.add_argument('--monic', action='store_true', help='keep leading coefficients fixed')
    p.add_argument('--complex', action='store_true', help='complex encoding')
    p.add_argument('--format', choices=('text', 'json-lines', 'csv'), default='text')


def build_parser():
    ap = _Parser(prog='gpgcd', description='Approximate polynomial GCD.')
    sub = ap.add_subparsers(dest='command', required=True, parser_class=_Parser)

    c = sub.add_parser('compute', help='approximate GCD of two polynomials')
    c.add_argument('--f', help='coefficients of F, highest degree first')
    c.add_argument('--g', help='coefficients of G, highest degree first')
    c.add_argument('--d', type=int, help='degree of the approximate GCD')
    c.add_argument('--input', help='JSON file with keys "f", "g" and optionally "d"')
    _common(c)

    b = sub.add_parser('bench', help='run a benchmark suite')
    b.add_argument('--suite', required=True, help=', '.join(SUITES))
    b.add_argument('--count', type=int, default=100, help='random suite: instances')
    b.add_argument('--noise', type=float, default=0.1, help='random suite: noise 2-norm')
    b.add_argument('--seed', type=int, default=0)
    b.add_argument('--m', type=int, default=None, help='random suite: deg F')
    b.add_argument('--n', dest='n_list', default=None,
                   help='deg G (random), or comma list of n (root_circles, large_gcd)')
    b.add_argument('--d', dest='d_list', default=None,
                   help='GCD degree (random), or comma list of d (clustered)')
    b.add_argument('--k', default=None, help='multiplicity_bini: comma list of k')
    b.add_argument('--mults', default=None,
                   help='multiplicity_zeng: "m1,m2,m3,m4;..." groups')
    b.add_argument('--literal-w', action='store_true',
                   help='large_gcd: use w = 1-x+x^2-x^3 (shares x^2+1 with v)')
    b.add_argument('--jobs', type=int, default=1, help='instances run concurrently')
    b.add_argument('--output', help='report file (default stdout)')
    _common(b)
    b.set_defaults(format='json-lines')
    return ap


def _random_degrees(args):
    # single integers for the random suite
    args.n = int(args.n_list) if args.n_list is not None else None
    args.d = int(args.d_list) if args.d_list is not None else None


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        if args.command == 'compute':
            return cmd_compute(args, out)
        if args.suite == 'random':
            try:
                _random_degrees(args)
            except ValueError:
                raise ParseError('random suite takes single integers for --n and --d') from None
        return cmd_bench(args, out)
    except ParseError as exc:
        sys.stderr.write(f'parse error: {exc}\n')
        return EXIT_PARSE
    except ValueError as exc:
        sys.stderr.write(f'precondition violated: {exc}\n')
        return EXIT_PRECONDITION


def run(argv=None):
    """Console-script entry point."""
    raise SystemExit(main(argv))


if __name__ == '__main__':
    run()
