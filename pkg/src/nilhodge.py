#!/usr/bin/env python3
#
# nilhodge.py: command-line front end. Verifies nilpotent Lie algebras,
# computes their cohomology, checks and searches bigradings and gradings
# with respect to the conditions (W) and (H), and reproduces the catalog
# survey.
#
# Exit codes: 0 pass, 1 usage or parse error, 2 axiom failure, 3 failure
# of condition (W) or (H) or of weight compatibility.

import argparse
import hashlib
import json
import logging
import sys

import tabulate

import catalog
import exact_linalg as la

from bigrading_search import SearchConfig
from bigrading_search import search_w_bigrading
from bigrading_search import search_w_grading
from ce_cohomology import cohomology_report
from hodge_bigrading import Grading
from hodge_bigrading import HodgeError
from hodge_bigrading import IncompatibleBigradingError
from hodge_bigrading import IncompatibleGradingError
from hodge_bigrading import bigraded_cohomology
from hodge_bigrading import check_condition_w
from hodge_bigrading import check_grading_wh
from hodge_bigrading import check_hodge_symmetry
from hodge_bigrading import extend_bigrading
from hodge_bigrading import hodge_type
from hodge_bigrading import total_grading
from lie_algebra import LieAlgebraError
from lie_algebra import NonNilpotentError
from lie_algebra import abelian
from lie_algebra import center
from lie_algebra import check_conjugation
from lie_algebra import check_jacobi
from lie_algebra import direct_sum
from lie_algebra import lattice_rank
from lie_algebra import step_length


EXIT_OK = 0
EXIT_USAGE = 1
EXIT_AXIOM = 2
EXIT_CONDITION = 3


class UsageError(Exception):
    pass


class ArgumentParser(argparse.ArgumentParser):
    '''
    Argument parser that reports usage errors by raising instead of
    exiting with status 2, which is reserved for axiom failures.
    '''

    def error(self, message):
        raise UsageError(message)


class WarningCollector(logging.Handler):
    def __init__(self):
        super().__init__(level=logging.WARNING)
        self.messages = []

    def emit(self, record):
        self.messages.append(record.getMessage())


def _digest(source):
    '''
    SHA-256 digest of the input: the file contents, or the exported
    definition of a catalog entry.
    '''

    if source.startswith('catalog:'):
        data = catalog.export(catalog.get(source[len('catalog:'):])).encode('utf-8')
    else:
        with open(source, 'rb') as f:
            data = f.read()

    return hashlib.sha256(data).hexdigest()


def _table(rows, headers):
    return tabulate.tabulate(rows, headers=headers, tablefmt='github')


def _slot_rows(table):
    return [(slot, dim) for slot, dim in sorted(table.items())]


def _require_bigrading(source):
    if source.bigrading is None:
        raise UsageError(f'{source.algebra.name} carries no bigrading')
    return source.hodge_algebra, source.bigrading


def cmd_verify(args):
    source = catalog.resolve(args.SOURCE, validated=False)
    L = source.algebra
    results = {'algebra': L.name, 'dim': L.dim}
    lines = [f'{L.name}: dimension {L.dim}']

    jacobi = check_jacobi(L)
    results['jacobi'] = jacobi.passed
    if not jacobi:
        i, j, k, _ = jacobi.violations[0]
        triple = [i + 1, j + 1, k + 1]
        results['jacobi_violation'] = triple
        lines.append(f'Jacobi identity fails for {[L.basis[x - 1] for x in triple]}')
        return EXIT_AXIOM, results, lines

    lines.append('Jacobi identity holds')

    try:
        rank, layers = lattice_rank(L)
    except NonNilpotentError as e:
        results['nilpotent'] = False
        lines.append(str(e))
        return EXIT_AXIOM, results, lines

    results.update({
        'nilpotent': True,
        'step': step_length(L),
        'layers': list(layers),
        'rank': rank,
        'center_dim': center(L).dim,
    })
    lines.append(_table(
        [(results['step'], layers, rank, results['center_dim'])],
        ['step', 'layers', 'rank', 'center']
    ))

    code = EXIT_OK
    if L.conjugation is not None:
        verdict = check_conjugation(L)
        results['conjugation'] = verdict.passed
        lines.append(f'Conjugation: {"valid" if verdict else "invalid"}')
        if not verdict:
            code = EXIT_AXIOM

    return code, results, lines


def cmd_cohomology(args):
    source = catalog.resolve(args.SOURCE)
    L = source.algebra
    report = cohomology_report(L, args.max_degree, args.classes)

    lines = [_table(
        [list(report.betti)], [f'b{k}' for k in range(len(report.betti))]
    )]
    for k, classes in sorted(report.representatives.items()):
        rendered = ', '.join(z.render(L.basis) for z in classes) or '-'
        lines.append(f'H^{k}: {rendered}')

    return EXIT_OK, report.to_json(L.basis), lines


def cmd_bigraded(args):
    source = catalog.resolve(args.SOURCE)
    L, B = _require_bigrading(source)

    tables = {j: bigraded_cohomology(L, B, j) for j in range(L.dim + 1)}
    results = {
        'algebra': L.name,
        'bigrading': B.to_json(),
        'tables': {
            str(j): [{'slot': list(s), 'dim': d} for s, d in sorted(t.items())]
            for j, t in tables.items()
        }
    }

    lines = []
    for j, table in tables.items():
        lines.append(f'H^{j}')
        lines.append(_table(_slot_rows(table), ['(p, q)', 'dim']))

    return EXIT_OK, results, lines


def cmd_check_w(args):
    source = catalog.resolve(args.SOURCE)
    L, B = _require_bigrading(source)

    report = check_condition_w(L, B)
    results = {'algebra': L.name, 'bigrading': B.to_json()}
    results.update(report.to_json(L.basis))
    results['type'] = list(hodge_type(L, B))

    if L.conjugation is not None:
        results['hodge_symmetry'] = check_hodge_symmetry(L, B).passed
    else:
        logging.warning(f'{L.name} carries no conjugation; Hodge symmetry not checked')

    lines = [
        f'{L.name}: condition (W) {"holds" if report else "fails"}',
        'H^1', _table(_slot_rows(report.h1), ['(p, q)', 'dim']),
        'H^2', _table(_slot_rows(report.h2), ['(p, q)', 'dim']),
    ]
    for w in report.witnesses:
        classes = ', '.join(z.render(L.basis) for z in w.classes)
        lines.append(f'Forbidden H^{w.degree}_{w.slot}: dim {w.dimension}, e.g. {classes}')

    return (EXIT_OK if report else EXIT_CONDITION), results, lines


def cmd_check_grading(args):
    source = catalog.resolve(args.SOURCE)
    L = source.hodge_algebra
    G = source.grading
    if G is None and source.bigrading is not None:
        G = total_grading(source.bigrading)
    if G is None:
        raise UsageError(f'{L.name} carries neither a grading nor a bigrading')

    report = check_grading_wh(L, G)
    results = {'algebra': L.name, 'grading': G.to_json()}
    results.update(report.to_json())

    lines = [f'{L.name}: conditions (W) and (H) {"hold" if report else "fail"}']
    for failure in report.failures:
        lines.append(f'Failure: {failure}')

    return (EXIT_OK if report else EXIT_CONDITION), results, lines


def _search_config(args):
    return SearchConfig(
        bound=args.bound,
        mode='exhaustive' if args.all else 'first-hit',
        require_symmetry=getattr(args, 'symmetric', False),
        progress=args.progress,
    )


def _search_lines(L, outcome):
    lines = [f'{L.name}: {outcome.describe()}']
    lines.append(
        f'{outcome.candidates_checked} candidate(s) checked, '
        f'{outcome.pruned} pruned, exhausted: {outcome.exhausted}'
    )
    for weights in outcome.found:
        lines.append(f'  {weights.to_json()}')
    return lines


def cmd_search_bigrading(args):
    L = catalog.resolve(args.SOURCE).hodge_algebra
    outcome = search_w_bigrading(L, _search_config(args))
    results = {'algebra': L.name}
    results.update(outcome.to_json())
    return EXIT_OK, results, _search_lines(L, outcome)


def cmd_search_grading(args):
    L = catalog.resolve(args.SOURCE).hodge_algebra
    outcome = search_w_grading(L, _search_config(args))
    results = {'algebra': L.name}
    results.update(outcome.to_json())
    return EXIT_OK, results, _search_lines(L, outcome)


def cmd_extend(args):
    if args.abelian < 1:
        raise UsageError('--abelian must be positive')

    source = catalog.resolve(args.SOURCE)
    L = source.hodge_algebra
    m = args.abelian

    extended = direct_sum(L, abelian(m), f'{L.name}+abelian_{m}')
    bigrading = extend_bigrading(source.bigrading, m) if source.bigrading is not None else None
    grading = None
    if source.grading is not None:
        grading = Grading(source.grading.weights + (-2,) * m)

    text = catalog.dumps(extended, bigrading, grading)
    if args.dest:
        with open(args.dest, 'w', encoding='utf-8') as f:
            f.write(text)
        lines = [f'Wrote {extended.name} to {args.dest}']
    else:
        lines = [text.rstrip('\n')]

    return EXIT_OK, {'algebra': extended.name, 'dim': extended.dim}, lines


def cmd_catalog(args):
    if args.action == 'list':
        names = catalog.list_names()
        return EXIT_OK, {'names': names}, names

    if not args.NAME:
        raise UsageError(f'catalog {args.action} requires a name')

    entry = catalog.get(args.NAME)
    if args.action == 'show':
        L = entry.algebra
        brackets = [
            (f'[{L.basis[i]}, {L.basis[j]}]', ' + '.join(
                f'({la.format_scalar(c)}){L.basis[k]}' for k, c in enumerate(v) if c
            ))
            for (i, j), v in L.brackets
        ]
        results = {
            'name': entry.name,
            'aliases': list(entry.aliases),
            'provenance': entry.provenance,
            'notes': list(entry.notes),
            'document': catalog.to_document(
                entry.hodge_algebra, entry.known_bigrading, entry.known_grading
            ),
        }
        lines = [f'{entry.name} ({entry.provenance})']
        lines.append(_table(brackets, ['bracket', 'value']))
        if entry.known_bigrading is not None:
            lines.append(
                f'Known bigrading in basis {list(entry.hodge_algebra.basis)}: '
                f'{entry.known_bigrading.to_json()}'
            )
        lines.extend(entry.notes)
        return EXIT_OK, results, lines

    if not args.PATH:
        raise UsageError('catalog export requires a path')

    with open(args.PATH, 'w', encoding='utf-8') as f:
        f.write(catalog.export(entry))

    return EXIT_OK, {'name': entry.name, 'path': args.PATH}, [f'Wrote {entry.name} to {args.PATH}']


_EMBEDDINGS = {'n8_campana': catalog.campana_embedding}


def cmd_verify_embedding(args):
    name = args.SOURCE[len('catalog:'):] if args.SOURCE.startswith('catalog:') else args.SOURCE
    if name not in _EMBEDDINGS:
        raise UsageError(f'No matrix embedding known for {name}')

    L = catalog.get(name).algebra
    verdict = catalog.verify_matrix_embedding(L, _EMBEDDINGS[name](args.mutant))

    failures = []
    for violation in verdict.violations:
        if violation[0] == 'bracket':
            failures.append([L.basis[violation[1]], L.basis[violation[2]]])
        else:
            failures.append(list(violation))

    pairs = L.dim * (L.dim - 1) // 2
    results = {'algebra': name, 'passed': verdict.passed, 'pairs': pairs, 'failures': failures}
    lines = [f'{name}: embedding into gl(9) {"verified" if verdict else "fails"} ({pairs} pairs)']
    lines.extend(f'Failure at {f}' for f in failures)

    return (EXIT_OK if verdict else EXIT_AXIOM), results, lines


def cmd_survey(args):
    df = catalog.rank_survey(args.max_rank, progress=args.progress)
    results = {
        'max_rank': args.max_rank,
        'rows': df.to_dict(orient='records'),
        'notes': list(catalog.SURVEY_NOTES),
    }
    return EXIT_OK, results, [catalog.format_survey(df).rstrip('\n')]


def _integer(value):
    try:
        return int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f'{value} is not an integer')


def _positive(value):
    n = _integer(value)
    if n < 1:
        raise argparse.ArgumentTypeError(f'{value} is not positive')
    return n


def _non_negative(value):
    n = _integer(value)
    if n < 0:
        raise argparse.ArgumentTypeError(f'{value} is negative')
    return n


def _survey_rank(value):
    n = _positive(value)
    if n > catalog.MAX_SURVEY_RANK:
        raise argparse.ArgumentTypeError(
            f'{value} exceeds the largest surveyed rank {catalog.MAX_SURVEY_RANK}'
        )
    return n


def make_parser():
    parser = ArgumentParser(prog='nilhodge')
    parser.add_argument('--json', action='store_true', help='Print the JSON report')
    parser.add_argument('--output', type=str, help='Write the JSON report to a file')
    parser.add_argument('--quiet', action='store_true', help='Only log warnings')
    parser.add_argument('--verbose', action='store_true', help='Log debug messages')
    parser.add_argument(
        '--seed', type=str, default=None,
        help='Reserved; all computations are deterministic'
    )

    subparsers = parser.add_subparsers(dest='command', required=True)

    def command(name, handler, help):
        p = subparsers.add_parser(name, help=help)
        p.set_defaults(handler=handler)
        return p

    source_help = 'Algebra file or catalog:<name>'

    p = command('verify', cmd_verify, 'Check axioms and basic invariants')
    p.add_argument('SOURCE', help=source_help)

    p = command('cohomology', cmd_cohomology, 'Betti numbers')
    p.add_argument('SOURCE', help=source_help)
    p.add_argument('--max-degree', type=_non_negative, default=None)
    p.add_argument('--classes', action='store_true', help='Print representative cocycles')

    p = command('bigraded', cmd_bigraded, 'Bigraded cohomology')
    p.add_argument('SOURCE', help=source_help)

    p = command('check-w', cmd_check_w, 'Check condition (W) for a bigrading')
    p.add_argument('SOURCE', help=source_help)

    p = command('check-grading', cmd_check_grading, 'Check (W) and (H) for a grading')
    p.add_argument('SOURCE', help=source_help)

    for name, handler in [
        ('search-bigrading', cmd_search_bigrading),
        ('search-grading', cmd_search_grading)
    ]:
        p = command(name, handler, 'Search diagonal weight assignments')
        p.add_argument('SOURCE', help=source_help)
        p.add_argument('--bound', type=_positive, default=None)
        p.add_argument('--all', action='store_true', help='Exhaustive search')
        p.add_argument('--progress', action='store_true', help='Show a progress bar')
        if name == 'search-bigrading':
            p.add_argument(
                '--symmetric', action='store_true',
                help='Require Hodge symmetry if a conjugation is present'
            )

    p = command('extend', cmd_extend, 'Direct sum with an abelian algebra')
    p.add_argument('SOURCE', help=source_help)
    p.add_argument('--abelian', type=int, required=True)
    p.add_argument('--dest', type=str, default=None, help='Output file')

    p = command('catalog', cmd_catalog, 'Built-in algebras')
    p.add_argument('action', choices=['list', 'show', 'export'])
    p.add_argument('NAME', nargs='?', default=None)
    p.add_argument('PATH', nargs='?', default=None)

    p = command('verify-embedding', cmd_verify_embedding, 'Check a matrix realisation')
    p.add_argument('SOURCE', help=source_help)
    p.add_argument('--mutant', action='store_true', help='Use the perturbed image of B')

    p = command('survey', cmd_survey, 'Rank survey of the catalog')
    p.add_argument('--max-rank', type=_survey_rank, default=6)
    p.add_argument('--progress', action='store_true', help='Show a progress bar')

    return parser


def _native(value):
    # numpy scalars coming from pandas frames
    if hasattr(value, 'item'):
        return value.item()
    raise TypeError(f'{type(value).__name__} is not JSON serialisable')


def _inputs_digest(args):
    source = getattr(args, 'SOURCE', None)
    if source is None:
        return hashlib.sha256(b'').hexdigest()
    return _digest(source)


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)

    try:
        args = make_parser().parse_args(argv)
    except UsageError as e:
        print(f'nilhodge: error: {e}', file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as e:
        return e.code or EXIT_OK

    logging.basicConfig(level=logging.INFO, format=None)
    level = logging.INFO
    if args.quiet:
        level = logging.WARNING
    elif args.verbose:
        level = logging.DEBUG
    logging.getLogger().setLevel(level)

    if args.seed is not None:
        print('nilhodge: error: --seed is not supported, all computations are deterministic', file=sys.stderr)
        return EXIT_USAGE

    collector = WarningCollector()
    logging.getLogger().addHandler(collector)

    try:
        code, results, lines = args.handler(args)
        digest = _inputs_digest(args)
    except (UsageError, catalog.UnknownNameError, catalog.ParseError, OSError) as e:
        print(f'nilhodge: error: {e}', file=sys.stderr)
        return EXIT_USAGE
    except (catalog.ValidationError, LieAlgebraError) as e:
        print(f'nilhodge: {e}', file=sys.stderr)
        return EXIT_AXIOM
    except (IncompatibleBigradingError, IncompatibleGradingError) as e:
        print(f'nilhodge: {e}', file=sys.stderr)
        return EXIT_CONDITION
    except HodgeError as e:
        print(f'nilhodge: error: {e}', file=sys.stderr)
        return EXIT_USAGE
    finally:
        logging.getLogger().removeHandler(collector)

    report = {
        'command': argv,
        'inputs_digest': digest,
        'results': results,
        'warnings': collector.messages,
        'exit_code': code,
    }
    text = json.dumps(report, indent=4, sort_keys=True, default=_native)

    if args.output:
        with open(args.output, 'w', encoding='utf-8') as f:
            f.write(text + '\n')

    if args.json:
        print(text)
    else:
        print('\n'.join(lines))

    return code


if __name__ == '__main__':
    sys.exit(main())
