#!/usr/bin/env python3
#
# catalog.py: built-in library of nilpotent Lie algebras together with
# their known bigradings, conjugations, and expected invariants; the
# JSON-based algebra file format; the matrix realisation of the
# 8-dimensional three-step example inside gl(9); and the rank survey.
#
# Entries are built on demand and cached. Names may be combined with `+`
# to form direct sums, e.g. `n3+abelian_2`.

import dataclasses
import functools
import json
import logging
import math
import re

from typing import Optional

import pandas as pd
import tabulate

from tqdm import tqdm

import exact_linalg as la

from bigrading_search import SearchConfig
from bigrading_search import search_w_bigrading
from bigrading_search import search_w_grading
from ce_cohomology import betti
from ce_cohomology import betti_numbers
from ce_cohomology import differential
from ce_cohomology import wedge
from hodge_bigrading import Bigrading
from hodge_bigrading import Grading
from hodge_bigrading import InvalidWeightError
from hodge_bigrading import check_bigrading_compatible
from hodge_bigrading import check_condition_w
from hodge_bigrading import check_grading_wh
from hodge_bigrading import check_hodge_symmetry
from hodge_bigrading import concatenate
from hodge_bigrading import total_grading
from lie_algebra import Conjugation
from lie_algebra import InvalidStructureError
from lie_algebra import LieAlgebra
from lie_algebra import NonNilpotentError
from lie_algebra import Verdict
from lie_algebra import abelian
from lie_algebra import change_basis
from lie_algebra import check_conjugation
from lie_algebra import check_jacobi
from lie_algebra import direct_sum
from lie_algebra import lattice_rank
from lie_algebra import step_length


class CatalogError(Exception):
    pass


class UnknownNameError(CatalogError):
    def __init__(self, name):
        super().__init__(f'Unknown catalog name {name!r}')
        self.name = name


class ParseError(CatalogError):
    '''
    Raised for malformed algebra files. Line and column are 1-based and
    refer to the file if known; `path` is a JSON path such as
    `$.brackets[2].terms[0].c`.
    '''

    def __init__(self, message, line=None, column=None, path=None):
        location = []
        if line is not None:
            location.append(f'line {line}')
        if column is not None:
            location.append(f'column {column}')
        if path is not None:
            location.append(path)

        if location:
            message = f'{message} ({", ".join(location)})'

        super().__init__(message)
        self.line = line
        self.column = column
        self.path = path


class ValidationError(CatalogError):
    def __init__(self, message, item=None):
        super().__init__(message)
        self.item = item


@dataclasses.dataclass(frozen=True)
class Frame:
    '''
    Change of basis in which a known bigrading becomes diagonal. Column
    a holds the coordinates of the new basis vector `labels[a]`.
    '''

    columns: tuple
    labels: tuple


@dataclasses.dataclass(frozen=True)
class CatalogEntry:
    algebra: LieAlgebra
    known_bigrading: Optional[Bigrading] = None
    known_grading: Optional[Grading] = None
    frame: Optional[Frame] = None
    provenance: str = ''
    expected: dict = dataclasses.field(default_factory=dict)
    aliases: tuple = ()
    notes: tuple = ()

    @property
    def name(self):
        return self.algebra.name

    @functools.cached_property
    def hodge_algebra(self):
        '''
        The algebra in the basis in which the known bigrading and the
        known grading are diagonal.
        '''

        if self.frame is None:
            return self.algebra
        return change_basis(
            self.algebra, self.frame.columns, self.frame.labels, self.name
        )


def _entry(name, basis, table, conjugation=None, bigrading=None, **kwargs):
    L = LieAlgebra.from_table(name, basis, table, conjugation)
    B = Bigrading(tuple(bigrading)) if bigrading is not None else None
    grading = kwargs.pop('grading', None)
    if grading is None and B is not None:
        grading = total_grading(B)
    return CatalogEntry(L, B, grading, **kwargs)


def _labels(n):
    return tuple(f'X{i + 1}' for i in range(n))


def _swap_pairs(n, pairs, negated=()):
    '''
    Conjugation exchanging the basis vectors of every pair (1-based) and
    negating the given vectors.
    '''

    mapping = {}
    for a, b in pairs:
        mapping[a - 1] = {b - 1: 1}
        mapping[b - 1] = {a - 1: 1}
    for a in negated:
        mapping[a - 1] = {a - 1: -1}
    return Conjugation.from_mapping(n, mapping)


def _real(n):
    return Conjugation.identity(n)


def _abelian_entry(n):
    return CatalogEntry(
        abelian(n),
        Bigrading(((-1, -1),) * n),
        Grading((-2,) * n),
        provenance='abelian',
        expected={'dim': n, 'step': 1 if n else 0, 'rank': n},
    )


def _heisenberg_entry(name, k, provenance, aliases=(), notes=()):
    # Symplectic presentation: [X_{2a-1}, X_{2a}] = X_{2k+1}.
    n = 2 * k + 1
    table = {(2 * a + 1, 2 * a + 2): {n: 1} for a in range(k)}
    conjugation = _swap_pairs(n, [(2 * a + 1, 2 * a + 2) for a in range(k)], [n])
    bigrading = [(-1, 0), (0, -1)] * k + [(-1, -1)]
    return _entry(
        name, _labels(n), table, conjugation, bigrading,
        provenance=provenance,
        expected={'dim': n, 'step': 2, 'rank': n, 'betti': _heisenberg_betti(k)},
        aliases=aliases,
        notes=notes,
    )


def _heisenberg_betti(k):
    # b_j = C(2k, j) - C(2k, j - 2) for j <= k, then Poincare duality.
    def binomial(a, b):
        return math.comb(a, b) if b >= 0 else 0

    lower = [binomial(2 * k, j) - binomial(2 * k, j - 2) for j in range(k + 1)]
    return tuple(lower + lower[::-1])


def _n3():
    return _heisenberg_entry('n3', 1, 'Heisenberg algebra, example bigrading')


def _L5_4():
    return _heisenberg_entry(
        'L5_4', 2, 'complexified Lie algebra of H_5(R), symplectic presentation'
    )


def _h7():
    return _heisenberg_entry(
        'h7', 3, 'complexified Lie algebra of H_7(R), symplectic presentation',
        aliases=('n7_154',)
    )


def _n7_152():
    entry = _heisenberg_entry(
        'n7_152', 3, 'external, unverified',
        notes=(
            'Listed in the b1 = 6 row of the rank 7 classification, while '
            'the same classification names n7_154 as the Heisenberg algebra '
            'of dimension 7. A 7-dimensional algebra with b1 = 6 has a '
            'one-dimensional derived algebra, hence is H_7 plus an abelian '
            'part; the constants below are those of h7 (alias n7_154).',
        ),
    )
    logging.debug('n7_152 carries externally sourced constants')
    return entry


_N7_COMMON = {(1, 3): {2: 1}, (1, 5): {4: 1}, (1, 7): {6: 1}}


def _frame_entry(name, table, frame_columns, frame_labels, bigrading, **kwargs):
    n = len(frame_columns)
    columns = tuple(
        tuple(la.as_scalar(x) for x in column) for column in frame_columns
    )
    return _entry(
        name, _labels(n), table, _real(n), bigrading,
        frame=Frame(columns, tuple(frame_labels)),
        **kwargs,
    )


def _column(n, terms):
    vector = [la.ZERO] * n
    for k, c in terms.items():
        vector[k - 1] = la.as_scalar(c)
    return tuple(vector)


_N7_FRAME_LABELS = ('A1', 'A2', 'Abar1', 'Abar2', 'X2', 'X4', 'X6')
_N7_BIGRADING = [(-1, 0), (-1, 0), (0, -1), (0, -1), (-1, -1), (-1, -1), (-1, -1)]


def _n7_frame(a1, a2):
    conj = {k: la.conjugate(la.as_scalar(c)) for k, c in a1.items()}
    conj2 = {k: la.conjugate(la.as_scalar(c)) for k, c in a2.items()}
    return [
        _column(7, a1), _column(7, a2), _column(7, conj), _column(7, conj2),
        _column(7, {2: 1}), _column(7, {4: 1}), _column(7, {6: 1}),
    ]


def _n7_142():
    table = {**_N7_COMMON, (3, 5): {4: 1}, (5, 7): {2: 1}}
    frame = _n7_frame({1: 1, 3: -1, 7: la.IMAG}, {3: la.IMAG, 5: 1})
    return _frame_entry(
        'n7_142', table, frame, _N7_FRAME_LABELS, _N7_BIGRADING,
        provenance='rank 7 classification, b1 = 4',
        expected={'dim': 7, 'step': 2, 'rank': 7, 'pfaffian_rank': 3,
                  'betti': (1, 4, 11, 14, 14, 11, 4, 1)},
    )


def _n7_143():
    table = {**_N7_COMMON, (3, 5): {6: 1}, (5, 7): {2: 1}}
    frame = _n7_frame({1: 1, 5: la.IMAG}, {3: -la.IMAG, 7: 1})
    return _frame_entry(
        'n7_143', table, frame, _N7_FRAME_LABELS, _N7_BIGRADING,
        provenance='rank 7 classification, b1 = 4',
        expected={'dim': 7, 'step': 2, 'rank': 7, 'pfaffian_rank': 2,
                  'betti': (1, 4, 11, 16, 16, 11, 4, 1)},
    )


def _n7_144():
    table = {**_N7_COMMON, (5, 7): {2: 1}}
    return _entry(
        'n7_144', _labels(7), table, _real(7),
        provenance='rank 7 classification, b1 = 4',
        expected={'dim': 7, 'step': 2, 'rank': 7, 'pfaffian_rank': 1,
                  'betti': (1, 4, 11, 17, 17, 11, 4, 1)},
        notes=(
            'The table [X1,Xi] = X(i-1) for i = 3, 5, 7 and [X5,X7] = X2 '
            'gives (b2, b3) = (11, 17), not (11, 16) as listed next to '
            'n7_143 in the classification summary.',
            'Its Pfaffian rank is 1, while every member of family_abc has '
            'Pfaffian rank 2 or 3, so it is not isomorphic to any member '
            'and no (W)-bigrading with two generators of type (1,0) and '
            'two of type (0,1) is known for it.',
        ),
    )


def _n7_145():
    table = {(1, 2): {5: 1}, (2, 3): {6: 1}, (2, 4): {7: 1}}
    return _entry(
        'n7_145', _labels(7), table, _real(7),
        provenance='external, unverified (standard 7-dimensional tables)',
        expected={'dim': 7, 'step': 2, 'rank': 7, 'pfaffian_rank': 0,
                  'betti': (1, 4, 12, 18, 18, 12, 4, 1)},
        notes=('Not in the list of (W)-admissible algebras of rank 7.',),
    )


def family_abc(a, b, c):
    '''
    Member g(a, b, c) of the 7-dimensional two-step family with
    [e1,e2] = e5, [e1,e3] = e6, [e2,e4] = -e7, and
    [e3,e4] = -(a e5 + b e6 + c e7). Its diagonal bigrading puts e1, e4 at
    (-1,0), e2, e3 at (0,-1), and e5, e6, e7 at (-1,-1). The conjugation
    exists only for real a and c = conj(b).
    '''

    a, b, c = (la.as_scalar(x) for x in (a, b, c))
    name = f'family_abc({la.format_scalar(a)},{la.format_scalar(b)},{la.format_scalar(c)})'

    table = {
        (1, 2): {5: 1},
        (1, 3): {6: 1},
        (2, 4): {7: -1},
        (3, 4): {5: -a, 6: -b, 7: -c},
    }

    conjugation = None
    if la.is_real(a) and c == la.conjugate(b):
        conjugation = Conjugation.from_mapping(7, {
            0: {1: 1}, 1: {0: 1}, 2: {3: 1}, 3: {2: 1},
            4: {4: -1}, 5: {6: -1}, 6: {5: -1},
        })

    # Pfaffian rank 3 for a + bc != 0 and 2 otherwise; one isomorphism
    # class each.
    degenerate = not (a + b * c)
    b2b3 = (11, 16) if degenerate else (11, 14)
    return _entry(
        name, tuple(f'e{i + 1}' for i in range(7)), table, conjugation,
        [(-1, 0), (0, -1), (0, -1), (-1, 0), (-1, -1), (-1, -1), (-1, -1)],
        provenance='two-step family of rank 7 with b1 = 4',
        expected={
            'dim': 7, 'step': 2, 'rank': 7, 'b2b3': b2b3,
            'pfaffian_rank': 2 if degenerate else 3,
        },
    )


def pfaffian_rank(L):
    '''
    Rank of the symmetric form (u, v) -> u^v on the exact 2-cochains of a
    two-step algebra with b1 = 4. The exact 2-cochains are 2-forms on the
    four-dimensional g / [g, g], so all products lie on one line of
    4-cochains. Over C the rank is an isomorphism invariant; it separates
    n7_142 (3), n7_143 (2), n7_144 (1), and n7_145 (0).

    :param L: Two-step nilpotent Lie algebra with b1 = 4
    :return: Rank between 0 and 3
    '''

    if step_length(L) != 2 or betti(L, 1) != 4:
        raise ValueError(f'{L.name} is not a two-step algebra with b1 = 4')

    n = L.dim
    forms = la.image_basis(differential(L, 1))
    gram = [[wedge(n, u, 2, v, 2) for v in forms] for u in forms]

    support = [
        position
        for row in gram for entry in row
        for position, x in enumerate(entry) if x
    ]
    if not support:
        return 0

    position = min(support)
    return la.rank(la.matrix([[entry[position] for entry in row] for row in gram]))


_CAMPANA_BASIS = ('X1', 'X2', 'Y1', 'Y2', 'Z1', 'Z2', 'A', 'B')


def _n8_campana():
    table = {
        (1, 3): {5: 1}, (2, 4): {5: 1},
        (2, 3): {6: 1}, (1, 4): {6: 1},
        (1, 5): {7: 1}, (2, 6): {7: 1},
        (3, 5): {8: 1}, (4, 6): {8: 1},
    }

    i = la.IMAG
    frame = [
        _column(8, {1: 1, 3: i}),
        _column(8, {2: 1, 4: i}),
        _column(8, {1: 1, 3: -i}),
        _column(8, {2: 1, 4: -i}),
        _column(8, {5: -2 * i}),
        _column(8, {6: -2 * i}),
        _column(8, {7: -2 * i, 8: 2}),
        _column(8, {7: 2 * i, 8: 2}),
    ]

    return _entry(
        'n8_campana', _CAMPANA_BASIS, table, _real(8),
        [(-1, 0), (-1, 0), (0, -1), (0, -1), (-1, -1), (-1, -1), (-2, -1), (-1, -2)],
        frame=Frame(frame, ('A1', 'A2', 'Abar1', 'Abar2', 'B1', 'B2', 'C1', 'Cbar1')),
        provenance='three-step example of dimension 8 with a matrix realisation in gl(9)',
        expected={
            'dim': 8, 'step': 3, 'rank': 8, 'layers': (4, 2, 2),
            'H1': {(1, 0): 2, (0, 1): 2},
            'H2': {(2, 0): 1, (0, 2): 1, (1, 1): 2, (2, 1): 1, (1, 2): 1},
        },
    )


def _real_entry(name, n, table, provenance='', **kwargs):
    return _entry(
        name, _labels(n), table, _real(n), provenance=provenance, **kwargs
    )


_L5_9_TABLE = {(1, 2): {3: 1}, (2, 3): {4: 1}, (1, 3): {5: 1}}


def _filiform(n):
    table = {(1, k): {k + 1: 1} for k in range(2, n)}
    return _real_entry(
        f'filiform_{n}', n, table, 'standard filiform chain',
        expected={'dim': n, 'step': n - 1, 'rank': n},
    )


def _L5_9():
    return _real_entry(
        'L5_9', 5, _L5_9_TABLE, 'admits a (W)+(H) grading but no (W)-bigrading',
        expected={'dim': 5, 'step': 3, 'rank': 5, 'betti': (1, 2, 3, 3, 2, 1)},
    )


def _L6_9():
    L = direct_sum(get('L5_9').algebra, abelian(1), 'L6_9')
    L = dataclasses.replace(L, basis=_labels(6))
    return CatalogEntry(
        L, provenance='L5_9 plus a one-dimensional abelian summand',
        expected={'dim': 6, 'step': 3, 'rank': 6},
    )


def _L6_21_m1():
    table = {**_L5_9_TABLE, (1, 4): {6: 1}, (2, 5): {6: 1}}
    return _real_entry(
        'L6_21_m1', 6, table, 'L6_21 at parameter -1',
        expected={'dim': 6, 'step': 4, 'rank': 6},
    )


def _L6_22_0():
    table = {(2, 4): {5: 1}, (4, 1): {6: 1}, (2, 3): {6: 1}}
    return _real_entry(
        'L6_22_0', 6, table, 'L6_22 at parameter 0',
        expected={'dim': 6, 'step': 2, 'rank': 6},
    )


def _L6_24_0():
    table = {(1, 3): {4: 1}, (3, 4): {5: 1}, (1, 4): {6: 1}, (3, 2): {6: 1}}
    return _real_entry(
        'L6_24_0', 6, table, 'L6_24 at parameter 0',
        expected={'dim': 6, 'step': 3, 'rank': 6},
    )


def _L6_24_1():
    table = {(1, 2): {3: 1}, (2, 3): {5: 1}, (2, 4): {5: 1}, (1, 3): {6: 1}}
    return _real_entry(
        'L6_24_1', 6, table, 'L6_24 at parameter 1',
        expected={'dim': 6, 'step': 3, 'rank': 6},
    )


_BUILDERS = {
    **{f'abelian_{n}': functools.partial(_abelian_entry, n) for n in range(1, 8)},
    'n3': _n3,
    'filiform_4': functools.partial(_filiform, 4),
    'filiform_5': functools.partial(_filiform, 5),
    'L5_4': _L5_4,
    'h7': _h7,
    'n7_142': _n7_142,
    'n7_143': _n7_143,
    'n7_144': _n7_144,
    'n7_145': _n7_145,
    'n7_152': _n7_152,
    'n8_campana': _n8_campana,
    'L5_9': _L5_9,
    'L6_9': _L6_9,
    'L6_21_m1': _L6_21_m1,
    'L6_22_0': _L6_22_0,
    'L6_24_0': _L6_24_0,
    'L6_24_1': _L6_24_1,
}

_ALIASES = {'n7_154': 'h7'}

# Names of the six algebras that admit gradings but no bigradings
# satisfying (W).
GRADING_ONLY = ('L5_9', 'L6_9', 'L6_21_m1', 'L6_22_0', 'L6_24_0', 'L6_24_1')

_FAMILY = re.compile(r'^family_abc\(([^,()]+),([^,()]+),([^,()]+)\)$')


def list_names():
    return sorted(_BUILDERS) + ['family_abc(a,b,c)']


def _split_sum(name):
    '''
    Splits a name at top-level `+` signs; signs inside parentheses
    belong to family parameters.
    '''

    parts = []
    depth = 0
    current = ''
    for ch in name:
        if ch == '(':
            depth += 1
        elif ch == ')':
            depth -= 1
        if ch == '+' and depth == 0:
            parts.append(current)
            current = ''
        else:
            current += ch
    parts.append(current)
    return [p.strip() for p in parts]


@functools.lru_cache(maxsize=None)
def get(name):
    '''
    Looks up a catalog entry by name. Besides the fixed names, accepts
    `family_abc(a,b,c)` with scalar parameters and direct sums such as
    `n3+abelian_2`.

    :param name: Catalog name
    :return: `CatalogEntry`
    '''

    name = name.strip()
    parts = _split_sum(name)
    if len(parts) > 1:
        entries = [get(part) for part in parts]
        return functools.reduce(_sum_entries, entries)

    name = _ALIASES.get(name, name)
    if name in _BUILDERS:
        return _BUILDERS[name]()

    m = _FAMILY.match(name)
    if m is not None:
        try:
            parameters = [la.parse_scalar(p.strip()) for p in m.groups()]
        except la.ScalarSyntaxError as e:
            raise UnknownNameError(name) from e
        return family_abc(*parameters)

    raise UnknownNameError(name)


def _block_frame(entry):
    n = entry.algebra.dim
    if entry.frame is not None:
        return list(entry.frame.columns)
    return [la.unit_vector(n, i) for i in range(n)]


def _sum_entries(first, second):
    algebra = direct_sum(first.algebra, second.algebra)

    frame = None
    if first.frame is not None or second.frame is not None:
        n1, n2 = first.algebra.dim, second.algebra.dim
        columns = [tuple(c) + la.zero_vector(n2) for c in _block_frame(first)]
        columns += [la.zero_vector(n1) + tuple(c) for c in _block_frame(second)]
        labels = direct_sum(first.hodge_algebra, second.hodge_algebra).basis
        frame = Frame(tuple(columns), labels)

    def combine(x, y):
        if x is None or y is None:
            return None
        return concatenate(x, y)

    expected = {'dim': algebra.dim, 'rank': algebra.dim}
    return CatalogEntry(
        algebra,
        combine(first.known_bigrading, second.known_bigrading),
        combine(first.known_grading, second.known_grading),
        frame=frame,
        provenance='direct sum',
        expected=expected,
    )


def check_entry(entry):
    '''
    Recomputes the invariants of an entry and compares them with the
    expected values and the known gradings.

    :return: `Verdict` whose violations are (item, expected, actual)
    tuples
    '''

    L = entry.algebra
    violations = []

    jacobi = check_jacobi(L)
    if not jacobi:
        i, j, k, _ = jacobi.violations[0]
        violations.append(('jacobi', (i + 1, j + 1, k + 1), None))
        return Verdict.from_violations(violations)

    if L.conjugation is not None and not check_conjugation(L):
        violations.append(('conjugation', True, False))

    try:
        actual = {'step': step_length(L), 'layers': lattice_rank(L)[1]}
    except NonNilpotentError:
        violations.append(('nilpotent', True, False))
        return Verdict.from_violations(violations)

    actual['dim'] = L.dim
    actual['rank'] = lattice_rank(L)[0]

    expected = entry.expected
    if 'betti' in expected or 'b2b3' in expected:
        numbers = betti_numbers(L)
        actual['betti'] = numbers
        actual['b2b3'] = numbers[2:4]
    if 'pfaffian_rank' in expected:
        actual['pfaffian_rank'] = pfaffian_rank(L)

    H = entry.hodge_algebra
    B = entry.known_bigrading
    if B is not None:
        if not check_bigrading_compatible(H, B):
            violations.append(('bigrading', 'compatible', 'incompatible'))
        else:
            report = check_condition_w(H, B)
            actual['H1'] = report.h1
            actual['H2'] = report.h2
            if not report:
                violations.append(('W', True, False))
            if H.conjugation is not None and not check_hodge_symmetry(H, B):
                violations.append(('symmetry', True, False))

    G = entry.known_grading
    if G is not None and not check_grading_wh(H, G):
        violations.append(('grading', True, False))

    for key, value in sorted(expected.items()):
        if actual.get(key) != value:
            violations.append((key, value, actual.get(key)))

    return Verdict.from_violations(violations)


#
# Algebra file format
#


def _fail(message, path):
    raise ParseError(message, path=path)


def _require(document, key, kind, path):
    if key not in document:
        _fail(f'missing key {key!r}', path)
    value = document[key]
    if not isinstance(value, kind) or isinstance(value, bool):
        _fail(f'key {key!r} has the wrong type', f'{path}.{key}')
    return value


def _coefficient(text, path):
    try:
        return la.parse_scalar(text)
    except la.ScalarSyntaxError as e:
        raise ParseError(
            f'invalid coefficient {text!r}: {e}',
            column=e.position + 1, path=path,
        ) from e


def _index(value, n, path):
    if not isinstance(value, int) or isinstance(value, bool) or not 1 <= value <= n:
        _fail(f'index must be an integer between 1 and {n}', path)
    return value


def parse_document(document):
    '''
    Converts a decoded algebra document into an algebra and optional
    gradings. No mathematical validation happens here.

    :return: Tuple of `LieAlgebra`, `Bigrading` or `None`, and
    `Grading` or `None`
    '''

    if not isinstance(document, dict):
        _fail('top level must be an object', '$')

    name = _require(document, 'name', str, '$')
    n = _require(document, 'dim', int, '$')
    basis = _require(document, 'basis', list, '$')

    if len(basis) != n or not all(isinstance(x, str) for x in basis):
        _fail(f'basis must list {n} labels', '$.basis')
    if len(set(basis)) != n:
        _fail('basis labels must be distinct', '$.basis')

    table = {}
    for a, bracket in enumerate(_require(document, 'brackets', list, '$')):
        path = f'$.brackets[{a}]'
        if not isinstance(bracket, dict):
            _fail('bracket must be an object', path)

        i = _index(bracket.get('i'), n, f'{path}.i')
        j = _index(bracket.get('j'), n, f'{path}.j')
        if i >= j:
            _fail('brackets must satisfy i < j', path)
        if (i, j) in table:
            _fail(f'bracket ({i}, {j}) given twice', path)

        terms = {}
        for b, term in enumerate(_require(bracket, 'terms', list, path)):
            term_path = f'{path}.terms[{b}]'
            if not isinstance(term, dict):
                _fail('term must be an object', term_path)
            k = _index(term.get('k'), n, f'{term_path}.k')
            c = _coefficient(_require(term, 'c', str, term_path), f'{term_path}.c')
            terms[k] = terms.get(k, la.ZERO) + c

        table[(i, j)] = terms

    conjugation = None
    if document.get('conjugation') is not None:
        rows = document['conjugation']
        if not isinstance(rows, list) or len(rows) != n:
            _fail(f'conjugation must be a {n}x{n} matrix', '$.conjugation')
        matrix = []
        for r, row in enumerate(rows):
            if not isinstance(row, list) or len(row) != n:
                _fail(f'conjugation must be a {n}x{n} matrix', f'$.conjugation[{r}]')
            matrix.append(tuple(
                _coefficient(x, f'$.conjugation[{r}][{s}]') if isinstance(x, str)
                else _fail('coefficients must be strings', f'$.conjugation[{r}][{s}]')
                for s, x in enumerate(row)
            ))
        conjugation = Conjugation(tuple(matrix))

    try:
        L = LieAlgebra.from_table(name, basis, table, conjugation)
    except InvalidStructureError as e:
        raise ParseError(str(e), path='$.brackets') from e

    bigrading = None
    if document.get('bigrading') is not None:
        weights = document['bigrading']
        if (
            not isinstance(weights, list) or len(weights) != n
            or not all(isinstance(w, list) and len(w) == 2 for w in weights)
        ):
            _fail(f'bigrading must list {n} pairs', '$.bigrading')
        try:
            bigrading = Bigrading(tuple(tuple(w) for w in weights))
        except (InvalidWeightError, TypeError) as e:
            raise ParseError(str(e), path='$.bigrading') from e

    grading = None
    if document.get('grading') is not None:
        weights = document['grading']
        if not isinstance(weights, list) or len(weights) != n:
            _fail(f'grading must list {n} weights', '$.grading')
        try:
            grading = Grading(tuple(weights))
        except (InvalidWeightError, TypeError) as e:
            raise ParseError(str(e), path='$.grading') from e

    return L, bigrading, grading


def validate(L):
    '''
    Checks the axioms every algebra read from a file must satisfy.

    :raises ValidationError: naming the first violating item
    '''

    jacobi = check_jacobi(L)
    if not jacobi:
        i, j, k, total = jacobi.violations[0]
        labels = L.basis
        raise ValidationError(
            f'{L.name}: Jacobi identity fails for '
            f'({labels[i]}, {labels[j]}, {labels[k]})',
            item=(i + 1, j + 1, k + 1),
        )

    try:
        step_length(L)
    except NonNilpotentError as e:
        raise ValidationError(str(e), item='nilpotency') from e

    if L.conjugation is not None:
        verdict = check_conjugation(L)
        if not verdict:
            violation = verdict.violations[0]
            item = tuple(x + 1 for x in violation[1:])
            raise ValidationError(
                f'{L.name}: conjugation fails ({violation[0]} {item})',
                item=(violation[0],) + item,
            )


def loads(text, validated=True):
    try:
        document = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, line=e.lineno, column=e.colno) from e

    L, bigrading, grading = parse_document(document)
    if validated:
        validate(L)

    return L, bigrading, grading


def load(path, validated=True):
    '''
    Reads an algebra file.

    :param path: File name
    :param validated: If set, Jacobi identity, nilpotency, and the
    conjugation are checked
    :return: Tuple of `LieAlgebra`, optional `Bigrading`, optional
    `Grading`
    '''

    with open(path, encoding='utf-8') as f:
        text = f.read()

    logging.debug(f'Loaded {len(text)} characters from {path}')
    return loads(text, validated)


def to_document(L, bigrading=None, grading=None):
    document = {
        'name': L.name,
        'dim': L.dim,
        'basis': list(L.basis),
        'brackets': [
            {
                'i': i + 1,
                'j': j + 1,
                'terms': [
                    {'k': k + 1, 'c': la.format_scalar(c)}
                    for k, c in enumerate(vector) if c
                ]
            }
            for (i, j), vector in L.brackets
        ],
    }

    if L.conjugation is not None:
        document['conjugation'] = [
            [la.format_scalar(x) for x in row] for row in L.conjugation.matrix
        ]
    if bigrading is not None:
        document['bigrading'] = bigrading.to_json()
    if grading is not None:
        document['grading'] = grading.to_json()

    return document


def dumps(L, bigrading=None, grading=None):
    return json.dumps(to_document(L, bigrading, grading), indent=4) + '\n'


def save(L, path, bigrading=None, grading=None):
    with open(path, 'w', encoding='utf-8') as f:
        f.write(dumps(L, bigrading, grading))


def export(entry):
    '''
    File representation of a catalog entry, expressed in the basis in
    which its known gradings are diagonal.
    '''

    return dumps(entry.hodge_algebra, entry.known_bigrading, entry.known_grading)


@dataclasses.dataclass(frozen=True)
class Source:
    '''
    Algebra resolved from a file or the catalog. `hodge_algebra` is the
    algebra in the basis in which `bigrading` and `grading` are diagonal.
    '''

    algebra: LieAlgebra
    hodge_algebra: LieAlgebra
    bigrading: Optional[Bigrading] = None
    grading: Optional[Grading] = None
    entry: Optional[CatalogEntry] = None


def resolve(source, validated=True):
    '''
    Resolves `catalog:<name>` or a file name.
    '''

    if source.startswith('catalog:'):
        entry = get(source[len('catalog:'):])
        return Source(
            entry.algebra, entry.hodge_algebra,
            entry.known_bigrading, entry.known_grading, entry
        )

    L, bigrading, grading = load(source, validated)
    return Source(L, L, bigrading, grading)


#
# Matrix realisation
#


@dataclasses.dataclass(frozen=True)
class MatrixEmbedding:
    '''
    Linear map from a Lie algebra into gl(m). `images[a]` is the image of
    basis vector a, given as a tuple of ((r, s), coefficient) pairs for
    elementary matrices e_{r,s} with 1-based r and s.
    '''

    target_dim: int
    images: tuple

    def matrix(self, a):
        return self.image(la.unit_vector(len(self.images), a))

    def image(self, v):
        '''
        Image of an arbitrary vector, i.e. the linear combination of the
        images of the basis vectors.
        '''

        m = self.target_dim
        rows = [[la.ZERO] * m for _ in range(m)]
        for images, c in zip(self.images, v):
            if not c:
                continue
            for (r, s), x in images:
                rows[r - 1][s - 1] += c * la.as_scalar(x)
        return la.matrix(rows, ncols=m)


def campana_embedding(mutant=False):
    '''
    Images of X1, X2, Y1, Y2, Z1, Z2, A, B of `n8_campana` in gl(9). With
    `mutant` set, the image of B is 2 e_{1,9} instead of 3 e_{1,9}.
    '''

    images = (
        (((2, 4), 1), ((3, 5), 1), ((4, 6), 1), ((8, 9), 1)),
        (((2, 3), 1), ((3, 6), 1), ((4, 5), 1), ((7, 9), 1)),
        (((1, 4), 1), ((3, 7), -1), ((4, 8), -1), ((6, 9), 1)),
        (((1, 3), 1), ((3, 8), -1), ((4, 7), -1), ((5, 9), 1)),
        (((1, 6), -1), ((2, 8), -1), ((4, 9), 2)),
        (((1, 5), -1), ((2, 7), -1), ((3, 9), 2)),
        (((2, 9), 3),),
        (((1, 9), 2 if mutant else 3),),
    )
    return MatrixEmbedding(9, images)


def verify_matrix_embedding(L, phi):
    '''
    Checks that phi is an injective Lie algebra homomorphism, i.e. that
    [phi(e_i), phi(e_j)] = phi([e_i, e_j]) for all i < j and that the
    images are linearly independent.

    :return: `Verdict` with ('bracket', i, j) and ('rank', r) violations
    '''

    if len(phi.images) != L.dim:
        raise ValueError(
            f'Embedding has {len(phi.images)} images for dimension {L.dim}'
        )

    matrices = [phi.matrix(a) for a in range(L.dim)]
    violations = []

    for i in range(L.dim):
        for j in range(i + 1, L.dim):
            lhs = la.commutator(matrices[i], matrices[j])
            rhs = phi.image(L.bracket_of(i, j))
            if la.rows_of(lhs) != la.rows_of(rhs):
                violations.append(('bracket', i, j))

    flattened = [
        tuple(x for row in la.rows_of(m) for x in row) for m in matrices
    ]
    r = la.rank(la.matrix(flattened)) if flattened else 0
    if r != L.dim:
        violations.append(('rank', r))

    return Verdict.from_violations(violations)


#
# Rank survey
#


MAX_SURVEY_RANK = 8

SURVEY_ROSTER = (
    [f'abelian_{n}' for n in range(1, 8)]
    + ['n3'] + [f'n3+abelian_{m}' for m in range(1, 5)]
    + ['L5_4', 'L5_4+abelian_1', 'L5_4+abelian_2']
    + ['n3+n3', 'n3+n3+abelian_1']
    + ['h7', 'n7_152', 'n7_142', 'n7_143', 'n7_144', 'n7_145']
    + ['filiform_4', 'filiform_5']
    + ['L5_9', 'L6_9', 'L6_21_m1', 'L6_22_0', 'L6_24_0', 'L6_24_1']
    + ['n8_campana']
)

SURVEY_NOTES = (
    'Rank 7, b1 = 5: the classification also admits further two-step '
    'algebras with b1 = 5 that are not in the catalog; this row is not '
    'exhaustive.',
    'n7_152 is listed with b1 = 6 while n7_154 names the Heisenberg '
    'algebra h7; both names are carried with the same constants.',
    'n7_144 has (b2, b3) = (11, 17) and Pfaffian rank 1; it is not '
    'isomorphic to any family_abc member, so the rank 7 row lists only '
    'n7_142 and n7_143 as admissible.',
    'Searches only cover diagonal bigradings within the default bound, '
    'with Hodge symmetry, in the basis of the known frame if there is one. '
    'In a real basis the conjugation is the identity, so symmetry forces '
    'every generator to (-1,-1).',
)


def _verified_bigrading(entry):
    H, B = entry.hodge_algebra, entry.known_bigrading
    if B is None or not check_bigrading_compatible(H, B):
        return False
    if H.conjugation is not None and not check_hodge_symmetry(H, B):
        return False
    return bool(check_condition_w(H, B))


def survey_row(name):
    entry = get(name)
    L = entry.algebra
    rank, layers = lattice_rank(L)
    b1 = betti(L, 1)
    step = len(layers)

    symmetric = SearchConfig(require_symmetry=True)
    known = _verified_bigrading(entry)
    found = known
    if not known:
        found = bool(search_w_bigrading(entry.hodge_algebra, symmetric).found)

    grading = False
    if entry.known_grading is not None:
        grading = bool(check_grading_wh(entry.hodge_algebra, entry.known_grading))
    if not grading:
        grading = bool(search_w_grading(entry.hodge_algebra, SearchConfig()).found)

    evidence = 'bigrading' if found else 'none'

    return {
        'name': name,
        'rank': rank,
        'b1': b1,
        'step': step,
        'known_bigrading': known,
        'bigrading_found': found,
        'grading_found': grading,
        'evidence': evidence,
        'admissible': evidence != 'none',
    }


def rank_survey(max_rank=6, progress=False):
    '''
    Evaluates every roster algebra of lattice rank at most `max_rank`:
    rank, b1, step, whether a (W)-bigrading is known or found, whether a
    (W)+(H) grading is found, and the resulting evidence level.

    :return: `pandas.DataFrame` sorted by rank, b1, and name
    '''

    if max_rank > MAX_SURVEY_RANK:
        raise ValueError(
            f'Survey supports ranks up to {MAX_SURVEY_RANK}, got {max_rank}'
        )

    names = [n for n in SURVEY_ROSTER if get(n).algebra.dim <= max_rank]
    if progress:
        names = tqdm(names, desc='Algebra')

    rows = [survey_row(name) for name in names]
    columns = [
        'name', 'rank', 'b1', 'step', 'known_bigrading', 'bigrading_found',
        'grading_found', 'evidence', 'admissible'
    ]

    df = pd.DataFrame(rows, columns=columns)
    df = df.sort_values(['rank', 'b1', 'name'], kind='mergesort')
    return df.reset_index(drop=True)


def format_survey(df):
    table = tabulate.tabulate(
        df, headers='keys', tablefmt='github', showindex=False
    )
    notes = '\n'.join(f'- {note}' for note in SURVEY_NOTES)
    return f'{table}\n\nNotes:\n{notes}\n'
