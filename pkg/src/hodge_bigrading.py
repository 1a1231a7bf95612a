#!/usr/bin/env python3
#
# hodge_bigrading.py: diagonal bigradings and gradings of a Lie algebra,
# their compatibility with brackets and conjugation, the induced
# bigraded cohomology, and the conditions (W) and (H).
#
# A basis vector of weight (p, q) contributes (-p, -q) to the weight of
# its dual cochain, so cohomology lives in non-negative weights while the
# Lie algebra itself lives in non-positive ones.

import collections
import dataclasses
import functools
import itertools
import logging

import numpy as np

import exact_linalg as la

from ce_cohomology import Cochain
from ce_cohomology import betti
from ce_cohomology import cochain_basis
from ce_cohomology import complement_representatives
from ce_cohomology import differential
from lie_algebra import Subspace
from lie_algebra import Verdict
from lie_algebra import bracket_space


# Slots of H^1 and H^2 that condition (W) permits for bigradings.
W_H1_SLOTS = ((1, 0), (0, 1), (1, 1))
W_H2_SLOTS = ((2, 0), (1, 1), (0, 2), (2, 1), (1, 2), (2, 2))

# Weights of H^1 and H^2 that condition (W) permits for gradings.
W_H1_WEIGHTS = (1, 2)
W_H2_WEIGHTS = (2, 3, 4)

MAX_WITNESSES = 5


class HodgeError(Exception):
    pass


class InvalidWeightError(HodgeError, ValueError):
    pass


class IncompatibleBigradingError(HodgeError):
    pass


class IncompatibleGradingError(HodgeError):
    pass


class MissingConjugationError(HodgeError):
    pass


@dataclasses.dataclass(frozen=True)
class Bigrading:
    '''
    Diagonal bigrading: basis vector i has weight weights[i] = (p, q)
    with p, q <= 0 and p + q <= -1.
    '''

    weights: tuple

    def __post_init__(self):
        weights = tuple((int(p), int(q)) for p, q in self.weights)
        object.__setattr__(self, 'weights', weights)

        if not weights:
            return

        w = np.asarray(weights, dtype=np.int64)
        bad = np.flatnonzero((w > 0).any(axis=1) | (w.sum(axis=1) > -1))
        if bad.size:
            i = int(bad[0])
            raise InvalidWeightError(
                f'Weight {weights[i]} of basis vector {i + 1} violates '
                f'p, q <= 0 and p + q <= -1'
            )

    @property
    def dim(self):
        return len(self.weights)

    def cochain_weight(self, I):
        return (
            -sum(self.weights[i][0] for i in I),
            -sum(self.weights[i][1] for i in I),
        )

    def to_json(self):
        return [list(w) for w in self.weights]


@dataclasses.dataclass(frozen=True)
class Grading:
    '''
    Diagonal grading: basis vector i has weight weights[i] <= -1.
    '''

    weights: tuple

    def __post_init__(self):
        weights = tuple(int(w) for w in self.weights)
        object.__setattr__(self, 'weights', weights)

        for i, w in enumerate(weights):
            if w > -1:
                raise InvalidWeightError(
                    f'Weight {w} of basis vector {i + 1} is not <= -1'
                )

    @property
    def dim(self):
        return len(self.weights)

    def cochain_weight(self, I):
        return -sum(self.weights[i] for i in I)

    def to_json(self):
        return list(self.weights)


def total_grading(B):
    '''
    Grading g_i = sum of g_{p,q} over p + q = i.
    '''

    return Grading(tuple(p + q for p, q in B.weights))


def extend_bigrading(B, m):
    '''
    Extends a bigrading by m vectors of weight (-1, -1), matching the
    direct sum with an abelian algebra of dimension m.
    '''

    return Bigrading(B.weights + ((-1, -1),) * m)


def concatenate(first, second):
    return type(first)(first.weights + second.weights)


def _compatibility_violations(L, weights):
    if len(weights) != L.dim:
        return [('dimension', len(weights), L.dim)]

    violations = []
    for i, j, k, _ in L.structure_constants():
        if weights[k] != _add(weights[i], weights[j]):
            violations.append(('bracket', i, j, k))

    return violations


def _add(u, v):
    if isinstance(u, tuple):
        return tuple(a + b for a, b in zip(u, v))
    return u + v


def check_bigrading_compatible(L, B):
    '''
    Checks [g_{p,q}, g_{s,t}] in g_{p+s,q+t} on basis vectors: every basis
    vector that occurs in [e_i, e_j] must have the sum of the weights of
    e_i and e_j. The range constraints are enforced by `Bigrading`.

    :return: `Verdict` with ('bracket', i, j, k) violations
    '''

    return Verdict.from_violations(_compatibility_violations(L, B.weights))


def check_grading_compatible(L, G):
    return Verdict.from_violations(_compatibility_violations(L, G.weights))


def _require_compatible(L, B):
    verdict = check_bigrading_compatible(L, B)
    if not verdict:
        raise IncompatibleBigradingError(
            f'Bigrading is not compatible with {L.name}: '
            f'{describe_violation(L, verdict.violations[0])}'
        )


def describe_violation(L, violation):
    if violation[0] == 'dimension':
        return f'{violation[1]} weights given for dimension {violation[2]}'

    _, i, j, k = violation
    labels = L.basis
    return f'[{labels[i]}, {labels[j]}] has a component along {labels[k]}'


def check_hodge_symmetry(L, B, S=None):
    '''
    Checks that conjugation maps g_{p,q} into g_{q,p} modulo the sum of
    all g_{s,t} with s + t < p + q.

    :param L: Lie algebra
    :param B: Bigrading
    :param S: Conjugation; defaults to the one of L
    :return: `Verdict` with ('symmetry', i) violations
    '''

    S = S if S is not None else L.conjugation
    if S is None:
        raise MissingConjugationError(
            f'{L.name} carries no conjugation; Hodge symmetry cannot be checked'
        )

    n = L.dim
    violations = []

    for i, (p, q) in enumerate(B.weights):
        allowed = [
            la.unit_vector(n, k) for k, (s, t) in enumerate(B.weights)
            if (s, t) == (q, p) or s + t < p + q
        ]

        if not la.in_span(S.image(i), allowed):
            violations.append(('symmetry', i))

    return Verdict.from_violations(violations)


@functools.lru_cache(maxsize=None)
def _blocks(n, j, grading):
    '''
    Positions of the degree-j cochain basis, grouped by cochain weight.
    '''

    blocks = collections.defaultdict(list)
    for position, I in enumerate(cochain_basis(n, j)):
        blocks[grading.cochain_weight(I)].append(position)
    return {slot: tuple(positions) for slot, positions in blocks.items()}


def _block_maps(L, grading, j, slot):
    n = L.dim
    columns = _blocks(n, j, grading).get(slot, [])
    above = _blocks(n, j + 1, grading).get(slot, []) if j < n else []
    below = _blocks(n, j - 1, grading).get(slot, []) if j > 0 else []

    outgoing = differential(L, j).extract(above, columns) if above and columns else None
    incoming = differential(L, j - 1).extract(columns, below) if below and columns else None

    return columns, outgoing, incoming


def _graded_dimensions(L, grading, j):
    if not 0 <= j <= L.dim:
        raise ValueError(f'Degree {j} out of range for dimension {L.dim}')

    dimensions = {}
    for slot in sorted(_blocks(L.dim, j, grading)):
        columns, outgoing, incoming = _block_maps(L, grading, j, slot)
        rank_out = la.rank(outgoing) if outgoing is not None else 0
        rank_in = la.rank(incoming) if incoming is not None else 0

        dimension = len(columns) - rank_out - rank_in
        if dimension:
            dimensions[slot] = dimension

    assert sum(dimensions.values()) == betti(L, j)
    return dimensions


def _graded_classes(L, grading, j, slot, limit=None):
    columns, outgoing, incoming = _block_maps(L, grading, j, slot)
    if not columns:
        return []

    size = len(columns)
    if outgoing is None:
        cocycles = [la.unit_vector(size, a) for a in range(size)]
    else:
        cocycles = la.kernel_basis(outgoing)

    coboundaries = la.image_basis(incoming) if incoming is not None else ()
    chosen = complement_representatives(cocycles, coboundaries)

    if limit is not None:
        chosen = chosen[:limit]

    classes = []
    for z in chosen:
        vector = [la.ZERO] * len(cochain_basis(L.dim, j))
        for a, position in enumerate(columns):
            vector[position] = z[a]
        classes.append(Cochain.from_vector(L.dim, j, vector))

    return classes


def bigraded_cohomology(L, B, j):
    '''
    Dimensions of H^j_{p,q}. The cochain basis of degree j is split by
    weight; as d preserves weights, each block is a subcomplex.

    :return: Dictionary {(p, q): dimension} of nonzero dimensions
    '''

    _require_compatible(L, B)
    return _graded_dimensions(L, B, j)


def bigraded_classes(L, B, j, slot, limit=None):
    '''
    Representative cocycles of H^j_{p,q} for one slot (p, q).
    '''

    _require_compatible(L, B)
    return _graded_classes(L, B, j, tuple(slot), limit)


def hodge_type(L, B):
    '''
    Type (dim H^1_{1,0}, dim H^1_{0,1}, dim H^1_{1,1}) of a bigrading.
    '''

    h1 = bigraded_cohomology(L, B, 1)
    return tuple(h1.get(slot, 0) for slot in W_H1_SLOTS)


@dataclasses.dataclass(frozen=True)
class Witness:
    degree: int
    slot: tuple
    dimension: int
    classes: tuple


@dataclasses.dataclass(frozen=True)
class WReport:
    passed: bool
    h1: dict
    h2: dict
    witnesses: tuple = ()

    def __bool__(self):
        return self.passed

    def to_json(self, labels):
        return {
            'passed': self.passed,
            'H1': _table_to_json(self.h1),
            'H2': _table_to_json(self.h2),
            'witnesses': [
                {
                    'degree': w.degree,
                    'slot': list(w.slot),
                    'dimension': w.dimension,
                    'classes': [z.render(labels) for z in w.classes],
                }
                for w in self.witnesses
            ]
        }


def _table_to_json(table):
    return [
        {'slot': list(slot) if isinstance(slot, tuple) else slot, 'dim': dim}
        for slot, dim in sorted(table.items())
    ]


def check_condition_w(L, B):
    '''
    Decides condition (W): H^1 is supported on (1,0), (0,1), (1,1) and H^2
    on (2,0), (1,1), (0,2), (2,1), (1,2), (2,2). Every forbidden slot with
    nonzero cohomology is reported with up to `MAX_WITNESSES` classes.

    :return: `WReport`
    '''

    _require_compatible(L, B)

    h1 = _graded_dimensions(L, B, 1) if L.dim >= 1 else {}
    h2 = _graded_dimensions(L, B, 2) if L.dim >= 2 else {}

    witnesses = []
    for degree, table, allowed in [(1, h1, W_H1_SLOTS), (2, h2, W_H2_SLOTS)]:
        for slot, dimension in sorted(table.items()):
            if slot in allowed:
                continue

            classes = _graded_classes(L, B, degree, slot, MAX_WITNESSES)
            witnesses.append(Witness(degree, slot, dimension, tuple(classes)))

    if witnesses:
        logging.debug(
            f'{L.name}: condition (W) fails in slots '
            f'{[(w.degree, w.slot) for w in witnesses]}'
        )

    return WReport(not witnesses, h1, h2, tuple(witnesses))


def graded_cohomology(L, G, j):
    '''
    Dimensions of H^j_k for a single grading.

    :return: Dictionary {k: dimension} of nonzero dimensions
    '''

    verdict = check_grading_compatible(L, G)
    if not verdict:
        raise IncompatibleGradingError(
            f'Grading is not compatible with {L.name}: '
            f'{describe_violation(L, verdict.violations[0])}'
        )

    return _graded_dimensions(L, G, j)


@dataclasses.dataclass(frozen=True)
class GradingReport:
    passed: bool
    tables: dict
    failures: tuple = ()

    def __bool__(self):
        return self.passed

    def to_json(self):
        return {
            'passed': self.passed,
            'tables': {
                str(j): _table_to_json(table)
                for j, table in sorted(self.tables.items())
            },
            'failures': [list(f) for f in self.failures],
        }


def _odd_pieces(weights, dims):
    '''
    Odd weights whose pieces have odd dimension.
    '''

    weights = np.asarray(weights, dtype=np.int64)
    dims = np.asarray(dims, dtype=np.int64)
    mask = (weights % 2 == 1) & (dims % 2 == 1)
    return [(int(w), int(d)) for w, d in zip(weights[mask], dims[mask])]


def check_grading_wh(L, G):
    '''
    Decides the grading form of (W), i.e. H^1 in weights 1, 2 and H^2 in
    weights 2, 3, 4, together with (H): for odd k, the pieces g_k and
    H^j_k have even dimension.

    :return: `GradingReport` whose failures are ('W', j, weight) and
    ('H', j, weight, dimension) tuples; j = None refers to g itself
    '''

    tables = {j: graded_cohomology(L, G, j) for j in range(L.dim + 1)}
    failures = []

    for j, allowed in [(1, W_H1_WEIGHTS), (2, W_H2_WEIGHTS)]:
        for weight in sorted(tables.get(j, {})):
            if weight not in allowed:
                failures.append(('W', j, weight))

    if G.weights:
        weights, counts = np.unique(np.asarray(G.weights), return_counts=True)
        for weight, dimension in _odd_pieces(weights, counts):
            failures.append(('H', None, weight, dimension))

    for j, table in sorted(tables.items()):
        if not table:
            continue
        for weight, dimension in _odd_pieces(list(table), list(table.values())):
            failures.append(('H', j, weight, dimension))

    return GradingReport(not failures, tables, tuple(failures))


def weight_filtration(L, B):
    '''
    Weight filtration W_k = sum of g_{p,q} over p + q <= k, for k from the
    lowest total weight up to -1.

    :return: Dictionary {k: Subspace}
    '''

    totals = [p + q for p, q in B.weights]
    if not totals:
        return {}

    return {
        k: Subspace.span(
            [la.unit_vector(L.dim, i) for i, t in enumerate(totals) if t <= k],
            L.dim
        )
        for k in range(min(totals), 0)
    }


def check_weight_filtration(L, B):
    '''
    Checks [W_k, W_l] in W_{k+l} for all pairs of filtration steps.

    :return: `Verdict` with (k, l) violations
    '''

    filtration = weight_filtration(L, B)
    if not filtration:
        return Verdict(True)

    lowest = min(filtration)
    zero = Subspace(L.dim, ())
    violations = []

    for k, l in itertools.combinations_with_replacement(sorted(filtration), 2):
        target = filtration.get(k + l, zero) if k + l >= lowest else zero
        image = bracket_space(L, filtration[k].basis, filtration[l].basis)
        if not all(target.contains(v) for v in image.basis):
            violations.append((k, l))

    return Verdict.from_violations(violations)
