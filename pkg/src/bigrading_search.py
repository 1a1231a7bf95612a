#!/usr/bin/env python3
#
# bigrading_search.py: bounded enumeration of diagonal bigradings and
# gradings of a nilpotent Lie algebra in its given presentation, looking
# for one that satisfies condition (W), or (W) and (H) for gradings.
#
# Only generators (a complement of the derived algebra) are enumerated;
# the weights of all other basis vectors are forced by the brackets.

import dataclasses
import itertools
import logging

from typing import Optional

from tqdm import tqdm

from hodge_bigrading import Bigrading
from hodge_bigrading import Grading
from hodge_bigrading import InvalidWeightError
from hodge_bigrading import check_bigrading_compatible
from hodge_bigrading import check_condition_w
from hodge_bigrading import check_grading_compatible
from hodge_bigrading import check_grading_wh
from hodge_bigrading import check_hodge_symmetry
from lie_algebra import Conjugation
from lie_algebra import generator_indices
from lie_algebra import lower_central_series


# Generator weights that keep H^1 inside the slots permitted by (W). H^1
# is dual to g / [g, g], so its weights are the negated generator weights.
ADMISSIBLE_GENERATOR_WEIGHTS = ((-1, -1), (-1, 0), (0, -1))
ADMISSIBLE_GENERATOR_GRADES = (-2, -1)

MODES = ('first-hit', 'exhaustive')


@dataclasses.dataclass(frozen=True)
class SearchConfig:
    '''
    Parameters of a search.

    :param bound: Maximum of |p| + |q| (or |w| for gradings) over all
    basis vectors; `None` means the dimension of the algebra
    :param mode: Either 'first-hit' or 'exhaustive'
    :param require_symmetry: If set, candidates must satisfy Hodge
    symmetry with respect to the conjugation of the algebra, provided
    it carries one. In a real basis the conjugation is the identity and
    symmetry admits only generators of weight (-1,-1), so symmetric
    searches belong in a basis adapted to the conjugation
    :param progress: Shows a progress bar over the candidates
    '''

    bound: Optional[int] = None
    mode: str = 'first-hit'
    require_symmetry: bool = False
    progress: bool = False

    def __post_init__(self):
        if self.bound is not None and self.bound < 1:
            raise ValueError(f'Search bound must be positive, got {self.bound}')
        if self.mode not in MODES:
            raise ValueError(f'Unknown search mode {self.mode!r}')

    def resolve_bound(self, L):
        return self.bound if self.bound is not None else L.dim


@dataclasses.dataclass(frozen=True)
class SearchOutcome:
    '''
    Result of a search. `found` lists accepted assignments in enumeration
    order; `exhausted` is set if every candidate within the bound has
    been looked at. `symmetry` is one of 'off', 'applied', 'identity'
    (applied with the identity conjugation), and 'skipped' (requested,
    but the algebra carries no conjugation).
    '''

    kind: str
    found: tuple
    exhausted: bool
    candidates_checked: int
    pruned: int
    bound: int
    symmetry: str = 'off'

    def describe(self):
        summary = self._summary()
        if self.symmetry == 'identity':
            summary += (
                '; the conjugation is the identity, so Hodge symmetry '
                'forced every generator to (-1,-1)'
            )
        elif self.symmetry in ('off', 'skipped') and self.kind == 'bigrading':
            summary += '; Hodge symmetry not required'
        return summary

    def _summary(self):
        if self.found:
            return (
                f'{len(self.found)} diagonal {self.kind}(s) satisfying the '
                f'conditions found within bound {self.bound}'
            )
        if self.exhausted:
            return (
                f'no diagonal {self.kind} within bound {self.bound} in this '
                f'presentation'
            )
        return f'search for a diagonal {self.kind} within bound {self.bound} was not completed'

    def to_json(self):
        return {
            'kind': self.kind,
            'found': [x.to_json() for x in self.found],
            'count': len(self.found),
            'exhausted': self.exhausted,
            'candidates_checked': self.candidates_checked,
            'pruned': self.pruned,
            'bound': self.bound,
            'symmetry': self.symmetry,
            'summary': self.describe(),
        }


def _add(u, v):
    if isinstance(u, tuple):
        return tuple(a + b for a, b in zip(u, v))
    return u + v


def _propagate(L, partial):
    '''
    Forces weights along the brackets until nothing changes.

    :return: List of weights for all basis vectors, or `None` if two
    brackets force different weights onto a vector or some vector
    remains unassigned
    '''

    weights = dict(partial)
    changed = True

    while changed:
        changed = False
        for (i, j), vector in L.brackets:
            if i not in weights or j not in weights:
                continue

            w = _add(weights[i], weights[j])
            for k, c in enumerate(vector):
                if not c:
                    continue
                if k not in weights:
                    weights[k] = w
                    changed = True
                elif weights[k] != w:
                    return None

    if len(weights) != L.dim:
        return None

    return [weights[k] for k in range(L.dim)]


def propagate_weights(L, partial):
    '''
    Completes a weight assignment on generators to a bigrading.

    :param L: Lie algebra
    :param partial: Dictionary mapping 0-based generator indices to
    weights (p, q)
    :return: Compatible `Bigrading`, or `None` on any inconsistency or
    range violation
    '''

    partial = {i: tuple(w) for i, w in partial.items()}
    weights = _propagate(L, partial)
    if weights is None:
        return None

    try:
        return Bigrading(tuple(weights))
    except InvalidWeightError:
        return None


def propagate_grading(L, partial):
    weights = _propagate(L, {i: int(w) for i, w in partial.items()})
    if weights is None:
        return None

    try:
        return Grading(tuple(weights))
    except InvalidWeightError:
        return None


def bigrading_options(bound):
    '''
    All weights (p, q) with p, q <= 0, p + q <= -1, and |p| + |q| <= bound,
    in ascending order.
    '''

    return sorted(
        (p, q)
        for p in range(-bound, 1)
        for q in range(-bound, 1)
        if p + q <= -1 and -(p + q) <= bound
    )


def grading_options(bound):
    return list(range(-bound, 0))


def _depth(weight):
    if isinstance(weight, tuple):
        return -sum(weight)
    return -weight


def _search(L, cfg, kind, options, admissible, propagate, accept, symmetry='off'):
    # Raises for non-nilpotent algebras before anything is enumerated.
    lower_central_series(L)

    bound = cfg.resolve_bound(L)
    generators = generator_indices(L)

    all_options = options(bound)
    kept = [w for w in all_options if w in admissible]

    total = len(all_options) ** len(generators)
    candidates = len(kept) ** len(generators)
    pruned = total - candidates

    logging.info(
        f'{L.name}: searching {candidates} {kind} candidate(s) on '
        f'{len(generators)} generator(s) within bound {bound}, '
        f'{pruned} pruned'
    )

    found = []
    checked = 0
    rejected = {'propagation': 0, 'bound': 0, 'symmetry': 0, 'conditions': 0}

    assignments = itertools.product(kept, repeat=len(generators))
    if cfg.progress:
        assignments = tqdm(assignments, total=candidates, desc='Candidate')

    for assignment in assignments:
        checked += 1

        weights = propagate(L, dict(zip(generators, assignment)))
        if weights is None:
            rejected['propagation'] += 1
            continue

        if max((_depth(w) for w in weights.weights), default=0) > bound:
            rejected['bound'] += 1
            continue

        reason = accept(weights)
        if reason is not None:
            rejected[reason] += 1
            continue

        found.append(weights)
        if cfg.mode == 'first-hit':
            break

    exhausted = checked == candidates
    logging.debug(f'{L.name}: rejected candidates {rejected}')

    return SearchOutcome(
        kind=kind,
        found=tuple(found),
        exhausted=exhausted,
        candidates_checked=checked,
        pruned=pruned,
        bound=bound,
        symmetry=symmetry,
    )


def search_w_bigrading(L, cfg=SearchConfig()):
    '''
    Searches for a diagonal bigrading satisfying condition (W). Candidates
    are generator weight tuples in lexicographic order; each one is
    completed by propagation, filtered by compatibility and, if requested,
    Hodge symmetry, and finally checked for (W).

    :param L: Nilpotent Lie algebra
    :param cfg: `SearchConfig`
    :return: `SearchOutcome`
    '''

    symmetric = cfg.require_symmetry and L.conjugation is not None
    symmetry = 'off'
    if cfg.require_symmetry and L.conjugation is None:
        symmetry = 'skipped'
        logging.warning(
            f'{L.name} carries no conjugation; searching without Hodge symmetry'
        )
    elif symmetric:
        symmetry = 'applied'
        if L.conjugation == Conjugation.identity(L.dim):
            symmetry = 'identity'
            logging.info(
                f'{L.name} is given in a real basis; Hodge symmetry forces '
                f'every generator to (-1,-1)'
            )

    def accept(B):
        assert check_bigrading_compatible(L, B)
        if symmetric and not check_hodge_symmetry(L, B):
            return 'symmetry'
        if not check_condition_w(L, B):
            return 'conditions'
        return None

    return _search(
        L, cfg, 'bigrading',
        bigrading_options, ADMISSIBLE_GENERATOR_WEIGHTS,
        propagate_weights, accept, symmetry,
    )


def search_w_grading(L, cfg=SearchConfig()):
    '''
    Searches for a diagonal grading satisfying the grading form of (W)
    together with (H). Symmetry settings of `cfg` do not apply.
    '''

    def accept(G):
        assert check_grading_compatible(L, G)
        if not check_grading_wh(L, G):
            return 'conditions'
        return None

    return _search(
        L, cfg, 'grading',
        grading_options, ADMISSIBLE_GENERATOR_GRADES,
        propagate_grading, accept,
    )
