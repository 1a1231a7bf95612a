#!/usr/bin/env python3
#
# ce_cohomology.py: the Chevalley--Eilenberg complex of a Lie algebra
# with trivial coefficients, its exact cohomology dimensions, and
# canonical representative cocycles.
#
# Sign convention: on the dual basis, d e^k = -sum_{i<j} C_{ij}^k e^i^e^j,
# extended to higher degrees as a derivation of degree +1.

import dataclasses
import functools
import itertools
import logging

import numpy as np

import exact_linalg as la


@functools.lru_cache(maxsize=None)
def cochain_basis(n, k):
    '''
    Basis of degree-k cochains: strictly increasing k-subsets of
    {0, ..., n-1} in lexicographic order.
    '''

    if not 0 <= k <= n:
        return ()
    return tuple(itertools.combinations(range(n), k))


@functools.lru_cache(maxsize=None)
def _cochain_index(n, k):
    return {I: position for position, I in enumerate(cochain_basis(n, k))}


def dual_label(label):
    return label.lower()


@dataclasses.dataclass(frozen=True)
class Cochain:
    '''
    Cochain of a fixed degree, stored as a sorted tuple of
    (index tuple, coefficient) pairs with nonzero coefficients.
    '''

    degree: int
    coefficients: tuple

    @classmethod
    def from_vector(cls, n, degree, vector):
        basis = cochain_basis(n, degree)
        return cls(
            degree=degree,
            coefficients=tuple(
                (I, c) for I, c in zip(basis, vector) if c
            )
        )

    def to_vector(self, n):
        index = _cochain_index(n, self.degree)
        vector = [la.ZERO] * len(index)
        for I, c in self.coefficients:
            vector[index[I]] = c
        return tuple(vector)

    def render(self, labels):
        '''
        Human-readable form using dual basis labels, e.g. `x1^x3` or
        `-x1^b1 - x2^b2`.
        '''

        if not self.coefficients:
            return '0'
        if self.degree == 0:
            return la.format_scalar(self.coefficients[0][1])

        terms = []
        for I, c in self.coefficients:
            monomial = '^'.join(dual_label(labels[i]) for i in I)
            if c == la.ONE:
                terms.append(monomial)
            elif c == -la.ONE:
                terms.append(f'-{monomial}')
            else:
                terms.append(f'({la.format_scalar(c)})*{monomial}')

        return ' + '.join(terms).replace('+ -', '- ')

    def to_json(self):
        return [
            {'indices': [i + 1 for i in I], 'c': la.format_scalar(c)}
            for I, c in self.coefficients
        ]


def _sort_with_sign(indices):
    '''
    Sorts a sequence of distinct indices and returns the sign of the
    sorting permutation, or (None, 0) if an index repeats.
    '''

    if len(set(indices)) != len(indices):
        return None, 0

    inversions = sum(
        1 for a, b in itertools.combinations(indices, 2) if a > b
    )
    return tuple(sorted(indices)), -1 if inversions % 2 else 1


def wedge(n, u, k, v, l):
    '''
    Wedge product of a degree-k and a degree-l cochain, both given as
    coefficient vectors in the canonical cochain bases.

    :return: Coefficient vector of degree k + l
    '''

    target = _cochain_index(n, k + l)
    result = [la.ZERO] * len(target)

    for I, a in zip(cochain_basis(n, k), u):
        if not a:
            continue
        for J, b in zip(cochain_basis(n, l), v):
            if not b:
                continue
            K, sign = _sort_with_sign(I + J)
            if K is not None:
                result[target[K]] += a * b * sign

    return tuple(result)


@functools.lru_cache(maxsize=None)
def _dual_differentials(L):
    '''
    Differential of every dual basis vector e^k as a list of
    ((i, j), coefficient) terms.
    '''

    terms = [[] for _ in range(L.dim)]
    for i, j, k, c in L.structure_constants():
        terms[k].append(((i, j), -c))

    return tuple(tuple(t) for t in terms)


@functools.lru_cache(maxsize=None)
def differential(L, k):
    '''
    Matrix of d: Lambda^k g* -> Lambda^{k+1} g* in the canonical cochain
    bases. Columns correspond to degree-k cochains, rows to degree-(k+1)
    cochains.

    :param L: Lie algebra
    :param k: Source degree, 0 <= k <= dim L
    :return: `DomainMatrix` of shape (C(n, k+1), C(n, k))
    '''

    n = L.dim
    source = cochain_basis(n, k)
    target = _cochain_index(n, k + 1)
    dual = _dual_differentials(L)

    rows = [[la.ZERO] * len(source) for _ in range(len(target))]

    for column, I in enumerate(source):
        for position, m in enumerate(I):
            sign = -1 if position % 2 else 1
            for (a, b), c in dual[m]:
                J, parity = _sort_with_sign(I[:position] + (a, b) + I[position + 1:])
                if J is None:
                    continue
                rows[target[J]][column] += c * (sign * parity)

    return la.matrix(rows, ncols=len(source))


@functools.lru_cache(maxsize=None)
def _differential_rank(L, k):
    if k < 0 or k > L.dim:
        return 0
    return la.rank(differential(L, k))


def check_d_squared(L):
    '''
    Checks d_{k+1} d_k = 0 in every degree. On a bracket table this holds
    if and only if the Jacobi identity does.
    '''

    for k in range(L.dim - 1):
        product = differential(L, k + 1) * differential(L, k)
        if not product.is_zero_matrix:
            logging.debug(f'{L.name}: d d is nonzero on degree {k}')
            return False

    return True


def betti(L, k):
    '''
    Dimension of H^k, i.e. dim ker d_k - rank d_{k-1}.
    '''

    if not 0 <= k <= L.dim:
        raise ValueError(f'Degree {k} out of range for dimension {L.dim}')

    cocycles = len(cochain_basis(L.dim, k)) - _differential_rank(L, k)
    return cocycles - _differential_rank(L, k - 1)


def betti_numbers(L, max_degree=None):
    top = L.dim if max_degree is None else min(max_degree, L.dim)
    return tuple(betti(L, k) for k in range(top + 1))


def euler_characteristic(L):
    b = np.array(betti_numbers(L), dtype=np.int64)
    signs = (-1) ** np.arange(len(b))
    return int(np.dot(signs, b))


def complement_representatives(cocycles, coboundaries):
    '''
    Chooses cocycles, in the given order, that are independent modulo the
    coboundaries and of each other.
    '''

    chosen = []
    spanned = list(coboundaries)

    for z in cocycles:
        if not la.in_span(z, spanned):
            chosen.append(z)
            spanned.append(z)

    return chosen


def cohomology_representatives(L, k):
    '''
    Representative cocycles of a basis of H^k. Cocycles are taken from
    the echelon basis of ker d_k and kept if they are independent modulo
    im d_{k-1}, so the choice is deterministic.

    :return: List of `Cochain` objects of degree k
    '''

    if not 0 <= k <= L.dim:
        raise ValueError(f'Degree {k} out of range for dimension {L.dim}')

    cocycles = la.kernel_basis(differential(L, k))
    coboundaries = la.image_basis(differential(L, k - 1)) if k > 0 else ()

    chosen = complement_representatives(cocycles, coboundaries)

    assert len(chosen) == betti(L, k)
    return [Cochain.from_vector(L.dim, k, z) for z in chosen]


@dataclasses.dataclass(frozen=True)
class CohomologyReport:
    algebra: str
    betti: tuple
    representatives: dict

    def to_json(self, labels):
        return {
            'algebra': self.algebra,
            'betti': list(self.betti),
            'classes': {
                str(k): [z.render(labels) for z in classes]
                for k, classes in sorted(self.representatives.items())
            }
        }


def cohomology_report(L, max_degree=None, with_classes=False):
    '''
    Betti numbers up to a maximum degree, and optionally representative
    cocycles for every degree.
    '''

    numbers = betti_numbers(L, max_degree)
    classes = {}
    if with_classes:
        for k in range(len(numbers)):
            classes[k] = tuple(cohomology_representatives(L, k))

    logging.info(f'{L.name}: Betti numbers {numbers}')
    return CohomologyReport(L.name, numbers, classes)
