#!/usr/bin/env python3
#
# lie_algebra.py: nilpotent Lie algebras given by structure constants
# over Q(i). Provides axiom checks (Jacobi identity, conjugations), the
# lower central series and everything derived from it, direct sums, and
# changes of basis.

import dataclasses
import functools
import itertools
import logging

from typing import Optional

import exact_linalg as la


class LieAlgebraError(Exception):
    pass


class InvalidStructureError(LieAlgebraError):
    pass


class NonNilpotentError(LieAlgebraError):
    '''
    Raised if the lower central series stabilises at a nonzero subspace.
    '''

    def __init__(self, name, stable_dim):
        super().__init__(
            f'{name} is not nilpotent: the lower central series stabilises '
            f'in dimension {stable_dim}'
        )
        self.stable_dim = stable_dim


@dataclasses.dataclass(frozen=True)
class Verdict:
    '''
    Outcome of a check. A failed check lists its violations; the exact
    shape of a violation depends on the check that created it.
    '''

    passed: bool
    violations: tuple = ()

    def __bool__(self):
        return self.passed

    @classmethod
    def from_violations(cls, violations):
        violations = tuple(violations)
        return cls(passed=not violations, violations=violations)


@dataclasses.dataclass(frozen=True)
class Conjugation:
    '''
    Real structure of a complex Lie algebra. The action is antilinear:
    v is mapped to S·conj(v), where column j of S is the image of e_j.
    '''

    matrix: tuple

    def __post_init__(self):
        n = len(self.matrix)
        if any(len(row) != n for row in self.matrix):
            raise InvalidStructureError('Conjugation matrix must be square')

    @classmethod
    def from_images(cls, images):
        n = len(images)
        rows = tuple(
            tuple(la.as_scalar(images[j][i]) for j in range(n))
            for i in range(n)
        )
        return cls(rows)

    @classmethod
    def identity(cls, n):
        return cls.from_images([la.unit_vector(n, i) for i in range(n)])

    @classmethod
    def from_mapping(cls, n, mapping):
        '''
        Builds a conjugation from a sparse description. Indices not
        mentioned in `mapping` are fixed.

        :param n: Dimension
        :param mapping: Dictionary mapping a 0-based index j to a
        dictionary {k: coefficient} describing the image of e_j
        '''

        images = []
        for j in range(n):
            image = [la.ZERO] * n
            for k, c in mapping.get(j, {j: 1}).items():
                image[k] = la.as_scalar(c)
            images.append(image)

        return cls.from_images(images)

    @property
    def dim(self):
        return len(self.matrix)

    def image(self, j):
        return tuple(row[j] for row in self.matrix)

    def as_matrix(self):
        return la.matrix(self.matrix, ncols=self.dim)

    def apply(self, v):
        conj = [la.conjugate(x) for x in v]
        return tuple(
            sum((a * b for a, b in zip(row, conj)), la.ZERO)
            for row in self.matrix
        )


@dataclasses.dataclass(frozen=True)
class Subspace:
    ambient_dim: int
    basis: tuple

    @classmethod
    def span(cls, vectors, ambient_dim):
        return cls(ambient_dim, la.row_echelon(vectors, ncols=ambient_dim))

    @property
    def dim(self):
        return len(self.basis)

    def contains(self, v):
        return la.in_span(v, self.basis)

    def __contains__(self, v):
        return self.contains(v)


@dataclasses.dataclass(frozen=True)
class LieAlgebra:
    '''
    Finite-dimensional Lie algebra over Q(i). Only the brackets [e_i, e_j]
    with i < j are stored (0-based); antisymmetry supplies the rest.
    Nonzero brackets are kept as a sorted tuple of ((i, j), vector) pairs
    so that algebras are immutable and hashable.
    '''

    name: str
    basis: tuple
    brackets: tuple
    conjugation: Optional[Conjugation] = None

    def __post_init__(self):
        n = len(self.basis)
        seen = set()

        for (i, j), vector in self.brackets:
            if not 0 <= i < j < n:
                raise InvalidStructureError(
                    f'{self.name}: bracket index pair ({i + 1}, {j + 1}) is '
                    f'not of the form i < j <= {n}'
                )
            if (i, j) in seen:
                raise InvalidStructureError(
                    f'{self.name}: bracket ({i + 1}, {j + 1}) given twice'
                )
            if len(vector) != n:
                raise InvalidStructureError(
                    f'{self.name}: bracket ({i + 1}, {j + 1}) has '
                    f'{len(vector)} coordinates instead of {n}'
                )
            seen.add((i, j))

        if self.conjugation is not None and self.conjugation.dim != n:
            raise InvalidStructureError(
                f'{self.name}: conjugation has dimension '
                f'{self.conjugation.dim} instead of {n}'
            )

    @classmethod
    def from_table(cls, name, basis, table, conjugation=None):
        '''
        Creates a Lie algebra from a bracket table with 1-based indices.
        Pairs with i > j are negated into i < j form; pairs given in both
        orders are added up.

        :param name: Name of the algebra
        :param basis: Basis labels
        :param table: Dictionary mapping (i, j) to a dictionary {k: c},
        meaning [e_i, e_j] = sum of c * e_k
        :param conjugation: Optional `Conjugation`
        :return: `LieAlgebra`
        '''

        n = len(basis)
        brackets = {}

        for (i, j), terms in table.items():
            if i == j:
                raise InvalidStructureError(
                    f'{name}: bracket of X{i} with itself must not be given'
                )

            sign = la.ONE
            if i > j:
                i, j = j, i
                sign = -la.ONE

            vector = list(brackets.get((i - 1, j - 1), la.zero_vector(n)))
            for k, c in terms.items():
                if not 1 <= k <= n:
                    raise InvalidStructureError(
                        f'{name}: basis index {k} out of range'
                    )
                vector[k - 1] += sign * la.as_scalar(c)

            brackets[(i - 1, j - 1)] = tuple(vector)

        return cls(
            name=name,
            basis=tuple(basis),
            brackets=normalise_brackets(brackets),
            conjugation=conjugation,
        )

    @property
    def dim(self):
        return len(self.basis)

    @functools.cached_property
    def bracket_map(self):
        return dict(self.brackets)

    def bracket_of(self, i, j):
        '''
        Coordinates of [e_i, e_j] for arbitrary 0-based indices.
        '''

        if i == j:
            return la.zero_vector(self.dim)
        if i < j:
            return self.bracket_map.get((i, j), la.zero_vector(self.dim))

        return tuple(-x for x in self.bracket_of(j, i))

    def bracket(self, u, v):
        '''
        Bilinear extension of the bracket to arbitrary vectors.
        '''

        result = [la.ZERO] * self.dim
        for (i, j), vector in self.brackets:
            c = u[i] * v[j] - u[j] * v[i]
            if not c:
                continue
            for k, x in enumerate(vector):
                if x:
                    result[k] += c * x

        return tuple(result)

    def structure_constants(self):
        '''
        Iterates over all nonzero structure constants C_{ij}^k with i < j
        as (i, j, k, c) tuples with 0-based indices.
        '''

        for (i, j), vector in self.brackets:
            for k, c in enumerate(vector):
                if c:
                    yield i, j, k, c

    def is_abelian(self):
        return not self.brackets


def normalise_brackets(brackets):
    '''
    Turns a dictionary {(i, j): vector} into the canonical sorted tuple
    representation, dropping zero brackets.
    '''

    return tuple(
        ((i, j), tuple(vector))
        for (i, j), vector in sorted(brackets.items())
        if not la.is_zero_vector(vector)
    )


def abelian(n, name=None):
    return LieAlgebra(
        name=name or f'abelian_{n}',
        basis=tuple(f'X{i + 1}' for i in range(n)),
        brackets=(),
        conjugation=Conjugation.identity(n),
    )


def check_jacobi(L):
    '''
    Checks the Jacobi identity on all triples of basis vectors.

    :param L: Lie algebra
    :return: `Verdict` whose violations are (i, j, k, cyclic sum) tuples
    with 0-based indices i < j < k
    '''

    violations = []

    for i, j, k in itertools.combinations(range(L.dim), 3):
        total = la.zero_vector(L.dim)
        for a, b, c in [(i, j, k), (j, k, i), (k, i, j)]:
            inner = L.bracket_of(b, c)
            if la.is_zero_vector(inner):
                continue
            total = la.add_vectors(total, L.bracket(la.unit_vector(L.dim, a), inner))

        if not la.is_zero_vector(total):
            violations.append((i, j, k, total))

    return Verdict.from_violations(violations)


def bracket_space(L, first, second):
    '''
    Span of all brackets [a, b] with a in `first`, b in `second`; both
    arguments are sequences of vectors.
    '''

    vectors = [L.bracket(a, b) for a in first for b in second]
    return Subspace.span([v for v in vectors if not la.is_zero_vector(v)], L.dim)


def _basis_vectors(L):
    return [la.unit_vector(L.dim, i) for i in range(L.dim)]


def lower_central_series(L):
    '''
    Computes the lower central series C^1 = g, C^{i+1} = [g, C^i], down
    to the zero subspace.

    :param L: Lie algebra satisfying the Jacobi identity
    :return: List of `Subspace` objects, the last of which is zero
    '''

    term = Subspace.span(_basis_vectors(L), L.dim)
    series = [term]

    while term.dim > 0:
        following = bracket_space(L, _basis_vectors(L), term.basis)
        if following.dim == term.dim:
            raise NonNilpotentError(L.name, term.dim)

        assert following.dim < term.dim
        series.append(following)
        term = following

    return series


def step_length(L):
    return len(lower_central_series(L)) - 1


def derived(L):
    return bracket_space(L, _basis_vectors(L), _basis_vectors(L))


def center(L):
    '''
    Center of the algebra, i.e. all v with [v, e_i] = 0 for every i.
    '''

    n = L.dim

    # One block of rows per basis vector e_i: the coefficients of
    # [e_c, e_i] for every column c.
    rows = []
    for i in range(n):
        images = [L.bracket_of(c, i) for c in range(n)]
        for k in range(n):
            rows.append([images[c][k] for c in range(n)])

    if not rows:
        return Subspace.span(_basis_vectors(L), n)

    return Subspace(n, la.kernel_basis(la.matrix(rows, ncols=n)))


def lattice_rank(L):
    '''
    Rank of a lattice in the simply-connected group of L, i.e. the sum
    of the dimensions of the quotients C^i / C^{i+1}.

    :return: Tuple of the rank and the individual layer dimensions
    '''

    dims = [term.dim for term in lower_central_series(L)]
    layers = tuple(a - b for a, b in zip(dims, dims[1:]))

    assert sum(layers) == L.dim
    return sum(layers), layers


def direct_sum(L1, L2, name=None):
    '''
    Direct sum with block-diagonal brackets. Conjugations are combined
    blockwise if both summands carry one.
    '''

    n1, n2 = L1.dim, L2.dim
    n = n1 + n2

    brackets = {}
    for (i, j), vector in L1.brackets:
        brackets[(i, j)] = tuple(vector) + la.zero_vector(n2)
    for (i, j), vector in L2.brackets:
        brackets[(n1 + i, n1 + j)] = la.zero_vector(n1) + tuple(vector)

    labels = list(L1.basis)
    for label in L2.basis:
        candidate = label
        suffix = 2
        while candidate in labels:
            candidate = f'{label}_{suffix}'
            suffix += 1
        labels.append(candidate)

    conjugation = None
    if L1.conjugation is not None and L2.conjugation is not None:
        images = [tuple(L1.conjugation.image(j)) + la.zero_vector(n2) for j in range(n1)]
        images += [la.zero_vector(n1) + tuple(L2.conjugation.image(j)) for j in range(n2)]
        conjugation = Conjugation.from_images(images)
    elif L1.conjugation is not None or L2.conjugation is not None:
        logging.debug(
            f'Dropping conjugation of {L1.name} + {L2.name}: only one '
            f'summand carries one'
        )

    return LieAlgebra(
        name=name or f'{L1.name}+{L2.name}',
        basis=tuple(labels),
        brackets=normalise_brackets(brackets),
        conjugation=conjugation,
    )


def check_conjugation(L, S=None):
    '''
    Checks that a conjugation is an antilinear involution preserving the
    bracket.

    :param L: Lie algebra
    :param S: Conjugation to check; defaults to the one of L
    :return: `Verdict` whose violations are either ('involution',) or
    ('bracket', i, j) for basis pairs i < j
    '''

    S = S if S is not None else L.conjugation
    if S is None:
        raise InvalidStructureError(f'{L.name} carries no conjugation')

    violations = []

    matrix = S.as_matrix()
    involution = matrix * la.conjugate_matrix(matrix)
    if la.rows_of(involution) != la.rows_of(la.identity(L.dim)):
        violations.append(('involution',))

    images = [S.image(j) for j in range(L.dim)]
    for i, j in itertools.combinations(range(L.dim), 2):
        lhs = S.apply(L.bracket_of(i, j))
        rhs = L.bracket(images[i], images[j])
        if lhs != rhs:
            violations.append(('bracket', i, j))

    return Verdict.from_violations(violations)


def change_basis(L, columns, basis=None, name=None):
    '''
    Expresses L in a new basis. Column a of the change of basis contains
    the coordinates of the new basis vector f_a in the old basis. The
    conjugation, if any, is transported as well.

    :param L: Lie algebra
    :param columns: Sequence of n vectors (the new basis)
    :param basis: Labels of the new basis
    :param name: Name of the new algebra
    :return: `LieAlgebra` isomorphic to L
    '''

    n = L.dim
    columns = [tuple(la.as_scalar(x) for x in column) for column in columns]
    P = la.from_columns(columns, n)

    if len(columns) != n or la.rank(P) != n:
        raise InvalidStructureError(
            f'{L.name}: change of basis is not invertible'
        )

    def coordinates(v):
        x = la.solve(P, v)
        assert x is not None
        return x

    brackets = {}
    for a, b in itertools.combinations(range(n), 2):
        brackets[(a, b)] = coordinates(L.bracket(columns[a], columns[b]))

    conjugation = None
    if L.conjugation is not None:
        conjugation = Conjugation.from_images(
            [coordinates(L.conjugation.apply(column)) for column in columns]
        )

    return LieAlgebra(
        name=name or L.name,
        basis=tuple(basis or (f'F{a + 1}' for a in range(n))),
        brackets=normalise_brackets(brackets),
        conjugation=conjugation,
    )


def generator_indices(L):
    '''
    Chooses basis vectors that complement the derived algebra, greedily
    in index order. Their images span g / [g, g].
    '''

    chosen = list(derived(L).basis)
    generators = []

    for i in range(L.dim):
        e = la.unit_vector(L.dim, i)
        if not la.in_span(e, chosen):
            chosen.append(e)
            generators.append(i)

    return tuple(generators)
