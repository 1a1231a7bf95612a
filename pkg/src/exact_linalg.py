#!/usr/bin/env python3
#
# exact_linalg.py: exact linear algebra over the Gaussian rationals Q(i).
# Every cohomology computation in this package ends up here: ranks,
# kernels, images, span membership, and solving linear systems.
#
# Scalars are elements of `sympy`'s QQ_I domain, vectors are tuples of
# scalars, and matrices are `DomainMatrix` instances over QQ_I. Nothing
# in this module ever touches floating point numbers.

import re

from sympy import QQ
from sympy.polys.domains import QQ_I
from sympy.polys.matrices import DomainMatrix


FIELD = QQ_I
ZERO = QQ_I.zero
ONE = QQ_I.one
IMAG = QQ_I.imag_unit


class ScalarSyntaxError(ValueError):
    '''
    Raised if a coefficient string does not follow the scalar grammar.
    The position refers to the offending character of the string.
    '''

    def __init__(self, message, position):
        super().__init__(f'{message} (at position {position + 1})')
        self.position = position


def rational(numerator, denominator=1):
    return QQ(numerator, denominator)


def scalar(re_part=0, im_part=0):
    '''
    Creates a Gaussian rational from its real and imaginary part. Both
    parts may be integers or rationals created via `rational()`.

    :param re_part: Real part
    :param im_part: Imaginary part
    :return: Element of QQ_I
    '''

    return FIELD(QQ.convert(re_part), QQ.convert(im_part))


def as_scalar(value):
    '''
    Converts integers, rationals, and existing scalars to QQ_I. Tuples
    are interpreted as (real, imaginary) pairs.
    '''

    if isinstance(value, FIELD.dtype):
        return value
    if isinstance(value, tuple):
        return scalar(*value)
    return scalar(value)


def conjugate(s):
    return FIELD.dtype.new(s.x, -s.y)


def is_real(s):
    return not s.y


def _format_rational(r):
    numerator, denominator = int(r.numerator), int(r.denominator)
    if denominator == 1:
        return str(numerator)
    return f'{numerator}/{denominator}'


def format_scalar(s):
    '''
    Formats a scalar according to the coefficient grammar used by the
    algebra file format, e.g. `1/2+3/4i`, `-2i`, or `5`. The output is
    accepted by `parse_scalar()`.
    '''

    if not s.y:
        return _format_rational(s.x)
    imaginary = _format_rational(s.y) + 'i'
    if not s.x:
        return imaginary
    if s.y < 0:
        return _format_rational(s.x) + imaginary
    return _format_rational(s.x) + '+' + imaginary


_DIGITS = re.compile(r'[0-9]+')


def _parse_rational(text, pos, allow_sign=True):
    start = pos
    sign = 1
    if allow_sign and pos < len(text) and text[pos] == '-':
        sign = -1
        pos += 1

    m = _DIGITS.match(text, pos)
    if m is None:
        raise ScalarSyntaxError('expected digits', pos)

    numerator = int(m.group()) * sign
    pos = m.end()
    denominator = 1

    if pos < len(text) and text[pos] == '/':
        m = _DIGITS.match(text, pos + 1)
        if m is None:
            raise ScalarSyntaxError('expected denominator digits', pos + 1)
        denominator = int(m.group())
        if denominator == 0:
            raise ScalarSyntaxError('zero denominator', pos + 1)
        pos = m.end()

    assert pos > start
    return QQ(numerator, denominator), pos


def parse_scalar(text):
    '''
    Parses a coefficient string of the grammar

        RAT    := '-'? digits ('/' digits)?
        SCALAR := RAT | RAT 'i' | RAT ('+'|'-') RAT 'i'

    :param text: String to parse
    :return: Element of QQ_I
    '''

    if not isinstance(text, str):
        raise ScalarSyntaxError('coefficient must be a string', 0)

    first, pos = _parse_rational(text, 0)

    if pos == len(text):
        return FIELD(first, QQ.zero)

    if text[pos] == 'i':
        if pos + 1 != len(text):
            raise ScalarSyntaxError('unexpected trailing characters', pos + 1)
        return FIELD(QQ.zero, first)

    if text[pos] not in '+-':
        raise ScalarSyntaxError(f'unexpected character {text[pos]!r}', pos)

    sign = -1 if text[pos] == '-' else 1
    second, pos = _parse_rational(text, pos + 1, allow_sign=False)

    if pos >= len(text) or text[pos] != 'i':
        raise ScalarSyntaxError("expected 'i' after imaginary part", pos)
    if pos + 1 != len(text):
        raise ScalarSyntaxError('unexpected trailing characters', pos + 1)

    return FIELD(first, second * sign)


def zero_vector(n):
    return (ZERO,) * n


def unit_vector(n, i):
    return tuple(ONE if j == i else ZERO for j in range(n))


def is_zero_vector(v):
    return not any(v)


def add_vectors(u, v):
    return tuple(a + b for a, b in zip(u, v))


def scale_vector(c, v):
    return tuple(c * a for a in v)


def matrix(rows, ncols=None):
    '''
    Creates a dense matrix over QQ_I from a sequence of rows. Entries
    are converted with `as_scalar()`, so integers are admissible.

    :param rows: Sequence of rows
    :param ncols: Number of columns; only required if `rows` is empty
    :return: `DomainMatrix` over QQ_I
    '''

    rows = [[as_scalar(x) for x in row] for row in rows]

    if ncols is None:
        assert rows, 'Number of columns is required for an empty matrix'
        ncols = len(rows[0])

    assert all(len(row) == ncols for row in rows), 'Ragged rows'
    return DomainMatrix(rows, (len(rows), ncols), FIELD)


def from_columns(columns, nrows):
    '''
    Creates a matrix whose columns are the given vectors.
    '''

    columns = list(columns)
    rows = [[columns[j][i] for j in range(len(columns))] for i in range(nrows)]
    return matrix(rows, ncols=len(columns))


def identity(n):
    return matrix([unit_vector(n, i) for i in range(n)], ncols=n)


def rows_of(m):
    return [tuple(row) for row in m.to_list()]


def columns_of(m):
    return rows_of(m.transpose())


def _is_empty(m):
    rows, cols = m.shape
    return rows == 0 or cols == 0


def rank(m):
    '''
    Rank of a matrix over Q(i), computed by exact Gauss--Jordan
    elimination.
    '''

    if _is_empty(m):
        return 0
    _, pivots = m.rref()
    return len(pivots)


def row_echelon(vectors, ncols=None):
    '''
    Canonical basis of the span of a set of vectors: the nonzero rows of
    the reduced row echelon form. Since the reduced row echelon form of a
    row space is unique, two spanning sets of the same subspace give the
    same sequence.

    :param vectors: Sequence of vectors of equal length
    :param ncols: Ambient dimension; only required if `vectors` is empty
    :return: Tuple of vectors
    '''

    vectors = list(vectors)
    if not vectors:
        return ()

    m = matrix(vectors, ncols=ncols)
    if _is_empty(m):
        return ()

    reduced, pivots = m.rref()
    return tuple(rows_of(reduced)[:len(pivots)])


def kernel_basis(m):
    '''
    Exact basis of the null space of a matrix, in reduced row echelon
    form. Each returned vector satisfies m·v = 0, and the number of
    vectors is the number of columns minus the rank.

    :param m: Matrix
    :return: Tuple of vectors of length `m.shape[1]`
    '''

    rows, cols = m.shape

    if cols == 0:
        return ()
    if rows == 0:
        return tuple(unit_vector(cols, i) for i in range(cols))

    reduced, pivots = m.rref()
    if len(pivots) == cols:
        return ()

    null_space = reduced.nullspace_from_rref(pivots)
    basis = row_echelon(rows_of(null_space), ncols=cols)

    assert len(basis) == cols - len(pivots)
    return basis


def image_basis(m):
    '''
    Canonical basis of the column space of a matrix.
    '''

    rows, _ = m.shape
    return row_echelon(columns_of(m), ncols=rows)


def in_span(v, basis):
    '''
    Checks whether a vector lies in the span of a set of vectors.

    :param v: Vector
    :param basis: Sequence of vectors; need not be independent
    :return: True if `v` is a linear combination of `basis`
    '''

    basis = list(basis)
    if is_zero_vector(v):
        return True
    if not basis:
        return False

    before = rank(matrix(basis))
    return rank(matrix(basis + [v])) == before


def solve(m, b):
    '''
    Solves m·x = b exactly.

    :param m: Matrix
    :param b: Right-hand side of length `m.shape[0]`
    :return: A solution (free variables set to zero), or `None` if the
    system is inconsistent
    '''

    rows, cols = m.shape
    augmented = m.hstack(from_columns([b], rows))
    reduced, pivots = augmented.rref()

    if cols in pivots:
        return None

    reduced = rows_of(reduced)
    x = [ZERO] * cols
    for row, pivot in enumerate(pivots):
        x[pivot] = reduced[row][cols]

    return tuple(x)


def matrix_vector(m, v):
    _, cols = m.shape
    product = m * from_columns([v], cols)
    return tuple(row[0] for row in product.to_list())


def commutator(a, b):
    return a * b - b * a


def conjugate_matrix(m):
    rows, cols = m.shape
    return matrix(
        [[conjugate(x) for x in row] for row in m.to_list()],
        ncols=cols
    )
