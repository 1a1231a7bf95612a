import pytest

import catalog

from bigrading_search import SearchConfig
from bigrading_search import bigrading_options
from bigrading_search import propagate_grading
from bigrading_search import propagate_weights
from bigrading_search import search_w_bigrading
from bigrading_search import search_w_grading
from hodge_bigrading import Bigrading
from hodge_bigrading import Grading
from hodge_bigrading import check_bigrading_compatible
from hodge_bigrading import check_condition_w
from hodge_bigrading import check_grading_wh
from hodge_bigrading import check_hodge_symmetry

# Every diagonal assignment fails (W) here, with or without Hodge
# symmetry.
NEGATIVE = [
    'filiform_4', 'filiform_5', 'L5_9', 'L6_9', 'L6_21_m1', 'L6_24_0',
    'L6_24_1',
]

EXHAUSTIVE = SearchConfig(mode='exhaustive')
SYMMETRIC = SearchConfig(mode='exhaustive', require_symmetry=True)


def algebra(name):
    return catalog.get(name).algebra


def test_propagate_heisenberg():
    L = algebra('n3')
    B = propagate_weights(L, {0: (-1, 0), 1: (0, -1)})
    assert B == Bigrading(((-1, 0), (0, -1), (-1, -1)))

    B = propagate_weights(L, {0: (-1, 0), 1: (-1, 0)})
    assert B == Bigrading(((-1, 0), (-1, 0), (-2, 0)))


def test_propagate_filiform():
    B = propagate_weights(algebra('filiform_4'), {0: (-1, 0), 1: (0, -1)})
    assert B.weights == ((-1, 0), (0, -1), (-1, -1), (-2, -1))


def test_propagate_inconsistent():
    # [X4, X1] = X6 = [X2, X3] forces X6 to two different weights.
    L = algebra('L6_22_0')
    partial = {0: (-1, 0), 1: (0, -1), 2: (0, -1), 3: (-1, 0)}
    assert propagate_weights(L, partial) is None


def test_propagate_incomplete():
    assert propagate_weights(algebra('n3'), {0: (-1, 0)}) is None


def test_propagate_grading():
    G = propagate_grading(algebra('L5_9'), {0: -1, 1: -1})
    assert G == Grading((-1, -1, -2, -3, -3))


def test_options_are_sorted():
    assert bigrading_options(1) == [(-1, 0), (0, -1)]
    assert bigrading_options(2) == [(-2, 0), (-1, -1), (-1, 0), (0, -2), (0, -1)]


def test_symmetry_is_opt_in():
    assert not SearchConfig().require_symmetry


def test_config_validation():
    with pytest.raises(ValueError):
        SearchConfig(bound=0)
    with pytest.raises(ValueError):
        SearchConfig(mode='random')


def test_heisenberg_search():
    L = algebra('n3')
    outcome = search_w_bigrading(
        L, SearchConfig(bound=3, mode='exhaustive', require_symmetry=True)
    )

    assert Bigrading(((-1, 0), (0, -1), (-1, -1))) in outcome.found
    assert outcome.exhausted
    assert outcome.symmetry == 'applied'
    for B in outcome.found:
        assert check_bigrading_compatible(L, B)
        assert check_condition_w(L, B)
        assert check_hodge_symmetry(L, B)


def test_first_hit_stops_early():
    outcome = search_w_bigrading(algebra('n3'), SearchConfig(bound=3))
    assert len(outcome.found) == 1


@pytest.mark.parametrize('name', NEGATIVE)
def test_negative_searches(name):
    outcome = search_w_bigrading(algebra(name), EXHAUSTIVE)
    assert outcome.found == ()
    assert outcome.exhausted
    assert outcome.bound == algebra(name).dim
    assert 'no diagonal bigrading within bound' in outcome.describe()


@pytest.mark.parametrize('name', NEGATIVE + ['L6_22_0'])
def test_negative_searches_in_real_basis(name):
    outcome = search_w_bigrading(algebra(name), SYMMETRIC)
    assert outcome.found == ()
    assert outcome.exhausted
    assert outcome.symmetry == 'identity'
    assert 'forced every generator to (-1,-1)' in outcome.describe()


def test_two_step_search_without_symmetry():
    # Any split of the generators into (1,0) and (0,1) types with the
    # derived algebra at (-1,-1) passes (W) on a two-step algebra; only
    # Hodge symmetry rules these out.
    L = algebra('L6_22_0')
    outcome = search_w_bigrading(L, EXHAUSTIVE)

    assert outcome.found == (
        Bigrading(((-1, 0), (-1, 0), (0, -1), (0, -1), (-1, -1), (-1, -1))),
        Bigrading(((0, -1), (0, -1), (-1, 0), (-1, 0), (-1, -1), (-1, -1))),
    )
    assert 'Hodge symmetry not required' in outcome.describe()
    for B in outcome.found:
        assert check_condition_w(L, B)
        assert not check_hodge_symmetry(L, B)


def test_symmetric_search_in_frame():
    entry = catalog.get('n8_campana')
    outcome = search_w_bigrading(entry.hodge_algebra, SYMMETRIC)

    assert outcome.symmetry == 'applied'
    assert entry.known_bigrading in outcome.found
    for B in outcome.found:
        assert check_hodge_symmetry(entry.hodge_algebra, B)

    assert search_w_bigrading(entry.algebra, SYMMETRIC).found == ()


def test_filiform_without_symmetry():
    outcome = search_w_bigrading(
        algebra('filiform_4'),
        SearchConfig(bound=4, mode='exhaustive', require_symmetry=False)
    )
    assert outcome.found == ()
    assert outcome.exhausted
    assert outcome.candidates_checked == 9


def test_search_is_deterministic():
    L = algebra('n3+abelian_1')
    first = search_w_bigrading(L, EXHAUSTIVE)
    second = search_w_bigrading(L, EXHAUSTIVE)
    assert first == second


def test_monotone_in_bound():
    L = algebra('n3')
    small = search_w_bigrading(L, SearchConfig(bound=2, mode='exhaustive'))
    large = search_w_bigrading(L, SearchConfig(bound=4, mode='exhaustive'))
    assert set(small.found) <= set(large.found)


@pytest.mark.parametrize('name', ['n3', 'L5_4'])
def test_trivial_extension_closure(name):
    outcome = search_w_bigrading(algebra(f'{name}+abelian_1'), SearchConfig(bound=3))
    assert outcome.found


@pytest.mark.parametrize('name', ['L5_9', 'L6_9', 'L6_22_0', 'L6_24_0', 'L6_24_1'])
def test_grading_search_finds_gradings(name):
    L = algebra(name)
    outcome = search_w_grading(L, SearchConfig())
    assert outcome.found
    for G in outcome.found:
        assert check_grading_wh(L, G)


def test_grading_search_without_diagonal_grading():
    outcome = search_w_grading(algebra('L6_21_m1'), EXHAUSTIVE)
    assert outcome.found == ()
    assert outcome.exhausted


def test_grading_search_heisenberg():
    outcome = search_w_grading(algebra('n3'), SearchConfig(bound=3, mode='exhaustive'))
    assert Grading((-1, -1, -2)) in outcome.found


def test_grading_search_abelian_parity():
    L = algebra('abelian_1')
    assert search_w_grading(L, SearchConfig(bound=1, mode='exhaustive')).found == ()
    assert search_w_grading(L, SearchConfig(bound=2)).found == (Grading((-2,)),)


def test_search_without_conjugation_warns(caplog):
    L = catalog.family_abc(0, 1, 0).algebra
    assert L.conjugation is None
    outcome = search_w_bigrading(L, SearchConfig(require_symmetry=True))
    assert 'without Hodge symmetry' in caplog.text
    assert outcome.symmetry == 'skipped'
