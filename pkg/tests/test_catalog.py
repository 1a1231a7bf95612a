import json

import pytest

import catalog
import exact_linalg as la

from ce_cohomology import betti_numbers
from hodge_bigrading import Bigrading
from lie_algebra import LieAlgebra


def test_get():
    entry = catalog.get('n3')
    assert entry.name == 'n3'
    assert entry.algebra.dim == 3
    assert entry.known_bigrading == Bigrading(((-1, 0), (0, -1), (-1, -1)))
    assert entry.known_grading.weights == (-1, -1, -2)


def test_get_is_cached():
    assert catalog.get('n8_campana') is catalog.get('n8_campana')


def test_aliases():
    assert catalog.get('n7_154').name == 'h7'
    assert 'n7_154' in catalog.get('h7').aliases


def test_unknown_names():
    with pytest.raises(catalog.UnknownNameError):
        catalog.get('n9_1')
    with pytest.raises(catalog.UnknownNameError):
        catalog.get('family_abc(1,x,0)')


def test_list_names():
    names = catalog.list_names()
    assert 'n3' in names
    assert 'family_abc(a,b,c)' in names
    assert all(name in names for name in catalog.GRADING_ONLY)


@pytest.mark.parametrize('name', [
    n for n in catalog.list_names() if n != 'family_abc(a,b,c)'
] + [
    'family_abc(1,0,0)', 'family_abc(0,0,0)', 'family_abc(1,1,1)',
    'family_abc(0,1,0)', 'family_abc(0,1,1)', 'family_abc(-1,1,1)',
])
def test_entries_match_expectations(name):
    verdict = catalog.check_entry(catalog.get(name))
    assert verdict, verdict.violations


# The members split by whether a + bc vanishes. (0,1,0) and (-1,1,1) are
# degenerate; e4 - e1 and e7 - e5 take (0,1,0) to (0,0,0).
@pytest.mark.parametrize('parameters,b2b3,rank', [
    ((1, 0, 0), (11, 14), 3),
    ((1, 1, 1), (11, 14), 3),
    ((0, 1, 1), (11, 14), 3),
    ((0, 1, 0), (11, 16), 2),
    ((0, 0, 0), (11, 16), 2),
    ((0, 0, 1), (11, 16), 2),
    ((-1, 1, 1), (11, 16), 2),
])
def test_family_betti_numbers(parameters, b2b3, rank):
    L = catalog.family_abc(*parameters).algebra
    assert betti_numbers(L)[2:4] == b2b3
    assert catalog.pfaffian_rank(L) == rank


def test_family_conjugation():
    assert catalog.family_abc(2, la.IMAG, -la.IMAG).algebra.conjugation is not None
    assert catalog.family_abc(la.IMAG, 0, 0).algebra.conjugation is None
    assert catalog.get('family_abc(1/2,0,0)').name == 'family_abc(1/2,0,0)'


@pytest.mark.parametrize('name,b2b3', [
    ('n7_142', (11, 14)), ('n7_143', (11, 16)), ('n7_144', (11, 17)), ('n7_145', (12, 18)),
])
def test_rank_seven_betti_numbers(name, b2b3):
    numbers = betti_numbers(catalog.get(name).algebra)
    assert numbers[1] == 4
    assert numbers[2:4] == b2b3


@pytest.mark.parametrize('name,rank', [
    ('n7_142', 3), ('n7_143', 2), ('n7_144', 1), ('n7_145', 0),
])
def test_pfaffian_rank(name, rank):
    assert catalog.pfaffian_rank(catalog.get(name).algebra) == rank


def test_pfaffian_rank_requires_two_steps():
    with pytest.raises(ValueError):
        catalog.pfaffian_rank(catalog.get('n3').algebra)
    with pytest.raises(ValueError):
        catalog.pfaffian_rank(catalog.get('n8_campana').algebra)


def test_sums():
    entry = catalog.get('n3+abelian_2')
    assert entry.algebra.dim == 5
    assert entry.known_bigrading.weights[3:] == ((-1, -1), (-1, -1))

    entry = catalog.get('n7_142+abelian_1')
    assert entry.frame is not None
    assert entry.hodge_algebra.basis[-2:] == ('X6', 'X1')
    assert catalog.check_entry(entry)


def test_campana_frame():
    entry = catalog.get('n8_campana')
    H = entry.hodge_algebra
    assert H.basis == ('A1', 'A2', 'Abar1', 'Abar2', 'B1', 'B2', 'C1', 'Cbar1')
    # [A1, Abar1] = B1
    assert H.bracket_of(0, 2) == la.unit_vector(8, 4)


def test_file_round_trip(tmp_path):
    entry = catalog.get('n7_143')
    path = tmp_path / 'n7_143.json'
    path.write_text(catalog.export(entry))

    L, bigrading, grading = catalog.load(str(path))
    assert L == entry.hodge_algebra
    assert bigrading == entry.known_bigrading
    assert grading == entry.known_grading


def test_save_and_resolve(tmp_path):
    path = tmp_path / 'n3.json'
    catalog.save(catalog.get('n3').algebra, str(path))

    source = catalog.resolve(str(path))
    assert source.algebra == catalog.get('n3').algebra
    assert source.bigrading is None
    assert catalog.resolve('catalog:n3').entry is catalog.get('n3')


def document(brackets, dim=3, **extra):
    return dict({
        'name': 'test',
        'dim': dim,
        'basis': [f'X{i + 1}' for i in range(dim)],
        'brackets': brackets,
    }, **extra)


def test_fractional_coefficients():
    text = json.dumps(document([{'i': 1, 'j': 2, 'terms': [{'k': 3, 'c': '1/2+3/4i'}]}]))
    L, _, _ = catalog.loads(text)
    assert L.bracket_of(0, 1)[2] == la.scalar(la.rational(1, 2), la.rational(3, 4))


def test_jacobi_failure_is_reported():
    brackets = [
        {'i': 1, 'j': 2, 'terms': [{'k': 3, 'c': '1'}]},
        {'i': 2, 'j': 3, 'terms': [{'k': 4, 'c': '1'}]},
        {'i': 1, 'j': 3, 'terms': [{'k': 5, 'c': '1'}]},
        {'i': 1, 'j': 4, 'terms': [{'k': 5, 'c': '1'}]},
    ]
    text = json.dumps(document(brackets, dim=5))

    with pytest.raises(catalog.ValidationError) as info:
        catalog.loads(text)
    assert info.value.item == (1, 2, 3)

    L, _, _ = catalog.loads(text, validated=False)
    assert L.dim == 5


def test_non_nilpotent_file():
    brackets = [
        {'i': 1, 'j': 2, 'terms': [{'k': 3, 'c': '1'}]},
        {'i': 1, 'j': 3, 'terms': [{'k': 2, 'c': '1'}]},
    ]
    with pytest.raises(catalog.ValidationError) as info:
        catalog.loads(json.dumps(document(brackets)))
    assert info.value.item == 'nilpotency'


def test_parse_error_location():
    with pytest.raises(catalog.ParseError) as info:
        catalog.loads('{"name": "x",\n "dim": }')
    assert (info.value.line, info.value.column) == (2, 9)


@pytest.mark.parametrize('brackets,path', [
    ([{'i': 1, 'j': 2, 'terms': [{'k': 3, 'c': 'abc'}]}], '$.brackets[0].terms[0].c'),
    ([{'i': 1, 'j': 4, 'terms': []}], '$.brackets[0].j'),
    ([{'i': 2, 'j': 1, 'terms': []}], '$.brackets[0]'),
    ([{'i': 1, 'j': 2, 'terms': [{'k': 3, 'c': 1}]}], '$.brackets[0].terms[0].c'),
])
def test_parse_error_paths(brackets, path):
    with pytest.raises(catalog.ParseError) as info:
        catalog.loads(json.dumps(document(brackets)))
    assert info.value.path == path


def test_missing_key():
    with pytest.raises(catalog.ParseError) as info:
        catalog.loads(json.dumps({'name': 'x', 'dim': 1}))
    assert info.value.path == '$'


def test_campana_embedding():
    L = catalog.get('n8_campana').algebra
    assert catalog.verify_matrix_embedding(L, catalog.campana_embedding())

    verdict = catalog.verify_matrix_embedding(L, catalog.campana_embedding(mutant=True))
    assert not verdict
    # [Y1, Z1] = B
    assert ('bracket', 2, 4) in verdict.violations


def test_embedding_size_mismatch():
    with pytest.raises(ValueError):
        catalog.verify_matrix_embedding(catalog.get('n3').algebra, catalog.campana_embedding())


def test_survey_small_ranks():
    df = catalog.rank_survey(max_rank=3)
    assert list(df['name']) == ['abelian_1', 'abelian_2', 'n3', 'abelian_3']
    assert df['admissible'].all()
    assert set(df['evidence']) == {'bigrading'}


def test_survey_rank_six():
    df = catalog.rank_survey(max_rank=6)
    admissible = set(df.loc[df['admissible'], 'name'])
    assert admissible == {
        'abelian_1', 'abelian_2', 'abelian_3', 'abelian_4', 'abelian_5', 'abelian_6',
        'n3', 'n3+abelian_1', 'n3+abelian_2', 'n3+abelian_3',
        'L5_4', 'L5_4+abelian_1', 'n3+n3',
    }

    grading_only = df[df['name'].isin(catalog.GRADING_ONLY)]
    assert not grading_only['bigrading_found'].any()
    assert set(grading_only.loc[grading_only['grading_found'], 'name']) == {
        'L5_9', 'L6_9', 'L6_22_0', 'L6_24_0', 'L6_24_1',
    }


@pytest.mark.parametrize('name,evidence', [
    ('n7_142', 'bigrading'), ('n7_143', 'bigrading'), ('n7_144', 'none'), ('n7_145', 'none'),
])
def test_survey_rank_seven(name, evidence):
    row = catalog.survey_row(name)
    assert (row['rank'], row['b1'], row['step']) == (7, 4, 2)
    assert row['evidence'] == evidence


def test_survey_bound():
    with pytest.raises(ValueError):
        catalog.rank_survey(max_rank=9)


def test_format_survey():
    text = catalog.format_survey(catalog.rank_survey(max_rank=2))
    assert text.startswith('| name')
    assert 'not exhaustive' in text


def test_plain_algebra_has_no_known_bigrading():
    entry = catalog.CatalogEntry(LieAlgebra.from_table('p', ('X1',), {}))
    assert entry.hodge_algebra is entry.algebra
    assert entry.known_bigrading is None
