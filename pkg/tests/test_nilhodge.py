import json

import pytest

import catalog

from hodge_bigrading import Bigrading
from hodge_bigrading import Grading
from lie_algebra import LieAlgebra
from nilhodge import EXIT_AXIOM
from nilhodge import EXIT_CONDITION
from nilhodge import EXIT_OK
from nilhodge import EXIT_USAGE
from nilhodge import main


def run(capsys, *argv):
    code = main(['--json', *argv])
    out = capsys.readouterr().out
    report = json.loads(out) if out else None
    return code, report


def test_check_w_heisenberg(capsys):
    code, report = run(capsys, 'check-w', 'catalog:n3')
    assert code == EXIT_OK
    assert report['exit_code'] == EXIT_OK
    assert report['command'] == ['--json', 'check-w', 'catalog:n3']
    assert len(report['inputs_digest']) == 64

    results = report['results']
    assert results['passed']
    assert results['H1'] == [{'slot': [0, 1], 'dim': 1}, {'slot': [1, 0], 'dim': 1}]
    assert results['H2'] == [{'slot': [1, 2], 'dim': 1}, {'slot': [2, 1], 'dim': 1}]
    assert results['hodge_symmetry']
    assert results['type'] == [1, 1, 0]


def test_text_output(capsys):
    assert main(['check-w', 'catalog:filiform_4']) == EXIT_USAGE
    capsys.readouterr()

    assert main(['check-w', 'catalog:n3']) == EXIT_OK
    assert 'condition (W) holds' in capsys.readouterr().out


def test_cohomology(capsys):
    code, report = run(capsys, 'cohomology', 'catalog:n7_142')
    assert code == EXIT_OK
    assert report['results']['betti'][2:4] == [11, 14]


def test_search_reports_exhaustion(capsys):
    code, report = run(capsys, 'search-bigrading', 'catalog:L5_9', '--bound', '5', '--all')
    assert code == EXIT_OK
    assert report['results']['count'] == 0
    assert report['results']['exhausted']
    assert 'no diagonal bigrading within bound 5' in report['results']['summary']


def test_search_symmetry_is_opt_in(capsys):
    code, report = run(capsys, 'search-bigrading', 'catalog:L6_22_0', '--all')
    assert code == EXIT_OK
    assert report['results']['count'] == 2
    assert report['results']['symmetry'] == 'off'

    code, report = run(capsys, 'search-bigrading', 'catalog:L6_22_0', '--all', '--symmetric')
    assert report['results']['count'] == 0
    assert report['results']['symmetry'] == 'identity'
    assert 'forced every generator' in report['results']['summary']


def test_symmetric_search_uses_frame(capsys):
    code, report = run(capsys, 'search-bigrading', 'catalog:n8_campana', '--all', '--symmetric')
    assert code == EXIT_OK
    assert report['results']['symmetry'] == 'applied'
    known = catalog.get('n8_campana').known_bigrading.to_json()
    assert known in report['results']['found']


def test_search_grading(capsys):
    code, report = run(capsys, 'search-grading', 'catalog:L5_9')
    assert code == EXIT_OK
    assert report['results']['found'] == [[-1, -1, -2, -3, -3]]


@pytest.mark.parametrize('argv', [
    ['--seed', '1', 'verify', 'catalog:n3'],
    ['frobnicate'],
    ['verify'],
    ['verify', 'catalog:nope'],
    ['search-bigrading', 'catalog:n3', '--bound', '0'],
    ['extend', 'catalog:n3', '--abelian', '0'],
    ['check-w', 'catalog:L5_9'],
    ['catalog', 'show'],
    ['survey', '--max-rank', '9'],
    ['survey', '--max-rank', '0'],
    ['cohomology', 'catalog:n3', '--max-degree', '-1'],
    ['extend', 'catalog:n3', '--abelian', '1', 'out.json'],
])
def test_usage_errors(capsys, argv):
    assert main(argv) == EXIT_USAGE
    assert 'error' in capsys.readouterr().err


def test_missing_file(tmp_path, capsys):
    assert main(['verify', str(tmp_path / 'missing.json')]) == EXIT_USAGE


def write_document(path, document):
    path.write_text(json.dumps(document))
    return str(path)


def test_verify_jacobi_failure(tmp_path, capsys):
    path = write_document(tmp_path / 'mutant.json', {
        'name': 'mutant',
        'dim': 5,
        'basis': ['X1', 'X2', 'X3', 'X4', 'X5'],
        'brackets': [
            {'i': 1, 'j': 2, 'terms': [{'k': 3, 'c': '1'}]},
            {'i': 2, 'j': 3, 'terms': [{'k': 4, 'c': '1'}]},
            {'i': 1, 'j': 3, 'terms': [{'k': 5, 'c': '1'}]},
            {'i': 1, 'j': 4, 'terms': [{'k': 5, 'c': '1'}]},
        ],
    })

    code = main(['--json', 'verify', path])
    assert code == EXIT_AXIOM
    report = json.loads(capsys.readouterr().out)
    assert report['results']['jacobi_violation'] == [1, 2, 3]

    # Other commands validate on load.
    assert main(['cohomology', path]) == EXIT_AXIOM


def test_verify(capsys):
    code, report = run(capsys, 'verify', 'catalog:n8_campana')
    assert code == EXIT_OK
    assert report['results']['layers'] == [4, 2, 2]
    assert report['results']['conjugation']


def test_verify_embedding(capsys):
    code, report = run(capsys, 'verify-embedding', 'catalog:n8_campana')
    assert code == EXIT_OK
    assert report['results']['pairs'] == 28

    assert main(['verify-embedding', 'catalog:n8_campana', '--mutant']) == EXIT_AXIOM
    assert 'Failure at' in capsys.readouterr().out


def test_check_grading_failure(tmp_path, capsys):
    path = str(tmp_path / 'l6_21.json')
    catalog.save(
        catalog.get('L6_21_m1').algebra, path,
        grading=Grading((-1, -1, -2, -3, -3, -4))
    )

    code, report = run(capsys, 'check-grading', path)
    assert code == EXIT_CONDITION
    assert ['W', 2, 5] in report['results']['failures']


def test_check_grading_uses_total_grading(capsys):
    code, report = run(capsys, 'check-grading', 'catalog:n8_campana')
    assert code == EXIT_OK
    assert report['results']['grading'] == [-1, -1, -1, -1, -2, -2, -3, -3]


def test_incompatible_bigrading(tmp_path, capsys):
    path = str(tmp_path / 'n3.json')
    catalog.save(
        catalog.get('n3').algebra, path,
        bigrading=Bigrading(((-1, 0), (-1, 0), (-1, -1)))
    )
    assert main(['check-w', path]) == EXIT_CONDITION
    assert main(['bigraded', path]) == EXIT_CONDITION


def test_missing_conjugation_warning(tmp_path, capsys):
    path = str(tmp_path / 'plain.json')
    L = LieAlgebra.from_table('plain', ('X1', 'X2', 'X3'), {(1, 2): {3: 1}})
    catalog.save(L, path, bigrading=Bigrading(((-1, 0), (0, -1), (-1, -1))))

    code, report = run(capsys, 'check-w', path)
    assert code == EXIT_OK
    assert 'hodge_symmetry' not in report['results']
    assert any('no conjugation' in w for w in report['warnings'])


def test_extend(tmp_path, capsys):
    dest = str(tmp_path / 'extended.json')
    assert main(['extend', 'catalog:n7_143', '--abelian', '2', '--dest', dest]) == EXIT_OK

    L, bigrading, grading = catalog.load(dest)
    assert L.dim == 9
    assert bigrading.weights[-2:] == ((-1, -1), (-1, -1))
    assert grading.weights[-2:] == (-2, -2)

    assert main(['check-w', dest]) == EXIT_OK
    assert main(['check-grading', dest]) == EXIT_OK


def test_catalog_commands(tmp_path, capsys):
    code, report = run(capsys, 'catalog', 'list')
    assert 'n8_campana' in report['results']['names']

    code, report = run(capsys, 'catalog', 'show', 'n7_152')
    assert report['results']['provenance'] == 'external, unverified'
    assert report['results']['notes']

    path = str(tmp_path / 'h7.json')
    assert main(['catalog', 'export', 'n7_154', path]) == EXIT_OK
    L, bigrading, _ = catalog.load(path)
    assert L == catalog.get('h7').hodge_algebra
    assert bigrading == catalog.get('h7').known_bigrading


def test_survey(capsys):
    code, report = run(capsys, 'survey', '--max-rank', '3')
    assert code == EXIT_OK
    rows = report['results']['rows']
    assert [row['name'] for row in rows] == ['abelian_1', 'abelian_2', 'n3', 'abelian_3']
    assert all(row['admissible'] for row in rows)
    assert report['results']['notes']


def test_output_file(tmp_path, capsys):
    path = tmp_path / 'report.json'
    assert main(['--output', str(path), 'bigraded', 'catalog:n3']) == EXIT_OK

    report = json.loads(path.read_text())
    assert report['results']['tables']['3'] == [{'slot': [2, 2], 'dim': 1}]
    assert 'H^3' in capsys.readouterr().out


def test_reports_are_deterministic(capsys):
    first = run(capsys, 'search-bigrading', 'catalog:n3+abelian_1', '--all')
    second = run(capsys, 'search-bigrading', 'catalog:n3+abelian_1', '--all')
    assert first == second
