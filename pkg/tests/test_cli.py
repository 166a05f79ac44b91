"""End-to-end checks of the command-line surface.

Each test drives ``cli.main`` in-process and asserts on stdout and the
exit code; the documented contract is 0 = success, 1 = usage error or
failed verification, 2 = unsupported tier / missing data.
"""

import json

import pytest

from braidcount import cli, unipotent


def run(capsys, *argv):
    rc = cli.main(list(argv))
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


def test_count_table_g2(capsys):
    rc, out, _ = run(capsys, 'count', '--type', 'G2',
                     '--word', '1,2,1,2', '--power', '2')
    assert rc == 0
    lines = out.strip().splitlines()
    assert lines[0].split() == ['class', 'dim', 'count']
    body = [ln.split() for ln in lines[1:]]
    assert [row[0] for row in body] == ['1', 'A1', 'A~1', 'G2(a1)', 'G2']
    assert [row[2] for row in body] == ['0', '1', 'q^2', 'q^4', 'q^6']


def test_count_json_and_csv(capsys):
    rc, out, _ = run(capsys, 'count', '--type', 'G2', '--slope', '2/3',
                     '--format', 'json')
    assert rc == 0
    payload = json.loads(out)
    assert payload['columns'] == ['class', 'dim', 'count']
    assert {r['class']: r['count'] for r in payload['rows']}['G2'] == 'q^6'

    rc, out, _ = run(capsys, 'count', '--type', 'G2', '--slope', '2/3',
                     '--format', 'csv')
    assert rc == 0
    assert out.splitlines()[0] == 'class,dim,count'


def test_word_and_slope_agree(capsys):
    _, out_word, _ = run(capsys, 'count', '--type', 'G2',
                         '--word', '1,2,1,2', '--power', '2')
    _, out_slope, _ = run(capsys, 'count', '--type', 'G2',
                          '--slope', '2/3')
    assert out_word == out_slope


def test_count_min_and_interval(capsys):
    rc, out, _ = run(capsys, 'count-min', '--type', 'G2', '--slope', '2/3')
    assert rc == 0
    assert out.split()[-2:] == ['A1', '1']

    rc, out, _ = run(capsys, 'interval', '--type', 'G2', '--slope', '2/3')
    assert rc == 0
    assert out.strip() == '(A1, G2)'


def test_springer_listing(capsys):
    rc, out, _ = run(capsys, 'springer', '--type', 'G2')
    assert rc == 0
    rows = {ln.split()[0]: ln.split()[1:]
            for ln in out.strip().splitlines()[1:]}
    assert set(rows) == {'1', '2', '3', '4', '6'}
    assert rows['6'][0] == '1,2'
    assert rows['4'] == []  # not regular: no root element column


def test_oracle_roundtrip(capsys):
    rc, out, _ = run(capsys, 'oracle', '--gl', '2', '--q', '2',
                     '--word', '1', '--class', '(2)')
    assert rc == 0
    assert out.strip() == '1'


def test_validate_data(capsys):
    rc, out, _ = run(capsys, 'validate-data', '--type', 'G2')
    assert rc == 0
    assert 'PASS' in out and 'FAIL' not in out


def test_coxeter_subcommand(capsys):
    rc, out, _ = run(capsys, 'coxeter', '--gl', '4')
    assert rc == 0
    assert all('agree' in ln for ln in out.strip().splitlines()[1:])


def test_usage_errors_exit_1(capsys):
    bad = (
        ('count', '--type', 'G2'),                       # no braid
        ('count', '--type', 'G2', '--word', '1', '--slope', '1/2'),
        ('count', '--type', 'G2', '--slope', '1/2', '--power', '2'),
        ('count', '--type', 'G2', '--slope', '0/0'),
        ('count', '--type', 'G2', '--word', '9'),        # bad generator
        ('count', '--type', 'Z9', '--word', '1'),        # unknown type
        ('count', '--type', 'G2', '--gl', '3', '--word', '1'),
        ('oracle', '--gl', '2', '--q', '5', '--word', '1',
         '--class', '(2)'),                              # unsupported q
        ('oracle', '--gl', '2', '--q', '2', '--word', '1',
         '--class', '(3)'),                              # wrong size
    )
    for argv in bad:
        rc = cli.main(list(argv))
        capsys.readouterr()
        assert rc == 1, argv


def test_general_exceptional_word_exits_2(capsys):
    rc, _, err = run(capsys, 'count', '--type', 'F4', '--word', '1,2,3')
    assert rc == 2
    assert 'unsupported tier' in err


def test_missing_data_dir_exits_2(tmp_path, monkeypatch, capsys):
    monkeypatch.delenv('BRAIDCOUNT_DATA', raising=False)
    unipotent.load_asset.cache_clear()
    try:
        rc, _, err = run(capsys, 'count', '--type', 'G2',
                         '--slope', '2/3', '--data-dir', str(tmp_path))
        assert rc == 2
        assert 'data unavailable' in err
    finally:
        monkeypatch.delenv('BRAIDCOUNT_DATA', raising=False)
        unipotent.load_asset.cache_clear()


def test_help_exits_0(capsys):
    assert cli.main(['--help']) == 0
    capsys.readouterr()
    assert cli.main(['count', '--help']) == 0
    capsys.readouterr()
