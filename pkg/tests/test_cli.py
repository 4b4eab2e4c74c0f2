"""Tests for the relpos command line."""

import json

import pytest

from cli import build_parser, main


def run(capsys, *argv):
    """Run the CLI and return ``(exit code, stdout, stderr)``."""
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_generate(capsys):
    assert run(capsys, 'generate', 'fib', '--length', '8')[:2] == (0, 'abaababa\n')
    assert run(capsys, 'generate', 'tm | clone:2', '--length', '8')[:2] == (0, 'aabbbbaa\n')


def test_generate_json(capsys):
    code, out, _ = run(capsys, 'generate', 'periodic:aab', '--length', '4', '--format', 'json')
    assert code == 0
    assert json.loads(out) == {
        'provenance': 'periodic', 'descriptor': 'periodic:aab', 'length': 4, 'prefix': 'aaba',
    }


def test_positions_csv(capsys):
    code, out, _ = run(capsys, 'positions', 'periodic:aab', '--n', '2')
    assert code == 0
    assert out == (
        'n,p_a,p_b,r,delta_pa,delta_pb,delta_r\n'
        '1,0,2,2,1,3,2\n'
        '2,1,5,4,2,3,1\n'
    )


def test_positions_human(capsys):
    code, out, _ = run(capsys, 'positions', 'fib', '--n', '3', '--format', 'human')
    assert code == 0
    assert out.splitlines()[0] == 'descriptor: fixed:fibonacci@a'


def test_reconstruct_formula(capsys):
    assert run(capsys, 'reconstruct', '--formula', 'n', '--pairs', '5')[:2] == (0, 'abaababa\n')


def test_reconstruct_violation(capsys, tmp_path):
    """Test that r = (2, 1) exits with 2 and names the failing step."""
    path = tmp_path / 'r.txt'
    path.write_text('2\n1\n')
    code, out, _ = run(capsys, 'reconstruct', '--file', str(path))
    assert code == 2
    assert out.startswith('violation at n=2 (alpha clause 2): ')
    assert run(capsys, 'reconstruct', '--values', '2,1')[0] == 2


def test_reconstruct_json(capsys):
    code, out, _ = run(capsys, 'reconstruct', '--preset', 'tm', '--pairs', '4', '--format', 'json')
    assert code == 0
    report = json.loads(out)
    assert report['ok']
    assert report['spec'] == 'tm'
    assert report['word'] == 'abbabaab'


def test_reconstruct_needs_a_source(capsys):
    code, _, err = run(capsys, 'reconstruct', '--pairs', '3')
    assert code == 4
    assert 'error:' in err


def test_apply(capsys):
    assert run(capsys, 'apply', 'delete', '--word', 'fib', '--length', '5')[:2] == (0, 'aabab\n')


def test_analyze(capsys):
    code, out, _ = run(capsys, 'analyze', 'fib')
    assert code == 0
    report = json.loads(out)
    assert report['trace'] == 1
    assert report['det'] == -1
    assert report['linear_class'] == 1
    assert report['limits']['lim_r_over_n']['x'] == '1'
    assert report['pisa']['closed_form']['A'] == 1


def test_analyze_human(capsys):
    code, out, _ = run(capsys, 'analyze', 'tm', '--format', 'human')
    assert code == 0
    assert 'linear_class: 0\n' in out


def test_verify(capsys):
    code, out, _ = run(capsys, 'verify', 'thm-fib', '--n', '200', '--format', 'text')
    assert code == 0
    assert out == 'thm-fib pass\n'


def test_verify_json(capsys):
    code, out, _ = run(capsys, 'verify', 'table-1', '--scale', '12', '--format', 'json')
    assert code == 0
    report = json.loads(out)
    assert report['passed']
    assert report['certificates'][0]['scale'] == 12


@pytest.mark.parametrize('output_format', ['json', 'human'])
def test_verify_output_is_byte_stable(capsys, output_format):
    """Test that repeated verify runs print identical output."""
    first = run(capsys, 'verify', 'thm-fib', '--n', '200', '--format', output_format)
    second = run(capsys, 'verify', 'thm-fib', '--n', '200', '--format', output_format)
    assert first[0] == second[0] == 0
    assert first[1] == second[1]
    assert 'elapsed_seconds' not in first[1]
    assert 'seconds' not in first[1]


def test_verify_timings_are_opt_in(capsys):
    code, out, _ = run(capsys, 'verify', 'thm-fib', '--n', '200', '--format', 'json', '--timings')
    assert code == 0
    assert 'elapsed_seconds' in json.loads(out)['certificates'][0]


def test_verify_list(capsys):
    code, out, _ = run(capsys, 'verify', '--list')
    assert code == 0
    assert 'thm-fib' in out
    assert 'tm-uni' in out


@pytest.mark.parametrize('argv', [
    ['verify'],
    ['verify', 'thm-nope'],
    ['generate', 'nope', '--length', '5'],
    ['generate', 'fib'],
    ['generate', 'fib', '--length', '0'],
    ['analyze', 'pisa:0,0,1'],
    ['reconstruct', '--formula', 'n^2'],
    ['frobnicate'],
])
def test_bad_input_exits_with_4(capsys, argv):
    assert run(capsys, *argv)[0] == 4


def test_index_budget_exits_with_3(capsys):
    code, _, err = run(capsys, '--max-index', '10', 'generate', 'fib', '--length', '20')
    assert code == 3
    assert 'index budget' in err


def test_logs_go_to_stderr(capsys):
    code, out, err = run(capsys, '--log-level', 'INFO', '--log-format', 'json', 'generate', 'fib', '--length', '3')
    assert code == 0
    assert out == 'aba\n'
    record = json.loads(err.strip().splitlines()[-1])
    assert record['message'] == 'generate finished with exit code 0'


def test_logging_defaults_follow_app_env(capsys, monkeypatch):
    """Test that APP_ENV selects the logging defaults of the command line."""
    monkeypatch.setenv('APP_ENV', 'development')
    code, _, err = run(capsys, 'generate', 'fib', '--length', '3')
    assert code == 0
    assert err.strip().splitlines()[-1].endswith('| INFO | generate finished with exit code 0')

    monkeypatch.setenv('APP_ENV', 'testing')
    _, _, err = run(capsys, 'generate', 'fib', '--length', '3')
    assert json.loads(err.strip().splitlines()[-1])['levelname'] == 'INFO'


def test_parser_defaults():
    args = build_parser().parse_args(['positions', 'fib', '--n', '4'])
    assert args.format == 'csv'
    assert build_parser().parse_args(['analyze', 'fib']).format == 'json'
    assert build_parser().parse_args(['verify', '--all']).scale is None
