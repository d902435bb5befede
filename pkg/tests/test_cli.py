from io import StringIO

import orjson
import pytest

from cli.exit_codes import ExitCode, combine, expectation_status
from cli.main import main
from checker.exploration import VerdictKind

DESK = ['--legit', '1', '--illegit', '1', '--resources', '2', '--T', '2', '--max-retrans', '1']

@pytest.fixture(autouse=True)
def log_to_file(tmp_path, monkeypatch: pytest.MonkeyPatch):
    monkeypatch.setenv('HANDSHAKE_CHECKER_LOG_FILE', str(tmp_path / 'checker.log'))

def _run(*argv: str) -> tuple[int, str, str]:
    out, err = StringIO(), StringIO()
    status = main(list(argv), out=out, err=err)
    return status, out.getvalue(), err.getvalue()

def _query_file(tmp_path, text: str) -> str:
    path = tmp_path / 'custom.q'
    path.write_text(text, encoding='utf-8')
    return str(path)

@pytest.mark.parametrize('protocol, prop, expected', [('tcp', 'hogging', 'reachable'),
                                                      ('tcp', 'half-open', 'violated'),
                                                      ('sctp', 'half-open', 'holds'),
                                                      ('sctp', 'hogging-strict', 'unreachable')])
def test_expectations_met(protocol: str, prop: str, expected: str):
    status, out, _ = _run('check', '--protocol', protocol, *DESK, '--prop', prop, '--expect', expected)
    assert status == ExitCode.OK
    assert f'{prop}: {expected}' in out

def test_expectation_mismatch():
    status, out, _ = _run('check', '--protocol', 'tcp', *DESK, '--prop', 'half-open', '--expect', 'holds')
    assert status == ExitCode.MISMATCH
    assert 'MISMATCH' in out

def test_no_expectation_always_succeeds():
    assert _run('check', '--protocol', 'tcp', *DESK, '--prop', 'half-open')[0] == ExitCode.OK

def test_inconclusive_with_expectation():
    status, out, _ = _run('check', '--protocol', 'tcp', *DESK, '--prop', 'half-open', '--expect', 'violated', '--max-states', '3')
    assert status == ExitCode.INCONCLUSIVE
    assert 'inconclusive' in out
    assert _run('check', '--protocol', 'tcp', *DESK, '--prop', 'half-open', '--max-states', '3')[0] == ExitCode.OK

def test_mismatch_outranks_inconclusive(tmp_path):
    status, *_ = _run('check', '--protocol', 'sctp', *DESK, '--prop', 'half-open', '--prop', 'hogging',
                      '--expect', 'violated', '--expect', 'unreachable', '--max-depth', '2')
    assert status == ExitCode.INCONCLUSIVE
    never = _query_file(tmp_path, 'name: never\nE<> false\n')
    status, *_ = _run('check', '--protocol', 'tcp', *DESK, '--prop', 'hogging', '--query-file', never,
                      '--expect', 'unreachable', '--expect', 'unreachable', '--max-depth', '5')
    assert status == ExitCode.MISMATCH

@pytest.mark.parametrize('argv', [
    ['check', '--protocol', 'tcp'],
    ['check', '--prop', 'hogging'],
    ['check', '--protocol', 'udp', '--prop', 'hogging'],
    ['check', '--protocol', 'tcp', '--prop', 'liveness'],
    ['check', '--protocol', 'tcp', '--prop', 'hogging', '--expect', 'inconclusive'],
    ['check', '--protocol', 'tcp', '--prop', 'hogging', '--expect', 'reachable', '--expect', 'holds'],
    ['check', '--protocol', 'tcp', '--prop', 'hogging', '--prop', 'hogging'],
    ['check', '--protocol', 'tcp', '--prop', 'hogging', '--legit', 'two'],
    ['check', '--protocol', 'tcp', '--prop', 'hogging', '--T', '0'],
    ['check', '--protocol', 'tcp', '--prop', 'hogging', '--frobnicate'],
    ['trace'],
    ['export'],
])
def test_usage_errors(argv: list[str]):
    status, _, err = _run(*argv)
    assert status == ExitCode.USAGE

def test_query_file_syntax_error(tmp_path):
    status, _, err = _run('check', '--protocol', 'tcp', *DESK, '--query-file', _query_file(tmp_path, 'name: bad\nE<> x ==\n'))
    assert status == ExitCode.USAGE
    assert err.startswith('error: ')

def test_elaboration_errors_stop_the_run(tmp_path):
    queries = _query_file(tmp_path, 'name: fine\nE<> true\n\nname: out_of_range\nE<> Server.tcb[5].peer == 0\n')
    status, out, err = _run('check', '--protocol', 'tcp', *DESK, '--query-file', queries)
    assert status == ExitCode.USAGE
    assert 'out_of_range' in err
    assert out == ''

def test_query_file_follows_standard_properties(tmp_path):
    queries = _query_file(tmp_path, 'name: anyone_established\n'
                                    'E<> exists (i: ids) (Legit_Client(i).cur_state == ESTABLISHED)\n')
    status, out, _ = _run('check', '--protocol', 'tcp', *DESK, '--prop', 'hogging', '--query-file', queries,
                          '--ids', 'legitimate', '--expect', 'reachable', '--expect', 'reachable', '--format', 'json')
    assert status == ExitCode.OK
    document = orjson.loads(out)
    assert [entry['name'] for entry in document['properties']] == ['hogging', 'anyone_established']
    assert document['properties'][1]['ids'] == 'legitimate'

def test_ids_scope_defaults_to_every_client(tmp_path):
    queries = _query_file(tmp_path, 'name: q\nE<> exists (i: ids) (Legit_Client(i).cur_state == ESTABLISHED)\n')
    # Illegit_Client(1) is not a Legit_Client instance
    assert _run('check', '--protocol', 'tcp', *DESK, '--query-file', queries)[0] == ExitCode.USAGE

def test_scenario_file_with_flag_overrides(tmp_path):
    scenario = tmp_path / 'scenario.toml'
    scenario.write_text("protocol = 'sctp'\nn_legit = 1\nn_illegit = 1\nresources = 3\n", encoding='utf-8')
    status, out, _ = _run('check', '--config', str(scenario), '--resources', '2', '--prop', 'hogging', '--format', 'json')
    assert status == ExitCode.OK
    assert orjson.loads(out)['scenario']['resources'] == 2

def test_report_then_trace(tmp_path):
    report = tmp_path / 'run.json'
    status, out, _ = _run('check', '--protocol', 'tcp', *DESK, '--prop', 'hogging', '--prop', 'half-open', '--report', str(report))
    assert status == ExitCode.OK
    assert orjson.loads(report.read_bytes())['properties'][0]['name'] == 'hogging'

    status, out, _ = _run('trace', str(report), '--prop', 'half-open')
    assert status == ExitCode.OK
    assert out.startswith('half-open: violated, 5 step(s)')
    assert _run('trace', str(report), '--prop', 'happy-path')[0] == ExitCode.USAGE
    assert _run('trace', str(tmp_path / 'missing.json'), '--prop', 'hogging')[0] == ExitCode.USAGE

def test_trace_without_a_trace(tmp_path):
    report = tmp_path / 'run.json'
    _run('check', '--protocol', 'sctp', *DESK, '--prop', 'half-open', '--report', str(report))
    status, _, err = _run('trace', str(report), '--prop', 'half-open')
    assert status == ExitCode.USAGE
    assert 'no trace' in err

def test_parallel_flag_gives_the_same_report():
    sequential = _run('check', '--protocol', 'tcp', *DESK, '--prop', 'half-open', '--format', 'json')[1]
    parallel = _run('check', '--protocol', 'tcp', *DESK, '--prop', 'half-open', '--format', 'json', '--parallel', '--workers', '2')[1]
    strip = lambda text : [{k : v for k, v in entry.items() if k != 'elapsed'} for entry in orjson.loads(text)['properties']]
    assert strip(sequential) == strip(parallel)

def test_export_to_stdout():
    status, out, _ = _run('export', '--protocol', 'tcp', *DESK)
    assert status == ExitCode.OK
    graphs = out.split('}\n')
    assert out.count('digraph') == 3
    flooding = next(graph for graph in graphs if 'digraph "Illegit_Client"' in graph)
    assert flooding.count('[shape=') == 1
    assert '"IC0" -> "IC0"' in flooding
    assert 'syn!' in flooding

def test_export_to_directory(tmp_path):
    status, out, _ = _run('export', '--protocol', 'sctp', *DESK, '--output-dir', str(tmp_path / 'dot'))
    assert status == ExitCode.OK
    assert sorted(path.name for path in (tmp_path / 'dot').iterdir()) == ['Illegit_Client.dot', 'Legit_Client.dot', 'Server.dot']
    assert 'initiation!' in (tmp_path / 'dot' / 'Illegit_Client.dot').read_text(encoding='utf-8')

def test_help_exits_cleanly(capsys: pytest.CaptureFixture):
    assert _run('--help')[0] == ExitCode.OK
    assert 'check' in capsys.readouterr().out

def test_status_precedence():
    assert expectation_status(VerdictKind.HOLDS, None) is ExitCode.OK
    assert expectation_status(VerdictKind.INCONCLUSIVE, None) is ExitCode.OK
    assert expectation_status(VerdictKind.INCONCLUSIVE, VerdictKind.HOLDS) is ExitCode.INCONCLUSIVE
    assert expectation_status(VerdictKind.VIOLATED, VerdictKind.HOLDS) is ExitCode.MISMATCH
    assert combine([ExitCode.OK, ExitCode.INCONCLUSIVE, ExitCode.MISMATCH]) is ExitCode.MISMATCH
    assert combine([ExitCode.INCONCLUSIVE, ExitCode.USAGE]) is ExitCode.USAGE
    assert combine([]) is ExitCode.OK
