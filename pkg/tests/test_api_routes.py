"""Tests for API routes.

This module covers the word, reconstruction, analysis and verification
endpoints of the HTTP API.
"""

import json


def test_health_check(client):
    """Test health check endpoint.

    :param client: Flask test client
    :type client: FlaskClient
    """
    response = client.get('/health')
    assert response.status_code == 200
    data = json.loads(response.data)
    assert data['status'] == 'healthy'


def test_get_word(client):
    """Test exporting a word prefix.

    :param client: Flask test client
    :type client: FlaskClient
    """
    response = client.get('/api/words', query_string={'spec': 'tm | clone:2', 'length': 8})
    assert response.status_code == 200
    data = json.loads(response.data)
    assert data['prefix'] == 'aabbbbaa'
    assert data['provenance'] == 'operator-derived'


def test_get_word_missing_fields(client):
    response = client.get('/api/words', query_string={'spec': 'fib'})
    assert response.status_code == 400
    data = json.loads(response.data)
    assert data['type'] == 'ParameterError'


def test_get_word_bad_spec(client):
    response = client.get('/api/words', query_string={'spec': 'nope', 'length': 3})
    assert response.status_code == 400
    assert json.loads(response.data)['type'] == 'SpecParseError'


def test_get_word_over_budget(client, small_budget):
    """Test that the index budget maps to 422.

    :param client: Flask test client
    :type client: FlaskClient
    :param small_budget: Reduced budget fixture
    :type small_budget: int
    """
    response = client.get('/api/words', query_string={'spec': 'fib', 'length': small_budget + 1})
    assert response.status_code == 422
    assert json.loads(response.data)['type'] == 'ResourceLimitError'


def test_get_positions(client):
    response = client.get('/api/positions', query_string={'spec': 'fib', 'n': 3})
    assert response.status_code == 200
    data = json.loads(response.data)
    assert [row['r'] for row in data['rows']] == [1, 2, 3]
    assert data['descriptor'] == 'fixed:fibonacci@a'


def test_get_positions_csv(client):
    response = client.get('/api/positions', query_string={'spec': 'periodic:aab', 'n': 1, 'format': 'csv'})
    assert response.status_code == 200
    assert response.mimetype == 'text/csv'
    assert response.data.decode() == 'n,p_a,p_b,r,delta_pa,delta_pb,delta_r\n1,0,2,2,1,3,2\n'


def test_reconstruct_no_data(client):
    """Test reconstruction endpoint without a body.

    :param client: Flask test client
    :type client: FlaskClient
    """
    response = client.post('/api/reconstruct', json={})
    assert response.status_code == 400
    assert json.loads(response.data)['error'] == 'No JSON data provided'


def test_reconstruct_missing_fields(client):
    response = client.post('/api/reconstruct', json={'pairs': 4})
    assert response.status_code == 400
    assert 'formula, values or preset' in json.loads(response.data)['error']


def test_reconstruct_success(client):
    response = client.post('/api/reconstruct', json={'formula': 'n', 'pairs': 5})
    assert response.status_code == 200
    data = json.loads(response.data)
    assert data['ok']
    assert data['word'] == 'abaababa'
    assert data['determined_length'] == 8


def test_reconstruct_violation(client):
    response = client.post('/api/reconstruct', json={'values': [2, 1]})
    assert response.status_code == 422
    data = json.loads(response.data)
    assert not data['ok']
    assert data['violation'] == {
        'index': 2,
        'condition': 'alpha',
        'clause': 2,
        'detail': data['violation']['detail'],
    }


def test_reconstruct_preset(client):
    response = client.post('/api/reconstruct', json={'preset': 'tm', 'pairs': 4})
    assert response.status_code == 200
    assert json.loads(response.data)['word'] == 'abbabaab'


def test_analyze(client):
    response = client.get('/api/analyze', query_string={'substitution': 'pisa:2,0,2'})
    assert response.status_code == 200
    data = json.loads(response.data)
    assert data['matrix'] is not None
    assert data['pisa']['closed_form']['A'] == 2
    assert data['pisa']['closed_form']['B'] == 1
    assert data['pisa']['closed_form']['C'] == 1


def test_analyze_bad_substitution(client):
    response = client.get('/api/analyze', query_string={'substitution': 'a->abc;b->a'})
    assert response.status_code == 400


def test_list_theorems(client):
    response = client.get('/api/theorems')
    assert response.status_code == 200
    ids = [t['id'] for t in json.loads(response.data)['theorems']]
    assert 'thm-fib' in ids
    assert len(ids) == 24


def test_verify(client):
    response = client.post('/api/verify/thm-fib', json={'scale': 100, 'seed': 3})
    assert response.status_code == 200
    data = json.loads(response.data)
    assert data['passed']
    assert data['scale'] == 100


def test_verify_unknown_theorem(client):
    response = client.post('/api/verify/thm-nope', json={})
    assert response.status_code == 400


def test_verify_bad_seed(client):
    response = client.post('/api/verify/thm-fib', json={'scale': 10, 'seed': 'x'})
    assert response.status_code == 400
