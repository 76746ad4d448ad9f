import random

from hypothesis import given, strategies as st

from cosetkit import serialize as ser
from cosetkit.decompose import check_certificate, decompose
from cosetkit.generators import random_pw_map
from cosetkit.setalg import to_omega_normal_form

from helpers import CORPUS, D1, Z1, Z2, z
from strategies import carrier_and_expr, cosets, elements


def test_integers_are_strings():
    j = ser.element_to_json(z(10**30, -4))
    assert j == {"sign": "1", "translation": ["1000000000000000000000000000000", "-4"]}
    assert ser.element_from_json(j, Z2) == z(10**30, -4)


def test_carrier_json():
    for c in (Z2, D1, D1.__class__(3, (True, False, True))):
        assert ser.carrier_from_json(ser.carrier_to_json(c)) == c


def test_certificate_schema():
    cert = decompose(CORPUS[0].expr)
    j = ser.certificate_to_json(cert)
    assert {"input", "subgroups", "witnesses", "reconstruction", "engine_version"} <= set(j)
    text = ser.dumps(j)
    assert ser.dumps(ser.certificate_to_json(ser.certificate_from_json(ser.loads(text)))) == text


def test_corpus_certificates_survive_a_round_trip():
    for case in CORPUS:
        text = ser.dumps(ser.certificate_to_json(decompose(case.expr)))
        back = ser.certificate_from_json(ser.loads(text))
        assert check_certificate(back)
        assert ser.dumps(ser.certificate_to_json(back)) == text


@given(carrier_and_expr())
def test_expression_round_trip(ce):
    _, expr = ce
    text = ser.dumps(ser.expr_to_json(expr))
    back = ser.expr_from_json(ser.loads(text))
    assert back == expr
    assert ser.dumps(ser.expr_to_json(back)) == text


@given(carrier_and_expr())
def test_normal_form_round_trip(ce):
    _, expr = ce
    nf = to_omega_normal_form(expr)
    text = ser.dumps(ser.normal_form_to_json(nf))
    back = ser.normal_form_from_json(ser.loads(text))
    assert back == nf
    assert ser.dumps(ser.normal_form_to_json(back)) == text


@given(st.data())
def test_coset_round_trip(data):
    c = data.draw(st.sampled_from([Z2, D1]))
    C = data.draw(cosets(c))
    assert ser.coset_from_json(ser.coset_to_json(C), c) == C
    g = data.draw(elements(c, 50))
    assert ser.element_from_json(ser.element_to_json(g), c) == g


@given(st.integers(0, 2**32 - 1))
def test_map_round_trip(seed):
    m = random_pw_map(random.Random(seed), Z2, Z1)
    text = ser.dumps(ser.pw_map_to_json(m))
    back = ser.pw_map_from_json(ser.loads(text))
    assert back == m
    assert ser.dumps(ser.pw_map_to_json(back)) == text
