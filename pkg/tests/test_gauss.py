from __future__ import annotations

import json

import pytest
from hypothesis import given, strategies as st

from vknot.gauss import (
    ClosedDiagram, GaussCodeError, LongDiagram, closure, crossing_change, crossing_type,
    descending, from_json, mirror, parse_closed, parse_long, product, reverse, switch_all,
    type_sets, untwist, virtualize, writhe,
)
from vknot.families import k_family, kprime

from conftest import diagrams

KINK = "O1+ U1+"


def test_parse_examples():
    assert len(parse_long("")) == 0
    D = parse_long(KINK)
    assert D.positions(1) == (0, 1) and D.sign(1) == 1
    assert len(parse_long("O1+ U2+ O3+ U1+ O2+ U3+")) == 3
    assert parse_long("O1+,U1+") == D


@pytest.mark.parametrize("text, offset", [
    ("O1+ X2+", 4),
    ("O1+ U1", 4),
    ("O1+ U1-", 4),
    ("O1+ O1+", 4),
    ("O1+ U2+", 0),
    ("O1+ U1+ O1+", 8),
    ("O0+ U0+", 0),
    ("O1+U1+", 3),
])
def test_parse_errors_carry_offsets(text, offset):
    with pytest.raises(GaussCodeError) as info:
        parse_long(text)
    assert info.value.offset == offset


def test_crossing_types():
    assert crossing_type(parse_long(KINK), 1) == 0
    D = kprime(2)
    assert D.to_code() == "O3+ U2+ U1+ U3+ O1+ O2+"
    assert [crossing_type(D, i) for i in (1, 2, 3)] == [1, 1, 0]
    five = parse_long("O1+ U2+ O3+ U4+ O5+ U1+ O2+ U3+ O4+ U5+")
    assert type_sets(five) == ([1, 3, 5], [2, 4])


def test_writhes():
    assert writhe(parse_long(""), 0) == 0
    D = kprime(2)
    assert (writhe(D, 0), writhe(D, 1)) == (1, 2)
    K2 = k_family(2)
    assert K2.to_code() == "O3+ O2- O1- U3+ U1- U2-"
    assert (writhe(K2, 0), writhe(K2, 1)) == (-1, 0)


def test_transform_examples():
    D = parse_long(KINK)
    assert switch_all(D).to_code() == "U1- O1-"
    assert reverse(D).to_code() == "U1+ O1+"
    assert mirror(D).to_code() == "O1- U1-"
    assert crossing_change(D, 1).to_code() == "U1- O1-"
    assert len(virtualize(D, 1)) == 0
    assert product(parse_long(""), D) == D
    assert product(D, parse_long("O1- U1-")).to_code() == "O1+ U1+ O2- U2-"
    assert closure(D) == parse_closed(KINK)
    assert untwist(D).to_code() == "O1+ U1+ O2- U2-"


def test_descending_kprime():
    D = descending(kprime(2))
    assert type_sets(D) == ([3, 2, 1], [])
    assert D.sign(1) == D.sign(2) == -1 and D.sign(3) == 1


def test_closed_equality_is_up_to_rotation():
    a = parse_closed("O1+ U2- U1+ O2-")
    b = parse_closed("U1+ O2- O1+ U2-")
    assert a == b and hash(a) == hash(b)
    assert parse_long("O1+ U2- U1+ O2-") != parse_long("U1+ O2- O1+ U2-")


def test_json_format():
    D = parse_long(KINK)
    data = json.loads(D.to_json())
    assert data == {"endpoints": [{"label": 1, "passage": "O", "sign": 1},
                                  {"label": 1, "passage": "U", "sign": 1}]}
    assert from_json(D.to_json()) == D
    assert isinstance(from_json(D.to_json(), closed=True), ClosedDiagram)


@given(diagrams())
def test_round_trip(D):
    assert parse_long(D.to_code()) == D
    assert from_json(D.to_json()) == D
    assert D.canonical() == D


@given(diagrams())
def test_involutions(D):
    for f in (switch_all, reverse, mirror):
        assert f(f(D)) == D
    assert switch_all(mirror(D)) == mirror(switch_all(D))


@given(diagrams())
def test_type_maps(D):
    I0, I1 = type_sets(D)
    assert len(I0) + len(I1) == len(D)
    assert type_sets(switch_all(D)) == (I1, I0)
    assert sorted(type_sets(reverse(D))[0]) == sorted(I1)
    assert type_sets(mirror(D)) == (I0, I1)


@given(diagrams(min_chords=1))
def test_crossing_change_everywhere_is_switch(D):
    E = D
    for lab in D.labels:
        flipped = crossing_change(E, lab)
        assert crossing_type(flipped, lab) != crossing_type(E, lab)
        assert flipped.sign(lab) == -E.sign(lab)
        E = flipped
    assert E == switch_all(D)


@given(diagrams(min_chords=1), st.data())
def test_virtualize_drops_one_chord(D, data):
    lab = data.draw(st.sampled_from(D.labels))
    assert len(virtualize(D, lab)) == len(D) - 1
    E = D
    for lab in D.labels:
        E = virtualize(E, lab)
    assert len(E) == 0


@given(diagrams(max_chords=4), diagrams(max_chords=4), diagrams(max_chords=4))
def test_product_associative_up_to_relabelling(a, b, c):
    left = product(product(a, b), c).canonical()
    right = product(a, product(b, c)).canonical()
    assert left == right


@given(diagrams())
def test_descending_is_idempotent(D):
    E = descending(D)
    assert type_sets(E)[1] == []
    assert descending(E) == E


@given(diagrams())
def test_untwist_kills_writhes(D):
    U = untwist(D)
    assert writhe(U, 0) == writhe(U, 1) == 0
    assert untwist(U) == U
    assert U.endpoints[:len(D.endpoints)] == D.endpoints


def test_empty_diagram_everywhere():
    E = parse_long("")
    for f in (switch_all, reverse, mirror, descending, untwist):
        assert f(E) == E
    assert len(closure(E)) == 0
    assert isinstance(E, LongDiagram)
