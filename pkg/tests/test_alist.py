"""alist parsing and emission."""

from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest
from hypothesis import given

from conftest import codes
from ldpckw.alist import emit_alist, parse_alist, parse_dense
from ldpckw.code import ClassicalCode, ising3
from ldpckw.errors import AlistParseError
from ldpckw.f2 import BinaryMatrix

GOLDEN = (Path(__file__).parent / "data" / "ising3.alist").read_text()


def canonical(text):
    return "\n".join(" ".join(line.split()) for line in text.strip().splitlines())


def test_golden_file():
    assert parse_alist(GOLDEN) == ising3()
    assert emit_alist(ising3()) == GOLDEN


def test_empty_row_sections():
    c = ClassicalCode(BinaryMatrix.zeros(0, 3))
    text = emit_alist(c)
    assert text.splitlines()[:4] == ["3 0", "0 0", "0 0 0", ""]
    assert parse_alist(text) == c


def test_unpadded_lists_are_accepted():
    text = "3 2\n2 2\n1 2 1\n2 2\n1\n1 2\n2\n1 2\n2 3\n"
    assert parse_alist(text).H.tolist() == [[1, 1, 0], [0, 1, 1]]


@pytest.mark.parametrize("text, line", [
    ("3 3\n2 2\n2 2 2\n2 2 2\n1 2\n2 3\n1 3\n1 3\n1 2\n2 5\n", 10),  # bit 5 in a 3-bit code
    ("3 3\n2 2\n2 2 2\n2 2 2\n1 2\n2 3\n1 3\n1 3\n1 2\n", 10),  # truncated
    ("3 3\n2 2\n2 2 2\n2 2 2\n1 2\n2 3\n1 3\n1 3\n1 2\n1 3\n", 10),  # row disagrees with columns
    ("3 3\n2 2\n2 2\n2 2 2\n", 3),  # short degree list
    ("3 x\n", 1),
    ("3 3\n2 2\n2 2 2\n2 2 2\n1 2\n2 3\n1 3\n1 3\n1 2\n2 3\nextra\n", 11),
    ("3 3\n2 2\n2 2 2\n2 2 2\n1 7\n2 3\n1 3\n1 3\n1 2\n2 3\n", 5),
])
def test_malformed_inputs_name_the_line(text, line):
    with pytest.raises(AlistParseError) as info:
        parse_alist(text)
    assert info.value.line == line
    assert str(info.value).startswith(f"line {line}:")


def test_dense_fallback():
    assert parse_dense("101\n110\n011\n") == ising3()
    with pytest.raises(AlistParseError):
        parse_dense("102\n")


def test_corpus_round_trip(corpus):
    for c in corpus:
        text = emit_alist(c)
        assert parse_alist(text) == c
        assert emit_alist(parse_alist(text)) == text


@given(codes(6, 6))
def test_round_trip_property(c):
    text = emit_alist(c)
    assert parse_alist(text) == c
    assert canonical(emit_alist(parse_alist(text))) == canonical(text)
    assert np.array_equal(parse_alist(text).H.data, c.H.data)
