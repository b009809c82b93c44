import numpy as np
import pytest

from designlab.domain import FormatError
from designlab.fixtures import switched_code
from designlab.formats import (
    format_bbd,
    format_code,
    format_latin,
    format_sqs,
    parse_bbd,
    parse_code,
    parse_latin,
    parse_object,
    parse_sqs,
    read_object,
    read_sqs_file,
    write_object,
)
from designlab.gf import Field
from designlab.latin import cyclic_cube
from designlab.mds import linear_mds
from designlab.sqs import boolean_sqs


def test_latin_text():
    cube = cyclic_cube(4, 3)
    text = format_latin(cube)
    assert text.startswith("LATIN 3 4\n")
    assert len(text.splitlines()) == 1 + 16
    assert parse_latin(text).same_cells(cube)


def test_linear_code_text(parity9, gf9):
    text = format_code(parity9)
    lines = text.splitlines()
    assert lines[0] == "CODE 3 9 2"
    assert lines[1] == "LINEAR 3 2 1 0 1"
    parsed = parse_code(text)
    assert parsed.same_words(parity9)
    assert parsed.linear.field == gf9
    assert np.array_equal(parsed.linear.generator, parity9.linear.generator)


def test_prime_field_code_text():
    code = linear_mds(Field(5), 6, 4)
    parsed = parse_code(format_code(code))
    assert parsed.same_words(code)
    assert parsed.linear.field == Field(5)


def test_nonlinear_code_text():
    code = switched_code()
    parsed = parse_code(format_code(code))
    assert parsed.linear is None
    assert parsed.same_words(code)


def test_bbd_text(bbd8):
    parsed = parse_bbd(format_bbd(bbd8.bbd))
    assert parsed.block_set == bbd8.bbd.block_set
    assert (parsed.g1, parsed.g2) == (bbd8.bbd.g1, bbd8.bbd.g2)


def test_sqs_text():
    sqs = boolean_sqs(3)
    text = format_sqs(sqs)
    assert text.splitlines()[0] == "SQS 8 14"
    assert parse_sqs(text).block_set == sqs.block_set


def test_files(tmp_path):
    path = str(tmp_path / "nested" / "dir" / "s16.sqs")
    write_object(boolean_sqs(4), path)
    loaded = read_object(path)
    assert loaded.v == 16 and len(loaded) == 140
    assert read_sqs_file(path).block_set == loaded.block_set
    assert read_sqs_file(str(tmp_path / "missing.txt")) is None


def test_blank_lines_are_ignored():
    sqs = parse_object("\nSQS 4 1\n\n0 1 2 3\n\n")
    assert len(sqs) == 1


@pytest.mark.parametrize("text,line", [
    ("SQS 8 2\n0 1 2 3\n", 2),
    ("SQS 8 1\n0 1 3 2\n", 2),
    ("\n\nSQS 8 1\n0 1 2 9\n", 4),
    ("SQS 8 1\n0 1 2\n", 2),
    ("LATIN 2 2\n0 1\n1 x\n", 3),
    ("LATIN 2 2\n0 1\n", 2),
    ("LATIN 2 2\n0 1\n1 2\n", 3),
    ("CODE 3 9 2\nLINEAR 3 1\n0 0 0\n", 2),
    ("CODE 3 9 2\nLINEAR 3 2 1 1 1\n", 2),
    ("CODE 3 3 4\n", 1),
    ("BBD 4\nG1 0 1\n0 1 2 3\n", 3),
    ("BBD 4\nG1 0 5\nG2 2 3\n", 2),
    ("FOO 1\n", 1),
    ("", 1),
])
def test_malformed_files(text, line):
    with pytest.raises(FormatError) as info:
        parse_object(text)
    assert info.value.line == line
    assert str(info.value).startswith(f"line {line}:")


def test_malformed_file_on_disk_is_skipped(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("SQS 8 3\n0 1 2 3\n")
    assert read_sqs_file(str(path)) is None
