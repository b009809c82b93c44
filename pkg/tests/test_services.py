import pandas as pd
import pytest

from designlab.domain import BBD, SQS, Code, ConstructionError, LatinHypercube, VerificationError
from designlab.formats import write_object
from designlab.services import (
    assignment_index,
    bbd_variant_frame,
    cached_family_sizes,
    components_for,
    construct,
    count,
    count_table,
    worked_example,
    switch_codes,
    verify_file,
    verify_object,
)
from designlab.sqs import boolean_sqs
from designlab.utils import load_artifact


def test_construct_kinds():
    assert isinstance(construct("latin", q=5), LatinHypercube)
    assert isinstance(construct("mds", p=5, d=6, rho=4), Code)
    assert isinstance(construct("bbd", q=8, ell=2), BBD)
    assert isinstance(construct("sqs-boolean", a=3), SQS)
    assert len(construct("sqs-double", v=16)) == 140
    with pytest.raises(ValueError):
        construct("hypercube")


def test_verify_object_dispatch(bbd8, parity9):
    assert verify_object(parity9).kind == "mds"
    assert verify_object(bbd8.bbd).kind == "bbd"
    assert verify_object(boolean_sqs(3)).kind == "sqs"
    with pytest.raises(TypeError):
        verify_object("SQS 8 14")


def test_verify_file(tmp_path):
    path = write_object(boolean_sqs(3), str(tmp_path / "s8.sqs"))
    report = verify_file(path)
    assert report.ok
    assert report.stats["file"] == path


def test_components_for():
    assert components_for(1, 2) == 1
    assert components_for(3, 2) == 2
    assert components_for(8, 3) == 2
    assert components_for(9, 3) == 3


def test_assignment_index():
    assert assignment_index((1, 0, 2), 3) == 1 + 2 * 9


def test_switch_codes(parity9):
    results = switch_codes(parity9, 4, seed=2)
    assert len(results) == 4
    assert len({assignment_index(a, 3) for a, _ in results}) == 4
    with pytest.raises(ConstructionError):
        switch_codes(Code.from_words(3, 9, 2, parity9.words), 1)


def test_worked_example_replays():
    report = worked_example()
    assert report.ok
    assert report.stats["switches"] == 2
    assert report.require() is report


def test_counts():
    assert count("latin", 4) == (576, 576)
    assert count("latin-reduced", 5) == (56, 56)
    value, check = count("mols", 3)
    assert value == check
    with pytest.raises(ValueError):
        count("sudoku", 4)


def test_reduced_count_is_checked_by_symbol_placement(monkeypatch):
    assert count("latin-reduced", 4) == (4, 4)
    monkeypatch.setattr("designlab.services.count_latin_squares_by_symbols", lambda q: 575)
    value, check = count("latin-reduced", 4)
    assert value == 4
    assert check != value


def test_count_table():
    frame = count_table(3)
    assert list(frame["latin"]) == [1, 2, 12]
    assert (frame["latin"] == frame["latin_check"]).all()
    assert (frame["mols"] == frame["mols_check"]).all()


def test_bbd_variant_frame():
    frame = bbd_variant_frame(8, 2)
    assert isinstance(frame, pd.DataFrame)
    assert set(frame["replacement"]) == {"cyclic", "shifted"}
    assert frame["ok"].all()
    assert (frame["blocks"] == 112).all()


def test_cached_family_sizes(tmp_path, monkeypatch):
    monkeypatch.setattr("designlab.utils.CACHE_DIR", str(tmp_path))
    frame = cached_family_sizes(8)
    assert dict(zip(frame["family"], frame["blocks"])) == {"R1": 6272, "R2": 1664, "R3": 2688}
    assert load_artifact("sqs8n2_partial_n8_s0", str(tmp_path)) is not None


def test_require_raises_on_failure():
    broken = SQS.from_blocks(8, boolean_sqs(3).blocks[1:])
    with pytest.raises(VerificationError) as info:
        verify_object(broken).require()
    assert info.value.report.kind == "sqs"
