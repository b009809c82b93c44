import numpy as np
import pytest

from designlab.domain import CapExceededError, ConstructionError, LatinHypercube, OrthogonalSystem
from designlab.gf import Field
from designlab.latin import (
    check_orthogonal,
    compose_cube,
    cube_with_subcube,
    cyclic_cube,
    ls_with_subsquare,
    mols_system,
    orthogonal_pair_from_field,
    subcube_check,
    symmetric_unipotent_check,
    symmetric_unipotent_ls,
    verify_latin,
)

REPEATS = 100
MAX_ORDER = 8


def random_isotope(cells, rng):
    q = cells.shape[0]
    rows, cols, symbols = rng.permutation(q), rng.permutation(q), rng.permutation(q)
    return symbols[cells[rows][:, cols]]


def check_latin_square(cells):
    q = cells.shape[0]
    assert all(sorted(row) == list(range(q)) for row in cells.tolist())
    assert all(sorted(col) == list(range(q)) for col in cells.T.tolist())


@pytest.mark.parametrize("q,d0", [(1, 2), (5, 2), (4, 3), (3, 4)])
def test_cyclic_cubes_are_latin(q, d0):
    report = verify_latin(cyclic_cube(q, d0))
    assert report.ok
    assert report.checked == d0 * q ** (d0 - 1)


def test_corrupted_square_is_rejected():
    cells = cyclic_cube(5, 2).cells.copy()
    cells[2, 3] = cells[2, 4]
    report = verify_latin(LatinHypercube(2, 5, cells))
    assert not report.ok
    assert report.violations[0]["axis"] == 0
    assert "*" in report.violations[0]["line"]


def test_bad_shape_raises():
    with pytest.raises(ValueError):
        verify_latin(LatinHypercube(2, 3, np.zeros((3, 4), dtype=np.int64)))


def test_subsquare_small_case():
    square = ls_with_subsquare(4, 2)
    check_latin_square(square.cells)
    assert sorted(square.cells[:2, :2].ravel().tolist()) == [0, 0, 1, 1]
    check_latin_square(square.cells[:2, :2])


@pytest.mark.parametrize("q", range(2, 11))
def test_subsquare_all_suborders(q):
    for ell in range(q // 2 + 1):
        square = ls_with_subsquare(q, ell)
        assert subcube_check(square, ell).ok


def test_subsquare_too_large():
    with pytest.raises(ConstructionError):
        ls_with_subsquare(5, 3)


@pytest.mark.parametrize("q,ell,d0", [(6, 2, 3), (5, 2, 3), (4, 2, 4), (7, 3, 3)])
def test_cube_with_subcube(q, ell, d0):
    cube = cube_with_subcube(q, ell, d0)
    assert cube.cells.shape == (q,) * d0
    report = subcube_check(cube, ell)
    assert report.ok
    assert cube.restrict(ell).cells.max() < ell


def test_composition_closure(rng):
    for _ in range(REPEATS):
        q = int(rng.integers(2, MAX_ORDER + 1))
        base = ls_with_subsquare(q, int(rng.integers(0, q // 2 + 1))).cells
        square = LatinHypercube(2, q, random_isotope(base, rng))
        assert verify_latin(square).ok
        assert verify_latin(compose_cube(square, 3)).ok


def test_exhaustive_composition_of_cyclic_squares():
    for q in range(1, MAX_ORDER + 1):
        for d0 in (3, 4):
            assert verify_latin(compose_cube(cyclic_cube(q, 2), d0)).ok


@pytest.mark.parametrize("q,ell", [(2, 0), (4, 1), (6, 1), (8, 2), (10, 2), (12, 3), (14, 3), (16, 4)])
def test_symmetric_unipotent(q, ell):
    square = symmetric_unipotent_ls(q, ell)
    cells = square.cells
    assert (cells == cells.T).all()
    assert (np.diag(cells) == 0).all()
    assert symmetric_unipotent_check(square, ell).ok


def test_symmetric_unipotent_block_of_order_eight():
    cells = symmetric_unipotent_ls(8, 2).cells
    block = cells[np.ix_([0, 1], [6, 7])]
    assert set(block.ravel().tolist()) == {6, 7}
    check_latin_square(block - 6)
    assert (cells[np.ix_([6, 7], [0, 1])] == block.T).all()


def test_symmetric_unipotent_rejects():
    with pytest.raises(ConstructionError):
        symmetric_unipotent_ls(7, 1)
    with pytest.raises(ConstructionError):
        symmetric_unipotent_ls(8, 3)


def test_symmetric_check_flags_nonzero_diagonal():
    report = symmetric_unipotent_check(cyclic_cube(4, 2), 0)
    assert not report.ok


def test_field_pairs_are_orthogonal():
    for p, k in [(3, 1), (5, 1), (2, 2), (3, 2), (7, 1)]:
        first, second = orthogonal_pair_from_field(Field(p, k))
        assert verify_latin(first).ok and verify_latin(second).ok
        assert check_orthogonal(mols_system([first, second])).ok
        assert check_orthogonal(mols_system([first, second], strong=True)).ok


def test_square_is_not_orthogonal_to_itself():
    square = cyclic_cube(5, 2)
    report = check_orthogonal(mols_system([square, square]))
    assert not report.ok
    assert report.violations[0]["functions"] == (0, 1)


def test_at_most_q_minus_one_mols():
    field = Field(2, 2)
    squares = [orthogonal_pair_from_field(field, a, a)[0] for a in (1, 2, 3)]
    assert check_orthogonal(mols_system(squares)).ok
    for extra in (cyclic_cube(4, 2), squares[0]):
        assert not check_orthogonal(mols_system(squares + [extra])).ok


def test_orthogonality_caps():
    big = np.zeros((33, 33), dtype=np.int64)
    with pytest.raises(CapExceededError):
        check_orthogonal(OrthogonalSystem(2, 33, (big, big)))
    with pytest.raises(ValueError):
        check_orthogonal(OrthogonalSystem(2, 3, (np.zeros((3, 3), dtype=np.int64),)))
