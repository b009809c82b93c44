import numpy as np
import pytest

from designlab.domain import CapExceededError, FieldError
from designlab.gf import Field, default_modulus, field_make, is_irreducible, is_prime, line_points, poly_mod

SMALL_FIELDS = [(2, 1), (3, 1), (5, 1), (2, 2), (2, 3), (3, 2), (2, 4), (5, 2)]


def check_axioms(field):
    elems = np.arange(field.q)
    a, b, c = np.meshgrid(elems, elems, elems, indexing="ij")
    a, b, c = a.ravel(), b.ravel(), c.ravel()
    assert (field.add_array(a, b) == field.add_array(b, a)).all()
    assert (field.mul_array(a, b) == field.mul_array(b, a)).all()
    assert (field.add_array(field.add_array(a, b), c) == field.add_array(a, field.add_array(b, c))).all()
    assert (field.mul_array(field.mul_array(a, b), c) == field.mul_array(a, field.mul_array(b, c))).all()
    left = field.mul_array(a, field.add_array(b, c))
    right = field.add_array(field.mul_array(a, b), field.mul_array(a, c))
    assert (left == right).all()


def test_is_prime():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_default_moduli():
    assert default_modulus(3, 2) == (1, 0, 1)
    assert default_modulus(2, 3) == (1, 1, 0, 1)
    assert default_modulus(2, 4) == (1, 1, 0, 0, 1)
    assert is_irreducible((1, 1, 1), 2)
    assert not is_irreducible((1, 0, 1), 2)
    assert poly_mod([0, 0, 1], [1, 0, 1], 3) == [2]


@pytest.mark.parametrize("p,k", SMALL_FIELDS)
def test_field_axioms(p, k):
    check_axioms(Field(p, k))


@pytest.mark.parametrize("p,k", SMALL_FIELDS)
def test_inverses_and_primitive(p, k):
    field = Field(p, k)
    for a in range(1, field.q):
        assert field.mul(a, field.inv(a)) == 1
    assert sorted(field.exp.tolist()) == list(range(1, field.q))
    with pytest.raises(ZeroDivisionError):
        field.inv(0)


def test_identities_and_negation(gf9):
    for a in range(gf9.q):
        assert gf9.add(a, 0) == a
        assert gf9.mul(a, 1) == a
        assert gf9.mul(a, 0) == 0
        assert gf9.add(a, gf9.neg(a)) == 0
        assert gf9.sub(a, a) == 0
    assert gf9.pow(0, 0) == 1
    assert gf9.pow(0, 3) == 0


def test_gf9_encoding(gf9):
    # x^2 = -1 = 2 in GF(3)[x]/(x^2 + 1); x is encoded as 3
    assert gf9.mul(3, 3) == 2
    assert gf9.add(4, 5) == gf9.from_vector([0, 2]) == 6
    assert gf9.to_vector(7) == (1, 2)


def test_tables_match_arrays(gf9):
    elems = np.arange(gf9.q)
    assert (gf9.add_table == gf9.add_array(elems[:, None], elems[None, :])).all()
    assert (gf9.mul_table == gf9.mul_array(elems[:, None], elems[None, :])).all()


@pytest.mark.parametrize("p,k,expected", [(3, 2, 4), (2, 4, 15), (3, 3, 13), (5, 1, 1)])
def test_direction_representatives(p, k, expected):
    field = Field(p, k)
    reps = field.direction_representatives
    assert len(reps) == expected == (field.q - 1) // (p - 1)
    classes = {frozenset(int(x) for x in field.scale_array_many(np.arange(1, p), v)) for v in reps}
    assert len(classes) == len(reps)


def test_lines(gf9):
    for a in range(gf9.q):
        lines = gf9.lines_through(a)
        assert len(lines) == 4
        for line in lines:
            assert len(set(line.points)) == 3
            assert a in line
    points = set()
    for line in gf9.lines_through(0):
        points |= set(line.points) - {0}
    assert points == set(range(1, 9))
    with pytest.raises(FieldError):
        gf9.line_points(1, 0)


def test_field_make_and_scaled_directions():
    field = field_make(3, 2, modulus=(1, 0, 1))
    assert field == Field(3, 2)
    for a in range(field.q):
        for v in range(1, field.q):
            line = line_points(field, a, v)
            assert line.points[0] == a
            assert set(line_points(field, a, field.mul(2, v)).points) == set(line.points)


def test_invalid_fields():
    with pytest.raises(FieldError):
        Field(4)
    with pytest.raises(FieldError):
        Field(3, 2, modulus=(0, 0, 1))
    with pytest.raises(CapExceededError):
        Field(2, 21)


@pytest.mark.parametrize("order,poly,modulus", [(9, "x^2 + 1", (1, 0, 1)), (16, "x^4 + x + 1", (1, 1, 0, 0, 1))])
def test_against_galois(order, poly, modulus):
    galois = pytest.importorskip("galois")
    GF = galois.GF(order, irreducible_poly=poly)
    field = Field(*{9: (3, 2), 16: (2, 4)}[order], modulus=modulus)
    x = GF(np.arange(order))
    product = (x[:, None] * x[None, :]).view(np.ndarray)
    total = (x[:, None] + x[None, :]).view(np.ndarray)
    assert (product == field.mul_table).all()
    assert (total == field.add_table).all()
