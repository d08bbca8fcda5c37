import random

from knots.alexander import alexander_polynomial, f_x_closed, f_y_closed
from knots.fox import (X, Y, AbelianizationWeights, FreeWord, alexander_matrix, fox_derivative_abelianized,
                       fundamental_identity_holds, oracle_alexander, relator)
from knots.laurent import LaurentPoly, ONE
from knots.params import compute_tables, valid_triples, validate_triple

# helper functions

def tables_for(p, q, k):
    return compute_tables(validate_triple(p, q, k))

# fixtures

WEIGHTS = AbelianizationWeights(weight_X=-2, weight_Y=5)

# tests

def test_free_word_reduction():
    assert FreeWord.from_letters([(X, 1), (X, -1), (Y, 2)]).letters == ((Y, 2),)
    assert FreeWord.from_letters([(X, 1), (Y, 1), (Y, -1), (X, 2)]).letters == ((X, 3),)
    assert str(FreeWord.from_letters([])) == "1"
    word = FreeWord.from_letters([(X, 2), (Y, -1), (Y, 1), (X, -2)])
    assert word.letters == ()
    word = FreeWord.from_letters([(X, 2), (Y, -1)])
    assert len(word) == 3


def test_relator():
    word = relator(tables_for(5, 4, 2))
    assert str(word) == "X^4 Y X Y"
    assert word.total_exponent(X) == 5 and word.total_exponent(Y) == 2

    pretzel = relator(tables_for(18, 5, 7))
    assert pretzel.total_exponent(X) == 18 and pretzel.total_exponent(Y) == 7

    for p, q in ((2, 1), (7, 3), (9, 2)):
        assert relator(tables_for(p, q, 1)).letters == ((X, p), (Y, 1))


def test_fox_axioms():
    xy = FreeWord.from_letters([(X, 1), (Y, 1)])
    assert fox_derivative_abelianized(xy, X, WEIGHTS) == ONE
    assert fox_derivative_abelianized(xy, Y, WEIGHTS) == LaurentPoly.monomial(-2)
    x_inv = FreeWord.from_letters([(X, -1)])
    assert fox_derivative_abelianized(x_inv, X, WEIGHTS) == LaurentPoly.monomial(2, -1)
    assert fox_derivative_abelianized(x_inv, Y, WEIGHTS) == LaurentPoly()


def test_trefoil_derivatives():
    tables = tables_for(5, 4, 2)
    f_x, f_y = alexander_matrix(tables)
    assert f_x == LaurentPoly({0: 1, -2: 1, -3: 1, -4: 1, -6: 1})
    assert f_y == LaurentPoly({-5: 1, -8: 1})


def test_oracle_golden():
    assert oracle_alexander(tables_for(5, 4, 2)) == LaurentPoly({0: 1, 1: -1, 2: 1})
    assert oracle_alexander(tables_for(18, 5, 7)) == alexander_polynomial(tables_for(18, 5, 7))


def test_fundamental_identity_random_words():
    rng = random.Random(7)
    for _ in range(100):
        letters = [(rng.choice((X, Y)), rng.choice((-2, -1, 1, 3))) for _ in range(rng.randint(0, 8))]
        word = FreeWord.from_letters(letters)
        assert fundamental_identity_holds(word, WEIGHTS), str(word)


def test_oracle_sweep():
    for triple in valid_triples(20):
        tables = compute_tables(triple)
        f_x, f_y = alexander_matrix(tables)
        assert f_x == f_x_closed(tables), str(triple)
        assert f_y == f_y_closed(tables), str(triple)
        assert fundamental_identity_holds(relator(tables), AbelianizationWeights.for_triple(triple))
        assert oracle_alexander(tables) == alexander_polynomial(tables), str(triple)
