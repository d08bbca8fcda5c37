"""
Independent route to Δ: Fox free differential calculus on the one-relator
presentation <X, Y | R> of the dual knot group, abelianized on the fly, then
a polynomial gcd of the two entries of the Alexander matrix.
"""

from dataclasses import dataclass

from knots.laurent import LaurentPoly, canonicalize, gcd_primitive

X = "X"
Y = "Y"
GENERATORS = (X, Y)


@dataclass(frozen=True)
class FreeWord:
    """A reduced word in the free group on X, Y as (generator, nonzero exponent) letters."""
    letters: tuple

    @classmethod
    def from_letters(cls, letters):
        stack = []
        for gen, exp in letters:
            assert gen in GENERATORS, f"unknown generator {gen!r}"
            if exp == 0:
                continue
            if stack and stack[-1][0] == gen:
                merged = stack[-1][1] + exp
                stack.pop()
                if merged:
                    stack.append((gen, merged))
            else:
                stack.append((gen, exp))
        return cls(tuple(stack))

    def total_exponent(self, gen):
        return sum(exp for g, exp in self.letters if g == gen)

    def __len__(self):
        return sum(abs(exp) for _, exp in self.letters)

    def __str__(self):
        if not self.letters:
            return "1"
        return " ".join(gen if exp == 1 else f"{gen}^{exp}" for gen, exp in self.letters)


@dataclass(frozen=True)
class AbelianizationWeights:
    weight_X: int
    weight_Y: int

    @classmethod
    def for_triple(cls, triple):
        # X -> t^-k, Y -> t^p
        return cls(weight_X=-triple.k, weight_Y=triple.p)

    def of(self, gen):
        return self.weight_X if gen == X else self.weight_Y

    def of_word(self, word):
        return sum(exp * self.of(gen) for gen, exp in word.letters)


def relator(tables):
    """R = prod_{i=1..p} X Y^E(i)."""
    letters = []
    for i in range(1, tables.p + 1):
        letters.append((X, 1))
        if tables.e_ind[i]:
            letters.append((Y, 1))
    return FreeWord.from_letters(letters)


def fox_derivative_abelianized(word, gen, weights):
    """
    Image of d(word)/d(gen) under the abelianization, built letter by letter:
    d(u g)/dg = du/dg + u and d(u g^-1)/dg = du/dg - u g^-1, while letters
    of the other generator contribute nothing but extend the prefix u.
    """
    terms = {}
    prefix = 0
    for g, exp in word.letters:
        w = weights.of(g)
        for _ in range(abs(exp)):
            if exp > 0:
                if g == gen:
                    terms[prefix] = terms.get(prefix, 0) + 1
                prefix += w
            else:
                prefix -= w
                if g == gen:
                    terms[prefix] = terms.get(prefix, 0) - 1
    return LaurentPoly(terms)


def fundamental_identity_holds(word, weights):
    """(t^wX - 1) dw/dX + (t^wY - 1) dw/dY == t^w(word) - 1 after abelianizing."""
    lhs = LaurentPoly()
    for gen in GENERATORS:
        generator_minus_one = LaurentPoly({weights.of(gen): 1}) - 1
        lhs = lhs + generator_minus_one * fox_derivative_abelianized(word, gen, weights)
    return lhs == LaurentPoly({weights.of_word(word): 1}) - 1


def alexander_matrix(tables):
    """(F_X, F_Y) computed from the relator by free calculus."""
    word = relator(tables)
    weights = AbelianizationWeights.for_triple(tables.triple)
    return (fox_derivative_abelianized(word, X, weights),
            fox_derivative_abelianized(word, Y, weights))


def oracle_alexander(tables):
    f_x, f_y = alexander_matrix(tables)
    return canonicalize(gcd_primitive(f_x, f_y))
