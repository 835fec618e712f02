"""
Hochschild chains of a finite-dimensional differential graded algebra.

A chain is a linear combination of words (a0, a1, ..., an) written
a0[a1|...|an]; a0 sits in the module slot. Degrees are shifted on the bar
letters, so a word has total degree |a0| + sum(|ai| - 1). With

    eps_i = |a0| + sum_{j <= i} (|aj| - 1)

the differential is D = b - d_int where

    b(a0[a1|...|an])     = sum_{i=0}^{n-1} (-1)^eps_i  (merge a_i a_{i+1})
                           - (-1)^{(|an| - 1) eps_{n-1}} an a0[a1|...|a_{n-1}]
    d_int(a0[a1|...|an]) = da0[a1|...|an] - sum_{i>=1} (-1)^eps_{i-1} a0[...|dai|...]

Everything here only needs an algebra with keyed basis elements offering
multiply, differential and degree, so the same code runs over a FinDGA and
over HochschildAlgebra, the chains of a commutative FinDGA with the shuffle
product.
"""

# pylint: disable=R0913,R0914

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from loguru import logger

from holonomy2.errors import StructuralError, UnsupportedStructureError, Violation


def fraction(value):
    """
    Exact Fraction from ints, Fractions, sympy rationals or "p/q" strings
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    if hasattr(value, "p") and hasattr(value, "q"):
        return Fraction(int(value.p), int(value.q))
    raise StructuralError(f"cannot read {value!r} as an exact rational")


def _clean(terms):
    return {key: coef for key, coef in terms.items() if coef != 0}


def _sign(exponent):
    return -1 if exponent % 2 else 1


@dataclass(frozen=True, eq=False)
class FinDGA:
    """
    Basis with degrees, sparse products {(i, j): {k: c}}, differential {i: {j: c}}
    """

    names: tuple
    degrees: tuple
    products: dict
    differential_table: dict
    unit: int = 0
    commutative: bool = False

    def __post_init__(self):
        size = len(self.names)
        if len(self.degrees) != size:
            raise StructuralError("need one degree per basis element")
        if not 0 <= self.unit < size:
            raise StructuralError("unit index out of range")
        products = {}
        for (i, j), value in self.products.items():
            self._check_index(i, j, *value)
            products[(i, j)] = _clean({k: fraction(c) for k, c in value.items()})
        for i in range(size):
            products[(self.unit, i)] = {i: Fraction(1)}
            products[(i, self.unit)] = {i: Fraction(1)}
        differential = {}
        for i, value in self.differential_table.items():
            self._check_index(i, *value)
            differential[i] = _clean({k: fraction(c) for k, c in value.items()})
        object.__setattr__(self, "products", products)
        object.__setattr__(self, "differential_table", differential)
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "degrees", tuple(int(x) for x in self.degrees))

    def _check_index(self, *indices):
        for index in indices:
            if not 0 <= index < len(self.names):
                raise StructuralError(f"basis index {index} out of range")

    @property
    def dim(self):
        """
        Number of basis elements
        """
        return len(self.names)

    def index(self, name):
        """
        Basis index of a name
        """
        try:
            return self.names.index(name)
        except ValueError as err:
            raise StructuralError(f"no basis element named {name!r}") from err

    def degree(self, key):
        """
        Degree of a basis element
        """
        return self.degrees[key]

    def multiply(self, first, second):
        """
        Product of two basis elements as {index: coefficient}
        """
        return self.products.get((first, second), {})

    def differential(self, key):
        """
        d of a basis element as {index: coefficient}
        """
        return self.differential_table.get(key, {})

    def unit_key(self):
        """
        Key of the unit
        """
        return self.unit

    def multiply_elements(self, first, second):
        """
        Product of two elements given as {index: coefficient}
        """
        result = defaultdict(Fraction)
        for i, a in first.items():
            for j, b in second.items():
                for k, c in self.multiply(i, j).items():
                    result[k] += a * b * c
        return _clean(result)

    def differential_element(self, element):
        """
        d of an element
        """
        result = defaultdict(Fraction)
        for i, a in element.items():
            for k, c in self.differential(i).items():
                result[k] += a * c
        return _clean(result)


def _element_add(*elements):
    result = defaultdict(Fraction)
    for element in elements:
        for key, value in element.items():
            result[key] += value
    return _clean(result)


def _scaled(element, factor):
    return {key: value * factor for key, value in element.items()}


def validate_dga(algebra):
    """
    Degree, unit, associativity, d^2, Leibniz and (when flagged) graded
    commutativity failures on basis elements
    """
    violations = []
    size = algebra.dim
    deg = algebra.degrees
    for (i, j), value in algebra.products.items():
        for k in value:
            if deg[k] != deg[i] + deg[j]:
                violations.append(Violation("product-degree", (i, j, k)))
    for i in range(size):
        for k in algebra.differential(i):
            if deg[k] != deg[i] + 1:
                violations.append(Violation("differential-degree", (i, k)))
    if algebra.differential(algebra.unit):
        violations.append(Violation("unit", (algebra.unit,), algebra.differential(algebra.unit)))
    for i in range(size):
        basis_i = {i: Fraction(1)}
        twice = algebra.differential_element(algebra.differential(i))
        if twice:
            violations.append(Violation("d-squared", (i,), twice))
        for j in range(size):
            basis_j = {j: Fraction(1)}
            product = algebra.multiply(i, j)
            lhs = algebra.differential_element(product)
            rhs = _element_add(
                algebra.multiply_elements(algebra.differential(i), basis_j),
                _scaled(
                    algebra.multiply_elements(basis_i, algebra.differential(j)),
                    _sign(deg[i]),
                ),
            )
            residual = _element_add(lhs, _scaled(rhs, -1))
            if residual:
                violations.append(Violation("leibniz", (i, j), residual))
            if algebra.commutative:
                swapped = _scaled(algebra.multiply(j, i), _sign(deg[i] * deg[j]))
                residual = _element_add(product, _scaled(swapped, -1))
                if residual:
                    violations.append(Violation("commutativity", (i, j), residual))
            for k in range(size):
                basis_k = {k: Fraction(1)}
                left = algebra.multiply_elements(product, basis_k)
                right = algebra.multiply_elements(basis_i, algebra.multiply(j, k))
                residual = _element_add(left, _scaled(right, -1))
                if residual:
                    violations.append(Violation("associativity", (i, j, k), residual))
    logger.debug("DGA check over {} basis elements: {} violations", size, len(violations))
    return violations


@dataclass(frozen=True)
class HochChain:
    """
    Canonical combination of words: sorted (word, coefficient) pairs, no zeros
    """

    terms: tuple

    @classmethod
    def from_dict(cls, terms):
        """
        Canonicalize {word: coefficient}
        """
        cleaned = _clean({tuple(word): fraction(c) for word, c in terms.items()})
        return cls(tuple(sorted(cleaned.items())))

    @classmethod
    def word(cls, *letters, coefficient=1):
        """
        A single word
        """
        return cls.from_dict({tuple(letters): coefficient})

    def as_dict(self):
        """
        {word: coefficient}
        """
        return dict(self.terms)

    @property
    def is_zero(self):
        """
        No words
        """
        return not self.terms

    def __add__(self, other):
        return HochChain.from_dict(_element_add(self.as_dict(), other.as_dict()))

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, factor):
        """
        Multiply every coefficient
        """
        factor = fraction(factor)
        return HochChain.from_dict({w: c * factor for w, c in self.terms})


def component(chain, length):
    """
    Words with exactly length bar letters
    """
    return HochChain.from_dict({w: c for w, c in chain.terms if len(w) - 1 == length})


def shifted_degree(word, algebra):
    """
    |a0| + sum(|ai| - 1)
    """
    return algebra.degree(word[0]) + sum(algebra.degree(a) - 1 for a in word[1:])


def _prefix_eps(word, algebra):
    eps = [algebra.degree(word[0])]
    for letter in word[1:]:
        eps.append(eps[-1] + algebra.degree(letter) - 1)
    return eps


def word_differential(word, algebra):
    """
    D of a single word as {word: coefficient}
    """
    result = defaultdict(Fraction)
    n = len(word) - 1
    eps = _prefix_eps(word, algebra)
    for i in range(n):
        sign = _sign(eps[i])
        for merged, coef in algebra.multiply(word[i], word[i + 1]).items():
            result[word[:i] + (merged,) + word[i + 2:]] += sign * coef
    if n:
        last = word[n]
        sign = -_sign((algebra.degree(last) - 1) * eps[n - 1])
        for merged, coef in algebra.multiply(last, word[0]).items():
            result[(merged,) + word[1:n]] += sign * coef
    for image, coef in algebra.differential(word[0]).items():
        result[(image,) + word[1:]] -= coef
    for i in range(1, n + 1):
        sign = _sign(eps[i - 1])
        for image, coef in algebra.differential(word[i]).items():
            result[word[:i] + (image,) + word[i + 1:]] += sign * coef
    return _clean(result)


def hochschild_d(chain, algebra):
    """
    D = b - d_int on a chain
    """
    result = defaultdict(Fraction)
    for word, coef in chain.terms:
        if not word:
            raise StructuralError("a Hochschild word needs a module slot")
        for image, value in word_differential(word, algebra).items():
            result[image] += coef * value
    return HochChain.from_dict(result)


def _require_commutative(algebra):
    if not getattr(algebra, "commutative", False):
        raise UnsupportedStructureError("the shuffle product needs a graded commutative algebra")


def _shuffle_letters(first, second, algebra):
    """
    Signed shuffles of two bar words, letters carrying shifted degrees
    """

    @lru_cache(maxsize=None)
    def merge(left, right):
        if not left:
            return {right: 1}
        if not right:
            return {left: 1}
        result = defaultdict(int)
        for word, coef in merge(left[1:], right).items():
            result[(left[0],) + word] += coef
        moved = algebra.degree(right[0]) - 1
        passed = sum(algebra.degree(a) - 1 for a in left)
        sign = _sign(moved * passed)
        for word, coef in merge(left, right[1:]).items():
            result[(right[0],) + word] += sign * coef
        return dict(result)

    return merge(tuple(first), tuple(second))


def shuffle_words(first, second, algebra):
    """
    (a0[alpha]) * (b0[beta]) = (-1)^{|alpha| |b0|} a0 b0 [alpha shuffle beta]
    """
    alpha, beta = first[1:], second[1:]
    degree_alpha = sum(algebra.degree(a) - 1 for a in alpha)
    outer = _sign(degree_alpha * algebra.degree(second[0]))
    result = defaultdict(Fraction)
    heads = algebra.multiply(first[0], second[0])
    if not heads:
        return {}
    for letters, coef in _shuffle_letters(alpha, beta, algebra).items():
        for head, value in heads.items():
            result[(head,) + letters] += outer * coef * value
    return _clean(result)


def shuffle(first, second, algebra):
    """
    Shuffle product of two chains over a commutative algebra
    """
    _require_commutative(algebra)
    result = defaultdict(Fraction)
    for word_a, coef_a in first.terms:
        for word_b, coef_b in second.terms:
            for word, value in shuffle_words(word_a, word_b, algebra).items():
                result[word] += coef_a * coef_b * value
    return HochChain.from_dict(result)


class HochschildAlgebra:
    """
    Chains of a commutative algebra as an algebra in its own right: words as
    basis keys, shuffle as product, D as differential
    """

    commutative = True

    def __init__(self, algebra):
        _require_commutative(algebra)
        self.algebra = algebra

    def degree(self, key):
        """
        Shifted total degree of a word
        """
        return shifted_degree(key, self.algebra)

    def multiply(self, first, second):
        """
        Shuffle of two words
        """
        return shuffle_words(first, second, self.algebra)

    def differential(self, key):
        """
        D of a word
        """
        return word_differential(key, self.algebra)

    def unit_key(self):
        """
        The word 1[]
        """
        return (self.algebra.unit,)


def hochschild_of_hochschild_d(chain, algebra):
    """
    D of chains whose letters are themselves Hochschild words of a commutative algebra
    """
    return hochschild_d(chain, HochschildAlgebra(algebra))


def _check_odd(element, algebra):
    # mixed odd degrees are fine: every letter then has even shifted degree
    if any(c and algebra.degree(i) % 2 == 0 for i, c in element.items()):
        raise StructuralError("element must have odd degree in every component")


def element_of(terms, algebra):
    """
    Element from {name or index: coefficient}
    """
    result = {}
    for key, value in terms.items():
        index = algebra.index(key) if isinstance(key, str) else int(key)
        result[index] = fraction(value)
    return _clean(result)


def p_chain(element, truncation, algebra):
    """
    sum_{l <= N} 1[A|...|A] (l letters), expanded multilinearly
    """
    _check_odd(element, algebra)
    if truncation < 0:
        raise StructuralError("truncation must be non-negative")
    unit = algebra.unit_key()
    result = {(unit,): Fraction(1)}
    layer = {(unit,): Fraction(1)}
    for _ in range(truncation):
        grown = defaultdict(Fraction)
        for word, coef in layer.items():
            for letter, value in element.items():
                grown[word + (letter,)] += coef * value
        layer = _clean(grown)
        result.update(layer)
    return HochChain.from_dict(result)


def mc_residual(element, algebra):
    """
    dA + A A
    """
    return _element_add(
        algebra.differential_element(element), algebra.multiply_elements(element, element)
    )


def is_mc_element(element, algebra):
    """
    dA + A A = 0 exactly
    """
    _check_odd(element, algebra)
    return not mc_residual(element, algebra)


def slot_chain(element, residual, length, algebra):
    """
    sum over slots of 1[A|...|r|...|A] with length letters; for r = dA + A A
    this is the length component of D P(A)
    """
    unit = algebra.unit_key()
    result = defaultdict(Fraction)
    for slot in range(length):
        words = {(unit,): Fraction(1)}
        for position in range(length):
            source = residual if position == slot else element
            grown = defaultdict(Fraction)
            for word, coef in words.items():
                for letter, value in source.items():
                    grown[word + (letter,)] += coef * value
            words = grown
        for word, coef in words.items():
            result[word] += coef
    return HochChain.from_dict(result)


def cycle_components(element, truncation, algebra):
    """
    Length components 0..truncation-1 of D P(A); all vanish iff A is Maurer-Cartan.
    Component 0 always vanishes, so truncation must be at least 2.
    """
    if truncation < 2:
        raise StructuralError("cycle components need truncation >= 2")
    image = hochschild_d(p_chain(element, truncation, algebra), algebra)
    return [component(image, length) for length in range(truncation)]
