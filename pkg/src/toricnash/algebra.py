"""Exact sparse arithmetic in N variables.

Exponent vectors are plain tuples of nonnegative ints of a common length.
Coefficients are Python ints, so no overflow is possible anywhere.
A term order is realized as a sortable key on exponent vectors: larger key
means larger monomial.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping, NamedTuple, Optional, Sequence

from .errors import LengthMismatch, NotSquare

ExponentVector = tuple  # tuple[int, ...], all entries >= 0


def exp_add(a: ExponentVector, b: ExponentVector) -> ExponentVector:
    return tuple(x + y for x, y in zip(a, b))


def exp_sub(a: ExponentVector, b: ExponentVector) -> ExponentVector:
    return tuple(x - y for x, y in zip(a, b))


def exp_lcm(a: ExponentVector, b: ExponentVector) -> ExponentVector:
    return tuple(max(x, y) for x, y in zip(a, b))


def exp_divides(a: ExponentVector, b: ExponentVector) -> bool:
    """True when x^a divides x^b."""
    return all(x <= y for x, y in zip(a, b))


@dataclass(frozen=True)
class TermOrder:
    """A monomial order on a fixed number of variables.

    kind is "lex" or "degrevlex".  ranking lists variable indices from most
    to least significant.  weights, when given, are strictly positive degree
    weights used by degrevlex (None means total degree).
    """

    kind: str
    ranking: tuple
    weights: Optional[tuple] = None

    def __post_init__(self):
        if self.kind not in ("lex", "degrevlex"):
            raise ValueError(f"unknown term order kind {self.kind!r}")
        n = len(self.ranking)
        if sorted(self.ranking) != list(range(n)):
            raise ValueError("ranking must be a permutation of the variables")
        if self.weights is not None:
            if len(self.weights) != n:
                raise LengthMismatch("weights length differs from variable count")
            if any(w <= 0 for w in self.weights):
                raise ValueError("degree weights must be strictly positive")

    @property
    def nvars(self) -> int:
        return len(self.ranking)

    def key(self, exp: ExponentVector):
        """Sortable key; bigger key means bigger monomial."""
        if len(exp) != len(self.ranking):
            raise LengthMismatch(
                f"exponent length {len(exp)} != {len(self.ranking)} variables")
        if self.kind == "lex":
            return tuple(exp[i] for i in self.ranking)
        if self.weights is None:
            deg = sum(exp)
        else:
            deg = sum(w * e for w, e in zip(self.weights, exp))
        # graded reverse lex: ties broken at the least significant variable
        # first, smaller exponent there meaning larger monomial
        return (deg, tuple(-exp[i] for i in reversed(self.ranking)))


def lex_order(n: int) -> TermOrder:
    return TermOrder("lex", tuple(range(n)))


def degrevlex_order(n: int, weights: Optional[Sequence[int]] = None) -> TermOrder:
    return TermOrder("degrevlex", tuple(range(n)),
                     None if weights is None else tuple(weights))


def compare(a: ExponentVector, b: ExponentVector, order: TermOrder) -> int:
    """-1, 0 or 1 as x^a is below, equal to or above x^b in the order."""
    if len(a) != len(b):
        raise LengthMismatch("exponent vectors of unequal length")
    ka, kb = order.key(a), order.key(b)
    if ka < kb:
        return -1
    if ka > kb:
        return 1
    return 0


class Monomial(NamedTuple):
    """A nonzero integer multiple of a single power product."""

    coeff: int
    exp: ExponentVector

    def is_constant(self) -> bool:
        return all(e == 0 for e in self.exp)


@dataclass(frozen=True)
class Binomial:
    """A pure difference of monomials x^plus - x^minus, plus != minus.

    By convention plus is the leading exponent under whatever order the
    surrounding computation uses; construct through oriented() to enforce it.
    """

    plus: ExponentVector
    minus: ExponentVector

    def __post_init__(self):
        if len(self.plus) != len(self.minus):
            raise LengthMismatch("binomial sides of unequal length")
        if self.plus == self.minus:
            raise ValueError("zero binomial")
        if any(e < 0 for e in self.plus) or any(e < 0 for e in self.minus):
            raise ValueError("negative exponent in binomial")

    @property
    def nvars(self) -> int:
        return len(self.plus)

    def difference(self) -> tuple:
        """Exponent difference plus - minus (a kernel vector for relations)."""
        return exp_sub(self.plus, self.minus)


def oriented_binomial(a: ExponentVector, b: ExponentVector,
                      order: TermOrder) -> Optional[Binomial]:
    """Binomial x^a - x^b with the leading side first; None when a == b."""
    c = compare(a, b, order)
    if c == 0:
        return None
    return Binomial(a, b) if c > 0 else Binomial(b, a)


def binomial_from_vector(v: Sequence[int], order: TermOrder) -> Optional[Binomial]:
    """x^{v+} - x^{v-} from an integer vector, oriented under order."""
    plus = tuple(x if x > 0 else 0 for x in v)
    minus = tuple(-x if x < 0 else 0 for x in v)
    return oriented_binomial(plus, minus, order)


class Polynomial:
    """Sparse integer polynomial: a map from exponent vectors to coefficients.

    The zero polynomial is the empty map.  Instances are treated as
    immutable; all arithmetic returns fresh objects.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping] = None):
        self.terms = {e: c for e, c in (terms or {}).items() if c != 0}

    # -- constructors ------------------------------------------------------
    @classmethod
    def zero(cls) -> "Polynomial":
        return cls()

    @classmethod
    def from_monomial(cls, coeff: int, exp: ExponentVector) -> "Polynomial":
        return cls({tuple(exp): coeff})

    @classmethod
    def from_binomial(cls, b: Binomial) -> "Polynomial":
        return cls({b.plus: 1, b.minus: -1})

    @classmethod
    def constant(cls, c: int, nvars: int) -> "Polynomial":
        return cls({(0,) * nvars: c})

    # -- queries -----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, Polynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def items(self) -> Iterator:
        return iter(self.terms.items())

    def leading_term(self, order: TermOrder) -> Monomial:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        exp = max(self.terms, key=order.key)
        return Monomial(self.terms[exp], exp)

    def single_term(self) -> Optional[Monomial]:
        """The unique term if there is exactly one, else None."""
        if len(self.terms) != 1:
            return None
        ((exp, coeff),) = self.terms.items()
        return Monomial(coeff, exp)

    # -- arithmetic ---------------------------------------------------------
    def __neg__(self) -> "Polynomial":
        return Polynomial({e: -c for e, c in self.terms.items()})

    def __add__(self, other: "Polynomial") -> "Polynomial":
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Polynomial(out)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, int):
            return Polynomial({e: c * other for e, c in self.terms.items()})
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = exp_add(e1, e2)
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return Polynomial(out)

    __rmul__ = __mul__

    def evaluate(self, point: Sequence[int]) -> int:
        total = 0
        for exp, coeff in self.terms.items():
            if len(exp) != len(point):
                raise LengthMismatch("evaluation point of wrong length")
            v = coeff
            for e, x in zip(exp, point):
                if e:
                    v *= x ** e
            total += v
        return total

    def __repr__(self) -> str:
        return f"Polynomial({self.terms!r})"


def derivative(f: Binomial, var: int) -> Polynomial:
    """Partial derivative of x^plus - x^minus with respect to variable var."""
    if not 0 <= var < f.nvars:
        raise IndexError(f"variable index {var} out of range")
    terms: dict = {}
    for exp, sign in ((f.plus, 1), (f.minus, -1)):
        e = exp[var]
        if e:
            lowered = exp[:var] + (e - 1,) + exp[var + 1:]
            s = terms.get(lowered, 0) + sign * e
            if s:
                terms[lowered] = s
            else:
                terms.pop(lowered, None)
    return Polynomial(terms)


def evaluate(p: Polynomial, point: Sequence[int]) -> int:
    return p.evaluate(point)


def determinant(matrix: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Symbolic determinant by cofactor expansion along the first row.

    Fine for the small, very sparse Jacobian blocks this library builds.
    """
    n = len(matrix)
    for row in matrix:
        if len(row) != n:
            raise NotSquare(f"matrix is {n}x{len(row)}")
    if n == 0:
        raise NotSquare("empty matrix has no determinant")
    if n == 1:
        return matrix[0][0]
    acc = Polynomial.zero()
    for j, entry in enumerate(matrix[0]):
        if entry.is_zero():
            continue
        minor = [[row[k] for k in range(n) if k != j] for row in matrix[1:]]
        cof = entry * determinant(minor)
        acc = acc + cof if j % 2 == 0 else acc - cof
    return acc


# --- rendering -------------------------------------------------------------

def default_names(l: int, m: int, n: int) -> list:
    """Block variable names x1..xl, y1..ym, z1..zn."""
    return ([f"x{i + 1}" for i in range(l)]
            + [f"y{j + 1}" for j in range(m)]
            + [f"z{k + 1}" for k in range(n)])


def monomial_str(coeff: int, exp: ExponentVector, names: Sequence[str]) -> str:
    parts = []
    for name, e in zip(names, exp):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    if not parts:
        return str(coeff)
    body = "*".join(parts)
    if coeff == 1:
        return body
    if coeff == -1:
        return f"-{body}"
    return f"{coeff}*{body}"


def binomial_str(b: Binomial, names: Sequence[str]) -> str:
    return f"{monomial_str(1, b.plus, names)} - {monomial_str(1, b.minus, names)}"


def polynomial_str(p: Polynomial, names: Sequence[str],
                   order: Optional[TermOrder] = None) -> str:
    if p.is_zero():
        return "0"
    exps = list(p.terms)
    order = order or lex_order(len(exps[0]))
    exps.sort(key=order.key, reverse=True)
    out = monomial_str(p.terms[exps[0]], exps[0], names)
    for exp in exps[1:]:
        c = p.terms[exp]
        if c < 0:
            out += f" - {monomial_str(-c, exp, names)}"
        else:
            out += f" + {monomial_str(c, exp, names)}"
    return out
