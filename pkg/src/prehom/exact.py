"""Exact rational scalars and sparse multivariate polynomials.

Scalars are :class:`fractions.Fraction`; polynomials are :class:`MultiPoly`,
an immutable map from exponent vectors to nonzero rational coefficients.
"""

from __future__ import annotations

import itertools
import math
import re
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence, Union

Rational = Fraction
Scalar = Union[int, Fraction]
Exponent = tuple


class InputError(ValueError):
    """Malformed or inconsistent input (arity, duplicate nodes, bad text)."""


def to_rational(value) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction.

    Floats are rejected so nothing inexact leaks into exact code paths.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InputError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not re.fullmatch(r"[+-]?\d+(/\d+)?", text):
            raise InputError(f"not a rational: {value!r}")
        num, _, den = text.partition("/")
        if den and int(den) == 0:
            raise InputError(f"zero denominator: {value!r}")
        return Fraction(int(num), int(den) if den else 1)
    raise InputError(f"not a rational: {value!r}")


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _grlex_key(exps: Exponent):
    return (sum(exps), exps)


class MultiPoly:
    """Sparse polynomial over the rationals in a fixed ordered variable list."""

    __slots__ = ("variables", "terms", "_hash")

    def __init__(self, variables: Sequence[str], terms: Mapping[Exponent, Scalar] | None = None):
        self.variables = tuple(variables)
        n = len(self.variables)
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != n:
                raise InputError(f"exponent {exps} does not match {n} variables")
            if any(e < 0 for e in exps):
                raise InputError(f"negative exponent {exps}")
            c = to_rational(c)
            if c:
                clean[exps] = clean.get(exps, Fraction(0)) + c
                if not clean[exps]:
                    del clean[exps]
        self.terms = clean
        self._hash = None

    # construction helpers

    @classmethod
    def zero(cls, variables: Sequence[str]) -> "MultiPoly":
        return cls(variables)

    @classmethod
    def constant(cls, variables: Sequence[str], c: Scalar) -> "MultiPoly":
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def var(cls, variables: Sequence[str], name: str) -> "MultiPoly":
        variables = tuple(variables)
        if name not in variables:
            raise InputError(f"unknown variable {name!r}")
        exps = tuple(int(v == name) for v in variables)
        return cls(variables, {exps: 1})

    @classmethod
    def generators(cls, variables: Sequence[str]) -> list["MultiPoly"]:
        return [cls.var(variables, v) for v in variables]

    # basic queries

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def degree(self) -> int:
        """Total degree; the zero polynomial has degree -1."""
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, index: int) -> int:
        return max((e[index] for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        """Terms in graded lexicographic order, leading term first."""
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def leading_term(self) -> tuple[Exponent, Fraction]:
        if not self.terms:
            raise InputError("zero polynomial has no leading term")
        exps = max(self.terms, key=_grlex_key)
        return exps, self.terms[exps]

    # arithmetic

    def _check_same(self, other: "MultiPoly") -> None:
        if self.variables != other.variables:
            raise InputError(f"variable mismatch: {self.variables} vs {other.variables}")

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            self._check_same(other)
            return other
        return MultiPoly.constant(self.variables, to_rational(other))

    def __add__(self, other) -> "MultiPoly":
        other = self._coerce(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return MultiPoly(self.variables, terms)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "MultiPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "MultiPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "MultiPoly":
        other = self._coerce(other)
        terms: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return MultiPoly(self.variables, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MultiPoly":
        if not isinstance(k, int) or k < 0:
            raise InputError("power must be a nonnegative integer")
        result = MultiPoly.constant(self.variables, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self.variables == other.variables and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == MultiPoly.constant(self.variables, other).terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.variables, frozenset(self.terms.items())))
        return self._hash

    # evaluation and calculus

    def __call__(self, *point) -> Fraction:
        return poly_eval(self, point)

    def diff(self, index: int, times: int = 1) -> "MultiPoly":
        """Partial derivative with respect to the variable at ``index``."""
        terms = {}
        for e, c in self.terms.items():
            if e[index] < times:
                continue
            f = math.perm(e[index], times)
            new = e[:index] + (e[index] - times,) + e[index + 1:]
            terms[new] = c * f
        return MultiPoly(self.variables, terms)

    def shift(self, offsets: Sequence[Scalar]) -> "MultiPoly":
        """The polynomial ``p(x + offsets)``."""
        if len(offsets) != self.nvars:
            raise InputError("shift vector length does not match variable count")
        gens = MultiPoly.generators(self.variables)
        return self.compose([g + to_rational(o) for g, o in zip(gens, offsets)])

    def compose(self, images: Sequence["MultiPoly"]) -> "MultiPoly":
        """Substitute ``images[i]`` for the i-th variable."""
        if len(images) != self.nvars:
            raise InputError("substitution length does not match variable count")
        if not images:
            return self
        target_vars = images[0].variables
        result = MultiPoly.zero(target_vars)
        powers: list[dict[int, MultiPoly]] = [{} for _ in images]

        def power(i: int, k: int) -> MultiPoly:
            if k not in powers[i]:
                powers[i][k] = images[i] ** k
            return powers[i][k]

        for e, c in self.terms.items():
            term = MultiPoly.constant(target_vars, c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            result = result + term
        return result

    def to_numpy(self) -> Callable:
        """Return a float/complex evaluator ``f(x)`` where ``x`` has shape (nvars, ...)."""
        items = [(float(c), e) for e, c in self.sorted_terms()]

        def evaluate(x):
            total = 0.0
            for c, e in items:
                term = c
                for xi, k in zip(x, e):
                    if k:
                        term = term * xi**k
                total = total + term
            return total

        return evaluate

    # text

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"MultiPoly({list(self.variables)!r}, {format_poly(self)!r})"


def poly_eval(p: MultiPoly, point: Sequence[Scalar]) -> Fraction:
    """Exact value of ``p`` at ``point``."""
    if len(point) != p.nvars:
        raise InputError(f"point has {len(point)} coordinates, polynomial has {p.nvars} variables")
    point = [to_rational(v) for v in point]
    total = Fraction(0)
    for e, c in p.terms.items():
        term = c
        for v, k in zip(point, e):
            if k:
                term *= v**k
        total += term
    return total


def apply_diff_operator(op: MultiPoly, target: MultiPoly) -> MultiPoly:
    """Apply ``op`` with each variable read as the matching partial derivative."""
    if op.variables != target.variables:
        raise InputError(f"variable mismatch: {op.variables} vs {target.variables}")
    terms: dict[Exponent, Fraction] = {}
    for a, c in op.terms.items():
        for e, d in target.terms.items():
            if any(ei < ai for ei, ai in zip(e, a)):
                continue
            f = 1
            for ei, ai in zip(e, a):
                f *= math.perm(ei, ai)
            new = tuple(ei - ai for ei, ai in zip(e, a))
            terms[new] = terms.get(new, 0) + c * d * f
    return MultiPoly(target.variables, terms)


def exact_divide(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """Quotient ``p / q``; raises :class:`ArithmeticError` unless ``q`` divides ``p``."""
    p._check_same(q)
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    lead_q, lc_q = q.leading_term()
    quotient: dict[Exponent, Fraction] = {}
    rest = p
    while not rest.is_zero():
        lead_r, lc_r = rest.leading_term()
        if any(a < b for a, b in zip(lead_r, lead_q)):
            raise ArithmeticError("polynomial division is not exact")
        e = tuple(a - b for a, b in zip(lead_r, lead_q))
        c = lc_r / lc_q
        quotient[e] = c
        rest = rest - MultiPoly(p.variables, {e: c}) * q
    return MultiPoly(p.variables, quotient)


def interpolate(points: Iterable[tuple[Scalar, Scalar]], degree: int, var: str = "s") -> MultiPoly:
    """Lagrange interpolation through ``degree + 1`` points with distinct nodes."""
    pts = [(to_rational(x), to_rational(y)) for x, y in points]
    if len(pts) != degree + 1:
        raise InputError(f"need {degree + 1} points for degree {degree}, got {len(pts)}")
    nodes = [x for x, _ in pts]
    if len(set(nodes)) != len(nodes):
        raise InputError("duplicate interpolation node")
    s = MultiPoly.var((var,), var)
    result = MultiPoly.zero((var,))
    for i, (xi, yi) in enumerate(pts):
        if not yi:
            continue
        basis = MultiPoly.constant((var,), yi)
        for j, xj in enumerate(nodes):
            if j != i:
                basis = basis * ((s - xj) * (1 / (xi - xj)))
        result = result + basis
    return result


def interpolate_grid(
    func: Callable[[tuple[int, ...]], Scalar],
    degrees: Sequence[int],
    variables: Sequence[str] | None = None,
) -> MultiPoly:
    """Tensor-product Lagrange interpolation on the grid ``prod(range(d + 1))``.

    Exact for every polynomial whose degree in the k-th variable is at most
    ``degrees[k]``.
    """
    r = len(degrees)
    variables = tuple(variables or [f"s{k + 1}" for k in range(r)])
    if len(variables) != r:
        raise InputError("variable names do not match grid dimension")
    bases = []
    for k, d in enumerate(degrees):
        axis = []
        for i in range(d + 1):
            unit = [(j, int(i == j)) for j in range(d + 1)]
            axis.append(interpolate(unit, d, var=variables[k]))
        bases.append(axis)
    result = MultiPoly.zero(variables)
    for node in itertools.product(*(range(d + 1) for d in degrees)):
        value = to_rational(func(node))
        if not value:
            continue
        term = MultiPoly.constant(variables, value)
        for k, i in enumerate(node):
            term = term * _embed(bases[k][i], variables, k)
        result = result + term
    return result


def _embed(p: MultiPoly, variables: tuple, index: int) -> MultiPoly:
    """Re-express a univariate polynomial as a polynomial in ``variables``."""
    n = len(variables)
    return MultiPoly(
        variables,
        {tuple(e[0] if k == index else 0 for k in range(n)): c for e, c in p.terms.items()},
    )


# text format

_TERM_SPLIT = re.compile(r"(?=[+-])")
_FACTOR = re.compile(r"^([A-Za-z_]\w*)(?:\^(\d+))?$")


def _natural_key(name: str):
    return [int(t) if t.isdigit() else t for t in re.split(r"(\d+)", name)]


def parse_poly(text: str, variables: Sequence[str] | None = None) -> MultiPoly:
    """Parse ``c * x1^a1 * ... + ...`` with integer or ``p/q`` coefficients.

    Without explicit ``variables`` the names found in the text are used in
    natural sort order (``x2`` before ``x10``).
    """
    compact = re.sub(r"\s+", "", text)
    if not compact:
        raise InputError("empty polynomial text")
    parsed = []
    names = set()
    for chunk in _TERM_SPLIT.split(compact):
        if not chunk:
            continue
        sign = -1 if chunk[0] == "-" else 1
        body = chunk.lstrip("+-")
        if not body or chunk[:2] in ("++", "--", "+-", "-+"):
            raise InputError(f"malformed term {chunk!r} in {text!r}")
        coeff = Fraction(sign)
        powers = {}
        for factor in body.split("*"):
            if re.fullmatch(r"\d+(/\d+)?", factor):
                coeff *= to_rational(factor)
                continue
            m = _FACTOR.match(factor)
            if not m:
                raise InputError(f"malformed factor {factor!r} in {text!r}")
            name, k = m.group(1), int(m.group(2) or 1)
            powers[name] = powers.get(name, 0) + k
            names.add(name)
        parsed.append((coeff, powers))
    if variables is None:
        variables = sorted(names, key=_natural_key)
    variables = tuple(variables)
    unknown = names - set(variables)
    if unknown:
        raise InputError(f"unknown variables {sorted(unknown)} in {text!r}")
    terms: dict[Exponent, Fraction] = {}
    for coeff, powers in parsed:
        e = tuple(powers.get(v, 0) for v in variables)
        terms[e] = terms.get(e, 0) + coeff
    return MultiPoly(variables, terms)


def format_poly(p: MultiPoly) -> str:
    if p.is_zero():
        return "0"
    out = []
    for e, c in p.sorted_terms():
        factors = [
            name if k == 1 else f"{name}^{k}" for name, k in zip(p.variables, e) if k
        ]
        mag = abs(c)
        if factors and mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([format_rational(mag)] + factors)
        out.append(("-" if c < 0 else "+", body))
    first_sign, first = out[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, body in out[1:]:
        text += f" {sign} {body}"
    return text
