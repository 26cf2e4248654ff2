"""Sparse Laurent polynomials and rational functions with exact coefficients.

A :class:`LaurentPoly` stores a dictionary from integer exponent tuples to
nonzero coefficients.  Coefficients are Python ``int`` whenever they are
integral and :class:`fractions.Fraction` otherwise, which keeps the common
case (integer arithmetic) fast.

A :class:`RationalFunction` is a pair ``(num, den)`` of Laurent polynomials.
It is reduced eagerly when the denominator is a monomial or divides the
numerator exactly; no multivariate gcd is attempted.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterator, Mapping, Sequence

from .errors import NotLaurent

__all__ = ["LaurentPoly", "RationalFunction", "as_rational_function", "normalize_coeff"]

Exp = tuple


def normalize_coeff(c):
    """Return ``c`` as an ``int`` when integral, else as a ``Fraction``."""
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, Rational):
        c = Fraction(c.numerator, c.denominator)
        return c.numerator if c.denominator == 1 else c
    raise TypeError(f"inexact coefficient {c!r}")


def _add_exp(a: Exp, b: Exp) -> Exp:
    return tuple(x + y for x, y in zip(a, b))


def _sub_exp(a: Exp, b: Exp) -> Exp:
    return tuple(x - y for x, y in zip(a, b))


class LaurentPoly:
    """Sparse Laurent polynomial in ``nvars`` variables.

    Parameters
    ----------
    nvars : int
        Number of variables.
    terms : mapping, optional
        Exponent tuple to coefficient.  Zero coefficients are dropped.
    """

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Exp, object] | None = None):
        self.nvars = nvars
        clean = {}
        if terms:
            for e, c in terms.items():
                if len(e) != nvars:
                    raise ValueError("exponent length does not match nvars")
                c = normalize_coeff(c)
                if c:
                    clean[tuple(e)] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> "LaurentPoly":
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj.terms = terms
        obj._hash = None
        return obj

    # constructors -----------------------------------------------------
    @classmethod
    def zero(cls, nvars: int) -> "LaurentPoly":
        return cls._raw(nvars, {})

    @classmethod
    def const(cls, nvars: int, c) -> "LaurentPoly":
        c = normalize_coeff(c)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def one(cls, nvars: int) -> "LaurentPoly":
        return cls.const(nvars, 1)

    @classmethod
    def var(cls, nvars: int, i: int) -> "LaurentPoly":
        e = [0] * nvars
        e[i] = 1
        return cls._raw(nvars, {tuple(e): 1})

    @classmethod
    def monomial(cls, nvars: int, exps: Sequence[int], coeff=1) -> "LaurentPoly":
        coeff = normalize_coeff(coeff)
        return cls._raw(nvars, {tuple(int(x) for x in exps): coeff} if coeff else {})

    # basic predicates -------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        """True for a single term (any nonzero coefficient)."""
        return len(self.terms) == 1

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def is_positive(self) -> bool:
        """True when every coefficient is strictly positive."""
        return all(c > 0 for c in self.terms.values())

    def monomial_data(self) -> tuple[Exp, object]:
        """Exponent and coefficient of a single-term polynomial."""
        if len(self.terms) != 1:
            raise ValueError("not a monomial")
        ((e, c),) = self.terms.items()
        return e, c

    def constant_value(self):
        if not self.terms:
            return 0
        if not self.is_constant():
            raise ValueError("not a constant")
        return next(iter(self.terms.values()))

    def exponents(self) -> list[Exp]:
        return sorted(self.terms)

    def __iter__(self) -> Iterator[tuple[Exp, object]]:
        return iter(sorted(self.terms.items()))

    def __len__(self) -> int:
        return len(self.terms)

    # arithmetic -------------------------------------------------------
    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.nvars != self.nvars:
                raise ValueError("arity mismatch")
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.const(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = normalize_coeff(v)
            else:
                out.pop(e, None)
        return LaurentPoly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return LaurentPoly.zero(self.nvars)
            return LaurentPoly._raw(
                self.nvars, {e: normalize_coeff(c * other) for e, c in self.terms.items()}
            )
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    del out[e]
        return LaurentPoly._raw(self.nvars, {e: normalize_coeff(c) for e, c in out.items()})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            if not self.is_monomial():
                raise NotLaurent("negative power of a non-monomial")
            e, c = self.monomial_data()
            return LaurentPoly._raw(
                self.nvars, {tuple(k * x for x in e): normalize_coeff(Fraction(c) ** k)}
            )
        if self.is_monomial():
            e, c = self.monomial_data()
            return LaurentPoly._raw(self.nvars, {tuple(k * x for x in e): normalize_coeff(c**k)})
        result = LaurentPoly.one(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / Fraction(other))
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_monomial():
            return self * other**-1
        q = self.divide_exact(other)
        if q is None:
            raise NotLaurent("inexact division")
        return q

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            if not other:
                return not self.terms
            return self.terms == {(0,) * self.nvars: other}
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    # structure --------------------------------------------------------
    def min_exponent(self) -> Exp:
        """Componentwise minimum exponent (the monomial content)."""
        if not self.terms:
            return (0,) * self.nvars
        es = list(self.terms)
        return tuple(min(col) for col in zip(*es))

    def max_exponent(self) -> Exp:
        if not self.terms:
            return (0,) * self.nvars
        es = list(self.terms)
        return tuple(max(col) for col in zip(*es))

    def shift(self, exps: Sequence[int]) -> "LaurentPoly":
        """Multiply by the monomial ``x**exps``."""
        exps = tuple(exps)
        return LaurentPoly._raw(self.nvars, {_add_exp(e, exps): c for e, c in self.terms.items()})

    def divide_exact(self, other: "LaurentPoly") -> "LaurentPoly | None":
        """Exact quotient in the Laurent ring, or ``None`` when it does not exist."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return LaurentPoly.zero(self.nvars)
        if other.is_monomial():
            return self * other**-1
        a = self.min_exponent()
        b = other.min_exponent()
        p = {_sub_exp(e, a): c for e, c in self.terms.items()}
        q = {_sub_exp(e, b): c for e, c in other.terms.items()}
        bound = tuple(x - y for x, y in zip(self.max_exponent(), a))
        qbound = tuple(x - y for x, y in zip(other.max_exponent(), b))
        box = _sub_exp(bound, qbound)
        if any(x < 0 for x in box):
            return None
        lq = max(q)
        cq = Fraction(q[lq])
        quot: dict = {}
        r = dict(p)
        while r:
            lt = max(r)
            diff = _sub_exp(lt, lq)
            if any(x < 0 or x > y for x, y in zip(diff, box)):
                return None
            c = r[lt] / cq
            quot[diff] = c
            for e, cc in q.items():
                ee = _add_exp(e, diff)
                v = r.get(ee, 0) - c * cc
                if v:
                    r[ee] = v
                else:
                    r.pop(ee, None)
        shift = _sub_exp(a, b)
        return LaurentPoly._raw(
            self.nvars, {_add_exp(e, shift): normalize_coeff(c) for e, c in quot.items()}
        )

    # substitution and evaluation --------------------------------------
    def substitute(self, images: Sequence["LaurentPoly | RationalFunction"]):
        """Compose with ``x_i -> images[i]``.

        Monomial images are handled as Laurent polynomials; otherwise a
        :class:`RationalFunction` is returned.
        """
        if len(images) != self.nvars:
            raise ValueError("wrong number of images")
        if not images:
            return self
        if all(isinstance(g, LaurentPoly) and g.is_monomial() for g in images):
            n = images[0].nvars
            data = [g.monomial_data() for g in images]
            out: dict = {}
            for e, c in self.terms.items():
                ne = [0] * n
                cc = Fraction(c)
                for k, (ge, gc) in zip(e, data):
                    if k:
                        for t in range(n):
                            ne[t] += k * ge[t]
                        if gc != 1:
                            cc *= Fraction(gc) ** k
                key = tuple(ne)
                v = out.get(key, 0) + cc
                if v:
                    out[key] = v
                else:
                    out.pop(key, None)
            return LaurentPoly._raw(n, {e: normalize_coeff(c) for e, c in out.items()})
        rimgs = [as_rational_function(g) for g in images]
        n = rimgs[0].num.nvars
        total = RationalFunction(LaurentPoly.zero(n))
        for e, c in self.terms.items():
            term = RationalFunction(LaurentPoly.const(n, c))
            for k, g in zip(e, rimgs):
                if k:
                    term = term * g**k
            total = total + term
        return total

    def evaluate(self, values: Sequence):
        """Evaluate at a point; works for exact and floating inputs."""
        inexact = _is_float_seq(values)
        total = 0
        for e, c in self.terms.items():
            term = float(c) if inexact and isinstance(c, Fraction) else c
            for v, k in zip(values, e):
                if k:
                    term = term * v**k
            total = total + term
        return total

    def specialize(self, fixed: Mapping[int, object]) -> "LaurentPoly":
        """Substitute exact constants for some variables, keeping the arity."""
        out: dict = {}
        for e, c in self.terms.items():
            cc = Fraction(c)
            ne = list(e)
            for i, v in fixed.items():
                if ne[i]:
                    cc *= Fraction(v) ** ne[i]
                    ne[i] = 0
            key = tuple(ne)
            val = out.get(key, 0) + cc
            if val:
                out[key] = val
            else:
                out.pop(key, None)
        return LaurentPoly._raw(self.nvars, {e: normalize_coeff(c) for e, c in out.items()})

    def derivative(self, i: int) -> "LaurentPoly":
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = normalize_coeff(c * e[i])
        return LaurentPoly._raw(self.nvars, out)

    # display ----------------------------------------------------------
    def to_string(self, names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        names = names or [f"x{i}" for i in range(self.nvars)]
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"LaurentPoly({self.to_string()})"


def _is_float_seq(values) -> bool:
    # arbitrary-precision numbers multiply Fractions exactly; only hardware floats need coercion
    return any(isinstance(v, (float, complex)) for v in values)


class RationalFunction:
    """Quotient ``num / den`` of Laurent polynomials.

    The pair is normalized on construction: a monomial denominator is
    absorbed into the numerator and an exact divisor is divided out.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly | None = None):
        if den is None or (den.is_constant() and den.constant_value() == 1):
            self.num = num
            self.den = LaurentPoly.one(num.nvars) if den is None else den
            return
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if den.is_monomial():
            num, den = num * den**-1, LaurentPoly.one(num.nvars)
        elif not num.is_zero():
            q = num.divide_exact(den)
            if q is not None:
                num, den = q, LaurentPoly.one(num.nvars)
        else:
            den = LaurentPoly.one(num.nvars)
        self.num = num
        self.den = den

    @property
    def nvars(self) -> int:
        return self.num.nvars

    def is_laurent(self) -> bool:
        return self.den.is_constant()

    def as_laurent(self) -> LaurentPoly:
        if self.den.is_constant():
            return self.num * (Fraction(1) / Fraction(self.den.constant_value()))
        raise NotLaurent("denominator " + self.den.to_string() + " does not divide")

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def _lift(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, LaurentPoly):
            return RationalFunction(other)
        if isinstance(other, (int, Fraction)):
            return RationalFunction(LaurentPoly.const(self.nvars, other))
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction._make(-self.num, self.den)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return RationalFunction(LaurentPoly.zero(self.nvars))
            return RationalFunction._make(self.num * other, self.den)
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        if other.den.is_constant() and self.den.is_constant():
            return RationalFunction._make(self.num * other.num, self.den * other.den)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __pow__(self, k: int):
        if k >= 0:
            return RationalFunction._make(self.num**k, self.den**k)
        return self.inverse() ** (-k)

    @classmethod
    def _make(cls, num, den):
        obj = cls.__new__(cls)
        obj.num = num
        obj.den = den
        return obj

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        if self.den.is_constant():
            return hash(self.as_laurent())
        return hash(self.num.nvars)

    def evaluate(self, values):
        return self.num.evaluate(values) / self.den.evaluate(values)

    def substitute(self, images):
        n = self.num.substitute(images)
        d = self.den.substitute(images)
        return as_rational_function(n) / as_rational_function(d)

    def __repr__(self):
        if self.den.is_constant() and self.den.constant_value() == 1:
            return f"RationalFunction({self.num.to_string()})"
        return f"RationalFunction(({self.num.to_string()}) / ({self.den.to_string()}))"


def as_rational_function(x) -> RationalFunction:
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, LaurentPoly):
        return RationalFunction(x)
    raise TypeError(f"cannot convert {type(x).__name__}")
