"""Exact arithmetic: rationals, small cyclotomic fields, affine-linear forms
and bivariate polynomials with fractional exponents.

Rationals are :class:`fractions.Fraction`. Everything here is immutable.
"""

import cmath
import re
from fractions import Fraction
from math import gcd, lcm
from numbers import Rational

from .errors import InternalConsistencyError, UnboundSymbolError, UsageError

__all__ = [
    "CYCLOTOMIC_ORDERS",
    "CyclotomicNumber",
    "FracPoly",
    "LinForm",
    "as_rational",
    "cyclo_inv",
    "cyclo_mul",
    "linform_eval",
    "parse_linform",
    "poly_coeff_int",
    "poly_mul",
    "poly_pow",
    "totient",
]


def as_rational(value):
    """Coerce ints and Fractions to Fraction; refuse floats."""
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Rational):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def _fmt_rational(q):
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


# ---------------------------------------------------------------------------
# Cyclotomic numbers
# ---------------------------------------------------------------------------

# Low-order coefficients (c_0, ..., c_{phi-1}) of the monic cyclotomic
# polynomial Phi_d(x) = x^phi + c_{phi-1} x^{phi-1} + ... + c_0.
_PHI_LOW = {
    1: (-1,),
    2: (1,),
    3: (1, 1),
    4: (1, 0),
    6: (1, -1),
}

CYCLOTOMIC_ORDERS = tuple(sorted(_PHI_LOW))


def totient(d):
    return sum(1 for k in range(1, d + 1) if gcd(k, d) == 1)


def _reduce(coeffs, order):
    """Reduce a dense coefficient list (lowest degree first) modulo Phi_order."""
    low = _PHI_LOW[order]
    phi = len(low)
    work = [Fraction(c) for c in coeffs]
    for deg in range(len(work) - 1, phi - 1, -1):
        c = work[deg]
        if c:
            work[deg] = Fraction(0)
            for i, ci in enumerate(low):
                work[deg - phi + i] -= c * ci
    work += [Fraction(0)] * (phi - len(work))
    return tuple(work[:phi])


class CyclotomicNumber:
    """An element of Q(zeta_d) for d in {1, 2, 3, 4, 6}.

    Stored as the coefficient vector on the power basis 1, zeta, ...,
    zeta^(phi(d)-1), which is canonical after reduction modulo Phi_d.
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, order, coeffs=(0,)):
        if order not in _PHI_LOW:
            raise UsageError(f"cyclotomic order must be one of {CYCLOTOMIC_ORDERS}, got {order}")
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", _reduce([as_rational(c) for c in coeffs], order))

    def __setattr__(self, name, value):
        raise AttributeError("CyclotomicNumber is immutable")

    @classmethod
    def zeta(cls, order, power=1):
        """zeta_order ** power, for any integer power."""
        power %= order
        return cls(order, [0] * power + [1])

    @classmethod
    def rational(cls, order, value):
        return cls(order, [value])

    def _coerce(self, other):
        if isinstance(other, CyclotomicNumber):
            if other.order != self.order:
                raise UsageError(
                    f"cyclotomic order mismatch: {self.order} vs {other.order}"
                )
            return other
        if isinstance(other, Rational) and not isinstance(other, bool):
            return CyclotomicNumber(self.order, [other])
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return CyclotomicNumber(self.order, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber(self.order, [-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        prod = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    prod[i + j] += a * b
        return CyclotomicNumber(self.order, prod)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        if len(self.coeffs) == 1:
            return CyclotomicNumber(self.order, [1 / self.coeffs[0]])
        # x = a + b z with z^2 = -c0 - c1 z; solve x * (u + v z) = 1.
        a, b = self.coeffs
        c0, c1 = _PHI_LOW[self.order]
        det = a * (a - b * c1) + b * b * c0
        return CyclotomicNumber(self.order, [(a - b * c1) / det, -b / det])

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, exponent):
        if not isinstance(exponent, int):
            return NotImplemented
        base = self if exponent >= 0 else self.inverse()
        result = CyclotomicNumber(self.order, [1])
        for _ in range(abs(exponent)):
            result = result * base
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.order, self.coeffs))

    def is_zero(self):
        return not any(self.coeffs)

    def is_rational(self):
        return not any(self.coeffs[1:])

    def rational_value(self):
        if not self.is_rational():
            raise InternalConsistencyError(f"{self} is not a rational number")
        return self.coeffs[0]

    def to_complex(self):
        z = cmath.exp(2j * cmath.pi / self.order)
        return sum(float(c) * z**i for i, c in enumerate(self.coeffs))

    def __repr__(self):
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
            if not mono:
                parts.append(_fmt_rational(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{_fmt_rational(c)}*{mono}")
        body = " + ".join(parts).replace("+ -", "- ") or "0"
        return f"CyclotomicNumber[{self.order}]({body})"


def cyclo_mul(x, y):
    return x * y


def cyclo_inv(x):
    return x.inverse()


# ---------------------------------------------------------------------------
# Affine-linear forms
# ---------------------------------------------------------------------------


class LinForm:
    """constant + sum(coefficient * symbol), exact rational coefficients.

    Zero coefficients are never stored, so equality is structural.
    """

    __slots__ = ("_constant", "_terms")

    def __init__(self, constant=0, terms=None):
        self._constant = as_rational(constant)
        items = {}
        for sym, coeff in (terms or {}).items():
            coeff = as_rational(coeff)
            if coeff:
                items[sym] = coeff
        self._terms = dict(sorted(items.items()))

    @classmethod
    def symbol(cls, name, coefficient=1):
        return cls(0, {name: coefficient})

    @classmethod
    def coerce(cls, value):
        if isinstance(value, LinForm):
            return value
        return cls(value)

    @property
    def constant(self):
        return self._constant

    @property
    def terms(self):
        return dict(self._terms)

    @property
    def symbols(self):
        return frozenset(self._terms)

    def coeff(self, symbol):
        return self._terms.get(symbol, Fraction(0))

    def is_constant(self):
        return not self._terms

    def __bool__(self):
        return bool(self._constant) or bool(self._terms)

    # arithmetic --------------------------------------------------------
    def _other(self, other):
        if isinstance(other, LinForm):
            return other
        if isinstance(other, Rational) and not isinstance(other, bool):
            return LinForm(other)
        return None

    def __add__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        terms = dict(self._terms)
        for sym, c in other._terms.items():
            terms[sym] = terms.get(sym, 0) + c
        return LinForm(self._constant + other._constant, terms)

    __radd__ = __add__

    def __neg__(self):
        return LinForm(-self._constant, {s: -c for s, c in self._terms.items()})

    def __sub__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return other - self

    def scale(self, factor):
        factor = as_rational(factor)
        return LinForm(self._constant * factor, {s: c * factor for s, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, LinForm):
            if other.is_constant():
                return self.scale(other._constant)
            if self.is_constant():
                return other.scale(self._constant)
            raise TypeError("product of two non-constant linear forms is not affine-linear")
        if isinstance(other, Rational) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, LinForm) and other.is_constant():
            other = other._constant
        if isinstance(other, Rational) and not isinstance(other, bool):
            return self.scale(1 / Fraction(other))
        return NotImplemented

    def __eq__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return self._constant == other._constant and self._terms == other._terms

    def __hash__(self):
        if not self._terms:
            return hash(self._constant)
        return hash((self._constant, tuple(self._terms.items())))

    # evaluation --------------------------------------------------------
    def evaluate(self, assignment):
        missing = [s for s in self._terms if s not in assignment]
        if missing:
            raise UnboundSymbolError(missing)
        total = self._constant
        for sym, c in self._terms.items():
            total += c * as_rational(assignment[sym])
        return total

    def substitute(self, mapping):
        """Replace symbols by numbers or other forms; unmapped symbols stay."""
        result = LinForm(self._constant)
        for sym, c in self._terms.items():
            if sym in mapping:
                result = result + LinForm.coerce(mapping[sym]) * c
            else:
                result = result + LinForm.symbol(sym, c)
        return result

    def vector(self, symbols):
        """Coefficient row over ``symbols`` followed by the constant."""
        extra = set(self._terms) - set(symbols)
        if extra:
            raise UsageError(f"symbols outside the namespace: {sorted(extra)}")
        return [self.coeff(s) for s in symbols] + [self._constant]

    @classmethod
    def from_vector(cls, row, symbols):
        return cls(row[-1], dict(zip(symbols, row[:-1])))

    def primitive(self, symbol_order=None):
        """Scale to coprime integer coefficients with a positive leading term.

        The leading term is the first symbol of ``symbol_order`` (alphabetical
        by default) carrying a nonzero coefficient; the constant leads only a
        constant form.
        """
        if not self:
            return self
        values = list(self._terms.values()) + [self._constant]
        den = lcm(*(v.denominator for v in values))
        num = gcd(*(int(v * den) for v in values))
        form = self.scale(Fraction(den, num))
        order = list(symbol_order) if symbol_order else []
        order += sorted(s for s in self._terms if s not in order)
        lead = next((form.coeff(s) for s in order if form.coeff(s)), form._constant)
        return -form if lead < 0 else form

    # rendering ---------------------------------------------------------
    def format(self, names=None, symbol_order=None, constant_first=True, mul=""):
        names = names or {}
        order = list(symbol_order) if symbol_order else []
        order += sorted(s for s in self._terms if s not in order)
        pieces = []
        if constant_first and self._constant:
            pieces.append((self._constant, None))
        pieces += [(self._terms[s], s) for s in order if s in self._terms]
        if not constant_first and self._constant:
            pieces.append((self._constant, None))
        if not pieces:
            return "0"
        out = []
        for i, (c, sym) in enumerate(pieces):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if sym is None:
                body = _fmt_rational(mag)
            else:
                label = names.get(sym, sym)
                body = label if mag == 1 else f"{_fmt_rational(mag)}{mul}{label}"
            if i == 0:
                out.append(("-" if sign == "-" else "") + body)
            else:
                out.append(f" {sign} {body}")
        return "".join(out)

    def __str__(self):
        return self.format(mul="*")

    def __repr__(self):
        return f"LinForm({self})"


def linform_eval(form, assignment):
    return LinForm.coerce(form).evaluate(assignment)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


def parse_linform(text):
    """Parse an affine-linear expression such as ``"2 + r/2 - 3*(k - b)"``.

    Products and quotients are accepted only when one side is constant.
    """
    tokens = []
    for num, name, op in _TOKEN.findall(text):
        if num:
            tokens.append(("num", int(num)))
        elif name:
            tokens.append(("sym", name))
        elif op.strip():
            tokens.append(("op", op))
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else (None, None)

    def take():
        nonlocal pos
        tok = peek()
        pos += 1
        return tok

    def expr():
        value = term()
        while peek() in (("op", "+"), ("op", "-")):
            _, op = take()
            rhs = term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term():
        value = factor()
        while peek() in (("op", "*"), ("op", "/")):
            _, op = take()
            rhs = factor()
            if op == "*":
                value = value * rhs
            else:
                if not rhs.is_constant():
                    raise ValueError(f"division by a non-constant in {text!r}")
                value = value / rhs.constant
        return value

    def factor():
        kind, val = take()
        if kind == "num":
            return LinForm(val)
        if kind == "sym":
            return LinForm.symbol(val)
        if (kind, val) == ("op", "-"):
            return -factor()
        if (kind, val) == ("op", "+"):
            return factor()
        if (kind, val) == ("op", "("):
            inner = expr()
            if take() != ("op", ")"):
                raise ValueError(f"unbalanced parentheses in {text!r}")
            return inner
        raise ValueError(f"unexpected token {val!r} in {text!r}")

    result = expr()
    if pos != len(tokens):
        raise ValueError(f"trailing input in {text!r}")
    return result


# ---------------------------------------------------------------------------
# Polynomials in X, Y with exponents in (1/D) Z_{>=0}
# ---------------------------------------------------------------------------


def _is_scalar(value):
    return isinstance(value, LinForm) or (
        isinstance(value, Rational) and not isinstance(value, bool)
    )


class FracPoly:
    """Sparse polynomial in X^(1/D), Y^(1/D).

    ``terms`` maps scaled exponent pairs ``(a, b)`` -- the monomial
    X^(a/D) Y^(b/D) -- to a Fraction or LinForm coefficient.
    """

    __slots__ = ("scale", "_terms")

    def __init__(self, scale, terms=None):
        if not isinstance(scale, int) or scale < 1:
            raise UsageError(f"exponent scale must be a positive integer, got {scale!r}")
        clean = {}
        for (a, b), c in (terms or {}).items():
            if a < 0 or b < 0:
                raise UsageError(f"negative exponent ({a}, {b})")
            if isinstance(c, LinForm) and c.is_constant():
                c = c.constant
            elif not isinstance(c, LinForm):
                c = as_rational(c)
            if c:
                clean[(a, b)] = c
        object.__setattr__(self, "scale", scale)
        object.__setattr__(self, "_terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("FracPoly is immutable")

    # constructors ------------------------------------------------------
    @classmethod
    def constant(cls, scale, value=1):
        return cls(scale, {(0, 0): value})

    @classmethod
    def monomial(cls, scale, a, b, coeff=1):
        """coeff * X^(a/scale) * Y^(b/scale)."""
        return cls(scale, {(a, b): coeff})

    @property
    def terms(self):
        return dict(self._terms)

    def __len__(self):
        return len(self._terms)

    def _check(self, other):
        if other.scale != self.scale:
            raise UsageError(f"exponent scale mismatch: {self.scale} vs {other.scale}")

    def _lift(self, other):
        if isinstance(other, FracPoly):
            self._check(other)
            return other
        if _is_scalar(other):
            return FracPoly.constant(self.scale, other)
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        terms = dict(self._terms)
        for key, c in other._terms.items():
            terms[key] = terms[key] + c if key in terms else c
        return FracPoly(self.scale, terms)

    __radd__ = __add__

    def __neg__(self):
        return FracPoly(self.scale, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        acc = {}
        for (a1, b1), c1 in self._terms.items():
            for (a2, b2), c2 in other._terms.items():
                key = (a1 + a2, b1 + b2)
                prod = c1 * c2
                acc[key] = acc[key] + prod if key in acc else prod
        return FracPoly(self.scale, acc)

    __rmul__ = __mul__

    def __pow__(self, exponent):
        if not isinstance(exponent, int) or exponent < 0:
            raise UsageError(f"polynomial exponent must be a non-negative integer, got {exponent!r}")
        result = FracPoly.constant(self.scale)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, FracPoly):
            return self.scale == other.scale and self._terms == other._terms
        if _is_scalar(other):
            return self == FracPoly.constant(self.scale, other)
        return NotImplemented

    __hash__ = None

    # queries -----------------------------------------------------------
    def coeff(self, a, b):
        """Coefficient at scaled exponents (a, b)."""
        return self._terms.get((a, b), Fraction(0))

    def coeff_int(self, p, q):
        """Coefficient of X^p Y^q for integer p, q."""
        if p < 0 or q < 0:
            raise UsageError("bidegree must be non-negative")
        return self.coeff(p * self.scale, q * self.scale)

    def integer_part(self):
        """Terms at integer bidegree, keyed by (p, q)."""
        D = self.scale
        return {
            (a // D, b // D): c for (a, b), c in self._terms.items() if a % D == 0 and b % D == 0
        }

    def swap_xy(self):
        return FracPoly(self.scale, {(b, a): c for (a, b), c in self._terms.items()})

    def map_coefficients(self, fn):
        return FracPoly(self.scale, {k: fn(c) for k, c in self._terms.items()})

    def evaluate(self, assignment):
        """Substitute numeric values for every symbol in the coefficients."""
        return self.map_coefficients(
            lambda c: c.evaluate(assignment) if isinstance(c, LinForm) else c
        )

    def __repr__(self):
        D = self.scale
        parts = []
        for (a, b), c in sorted(self._terms.items()):
            mono = "*".join(
                s for s in (_fmt_power("X", a, D), _fmt_power("Y", b, D)) if s
            )
            coeff = f"({c})" if isinstance(c, LinForm) else _fmt_rational(c)
            parts.append(f"{coeff}*{mono}" if mono else coeff)
        return f"FracPoly[{D}](" + (" + ".join(parts) or "0") + ")"


def _fmt_power(var, a, D):
    if a == 0:
        return ""
    e = Fraction(a, D)
    return var if e == 1 else f"{var}^{_fmt_rational(e)}"


def poly_mul(p, q):
    return p * q


def poly_pow(p, e):
    return p**e


def poly_coeff_int(p, pdeg, qdeg):
    return p.coeff_int(pdeg, qdeg)
