"""Sparse multivariate polynomials and rational functions over Q.

Every polynomial for a dimension-n problem lives in the fixed variable
universe x1 < x2 < ... < xn < h < u  (nvars = n + 2).  h is the step size,
u the auxiliary parameter of the determinant expansion; both are ordinary
variables, so "polynomial in x and h" needs no special casing.

Exponent vectors are packed into a single int (10 bits per variable) so that
monomial multiplication is integer addition.  Terms are a dict packed-key ->
rational; zero coefficients are never stored.
"""

from __future__ import annotations

import math

from .rationals import Rat, ZERO, ONE, format_rat, parse_rat

_BITS = 10
_MASK = (1 << _BITS) - 1


def pack_exponents(exps) -> int:
    key = 0
    for i, e in enumerate(exps):
        if e:
            if e < 0 or e > _MASK:
                raise ValueError(f"exponent {e} out of packable range")
            key |= e << (_BITS * i)
    return key


def unpack_exponents(key: int, nvars: int) -> tuple[int, ...]:
    return tuple((key >> (_BITS * i)) & _MASK for i in range(nvars))


def var_names(nvars: int) -> list[str]:
    return [f"x{i + 1}" for i in range(nvars - 2)] + ["h", "u"]


class Polynomial:
    """Immutable sparse polynomial.  Arithmetic is exact; no zero terms stored."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict | None = None, _clean: bool = False):
        self.nvars = nvars
        if terms is None:
            terms = {}
        if not _clean:
            terms = {k: Rat(v) for k, v in terms.items() if v != 0}
        self.terms = terms

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero(nvars: int) -> "Polynomial":
        return Polynomial(nvars, {}, _clean=True)

    @staticmethod
    def const(nvars: int, value) -> "Polynomial":
        value = Rat(value)
        if value == 0:
            return Polynomial.zero(nvars)
        return Polynomial(nvars, {0: value}, _clean=True)

    @staticmethod
    def variable(nvars: int, index: int) -> "Polynomial":
        if not 0 <= index < nvars:
            raise ValueError(f"variable index {index} out of range for nvars={nvars}")
        return Polynomial(nvars, {1 << (_BITS * index): ONE}, _clean=True)

    @staticmethod
    def monomial(nvars: int, exps, coeff=ONE) -> "Polynomial":
        coeff = Rat(coeff)
        if coeff == 0:
            return Polynomial.zero(nvars)
        if len(exps) != nvars:
            raise ValueError("exponent vector arity does not match variable count")
        return Polynomial(nvars, {pack_exponents(exps): coeff}, _clean=True)

    # -- predicates and queries ----------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    def constant_value(self) -> Rat:
        return self.terms.get(0, ZERO)

    def total_degree(self) -> int:
        if not self.terms:
            return 0
        n = self.nvars
        return max(sum(unpack_exponents(k, n)) for k in self.terms)

    def degree_in(self, index: int) -> int:
        if not self.terms:
            return 0
        shift = _BITS * index
        return max((k >> shift) & _MASK for k in self.terms)

    def x_degree(self) -> int:
        """Total degree in the x-variables only (h and u ignored)."""
        if not self.terms:
            return 0
        nx = self.nvars - 2
        best = 0
        for k in self.terms:
            d = 0
            for i in range(nx):
                d += (k >> (_BITS * i)) & _MASK
            if d > best:
                best = d
        return best

    # -- arithmetic -----------------------------------------------------

    def _check(self, other: "Polynomial"):
        if self.nvars != other.nvars:
            raise ValueError("polynomials live in different variable universes")

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.const(self.nvars, other)
        self._check(other)
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out = dict(a)
        for k, v in b.items():
            s = out.get(k)
            if s is None:
                out[k] = v
            else:
                s = s + v
                if s == 0:
                    del out[k]
                else:
                    out[k] = s
        return Polynomial(self.nvars, out, _clean=True)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.nvars, {k: -v for k, v in self.terms.items()}, _clean=True)

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.const(self.nvars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            other = Rat(other)
            if other == 0:
                return Polynomial.zero(self.nvars)
            return Polynomial(
                self.nvars, {k: v * other for k, v in self.terms.items()}, _clean=True
            )
        self._check(other)
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out: dict = {}
        get = out.get
        bitems = list(b.items())
        for ka, va in a.items():
            for kb, vb in bitems:
                k = ka + kb
                cur = get(k)
                if cur is None:
                    out[k] = va * vb
                else:
                    out[k] = cur + va * vb
        if len(out) > len(a) * len(b) // 2:
            out = {k: v for k, v in out.items() if v != 0}
        else:
            for k in [k for k, v in out.items() if v == 0]:
                del out[k]
        return Polynomial(self.nvars, out, _clean=True)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if exponent < 0:
            raise ValueError("negative powers are not polynomials")
        result = Polynomial.const(self.nvars, 1)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self.terms == other.terms
        return self.is_constant() and self.constant_value() == Rat(other)

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    # -- calculus and substitution ---------------------------------------

    def partial_derivative(self, index: int) -> "Polynomial":
        shift = _BITS * index
        out = {}
        for k, v in self.terms.items():
            e = (k >> shift) & _MASK
            if e:
                out[k - (1 << shift)] = v * e
        return Polynomial(self.nvars, out, _clean=True)

    def substitute_polynomials(self, mapping: dict) -> "Polynomial":
        """Simultaneously substitute polynomials for variables (index -> poly)."""
        for p in mapping.values():
            self._check(p)
        n = self.nvars
        powers: dict[tuple[int, int], Polynomial] = {}

        def power(i, e):
            got = powers.get((i, e))
            if got is None:
                got = mapping[i] ** e
                powers[(i, e)] = got
            return got

        result = Polynomial.zero(n)
        for k, v in self.terms.items():
            term = Polynomial.const(n, v)
            for i in range(n):
                e = (k >> (_BITS * i)) & _MASK
                if not e:
                    continue
                if i in mapping:
                    term = term * power(i, e)
                else:
                    term = term * Polynomial.monomial(n, [e if j == i else 0 for j in range(n)])
            result = result + term
        return result

    def evaluate(self, values) -> Rat:
        """Full evaluation at a rational point (length nvars)."""
        if len(values) != self.nvars:
            raise ValueError("point arity does not match variable count")
        vals = [Rat(v) for v in values]
        total = ZERO
        for k, c in self.terms.items():
            m = c
            key = k
            i = 0
            while key:
                e = key & _MASK
                if e:
                    m = m * vals[i] ** e
                key >>= _BITS
                i += 1
            total = total + m
        return total

    def eval_h(self, hvalue) -> "Polynomial":
        """Substitute a rational for h, keeping the x and u variables."""
        hidx = self.nvars - 2
        shift = _BITS * hidx
        hvalue = Rat(hvalue)
        out: dict = {}
        for k, v in self.terms.items():
            e = (k >> shift) & _MASK
            if e:
                v = v * hvalue**e
                k = k - (e << shift)
            cur = out.get(k)
            out[k] = v if cur is None else cur + v
        return Polynomial(self.nvars, out)

    def subs_h_negated(self) -> "Polynomial":
        """h -> -h (negates coefficients of odd h-powers)."""
        shift = _BITS * (self.nvars - 2)
        out = {k: (-v if ((k >> shift) & _MASK) & 1 else v) for k, v in self.terms.items()}
        return Polynomial(self.nvars, out, _clean=True)

    def h_coefficients(self) -> dict[int, "Polynomial"]:
        """Split into h-homogeneous layers: {h-degree: poly with the h-power removed}."""
        shift = _BITS * (self.nvars - 2)
        layers: dict[int, dict] = {}
        for k, v in self.terms.items():
            e = (k >> shift) & _MASK
            layers.setdefault(e, {})[k - (e << shift)] = v
        return {e: Polynomial(self.nvars, t, _clean=True) for e, t in sorted(layers.items())}

    def coefficient_of_h(self, power: int) -> "Polynomial":
        return self.h_coefficients().get(power, Polynomial.zero(self.nvars))

    def h_support(self) -> tuple[int, ...]:
        shift = _BITS * (self.nvars - 2)
        return tuple(sorted({(k >> shift) & _MASK for k in self.terms}))

    # -- serialization ----------------------------------------------------

    def sorted_terms(self):
        n = self.nvars
        return [(unpack_exponents(k, n), self.terms[k]) for k in sorted(self.terms)]

    def to_json(self):
        return [[list(e), format_rat(c)] for e, c in self.sorted_terms()]

    @staticmethod
    def from_json(data, nvars: int | None = None) -> "Polynomial":
        if nvars is None:
            if not data:
                raise ValueError("cannot infer variable count from an empty polynomial")
            nvars = len(data[0][0])
        terms = {}
        for exps, coeff in data:
            if len(exps) != nvars:
                raise ValueError("exponent vector arity mismatch in polynomial JSON")
            key = pack_exponents(exps)
            c = parse_rat(coeff) if isinstance(coeff, str) else Rat(coeff)
            if c != 0:
                terms[key] = terms.get(key, ZERO) + c
        return Polynomial(nvars, terms)

    def __str__(self):
        if not self.terms:
            return "0"
        names = var_names(self.nvars)
        pieces = []
        for exps, coeff in self.sorted_terms():
            factors = []
            for name, e in zip(names, exps):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            body = "*".join(factors)
            if not body:
                pieces.append(format_rat(coeff))
            elif coeff == 1:
                pieces.append(body)
            elif coeff == -1:
                pieces.append(f"-{body}")
            else:
                pieces.append(f"{format_rat(coeff)}*{body}")
        return " + ".join(pieces).replace("+ -", "- ")

    __repr__ = __str__


def poly_gcd_content(p: Polynomial) -> Rat:
    """Positive rational content (for light normalization of rational functions)."""
    if p.is_zero():
        return ONE
    nums = 0
    dens = 1
    for v in p.terms.values():
        nums = math.gcd(nums, abs(int(v.numerator)))
        dens = dens * int(v.denominator) // math.gcd(dens, int(v.denominator))
    return Rat(nums, dens) if nums else ONE


def divexact(p: Polynomial, d: Polynomial) -> Polynomial:
    """Exact polynomial division p / d; raises ValueError if not divisible.

    Uses single-divisor reduction under the packed-key monomial order, which
    is multiplication-compatible, so exact divisibility is decided correctly.
    """
    if d.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if d.is_constant():
        c = d.constant_value()
        return Polynomial(p.nvars, {k: v / c for k, v in p.terms.items()}, _clean=True)
    n = p.nvars
    lead_key = max(d.terms)
    lead_coeff = d.terms[lead_key]
    lead_exx = unpack_exponents(lead_key, n)
    rem = dict(p.terms)
    quot: dict = {}
    while rem:
        k = max(rem)
        exps = unpack_exponents(k, n)
        if any(a < b for a, b in zip(exps, lead_exx)):
            raise ValueError("polynomial division is not exact")
        qk = k - lead_key
        qc = rem[k] / lead_coeff
        quot[qk] = qc
        for dk, dv in d.terms.items():
            t = qk + dk
            cur = rem.get(t, ZERO) - qc * dv
            if cur == 0:
                rem.pop(t, None)
            else:
                rem[t] = cur
    return Polynomial(n, quot, _clean=True)


class RationalFunction:
    """Quotient of polynomials; equality by cross-multiplication.

    gcd-normalization is deliberately skipped (multivariate gcd is the
    bottleneck and never needed for correctness); only rational content and
    constant denominators are reduced.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Polynomial | None = None):
        if den is None:
            den = Polynomial.const(num.nvars, 1)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if den.is_constant():
            c = den.constant_value()
            num = num * (ONE / c)
            den = Polynomial.const(num.nvars, 1)
        self.num = num
        self.den = den

    @property
    def nvars(self):
        return self.num.nvars

    def __add__(self, other):
        other = _as_rf(other, self.nvars)
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-_as_rf(other, self.nvars))

    def __rsub__(self, other):
        return _as_rf(other, self.nvars) - self

    def __mul__(self, other):
        other = _as_rf(other, self.nvars)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_rf(other, self.nvars)
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __eq__(self, other):
        other = _as_rf(other, self.nvars)
        return (self.num * other.den) == (other.num * self.den)

    def __hash__(self):  # pragma: no cover - not used as dict keys
        return hash((self.num, self.den))

    def subs_h_negated(self):
        return RationalFunction(self.num.subs_h_negated(), self.den.subs_h_negated())

    def evaluate(self, values) -> Rat:
        d = self.den.evaluate(values)
        if d == 0:
            raise ZeroDivisionError("denominator vanishes at the evaluation point")
        return self.num.evaluate(values) / d

    def series_in_h(self, order: int) -> list[Polynomial]:
        return series_in_h(self, order)

    def __str__(self):
        if self.den.is_constant():
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    __repr__ = __str__


def _as_rf(value, nvars: int) -> RationalFunction:
    if isinstance(value, RationalFunction):
        return value
    if isinstance(value, Polynomial):
        return RationalFunction(value)
    return RationalFunction(Polynomial.const(nvars, value))


def rf_substitute(
    p: Polynomial,
    numerators: list[Polynomial],
    denominator: Polynomial,
    clear_power: int,
    cache: dict | None = None,
) -> Polynomial:
    """Return denominator**clear_power * p(x -> numerators/denominator).

    The substitution touches the x-variables only; h and u pass through.
    Requires clear_power >= total x-degree of p so the result is a polynomial.
    A cache dict may be shared across calls with the same map; it stores the
    monomial power products and denominator powers.
    """
    n = p.nvars
    nx = n - 2
    if len(numerators) != nx:
        raise ValueError("substitution map arity does not match the x-variable count")
    degx = p.x_degree()
    if clear_power < degx:
        raise ValueError(
            f"clear_power {clear_power} < x-degree {degx}: result would not be polynomial"
        )
    if cache is None:
        cache = {}

    def power_product(xkey: int) -> Polynomial:
        got = cache.get(xkey)
        if got is not None:
            return got
        if xkey == 0:
            result = Polynomial.const(n, 1)
        else:
            i = 0
            key = xkey
            while not (key & _MASK):
                key >>= _BITS
                i += 1
            result = power_product(xkey - (1 << (_BITS * i))) * numerators[i]
        cache[xkey] = result
        return result

    x_mask = (1 << (_BITS * nx)) - 1
    # bucket p's terms by x-part, keeping the h/u part as a monomial factor
    buckets: dict[int, dict] = {}
    for k, v in p.terms.items():
        xkey = k & x_mask
        rest = k - xkey
        buckets.setdefault(xkey, {})[rest] = v
    by_degree: dict[int, Polynomial] = {}
    for xkey, rest_terms in buckets.items():
        d = 0
        key = xkey
        while key:
            d += key & _MASK
            key >>= _BITS
        contrib = Polynomial(n, rest_terms, _clean=True) * power_product(xkey)
        acc = by_degree.get(d)
        by_degree[d] = contrib if acc is None else acc + contrib
    # Horner in the denominator: sum_d bucket[d] * den^(clear_power - d),
    # i.e. higher x-degree buckets receive lower denominator powers
    result = Polynomial.zero(n)
    if by_degree:
        top = max(by_degree)
        result = by_degree.get(0, Polynomial.zero(n))
        for d in range(1, top + 1):
            result = result * denominator
            bucket = by_degree.get(d)
            if bucket is not None:
                result = result + bucket
        for _ in range(clear_power - top):
            result = result * denominator
    return result


def rf_substitute_rfs(p: Polynomial, rfs: list[RationalFunction], clear_power: int) -> Polynomial:
    """Substitution wrapper taking rational functions; the maps must share
    one denominator exactly."""
    if not rfs:
        raise ValueError("empty substitution map")
    den = rfs[0].den
    for r in rfs[1:]:
        if r.den != den:
            raise ValueError("substitution map entries must share the denominator exactly")
    return rf_substitute(p, [r.num for r in rfs], den, clear_power)


def series_in_h(r: RationalFunction | Polynomial, order: int) -> list[Polynomial]:
    """Taylor coefficients in h about h=0 (exact), c_0 .. c_order.

    Precondition: the denominator does not vanish identically at h=0.
    """
    if isinstance(r, Polynomial):
        r = RationalFunction(r)
    num_layers = r.num.h_coefficients()
    den_layers = r.den.h_coefficients()
    d0 = den_layers.get(0)
    if d0 is None or d0.is_zero():
        raise ZeroDivisionError("denominator vanishes identically at h = 0")
    coeffs: list[Polynomial] = []
    n = r.nvars
    for k in range(order + 1):
        acc = num_layers.get(k, Polynomial.zero(n))
        for j in range(k):
            dl = den_layers.get(k - j)
            if dl is not None:
                acc = acc - coeffs[j] * dl
        coeffs.append(divexact(acc, d0))
    return coeffs


class PointEvaluator:
    """Evaluate many polynomials at one rational point, sharing monomial values."""

    def __init__(self, nvars: int, values):
        if len(values) != nvars:
            raise ValueError("point arity does not match variable count")
        self.nvars = nvars
        self.values = [Rat(v) for v in values]
        self._cache: dict[int, Rat] = {0: ONE}

    def monomial(self, key: int) -> Rat:
        got = self._cache.get(key)
        if got is not None:
            return got
        i = 0
        k = key
        while not (k & _MASK):
            k >>= _BITS
            i += 1
        got = self.monomial(key - (1 << (_BITS * i))) * self.values[i]
        self._cache[key] = got
        return got

    def __call__(self, p: Polynomial) -> Rat:
        total = ZERO
        mono = self.monomial
        for k, c in p.terms.items():
            total = total + c * mono(k)
        return total
