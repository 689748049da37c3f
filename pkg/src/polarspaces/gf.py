"""Finite fields GF(p^k) with table arithmetic.

Elements are stored as small ints: the coefficient vector (c_0, ..., c_{k-1})
of the residue polynomial is encoded as sum c_i p^i.  FieldElement wraps such an
int for the public API; the geometry code works on the raw ints and the tables.
"""
import re

import numpy as np

from .errors import (DegreeZero, DivisionByZero, FieldMismatch, NoInvolution,
                     NonPrime, ParseError, TooLarge, WrongCharacteristic)

DEFAULT_CAP = 81

# Conway polynomials, coefficients from the constant term up.
CONWAY = {
    (2, 1): (1, 1),
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 1, 1, 0, 1),
    (3, 1): (1, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 0, 0, 2, 1),
    (5, 1): (3, 1),
    (5, 2): (2, 4, 1),
    (7, 1): (4, 1),
    (7, 2): (3, 6, 1),
}


def is_prime(n):
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


# polynomials over GF(p) as coefficient lists, low degree first

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mod(a, m, p):
    a = _trim(a)
    m = _trim(m)
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) >= len(m):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(m)
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        a = _trim(a)
    return a


def _monic_polys(p, d):
    # all monic polynomials of degree d, lexicographic in (c_{d-1}, ..., c_0)
    for idx in range(p ** d):
        coeffs = []
        for _ in range(d):
            coeffs.append(idx % p)
            idx //= p
        yield tuple(coeffs) + (1,)


def is_irreducible(m, p):
    """Trial division by every monic polynomial of degree <= deg(m)/2."""
    m = _trim(m)
    k = len(m) - 1
    if k < 1:
        return False
    for d in range(1, k // 2 + 1):
        for g in _monic_polys(p, d):
            if not poly_mod(m, g, p):
                return False
    return True


def lex_least_irreducible(p, k):
    for m in _monic_polys(p, k):
        if is_irreducible(m, p):
            return m
    raise AssertionError("no irreducible polynomial found")


def _primitive_root(p):
    if p == 2:
        return 1
    fac = [q for q in range(2, p) if (p - 1) % q == 0 and is_prime(q)]
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in fac):
            return g
    raise AssertionError


def default_modulus(p, k):
    if (p, k) in CONWAY:
        return CONWAY[(p, k)]
    if k == 1:
        return ((p - _primitive_root(p)) % p, 1)
    return lex_least_irreducible(p, k)


class FiniteField:
    """GF(p^k).  Build through make_field so that equal fields are one object."""

    def __init__(self, p, k, modulus):
        self.p = p
        self.k = k
        self.q = p ** k
        self.modulus = tuple(modulus)
        q = self.q
        self._coeffs = [self._int_to_coeffs(a) for a in range(q)]

        add = np.zeros((q, q), dtype=np.int64)
        mul = np.zeros((q, q), dtype=np.int64)
        for a in range(q):
            ca = self._coeffs[a]
            for b in range(a, q):
                cb = self._coeffs[b]
                s = self._coeffs_to_int([(x + y) % p for x, y in zip(ca, cb)])
                prod = [0] * (2 * k - 1)
                for i, x in enumerate(ca):
                    if x:
                        for j, y in enumerate(cb):
                            prod[i + j] += x * y
                r = poly_mod([c % p for c in prod], self.modulus, p)
                m = self._coeffs_to_int(r + [0] * (k - len(r)))
                add[a, b] = add[b, a] = s
                mul[a, b] = mul[b, a] = m
        neg = np.array([int(np.nonzero(add[a] == 0)[0][0]) for a in range(q)], dtype=np.int64)
        inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            inv[a] = int(np.nonzero(mul[a] == 1)[0][0])
        self.ADD, self.MUL, self.NEG, self.INV = add, mul, neg, inv
        self.SUB = add[:, neg]
        # python lists are much faster than numpy for scalar lookups
        self.add_t = add.tolist()
        self.mul_t = mul.tolist()
        self.neg_t = neg.tolist()
        self.inv_t = inv.tolist()
        self.sub_t = self.SUB.tolist()

        if k % 2 == 0:
            e = p ** (k // 2)
            self.SIGMA = np.array([self.pow(a, e) for a in range(q)], dtype=np.int64)
        else:
            self.SIGMA = None
        self.sigma_t = None if self.SIGMA is None else self.SIGMA.tolist()
        if p == 2:
            self.SQRT = np.array([self.pow(a, 2 ** (k - 1)) for a in range(q)], dtype=np.int64)
        else:
            self.SQRT = None

    # encoding
    def _int_to_coeffs(self, a):
        out = []
        for _ in range(self.k):
            out.append(a % self.p)
            a //= self.p
        return tuple(out)

    def _coeffs_to_int(self, cs):
        v = 0
        for c in reversed(list(cs)):
            v = v * self.p + c
        return v

    def coeffs(self, a):
        return self._coeffs[a]

    def from_coeffs(self, cs):
        cs = list(cs)
        if len(cs) > self.k or any(not 0 <= c < self.p for c in cs):
            raise ValueError(f"bad coefficient tuple {cs!r} for {self}")
        return self._coeffs_to_int(cs)

    # raw arithmetic on ints
    def add(self, a, b):
        return self.add_t[a][b]

    def sub(self, a, b):
        return self.sub_t[a][b]

    def mul(self, a, b):
        return self.mul_t[a][b]

    def neg(self, a):
        return self.neg_t[a]

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return self.inv_t[a]

    def div(self, a, b):
        return self.mul_t[a][self.inv(b)]

    def pow(self, a, e):
        r, base = 1, a
        if e < 0:
            base, e = self.inv(a), -e
        while e:
            if e & 1:
                r = self.mul_t[r][base]
            base = self.mul_t[base][base]
            e >>= 1
        return r

    def from_int(self, n):
        """Image of the integer n under Z -> GF(p)."""
        return n % self.p

    @property
    def has_involution(self):
        return self.SIGMA is not None

    def sigma(self, a):
        if self.SIGMA is None:
            raise NoInvolution(f"{self} has odd degree, no involutory automorphism")
        return self.sigma_t[a]

    def sqrt(self, a):
        if self.SQRT is None:
            raise WrongCharacteristic(f"square roots by Frobenius need characteristic 2, not {self.p}")
        return int(self.SQRT[a])

    # element wrappers
    def __call__(self, value):
        if isinstance(value, FieldElement):
            if value.field is not self:
                raise FieldMismatch(f"{value.field} vs {self}")
            return value
        if isinstance(value, (tuple, list)):
            return FieldElement(self, self.from_coeffs(value))
        return FieldElement(self, self.from_int(int(value)))

    def element(self, raw):
        """Wrap a raw int code (0 <= raw < q)."""
        if not 0 <= raw < self.q:
            raise ValueError(f"{raw} is not an element code of {self}")
        return FieldElement(self, raw)

    def elements(self):
        return [FieldElement(self, a) for a in range(self.q)]

    @property
    def zero(self):
        return FieldElement(self, 0)

    @property
    def one(self):
        return FieldElement(self, 1)

    @property
    def gen(self):
        """Class of x modulo the modulus (for k == 1, the root of the linear modulus)."""
        if self.k == 1:
            return FieldElement(self, (-self.modulus[0]) % self.p)
        return FieldElement(self, self.p)

    def spec(self):
        return f"gf({self.p}^{self.k})" if self.k > 1 else f"gf({self.p})"

    def __repr__(self):
        return f"GF({self.q})"

    def __reduce__(self):
        return (make_field, (self.p, self.k))


class FieldElement:
    __slots__ = ("field", "value")

    def __init__(self, field, value):
        self.field = field
        self.value = value

    def _other(self, b):
        if isinstance(b, FieldElement):
            if b.field is not self.field:
                raise FieldMismatch(f"{self.field} vs {b.field}")
            return b.value
        if isinstance(b, int):
            return self.field.from_int(b)
        return NotImplemented

    def _wrap(self, v):
        return FieldElement(self.field, v)

    def __add__(self, b):
        ob = self._other(b)
        return NotImplemented if ob is NotImplemented else self._wrap(self.field.add(self.value, ob))

    __radd__ = __add__

    def __sub__(self, b):
        ob = self._other(b)
        return NotImplemented if ob is NotImplemented else self._wrap(self.field.sub(self.value, ob))

    def __rsub__(self, b):
        ob = self._other(b)
        return NotImplemented if ob is NotImplemented else self._wrap(self.field.sub(ob, self.value))

    def __mul__(self, b):
        ob = self._other(b)
        return NotImplemented if ob is NotImplemented else self._wrap(self.field.mul(self.value, ob))

    __rmul__ = __mul__

    def __truediv__(self, b):
        ob = self._other(b)
        return NotImplemented if ob is NotImplemented else self._wrap(self.field.div(self.value, ob))

    def __rtruediv__(self, b):
        ob = self._other(b)
        return NotImplemented if ob is NotImplemented else self._wrap(self.field.div(ob, self.value))

    def __neg__(self):
        return self._wrap(self.field.neg(self.value))

    def __pow__(self, e):
        return self._wrap(self.field.pow(self.value, e))

    def inverse(self):
        return self._wrap(self.field.inv(self.value))

    def sigma(self):
        return self._wrap(self.field.sigma(self.value))

    def sqrt(self):
        return self._wrap(self.field.sqrt(self.value))

    def coeffs(self):
        return self.field.coeffs(self.value)

    def __eq__(self, b):
        if isinstance(b, FieldElement):
            return b.field is self.field and b.value == self.value
        if isinstance(b, int):
            return self.value == self.field.from_int(b)
        return NotImplemented

    def __hash__(self):
        return hash((self.field.q, self.value))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        f = self.field
        if f.k == 1:
            return str(self.value)
        terms = []
        for i, c in reversed(list(enumerate(self.coeffs()))):
            if c == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if not mono:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}{mono}")
        return "+".join(terms) or "0"


_FIELDS = {}


def make_field(p, k=1, cap=DEFAULT_CAP):
    if not isinstance(p, int) or not is_prime(p):
        raise NonPrime(f"{p} is not prime")
    if not isinstance(k, int) or k < 1:
        raise DegreeZero(f"degree must be a positive integer, got {k}")
    if p ** k > cap:
        raise TooLarge(f"GF({p}^{k}) exceeds the field size cap {cap}")
    key = (p, k)
    if key not in _FIELDS:
        m = default_modulus(p, k)
        if not is_irreducible(m, p):
            raise AssertionError(f"tabulated modulus {m} for GF({p}^{k}) is reducible")
        _FIELDS[key] = FiniteField(p, k, m)
    return _FIELDS[key]


def field_of_order(q, cap=DEFAULT_CAP):
    for p in range(2, q + 1):
        if q % p == 0:
            break
    else:
        raise NonPrime(f"{q} is not a prime power")
    k, n = 0, q
    while n % p == 0:
        n //= p
        k += 1
    if n != 1 or not is_prime(p):
        raise NonPrime(f"{q} is not a prime power")
    return make_field(p, k, cap)


_SPEC = re.compile(r"^\s*gf\(\s*(\d+)\s*(?:\^\s*(\d+)\s*)?\)\s*$", re.I)


def parse_field(text, cap=DEFAULT_CAP):
    """'gf(p^k)' or 'gf(q)'."""
    m = _SPEC.match(text)
    if not m:
        raise ParseError(f"not a field spec: {text!r}")
    base, exp = int(m.group(1)), m.group(2)
    if exp is None:
        return field_of_order(base, cap)
    return make_field(base, int(exp), cap)


def arith(a, b, op):
    """Dispatch of the basic operations by name."""
    if op == "neg":
        return -a
    if op == "inv":
        return a.inverse()
    if not isinstance(b, FieldElement) or b.field is not a.field:
        raise FieldMismatch("operands live in different fields")
    return {"add": a.__add__, "sub": a.__sub__, "mul": a.__mul__, "div": a.__truediv__}[op](b)


def sigma(a):
    return a.sigma()


def sqrt_char2(a):
    return a.sqrt()
