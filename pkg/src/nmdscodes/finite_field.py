"""Exact arithmetic in finite fields of characteristic at least 5.

A field F_{p^m} is described by a :class:`FieldSpec` (characteristic,
degree, monic irreducible modulus) and elements are immutable coefficient
vectors, constant term first, reduced mod p.  Everything is exact integer
arithmetic; there is no floating point anywhere.

Canonical conventions used by the rest of the package:

* elements are ordered lexicographically by coefficient vector,
* square roots return the lexicographically smaller of the two roots,
* the quadratic extension of a prime field F_q defaults to the modulus
  x^2 - n with n the smallest non-square >= 2, and extensions of
  non-prime base fields are built as a single flat extension of F_p with
  an explicitly recorded embedding of the base field.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as _cartesian
from typing import Iterator, Sequence

from .numtheory import factorize, is_prime

# ----------------------------------------------------------------------
# Dense polynomial helpers over F_p.  Coefficient tuples, constant term
# first.  The zero polynomial is (0,).  Only used for degree >= 2 fields.


def _ptrim(a: tuple[int, ...]) -> tuple[int, ...]:
    i = len(a)
    while i > 1 and a[i - 1] == 0:
        i -= 1
    return a[:i]


def _pdeg(a: tuple[int, ...]) -> int:
    a = _ptrim(a)
    return -1 if a == (0,) else len(a) - 1


def _padd(a: tuple[int, ...], b: tuple[int, ...], p: int) -> tuple[int, ...]:
    if len(a) < len(b):
        a, b = b, a
    return _ptrim(tuple((x + (b[i] if i < len(b) else 0)) % p for i, x in enumerate(a)))


def _psub(a: tuple[int, ...], b: tuple[int, ...], p: int) -> tuple[int, ...]:
    n = max(len(a), len(b))
    return _ptrim(
        tuple(
            ((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p
            for i in range(n)
        )
    )


def _pmul(a: tuple[int, ...], b: tuple[int, ...], p: int) -> tuple[int, ...]:
    if a == (0,) or b == (0,):
        return (0,)
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _ptrim(tuple(c % p for c in out))


def _pmodred(a: tuple[int, ...], mod: tuple[int, ...], p: int) -> tuple[int, ...]:
    """Remainder of a modulo the monic polynomial mod."""
    a = list(_ptrim(a))
    dm = len(mod) - 1
    while len(a) - 1 >= dm and not (len(a) == 1 and a[0] == 0):
        lead = a[-1] % p
        if lead:
            shift = len(a) - 1 - dm
            for i in range(dm):
                a[shift + i] = (a[shift + i] - lead * mod[i]) % p
        a.pop()
        while len(a) > 1 and a[-1] == 0:
            a.pop()
    return tuple(a)


def _pdivmod(
    a: tuple[int, ...], b: tuple[int, ...], p: int
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    a = list(_ptrim(a))
    b = _ptrim(b)
    if b == (0,):
        raise ZeroDivisionError("polynomial division by zero")
    db = len(b) - 1
    binv = pow(b[-1], -1, p)
    q = [0] * max(len(a) - db, 1)
    while len(a) - 1 >= db and not (len(a) == 1 and a[0] == 0):
        lead = a[-1] * binv % p
        shift = len(a) - 1 - db
        q[shift] = lead
        for i in range(db + 1):
            a[shift + i] = (a[shift + i] - lead * b[i]) % p
        while len(a) > 1 and a[-1] == 0:
            a.pop()
    return _ptrim(tuple(q)), _ptrim(tuple(a))


def _pgcd(a: tuple[int, ...], b: tuple[int, ...], p: int) -> tuple[int, ...]:
    a, b = _ptrim(a), _ptrim(b)
    while b != (0,):
        _, r = _pdivmod(a, b, p)
        a, b = b, r
    if a != (0,):
        inv = pow(a[-1], -1, p)
        a = tuple(c * inv % p for c in a)
    return a


def _ppowmod(
    base: tuple[int, ...], e: int, mod: tuple[int, ...], p: int
) -> tuple[int, ...]:
    result = (1,)
    base = _pmodred(base, mod, p)
    while e > 0:
        if e & 1:
            result = _pmodred(_pmul(result, base, p), mod, p)
        base = _pmodred(_pmul(base, base, p), mod, p)
        e >>= 1
    return result


def _pinvmod(a: tuple[int, ...], mod: tuple[int, ...], p: int) -> tuple[int, ...]:
    """Inverse of a modulo the irreducible polynomial mod (extended Euclid)."""
    r0, r1 = mod, _pmodred(a, mod, p)
    t0, t1 = (0,), (1,)
    while r1 != (0,):
        q, r = _pdivmod(r0, r1, p)
        r0, r1 = r1, r
        t0, t1 = t1, _psub(t0, _pmul(q, t1, p), p)
    if _pdeg(r0) != 0:
        raise ZeroDivisionError("element is not invertible")
    scale = pow(r0[0], -1, p)
    return _pmodred(tuple(c * scale % p for c in t0), mod, p)


def _is_irreducible(mod: tuple[int, ...], p: int) -> bool:
    """Rabin's irreducibility test for a monic polynomial over F_p."""
    m = len(mod) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    x = (0, 1)
    frob = {0: x}
    h = x
    for j in range(1, m + 1):
        h = _ppowmod(h, p, mod, p)
        frob[j] = h
    if _psub(frob[m], x, p) != (0,):
        return False
    for r in factorize(m):
        g = _pgcd(_psub(frob[m // r], x, p), mod, p)
        if _pdeg(g) != 0:
            return False
    return True


# ----------------------------------------------------------------------


@dataclass(frozen=True)
class FieldSpec:
    """A finite field F_{p^degree} with a fixed monic irreducible modulus.

    The modulus is stored constant term first and has length degree + 1.
    For prime fields the modulus defaults to x and is never used in
    arithmetic.  Specs compare and hash structurally, so two specs built
    with the same parameters are interchangeable.
    """

    p: int
    degree: int = 1
    modulus: tuple[int, ...] = field(default=())

    def __post_init__(self) -> None:
        if not is_prime(self.p) or self.p < 5:
            raise ValueError(f"characteristic must be a prime >= 5, got {self.p}")
        if self.degree < 1:
            raise ValueError(f"degree must be >= 1, got {self.degree}")
        mod = self.modulus
        if mod == ():
            if self.degree == 1:
                mod = (0, 1)
            else:
                mod = _lex_min_irreducible(self.p, self.degree)
        mod = tuple(int(c) % self.p for c in mod)
        if len(mod) != self.degree + 1 or mod[-1] != 1:
            raise ValueError(
                f"modulus must be monic of degree {self.degree}, got {self.modulus}"
            )
        if not _is_irreducible(mod, self.p):
            raise ValueError(f"modulus {mod} is reducible over F_{self.p}")
        object.__setattr__(self, "modulus", mod)

    # -- basic data ----------------------------------------------------

    @property
    def order(self) -> int:
        return self.p**self.degree

    def __repr__(self) -> str:
        if self.degree == 1:
            return f"FieldSpec(p={self.p})"
        return f"FieldSpec(p={self.p}, degree={self.degree}, modulus={self.modulus})"

    def encode(self) -> str:
        """Field tag used in serialized curves, e.g. '7^2'."""
        return f"{self.p}^{self.degree}"

    # -- element construction -------------------------------------------

    def __call__(self, value: int | Sequence[int] | "FieldElement") -> "FieldElement":
        """Coerce an integer (constant) or coefficient sequence to an element."""
        if isinstance(value, FieldElement):
            if value.spec != self:
                raise ValueError("element belongs to a different field")
            return value
        if isinstance(value, int):
            coeffs = (value % self.p,) + (0,) * (self.degree - 1)
            return FieldElement(self, coeffs)
        coeffs = tuple(int(c) % self.p for c in value)
        if len(coeffs) != self.degree:
            raise ValueError(
                f"expected {self.degree} coefficients, got {len(coeffs)}"
            )
        return FieldElement(self, coeffs)

    def zero(self) -> "FieldElement":
        return self(0)

    def one(self) -> "FieldElement":
        return self(1)

    def gen(self) -> "FieldElement":
        """The class of x, i.e. a root of the modulus (degree >= 2)."""
        if self.degree < 2:
            raise ValueError("prime fields have no extension generator")
        return self((0, 1) + (0,) * (self.degree - 2))

    def parse_element(self, text: str) -> "FieldElement":
        """Parse the canonical encoding: comma-separated coefficients."""
        parts = [s.strip() for s in text.split(",")]
        return self([int(s) for s in parts])

    def elements(self) -> Iterator["FieldElement"]:
        """All field elements in canonical (lexicographic) order."""
        for rev in _cartesian(range(self.p), repeat=self.degree):
            yield FieldElement(self, rev)


@dataclass(frozen=True)
class FieldElement:
    """An element of a fixed FieldSpec.  Immutable and hashable."""

    spec: FieldSpec
    coeffs: tuple[int, ...]

    # -- helpers ---------------------------------------------------------

    def _same(self, other: "FieldElement") -> None:
        if not isinstance(other, FieldElement) or other.spec != self.spec:
            raise ValueError("operands must share the same FieldSpec")

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def encode(self) -> str:
        return ",".join(str(c) for c in self.coeffs)

    def __repr__(self) -> str:
        return f"<{self.encode()} in F_{self.spec.p}^{self.spec.degree}>"

    # -- ring operations --------------------------------------------------

    def __add__(self, other: "FieldElement") -> "FieldElement":
        self._same(other)
        p = self.spec.p
        return FieldElement(
            self.spec, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs))
        )

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        self._same(other)
        p = self.spec.p
        return FieldElement(
            self.spec, tuple((a - b) % p for a, b in zip(self.coeffs, other.coeffs))
        )

    def __neg__(self) -> "FieldElement":
        p = self.spec.p
        return FieldElement(self.spec, tuple(-a % p for a in self.coeffs))

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        self._same(other)
        spec = self.spec
        p = spec.p
        m = spec.degree
        a, b = self.coeffs, other.coeffs
        if m == 1:
            return FieldElement(spec, (a[0] * b[0] % p,))
        if m == 2:
            # x^2 = -(c0 + c1 x) with modulus (c0, c1, 1)
            c0, c1, _ = spec.modulus
            hi = a[1] * b[1]
            lo = a[0] * b[0] - hi * c0
            mid = a[0] * b[1] + a[1] * b[0] - hi * c1
            return FieldElement(spec, (lo % p, mid % p))
        prod = _pmodred(_pmul(a, b, p), spec.modulus, p)
        return FieldElement(spec, prod + (0,) * (m - len(prod)))

    def inverse(self) -> "FieldElement":
        spec = self.spec
        if not self:
            raise ZeroDivisionError("zero has no inverse")
        if spec.degree == 1:
            return FieldElement(spec, (pow(self.coeffs[0], -1, spec.p),))
        inv = _pinvmod(self.coeffs, spec.modulus, spec.p)
        return FieldElement(spec, inv + (0,) * (spec.degree - len(inv)))

    def __truediv__(self, other: "FieldElement") -> "FieldElement":
        self._same(other)
        return self * other.inverse()

    def __pow__(self, e: int) -> "FieldElement":
        spec = self.spec
        if spec.degree == 1:
            return FieldElement(spec, (pow(self.coeffs[0], e, spec.p),))
        base = self if e >= 0 else self.inverse()
        e = abs(e)
        result = spec.one()
        while e > 0:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result


# ----------------------------------------------------------------------
# Squares and square roots.


def is_square(a: FieldElement) -> bool:
    """Whether a is a square in its field (zero counts as a square)."""
    if not a:
        return True
    q = a.spec.order
    return a ** ((q - 1) // 2) == a.spec.one()


def smallest_nonsquare(spec: FieldSpec) -> FieldElement:
    """First non-square in canonical element order."""
    for a in spec.elements():
        if a and not is_square(a):
            return a
    raise ValueError(f"no non-square found in {spec!r}")  # unreachable for q odd


def sqrt(a: FieldElement) -> FieldElement:
    """Deterministic square root: the root with lexicographically
    smaller coefficient vector.  Raises ValueError on non-squares."""
    spec = a.spec
    if not a:
        return a
    q = spec.order
    if not is_square(a):
        raise ValueError(f"{a!r} is not a square")
    if q % 4 == 3:
        r = a ** ((q + 1) // 4)
    else:
        r = _tonelli_shanks(a)
    return min(r, -r, key=lambda e: e.coeffs)


def _tonelli_shanks(a: FieldElement) -> FieldElement:
    spec = a.spec
    q = spec.order
    t = q - 1
    s = 0
    while t % 2 == 0:
        t //= 2
        s += 1
    z = smallest_nonsquare(spec)
    m = s
    c = z**t
    u = a**t
    r = a ** ((t + 1) // 2)
    one = spec.one()
    while u != one:
        i = 0
        probe = u
        while probe != one:
            probe = probe * probe
            i += 1
            if i == m:
                raise ValueError(f"{a!r} is not a square")
        b = c ** (1 << (m - i - 1))
        m = i
        c = b * b
        u = u * c
        r = r * b
    return r


def frobenius(a: FieldElement, q: int) -> FieldElement:
    """The q-power Frobenius a -> a**q; q must be a power of the characteristic."""
    p = a.spec.p
    n = q
    while n > 1 and n % p == 0:
        n //= p
    if n != 1 or q < p:
        raise ValueError(f"{q} is not a positive power of the characteristic {p}")
    return a**q


# ----------------------------------------------------------------------
# Embeddings and quadratic extensions.


@dataclass(frozen=True)
class FieldEmbedding:
    """A recorded ring embedding source -> target.

    gen_powers holds the images of 1, g, g^2, ... for the source
    generator g, so applying the embedding is one linear combination.
    """

    source: FieldSpec
    target: FieldSpec
    gen_powers: tuple[FieldElement, ...]

    def __call__(self, a: FieldElement) -> FieldElement:
        if a.spec != self.source:
            raise ValueError("element does not belong to the embedding's source field")
        acc = self.target.zero()
        for c, img in zip(a.coeffs, self.gen_powers):
            if c:
                acc = acc + self.target(c) * img
        return acc

    def fixes(self, b: FieldElement) -> bool:
        """Whether b lies in the embedded copy of the source field."""
        if b.spec != self.target:
            raise ValueError("element does not belong to the embedding's target field")
        return b ** self.source.order == b


_EMBEDDINGS: dict[tuple[FieldSpec, FieldSpec], FieldEmbedding] = {}


def register_embedding(emb: FieldEmbedding) -> None:
    _EMBEDDINGS[(emb.source, emb.target)] = emb


def get_embedding(source: FieldSpec, target: FieldSpec) -> FieldEmbedding:
    """Look up a recorded embedding; prime subfields embed implicitly."""
    try:
        return _EMBEDDINGS[(source, target)]
    except KeyError:
        pass
    if source.degree == 1 and source.p == target.p:
        powers = (target.one(),)
        emb = FieldEmbedding(source, target, powers)
        register_embedding(emb)
        return emb
    raise LookupError(f"no embedding recorded from {source!r} to {target!r}")


def embed(a: FieldElement, target: FieldSpec) -> FieldElement:
    """Apply the recorded embedding of a's field into target."""
    return get_embedding(a.spec, target)(a)


def _lex_min_irreducible(p: int, degree: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of given degree over F_p."""
    for tail in _cartesian(range(p), repeat=degree):
        mod = tuple(tail) + (1,)
        if _is_irreducible(mod, p):
            return mod
    raise ValueError(f"no irreducible of degree {degree} over F_{p}")  # unreachable


# -- generic polynomial arithmetic with FieldElement coefficients, used
#    only for root finding when embedding a non-prime base field.


def _fp_trim(a: list[FieldElement]) -> list[FieldElement]:
    while len(a) > 1 and not a[-1]:
        a.pop()
    return a


def _fp_mulmod(
    a: list[FieldElement], b: list[FieldElement], mod: list[FieldElement]
) -> list[FieldElement]:
    spec = mod[0].spec
    out = [spec.zero()] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
    dm = len(mod) - 1
    minv = mod[-1].inverse()
    _fp_trim(out)
    while len(out) - 1 >= dm:
        lead = out[-1] * minv
        if lead:
            shift = len(out) - 1 - dm
            for i in range(dm):
                out[shift + i] = out[shift + i] - lead * mod[i]
        out.pop()
        _fp_trim(out)
    return out


def _fp_powmod(
    base: list[FieldElement], e: int, mod: list[FieldElement]
) -> list[FieldElement]:
    spec = mod[0].spec
    result = [spec.one()]
    base = list(base)
    while e > 0:
        if e & 1:
            result = _fp_mulmod(result, base, mod)
        base = _fp_mulmod(base, base, mod)
        e >>= 1
    return result


def _fp_gcd(a: list[FieldElement], b: list[FieldElement]) -> list[FieldElement]:
    a, b = _fp_trim(list(a)), _fp_trim(list(b))
    spec = a[0].spec

    def is_zero(f: list[FieldElement]) -> bool:
        return len(f) == 1 and not f[0]

    while not is_zero(b):
        # a mod b
        r = list(a)
        db = len(b) - 1
        binv = b[-1].inverse()
        while len(r) - 1 >= db and not is_zero(r):
            lead = r[-1] * binv
            shift = len(r) - 1 - db
            for i in range(db + 1):
                r[shift + i] = r[shift + i] - lead * b[i]
            r.pop()
            if not r:
                r = [spec.zero()]
            _fp_trim(r)
        a, b = b, _fp_trim(r)
    if not is_zero(a):
        inv = a[-1].inverse()
        a = [c * inv for c in a]
    return a


def _roots_in_field(poly_mod_p: tuple[int, ...], ext: FieldSpec) -> list[FieldElement]:
    """All roots in ext of a squarefree polynomial with F_p coefficients.

    The polynomial must split completely in ext (true whenever its degree
    divides ext.degree).  Splitting uses gcds with (x + c)^((Q-1)/2) - 1
    for c scanned in canonical order, which is deterministic.
    """
    f = [ext(int(c)) for c in poly_mod_p]
    roots: list[FieldElement] = []
    stack = [_fp_trim(f)]
    half = (ext.order - 1) // 2
    while stack:
        g = stack.pop()
        if len(g) - 1 == 1:
            roots.append(-(g[0] / g[1]))
            continue
        got = False
        for shift in ext.elements():
            probe = _fp_powmod([shift, ext.one()], half, g)
            probe = _fp_trim([probe[0] - ext.one()] + probe[1:])
            h = _fp_gcd(probe, g)
            if 0 < len(h) - 1 < len(g) - 1:
                rest = _fp_divide_exact(g, h)
                stack.append(h)
                stack.append(rest)
                got = True
                break
        if not got:
            raise ValueError("polynomial did not split; is it squarefree over ext?")
    return sorted(roots, key=lambda r: r.coeffs)


def _fp_divide_exact(
    a: list[FieldElement], b: list[FieldElement]
) -> list[FieldElement]:
    spec = a[0].spec
    r = list(a)
    q = [spec.zero()] * (len(a) - len(b) + 1)
    db = len(b) - 1
    binv = b[-1].inverse()
    while len(r) - 1 >= db and any(c for c in r):
        lead = r[-1] * binv
        shift = len(r) - 1 - db
        q[shift] = lead
        for i in range(db + 1):
            r[shift + i] = r[shift + i] - lead * b[i]
        r.pop()
        _fp_trim(r)
    return _fp_trim(q)


@dataclass(frozen=True)
class QuadraticExtension:
    """F_{q^2} together with the recorded embedding of F_q."""

    base: FieldSpec
    ext: FieldSpec
    embedding: FieldEmbedding

    def embed(self, a: FieldElement) -> FieldElement:
        return self.embedding(a)


def quadratic_extension(
    base: FieldSpec, modulus: tuple[int, ...] | None = None
) -> QuadraticExtension:
    """Build F_{q^2} over F_q = base and record the embedding.

    Prime base: modulus defaults to x^2 - n, n the smallest non-square
    >= 2, and the embedding is the constant one.  Non-prime base: the
    extension is a flat degree-2t extension of F_p (lexicographically
    smallest modulus unless one is supplied) and the base generator maps
    to the lexicographically smallest root of the base modulus.
    """
    p = base.p
    if base.degree == 1:
        if modulus is None:
            n = smallest_nonsquare(base).coeffs[0]
            modulus = ((-n) % p, 0, 1)
        ext = FieldSpec(p, 2, tuple(modulus))
        emb = get_embedding(base, ext)
        return QuadraticExtension(base, ext, emb)
    deg = 2 * base.degree
    if modulus is None:
        ext = FieldSpec(p, deg)
    else:
        ext = FieldSpec(p, deg, tuple(modulus))
    roots = _roots_in_field(base.modulus, ext)
    if not roots:
        raise ValueError("base modulus has no root in the extension")
    g = roots[0]
    powers = [ext.one()]
    for _ in range(base.degree - 1):
        powers.append(powers[-1] * g)
    emb = FieldEmbedding(base, ext, tuple(powers))
    register_embedding(emb)
    return QuadraticExtension(base, ext, emb)
