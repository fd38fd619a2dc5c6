"""Bit-level mod-2 combinatorics.

Dyadic expansions, Lucas binomial parity, the dyadic digit set A(J), the
pairing bijection phi between the regions k <= l and l < k, and truncated
power series with non-negative (F2-dimension) coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator


def binom_mod2(n: int, k: int) -> int:
    """C(n, k) mod 2, by Lucas: 1 iff the bits of k are a submask of n."""
    if n < 0 or k < 0:
        raise ValueError("binom_mod2 requires non-negative arguments")
    return 1 if n & k == k else 0


def two_expansion(n: int) -> Iterator[int]:
    """Positions of the set bits of n, least significant first."""
    i = 0
    while n:
        if n & 1:
            yield i
        n >>= 1
        i += 1


@dataclass(frozen=True)
class DyadicExpansion:
    """Digits eps_i of value = sum eps_i 2^i, least significant first.

    The trailing digit is 1 unless the value is 0.
    """

    bits: tuple[int, ...]

    @classmethod
    def of(cls, n: int) -> "DyadicExpansion":
        if n < 0:
            raise ValueError("dyadic expansion of a negative integer")
        bits = []
        while n:
            bits.append(n & 1)
            n >>= 1
        return cls(tuple(bits))

    @property
    def value(self) -> int:
        return sum(b << i for i, b in enumerate(self.bits))

    def digit(self, i: int) -> int:
        return self.bits[i] if 0 <= i < len(self.bits) else 0


@dataclass(frozen=True)
class IndexSetJ:
    """A subset of the positive integers: a finite part plus an optional
    cofinite tail "all j > tail_above".

    Every index set used here (the quotient shapes of truncated and
    integral Morava flavors) has this form, which keeps enumeration
    bounds decidable.
    """

    members: frozenset[int] = frozenset()
    tail_above: int | None = None

    def __post_init__(self):
        if any(j < 1 for j in self.members):
            raise ValueError("index sets contain positive integers only")
        if self.tail_above is not None and self.tail_above < 0:
            raise ValueError("tail threshold must be >= 0")

    @classmethod
    def empty(cls) -> "IndexSetJ":
        return cls()

    @classmethod
    def all(cls) -> "IndexSetJ":
        return cls(tail_above=0)

    @classmethod
    def greater_than(cls, m: int) -> "IndexSetJ":
        """J for the height-m truncation: every j > m is killed."""
        return cls(tail_above=m)

    @classmethod
    def of(cls, *js: int) -> "IndexSetJ":
        return cls(members=frozenset(js))

    @classmethod
    def bpkm(cls, k: int, m: int) -> "IndexSetJ":
        """J for the (k, m) quotient: 0 < j < k or j > m."""
        if not 1 <= k <= m:
            raise ValueError("bpkm requires 1 <= k <= m")
        return cls(members=frozenset(range(1, k)), tail_above=m)

    @classmethod
    def parse(cls, spec: str) -> "IndexSetJ":
        """Grammar: none | all | gt:<m> | set:1,3,4 | bpkm:<k>,<m>."""
        spec = spec.strip()
        if spec == "none":
            return cls.empty()
        if spec == "all":
            return cls.all()
        if spec.startswith("gt:"):
            return cls.greater_than(int(spec[3:]))
        if spec.startswith("set:"):
            body = spec[4:]
            js = [int(s) for s in body.split(",") if s] if body else []
            return cls(members=frozenset(js))
        if spec.startswith("bpkm:"):
            k, m = (int(s) for s in spec[5:].split(","))
            return cls.bpkm(k, m)
        raise ValueError(f"cannot parse index set spec {spec!r}")

    def spec_string(self) -> str:
        if self.tail_above is None:
            return "set:" + ",".join(str(j) for j in sorted(self.members)) if self.members else "none"
        if self.tail_above == 0 and not self.members:
            return "all"
        if not self.members:
            return f"gt:{self.tail_above}"
        finite = ",".join(str(j) for j in sorted(self.members))
        return f"set:{finite}+gt:{self.tail_above}"

    def __contains__(self, j: int) -> bool:
        if j in self.members:
            return True
        return self.tail_above is not None and j > self.tail_above

    def bit_allowed(self, i: int) -> bool:
        """Whether digit eps_i may be set in a member of A(J)."""
        return (i + 1) in self

    def members_upto(self, j_max: int) -> list[int]:
        out = [j for j in sorted(self.members) if j <= j_max]
        if self.tail_above is not None:
            out.extend(j for j in range(self.tail_above + 1, j_max + 1)
                       if j not in self.members)
        return sorted(set(out))

    def is_subset_of(self, other: "IndexSetJ", bound: int = 512) -> bool:
        return all(j in other for j in self.members_upto(bound))


def a_set_contains(r: int, j_set: IndexSetJ) -> int:
    """1 iff r lies in A(J): every set digit eps_i of r has i+1 in J."""
    if r < 0:
        raise ValueError("A(J) contains non-negative integers only")
    return 1 if all(j_set.bit_allowed(i) for i in two_expansion(r)) else 0


def a_set_enumerate(j_set: IndexSetJ, r_max: int) -> list[int]:
    """All members of A(J) that are <= r_max, ascending."""
    if r_max < 0:
        raise ValueError("r_max must be >= 0")
    return [r for r in range(r_max + 1) if a_set_contains(r, j_set)]


class PairingDomainError(ValueError):
    """A phi / phi_inverse argument violated its domain; the message
    names the failed inequality."""


def _check_phi_domain(l: int, k: int, m: int, inverse: bool) -> None:
    if m < 1:
        raise PairingDomainError("m >= 1 required")
    top = (1 << m) - 1
    for name, val in (("l", l), ("k", k)):
        if not 0 <= val <= top:
            raise PairingDomainError(f"0 <= {name} <= 2^m - 1 violated: {name} = {val}")
    if l % 2:
        raise PairingDomainError(f"l must be even: l = {l}")
    if inverse and not l < k:
        raise PairingDomainError(f"l < k violated: l = {l}, k = {k}")
    if not inverse and not k <= l:
        raise PairingDomainError(f"k <= l violated: k = {k}, l = {l}")


def phi(l: int, k: int, m: int) -> tuple[int, int]:
    """The pairing (l, k) -> (l - (2^m - 2^(i+1)), k + 2^i) on k <= l,
    inverse to the kappa decomposition map on l < k.

    i is pinned by requiring the image's kappa decomposition to return
    it: bit i of k is clear and k mod 2^i <= l - 2^m + 2^(i+1) <
    2^i + (k mod 2^i).  (A closed-form max/min recipe for i via binomial
    parities breaks injectivity from m = 3 on; the decomposition is the
    mechanism the differentials actually follow.)
    """
    _check_phi_domain(l, k, m, inverse=False)
    for i in range(m):
        l2 = l - ((1 << m) - (1 << (i + 1)))
        k2 = k + (1 << i)
        if l2 < 0:
            continue
        if kappa_decomposition(l2, k2, m) == (i, (k2 % (1 << (i + 1))), k2 >> (i + 1)):
            return l2, k2
    raise PairingDomainError(f"no admissible i for (l, k) = ({l}, {k}), m = {m}")


def kappa_decomposition(l: int, k: int, m: int) -> tuple[int, int, int] | None:
    """The unique (i, kappa, n) with 2^i <= kappa < 2^(i+1),
    kappa - 2^i <= l < kappa and k = kappa + 2^(i+1) n, if one exists.

    k may exceed 2^m - 1; then n absorbs the excess, which is what makes
    the same search serve the periodic e-power bookkeeping.
    """
    for i in range(m):
        kappa = k % (1 << (i + 1))
        if kappa >= (1 << i) and kappa - (1 << i) <= l < kappa:
            return i, kappa, (k - kappa) >> (i + 1)
    return None


def phi_inverse(l: int, k: int, m: int) -> tuple[int, int]:
    """Inverse pairing on l < k: (l + 2^m - 2^(i+1), k - 2^i)."""
    _check_phi_domain(l, k, m, inverse=True)
    dec = kappa_decomposition(l, k, m)
    if dec is None:
        raise PairingDomainError(f"no kappa decomposition for (l, k) = ({l}, {k}), m = {m}")
    i, _, _ = dec
    return l + (1 << m) - (1 << (i + 1)), k - (1 << i)


@dataclass(frozen=True)
class PoincareSeries:
    """F2-dimension counts by degree, truncated at an explicit bound."""

    coeffs: tuple[int, ...]
    degree_max: int

    def __post_init__(self):
        if self.degree_max < 0:
            raise ValueError("degree bound must be >= 0")
        if len(self.coeffs) != self.degree_max + 1:
            raise ValueError("coefficient list does not match degree bound")
        if any(c < 0 for c in self.coeffs):
            raise ValueError("coefficients are dimensions; negatives forbidden")

    @classmethod
    def from_dict(cls, d: dict[int, int], degree_max: int) -> "PoincareSeries":
        coeffs = [0] * (degree_max + 1)
        for deg, c in d.items():
            if 0 <= deg <= degree_max:
                coeffs[deg] = c
        return cls(tuple(coeffs), degree_max)

    @classmethod
    def one(cls, degree_max: int) -> "PoincareSeries":
        return cls.from_dict({0: 1}, degree_max)

    @classmethod
    def from_exponents(cls, exps, degree_max: int, scale: int = 1) -> "PoincareSeries":
        d: dict[int, int] = {}
        for e in exps:
            deg = scale * e
            if deg <= degree_max:
                d[deg] = d.get(deg, 0) + 1
        return cls.from_dict(d, degree_max)

    def coefficient(self, deg: int) -> int:
        return self.coeffs[deg] if 0 <= deg <= self.degree_max else 0

    def __mul__(self, other: "PoincareSeries") -> "PoincareSeries":
        bound = min(self.degree_max, other.degree_max)
        out = [0] * (bound + 1)
        for i, a in enumerate(self.coeffs[: bound + 1]):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs[: bound + 1 - i]):
                if b:
                    out[i + j] += a * b
        return PoincareSeries(tuple(out), bound)

    def __str__(self) -> str:
        terms = []
        for deg, c in enumerate(self.coeffs):
            if c == 0:
                continue
            base = "1" if deg == 0 else ("t" if deg == 1 else f"t^{deg}")
            terms.append(base if c == 1 else f"{c}*{base}")
        return " + ".join(terms) if terms else "0"


def series_product(factors, degree_max: int) -> PoincareSeries:
    """Product of sparse series ({degree: coeff} maps), truncated."""
    result = PoincareSeries.one(degree_max)
    for f in factors:
        result = result * PoincareSeries.from_dict(dict(f), degree_max)
    return result


def product_one_plus_t_pow(j_set: IndexSetJ, degree_max: int) -> PoincareSeries:
    """prod_{j in J} (1 + t^(2^j)), truncated; tail factors with
    2^j > degree_max contribute nothing and are dropped."""
    j_max = degree_max.bit_length()
    factors = [{0: 1, 1 << j: 1} for j in j_set.members_upto(j_max)
               if (1 << j) <= degree_max]
    return series_product(factors, degree_max)
