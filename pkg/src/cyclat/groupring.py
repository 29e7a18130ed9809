"""The cyclic group of order p^n and its integral group ring.

``GroupParams(p, n)`` fixes a cyclic group of odd prime-power order p^n
with a distinguished generator ``sigma``.  For j in 0..n the subgroup of
order p^j is generated by sigma^(p^(n-j)); index 0 is the trivial subgroup
and index n the full group.

``GroupRingElt`` is an element of Z[sigma]/(sigma^(p^n) - 1), stored as the
dense coefficient vector on the power basis 1, sigma, ..., sigma^(p^n - 1).
Multiplication is cyclic convolution.  Coefficients are exact Python ints;
the coefficient ring of interest downstream is Z localized at p, so any
prime-to-p integer is a unit there — that division is only ever performed
at normal-form time, never here.
"""

from __future__ import annotations

from dataclasses import dataclass

from .primes import is_prime


@dataclass(frozen=True)
class GroupParams:
    """An odd prime p >= 3 and tower height n >= 1; group order p^n."""

    p: int
    n: int

    def __post_init__(self):
        if not isinstance(self.p, int) or isinstance(self.p, bool):
            raise TypeError("p must be an integer")
        if not isinstance(self.n, int) or isinstance(self.n, bool):
            raise TypeError("n must be an integer")
        if self.p < 3 or self.p % 2 == 0 or not is_prime(self.p):
            raise ValueError("p must be an odd prime >= 3")
        if self.n < 1:
            raise ValueError("n must be >= 1")

    @property
    def order(self):
        return self.p**self.n

    def subgroup_order(self, j):
        """Order p^j of the j-th subgroup, j in 0..n."""
        self.check_level(j)
        return self.p**j

    def subgroup_generator_exponent(self, j):
        """Exponent e with sigma^e generating the subgroup of order p^j (j >= 1)."""
        self.check_level(j)
        if j == 0:
            raise ValueError("the trivial subgroup has no generator exponent")
        return self.p ** (self.n - j)

    def check_level(self, j):
        if not isinstance(j, int) or isinstance(j, bool):
            raise TypeError("subgroup index must be an integer")
        if not 0 <= j <= self.n:
            raise ValueError(f"subgroup index {j} outside 0..{self.n}")
        return j


@dataclass(frozen=True)
class GroupRingElt:
    """Element of Z[Gamma] for Gamma cyclic of order p^n."""

    params: GroupParams
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != self.params.order:
            raise ValueError(
                f"coefficient vector has length {len(self.coeffs)}, "
                f"expected {self.params.order}"
            )
        if not all(isinstance(c, int) and not isinstance(c, bool) for c in self.coeffs):
            raise TypeError("coefficients must be integers")
        object.__setattr__(self, "coeffs", tuple(self.coeffs))

    @classmethod
    def zero(cls, params):
        return cls(params, (0,) * params.order)

    @classmethod
    def one(cls, params):
        return cls.sigma_power(params, 0)

    @classmethod
    def sigma_power(cls, params, k):
        coeffs = [0] * params.order
        coeffs[k % params.order] = 1
        return cls(params, tuple(coeffs))

    def __add__(self, other):
        self._check_compatible(other)
        return GroupRingElt(
            self.params, tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __sub__(self, other):
        self._check_compatible(other)
        return GroupRingElt(
            self.params, tuple(a - b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __neg__(self):
        return GroupRingElt(self.params, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return GroupRingElt(self.params, tuple(other * a for a in self.coeffs))
        self._check_compatible(other)
        order = self.params.order
        out = [0] * order
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[(i + j) % order] += a * b
        return GroupRingElt(self.params, tuple(out))

    __rmul__ = __mul__

    def _check_compatible(self, other):
        if not isinstance(other, GroupRingElt):
            raise TypeError(f"expected GroupRingElt, got {type(other).__name__}")
        if other.params != self.params:
            raise ValueError("group parameters differ")

    def augmentation(self):
        """Sum of coefficients (image under Gamma -> 1)."""
        return sum(self.coeffs)

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def to_matrix(self):
        """Matrix of left multiplication by self on the power basis (circulant)."""
        order = self.params.order
        return [
            [self.coeffs[(i - j) % order] for j in range(order)] for i in range(order)
        ]


def norm_element(params, j):
    """Sum over the subgroup of order p^j: sum_{k < p^j} sigma^(k * p^(n-j)).

    For j = 0 this is the ring identity; augmentation is always p^j.
    """
    params.check_level(j)
    order = params.order
    stride = params.p ** (params.n - j)
    coeffs = [0] * order
    for k in range(params.p**j):
        coeffs[(k * stride) % order] += 1
    return GroupRingElt(params, tuple(coeffs))


def relative_norm_element(params, i):
    """Sum of the p coset representatives sigma^(k * p^(n-i)), k = 0..p-1.

    This is the norm of the subgroup of order p^i relative to its index-p
    subgroup (of order p^(i-1)); requires i >= 1.
    """
    params.check_level(i)
    if i < 1:
        raise ValueError("relative norm needs a nontrivial subgroup (i >= 1)")
    order = params.order
    stride = params.p ** (params.n - i)
    coeffs = [0] * order
    for k in range(params.p):
        coeffs[(k * stride) % order] += 1
    return GroupRingElt(params, tuple(coeffs))
