"""One-parameter lifetime distributions with density c(theta) * (alpha + x^k) * e^{-theta x}.

Seven named members share this shape and differ only in the polynomial degree
k and in whether the constant term alpha is 1 or theta itself:

    member     k  alpha     density
    Lindley    1  1         theta^2/(theta+1)       * (1 + x)     * e^{-theta x}
    Shanker    1  theta     theta^2/(theta^2+1)     * (theta+x)   * e^{-theta x}
    Akash      2  1         theta^3/(theta^2+2)     * (1 + x^2)   * e^{-theta x}
    Ishita     2  theta     theta^3/(theta^3+2)     * (theta+x^2) * e^{-theta x}
    Pranav     3  theta     theta^4/(theta^4+6)     * (theta+x^3) * e^{-theta x}
    Rani       4  theta     theta^5/(theta^5+24)    * (theta+x^4) * e^{-theta x}
    RamAwadh   5  theta     theta^6/(theta^6+120)   * (theta+x^5) * e^{-theta x}

Every member is the two-component mixture

    p * Exp(theta) + (1 - p) * Erlang(k+1, theta),
    p = alpha*theta^k / (alpha*theta^k + k!),

which is what the exact sampler and the survival function use.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .numerics import erlang_tail, ln_factorial, logsumexp

__all__ = [
    "AKASH",
    "AlphaKind",
    "DistSpec",
    "FamilyMember",
    "ISHITA",
    "LINDLEY",
    "MEMBERS",
    "PRANAV",
    "RAM_AWADH",
    "RANI",
    "SHANKER",
    "member_by_name",
]


class AlphaKind(enum.Enum):
    """Whether the density polynomial's constant term is 1 or the rate theta."""

    UNIT = "unit"
    THETA = "theta"


@dataclass(frozen=True)
class FamilyMember:
    """A named member: polynomial degree plus the kind of its constant term."""

    name: str
    degree: int
    alpha_kind: AlphaKind


LINDLEY = FamilyMember("Lindley", 1, AlphaKind.UNIT)
SHANKER = FamilyMember("Shanker", 1, AlphaKind.THETA)
AKASH = FamilyMember("Akash", 2, AlphaKind.UNIT)
ISHITA = FamilyMember("Ishita", 2, AlphaKind.THETA)
PRANAV = FamilyMember("Pranav", 3, AlphaKind.THETA)
RANI = FamilyMember("Rani", 4, AlphaKind.THETA)
RAM_AWADH = FamilyMember("RamAwadh", 5, AlphaKind.THETA)

MEMBERS: tuple[FamilyMember, ...] = (
    LINDLEY, SHANKER, AKASH, ISHITA, PRANAV, RANI, RAM_AWADH,
)

_BY_NAME = {m.name.lower(): m for m in MEMBERS}


def member_by_name(name: str) -> FamilyMember:
    """Look up a member by its canonical name, case-insensitively."""
    member = _BY_NAME.get(name.strip().lower())
    if member is None:
        known = ", ".join(m.name for m in MEMBERS)
        raise ValueError(f"unknown family member {name!r}; expected one of: {known}")
    return member


@dataclass(frozen=True)
class DistSpec:
    """A family member frozen at a particular rate theta > 0."""

    member: FamilyMember
    theta: float

    def __post_init__(self) -> None:
        theta = self.theta
        if not (isinstance(theta, (int, float)) and math.isfinite(theta) and theta > 0):
            raise ValueError(f"theta must be a positive finite number, got {theta!r}")
        object.__setattr__(self, "theta", float(theta))

    @property
    def alpha(self) -> float:
        """Constant term of the density polynomial (1 or theta)."""
        if self.member.alpha_kind is AlphaKind.UNIT:
            return 1.0
        return self.theta

    @property
    def norm_const(self) -> float:
        """Normalizing constant theta^{k+1} / (alpha*theta^k + k!)."""
        k = self.member.degree
        return self.theta ** (k + 1) / (self.alpha * self.theta**k + math.factorial(k))

    @property
    def mixture_weight(self) -> float:
        """Exponential-component weight alpha*theta^k / (alpha*theta^k + k!)."""
        k = self.member.degree
        head = self.alpha * self.theta**k
        return head / (head + math.factorial(k))

    def pdf(self, x: float | np.ndarray) -> float | np.ndarray:
        """Density at x; zero for x < 0."""
        arr = np.asarray(x, dtype=float)
        flat = np.atleast_1d(arr)
        out = np.zeros_like(flat)
        pos = flat >= 0.0
        xp = flat[pos]
        out[pos] = (
            self.norm_const
            * (self.alpha + xp ** self.member.degree)
            * np.exp(-self.theta * xp)
        )
        return float(out[0]) if arr.ndim == 0 else out.reshape(arr.shape)

    def survival(self, x: float | np.ndarray) -> float | np.ndarray:
        """P(X > x), evaluated through the exponential/Erlang mixture."""
        arr = np.asarray(x, dtype=float)
        flat = np.atleast_1d(arr)
        out = np.ones_like(flat)
        # x <= 0 is exactly 1; the mixture arithmetic at x = 0 gives p + (1-p),
        # which need not round to 1
        pos = flat > 0.0
        xp = flat[pos]
        p = self.mixture_weight
        out[pos] = p * np.exp(-self.theta * xp) + (1.0 - p) * erlang_tail(
            self.member.degree + 1, self.theta, xp
        )
        result = np.clip(out, 0.0, 1.0)
        return float(result[0]) if arr.ndim == 0 else result.reshape(arr.shape)

    def cdf(self, x: float | np.ndarray) -> float | np.ndarray:
        """P(X <= x), the exact complement of survival."""
        return 1.0 - self.survival(x)

    def moment(self, m: int) -> float:
        """Raw moment E[X^m] = c * (alpha*m!/theta^{m+1} + (m+k)!/theta^{m+k+1})."""
        if m < 0:
            raise ValueError(f"m must be a nonnegative integer, got {m}")
        k = self.member.degree
        ln_theta = math.log(self.theta)
        ln_c = (k + 1) * ln_theta - math.log(self.alpha * self.theta**k + math.factorial(k))
        ln_alpha = 0.0 if self.member.alpha_kind is AlphaKind.UNIT else ln_theta
        terms = [
            ln_alpha + ln_factorial(m) - (m + 1) * ln_theta,
            ln_factorial(m + k) - (m + k + 1) * ln_theta,
        ]
        return math.exp(ln_c + logsumexp(terms))

    def sample(
        self,
        rng: np.random.Generator,
        size: int | tuple[int, ...] | None = None,
    ) -> float | np.ndarray:
        """Exact draws by composition: Exp(theta) with probability p, else the
        sum of k+1 independent Exp(theta) variates.  Identical seeds give
        identical output."""
        if size is None:
            return float(self.sample(rng, size=1)[0])
        scale = 1.0 / self.theta
        u = rng.random(size)
        out = rng.exponential(scale, size)
        erlang = u >= self.mixture_weight
        count = int(np.count_nonzero(erlang))
        if count:
            out[erlang] = rng.exponential(scale, (count, self.member.degree + 1)).sum(axis=1)
        return out
