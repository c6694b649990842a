"""Run configuration, resource budget, and shared exception types."""

from __future__ import annotations

import os
from dataclasses import dataclass, field

# Hard limits keeping dense bitset enumeration feasible.
MAX_BASE = 4
MAX_ARITY_SUM = 12
MAX_MONOID = 64

BUDGET_ENV = "PMFGALOIS_BUDGET"
DEFAULT_BUDGET = 200_000_000


class PmfGaloisError(Exception):
    """Base class for all library errors."""


class ShapeError(PmfGaloisError):
    """Arity mismatch between composed or combined objects."""


class CapError(PmfGaloisError):
    """A shape, size, or arity lies outside the configured caps."""


class ValidationError(PmfGaloisError):
    """An algebraic structure violates one of its axioms."""

    def __init__(self, axiom, witness=()):
        self.axiom = axiom
        self.witness = tuple(witness)
        super().__init__(f"axiom violated: {axiom}, witness {self.witness}")


class BudgetExceededError(PmfGaloisError):
    """The enumeration step budget was exhausted."""


class SaturationError(PmfGaloisError):
    """A truncated-naturals table was used past its threshold."""


class InapplicableError(PmfGaloisError):
    """A check's precondition does not hold for the given input."""


@dataclass
class Budget:
    """Counts enumeration steps; raises once the limit is exceeded.

    One instance may be shared by several operations so that a whole run
    is capped by a single limit (the CLI reads PMFGALOIS_BUDGET).
    """

    limit: int = DEFAULT_BUDGET
    used: int = 0

    def charge(self, steps: int = 1):
        self.used += steps
        if self.used > self.limit:
            raise BudgetExceededError(
                f"enumeration budget exceeded: {self.used} > {self.limit}")

    @staticmethod
    def from_env() -> "Budget":
        raw = os.environ.get(BUDGET_ENV)
        return Budget(int(raw)) if raw else Budget()


@dataclass(frozen=True)
class BaseSet:
    """The finite base set; elements are identified with 0..size-1."""

    size: int
    allow_tiny: bool = False

    def __post_init__(self):
        if self.size < 0 or self.size > MAX_BASE:
            raise CapError(f"base size {self.size} outside [0, {MAX_BASE}]")
        if self.size <= 1 and not self.allow_tiny:
            raise CapError(
                f"base size {self.size} needs allow_tiny=True "
                "(several statements carry |B| > 1 provisos)")


@dataclass(frozen=True)
class RunConfig:
    """Caps for one run: base size, shape caps, weight arity, thresholds."""

    base: int = 2
    n_max: int = 2
    m_max: int = 2
    k_max: int = 4
    monoid_cap: int = MAX_MONOID
    nat_threshold: int = 0  # 0 means: derive from the caps below
    allow_tiny_base: bool = False
    budget: int = field(default_factory=lambda: Budget.from_env().limit)

    def __post_init__(self):
        if self.n_max < 0 or self.m_max < 0 or self.k_max < 0:
            raise CapError("caps must be nonnegative")
        if self.n_max + self.m_max > MAX_ARITY_SUM:
            raise CapError(f"n_max + m_max > {MAX_ARITY_SUM}")
        BaseSet(self.base, allow_tiny=self.allow_tiny_base)
        if self.nat_threshold and self.nat_threshold <= self.max_product_len():
            raise CapError("nat_threshold must exceed the cap-implied "
                           "maximum product length")

    def max_product_len(self) -> int:
        return max(self.n_max, self.m_max) * max(self.k_max, 1)

    def nat_t(self) -> int:
        """Truncation threshold for naturals; saturation never occurs
        for products within the caps."""
        if self.nat_threshold:
            return self.nat_threshold
        return self.max_product_len() + max(self.base, 1) + 1

    def shapes(self):
        return [(n, m) for n in range(self.n_max + 1)
                for m in range(self.m_max + 1)]
