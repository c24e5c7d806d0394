"""Sets of positive integers described by residue classes.

A ResidueSet is the single set abstraction used for part sets in partition
counting: residue classes modulo a fixed modulus, optionally with multiples
of some t removed and optionally minus another ResidueSet. Membership is
decidable for every n >= 1, and a scaled set k*S stays representable by
scaling the modulus.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class ResidueSet:
    modulus: int
    residues: frozenset[int]
    excluded_multiples: int | None = None
    explicit_removals: "ResidueSet | None" = None

    def __post_init__(self) -> None:
        if self.modulus < 1:
            raise ValueError("modulus must be positive")
        if not all(0 <= r < self.modulus for r in self.residues):
            raise ValueError("residues must lie in [0, modulus)")
        if self.excluded_multiples is not None and self.excluded_multiples < 1:
            raise ValueError("excluded_multiples must be positive")

    # -- constructors -------------------------------------------------------

    @staticmethod
    def of(modulus: int, residues) -> "ResidueSet":
        return ResidueSet(modulus, frozenset(r % modulus for r in residues))

    @staticmethod
    def naturals() -> "ResidueSet":
        return ResidueSet.of(1, {0})

    @staticmethod
    def odds() -> "ResidueSet":
        return ResidueSet.of(2, {1})

    @staticmethod
    def not_multiples_of(k: int) -> "ResidueSet":
        return ResidueSet.of(k, set(range(1, k)))

    # -- membership and enumeration -----------------------------------------

    def contains(self, n: int) -> bool:
        """Whether n >= 1 belongs to the set."""
        if n < 1:
            return False
        if n % self.modulus not in self.residues:
            return False
        if self.excluded_multiples is not None and n % self.excluded_multiples == 0:
            return False
        if self.explicit_removals is not None and self.explicit_removals.contains(n):
            return False
        return True

    def members(self, limit: int) -> list[int]:
        """All members n with 1 <= n < limit, ascending."""
        return [n for n in range(1, limit) if self.contains(n)]

    # -- set algebra ---------------------------------------------------------

    def scaled(self, k: int) -> "ResidueSet":
        """The set k*S = {k*s : s in S}, for plain residue-class sets."""
        if k < 1:
            raise ValueError("scale factor must be positive")
        if self.excluded_multiples is not None or self.explicit_removals is not None:
            raise ValueError("scaling is supported for plain residue sets only")
        m = k * self.modulus
        return ResidueSet.of(m, {(k * r) % m for r in self.residues})

    def minus(self, other: "ResidueSet") -> "ResidueSet":
        """The set difference S \\ other (one removal level)."""
        if self.explicit_removals is not None:
            raise ValueError("only one removal level is supported")
        return ResidueSet(self.modulus, self.residues, self.excluded_multiples, other)

    def without_multiples(self, t: int) -> "ResidueSet":
        """The set {n in S : t does not divide n}."""
        if self.excluded_multiples is not None and self.excluded_multiples != t:
            raise ValueError("only one multiple exclusion is supported")
        return ResidueSet(self.modulus, self.residues, t, self.explicit_removals)
