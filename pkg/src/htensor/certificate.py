"""Verdicts produced by the positivity checks."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any


class Verdict(str, enum.Enum):
    POSITIVE_DEFINITE = "POSITIVE_DEFINITE"
    POSITIVE_SEMIDEFINITE = "POSITIVE_SEMIDEFINITE"
    INCONCLUSIVE = "INCONCLUSIVE"
    INDEFINITE_OR_NEGATIVE = "INDEFINITE_OR_NEGATIVE"


class Rule(str, enum.Enum):
    DD = "DD"
    STRICT_DD = "STRICT_DD"
    LLK = "LLK"
    STRICT_LLK = "STRICT_LLK"
    LL = "LL"
    STRICT_LL = "STRICT_LL"
    BLOCK_CRITERION = "BLOCK_CRITERION"
    EXTREMAL_EIGENVALUE = "EXTREMAL_EIGENVALUE"


STRICT_RULES = {Rule.STRICT_DD, Rule.STRICT_LLK, Rule.STRICT_LL}


@dataclass(frozen=True)
class Certificate:
    """Outcome of a definiteness check.

    ``witness`` carries whatever the rule needs to justify the verdict: a
    failing index pair, a vector with nonpositive form value, or the
    constants of the block criterion. ``slack`` is the smallest margin of
    the inequalities that were checked, when that is meaningful.
    """

    verdict: Verdict
    rule: Rule
    witness: dict[str, Any] = field(default_factory=dict)
    slack: float | None = None

    def __post_init__(self):
        if self.verdict is Verdict.POSITIVE_DEFINITE and self.rule not in STRICT_RULES | {
            Rule.EXTREMAL_EIGENVALUE, Rule.BLOCK_CRITERION
        }:
            raise ValueError(f"rule {self.rule.value} cannot certify definiteness")

    @property
    def is_positive_definite(self) -> bool:
        return self.verdict is Verdict.POSITIVE_DEFINITE
