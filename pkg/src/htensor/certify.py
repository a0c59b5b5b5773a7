"""Checkable sufficient conditions for Hermitian positive (semi)definiteness.

The three predicates (diagonal dominance, LLK, LL) only look at entry
moduli and the real diagonal. They are evaluated in exact rational
arithmetic on top of :func:`htensor.inclusion.exact_row_data`, so the
implications DD => LLK => LL also hold for the computed answers.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from fractions import Fraction

from .certificate import Certificate, Rule, Verdict
from .errors import BadSplit, NonpositiveBound, NonRealDiagonal, NotHermitian
from .inclusion import ExactRowData, eigen_lower_bound, exact_row_data
from .solver import SolverConfig, certify_pd_by_eigen, smallest_eigenpair
from .tensor import ComplexTensor, is_hermitian, symmetrize

DIAG_IMAG_TOL = 1e-12


def _real_diagonal(data: ExactRowData) -> list[Fraction]:
    out = []
    for d in data.diag:
        if abs(d.imag) > DIAG_IMAG_TOL * (1 + abs(d)):
            raise NonRealDiagonal(f"diagonal entry {d} is not real")
        out.append(Fraction(d.real))
    return out


def _dd_margins(data: ExactRowData, diag) -> list[tuple[tuple, Fraction]]:
    return [((i,), diag[i] - data.r[i]) for i in range(data.n)]


def _llk_margins(data: ExactRowData, diag) -> list[tuple[tuple, Fraction]]:
    out = [((i,), diag[i]) for i in range(data.n)]
    for i in range(data.n):
        for j in range(data.n):
            if i != j:
                p = data.pivot[i][j]
                out.append(((i, j), (diag[i] - (data.r[i] - p)) * diag[j] - data.r[j] * p))
    return out


def _ll_margins(data: ExactRowData, diag) -> list[tuple[tuple, Fraction]]:
    out = [((i,), diag[i]) for i in range(data.n)]
    for i in range(data.n):
        for j in range(data.n):
            if i != j:
                out.append(((i, j), (diag[i] - data.r_hat[i]) * diag[j] - data.r_prime[i] * data.r[j]))
    return out


_MARGINS = {"dd": _dd_margins, "llk": _llk_margins, "ll": _ll_margins}


@dataclass(frozen=True)
class PredicateResult:
    holds: bool
    slack: float
    failing: tuple | None    # 0-based index (i,) or pair (i, j) that breaks the inequality


def check_predicate(A: ComplexTensor, kind: str, strict: bool) -> PredicateResult:
    """Evaluate one of ``"dd"``, ``"llk"``, ``"ll"`` on ``A`` as given (no symmetrization)."""
    data = exact_row_data(A)
    diag = _real_diagonal(data)
    margins = _MARGINS[kind](data, diag)
    failing = None
    for where, margin in margins:
        if margin < 0 or (strict and margin == 0):
            failing = where
            break
    slack = min(margin for _, margin in margins)
    return PredicateResult(failing is None, float(slack), failing)


def is_diagonally_dominated(A: ComplexTensor, strict: bool = False) -> bool:
    return check_predicate(A, "dd", strict).holds


def is_llk_tensor(A: ComplexTensor, strict: bool = False) -> bool:
    return check_predicate(A, "llk", strict).holds


def is_ll_tensor(A: ComplexTensor, strict: bool = False) -> bool:
    return check_predicate(A, "ll", strict).holds


_RULES = {
    ("dd", True): Rule.STRICT_DD, ("llk", True): Rule.STRICT_LLK, ("ll", True): Rule.STRICT_LL,
    ("dd", False): Rule.DD, ("llk", False): Rule.LLK, ("ll", False): Rule.LL,
}


def _one_based(where):
    return None if where is None else [k + 1 for k in where]


def certify_with_rules(A: ComplexTensor, kinds=("dd", "llk", "ll")) -> Certificate:
    """Try the given predicates on the symmetrization, strict variants first.

    Returns INCONCLUSIVE (rule = last non-strict rule tried) when nothing fires.
    """
    if not is_hermitian(A):
        raise NotHermitian("certify needs a Hermitian tensor")
    S = symmetrize(A)
    last = None
    for strict, verdict in ((True, Verdict.POSITIVE_DEFINITE), (False, Verdict.POSITIVE_SEMIDEFINITE)):
        for kind in kinds:
            res = check_predicate(S, kind, strict)
            if res.holds:
                return Certificate(verdict, _RULES[kind, strict], {}, res.slack)
            last = (kind, res)
    kind, res = last
    return Certificate(Verdict.INCONCLUSIVE, _RULES[kind, False],
                       {"failing_index": _one_based(res.failing)}, res.slack)


def certify(A: ComplexTensor, cfg: SolverConfig | None = None) -> Certificate:
    """Certify definiteness of a Hermitian tensor.

    Strict rules give POSITIVE_DEFINITE outright. When only a non-strict rule
    holds, PSD is certain and the smallest eigenvalue is consulted to see
    whether the tensor is in fact definite. When no rule holds, the verdict
    comes from the smallest eigenvalue alone.
    """
    by_rules = certify_with_rules(A)
    if by_rules.verdict is Verdict.POSITIVE_DEFINITE:
        return by_rules
    by_eigen = certify_pd_by_eigen(A, cfg)
    if by_rules.verdict is Verdict.POSITIVE_SEMIDEFINITE:
        if by_eigen.verdict is Verdict.POSITIVE_DEFINITE:
            return by_eigen
        return Certificate(Verdict.POSITIVE_SEMIDEFINITE, by_rules.rule,
                           {"lambda_min": by_eigen.witness["lambda_min"]}, by_rules.slack)
    return by_eigen


@dataclass(frozen=True)
class BlockData:
    s: int
    K1: float
    K2: float
    K: float
    N: int
    C: float

    def to_dict(self) -> dict:
        return asdict(self)


def block_constants(m: int, n: int, s: int, K1: float, K: float) -> tuple[int, float]:
    """N and C of the block criterion.

    N = (2m)^n - (2m)^s - (2m)^(n-s) and C = max(N, N^(2m) (K/K1)^(2m-1)).
    When that N is not positive (only m = 1, n = 2) it undercounts the
    mixed index tuples badly enough to make the criterion vacuous, so the
    count n^(2m) - s^(2m) - (n-s)^(2m) is used instead.
    """
    N = (2 * m) ** n - (2 * m) ** s - (2 * m) ** (n - s)
    if N <= 0:
        N = n ** (2 * m) - s ** (2 * m) - (n - s) ** (2 * m)
    C = max(float(N), float(N) ** (2 * m) * (K / K1) ** (2 * m - 1))
    return N, C


def cross_block_max(A: ComplexTensor, s: int) -> float:
    """Largest modulus among entries with an index <= s and an index > s (1-based s)."""
    K = 0.0
    for key, value in A.entries.items():
        if min(key) < s <= max(key):
            K = max(K, abs(value))
    return K


def _block_bound(block: ComplexTensor, cfg: SolverConfig) -> float:
    bound = eigen_lower_bound(block)
    if bound > 0:
        return bound
    return smallest_eigenpair(block, cfg).eigenvalue


def block_criterion(A: ComplexTensor, s: int, K1: float | None = None, K2: float | None = None,
                    cfg: SolverConfig | None = None) -> Certificate:
    """Definiteness from two definite diagonal blocks and small coupling.

    ``s`` splits the indices into 1..s and s+1..n. ``K1`` and ``K2`` are lower
    bounds on the smallest eigenvalues of the two blocks' symmetrizations;
    when omitted they are computed.
    """
    if not is_hermitian(A):
        raise NotHermitian("block_criterion needs a Hermitian tensor")
    n, m = A.n, A.m
    if not 1 <= s < n:
        raise BadSplit(f"split index {s} must satisfy 1 <= s < {n}")
    cfg = cfg or SolverConfig()
    if K1 is None:
        K1 = _block_bound(A.submatrix_block(range(s)), cfg)
    elif K1 <= 0:
        raise NonpositiveBound("K1 must be positive")
    if K2 is None:
        K2 = _block_bound(A.submatrix_block(range(s, n)), cfg)
    elif K2 <= 0:
        raise NonpositiveBound("K2 must be positive")
    K = cross_block_max(A, s)
    if K1 <= 0 or K2 <= 0:
        witness = {"s": s, "K1": K1, "K2": K2, "K": K, "reason": "a diagonal block is not definite"}
        return Certificate(Verdict.INCONCLUSIVE, Rule.BLOCK_CRITERION, witness)
    if K == 0:
        data = BlockData(s, K1, K2, 0.0, 0, 0.0)
        return Certificate(Verdict.POSITIVE_DEFINITE, Rule.BLOCK_CRITERION,
                           {**data.to_dict(), "decoupled": True}, min(K1, K2))
    N, C = block_constants(m, n, s, K1, K)
    data = BlockData(s, K1, K2, K, N, C)
    ratio = K2 / K
    if ratio >= C:
        return Certificate(Verdict.POSITIVE_DEFINITE, Rule.BLOCK_CRITERION, data.to_dict(), ratio - C)
    return Certificate(Verdict.INCONCLUSIVE, Rule.BLOCK_CRITERION, data.to_dict(), ratio - C)
