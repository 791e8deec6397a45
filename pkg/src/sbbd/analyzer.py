"""Exact verification of the five SBBD conditions and optimality diagnostics.

For a design matrix X = (X_1 | ... | X_v1) the five conditions read off the
panel products:

    (I)   no row of any X_i is zero and sum_i X_i has no zero entry (spanning)
    (II)  diag(X_i^T X_i) constant mu, for every i
    (III) offdiag(X_i^T X_i) constant lambda12
    (IV)  diag(X_i^T X_j), i != j, constant lambda21
    (V)   offdiag(X_i^T X_j), i != j, constant lambda22

When (II)-(V) hold the information matrix X^T X is double completely
symmetric and its spectrum is closed-form.  With a = mu - l12, b = l12,
c = l21 - l22, d = l22:

    alpha = a - c                      multiplicity (v1-1)(v2-1)
    beta  = a - c + (b - d) v2         multiplicity v1-1
    gamma = a + c (v1-1)               multiplicity v2-1
    delta = a + b v2 + (v1-1)(c + d v2)  multiplicity 1

A Moore-Penrose generalized inverse follows from the same decomposition in
exact rational arithmetic, dropping zero-eigenvalue terms.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .design_core import DesignMatrix, DimensionError, SbbdError, SbbdParameters


class ConditionViolation(SbbdError):
    """One of conditions (II)-(V) fails; carries the first witness found."""

    def __init__(self, condition: str, witness: dict, message: str):
        self.condition = condition
        self.witness = witness
        super().__init__(f"condition ({condition}) violated: {message}")


class MissingDcs(SbbdError):
    """The information matrix is not double completely symmetric."""


class DegenerateDesign(SbbdError):
    """All four eigenvalues vanish; no generalized inverse exists."""


class ContrastsNotEstimable(SbbdError):
    """alpha <= 0: the basic contrasts cannot be estimated."""


@dataclass(frozen=True)
class InformationMatrix:
    v1: int
    v2: int
    dense: np.ndarray
    dcs: SbbdParameters | None  # set iff X^T X is double completely symmetric

    def __post_init__(self):
        d = np.ascontiguousarray(self.dense, dtype=np.int64)
        d.flags.writeable = False
        object.__setattr__(self, "dense", d)


@dataclass(frozen=True)
class SpectralSummary:
    alpha: int
    beta: int
    gamma: int
    delta: int
    m_alpha: int
    m_beta: int
    m_gamma: int
    m_delta: int
    trace: int

    def pairs(self) -> list:
        """(eigenvalue, multiplicity) in (alpha, beta, gamma, delta) order."""
        return [
            (self.alpha, self.m_alpha),
            (self.beta, self.m_beta),
            (self.gamma, self.m_gamma),
            (self.delta, self.m_delta),
        ]

    def merged(self) -> list:
        """Distinct eigenvalues with total multiplicities, descending."""
        acc: dict = {}
        for val, mult in self.pairs():
            acc[val] = acc.get(val, 0) + mult
        return sorted(acc.items(), key=lambda t: -t[0])


@dataclass(frozen=True)
class BlockRegularity:
    is_semi_regular: bool
    is_regular: bool
    k1: int | None
    k2: int | None


@dataclass(frozen=True)
class OptimalityReport:
    params: SbbdParameters
    is_sbbd: bool
    is_spanning: bool
    is_variance_balanced: bool
    is_semi_regular: bool
    is_regular: bool
    k1: int | None
    k2: int | None
    spectral: SpectralSummary
    a_criterion: Fraction
    a_lower_bound: Fraction | None
    is_a_optimal_in_omega: bool


def _require_bipartite(x: DesignMatrix) -> None:
    if x.v1 < 2 or x.v2 < 2:
        raise DimensionError("analysis needs v1 >= 2 and v2 >= 2")


def _panel_scan(x: DesignMatrix):
    """Measure (mu, l12, l21, l22) by scanning every panel product.

    Returns (params, None) when (II)-(V) hold, else (None, violation).
    """
    panels = [x.panel(i) for i in range(1, x.v1 + 1)]
    v2 = x.v2
    off = ~np.eye(v2, dtype=bool)
    mu = l12 = l21 = l22 = None

    def first_bad(mat, mask, expected):
        coords = np.argwhere(mask & (mat != expected))
        return (int(coords[0][0]) + 1, int(coords[0][1]) + 1)

    for i in range(x.v1):
        for j in range(x.v1):
            prod = panels[i].T @ panels[j]
            diag = np.diag(prod)
            if i == j:
                if mu is None:
                    mu = int(diag[0])
                if (diag != mu).any():
                    pos = int(np.flatnonzero(diag != mu)[0]) + 1
                    return None, ConditionViolation(
                        "II",
                        {"panel": i + 1, "position": (pos, pos)},
                        f"diagonal of X_{i + 1}^T X_{i + 1} is "
                        f"{int(diag[pos - 1])} at {pos}, expected mu = {mu}",
                    )
                if v2 > 1:
                    if l12 is None:
                        l12 = int(prod[0, 1])
                    if (prod[off] != l12).any():
                        pos = first_bad(prod, off, l12)
                        return None, ConditionViolation(
                            "III",
                            {"panel": i + 1, "position": pos},
                            f"off-diagonal of X_{i + 1}^T X_{i + 1} at {pos} is "
                            f"{int(prod[pos[0] - 1, pos[1] - 1])}, expected "
                            f"lambda12 = {l12}",
                        )
            else:
                if l21 is None:
                    l21 = int(diag[0])
                if (diag != l21).any():
                    pos = int(np.flatnonzero(diag != l21)[0]) + 1
                    return None, ConditionViolation(
                        "IV",
                        {"panels": (i + 1, j + 1), "position": (pos, pos)},
                        f"diagonal of X_{i + 1}^T X_{j + 1} is "
                        f"{int(diag[pos - 1])} at {pos}, expected "
                        f"lambda21 = {l21}",
                    )
                if v2 > 1:
                    if l22 is None:
                        l22 = int(prod[0, 1])
                    if (prod[off] != l22).any():
                        pos = first_bad(prod, off, l22)
                        return None, ConditionViolation(
                            "V",
                            {"panels": (i + 1, j + 1), "position": pos},
                            f"off-diagonal of X_{i + 1}^T X_{j + 1} at {pos} is "
                            f"{int(prod[pos[0] - 1, pos[1] - 1])}, expected "
                            f"lambda22 = {l22}",
                        )
    params = SbbdParameters(
        v1=x.v1,
        v2=x.v2,
        n_rows=x.n_rows,
        mu=mu,
        lambda12=l12,
        lambda21=l21,
        lambda22=l22,
    )
    return params, None


def is_spanning(x: DesignMatrix) -> bool:
    """Condition (I): every block touches every point on both sides."""
    panels = [x.panel(i) for i in range(1, x.v1 + 1)]
    if any((p.sum(axis=1) == 0).any() for p in panels):
        return False
    total = sum(panels)
    return not (total == 0).any()


def check_sbbd(x: DesignMatrix) -> SbbdParameters:
    """Verify conditions (II)-(V) exactly and return the measured parameters.

    Raises ConditionViolation on the first failure.  The spanning condition
    (I) distinguishes an SBBD from an SBBD* and is reported separately by
    is_spanning().
    """
    _require_bipartite(x)
    params, violation = _panel_scan(x)
    if violation is not None:
        raise violation
    return params


def information_matrix(x: DesignMatrix) -> InformationMatrix:
    """Exact X^T X with double-complete-symmetry detection."""
    _require_bipartite(x)
    dense = x.matrix.T @ x.matrix
    params, violation = _panel_scan(x)
    return InformationMatrix(
        v1=x.v1, v2=x.v2, dense=dense, dcs=params if violation is None else None
    )


def spectrum(info: InformationMatrix) -> SpectralSummary:
    """Closed-form eigenvalues with multiplicities; trace identity enforced."""
    if info.dcs is None:
        raise MissingDcs("information matrix is not double completely symmetric")
    p = info.dcs
    v1, v2 = info.v1, info.v2
    a, b, c, d = p.a, p.b, p.c, p.d
    summary = SpectralSummary(
        alpha=a - c,
        beta=a - c + (b - d) * v2,
        gamma=a + c * (v1 - 1),
        delta=a + b * v2 + (v1 - 1) * (c + d * v2),
        m_alpha=(v1 - 1) * (v2 - 1),
        m_beta=v1 - 1,
        m_gamma=v2 - 1,
        m_delta=1,
        trace=p.mu * v1 * v2,
    )
    weighted = sum(val * mult for val, mult in summary.pairs())
    assert weighted == summary.trace, "spectrum trace identity failed"
    assert int(np.trace(info.dense)) == summary.trace
    return summary


def _centering(n: int):
    """Fraction-valued projectors I - J/n and J/n."""
    jn = np.full((n, n), Fraction(1, n), dtype=object)
    eye = np.array(
        [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)],
        dtype=object,
    )
    return eye - jn, jn


def generalized_inverse(info: InformationMatrix) -> np.ndarray:
    """Exact rational Moore-Penrose generalized inverse of X^T X.

    Built from the spectral decomposition over the four Kronecker projector
    blocks, omitting any block whose eigenvalue vanishes.  The result G
    satisfies M G M = M and G M G = G exactly in rationals.
    """
    spec = spectrum(info)
    a1, a2 = _centering(info.v1)
    b1, b2 = _centering(info.v2)
    terms = [
        (spec.alpha, a1, b1),
        (spec.beta, a1, b2),
        (spec.gamma, a2, b1),
        (spec.delta, a2, b2),
    ]
    if all(val == 0 for val, _, _ in terms):
        raise DegenerateDesign("all four eigenvalues are zero")
    size = info.v1 * info.v2
    g = np.full((size, size), Fraction(0), dtype=object)
    for val, left, right in terms:
        if val != 0:
            g = g + np.kron(left, right) * Fraction(1, val)
    return g


def classify_blocks(x: DesignMatrix):
    """Degree regularity of the SB-blocks, as (semi_regular, regular, k1, k2).

    Semi-regular: every left point of every block has degree k1 and every
    right point degree k2, with the same pair across blocks.  Regular adds
    k1 = k2.
    """
    if x.n_rows == 0:
        return BlockRegularity(False, False, None, None)
    masks = x.matrix.reshape(x.n_rows, x.v1, x.v2)
    left = masks.sum(axis=2)  # (N, v1) left degrees
    right = masks.sum(axis=1)  # (N, v2) right degrees
    k1 = int(left.flat[0])
    k2 = int(right.flat[0])
    if (left != k1).any() or (right != k2).any():
        return BlockRegularity(False, False, None, None)
    return BlockRegularity(True, k1 == k2, k1, k2)


def a_optimality(x: DesignMatrix) -> OptimalityReport:
    """Full diagnostic report: parameters, spectrum, A-criterion, verdicts.

    The A-criterion sums 1/eigenvalue over the (v1-1)(v2-1) basic-contrast
    eigenvalues, all equal to alpha here.  For semi-regular designs the
    attainable lower bound is (v1-1)^2 (v2-1)^2 / (mu (v1 v2 - k)) with
    k = k1 v1 measured from the blocks; equality plus the SBBD conditions
    yields the optimality verdict.
    """
    info = information_matrix(x)
    if info.dcs is None:
        check_sbbd(x)  # raises with the witness
    params = info.dcs
    spec = spectrum(info)
    spanning = is_spanning(x)
    reg = classify_blocks(x)
    if spec.alpha <= 0:
        raise ContrastsNotEstimable(
            f"alpha = {spec.alpha} <= 0; basic contrasts are not estimable"
        )
    n_contrasts = (x.v1 - 1) * (x.v2 - 1)
    a_criterion = Fraction(n_contrasts, spec.alpha)
    a_lower_bound = None
    if reg.is_semi_regular:
        k = reg.k1 * x.v1
        a_lower_bound = Fraction(n_contrasts * n_contrasts, params.mu * (x.v1 * x.v2 - k))
    return OptimalityReport(
        params=params,
        is_sbbd=spanning,
        is_spanning=spanning,
        is_variance_balanced=spec.alpha > 0,
        is_semi_regular=reg.is_semi_regular,
        is_regular=reg.is_regular,
        k1=reg.k1,
        k2=reg.k2,
        spectral=spec,
        a_criterion=a_criterion,
        a_lower_bound=a_lower_bound,
        is_a_optimal_in_omega=(
            spanning and reg.is_semi_regular and a_criterion == a_lower_bound
        ),
    )
