"""
PRV components of fusion products when λ≫μ.

When every λ+ν (ν a weight of V(μ)) is dominant, V(λ) ⊗ V(μ) is simply
Σ_ν m_μ(ν) V(λ+ν).  Under π, terms of level ℓ+1 vanish and terms of level
in (ℓ+1, 2ℓ] fold onto -V(s_{θ,ℓ+ȟ}·ξ), which never cancels a PRV component
V(λ+wμ).  The functions here compute each stage of that argument and check
it.
"""

from __future__ import annotations
from dataclasses import dataclass
import logging
from typing import Literal, Optional
from pydantic import BaseModel, ConfigDict, Field
from .fusion import (
    affine_reflect_theta,
    check_in_p_ell,
    fusion_product,
    inverse_affine_reflect_theta,
)
from .repcalc import (
    VirtualModule,
    gg_threshold,
    is_lambda_gg_mu,
    tensor_decompose,
    weight_system,
)
from .rootsys import AlgebraData
from .util import InvariantViolation, NotDominatingError, Weight
from .weyl import dominant_of, orbit

log = logging.getLogger(__name__)


class FusionMismatchError(InvariantViolation):
    """
    Raised when the explicit λ≫μ fusion formula disagrees with the fusion
    product computed through π
    """

    def __init__(self, expected: VirtualModule, got: VirtualModule) -> None:
        #: The fusion product computed as π(V(λ) ⊗ V(μ))
        self.expected = expected
        #: The module assembled from the explicit formula
        self.got = got

    def __str__(self) -> str:
        return f"Explicit fusion formula gave {self.got}; π of the tensor product is {self.expected}"


@dataclass(frozen=True)
class GroupedTerm:
    """One term m_μ(ν)·V(λ+ν) of V(λ) ⊗ V(μ) for λ≫μ"""

    nu: Weight
    xi: Weight
    multiplicity: int
    #: Whether ν = wμ for some w in W
    extremal: bool


@dataclass(frozen=True)
class TensorGrouping:
    """
    The terms of V(λ) ⊗ V(μ) = Σ_ν m_μ(ν) V(λ+ν), split by whether ν is
    extremal and by whether the level of λ+ν is at most ℓ, exactly ℓ+1, or
    in (ℓ+1, 2ℓ]
    """

    lam: Weight
    mu: Weight
    ell: int
    non_extremal_in_alcove: tuple[GroupedTerm, ...]
    non_extremal_on_wall: tuple[GroupedTerm, ...]
    non_extremal_folded: tuple[GroupedTerm, ...]
    extremal_in_alcove: tuple[GroupedTerm, ...]
    extremal_on_wall: tuple[GroupedTerm, ...]
    extremal_folded: tuple[GroupedTerm, ...]

    def groups(self) -> tuple[tuple[GroupedTerm, ...], ...]:
        return (
            self.non_extremal_in_alcove,
            self.non_extremal_on_wall,
            self.non_extremal_folded,
            self.extremal_in_alcove,
            self.extremal_on_wall,
            self.extremal_folded,
        )

    def to_module(self) -> VirtualModule:
        """Reassemble the tensor product from the six groups"""
        return VirtualModule(
            (t.xi, t.multiplicity) for group in self.groups() for t in group
        )


class PropositionWitness(BaseModel):
    """
    The checks made on a single folded term ξ of level in (ℓ+1, 2ℓ]: its
    image η = s_{θ,ℓ+ȟ}·ξ must lie in P_ℓ with level in [2, ℓ], must not be
    a PRV weight, and must lie strictly inside the θ-string through ξ
    """

    xi: Weight
    image: Weight
    kind: Literal["extremal", "non-extremal"]
    image_level: int
    in_p_ell: bool
    level_in_range: bool
    is_prv: bool
    #: η = ξ + (string_position)·θ
    string_position: int
    #: The strict bounds string_lower < string_position < string_upper
    string_lower: int
    string_upper: int

    @property
    def strictly_inside(self) -> bool:
        return self.string_lower < self.string_position < self.string_upper

    @property
    def holds(self) -> bool:
        return (
            self.in_p_ell
            and self.level_in_range
            and not self.is_prv
            and self.strictly_inside
        )


class PRVInstance(BaseModel):
    #: wμ
    orbit_weight: Weight
    #: λ + wμ
    weight: Weight


class WeightMultiplicity(BaseModel):
    weight: Weight
    multiplicity: int


class PRVReport(BaseModel):
    """
    The outcome of checking that every PRV weight λ+wμ in P_ℓ occurs exactly
    once in V(λ) ⊗^F V(μ)
    """

    model_config = ConfigDict(populate_by_name=True)

    algebra: str
    level: int
    lam: Weight = Field(alias="lambda")
    mu: Weight
    #: Whether λ, μ are in P_ℓ with λ≫μ; if not, nothing is checked
    applicable: bool
    prv_weights_in_p_ell: list[PRVInstance] = Field(default_factory=list)
    fusion_multiplicities: list[WeightMultiplicity] = Field(default_factory=list)
    proposition_witnesses: list[PropositionWitness] = Field(default_factory=list)
    #: Every PRV multiplicity is 1, every folded image is in P_ℓ, and no
    #: folded image is a PRV weight
    passed: bool = True
    #: Every witness satisfies all clauses, strict string bounds included
    proposition_holds: bool = True
    #: The explicit signed formula and its collapsed form both equal the
    #: fusion product
    explicit_formula_agrees: bool = True
    #: n_{λ,μ}^ν ≤ m_{λ,μ}^ν for every ν
    bounded_by_tensor: bool = True

    @property
    def ok(self) -> bool:
        return (
            self.passed
            and self.proposition_holds
            and self.explicit_formula_agrees
            and self.bounded_by_tensor
        )


def classical_prv_weights(alg: AlgebraData, lam: Weight, mu: Weight) -> frozenset[Weight]:
    """The PRV weights: the dominant representatives of λ+wμ for w in W"""
    lam = alg.check_weight(lam)
    return frozenset(dominant_of(alg, lam + nu) for nu in orbit(alg, mu))


def _check_applicable(alg: AlgebraData, lam: Weight, mu: Weight, ell: int) -> None:
    check_in_p_ell(alg, lam, ell)
    check_in_p_ell(alg, mu, ell)
    if not is_lambda_gg_mu(alg, lam, mu):
        raise NotDominatingError(lam, mu)


def grouped_tensor(
    alg: AlgebraData, lam: Weight, mu: Weight, ell: int, max_dim: Optional[int] = None
) -> TensorGrouping:
    """
    Split Σ_ν m_μ(ν) V(λ+ν) into six groups by extremality of ν and level of
    λ+ν

    :raises NotInAlcoveError: if λ or μ is not in P_ℓ
    :raises NotDominatingError: if λ≫μ does not hold
    """
    _check_applicable(alg, lam, mu, ell)
    extremal = orbit(alg, mu)
    buckets: dict[tuple[bool, str], list[GroupedTerm]] = {
        (e, g): [] for e in (False, True) for g in ("alcove", "wall", "folded")
    }
    for nu, m in sorted(weight_system(alg, mu, max_dim=max_dim).table.items()):
        xi = lam + nu
        k = alg.level(xi)
        if k > 2 * ell:
            raise InvariantViolation(
                f"V({xi}) in V({lam}) ⊗ V({mu}) has level {k} > 2ℓ = {2 * ell}"
            )
        where = "alcove" if k <= ell else "wall" if k == ell + 1 else "folded"
        buckets[nu in extremal, where].append(
            GroupedTerm(nu=nu, xi=xi, multiplicity=m, extremal=nu in extremal)
        )
    return TensorGrouping(
        lam=lam,
        mu=mu,
        ell=ell,
        non_extremal_in_alcove=tuple(buckets[False, "alcove"]),
        non_extremal_on_wall=tuple(buckets[False, "wall"]),
        non_extremal_folded=tuple(buckets[False, "folded"]),
        extremal_in_alcove=tuple(buckets[True, "alcove"]),
        extremal_on_wall=tuple(buckets[True, "wall"]),
        extremal_folded=tuple(buckets[True, "folded"]),
    )


def _theta_string(support: frozenset[Weight], nu: Weight, theta: Weight) -> tuple[int, int]:
    """(q, r) such that ν+qθ, …, ν, …, ν-rθ is the θ-string through ν"""
    q = 0
    while nu + (q + 1) * theta in support:
        q += 1
    r = 0
    while nu - (r + 1) * theta in support:
        r += 1
    return (q, r)


def proposition_check(
    alg: AlgebraData, lam: Weight, mu: Weight, ell: int, max_dim: Optional[int] = None
) -> list[PropositionWitness]:
    """
    For every term ξ of V(λ) ⊗ V(μ) with level in (ℓ+1, 2ℓ], check that
    η = s_{θ,ℓ+ȟ}·ξ is in P_ℓ with level in [2, ℓ], that η is not of the form
    λ+wμ, and that η = ξ + nθ with n strictly between the ends of the
    θ-string through ξ (for ξ = λ+wμ: -(wμ)(H_θ) < n < 0; for ξ = λ+ν with ν
    non-extremal: -r < n < q)
    """
    grouping = grouped_tensor(alg, lam, mu, ell, max_dim=max_dim)
    prv = classical_prv_weights(alg, lam, mu)
    support = weight_system(alg, mu, max_dim=max_dim).support
    witnesses: list[PropositionWitness] = []
    for term in grouping.extremal_folded + grouping.non_extremal_folded:
        eta = affine_reflect_theta(alg, term.xi, ell)
        eta_level = alg.level(eta)
        position = ell + 1 - alg.level(term.xi)
        if term.extremal:
            lower = -alg.level(term.nu)
            upper = 0
        else:
            q, r = _theta_string(support, term.nu, alg.theta)
            lower, upper = -r, q
        w = PropositionWitness(
            xi=term.xi,
            image=eta,
            kind="extremal" if term.extremal else "non-extremal",
            image_level=eta_level,
            in_p_ell=alg.in_p_ell(eta, ell),
            level_in_range=2 <= eta_level <= ell,
            is_prv=eta in prv,
            string_position=position,
            string_lower=lower,
            string_upper=upper,
        )
        if not w.holds:
            log.warning(
                "%s, ℓ=%d, λ=%s, μ=%s: folding ξ=%s fails: %s",
                alg.name,
                ell,
                lam,
                mu,
                term.xi,
                w.model_dump_json(),
            )
        witnesses.append(w)
    return witnesses


def explicit_fusion(
    alg: AlgebraData, lam: Weight, mu: Weight, ell: int, max_dim: Optional[int] = None
) -> VirtualModule:
    """
    Assemble V(λ) ⊗^F V(μ) for λ≫μ from the four signed sums

        Σ_{ν∈S, λ+ν∈P_ℓ} m_μ(ν) V(λ+ν) - Σ_{ν∈S, folded} m_μ(ν) V(s·(λ+ν))
        + Σ_{w, λ+wμ∈P_ℓ} V(λ+wμ) - Σ_{w, folded} V(s·(λ+wμ))

    and check it against π(V(λ) ⊗ V(μ))

    :raises FusionMismatchError: if the two disagree
    """
    grouping = grouped_tensor(alg, lam, mu, ell, max_dim=max_dim)
    terms: list[tuple[Weight, int]] = []
    for t in grouping.non_extremal_in_alcove + grouping.extremal_in_alcove:
        terms.append((t.xi, t.multiplicity))
    for t in grouping.non_extremal_folded + grouping.extremal_folded:
        eta = affine_reflect_theta(alg, t.xi, ell)
        if not eta.is_dominant():
            raise InvariantViolation(
                f"s·ξ = {eta} is not dominant for ξ = {t.xi} ({alg.name}, ℓ={ell})"
            )
        terms.append((eta, -t.multiplicity))
    got = VirtualModule(terms)
    expected = fusion_product(alg, lam, mu, ell, max_dim=max_dim)
    if got != expected:
        raise FusionMismatchError(expected, got)
    return got


def collapsed_multiplicities(
    alg: AlgebraData, lam: Weight, mu: Weight, ell: int, max_dim: Optional[int] = None
) -> dict[Weight, int]:
    """
    For each non-extremal ν with λ+ν in P_ℓ, the net multiplicity
    m̃_μ(ν) = m_μ(ν) - m_μ(β), where β is the weight of V(μ) with
    s_{θ,ℓ+ȟ}^{-1}(λ+β+ρ) - λ - ρ = ν and ℓ+1 < (λ+β)(H_θ) ≤ 2ℓ, if there is
    one (otherwise m_μ(β) is taken to be 0)
    """
    grouping = grouped_tensor(alg, lam, mu, ell, max_dim=max_dim)
    ws = weight_system(alg, mu, max_dim=max_dim)
    result: dict[Weight, int] = {}
    for t in grouping.non_extremal_in_alcove:
        beta = inverse_affine_reflect_theta(alg, t.xi, ell) - lam
        m_beta = ws.multiplicity(beta)
        if m_beta and not ell + 1 < alg.level(lam + beta) <= 2 * ell:
            m_beta = 0
        net = t.multiplicity - m_beta
        if net < 0:
            raise InvariantViolation(
                f"m̃_{mu}({t.nu}) = {net} < 0 for λ={lam} ({alg.name}, ℓ={ell})"
            )
        result[t.nu] = net
    return result


def collapsed_fusion(
    alg: AlgebraData, lam: Weight, mu: Weight, ell: int, max_dim: Optional[int] = None
) -> VirtualModule:
    """
    Σ_{ν∈S, λ+ν∈P_ℓ} m̃_μ(ν) V(λ+ν) + Σ_{w, λ+wμ∈P_ℓ} V(λ+wμ)
    """
    grouping = grouped_tensor(alg, lam, mu, ell, max_dim=max_dim)
    terms = [
        (lam + nu, m)
        for nu, m in collapsed_multiplicities(alg, lam, mu, ell, max_dim=max_dim).items()
    ]
    terms.extend((t.xi, 1) for t in grouping.extremal_in_alcove)
    return VirtualModule(terms)


def verify_theorem(
    alg: AlgebraData, lam: Weight, mu: Weight, ell: int, max_dim: Optional[int] = None
) -> PRVReport:
    """
    Check that for λ, μ in P_ℓ with λ≫μ, every λ+wμ in P_ℓ occurs exactly
    once in V(λ) ⊗^F V(μ), together with the folding checks of
    `proposition_check()`, the explicit formulas, and n ≤ m.  Failures are
    recorded in the returned report rather than raised.
    """
    lam = alg.check_weight(lam)
    mu = alg.check_weight(mu)
    report = PRVReport(algebra=alg.name, level=ell, lam=lam, mu=mu, applicable=False)
    if not (
        alg.in_p_ell(lam, ell) and alg.in_p_ell(mu, ell) and is_lambda_gg_mu(alg, lam, mu)
    ):
        return report
    fusion = fusion_product(alg, lam, mu, ell, max_dim=max_dim)
    prv = [
        PRVInstance(orbit_weight=nu, weight=lam + nu)
        for nu in sorted(orbit(alg, mu))
        if alg.in_p_ell(lam + nu, ell)
    ]
    mults = [
        WeightMultiplicity(weight=p.weight, multiplicity=fusion.coefficient(p.weight))
        for p in prv
    ]
    witnesses = proposition_check(alg, lam, mu, ell, max_dim=max_dim)
    prv_all = {lam + nu for nu in orbit(alg, mu)}
    try:
        explicit = explicit_fusion(alg, lam, mu, ell, max_dim=max_dim)
        agrees = explicit == collapsed_fusion(alg, lam, mu, ell, max_dim=max_dim)
    except InvariantViolation as e:
        log.warning("%s, ℓ=%d, λ=%s, μ=%s: %s", alg.name, ell, lam, mu, e)
        agrees = False
    tensor = tensor_decompose(alg, lam, mu, max_dim=max_dim)
    report = PRVReport(
        algebra=alg.name,
        level=ell,
        lam=lam,
        mu=mu,
        applicable=True,
        prv_weights_in_p_ell=prv,
        fusion_multiplicities=mults,
        proposition_witnesses=witnesses,
        passed=(
            all(m.multiplicity == 1 for m in mults)
            and all(w.in_p_ell for w in witnesses)
            and not any(w.image in prv_all for w in witnesses)
        ),
        proposition_holds=all(w.holds for w in witnesses),
        explicit_formula_agrees=agrees,
        bounded_by_tensor=all(c <= tensor.coefficient(nu) for nu, c in fusion.items()),
    )
    if not report.ok:
        log.warning(
            "PRV check failed for %s, ℓ=%d, λ=%s, μ=%s", alg.name, ell, lam, mu
        )
    return report


def dominating_pairs(
    alg: AlgebraData, ell: int, include_zero_mu: bool = False
) -> list[tuple[Weight, Weight]]:
    """
    All pairs (λ, μ) in P_ℓ × P_ℓ with λ≫μ, sorted by λ and then μ.  Pairs
    with μ = 0 are left out unless ``include_zero_mu`` is true.
    """
    alcove = alg.alcove_weights(ell)
    pairs: list[tuple[Weight, Weight]] = []
    for mu in alcove:
        if mu.is_zero() and not include_zero_mu:
            continue
        threshold = gg_threshold(alg, mu)
        pairs.extend(
            (lam, mu) for lam in alcove if all(a >= t for a, t in zip(lam, threshold))
        )
    return sorted(pairs)
