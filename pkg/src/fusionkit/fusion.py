"""
Level-ℓ structures: the shifted action of the affine Weyl group W_ℓ, the
π-map onto the fusion ring, fusion products, and the Verlinde formula as an
independent check
"""

from __future__ import annotations
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Union, cast
import numpy as np
from .repcalc import VirtualModule, tensor_decompose
from .rootsys import AlgebraData
from .util import (
    CapExceededError,
    InvariantViolation,
    NotInAlcoveError,
    RationalWeight,
    Weight,
    WeightError,
)
from .weyl import WeightT, dual_weight, reflect_word, signed_orbit, to_dominant

#: Caps on the inputs of the Verlinde oracle
VERLINDE_MAX_RANK = 3
VERLINDE_MAX_LEVEL = 6
VERLINDE_MAX_WEIGHTS = 200
#: Largest accepted distance between a Verlinde sum and the nearest integer
VERLINDE_TOLERANCE = 1e-6

#: Bound on the number of steps of a single alcove reduction
ALCOVE_ITERATION_CAP = 10_000


class VerlindeToleranceError(InvariantViolation):
    """Raised when a Verlinde sum is not within tolerance of an integer"""

    def __init__(self, value: complex) -> None:
        #: The raw floating-point sum
        self.value = value

    def __str__(self) -> str:
        return f"Verlinde sum {self.value!r} is not within {VERLINDE_TOLERANCE} of an integer"


@dataclass(frozen=True)
class OnWall:
    """λ+ρ lies on an affine wall, so π(V(λ)) = 0"""


@dataclass(frozen=True)
class Reduced:
    """λ+ρ = w(μ+ρ) with μ in P_ℓ and ε(w) = ``sign``"""

    weight: Weight
    sign: int


AlcoveReduction = Union[OnWall, Reduced]


@dataclass(frozen=True)
class WLElement:
    """
    An element of W_ℓ = W ⋉ (ℓ+ȟ)Q^long, acting by x ↦ w(x) + (ℓ+ȟ)·t where
    ``word`` spells w as a product of simple reflections (0-based indices,
    rightmost acting first) and ``translation`` is t in simple-root
    coordinates
    """

    word: tuple[int, ...]
    translation: tuple[int, ...]

    @classmethod
    def identity(cls, alg: AlgebraData) -> WLElement:
        return cls((), (0,) * alg.rank)

    @classmethod
    def finite(cls, alg: AlgebraData, word: tuple[int, ...]) -> WLElement:
        return cls(tuple(word), (0,) * alg.rank)

    def validate(self, alg: AlgebraData) -> None:
        """
        :raises WeightError: if an index is out of range or the translation
            is not in Q^long
        """
        if any(not 0 <= i < alg.rank for i in self.word):
            raise WeightError(f"Invalid reflection index in {self.word} for {alg.name}")
        if not alg.in_long_root_lattice(self.translation):
            raise WeightError(
                f"Translation {self.translation} is not in the long-root lattice of {alg.name}"
            )

    def act(self, alg: AlgebraData, x: WeightT, ell: int) -> WeightT:
        self.validate(alg)
        shift = alg.root_to_weight(self.translation) * (ell + alg.dual_coxeter)
        return cast(WeightT, reflect_word(alg, x, self.word) + shift)


def check_in_p_ell(alg: AlgebraData, lam: Weight, ell: int) -> Weight:
    lam = alg.check_weight(lam)
    if not alg.in_p_ell(lam, ell):
        raise NotInAlcoveError(lam, ell)
    return lam


def _shift_theta(alg: AlgebraData, x: WeightT, k: Fraction | int) -> WeightT:
    """x - kθ"""
    if isinstance(x, Weight):
        return cast(WeightT, Weight(c - int(k) * t for c, t in zip(x, alg.theta)))
    return cast(WeightT, RationalWeight(c - k * t for c, t in zip(x, alg.theta)))


def _fold_theta(alg: AlgebraData, x: WeightT, n: int) -> WeightT:
    """s_{θ,n}(x) = s_θ(x) + nθ = x - (x(H_θ) - n)θ"""
    return _shift_theta(alg, x, alg.pairing(x, alg.theta_root) - n)


def _translate_down(alg: AlgebraData, x: WeightT, bound: int) -> WeightT:
    """
    Subtract the largest multiple m·bound·θ of the translation bound·θ ∈ W_ℓ
    that leaves x(H_θ) nonnegative, for dominant x with x(H_θ) ≥ 2·bound
    """
    m = int(alg.pairing(x, alg.theta_root) // (2 * bound))
    return _shift_theta(alg, x, m * bound)


def alcove_reduce_shifted(alg: AlgebraData, lam: Weight, ell: int) -> AlcoveReduction:
    """
    Find μ in P_ℓ and w in W_ℓ with λ+ρ = w(μ+ρ), or report that λ+ρ lies
    on an affine wall.  λ+ρ is alternately moved into the dominant chamber
    and brought closer to the origin, by a translation in (ℓ+ȟ)θ when its
    level is at least 2(ℓ+ȟ) and otherwise by the reflection in the wall
    (·|θ) = ℓ+ȟ, until it lands in the open fundamental alcove.
    """
    lam = alg.check_weight(lam)
    if ell < 1:
        raise WeightError(f"Level must be positive, got {ell}")
    bound = ell + alg.dual_coxeter
    xi = lam + alg.rho
    sign = 1
    for _ in range(ALCOVE_ITERATION_CAP):
        red = to_dominant(alg, xi)
        if red.on_wall:
            return OnWall()
        xi = cast(Weight, red.dominant)
        sign *= red.sign
        k = alg.level(xi)
        if k == bound:
            return OnWall()
        elif k >= 2 * bound:
            xi = _translate_down(alg, xi, bound)
        elif k > bound:
            xi = _fold_theta(alg, xi, bound)
            sign = -sign
        else:
            return Reduced(xi - alg.rho, sign)
    raise InvariantViolation(
        f"Alcove reduction of {lam} at level {ell} did not terminate"
        f" after {ALCOVE_ITERATION_CAP} steps"
    )


def pi_map(alg: AlgebraData, x: VirtualModule, ell: int) -> VirtualModule:
    """
    The ring homomorphism π from the representation ring to the level-ℓ
    fusion ring: V(λ) ↦ ε(w)V(μ) where λ+ρ = w(μ+ρ), or 0 on affine walls
    """
    acc: list[tuple[Weight, int]] = []
    for lam, c in x.items():
        red = alcove_reduce_shifted(alg, lam, ell)
        if isinstance(red, Reduced):
            acc.append((red.weight, red.sign * c))
    return VirtualModule(acc)


def fusion_product(
    alg: AlgebraData, lam: Weight, mu: Weight, ell: int, max_dim: Optional[int] = None
) -> VirtualModule:
    """
    V(λ) ⊗^F V(μ) at level ℓ, computed as π(V(λ) ⊗ V(μ))

    :raises NotInAlcoveError: if λ or μ is not in P_ℓ
    """
    lam = check_in_p_ell(alg, lam, ell)
    mu = check_in_p_ell(alg, mu, ell)
    result = pi_map(alg, tensor_decompose(alg, lam, mu, max_dim=max_dim), ell)
    if not result.is_nonnegative():
        raise InvariantViolation(
            f"Fusion product V({lam}) ⊗^F V({mu}) at level {ell} has negative terms: {result}"
        )
    return result


def fusion_coefficient(alg: AlgebraData, lam: Weight, mu: Weight, nu: Weight, ell: int) -> int:
    """n_{λ,μ}^ν, the multiplicity of V(ν) in V(λ) ⊗^F V(μ)"""
    nu = check_in_p_ell(alg, nu, ell)
    return fusion_product(alg, lam, mu, ell).coefficient(nu)


def fusion_multiply(alg: AlgebraData, x: VirtualModule, y: VirtualModule, ell: int) -> VirtualModule:
    """The fusion product extended bilinearly to virtual modules"""
    acc: list[tuple[Weight, int]] = []
    for a, c in x.items():
        for b, d in y.items():
            acc.extend((w, c * d * m) for w, m in fusion_product(alg, a, b, ell).items())
    return VirtualModule(acc)


def affine_reflect_theta(alg: AlgebraData, xi: Weight, ell: int) -> Weight:
    """
    The shifted action s_{θ,ℓ+ȟ}·ξ = s_{θ,ℓ+ȟ}(ξ+ρ) - ρ = s_θ(ξ) + (ℓ+1)θ
    """
    xi = alg.check_weight(xi)
    return _fold_theta(alg, xi, ell + 1)


def inverse_affine_reflect_theta(alg: AlgebraData, eta: Weight, ell: int) -> Weight:
    """s_{θ,ℓ+ȟ}^{-1}(η+ρ) - ρ, computed with the unshifted reflection"""
    eta = alg.check_weight(eta)
    # s_{θ,n} is an involution, so it is its own inverse
    return _fold_theta(alg, eta + alg.rho, ell + alg.dual_coxeter) - alg.rho


def fusion_bar(
    alg: AlgebraData, lam1: Weight, lam2: Weight, w: WLElement, ell: int
) -> Weight:
    """
    The weight written \\overline{λ₁+wλ₂}^F: scale λ₁, λ₂ by (ℓ+ȟ)/ℓ, add
    λ₁ to w applied to λ₂, move the sum into the closed fundamental alcove
    with the unshifted action of W_ℓ, and scale back by ℓ/(ℓ+ȟ)

    :raises InvariantViolation: if the scaled-back weight is not integral
    """
    lam1 = check_in_p_ell(alg, lam1, ell)
    lam2 = check_in_p_ell(alg, lam2, ell)
    bound = ell + alg.dual_coxeter
    q = Fraction(bound, ell)
    x: RationalWeight = lam1.scaled(q) + w.act(alg, lam2.scaled(q), ell)
    for _ in range(ALCOVE_ITERATION_CAP):
        x = cast(RationalWeight, to_dominant(alg, x).dominant)
        k = alg.pairing(x, alg.theta_root)
        if k <= bound:
            break
        elif k >= 2 * bound:
            x = _translate_down(alg, x, bound)
        else:
            x = _fold_theta(alg, x, bound)
    else:
        raise InvariantViolation(f"Alcove reduction of {x} did not terminate")
    back = x * Fraction(ell, bound)
    if not back.is_integral():
        raise InvariantViolation(
            f"Folding {lam1} + w·{lam2} at level {ell} gave the non-integral weight {back}"
        )
    result = back.to_weight()
    if not alg.in_p_ell(result, ell):
        raise InvariantViolation(f"Folded weight {result} is not in P_{ell}")
    return result


@lru_cache(maxsize=64)
def s_matrix(alg: AlgebraData, ell: int) -> tuple[tuple[Weight, ...], np.ndarray]:
    """
    The Kac–Peterson modular S-matrix at level ℓ, rows and columns indexed by
    P_ℓ in lexicographic order.  The overall constant is fixed by unitarity,
    up to a phase that cancels in the Verlinde formula.

    :raises CapExceededError: if the rank, level, or |P_ℓ| is above the
        oracle's caps
    """
    if alg.rank > VERLINDE_MAX_RANK:
        raise CapExceededError(f"Rank of {alg.name}", alg.rank, VERLINDE_MAX_RANK)
    if ell > VERLINDE_MAX_LEVEL:
        raise CapExceededError("Level", ell, VERLINDE_MAX_LEVEL)
    weights = alg.alcove_weights(ell)
    if len(weights) > VERLINDE_MAX_WEIGHTS:
        raise CapExceededError(f"|P_{ell}| for {alg.name}", len(weights), VERLINDE_MAX_WEIGHTS)
    gram = np.array([[float(x) for x in row] for row in alg.form_matrix])
    shifted = np.array([[float(c) for c in w + alg.rho] for w in weights])
    bound = ell + alg.dual_coxeter
    s = np.empty((len(weights), len(weights)), dtype=complex)
    for i, lam in enumerate(weights):
        signs = signed_orbit(alg, lam + alg.rho)
        images = np.array([list(x) for x in signs], dtype=float)
        eps = np.array(list(signs.values()), dtype=float)
        phases = images @ gram @ shifted.T
        s[i] = eps @ np.exp(-2j * np.pi * phases / bound)
    s /= np.sqrt(np.sum(np.abs(s[0]) ** 2))
    return (weights, s)


def verlinde_dimension(alg: AlgebraData, lam: Weight, mu: Weight, nu: Weight, ell: int) -> int:
    """
    The dimension of the space of conformal blocks on ℙ¹ with weights λ, μ, ν
    at three points, Σ_σ S_λσ S_μσ conj(S_ν*σ) / S_0σ.  This equals
    ``fusion_coefficient(alg, lam, mu, dual_weight(alg, nu), ell)``.

    :raises VerlindeToleranceError: if the sum is not within
        `VERLINDE_TOLERANCE` of a nonnegative integer
    """
    for w in (lam, mu, nu):
        check_in_p_ell(alg, w, ell)
    weights, s = s_matrix(alg, ell)
    index = {w: i for i, w in enumerate(weights)}
    a = s[index[lam]]
    b = s[index[mu]]
    c = np.conj(s[index[dual_weight(alg, nu)]])
    value = complex(np.sum(a * b * c / s[0]))
    nearest = round(value.real)
    if abs(value - nearest) >= VERLINDE_TOLERANCE or nearest < 0:
        raise VerlindeToleranceError(value)
    return int(nearest)
