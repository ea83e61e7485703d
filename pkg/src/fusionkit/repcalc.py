"""
Combinatorics of finite-dimensional representations: weight multiplicities,
dimensions and tensor product decompositions
"""

from __future__ import annotations
from collections import Counter
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
import logging
import os
from types import MappingProxyType
from typing import Any, Optional, Union
from .rootsys import AlgebraData
from .util import (
    CapExceededError,
    ConfigError,
    InvariantViolation,
    NotDominatingError,
    Weight,
    WeightError,
)
from .weyl import dominant_of, orbit, to_dominant

log = logging.getLogger(__name__)

#: Default cap on dim V(μ) for weight-system computations
DEFAULT_MAX_DIM = 10**6

#: Environment variable overriding `DEFAULT_MAX_DIM`
MAX_DIM_ENVVAR = "FUSIONKIT_MAX_DIM"


def get_max_dim() -> int:
    """
    Return the dimension cap: the value of :envvar:`FUSIONKIT_MAX_DIM` if set,
    `DEFAULT_MAX_DIM` otherwise

    :raises ConfigError: if the environment variable is not a positive integer
    """
    raw = os.environ.get(MAX_DIM_ENVVAR)
    if raw is None or raw.strip() == "":
        return DEFAULT_MAX_DIM
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"{MAX_DIM_ENVVAR} must be an integer, got {raw!r}")
    if value < 1:
        raise ConfigError(f"{MAX_DIM_ENVVAR} must be positive, got {value}")
    return value


class VirtualModule(Mapping[Weight, int]):
    """
    An element of the representation ring: a finitely supported map from
    dominant weights to (possibly negative) integer multiplicities.  Zero
    entries are dropped, and iteration follows lexicographic weight order.
    Instances are immutable.
    """

    def __init__(
        self, terms: Union[Mapping[Weight, int], Iterable[tuple[Weight, int]], None] = None
    ) -> None:
        acc: Counter[Weight] = Counter()
        items = terms.items() if isinstance(terms, Mapping) else (terms or ())
        for w, c in items:
            if not w.is_dominant():
                raise WeightError(f"Virtual modules are indexed by dominant weights; got {w}")
            acc[w] += c
        self._terms: dict[Weight, int] = {w: acc[w] for w in sorted(acc) if acc[w] != 0}

    @classmethod
    def irreducible(cls, lam: Weight, coeff: int = 1) -> VirtualModule:
        return cls({lam: coeff})

    def __getitem__(self, lam: Weight) -> int:
        return self._terms[lam]

    def __iter__(self) -> Iterator[Weight]:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def coefficient(self, lam: Weight) -> int:
        return self._terms.get(lam, 0)

    def __add__(self, other: VirtualModule) -> VirtualModule:
        if not isinstance(other, VirtualModule):
            return NotImplemented
        return VirtualModule([*self.items(), *other.items()])

    def __neg__(self) -> VirtualModule:
        return VirtualModule({w: -c for w, c in self.items()})

    def __sub__(self, other: VirtualModule) -> VirtualModule:
        if not isinstance(other, VirtualModule):
            return NotImplemented
        return self + (-other)

    def __mul__(self, k: int) -> VirtualModule:
        if not isinstance(k, int):
            return NotImplemented
        return VirtualModule({w: k * c for w, c in self.items()})

    __rmul__ = __mul__

    def __eq__(self, other: Any) -> bool:
        if isinstance(other, VirtualModule):
            return self._terms == other._terms
        return super().__eq__(other)

    def __hash__(self) -> int:
        return hash(tuple(self._terms.items()))

    def is_nonnegative(self) -> bool:
        return all(c > 0 for c in self.values())

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        s = ""
        for w, c in self.items():
            if c < 0:
                s += "-"
            elif s:
                s += "+"
            if abs(c) != 1:
                s += str(abs(c))
            s += f"V({w})"
        return s

    def __repr__(self) -> str:
        return f"VirtualModule({self._terms!r})"


@dataclass(frozen=True)
class WeightSystem:
    """The weights of V(μ) together with their multiplicities m_μ(ν)"""

    highest: Weight
    #: Every weight of V(μ) mapped to its multiplicity
    table: Mapping[Weight, int]
    #: The dominant weights of V(μ) mapped to their multiplicities
    dominant_table: Mapping[Weight, int]

    def multiplicity(self, nu: Weight) -> int:
        """m_μ(ν); zero for weights that do not occur"""
        return self.table.get(nu, 0)

    @property
    def support(self) -> frozenset[Weight]:
        return frozenset(self.table)

    @property
    def dimension(self) -> int:
        return sum(self.table.values())


def check_dominant(alg: AlgebraData, lam: Weight) -> Weight:
    lam = alg.check_weight(lam)
    if not lam.is_dominant():
        raise WeightError(f"Weight {lam} is not dominant")
    return lam


def weyl_dimension(alg: AlgebraData, lam: Weight) -> int:
    """dim V(λ) = ∏_{α>0} (λ+ρ)(H_α) / ρ(H_α)"""
    lam = check_dominant(alg, lam)
    shifted = lam + alg.rho
    dim = Fraction(1)
    for alpha in alg.positive_roots:
        dim *= alg.pairing(shifted, alpha) / alg.pairing(alg.rho, alpha)
    assert dim.denominator == 1
    return int(dim)


def _check_cap(alg: AlgebraData, mu: Weight, max_dim: Optional[int]) -> None:
    limit = get_max_dim() if max_dim is None else max_dim
    dim = weyl_dimension(alg, mu)
    if dim > limit:
        raise CapExceededError(f"dim V({mu}) for {alg.name}", dim, limit)


def weight_system(alg: AlgebraData, mu: Weight, max_dim: Optional[int] = None) -> WeightSystem:
    """
    Compute the weights of V(μ) and their multiplicities with Freudenthal's
    recursion on the dominant weights, extended to all weights by
    W-invariance

    :raises CapExceededError: if dim V(μ) exceeds ``max_dim`` (default:
        `get_max_dim()`)
    """
    mu = check_dominant(alg, mu)
    _check_cap(alg, mu, max_dim)
    return _weight_system(alg, mu)


def _dominant_weights(alg: AlgebraData, mu: Weight) -> dict[Weight, int]:
    """The dominant weights ν ≤ μ, each mapped to the height of μ - ν"""
    depth = {mu: 0}
    stack = [mu]
    while stack:
        nu = stack.pop()
        for alpha in alg.positive_roots:
            x = nu - alpha.weight
            if x.is_dominant() and x not in depth:
                depth[x] = depth[nu] + alpha.height
                stack.append(x)
    return depth


@lru_cache(maxsize=512)
def _weight_system(alg: AlgebraData, mu: Weight) -> WeightSystem:
    depth = _dominant_weights(alg, mu)
    shifted_norm = alg.form(mu + alg.rho, mu + alg.rho)
    mults: dict[Weight, int] = {}
    for nu in sorted(depth, key=lambda w: (depth[w], w)):
        if nu == mu:
            mults[nu] = 1
            continue
        total = Fraction(0)
        for alpha in alg.positive_roots:
            k = 1
            while True:
                x = nu + k * alpha.weight
                m = mults.get(dominant_of(alg, x))
                if m is None:
                    break
                total += m * alg.form(x, alpha.weight)
                k += 1
        denom = shifted_norm - alg.form(nu + alg.rho, nu + alg.rho)
        m_nu = 2 * total / denom
        if m_nu.denominator != 1 or m_nu < 1:
            raise InvariantViolation(
                f"Freudenthal recursion gave m_{mu}({nu}) = {m_nu} for {alg.name}"
            )
        mults[nu] = int(m_nu)
    table: dict[Weight, int] = {}
    for nu, m in mults.items():
        for x in orbit(alg, nu):
            table[x] = m
    log.debug(
        "V(%s) of %s: %d dominant weights, %d weights",
        mu,
        alg.name,
        len(mults),
        len(table),
    )
    return WeightSystem(
        highest=mu,
        table=MappingProxyType(table),
        dominant_table=MappingProxyType(mults),
    )


def non_extremal_weights(alg: AlgebraData, mu: Weight) -> frozenset[Weight]:
    """The weights of V(μ) that are not of the form wμ"""
    ws = weight_system(alg, mu)
    return ws.support - orbit(alg, ws.highest)


def gg_threshold(alg: AlgebraData, mu: Weight) -> Weight:
    """
    The smallest λ with λ≫μ: coordinate i is the largest drop -ν_i over the
    weights ν of V(μ)
    """
    support = weight_system(alg, mu).support
    return Weight(max(0, -min(nu[i] for nu in support)) for i in range(alg.rank))


def is_lambda_gg_mu(alg: AlgebraData, lam: Weight, mu: Weight) -> bool:
    """Whether λ + ν is dominant for every weight ν of V(μ)"""
    lam = check_dominant(alg, lam)
    threshold = gg_threshold(alg, mu)
    return all(a >= t for a, t in zip(lam, threshold))


def tensor_decompose(
    alg: AlgebraData, lam: Weight, mu: Weight, max_dim: Optional[int] = None
) -> VirtualModule:
    """
    Decompose V(λ) ⊗ V(μ) into irreducibles by Klimyk's formula: each weight
    ν of the smaller factor contributes m(ν)·ε(w)·V(w(λ+ν+ρ)-ρ), and terms
    with λ+ν+ρ on a wall vanish
    """
    lam = check_dominant(alg, lam)
    mu = check_dominant(alg, mu)
    if weyl_dimension(alg, lam) < weyl_dimension(alg, mu):
        lam, mu = mu, lam
    _check_cap(alg, mu, max_dim)
    return _tensor_decompose(alg, lam, mu)


@lru_cache(maxsize=4096)
def _tensor_decompose(alg: AlgebraData, lam: Weight, mu: Weight) -> VirtualModule:
    acc: Counter[Weight] = Counter()
    shifted = lam + alg.rho
    for nu, m in _weight_system(alg, mu).table.items():
        red = to_dominant(alg, shifted + nu)
        if red.on_wall:
            continue
        acc[red.dominant - alg.rho] += red.sign * m
    result = VirtualModule(acc)
    if not result.is_nonnegative():
        raise InvariantViolation(
            f"Klimyk formula gave negative multiplicities for V({lam}) ⊗ V({mu}): {result}"
        )
    return result


def tensor_decompose_gg(
    alg: AlgebraData, lam: Weight, mu: Weight, max_dim: Optional[int] = None
) -> VirtualModule:
    """
    V(λ) ⊗ V(μ) = Σ_ν m_μ(ν) V(λ+ν), valid when λ≫μ

    :raises NotDominatingError: if λ≫μ does not hold
    """
    lam = check_dominant(alg, lam)
    mu = check_dominant(alg, mu)
    _check_cap(alg, mu, max_dim)
    if not is_lambda_gg_mu(alg, lam, mu):
        raise NotDominatingError(lam, mu)
    return VirtualModule((lam + nu, m) for nu, m in _weight_system(alg, mu).table.items())


def character(alg: AlgebraData, mu: Weight) -> Counter[Weight]:
    """The formal character of V(μ) as a multiset of weights"""
    return Counter(weight_system(alg, mu).table)


def decompose_character(alg: AlgebraData, char: Mapping[Weight, int]) -> VirtualModule:
    """
    Write a W-invariant character as a sum of irreducible characters by
    repeatedly stripping off the character of a highest weight
    """
    rest = Counter({w: c for w, c in char.items() if c != 0})
    result: dict[Weight, int] = {}
    while rest:
        top = max(
            (w for w in rest if w.is_dominant()),
            key=lambda w: alg.form(w, alg.rho),
            default=None,
        )
        if top is None:
            raise InvariantViolation("Character has no dominant weight left to strip")
        c = rest[top]
        result[top] = c
        for w, m in weight_system(alg, top).table.items():
            rest[w] -= c * m
            if rest[w] == 0:
                del rest[w]
    return VirtualModule(result)


def brute_force_tensor(alg: AlgebraData, lam: Weight, mu: Weight) -> VirtualModule:
    """
    Decompose V(λ) ⊗ V(μ) by multiplying the characters weight by weight and
    decomposing the product
    """
    product: Counter[Weight] = Counter()
    chi_mu = character(alg, mu)
    for x, a in character(alg, lam).items():
        for y, b in chi_mu.items():
            product[x + y] += a * b
    return decompose_character(alg, product)


def virtual_dimension(alg: AlgebraData, x: VirtualModule) -> int:
    """Σ_ν x[ν] · dim V(ν)"""
    return sum(c * weyl_dimension(alg, w) for w, c in x.items())
