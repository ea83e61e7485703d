"""Actions of the finite Weyl group on weights"""

from __future__ import annotations
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import TypeVar, cast
from .rootsys import AlgebraData
from .util import AnyWeight, CapExceededError, RationalWeight, Weight, WeightError

#: Largest orbit that `orbit()` will enumerate
DEFAULT_ORBIT_CAP = 500_000

WeightT = TypeVar("WeightT", Weight, RationalWeight)


@dataclass(frozen=True)
class DominantReduction:
    """The result of moving a weight into the dominant chamber"""

    #: The dominant weight in the orbit of the input
    dominant: AnyWeight
    #: (-1) to the number of simple reflections applied
    sign: int
    #: Whether the input lies on a wall (has a nontrivial stabilizer)
    on_wall: bool


def reflect(alg: AlgebraData, beta: WeightT, i: int) -> WeightT:
    """The simple reflection w_{α_i}β = β - β(H_{α_i})α_i (0-based ``i``)"""
    if not 0 <= i < alg.rank:
        raise WeightError(f"No simple root with index {i} in {alg.name}")
    if len(beta) != alg.rank:
        raise WeightError(
            f"Dimension mismatch: {beta} has {len(beta)} coordinates; rank is {alg.rank}"
        )
    k = beta[i]
    alpha = alg.simple_roots[i]
    return cast(WeightT, type(beta)(c - k * a for c, a in zip(beta, alpha)))


def reflect_word(alg: AlgebraData, beta: WeightT, word: tuple[int, ...] | list[int]) -> WeightT:
    """
    Apply the Weyl group element w_{i_1} ⋯ w_{i_k} given by ``word`` =
    (i_1, …, i_k); the rightmost reflection acts first
    """
    for i in reversed(word):
        beta = reflect(alg, beta, i)
    return beta


def to_dominant(alg: AlgebraData, xi: WeightT) -> DominantReduction:
    """
    Reflect ``xi`` at its lowest-index negative coordinate until it is
    dominant, keeping track of the sign and of whether a wall was met
    """
    sign = 1
    on_wall = False
    while True:
        if any(c == 0 for c in xi):
            on_wall = True
        for i, c in enumerate(xi):
            if c < 0:
                xi = reflect(alg, xi, i)
                sign = -sign
                break
        else:
            return DominantReduction(dominant=xi, sign=sign, on_wall=on_wall)


def dominant_of(alg: AlgebraData, xi: Weight) -> Weight:
    """The dominant weight in the W-orbit of ``xi``"""
    return cast(Weight, to_dominant(alg, xi).dominant)


def orbit(alg: AlgebraData, lam: Weight, cap: int = DEFAULT_ORBIT_CAP) -> frozenset[Weight]:
    """
    The W-orbit of ``lam``, found by breadth-first search over the simple
    reflections

    :raises CapExceededError: if the orbit has more than ``cap`` elements
    """
    lam = alg.check_weight(lam)
    seen = {lam}
    queue = deque([lam])
    while queue:
        x = queue.popleft()
        for i in range(alg.rank):
            if x[i] == 0:
                continue
            y = reflect(alg, x, i)
            if y not in seen:
                seen.add(y)
                if len(seen) > cap:
                    raise CapExceededError(f"Size of the W-orbit of {lam}", len(seen), cap)
                queue.append(y)
    return frozenset(seen)


def signed_orbit(
    alg: AlgebraData, lam: Weight, cap: int = DEFAULT_ORBIT_CAP
) -> dict[Weight, int]:
    """
    The W-orbit of a strictly dominant weight, each element wλ mapped to the
    sign ε(w) of the (unique) w carrying λ to it
    """
    lam = alg.check_weight(lam)
    if not lam.is_regular_dominant():
        raise WeightError(f"Weight {lam} is not strictly dominant")
    signs = {lam: 1}
    queue = deque([lam])
    while queue:
        x = queue.popleft()
        for i in range(alg.rank):
            y = reflect(alg, x, i)
            if y not in signs:
                signs[y] = -signs[x]
                if len(signs) > cap:
                    raise CapExceededError(f"Size of the W-orbit of {lam}", len(signs), cap)
                queue.append(y)
    return signs


@lru_cache(maxsize=None)
def weyl_order(alg: AlgebraData) -> int:
    """|W|, counted as the size of the orbit of ρ"""
    return len(orbit(alg, alg.rho))


def dual_weight(alg: AlgebraData, lam: Weight) -> Weight:
    """
    λ* = -w₀λ, computed as the dominant representative of -λ

    :raises WeightError: if ``lam`` is not dominant
    """
    lam = alg.check_weight(lam)
    if not lam.is_dominant():
        raise WeightError(f"Weight {lam} is not dominant")
    return dominant_of(alg, -lam)
