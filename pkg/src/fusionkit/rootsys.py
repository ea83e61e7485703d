"""
Static data of a simple Lie algebra: Cartan matrix, positive roots, coroots,
the invariant form normalized so that (θ|θ) = 2, ρ, θ and the dual Coxeter
number.

Simple roots are numbered as in Bourbaki.  Weights are stored against the
fundamental weights; a root with simple-root coordinates ``c`` has
fundamental-weight coordinates ``cartan @ c``, where
``cartan[i][j] = α_j(H_{α_i})``.
"""

from __future__ import annotations
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import product
import logging
from math import factorial
from pydantic import BaseModel
import sympy
from .util import InvalidAlgebraError, InvariantViolation, Weight, WeightError, dot

log = logging.getLogger(__name__)

#: Number of positive roots for each exceptional type
EXCEPTIONAL_POSITIVE_ROOTS = {
    ("E", 6): 36,
    ("E", 7): 63,
    ("E", 8): 120,
    ("F", 4): 24,
    ("G", 2): 6,
}

EXCEPTIONAL_WEYL_ORDERS = {
    ("E", 6): 51840,
    ("E", 7): 2903040,
    ("E", 8): 696729600,
    ("F", 4): 1152,
    ("G", 2): 12,
}


@dataclass(frozen=True)
class Root:
    """A root of the algebra"""

    #: Coordinates against the simple roots
    simple: tuple[int, ...]
    #: Coordinates against the fundamental weights
    weight: Weight
    #: Coordinates of the coroot H_α against the simple coroots, so that
    #: λ(H_α) is the dot product of λ's coordinates with this vector
    coroot: tuple[int, ...]
    #: (α|α) under the normalized form
    norm: Fraction

    @property
    def height(self) -> int:
        return sum(self.simple)

    @property
    def is_long(self) -> bool:
        return self.norm == 2

    def __str__(self) -> str:
        return "α(" + ",".join(map(str, self.simple)) + ")"


@dataclass(frozen=True, eq=False)
class AlgebraData:
    """
    The root-system data of one simple Lie algebra.  Instances are obtained
    through `build_algebra()`, which caches them, so equality is identity.
    """

    series: str
    rank: int
    #: ``cartan[i][j] = α_j(H_{α_i})``
    cartan: tuple[tuple[int, ...], ...]
    #: d_i = (α_i|α_i)/2; ``diag(d) @ cartan`` is symmetric
    symmetrizer: tuple[Fraction, ...]
    #: Positive roots, sorted by height and then by simple-root coordinates
    positive_roots: tuple[Root, ...]
    #: The highest root, in fundamental-weight coordinates
    theta: Weight
    rho: Weight
    dual_coxeter: int
    #: Gram matrix of the normalized form on the fundamental weights
    form_matrix: tuple[tuple[Fraction, ...], ...]
    _roots_by_simple: dict[tuple[int, ...], Root] = field(repr=False)

    @property
    def name(self) -> str:
        return f"{self.series}{self.rank}"

    def __str__(self) -> str:
        return self.name

    @property
    def dimension(self) -> int:
        return self.rank + 2 * len(self.positive_roots)

    @property
    def weyl_group_order(self) -> int:
        """|W| from the classical formula for the series"""
        r = self.rank
        if self.series == "A":
            return factorial(r + 1)
        elif self.series in ("B", "C"):
            return 2**r * factorial(r)
        elif self.series == "D":
            return 2 ** (r - 1) * factorial(r)
        else:
            return EXCEPTIONAL_WEYL_ORDERS[(self.series, r)]

    @cached_property
    def theta_root(self) -> Root:
        return self.positive_roots[-1]

    @cached_property
    def simple_roots(self) -> tuple[Weight, ...]:
        """The simple roots α_i in fundamental-weight coordinates"""
        return tuple(
            Weight(self.cartan[i][j] for i in range(self.rank)) for j in range(self.rank)
        )

    @cached_property
    def comarks(self) -> tuple[int, ...]:
        """Coordinates of H_θ against the simple coroots"""
        return self.theta_root.coroot

    def check_weight(self, lam: Weight | Iterable[int]) -> Weight:
        lam = lam if isinstance(lam, Weight) else Weight(lam)
        if len(lam) != self.rank:
            raise WeightError(
                f"Dimension mismatch: weight {lam} has {len(lam)} coordinates;"
                f" {self.name} has rank {self.rank}"
            )
        return lam

    def root(self, simple: Sequence[int]) -> Root:
        """
        Look up the root (positive or negative) with the given simple-root
        coordinates

        :raises WeightError: if there is no such root
        """
        key = tuple(simple)
        try:
            return self._roots_by_simple[key]
        except KeyError:
            neg = tuple(-c for c in key)
            if neg in self._roots_by_simple:
                pos = self._roots_by_simple[neg]
                return Root(key, -pos.weight, tuple(-c for c in pos.coroot), pos.norm)
            raise WeightError(f"Not a root of {self.name}: {key}")

    def is_root(self, simple: Sequence[int]) -> bool:
        key = tuple(simple)
        return key in self._roots_by_simple or tuple(-c for c in key) in self._roots_by_simple

    def root_to_weight(self, simple: Sequence[int]) -> Weight:
        """Convert simple-root coordinates to fundamental-weight coordinates"""
        if len(simple) != self.rank:
            raise WeightError(f"Dimension mismatch: {tuple(simple)} vs. rank {self.rank}")
        return Weight(dot(row, simple) for row in self.cartan)

    def form(self, a: Iterable[Fraction | int], b: Iterable[Fraction | int]) -> Fraction:
        """(a|b) for weights given in fundamental-weight coordinates"""
        a = list(a)
        b = list(b)
        if len(a) != self.rank or len(b) != self.rank:
            raise WeightError(f"Dimension mismatch: rank of {self.name} is {self.rank}")
        return Fraction(
            sum(
                (a[i] * self.form_matrix[i][j] * b[j] for i in range(self.rank) for j in range(self.rank)),
                Fraction(0),
            )
        )

    def pairing(self, lam: Iterable[Fraction | int], alpha: Root) -> Fraction:
        """
        λ(H_α), computed as the dot product of λ with the coroot of α.  The
        result is an integer whenever λ is integral.
        """
        coords = list(lam)
        if len(coords) != self.rank:
            raise WeightError(
                f"Dimension mismatch: {len(coords)} coordinates vs. rank {self.rank}"
            )
        return Fraction(dot(coords, alpha.coroot))

    def level(self, lam: Weight) -> int:
        """λ(H_θ)"""
        return int(dot(self.check_weight(lam).coords, self.comarks))

    def in_p_ell(self, lam: Weight, ell: int) -> bool:
        """Whether λ is dominant of level at most ℓ"""
        return lam.is_dominant() and self.level(lam) <= ell

    def alcove_weights(self, ell: int) -> tuple[Weight, ...]:
        """All of P_ℓ, in lexicographic order"""
        ranges = [range(ell // a + 1) for a in self.comarks]
        return tuple(
            w for w in map(Weight, product(*ranges)) if self.level(w) <= ell
        )

    @cached_property
    def long_lattice_basis(self) -> tuple[tuple[Fraction, ...], ...]:
        """
        A basis of Q^long in simple-root coordinates: α_i/d_i, the images of
        the simple coroots when long roots have (α|α) = 2
        """
        return tuple(
            tuple(Fraction(int(i == j)) / self.symmetrizer[i] for j in range(self.rank))
            for i in range(self.rank)
        )

    def in_long_root_lattice(self, t: Sequence[int]) -> bool:
        """Whether ``t`` (simple-root coordinates) lies in Q^long"""
        if len(t) != self.rank:
            raise WeightError(f"Dimension mismatch: {tuple(t)} vs. rank {self.rank}")
        # basis vector i is (1/d_i)·α_i, so coefficient t_i·d_i must be integral
        return all((c * d).denominator == 1 for c, d in zip(t, self.symmetrizer))

    def to_json(self) -> str:
        """A JSON dump of the algebra's data, for debugging"""
        return AlgebraDump(
            series=self.series,
            rank=self.rank,
            cartan=[list(row) for row in self.cartan],
            symmetrizer=[str(d) for d in self.symmetrizer],
            form_matrix=[[str(x) for x in row] for row in self.form_matrix],
            positive_roots=[list(r.simple) for r in self.positive_roots],
            theta=self.theta,
            rho=self.rho,
            dual_coxeter=self.dual_coxeter,
        ).model_dump_json(indent=4)


class AlgebraDump(BaseModel):
    series: str
    rank: int
    cartan: list[list[int]]
    symmetrizer: list[str]
    form_matrix: list[list[str]]
    positive_roots: list[list[int]]
    theta: Weight
    rho: Weight
    dual_coxeter: int


def expected_positive_roots(series: str, rank: int) -> int:
    if series == "A":
        return rank * (rank + 1) // 2
    elif series in ("B", "C"):
        return rank * rank
    elif series == "D":
        return rank * (rank - 1)
    else:
        return EXCEPTIONAL_POSITIVE_ROOTS[(series, rank)]


def is_valid_type(series: str, rank: int) -> bool:
    if series == "A":
        return rank >= 1
    elif series in ("B", "C"):
        return rank >= 2
    elif series == "D":
        return rank >= 4
    else:
        return (series, rank) in EXCEPTIONAL_POSITIVE_ROOTS


def simple_root_gram(series: str, rank: int) -> list[list[Fraction]]:
    """
    The Gram matrix (α_i|α_j) of the simple roots, Bourbaki numbering, long
    roots of squared length 2
    """
    if not is_valid_type(series, rank):
        raise InvalidAlgebraError(series, rank)
    one = Fraction(1)
    lengths = [2 * one] * rank
    edges: dict[tuple[int, int], Fraction] = {}
    if series == "A":
        edges = {(i, i + 1): -one for i in range(rank - 1)}
    elif series == "B":
        lengths[-1] = one
        edges = {(i, i + 1): -one for i in range(rank - 1)}
    elif series == "C":
        lengths = [one] * (rank - 1) + [2 * one]
        edges = {(i, i + 1): -one / 2 for i in range(rank - 2)}
        edges[(rank - 2, rank - 1)] = -one
    elif series == "D":
        edges = {(i, i + 1): -one for i in range(rank - 2)}
        edges[(rank - 3, rank - 1)] = -one
    elif series == "E":
        edges = {(0, 2): -one, (1, 3): -one}
        edges.update({(i, i + 1): -one for i in range(2, rank - 1)})
    elif series == "F":
        lengths = [2 * one, 2 * one, one, one]
        edges = {(0, 1): -one, (1, 2): -one, (2, 3): -one / 2}
    else:
        assert series == "G"
        lengths = [Fraction(2, 3), 2 * one]
        edges = {(0, 1): -one}
    gram = [[Fraction(0)] * rank for _ in range(rank)]
    for i, a in enumerate(lengths):
        gram[i][i] = a
    for (i, j), b in edges.items():
        gram[i][j] = gram[j][i] = b
    return gram


def _to_fraction(x: sympy.Expr) -> Fraction:
    r = sympy.Rational(x)
    return Fraction(int(r.p), int(r.q))


def _positive_roots(
    cartan: Sequence[Sequence[int]], expected: int
) -> list[tuple[int, ...]]:
    """Saturate the simple roots under root strings, one height at a time"""
    rank = len(cartan)
    simple = [tuple(int(i == j) for j in range(rank)) for i in range(rank)]
    known = set(simple)
    layer = list(simple)
    cap = 4 * (2 * expected + rank)
    steps = 0
    while layer:
        steps += 1
        if steps > cap:
            raise InvariantViolation(
                f"Positive-root closure did not converge after {cap} steps"
            )
        new: set[tuple[int, ...]] = set()
        for beta in layer:
            pairings = [dot(row, beta) for row in cartan]
            for i in range(rank):
                p = 0
                while True:
                    down = tuple(c - (p + 1) * int(j == i) for j, c in enumerate(beta))
                    if down not in known:
                        break
                    p += 1
                # the α_i-string through β runs from β - pα_i to β + qα_i
                if p - pairings[i] > 0:
                    new.add(tuple(c + int(j == i) for j, c in enumerate(beta)))
        new -= known
        known |= new
        layer = sorted(new)
    return sorted(known, key=lambda c: (sum(c), c))


@lru_cache(maxsize=None)
def build_algebra(series: str, rank: int) -> AlgebraData:
    """
    Construct the root-system data of the simple Lie algebra of type
    ``series`` and rank ``rank``

    :raises InvalidAlgebraError: if the type is not one of A_r (r ≥ 1),
        B_r, C_r (r ≥ 2), D_r (r ≥ 4), E6, E7, E8, F4 or G2
    """
    series = series.upper()
    gram = simple_root_gram(series, rank)
    d = [g[i] / 2 for i, g in enumerate(gram)]
    cartan = tuple(
        tuple(int(2 * gram[i][j] / gram[i][i]) for j in range(rank)) for i in range(rank)
    )
    expected = expected_positive_roots(series, rank)
    simple_coords = _positive_roots(cartan, expected)
    if len(simple_coords) != expected:
        raise InvariantViolation(
            f"{series}{rank}: found {len(simple_coords)} positive roots; expected {expected}"
        )

    # (A^T)·G = diag(d), since (α_i|ω_j) = d_i δ_ij
    amat = sympy.Matrix(rank, rank, lambda i, j: cartan[i][j])
    dmat = sympy.diag(*[sympy.Rational(x.numerator, x.denominator) for x in d])
    gmat = amat.T.inv() * dmat
    if gmat != gmat.T or not gmat.is_positive_definite:
        raise InvariantViolation(f"{series}{rank}: invariant form is not an inner product")
    form_matrix = tuple(
        tuple(_to_fraction(gmat[i, j]) for j in range(rank)) for i in range(rank)
    )

    roots: list[Root] = []
    for c in simple_coords:
        norm = sum(
            (c[i] * gram[i][j] * c[j] for i in range(rank) for j in range(rank)),
            Fraction(0),
        )
        coroot = [c[i] * 2 * d[i] / norm for i in range(rank)]
        if any(x.denominator != 1 for x in coroot):
            raise InvariantViolation(f"Non-integral coroot for root {c}")
        roots.append(
            Root(
                simple=c,
                weight=Weight(dot(row, c) for row in cartan),
                coroot=tuple(int(x) for x in coroot),
                norm=norm,
            )
        )

    theta_root = roots[-1]
    rho = Weight((1,) * rank)
    alg = AlgebraData(
        series=series,
        rank=rank,
        cartan=cartan,
        symmetrizer=tuple(d),
        positive_roots=tuple(roots),
        theta=theta_root.weight,
        rho=rho,
        dual_coxeter=1 + dot(rho.coords, theta_root.coroot),
        form_matrix=form_matrix,
        _roots_by_simple={r.simple: r for r in roots},
    )
    _check_algebra(alg)
    log.debug(
        "Built %s: %d positive roots, θ = %s, ȟ = %d",
        alg.name,
        len(roots),
        alg.theta,
        alg.dual_coxeter,
    )
    return alg


def _check_algebra(alg: AlgebraData) -> None:
    r = alg.rank
    for i in range(r):
        if alg.cartan[i][i] != 2:
            raise InvariantViolation(f"{alg.name}: Cartan diagonal entry {i} is not 2")
        for j in range(r):
            if i != j and (
                alg.cartan[i][j] > 0 or (alg.cartan[i][j] == 0) != (alg.cartan[j][i] == 0)
            ):
                raise InvariantViolation(f"{alg.name}: bad Cartan entry ({i}, {j})")
    if not alg.theta.is_dominant():
        raise InvariantViolation(f"{alg.name}: θ = {alg.theta} is not dominant")
    top = alg.theta_root.simple
    for i in range(r):
        if alg.is_root(tuple(c + int(j == i) for j, c in enumerate(top))):
            raise InvariantViolation(f"{alg.name}: θ + α_{i + 1} is a root")
    if alg.form(alg.theta, alg.theta) != 2:
        raise InvariantViolation(f"{alg.name}: (θ|θ) ≠ 2")
