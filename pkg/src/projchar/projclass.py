"""Characteristic classes of projectivized bundles by Chern-root calculus.

Everything here reduces to exact identities between symmetric functions of
formal Chern roots x_1..x_n.  The classes unchanged by the twist
x_i -> x_i + d (tensoring with a line bundle) form a polynomial algebra on
canonical generators: the elementary symmetric functions z_k of the
difference roots y_i = n*x_i - (x_1 + ... + x_n).  This module computes
those generators, rewrites twist-invariant classes in terms of them,
derives the reduction identity a_k = P + lambda * c_k, and enumerates
related Chern classes (endomorphism bundles, Hom bundles of flags) and
generator catalogs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Any, Sequence

from .qpoly import (
    RationalPoly,
    Variable,
    elementary_symmetric_all,
    express_in_elementary,
    linear_solve,
    make_ring,
)
from .univdet import ParabolicDatum

__all__ = [
    "ChernRing",
    "ChernExpression",
    "AClassExpression",
    "ReductionData",
    "FlagType",
    "chern_ring",
    "y_roots",
    "z_basis",
    "expand_to_roots",
    "is_shift_invariant",
    "express_in_z",
    "express_c_poly_in_z",
    "lambda_p",
    "a_classes",
    "end_chern",
    "end_in_a",
    "surjectivity_witness",
    "hom_flag_chern",
    "generator_catalog",
]


@dataclass(frozen=True)
class ChernRing:
    """Symbol table for a fixed rank: roots x_i, classes c_i, shift d, generators z_k."""

    rank: int

    def __post_init__(self) -> None:
        if self.rank < 1:
            raise ValueError(f"rank must be positive, got {self.rank}")

    @cached_property
    def root_vars(self) -> tuple[Variable, ...]:
        return tuple(Variable(f"x{i}") for i in range(1, self.rank + 1))

    @cached_property
    def chern_vars(self) -> tuple[Variable, ...]:
        return tuple(Variable(f"c{i}", i) for i in range(1, self.rank + 1))

    @cached_property
    def z_vars(self) -> tuple[Variable, ...]:
        return tuple(Variable(f"z{k}", k) for k in range(2, self.rank + 1))

    @cached_property
    def shift_var(self) -> Variable:
        return Variable("d")

    @cached_property
    def root_ring(self) -> tuple[Variable, ...]:
        return make_ring(*self.root_vars)

    @cached_property
    def shift_ring(self) -> tuple[Variable, ...]:
        return make_ring(*self.root_vars, self.shift_var)

    @cached_property
    def c_ring(self) -> tuple[Variable, ...]:
        return make_ring(*self.chern_vars)

    @cached_property
    def z_ring(self) -> tuple[Variable, ...]:
        return make_ring(*self.z_vars)


@lru_cache(maxsize=None)
def chern_ring(rank: int) -> ChernRing:
    return ChernRing(rank)


@dataclass(frozen=True)
class ChernExpression:
    """Homogeneous polynomial in c_1..c_n, graded by weight(c_i) = i."""

    ring: ChernRing
    poly: RationalPoly
    weight: int

    def __post_init__(self) -> None:
        if self.poly.ring != self.ring.c_ring:
            raise ValueError("polynomial is not over the Chern-class ring")
        if self.weight < 0:
            raise ValueError("weight must be non-negative")
        w = self.poly.homogeneous_weight()
        if w is not None and w != self.weight:
            raise ValueError(f"polynomial has weight {w}, declared {self.weight}")

    def to_text(self) -> str:
        return self.poly.to_text()


@dataclass(frozen=True)
class AClassExpression:
    """Polynomial in the canonical generators z_2..z_n, homogeneous by weight."""

    ring: ChernRing
    poly: RationalPoly

    def __post_init__(self) -> None:
        if self.poly.ring != self.ring.z_ring:
            raise ValueError("polynomial is not over the z-generator ring")
        self.poly.homogeneous_weight()  # raises if mixed

    @property
    def weight(self) -> int | None:
        return self.poly.homogeneous_weight()

    def to_text(self) -> str:
        return self.poly.to_text()


@dataclass(frozen=True)
class ReductionData:
    """Reduction identity a_k = P + lambda * c_k for rank n.

    lambda is nonzero and P involves only c_1 and a_2..a_{k-1}, so the
    identity lets c_k be rewritten in terms of canonical classes and c_1.
    """

    n: int
    k: int
    lam: Fraction
    P: RationalPoly


@dataclass(frozen=True)
class FlagType:
    """Multiplicity blocks of a flag; they must sum to the ambient rank."""

    multiplicities: tuple[int, ...]

    def validate(self, ambient_rank: int) -> None:
        if not self.multiplicities:
            raise ValueError("flag type needs at least one block")
        if any(m < 1 for m in self.multiplicities):
            raise ValueError("flag multiplicities must be positive")
        if sum(self.multiplicities) != ambient_rank:
            raise ValueError(
                f"flag multiplicities sum to {sum(self.multiplicities)},"
                f" expected {ambient_rank}"
            )


# -- canonical generators ------------------------------------------------------


def y_roots(ring: ChernRing) -> tuple[RationalPoly, ...]:
    """The difference roots y_i = n*x_i - (x_1 + ... + x_n); their sum is zero."""
    gens = [RationalPoly.gen(ring.root_ring, v) for v in ring.root_vars]
    total = RationalPoly.zero(ring.root_ring)
    for gpoly in gens:
        total = total + gpoly
    return tuple(ring.rank * gpoly - total for gpoly in gens)


@lru_cache(maxsize=None)
def _y_esp(n: int) -> tuple[RationalPoly, ...]:
    ring = chern_ring(n)
    return tuple(elementary_symmetric_all(list(y_roots(ring)), ring.root_ring))


@lru_cache(maxsize=None)
def _root_esp(n: int) -> tuple[RationalPoly, ...]:
    ring = chern_ring(n)
    gens = [RationalPoly.gen(ring.root_ring, v) for v in ring.root_vars]
    return tuple(elementary_symmetric_all(gens, ring.root_ring))


@lru_cache(maxsize=None)
def _z_poly(n: int, k: int) -> RationalPoly:
    ring = chern_ring(n)
    return express_in_elementary(
        _y_esp(n)[k], ring.root_vars, target_vars=ring.chern_vars
    )


def z_basis(ring: ChernRing, k: int) -> ChernExpression:
    """The k-th canonical generator e_k(y), rewritten in c_1..c_n (weight k)."""
    if not 2 <= k <= ring.rank:
        raise ValueError(f"k must satisfy 2 <= k <= {ring.rank}, got {k}")
    return ChernExpression(ring, _z_poly(ring.rank, k), k)


def expand_to_roots(ring: ChernRing, poly: RationalPoly) -> RationalPoly:
    """Substitute c_i -> e_i(x), landing in the root ring."""
    es = _root_esp(ring.rank)
    bindings = {v: es[i + 1] for i, v in enumerate(ring.chern_vars)}
    return poly.substitute(bindings, target_ring=ring.root_ring)


def _shifted(ring: ChernRing, root_poly: RationalPoly) -> RationalPoly:
    """Apply x_i -> x_i + d inside the shift-extended ring."""
    target = ring.shift_ring
    d = RationalPoly.gen(target, ring.shift_var)
    bindings = {v: RationalPoly.gen(target, v) + d for v in ring.root_vars}
    return root_poly.substitute(bindings, target_ring=target)


def is_shift_invariant(expr: ChernExpression) -> bool:
    """True iff the class is unchanged by twisting with a formal line bundle."""
    roots = expand_to_roots(expr.ring, expr.poly)
    return _shifted(expr.ring, roots) == roots.embedded(expr.ring.shift_ring)


def _weighted_z_monomials(n: int, weight: int) -> list[tuple[int, ...]]:
    """Exponent vectors over z_2..z_n of total weight exactly `weight`."""
    ks = list(range(2, n + 1))
    out: list[tuple[int, ...]] = []

    def rec(i: int, remaining: int, acc: list[int]) -> None:
        if i == len(ks):
            if remaining == 0:
                out.append(tuple(acc))
            return
        for e in range(remaining // ks[i] + 1):
            rec(i + 1, remaining - e * ks[i], acc + [e])

    rec(0, weight, [])
    return sorted(out, reverse=True)


@lru_cache(maxsize=None)
def _z_monomial_expansion(n: int, exps: tuple[int, ...]) -> RationalPoly:
    ring = chern_ring(n)
    out = RationalPoly.const(ring.c_ring, 1)
    for k, e in zip(range(2, n + 1), exps):
        if e:
            out = out * _z_poly(n, k) ** e
    return out


def express_in_z(expr: ChernExpression) -> AClassExpression:
    """Rewrite a shift-invariant class in the canonical z-generators.

    Solves the linear system over weighted z-monomials and verifies the
    answer by expanding it back; the generators are algebraically free, so
    anything other than a unique solution is an internal error.
    """
    ring = expr.ring
    n = ring.rank
    if expr.poly.is_zero():
        return AClassExpression(ring, RationalPoly.zero(ring.z_ring))
    if not is_shift_invariant(expr):
        raise ValueError("expression is not shift-invariant")
    monos = _weighted_z_monomials(n, expr.weight)
    expansions = [_z_monomial_expansion(n, m) for m in monos]
    row_keys = sorted(
        set(itertools.chain(expr.poly.terms, *(e.terms for e in expansions))),
        reverse=True,
    )
    matrix = [[e.terms.get(rk, Fraction(0)) for e in expansions] for rk in row_keys]
    rhs = [expr.poly.terms.get(rk, Fraction(0)) for rk in row_keys]
    res = linear_solve(matrix, rhs)
    if res.status != "unique":
        raise RuntimeError(
            f"z-generator system came back {res.status};"
            " the invariant-algebra model is broken"
        )
    q = RationalPoly(ring.z_ring, dict(zip(monos, res.solution)))
    back = RationalPoly.zero(ring.c_ring)
    for mono, coef in zip(monos, res.solution):
        if coef:
            back = back + coef * _z_monomial_expansion(n, mono)
    if back != expr.poly:
        raise RuntimeError("z-basis rewrite failed back-substitution")
    return AClassExpression(ring, q)


def express_c_poly_in_z(ring: ChernRing, poly: RationalPoly) -> RationalPoly:
    """Per-weight z-rewrite of a possibly inhomogeneous shift-invariant polynomial."""
    out = RationalPoly.zero(ring.z_ring)
    for w, comp in poly.homogeneous_components().items():
        out = out + express_in_z(ChernExpression(ring, comp, w)).poly
    return out


# -- reduction identity ---------------------------------------------------------


def _a_var(i: int) -> Variable:
    return Variable(f"a{i}", i)


@lru_cache(maxsize=None)
def lambda_p(n: int, k: int) -> ReductionData:
    """Reduction data (lambda, P) with e_k(y) = P(c_1, a_2..a_{k-1}) + lambda*c_k.

    The pure c_k coefficient is split off, and the remaining c_2..c_{k-1}
    are eliminated by back-substituting c_j = (a_j - P_j)/lambda_j for
    descending j.  The identity is re-verified by expansion to the roots.
    """
    if not 2 <= k <= n:
        raise ValueError(f"k must satisfy 2 <= k <= {n}, got {k}")
    ring = chern_ring(n)
    z = _z_poly(n, k)
    ck_exps = tuple(1 if i == k - 1 else 0 for i in range(n))
    lam = z.coefficient(ck_exps)
    if lam == 0:
        raise RuntimeError(f"z_{k} has no pure c_{k} term; reduction impossible")
    remainder = z - lam * RationalPoly.gen(ring.c_ring, ring.chern_vars[k - 1])
    lower_c = ring.chern_vars[: k - 1]
    a_vars = tuple(_a_var(i) for i in range(2, k))
    work_ring = make_ring(*lower_c, *a_vars)
    work = remainder.restricted(lower_c).embedded(work_ring)
    for j in range(k - 1, 1, -1):
        sub = lambda_p(n, j)
        image = (
            RationalPoly.gen(work_ring, _a_var(j)) - sub.P.embedded(work_ring)
        ) * (Fraction(1) / sub.lam)
        work = work.substitute({ring.chern_vars[j - 1]: image}, target_ring=work_ring)
    P = work.restricted(make_ring(ring.chern_vars[0], *a_vars))
    _verify_reduction(n, k, lam, P)
    return ReductionData(n, k, lam, P)


def _verify_reduction(n: int, k: int, lam: Fraction, P: RationalPoly) -> None:
    ring = chern_ring(n)
    es = _root_esp(n)
    bindings: dict[Variable, RationalPoly] = {ring.chern_vars[0]: es[1]}
    for i in range(2, k):
        bindings[_a_var(i)] = expand_to_roots(ring, _z_poly(n, i))
    lhs = expand_to_roots(ring, _z_poly(n, k))
    rhs = P.substitute(bindings, target_ring=ring.root_ring) + lam * es[k]
    if lhs != rhs:
        raise RuntimeError(f"reduction identity for (n={n}, k={k}) failed verification")


# -- evaluation in coefficient rings --------------------------------------------


def _coefficient_degree(value: Any) -> int | None:
    # plain numbers act as ungraded scalars; only graded values are checked
    if isinstance(value, (int, Fraction)):
        return None
    probe = getattr(value, "cohomological_degree", None)
    return probe() if callable(probe) else None


def a_classes(
    rank: int, chern_values: Sequence[Any], zero: Any = Fraction(0)
) -> list[Any]:
    """Evaluate the canonical classes a_2..a_rank at given Chern values.

    Values may live in any commutative coefficient ring supporting +, *,
    integer powers and multiplication by Fraction; the value for c_i must be
    homogeneous of degree 2i when its degree is observable.  Missing
    trailing values are zero.  Rank 1 has no canonical classes.
    """
    if rank < 1:
        raise ValueError(f"rank must be positive, got {rank}")
    values = list(chern_values)
    if len(values) > rank:
        raise ValueError(f"got {len(values)} Chern values for rank {rank}")
    values += [zero] * (rank - len(values))
    for i, v in enumerate(values, start=1):
        deg = _coefficient_degree(v)
        if deg is not None and deg != 2 * i:
            raise ValueError(f"value for c{i} has degree {deg}, expected {2 * i}")
    ring = chern_ring(rank)
    assignment = dict(zip(ring.chern_vars, values))
    return [
        _z_poly(rank, k).evaluate(assignment, zero=zero) for k in range(2, rank + 1)
    ]


# -- endomorphism and Hom bundles -----------------------------------------------


@lru_cache(maxsize=None)
def _end_root_esp(n: int) -> tuple[RationalPoly, ...]:
    # all n^2 ordered differences, the n zero roots x_a - x_a included
    ring = chern_ring(n)
    gens = {v: RationalPoly.gen(ring.root_ring, v) for v in ring.root_vars}
    roots = [gens[a] - gens[b] for a in ring.root_vars for b in ring.root_vars]
    return tuple(elementary_symmetric_all(roots, ring.root_ring))


@lru_cache(maxsize=None)
def _end_c_poly(n: int, j: int) -> RationalPoly:
    ring = chern_ring(n)
    return express_in_elementary(
        _end_root_esp(n)[j], ring.root_vars, target_vars=ring.chern_vars
    )


def end_chern(n: int, j: int) -> ChernExpression:
    """c_j of the endomorphism bundle: e_j of the n^2 differences x_a - x_b."""
    if not 1 <= j <= n * n:
        raise ValueError(f"j must satisfy 1 <= j <= {n * n}, got {j}")
    return ChernExpression(chern_ring(n), _end_c_poly(n, j), j)


def end_in_a(n: int, j: int) -> AClassExpression:
    """The endomorphism class c_j(End) rewritten in the canonical z-generators."""
    return express_in_z(end_chern(n, j))


def surjectivity_witness(n: int) -> bool:
    """True iff some generator z_k escapes the span of endomorphism classes.

    For each k <= n the span of all products of the nonzero end_in_a
    classes with total weight k is computed in the z-monomial basis; the
    witness is a z_k outside that span.  Rank 2 has none (a_2 is itself an
    endomorphism class); odd k kills every product for rank >= 3.
    """
    if n < 2:
        raise ValueError(f"rank must be at least 2, got {n}")
    ring = chern_ring(n)
    gens = []
    for j in range(1, n * n + 1):
        poly = end_in_a(n, j).poly
        if not poly.is_zero():
            gens.append((j, poly))
    for k in range(2, n + 1):
        products = _graded_products(gens, k, ring)
        target = RationalPoly.gen(ring.z_ring, ring.z_vars[k - 2])
        if not products:
            return True
        row_keys = sorted(
            set(itertools.chain(target.terms, *(p.terms for p in products))),
            reverse=True,
        )
        matrix = [[p.terms.get(rk, Fraction(0)) for p in products] for rk in row_keys]
        rhs = [target.terms.get(rk, Fraction(0)) for rk in row_keys]
        if linear_solve(matrix, rhs).status == "inconsistent":
            return True
    return False


def _graded_products(
    gens: Sequence[tuple[int, RationalPoly]], weight: int, ring: ChernRing
) -> list[RationalPoly]:
    """All products of the homogeneous generators with total weight `weight`."""
    out: list[RationalPoly] = []

    def rec(i: int, remaining: int, acc: RationalPoly) -> None:
        if remaining == 0:
            out.append(acc)
            return
        if i == len(gens):
            return
        j, poly = gens[i]
        power = acc
        for e in range(remaining // j + 1):
            if e:
                power = power * poly
            rec(i + 1, remaining - e * j, power)

    rec(0, weight, RationalPoly.const(ring.z_ring, 1))
    return out


def hom_flag_chern(
    sub_roots: Sequence[Variable], target_roots: Sequence[Variable], j: int
) -> RationalPoly:
    """c_j of a Hom bundle: e_j of the pairwise differences t_b - s_a."""
    ring = make_ring(*sub_roots, *target_roots)
    total = len(sub_roots) * len(target_roots)
    if not 1 <= j <= total:
        raise ValueError(f"j must satisfy 1 <= j <= {total}, got {j}")
    s_gens = [RationalPoly.gen(ring, v) for v in sub_roots]
    t_gens = [RationalPoly.gen(ring, v) for v in target_roots]
    roots = [t - s for s in s_gens for t in t_gens]
    return elementary_symmetric_all(roots, ring)[j]


# -- generator catalogs ----------------------------------------------------------


def _h1_basis_names(genus: int) -> list[str]:
    return [f"a{i}" for i in range(1, genus + 1)] + [
        f"b{i}" for i in range(1, genus + 1)
    ]


def generator_catalog(
    n: int, genus: int, datum: ParabolicDatum, fixed_det: bool
) -> list[tuple[str, int]]:
    """Enumerate generator descriptors with their cohomological degrees.

    Per marked point and adjacent flag pair (i, i-1): Chern classes of the
    Hom bundle, degrees 2j for j up to the product of the two block
    multiplicities.  Without fixed determinant: the first Chern class
    slanted along each 1-cycle, degree 1.  Always: each canonical class
    a_i (2 <= i <= n) slanted along homology of degree r = 0, 1, 2, giving
    degree 2i - r.
    """
    if n < 1:
        raise ValueError(f"rank must be positive, got {n}")
    if genus < 0:
        raise ValueError(f"genus must be non-negative, got {genus}")
    datum.validate(n)
    out: list[tuple[str, int]] = []
    for point in datum.points:
        FlagType(point.multiplicities).validate(n)
        ms = point.multiplicities
        for i in range(2, len(ms) + 1):
            for j in range(1, ms[i - 1] * ms[i - 2] + 1):
                out.append(
                    (
                        f"c{j}(Hom(U[{point.label},{i}],U[{point.label},{i - 1}]))",
                        2 * j,
                    )
                )
    h1 = _h1_basis_names(genus)
    if not fixed_det:
        for name in h1:
            out.append((f"sigma(c1(U))/{name}", 1))
    for i in range(2, n + 1):
        out.append((f"sigma(a{i}(P(U)))/[x0]", 2 * i))
        for name in h1:
            out.append((f"sigma(a{i}(P(U)))/{name}", 2 * i - 1))
        out.append((f"sigma(a{i}(P(U)))/[X]", 2 * i - 2))
    return out
