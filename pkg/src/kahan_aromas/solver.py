"""Discovery and exact verification of aromatic Darboux densities.

Pipeline (per parity sector): enumerate aroma multisets up to the requested
order with the quadratic indegree filter, expand their aromatic functions
(times any user augmenters), select a maximal linearly independent basis in
a fixed enumeration order, then solve the Darboux equation

    N_{-h/2}(x) P(Phi_h(x)) - P(x) N_{h/2}(Phi_h(x)) = 0,   cofactor det DPhi_h

for P in the weighted span of the basis.  Discovery evaluates the cleared
equation at seeded random rational points and takes an exact nullspace;
every candidate is then verified symbolically (the cleared defect must be
the literal zero polynomial) before it is reported.  Unlucky sampling is
handled by reseeding once and finally by fully symbolic assembly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

from .coalgebra import CoefficientFunctional
from .fields import KahanMap, QuadraticVectorField
from .graphs import (
    AromaMultiset,
    THREE_CYCLE,
    TAILED_TWO_CYCLE,
    LOOP,
    LOOP_WITH_TAIL,
    TWO_CYCLE,
    enumerate_multisets,
    parse_multiset,
)
from .linalg import det_rational_matrix, in_span, intersect_rowspaces, nullspace, rank, rref
from .poly import PointEvaluator, Polynomial, RationalFunction
from .rationals import Rat, ONE, ZERO, random_rational

QUADRATIC_MAX_INDEGREE = 2


class SolverError(RuntimeError):
    """No result where one was required (empty solution or intersection)."""


@dataclass
class BasisElement:
    key: str  # multiset encoding, or "label*encoding" for augmented elements
    multiset: AromaMultiset
    augmenter: tuple[str, Polynomial] | None
    poly: Polynomial  # F(multiset) * augmenter, fully expanded
    order: int  # h-grade: the multiset order
    sigma: int


@dataclass
class Basis:
    field: QuadraticVectorField
    max_order: int
    elements: list[BasisElement]
    dropped: list[str]
    augmenters: list[tuple[str, Polynomial]] = dc_field(default_factory=list)

    def keys(self) -> list[str]:
        return [e.key for e in self.elements]


def _reduce_against(vec: dict, rows: list[tuple[int, dict]]) -> dict:
    for pivot, row in rows:
        c = vec.get(pivot)
        if c is not None and c != 0:
            for k, v in row.items():
                cur = vec.get(k, ZERO) - c * v
                if cur == 0:
                    vec.pop(k, None)
                else:
                    vec[k] = cur
    return vec


def build_basis(
    field: QuadraticVectorField,
    max_order: int,
    augmenters=None,
    orders=None,
) -> Basis:
    """Maximal independent set of (augmented) aromatic functions.

    Candidates are scanned in a fixed order (plain multisets sorted by
    (order, encoding), then each augmenter times the same list); ties in
    pivot selection therefore always go to the earlier element.
    """
    augmenters = list(augmenters or [])
    for label, p in augmenters:
        if p.degree_in(field.dim) or p.degree_in(field.dim + 1):
            raise ValueError(f"augmenter {label!r} must not involve h or u")
    multisets = [
        m
        for m in enumerate_multisets(max_order, QUADRATIC_MAX_INDEGREE)
        if orders is None or m.order in orders
    ]
    candidates: list[tuple[str, AromaMultiset, tuple | None]] = [
        (m.encoding, m, None) for m in multisets
    ]
    for label, p in augmenters:
        candidates.extend((f"{label}*{m.encoding}", m, (label, p)) for m in multisets)

    elements: list[BasisElement] = []
    dropped: list[str] = []
    reduced_rows: list[tuple[int, dict]] = []
    for key, mset, aug in candidates:
        poly = field.aroma_function(mset)
        if aug is not None and not poly.is_zero():
            poly = poly * aug[1]
        vec = dict(poly.terms)
        vec = _reduce_against(vec, reduced_rows)
        if not vec:
            dropped.append(key)
            continue
        pivot = max(vec)
        lead = vec[pivot]
        row = {k: v / lead for k, v in vec.items()}
        reduced_rows.append((pivot, row))
        reduced_rows.sort(key=lambda pr: -pr[0])
        elements.append(
            BasisElement(key, mset, aug, poly, mset.order, mset.sigma())
        )
    return Basis(field, max_order, elements, dropped, augmenters)


@dataclass
class KernelRelations:
    field: QuadraticVectorField
    max_order: int
    multisets: list[AromaMultiset]
    relations: list[list[Rat]]  # each: coefficients c with sum c_k F(alpha_k) = 0

    def contains(self, relation) -> bool:
        if not self.relations:
            return all(v == 0 for v in relation)
        return in_span(self.relations, list(relation), len(self.multisets)) is not None


def kernel_relations(field: QuadraticVectorField, max_order: int) -> KernelRelations:
    """Exact linear relations among all aromatic functions up to max_order.

    Enumeration is unfiltered, so the quadratic indegree kernel shows up as
    relations supported on single multisets.
    """
    multisets = enumerate_multisets(max_order)
    polys = [field.aroma_function(m) for m in multisets]
    monomials = sorted({k for p in polys for k in p.terms})
    rows = [
        [p.terms.get(mkey, ZERO) for p in polys] for mkey in monomials
    ]
    rels = nullspace(rows, len(multisets))
    return KernelRelations(field, max_order, multisets, rels)


@dataclass
class DarbouxSolution:
    field: QuadraticVectorField
    max_order: int
    parity: str  # as requested: even | odd | both
    bases: dict[str, Basis]
    gammas: list[dict[str, Rat]]
    densities: list[Polynomial]
    parities: list[str]  # per solution: even | odd | mixed
    cofactor: RationalFunction
    verified: bool
    seed: int
    method: str

    def basis_keys(self) -> list[str]:
        out = []
        for sector in ("even", "odd"):
            if sector in self.bases:
                out.extend(self.bases[sector].keys())
        return out

    def dropped_keys(self) -> list[str]:
        out = []
        for sector in ("even", "odd"):
            if sector in self.bases:
                out.extend(self.bases[sector].dropped)
        return out

    def gamma_functional(self, i: int, truncation: int | None = None) -> CoefficientFunctional:
        support = {k: v for k, v in self.gammas[i].items() if _is_multiset_key(k)}
        return CoefficientFunctional(support, truncation or self.max_order)


def _is_multiset_key(key: str) -> bool:
    return key == "1" or key.startswith("C")


def _density_from_gamma(basis: Basis, gamma: list[Rat]) -> Polynomial:
    nv = basis.field.nvars
    h = Polynomial.variable(nv, basis.field.dim)
    out = Polynomial.zero(nv)
    for coeff, el in zip(gamma, basis.elements):
        if coeff != 0:
            out = out + el.poly * (h**el.order) * (coeff / el.sigma)
    return out


def _sample_point(rng, kmap: KahanMap):
    n = kmap.field.dim
    while True:
        xs = [random_rational(rng) for _ in range(n)]
        h = random_rational(rng)
        if kmap.det_m_at(xs, h) != 0:
            return xs, h, kmap.apply_point(xs, h)


def _discover(kmap: KahanMap, basis: Basis, seed: int) -> list[list[Rat]]:
    """Candidate gamma-space from seeded rational sampling + exact nullspace."""
    field = kmap.field
    n = field.dim
    elements = basis.elements
    K = len(elements)
    S = 2 * K + 16
    rng = random.Random(seed)
    jac = field.jacobian()
    rows = []
    for _ in range(S):
        xs, h, phi = _sample_point(rng, kmap)
        nm = kmap.det_m_at(xs, h)  # N_{-h/2}(x) = det(I - (h/2) f'(x))
        point_phi = list(phi) + [h, ZERO]
        half_h = Rat(h) / 2
        mat = [
            [
                (ONE if i == j else ZERO) + half_h * jac[i][j].evaluate(point_phi)
                for j in range(n)
            ]
            for i in range(n)
        ]
        np_val = det_rational_matrix(mat)  # N_{+h/2}(Phi(x))
        ev_x = PointEvaluator(field.nvars, list(xs) + [h, ZERO])
        ev_phi = PointEvaluator(field.nvars, point_phi)
        row = []
        for el in elements:
            w = Rat(h) ** el.order / el.sigma
            row.append(nm * w * ev_phi(el.poly) - w * ev_x(el.poly) * np_val)
        rows.append(row)
    return nullspace(rows, K)


def _solve_symbolic(kmap: KahanMap, basis: Basis) -> list[list[Rat]]:
    """Fully symbolic assembly of the Darboux system (fallback / oracle path)."""
    field = kmap.field
    n = field.dim
    elements = basis.elements
    if not elements:
        return []
    nv = field.nvars
    h = Polynomial.variable(nv, n)
    D = max(max(el.poly.x_degree() for el in elements), n)
    n_plus_sub = kmap.substitute(kmap.n_plus(), D)
    columns = []
    for el in elements:
        weighted = el.poly * (h**el.order) * (ONE / el.sigma)
        col = kmap.den * kmap.substitute(weighted, D) - weighted * n_plus_sub
        columns.append(col)
    monomials = sorted({k for c in columns for k in c.terms})
    rows = [[c.terms.get(mk, ZERO) for c in columns] for mk in monomials]
    return nullspace(rows, len(elements))


def _solve_sector(
    field: QuadraticVectorField,
    kmap: KahanMap,
    max_order: int,
    sector: str,
    augmenters,
    seed: int,
):
    orders = set(range(0, max_order + 1, 2)) if sector == "even" else set(
        range(1, max_order + 1, 2)
    )
    basis = build_basis(field, max_order, augmenters, orders)
    if not basis.elements:
        return basis, [], "sampled"
    for attempt, method in ((seed, "sampled"), (seed + 1000003, "sampled-reseeded")):
        vectors = _discover(kmap, basis, attempt)
        ok = True
        for vec in vectors:
            density = _density_from_gamma(basis, vec)
            if not kmap.darboux_defect_cleared(density).is_zero():
                ok = False
                break
        if ok:
            return basis, vectors, method
    vectors = _solve_symbolic(kmap, basis)
    for vec in vectors:
        density = _density_from_gamma(basis, vec)
        if not kmap.darboux_defect_cleared(density).is_zero():
            raise SolverError("symbolic Darboux assembly produced a non-solution")
    return basis, vectors, "symbolic"


def solve_darboux(
    field: QuadraticVectorField,
    max_order: int,
    parity: str = "both",
    augmenters=None,
    seed: int = 0,
) -> DarbouxSolution:
    """Find all Darboux densities with cofactor det DPhi_h in the weighted
    aroma-function span up to max_order; every returned density is verified
    as an exact rational identity."""
    if parity not in ("even", "odd", "both"):
        raise ValueError("parity must be even, odd, or both")
    kmap = KahanMap(field)
    sectors = ("even", "odd") if parity == "both" else (parity,)
    bases: dict[str, Basis] = {}
    gammas: list[dict[str, Rat]] = []
    densities: list[Polynomial] = []
    parities: list[str] = []
    methods = []
    for sector in sectors:
        basis, vectors, method = _solve_sector(
            field, kmap, max_order, sector, augmenters, seed
        )
        bases[sector] = basis
        methods.append(method)
        for vec in vectors:
            density = _density_from_gamma(basis, vec)
            gammas.append(
                {el.key: c for el, c in zip(basis.elements, vec) if c != 0}
            )
            densities.append(density)
            support = density.h_support()
            if all(s % 2 == 0 for s in support):
                par = "even"
            elif all(s % 2 == 1 for s in support):
                par = "odd"
            else:
                par = "mixed"
            parities.append(par)
    return DarbouxSolution(
        field=field,
        max_order=max_order,
        parity=parity,
        bases=bases,
        gammas=gammas,
        densities=densities,
        parities=parities,
        cofactor=kmap.det_jacobian(),
        verified=True,
        seed=seed,
        method="+".join(sorted(set(methods))) if methods else "sampled",
    )


@dataclass
class VerificationResult:
    verified: bool
    witness: tuple | None = None  # (xs, h, residual of the uncleared defect)


def verify_density(field: QuadraticVectorField, P: Polynomial, seed: int = 0) -> VerificationResult:
    """Exact check of P o Phi = det(DPhi) * P via the cleared identity."""
    kmap = KahanMap(field)
    defect = kmap.darboux_defect_cleared(P)
    if defect.is_zero():
        return VerificationResult(True)
    rng = random.Random(seed)
    D = max(P.x_degree(), field.dim)
    while True:
        xs = [random_rational(rng) for _ in range(field.dim)]
        h = random_rational(rng)
        point = [Rat(v) for v in xs] + [Rat(h), ZERO]
        den_val = kmap.den.evaluate(point)
        if den_val == 0:
            continue
        value = defect.evaluate(point)
        if value != 0:
            return VerificationResult(False, (xs, h, value / den_val**D))


def first_integrals(solution_or_densities, seed: int = 0):
    """Ratios g_i / g_1 plus the count of functionally independent ones.

    Raises when fewer than two densities exist or all are proportional.
    """
    if isinstance(solution_or_densities, DarbouxSolution):
        densities = solution_or_densities.densities
        nv = solution_or_densities.field.nvars
    else:
        densities = list(solution_or_densities)
        nv = densities[0].nvars if densities else 0
    if len(densities) < 2:
        raise ValueError("first integrals need at least two densities")
    g1 = densities[0]
    others = densities[1:]

    def proportional(g):
        if g.is_zero():
            return True
        k = max(g1.terms)
        c = g.terms.get(k)
        if c is None:
            return False
        return g == g1 * (c / g1.terms[k])

    if all(proportional(g) for g in others):
        raise ValueError("all densities are proportional: no nontrivial integral")
    ratios = [RationalFunction(g, g1) for g in others]
    nx = nv - 2
    rng = random.Random(seed)
    while True:
        xs = [random_rational(rng) for _ in range(nx)]
        h = random_rational(rng)
        point = [Rat(v) for v in xs] + [Rat(h), ZERO]
        if g1.evaluate(point) == 0:
            continue
        rows = []
        for g in others:
            rows.append(
                [
                    (g1 * g.partial_derivative(j) - g * g1.partial_derivative(j)).evaluate(
                        point
                    )
                    for j in range(nx)
                ]
            )
        return ratios, rank(rows, nx)


@dataclass
class Cond1Report:
    holds: bool
    alpha: Rat | None
    both_zero: bool


@dataclass
class NecessaryConditionsReport:
    div_free: bool
    cond1: Cond1Report
    fcond2: bool

    def to_json(self):
        from .rationals import format_rat

        return {
            "div_free": self.div_free,
            "cond1": {
                "holds": self.cond1.holds,
                "alpha": None if self.cond1.alpha is None else format_rat(self.cond1.alpha),
                "both_zero": self.cond1.both_zero,
            },
            "fcond2": self.fcond2,
        }


def _proportionality(numer: Polynomial, denom: Polynomial):
    """Return c with numer = c * denom, or None when no such constant exists."""
    if denom.is_zero():
        return None
    if numer.is_zero():
        return ZERO
    k = max(denom.terms)
    c = numer.terms.get(k)
    if c is None:
        return None
    c = c / denom.terms[k]
    return c if numer == denom * c else None


def necessary_conditions(field: QuadraticVectorField) -> NecessaryConditionsReport:
    """Leading-term and h^2/h^3 obstructions for aromatic Darboux densities."""
    div_free = field.is_divergence_free()
    f_c3 = field.aroma_function(THREE_CYCLE)
    f_t2c = field.aroma_function(TAILED_TWO_CYCLE)
    if f_t2c.is_zero():
        both_zero = f_c3.is_zero()
        cond1 = Cond1Report(holds=both_zero, alpha=None, both_zero=both_zero)
    else:
        alpha = _proportionality(f_c3, f_t2c)
        cond1 = Cond1Report(holds=alpha is not None, alpha=alpha, both_zero=False)
    f_lt = field.aroma_function(LOOP_WITH_TAIL)
    f_l2 = field.aroma_function(AromaMultiset((LOOP, LOOP)))
    return NecessaryConditionsReport(div_free, cond1, f_lt == f_l2)


def density_span_solve(densities: list[Polynomial], target: Polynomial):
    """Coordinates of target in the span of the density polynomials, or None."""
    if not densities:
        return None
    nv = densities[0].nvars
    monomials = sorted(
        {k for p in densities for k in p.terms} | set(target.terms)
    )
    basis_rows = [[p.terms.get(mk, ZERO) for mk in monomials] for p in densities]
    target_row = [target.terms.get(mk, ZERO) for mk in monomials]
    return in_span(basis_rows, target_row, len(monomials))


def gamma_space(solution: DarbouxSolution, coords: list[str]) -> list[list[Rat]]:
    """Solution gamma-vectors lifted onto a common coordinate list (RREF)."""
    index = {enc: i for i, enc in enumerate(coords)}
    rows = []
    for gamma in solution.gammas:
        row = [ZERO] * len(coords)
        for key, value in gamma.items():
            if key not in index:
                raise ValueError(f"gamma key {key} not covered by the coordinates")
            row[index[key]] = value
        rows.append(row)
    return rref(rows, len(coords))


@dataclass
class ParameterIndependentSolution:
    fields: list[QuadraticVectorField]
    coords: list[str]
    space: list[list[Rat]]  # all gamma solving every instance (kernel included)
    common_kernel: list[list[Rat]]
    representatives: list[list[Rat]]  # space modulo the common kernel
    densities: list[list[Polynomial]]  # per representative, per instance
    dimension: int  # len(representatives)
    verified: bool

    def contains(self, vector) -> bool:
        return in_span(self.space, list(vector), len(self.coords)) is not None


def _weighted_coordinate_polys(field, multisets):
    nv = field.nvars
    h = Polynomial.variable(nv, field.dim)
    out = []
    for m in multisets:
        out.append(field.aroma_function(m) * (h**m.order) * Rat(1, m.sigma()))
    return out


def parameter_independent_solve(
    family,
    instances: int,
    max_order: int,
    parity: str = "even",
    seed: int = 0,
) -> ParameterIndependentSolution:
    """Exactly intersect the per-instance gamma solution spaces of a family.

    `family` is a callable rng -> QuadraticVectorField (or a list of fields).
    Each instance's full solution set (basis solutions plus that instance's
    kernel of F, which contributes zero densities) is intersected over the
    common multiset coordinate list; representatives modulo the common
    kernel are the parameter-independent measures, verified on every
    instance.
    """
    if instances < 2:
        raise ValueError("need at least two instances to intersect")
    rng = random.Random(seed)
    if callable(family):
        fields = [family(rng) for _ in range(instances)]
    else:
        fields = list(family)[:instances]
        if len(fields) < instances:
            raise ValueError("family list shorter than the instance count")
    if parity == "even":
        keep = lambda m: m.order % 2 == 0
    elif parity == "odd":
        keep = lambda m: m.order % 2 == 1
    else:
        keep = lambda m: True
    multisets = [
        m for m in enumerate_multisets(max_order, QUADRATIC_MAX_INDEGREE) if keep(m)
    ]
    coords = [m.encoding for m in multisets]
    ncols = len(coords)

    space = None
    kernel_space = None
    maps = []
    for idx, f in enumerate(fields):
        sol = solve_darboux(f, max_order, parity=parity, seed=seed + idx)
        maps.append(KahanMap(f))
        lifted = gamma_space(sol, coords)
        polys = _weighted_coordinate_polys(f, multisets)
        monomials = sorted({k for p in polys for k in p.terms})
        rows = [[p.terms.get(mk, ZERO) for p in polys] for mk in monomials]
        kern = nullspace(rows, ncols)
        s_i = rref(lifted + kern, ncols)
        space = s_i if space is None else intersect_rowspaces(space, s_i, ncols)
        kernel_space = (
            rref(kern, ncols)
            if kernel_space is None
            else intersect_rowspaces(kernel_space, kern, ncols)
        )
    space = space or []
    kernel_space = kernel_space or []

    representatives = []
    accumulated = [row[:] for row in kernel_space]
    base_rank = rank(accumulated, ncols) if accumulated else 0
    for vec in space:
        trial = accumulated + [vec]
        r = rank(trial, ncols)
        if r > base_rank:
            representatives.append(vec)
            accumulated = trial
            base_rank = r
    if not representatives:
        raise SolverError("empty intersection: no parameter-independent measure at this order")

    densities = []
    verified = True
    for vec in representatives:
        per_instance = []
        for f, kmap in zip(fields, maps):
            polys = _weighted_coordinate_polys(f, multisets)
            density = Polynomial.zero(f.nvars)
            for c, p in zip(vec, polys):
                if c != 0:
                    density = density + p * c
            per_instance.append(density)
            if not density.is_zero() and not kmap.darboux_defect_cleared(density).is_zero():
                verified = False
        densities.append(per_instance)
    if not verified:
        raise SolverError("intersection vector failed symbolic verification")
    return ParameterIndependentSolution(
        fields=fields,
        coords=coords,
        space=space,
        common_kernel=kernel_space,
        representatives=representatives,
        densities=densities,
        dimension=len(representatives),
        verified=verified,
    )


@dataclass
class ConjectureReport:
    applicable: bool
    tailed_two_cycle_zero: bool
    hypothesis_holds: bool
    alpha: Rat | None
    singular: bool
    density_found: bool | None
    gamma_two_cycle: Rat | None
    order4_support: list[str]
    order4_proportional_pairs: list[tuple[str, str, Rat]]
    solution_dimension: int | None

    def to_json(self):
        from .rationals import format_rat

        return {
            "applicable": self.applicable,
            "tailed_two_cycle_zero": self.tailed_two_cycle_zero,
            "hypothesis_holds": self.hypothesis_holds,
            "alpha": None if self.alpha is None else format_rat(self.alpha),
            "singular": self.singular,
            "density_found": self.density_found,
            "gamma_two_cycle": None
            if self.gamma_two_cycle is None
            else format_rat(self.gamma_two_cycle),
            "order4_support": self.order4_support,
            "order4_proportional_pairs": [
                [a, b, format_rat(c)] for a, b, c in self.order4_proportional_pairs
            ],
            "solution_dimension": self.solution_dimension,
        }


def conjecture_check(field: QuadraticVectorField, seed: int = 0) -> ConjectureReport:
    """Instance check of the R^3 homogeneous divergence-free conjecture.

    When F(3-cycle) = alpha F(tailed 2-cycle) holds non-degenerately (and
    alpha != -3), an order-4 even density with h^0 part 1 and h^2 part
    -(3-alpha)/24 F(2-cycle) must exist; its order-4 completion is reported
    rather than pinned to a specific aroma.
    """
    if field.dim != 3 or not field.is_homogeneous() or not field.is_divergence_free():
        raise ValueError("conjecture check requires a homogeneous divergence-free field on R^3")
    f_t2c = field.aroma_function(TAILED_TWO_CYCLE)
    f_c3 = field.aroma_function(THREE_CYCLE)
    pairs = _order4_proportional_pairs(field)
    if f_t2c.is_zero():
        return ConjectureReport(
            applicable=True,
            tailed_two_cycle_zero=True,
            hypothesis_holds=f_c3.is_zero(),
            alpha=None,
            singular=False,
            density_found=None,
            gamma_two_cycle=None,
            order4_support=[],
            order4_proportional_pairs=pairs,
            solution_dimension=None,
        )
    alpha = _proportionality(f_c3, f_t2c)
    if alpha is None:
        return ConjectureReport(
            applicable=True,
            tailed_two_cycle_zero=False,
            hypothesis_holds=False,
            alpha=None,
            singular=False,
            density_found=None,
            gamma_two_cycle=None,
            order4_support=[],
            order4_proportional_pairs=pairs,
            solution_dimension=None,
        )
    if alpha == -3:
        return ConjectureReport(
            applicable=True,
            tailed_two_cycle_zero=False,
            hypothesis_holds=True,
            alpha=alpha,
            singular=True,
            density_found=None,
            gamma_two_cycle=None,
            order4_support=[],
            order4_proportional_pairs=pairs,
            solution_dimension=None,
        )
    sol = solve_darboux(field, 4, parity="even", seed=seed)
    gamma_c2 = -(Rat(3) - alpha) / 12
    target_h2 = field.aroma_function(TWO_CYCLE) * (gamma_c2 / 2)
    combo = _find_constrained_density(sol, target_h2)
    order4_support = []
    if combo is not None:
        gamma = {}
        for c, g in zip(combo, sol.gammas):
            if c == 0:
                continue
            for k, v in g.items():
                gamma[k] = gamma.get(k, ZERO) + c * v
        order4_support = sorted(
            k for k, v in gamma.items() if v != 0 and parse_multiset(k).order == 4
        )
    return ConjectureReport(
        applicable=True,
        tailed_two_cycle_zero=False,
        hypothesis_holds=True,
        alpha=alpha,
        singular=False,
        density_found=combo is not None,
        gamma_two_cycle=gamma_c2,
        order4_support=order4_support,
        order4_proportional_pairs=pairs,
        solution_dimension=len(sol.densities),
    )


def _order4_proportional_pairs(field):
    """Detected exact proportionalities F(a) = c F(b) among order-4 multisets."""
    from .graphs import enumerate_multisets as _enum

    order4 = [m for m in _enum(4, QUADRATIC_MAX_INDEGREE) if m.order == 4]
    polys = [(m.encoding, field.aroma_function(m)) for m in order4]
    pairs = []
    for i in range(len(polys)):
        for j in range(len(polys)):
            if i == j:
                continue
            enc_a, pa = polys[i]
            enc_b, pb = polys[j]
            if pa.is_zero() or pb.is_zero():
                continue
            c = _proportionality(pa, pb)
            if c is not None and enc_a < enc_b:
                pairs.append((enc_a, enc_b, c))
    return pairs


def _find_constrained_density(sol: DarbouxSolution, target_h2: Polynomial):
    """Combination of solutions with h^0 part 1 and the given h^2 part."""
    densities = sol.densities
    if not densities:
        return None
    nv = densities[0].nvars
    h0_parts = [d.coefficient_of_h(0) for d in densities]
    h2_parts = [d.coefficient_of_h(2) for d in densities]
    monomials = sorted(
        {k for p in h0_parts + h2_parts for k in p.terms}
        | set(target_h2.terms)
        | {0}
    )
    rows = []
    rhs = []
    for mk in monomials:
        rows.append([p.terms.get(mk, ZERO) for p in h0_parts])
        rhs.append(ONE if mk == 0 else ZERO)
    for mk in monomials:
        rows.append([p.terms.get(mk, ZERO) for p in h2_parts])
        rhs.append(target_h2.terms.get(mk, ZERO))
    # solve rows * c = rhs exactly via nullspace of [rows | -rhs]
    aug = [row + [-r] for row, r in zip(rows, rhs)]
    for vec in nullspace(aug, len(densities) + 1):
        if vec[-1] != 0:
            scale = ONE / vec[-1]
            return [v * scale for v in vec[:-1]]
    return None
