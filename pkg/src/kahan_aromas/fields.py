"""Quadratic vector fields, aromatic functions, and the Kahan map.

The field f on R^n is stored by its exact coefficient tensors

    f_i = sum_{j<=k} a[i,j,k] x_j x_k  +  sum_j b[i,j] x_j  +  c[i]

(one entry per unordered pair j<=k).  The symmetrized tensor entry
a_sym[i,j,k] satisfies d^2 f_i / dx_j dx_k = 2 a_sym[i,j,k]; a pinned test
fixes the stored-vs-exposed convention.

The aromatic function F sends an aroma (or multiset) to a scalar polynomial
by Einstein summation: vertex v with predecessors p1..pm contributes the
factor d^m f^{i_v} / dx_{i_p1} ... dx_{i_pm}, summed over all index
assignments.  Bare cycles short-circuit to traces of Jacobian powers; the
assignment evaluator stays available as the independent route.
"""

from __future__ import annotations

from itertools import product

from .graphs import Aroma, AromaMultiset, RootedTree, parse_any
from .linalg import invert_rational_matrix
from .poly import Polynomial, RationalFunction, rf_substitute
from .rationals import Rat, ONE, ZERO, format_rat, parse_rat


class QuadraticVectorField:
    """Exact quadratic vector field on R^dim (immutable after construction)."""

    def __init__(self, dim: int, quadratic=None, linear=None, constant=None):
        if dim < 1:
            raise ValueError("dimension must be at least 1")
        self.dim = dim
        self.nvars = dim + 2
        self.quadratic: dict[tuple[int, int, int], Rat] = {}
        self.linear: dict[tuple[int, int], Rat] = {}
        self.constant: dict[int, Rat] = {}
        for (i, j, k), v in dict(quadratic or {}).items():
            self._check_index(i, j, k)
            if j > k:
                j, k = k, j
            v = Rat(v)
            if v != 0:
                self.quadratic[(i, j, k)] = self.quadratic.get((i, j, k), ZERO) + v
        for (i, j), v in dict(linear or {}).items():
            self._check_index(i, j)
            v = Rat(v)
            if v != 0:
                self.linear[(i, j)] = self.linear.get((i, j), ZERO) + v
        for i, v in dict(constant or {}).items():
            self._check_index(i)
            v = Rat(v)
            if v != 0:
                self.constant[i] = self.constant.get(i, ZERO) + v
        self.quadratic = {k: v for k, v in self.quadratic.items() if v != 0}
        self.linear = {k: v for k, v in self.linear.items() if v != 0}
        self.constant = {k: v for k, v in self.constant.items() if v != 0}
        self._components: list[Polynomial] | None = None
        self._jacobian: list[list[Polynomial]] | None = None
        self._partials: dict = {}
        self._aroma_cache: dict[str, Polynomial] = {}
        self._jac_powers: list | None = None

    def _check_index(self, *idx):
        for i in idx:
            if not 0 <= i < self.dim:
                raise ValueError(f"index {i} out of range for dimension {self.dim}")

    # -- polynomial views ------------------------------------------------

    def component(self, i: int) -> Polynomial:
        return self.components()[i]

    def components(self) -> list[Polynomial]:
        if self._components is None:
            n, nv = self.dim, self.nvars
            polys = []
            for i in range(n):
                terms = {}
                for (ii, j, k), v in self.quadratic.items():
                    if ii == i:
                        e = [0] * nv
                        e[j] += 1
                        e[k] += 1
                        terms[tuple(e)] = v
                for (ii, j), v in self.linear.items():
                    if ii == i:
                        e = [0] * nv
                        e[j] = 1
                        terms[tuple(e)] = terms.get(tuple(e), ZERO) + v
                if i in self.constant:
                    terms[tuple([0] * nv)] = self.constant[i]
                p = Polynomial.zero(nv)
                for e, v in terms.items():
                    p = p + Polynomial.monomial(nv, e, v)
                polys.append(p)
            self._components = polys
        return self._components

    @staticmethod
    def from_polynomials(polys: list[Polynomial]) -> "QuadraticVectorField":
        dim = len(polys)
        quadratic, linear, constant = {}, {}, {}
        for i, p in enumerate(polys):
            if p.nvars != dim + 2:
                raise ValueError("component polynomial has the wrong variable universe")
            for exps, coeff in p.sorted_terms():
                if exps[dim] or exps[dim + 1]:
                    raise ValueError("vector field components must not involve h or u")
                support = [(j, e) for j, e in enumerate(exps[:dim]) if e]
                degree = sum(e for _, e in support)
                if degree > 2:
                    raise ValueError("vector field is not quadratic")
                if degree == 0:
                    constant[i] = coeff
                elif degree == 1:
                    linear[(i, support[0][0])] = coeff
                elif len(support) == 1:
                    quadratic[(i, support[0][0], support[0][0])] = coeff
                else:
                    quadratic[(i, support[0][0], support[1][0])] = coeff
        return QuadraticVectorField(dim, quadratic, linear, constant)

    def a_sym(self, i: int, j: int, k: int) -> Rat:
        """Symmetrized quadratic tensor: d^2 f_i/dx_j dx_k = 2 a_sym(i,j,k)."""
        if j > k:
            j, k = k, j
        stored = self.quadratic.get((i, j, k), ZERO)
        return stored if j == k else stored / 2

    # -- calculus ---------------------------------------------------------

    def partial(self, i: int, indices: tuple[int, ...]) -> Polynomial:
        """d^m f_i / dx_{indices}; indices is a sorted tuple."""
        key = (i, indices)
        got = self._partials.get(key)
        if got is None:
            if indices:
                got = self.partial(i, indices[:-1]).partial_derivative(indices[-1])
            else:
                got = self.component(i)
            self._partials[key] = got
        return got

    def jacobian(self) -> list[list[Polynomial]]:
        if self._jacobian is None:
            self._jacobian = [
                [self.partial(i, (j,)) for j in range(self.dim)] for i in range(self.dim)
            ]
        return self._jacobian

    def divergence(self) -> Polynomial:
        out = Polynomial.zero(self.nvars)
        for i in range(self.dim):
            out = out + self.partial(i, (i,))
        return out

    def is_divergence_free(self) -> bool:
        return self.divergence().is_zero()

    def is_homogeneous(self) -> bool:
        return not self.linear and not self.constant

    # -- aromatic functions ------------------------------------------------

    def _jacobian_power(self, k: int) -> list[list[Polynomial]]:
        if self._jac_powers is None:
            self._jac_powers = [None, self.jacobian()]
        while len(self._jac_powers) <= k:
            prev = self._jac_powers[-1]
            jac = self.jacobian()
            n = self.dim
            nxt = [
                [
                    sum((prev[i][m] * jac[m][j] for m in range(n)), Polynomial.zero(self.nvars))
                    for j in range(n)
                ]
                for i in range(n)
            ]
            self._jac_powers.append(nxt)
        return self._jac_powers[k]

    def _aroma_by_assignments(self, aroma: Aroma) -> Polynomial:
        preds, _, _ = aroma.structure()
        nverts = len(preds)
        n, nv = self.dim, self.nvars
        total = Polynomial.zero(nv)
        for assignment in product(range(n), repeat=nverts):
            term = Polynomial.const(nv, 1)
            for v in range(nverts):
                factor = self.partial(
                    assignment[v], tuple(sorted(assignment[u] for u in preds[v]))
                )
                if factor.is_zero():
                    term = None
                    break
                term = term * factor
            if term is not None:
                total = total + term
        return total

    def aroma_function(self, arg) -> Polynomial:
        """F(arg) for an aroma or aroma multiset (encodings accepted)."""
        if isinstance(arg, str):
            arg = parse_any(arg)
        if isinstance(arg, AromaMultiset):
            out = Polynomial.const(self.nvars, 1)
            for aroma in arg.aromas:
                out = out * self.aroma_function(aroma)
                if out.is_zero():
                    return out
            return out
        if not isinstance(arg, Aroma):
            raise TypeError("aroma_function expects an Aroma or AromaMultiset")
        got = self._aroma_cache.get(arg.encoding)
        if got is None:
            if arg.is_bare_cycle():
                power = self._jacobian_power(arg.cycle_len)
                got = sum(
                    (power[i][i] for i in range(self.dim)), Polynomial.zero(self.nvars)
                )
            else:
                got = self._aroma_by_assignments(arg)
            self._aroma_cache[arg.encoding] = got
        return got

    def elementary_differential(self, tree: RootedTree) -> list[Polynomial]:
        """B-series elementary differential F(tree) as a vector of polynomials."""
        n, nv = self.dim, self.nvars
        if not tree.children:
            return list(self.components())
        child_vecs = [self.elementary_differential(c) for c in tree.children]
        m = len(child_vecs)
        out = []
        for i in range(n):
            acc = Polynomial.zero(nv)
            for js in product(range(n), repeat=m):
                factor = self.partial(i, tuple(sorted(js)))
                if factor.is_zero():
                    continue
                for vec, j in zip(child_vecs, js):
                    factor = factor * vec[j]
                    if factor.is_zero():
                        break
                acc = acc + factor
            out.append(acc)
        return out

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "quadratic": [
                [i + 1, j + 1, k + 1, format_rat(v)]
                for (i, j, k), v in sorted(self.quadratic.items())
            ],
            "linear": [
                [i + 1, j + 1, format_rat(v)] for (i, j), v in sorted(self.linear.items())
            ],
            "constant": [[i + 1, format_rat(v)] for i, v in sorted(self.constant.items())],
        }

    @staticmethod
    def from_json(data: dict) -> "QuadraticVectorField":
        dim = data.get("dim")
        if not isinstance(dim, int) or dim < 1:
            raise ValueError("field JSON needs a positive integer 'dim'")
        quadratic, linear, constant = {}, {}, {}
        for entry in data.get("quadratic", []):
            i, j, k, v = entry
            if j > k:
                raise ValueError(f"quadratic entry {entry} violates j <= k")
            key = (i - 1, j - 1, k - 1)
            quadratic[key] = quadratic.get(key, ZERO) + parse_rat(v)
        for entry in data.get("linear", []):
            i, j, v = entry
            linear[(i - 1, j - 1)] = linear.get((i - 1, j - 1), ZERO) + parse_rat(v)
        for entry in data.get("constant", []):
            i, v = entry
            constant[i - 1] = constant.get(i - 1, ZERO) + parse_rat(v)
        return QuadraticVectorField(dim, quadratic, linear, constant)

    def __repr__(self):
        return f"QuadraticVectorField(dim={self.dim}, f={[str(p) for p in self.components()]})"


# ---------------------------------------------------------------------------
# polynomial matrices


def poly_mat_det(mat: list[list[Polynomial]]) -> Polynomial:
    n = len(mat)
    if n == 1:
        return mat[0][0]
    nv = mat[0][0].nvars
    det = Polynomial.zero(nv)
    for j in range(n):
        if mat[0][j].is_zero():
            continue
        minor = [[mat[r][c] for c in range(n) if c != j] for r in range(1, n)]
        term = mat[0][j] * poly_mat_det(minor)
        det = det + (term if j % 2 == 0 else -term)
    return det


def poly_mat_adjugate(mat: list[list[Polynomial]]) -> list[list[Polynomial]]:
    n = len(mat)
    nv = mat[0][0].nvars
    if n == 1:
        return [[Polynomial.const(nv, 1)]]
    adj = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [[mat[r][c] for c in range(n) if c != j] for r in range(n) if r != i]
            cof = poly_mat_det(minor)
            adj[j][i] = cof if (i + j) % 2 == 0 else -cof
    return adj


# ---------------------------------------------------------------------------
# the Kahan map


class KahanMap:
    """The Kahan update as an exact birational map.

    Phi_h(x)_i = numerators[i] / den  with  den = det(I - (h/2) f'(x)),
    numerators[i] = x_i * den + h * (adj(M) f(x))_i.  den at h = 0 equals 1.
    """

    def __init__(self, field: QuadraticVectorField):
        self.field = field
        n, nv = field.dim, field.nvars
        h = Polynomial.variable(nv, n)
        half_h = h * Rat(1, 2)
        jac = field.jacobian()
        M = [
            [
                (Polynomial.const(nv, 1) if i == j else Polynomial.zero(nv))
                - half_h * jac[i][j]
                for j in range(n)
            ]
            for i in range(n)
        ]
        self.den = poly_mat_det(M)
        self.adj = poly_mat_adjugate(M)
        comps = field.components()
        self.numerators = []
        for i in range(n):
            adj_f = Polynomial.zero(nv)
            for j in range(n):
                adj_f = adj_f + self.adj[i][j] * comps[j]
            self.numerators.append(Polynomial.variable(nv, i) * self.den + h * adj_f)
        self._n_plus: Polynomial | None = None
        self.subs_cache: dict = {}

    def n_plus(self) -> Polynomial:
        """det(I + (h/2) f'(x)) as a polynomial (the den with h negated)."""
        if self._n_plus is None:
            self._n_plus = self.den.subs_h_negated()
        return self._n_plus

    def as_rational_functions(self) -> list[RationalFunction]:
        return [RationalFunction(num, self.den) for num in self.numerators]

    def substitute(self, p: Polynomial, clear_power: int) -> Polynomial:
        """den**clear_power * p(Phi_h(x)) with the map's shared cache."""
        return rf_substitute(p, self.numerators, self.den, clear_power, self.subs_cache)

    def apply_point(self, xs, h):
        """Exact image of a rational point, or None when det(M) vanishes there."""
        field = self.field
        n = field.dim
        point = [Rat(v) for v in xs] + [Rat(h), ZERO]
        jac = field.jacobian()
        half_h = Rat(h) / 2
        M = [
            [
                (ONE if i == j else ZERO) - half_h * jac[i][j].evaluate(point)
                for j in range(n)
            ]
            for i in range(n)
        ]
        from .linalg import solve_linear_system

        fval = [field.component(i).evaluate(point) for i in range(n)]
        sol = solve_linear_system(M, fval)
        if sol is None:
            return None
        return [Rat(xs[i]) + Rat(h) * sol[i] for i in range(n)]

    def det_m_at(self, xs, h) -> Rat:
        point = [Rat(v) for v in xs] + [Rat(h), ZERO]
        return self.den.evaluate(point)

    def darboux_defect_cleared(self, P: Polynomial) -> Polynomial:
        """den^(D+1) * [N_{-h/2}(x) P(Phi_h(x)) - P(x) N_{h/2}(Phi_h(x))] / den
        with D = max(deg_x P, dim); the zero polynomial iff P solves the
        Darboux equation with cofactor det DPhi_h."""
        D = max(P.x_degree(), self.field.dim)
        return self.den * self.substitute(P, D) - P * self.substitute(self.n_plus(), D)

    def darboux_defect_series(self, P: Polynomial, order: int) -> list[Polynomial]:
        """h-expansion of N_{-h/2} P(Phi) - P N_{h/2}(Phi) through h^order."""
        D = max(P.x_degree(), self.field.dim)
        cleared = self.darboux_defect_cleared(P)
        return RationalFunction(cleared, self.den**D).series_in_h(order)

    def det_jacobian(self) -> RationalFunction:
        """det DPhi_h = det(I + (h/2) f'(Phi_h(x))) / det(I - (h/2) f'(x))."""
        n = self.field.dim
        cleared = self.substitute(self.n_plus(), n)
        return RationalFunction(cleared, self.den ** (n + 1))

    def symbolic_jacobian_det(self) -> RationalFunction:
        """det of the entrywise-differentiated map; cross-checks det_jacobian."""
        n = self.field.dim
        G = [
            [
                self.numerators[i].partial_derivative(j) * self.den
                - self.numerators[i] * self.den.partial_derivative(j)
                for j in range(n)
            ]
            for i in range(n)
        ]
        return RationalFunction(poly_mat_det(G), self.den ** (2 * n))


def kahan_map(field: QuadraticVectorField) -> KahanMap:
    return KahanMap(field)


def kahan_det_jacobian(field: QuadraticVectorField) -> RationalFunction:
    return KahanMap(field).det_jacobian()


def kahan_series(field: QuadraticVectorField, order: int) -> list[list[Polynomial]]:
    """h-expansion of the Kahan update: [x, f, (1/2)f'f, (1/4)(f')^2 f, ...].

    The h^k coefficient vector is 2^(1-k) (f')^(k-1) f for k >= 1.
    """
    if order < 0:
        raise ValueError("order must be nonnegative")
    n, nv = field.dim, field.nvars
    out = [[Polynomial.variable(nv, i) for i in range(n)]]
    if order == 0:
        return out
    jac = field.jacobian()
    current = list(field.components())
    out.append(current)
    for _ in range(2, order + 1):
        nxt = []
        for i in range(n):
            acc = Polynomial.zero(nv)
            for j in range(n):
                acc = acc + jac[i][j] * current[j]
            nxt.append(acc * Rat(1, 2))
        out.append(nxt)
        current = nxt
    return out


def affine_pullback(field: QuadraticVectorField, A, v=None) -> QuadraticVectorField:
    """(g . f)(x) = A^{-1} f(Ax + v), exact; raises on singular A."""
    n, nv = field.dim, field.nvars
    if v is None:
        v = [ZERO] * n
    A = [[Rat(x) for x in row] for row in A]
    Ainv = invert_rational_matrix(A)
    if Ainv is None:
        raise ValueError("affine pullback needs an invertible matrix")
    linear_forms = {
        j: sum(
            (Polynomial.variable(nv, l) * A[j][l] for l in range(n)),
            Polynomial.const(nv, v[j]),
        )
        for j in range(n)
    }
    substituted = [field.component(i).substitute_polynomials(linear_forms) for i in range(n)]
    new_components = [
        sum((substituted[j] * Ainv[i][j] for j in range(n)), Polynomial.zero(nv))
        for i in range(n)
    ]
    return QuadraticVectorField.from_polynomials(new_components)


def hamiltonian_field(J, H: Polynomial) -> QuadraticVectorField:
    """f = J grad H for a constant skew J and cubic polynomial H."""
    n = len(J)
    J = [[Rat(x) for x in row] for row in J]
    for i in range(n):
        for j in range(n):
            if J[i][j] != -J[j][i]:
                raise ValueError("Poisson matrix must be skew-symmetric")
    if H.nvars != n + 2:
        raise ValueError("Hamiltonian lives in the wrong variable universe")
    if H.x_degree() > 3 or H.degree_in(n) or H.degree_in(n + 1):
        raise ValueError("Hamiltonian must be a polynomial of degree <= 3 in x only")
    grad = [H.partial_derivative(j) for j in range(n)]
    comps = [
        sum((grad[j] * J[i][j] for j in range(n)), Polynomial.zero(n + 2)) for i in range(n)
    ]
    return QuadraticVectorField.from_polynomials(comps)


def modified_hamiltonian(J, H: Polynomial) -> RationalFunction:
    """The preserved integral H + (h/3) grad(H)^T (I - (h/2)f')^{-1} f.

    Only the canonical constant-Poisson case is accepted (J constant skew,
    H cubic); the returned rational function satisfies Ht o Phi_h = Ht.
    """
    field = hamiltonian_field(J, H)
    n, nv = field.dim, field.nvars
    kmap = KahanMap(field)
    h = Polynomial.variable(nv, n)
    grad = [H.partial_derivative(j) for j in range(n)]
    comps = field.components()
    acc = Polynomial.zero(nv)
    for i in range(n):
        adj_f = Polynomial.zero(nv)
        for j in range(n):
            adj_f = adj_f + kmap.adj[i][j] * comps[j]
        acc = acc + grad[i] * adj_f
    num = H * kmap.den + h * acc * Rat(1, 3)
    return RationalFunction(num, kmap.den)


def jacobian(field: QuadraticVectorField) -> list[list[Polynomial]]:
    return field.jacobian()


def divergence(field: QuadraticVectorField) -> Polynomial:
    return field.divergence()


def aroma_function(field: QuadraticVectorField, arg) -> Polynomial:
    return field.aroma_function(arg)


def elementary_differential(field: QuadraticVectorField, tree: RootedTree):
    return field.elementary_differential(tree)
