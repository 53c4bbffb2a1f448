"""Order-by-order formal deformations of a Rota-Baxter pre-Lie algebra.

A truncated deformation of (g, μ, T) is a pair of coefficient lists
μ₀..μ_N (bilinear maps g⊗g → g) and T₀..T_N (operators), with μ₀, T₀ the
base structure.  Coefficients live in the complexes with coefficients in
the regular Rota-Baxter bimodule.

The order-n conditions are the t^n coefficients of the pre-Lie identity
and of the weighted Rota-Baxter law for μ_t = Σ μᵢtⁱ, T_t = Σ Tᵢtⁱ.  Note
the weight λ multiplies the ``Σ Tᵢ∘μⱼ`` sum in the operator condition at
every order, exactly as it does at order zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebras import (
    InvalidStructureError,
    ProductTable,
    RBPreLieAlgebra,
    Verdict,
    Violation,
    regular_bimodule,
    zero_table,
)
from .cochains import (
    Cochain,
    RBACochain,
    bilinear_from_cochain,
    cochain_from_bilinear,
    cochain_from_matrix,
    matrix_from_cochain,
)
from .complexes import ComplexKind, differential_matrix, rbo_differential
from .linalg import (
    RationalMatrix,
    Vector,
    column_space,
    is_zero_vector,
    solve_linear,
    vadd,
    vscale,
    vsub,
    zero_vector,
)


class DeformationError(ValueError):
    """Raised when an operation's validity precondition fails."""

    def __init__(self, message: str, violations: tuple[Violation, ...] = ()):
        super().__init__(message)
        self.violations = violations


def apply_table(table: ProductTable, x: Sequence, y: Sequence, out_dim: int) -> Vector:
    out = [Fraction(0)] * out_dim
    for i, xi in enumerate(x):
        if xi == 0:
            continue
        for j, yj in enumerate(y):
            if yj == 0:
                continue
            coeff = xi * yj
            for k, ck in enumerate(table[i][j]):
                if ck != 0:
                    out[k] += coeff * ck
    return tuple(out)


def _table_is_zero(table: ProductTable) -> bool:
    return all(is_zero_vector(v) for row in table for v in row)


@dataclass(frozen=True)
class TruncatedDeformation:
    base: RBPreLieAlgebra
    products: tuple[ProductTable, ...]  # index n holds μ_n
    operators: tuple[RationalMatrix, ...]  # index n holds T_n

    def __post_init__(self) -> None:
        if len(self.products) != len(self.operators) or not self.products:
            raise ValueError("need matching μ and T coefficient lists, including order 0")
        if self.products[0] != self.base.algebra.c:
            raise InvalidStructureError("order-0 product does not match the base product")
        if self.operators[0] != self.base.operator:
            raise InvalidStructureError("order-0 operator does not match the base operator")
        d = self.base.dim
        for table in self.products:
            if len(table) != d or any(
                len(row) != d or any(len(v) != d for v in row) for row in table
            ):
                raise ValueError("product coefficient table has wrong shape")
        for op in self.operators:
            if (op.rows, op.cols) != (d, d):
                raise ValueError("operator coefficient has wrong shape")

    @property
    def order(self) -> int:
        return len(self.products) - 1


def trivial_deformation(r: RBPreLieAlgebra, order: int) -> TruncatedDeformation:
    d = r.dim
    products = (r.algebra.c,) + tuple(zero_table(d, d, d) for _ in range(order))
    operators = (r.operator,) + tuple(RationalMatrix.zeros(d, d) for _ in range(order))
    return TruncatedDeformation(r, products, operators)


@dataclass(frozen=True)
class DeformationVerdict:
    ok: bool
    orders: tuple[Verdict, ...]  # index n = verdict for the order-n conditions

    def __bool__(self) -> bool:
        return self.ok

    def first_bad_order(self) -> int | None:
        for n, v in enumerate(self.orders):
            if not v.ok:
                return n
        return None


def check_deformation(r: RBPreLieAlgebra, d: TruncatedDeformation) -> DeformationVerdict:
    """The order-n product and operator conditions for every n ≤ order."""
    if d.base != r:
        raise ValueError("deformation was built over a different base structure")
    dim = r.dim
    lam = r.weight
    mus, ts = d.products, d.operators
    basis = [r.algebra.basis_vector(i) for i in range(dim)]
    per_order = []
    for n in range(d.order + 1):
        bad: list[Violation] = []
        for i in range(dim):
            for j in range(dim):
                for k in range(dim):
                    defect = zero_vector(dim)
                    for a in range(n + 1):
                        mu_a, mu_b = mus[a], mus[n - a]
                        lhs = vsub(
                            apply_table(mu_a, apply_table(mu_b, basis[i], basis[j], dim), basis[k], dim),
                            apply_table(mu_a, basis[i], apply_table(mu_b, basis[j], basis[k], dim), dim),
                        )
                        rhs = vsub(
                            apply_table(mu_a, apply_table(mu_b, basis[j], basis[i], dim), basis[k], dim),
                            apply_table(mu_a, basis[j], apply_table(mu_b, basis[i], basis[k], dim), dim),
                        )
                        defect = vadd(defect, vsub(lhs, rhs))
                    if not is_zero_vector(defect):
                        bad.append(Violation(f"deform_product_order_{n}", (i + 1, j + 1, k + 1), defect))
        for i in range(dim):
            for j in range(dim):
                defect = zero_vector(dim)
                for a in range(n + 1):
                    for b in range(n + 1 - a):
                        c = n - a - b
                        ta_i = ts[b].col(i)
                        tc_j = ts[c].col(j)
                        defect = vadd(defect, apply_table(mus[a], ta_i, tc_j, dim))
                        defect = vsub(
                            defect,
                            ts[a].apply(apply_table(mus[b], basis[i], ts[c].col(j), dim)),
                        )
                        defect = vsub(
                            defect,
                            ts[a].apply(apply_table(mus[b], ts[c].col(i), basis[j], dim)),
                        )
                for a in range(n + 1):
                    defect = vsub(
                        defect,
                        vscale(lam, ts[a].apply(apply_table(mus[n - a], basis[i], basis[j], dim))),
                    )
                if not is_zero_vector(defect):
                    bad.append(Violation(f"deform_operator_order_{n}", (i + 1, j + 1), defect))
        per_order.append(Verdict(ok=not bad, violations=tuple(bad)))
    return DeformationVerdict(all(v.ok for v in per_order), tuple(per_order))


@dataclass(frozen=True)
class InfinitesimalResult:
    cochain: RBACochain  # degree-2 pair (μ₁, T₁)
    is_cocycle: bool
    defect: RBACochain  # its combined-complex coboundary


def infinitesimal(r: RBPreLieAlgebra, d: TruncatedDeformation) -> InfinitesimalResult:
    if d.order < 1:
        raise DeformationError("deformation has no order-1 coefficients")
    verdict = check_deformation(r, d)
    bad = verdict.orders[1]
    if not bad.ok:
        raise DeformationError("deformation is invalid at order 1", bad.violations)
    pair = RBACochain(
        cochain_from_bilinear(d.products[1], r.dim), cochain_from_matrix(d.operators[1])
    )
    from .complexes import rba_differential

    defect = rba_differential(r, regular_bimodule(r), pair, trusted=True)
    return InfinitesimalResult(pair, defect.is_zero(), defect)


@dataclass(frozen=True)
class GaugeSeries:
    maps: tuple[RationalMatrix, ...]  # maps[0] must be the identity

    def __post_init__(self) -> None:
        if not self.maps:
            raise ValueError("gauge series needs at least the order-0 map")
        n = self.maps[0].rows
        if self.maps[0] != RationalMatrix.identity(n):
            raise ValueError("gauge series must start at the identity")
        for mat in self.maps:
            if (mat.rows, mat.cols) != (n, n):
                raise ValueError("gauge coefficients must be square of one size")

    @property
    def order(self) -> int:
        return len(self.maps) - 1


def identity_gauge(dim: int, order: int) -> GaugeSeries:
    return GaugeSeries(
        (RationalMatrix.identity(dim),) + tuple(RationalMatrix.zeros(dim, dim) for _ in range(order))
    )


def series_inverse(maps: Sequence[RationalMatrix], order: int) -> list[RationalMatrix]:
    """Coefficients of the multiplicative inverse of a series with unit head."""
    dim = maps[0].rows
    eta = [RationalMatrix.identity(dim)]
    for n in range(1, order + 1):
        acc = RationalMatrix.zeros(dim, dim)
        for i in range(n):
            psi_coeff = maps[n - i] if n - i < len(maps) else RationalMatrix.zeros(dim, dim)
            acc = acc.add(eta[i].matmul(psi_coeff))
        eta.append(acc.scale(Fraction(-1)))
    return eta


def series_compose(first: GaugeSeries, second: GaugeSeries, order: int) -> GaugeSeries:
    """Coefficients of the composite series t ↦ first_t ∘ second_t."""
    dim = first.maps[0].rows
    out = []
    for n in range(order + 1):
        acc = RationalMatrix.zeros(dim, dim)
        for i in range(n + 1):
            a = first.maps[i] if i < len(first.maps) else None
            b = second.maps[n - i] if n - i < len(second.maps) else None
            if a is not None and b is not None:
                acc = acc.add(a.matmul(b))
        out.append(acc)
    return GaugeSeries(tuple(out))


def gauge_transform(
    r: RBPreLieAlgebra, d: TruncatedDeformation, psi: GaugeSeries
) -> TruncatedDeformation:
    """The deformation (ψ_t⁻¹∘μ_t∘(ψ_t⊗ψ_t), ψ_t⁻¹∘T_t∘ψ_t), truncated."""
    if psi.order < d.order:
        raise ValueError("gauge series must reach the deformation order")
    dim = r.dim
    n_max = d.order
    eta = series_inverse(psi.maps, n_max)
    zero = RationalMatrix.zeros(dim, dim)

    def psi_at(k: int) -> RationalMatrix:
        return psi.maps[k] if k < len(psi.maps) else zero

    new_products = []
    new_operators = []
    for n in range(n_max + 1):
        table = [[zero_vector(dim) for _ in range(dim)] for _ in range(dim)]
        for a in range(n + 1):
            for b in range(n + 1 - a):
                for i in range(n + 1 - a - b):
                    j = n - a - b - i
                    mu_b = d.products[b]
                    for p in range(dim):
                        xp = psi_at(i).col(p)
                        for q in range(dim):
                            yq = psi_at(j).col(q)
                            val = eta[a].apply(apply_table(mu_b, xp, yq, dim))
                            table[p][q] = vadd(table[p][q], val)
        new_products.append(tuple(tuple(row) for row in table))
        op = RationalMatrix.zeros(dim, dim)
        for a in range(n + 1):
            for b in range(n + 1 - a):
                i = n - a - b
                op = op.add(eta[a].matmul(d.operators[b]).matmul(psi_at(i)))
        new_operators.append(op)
    return TruncatedDeformation(r, tuple(new_products), tuple(new_operators))


@dataclass(frozen=True)
class Obstruction:
    """Residue of a target outside the image of a differential, expressed on
    the non-pivot coordinates of the eliminated image."""

    residual: tuple[tuple[int, Fraction], ...]
    rhs_is_cocycle: bool | None = None


@dataclass(frozen=True)
class SolveNextOrderResult:
    order: int
    solution: tuple[ProductTable, RationalMatrix] | None
    extended: TruncatedDeformation | None
    obstruction: Obstruction | None


def solve_next_order(r: RBPreLieAlgebra, d: TruncatedDeformation) -> SolveNextOrderResult:
    """Assemble the order-n right-hand sides from lower orders and solve the
    degree-2 coboundary equation for (μ_n, T_n); n = d.order + 1."""
    verdict = check_deformation(r, d)
    if not verdict.ok:
        raise DeformationError(
            f"lower orders invalid (first bad order {verdict.first_bad_order()})"
        )
    n = d.order + 1
    dim = r.dim
    lam = r.weight
    reg = regular_bimodule(r)
    basis = [r.algebra.basis_vector(i) for i in range(dim)]
    mus, ts = d.products, d.operators

    # product-side right-hand side, a skew degree-3 value on (a∧b)⊗c
    rhs7_vals = {}
    for i in range(dim):
        for j in range(i + 1, dim):
            for k in range(dim):
                val = zero_vector(dim)
                for a in range(1, n):
                    mu_a, mu_b = mus[a], mus[n - a]
                    val = vadd(
                        val,
                        vsub(
                            apply_table(mu_a, apply_table(mu_b, basis[i], basis[j], dim), basis[k], dim),
                            apply_table(mu_a, basis[i], apply_table(mu_b, basis[j], basis[k], dim), dim),
                        ),
                    )
                    val = vsub(
                        val,
                        vsub(
                            apply_table(mu_a, apply_table(mu_b, basis[j], basis[i], dim), basis[k], dim),
                            apply_table(mu_a, basis[j], apply_table(mu_b, basis[i], basis[k], dim), dim),
                        ),
                    )
                rhs7_vals[(i, j, k)] = val
    rhs7 = Cochain(3, dim, dim, rhs7_vals)

    # operator-side right-hand side, bilinear; note the overall sign and the
    # weight factor are forced by splitting the order-n coefficient of the
    # operator law into its index-n and lower-index parts
    rhs8_vals = {}
    for i in range(dim):
        for j in range(dim):
            val = zero_vector(dim)
            for a in range(n + 1):
                for b in range(n + 1 - a):
                    c = n - a - b
                    if a > n - 1 or b > n - 1 or c > n - 1:
                        continue
                    val = vsub(val, apply_table(mus[a], ts[b].col(i), ts[c].col(j), dim))
                    val = vadd(val, ts[a].apply(apply_table(mus[b], basis[i], ts[c].col(j), dim)))
                    val = vadd(val, ts[a].apply(apply_table(mus[b], ts[c].col(i), basis[j], dim)))
            for a in range(1, n):
                val = vadd(
                    val, vscale(lam, ts[a].apply(apply_table(mus[n - a], basis[i], basis[j], dim)))
                )
            rhs8_vals[(i, j)] = val
    rhs8 = Cochain(2, dim, dim, rhs8_vals)

    target = RBACochain(rhs7, rhs8.scale(Fraction(-1)))
    d2 = differential_matrix(ComplexKind.RBA, r, reg, 2)
    x = solve_linear(d2, target.coords())
    if x is None:
        image = column_space(d2)
        residual = image.reduce(target.coords())
        d3 = differential_matrix(ComplexKind.RBA, r, reg, 3)
        is_cocycle = is_zero_vector(d3.apply(target.coords()))
        coords = tuple((idx, v) for idx, v in enumerate(residual) if v != 0)
        return SolveNextOrderResult(n, None, None, Obstruction(coords, is_cocycle))
    pair = RBACochain.from_coords(2, dim, dim, x)
    mu_n = bilinear_from_cochain(pair.pla_part)
    t_n = matrix_from_cochain(pair.rbo_part)
    extended = TruncatedDeformation(r, d.products + (mu_n,), d.operators + (t_n,))
    return SolveNextOrderResult(n, (mu_n, t_n), extended, None)


@dataclass(frozen=True)
class TrivializeResult:
    gauge: GaugeSeries | None
    obstruction_order: int | None = None
    obstruction: Obstruction | None = None

    @property
    def ok(self) -> bool:
        return self.gauge is not None


def trivialize(r: RBPreLieAlgebra, d: TruncatedDeformation) -> TrivializeResult:
    """Kill the coefficients order by order with degree-1 corrections.

    At order k the pair (μ_k, T_k) of the current deformation is a
    degree-2 cocycle; we solve the degree-1 coboundary equation for a
    correction and gauge by (Id − ψ_k t^k).  Returns the composed gauge
    series, or the residue class of the first order that cannot be killed.
    """
    verdict = check_deformation(r, d)
    if not verdict.ok:
        raise DeformationError(
            f"deformation invalid at order {verdict.first_bad_order()}"
        )
    dim = r.dim
    reg = regular_bimodule(r)
    d1 = differential_matrix(ComplexKind.RBA, r, reg, 1)
    n_max = d.order
    current = d
    total = identity_gauge(dim, n_max)
    for k in range(1, n_max + 1):
        mu_k, t_k = current.products[k], current.operators[k]
        if _table_is_zero(mu_k) and t_k.is_zero():
            continue
        target = RBACochain(cochain_from_bilinear(mu_k, dim), cochain_from_matrix(t_k))
        y = solve_linear(d1, target.coords())
        if y is None:
            image = column_space(d1)
            residual = image.reduce(target.coords())
            coords = tuple((idx, v) for idx, v in enumerate(residual) if v != 0)
            return TrivializeResult(None, k, Obstruction(coords))
        correction = RBACochain.from_coords(1, dim, dim, y)
        psi_k = matrix_from_cochain(correction.pla_part)
        step_maps = [RationalMatrix.identity(dim)]
        for pos in range(1, n_max + 1):
            step_maps.append(
                psi_k.scale(Fraction(-1)) if pos == k else RationalMatrix.zeros(dim, dim)
            )
        step = GaugeSeries(tuple(step_maps))
        current = gauge_transform(r, current, step)
        total = series_compose(total, step, n_max)
    return TrivializeResult(total)


def rbo_cocycle_check(r: RBPreLieAlgebra, t1: RationalMatrix, *, trusted: bool = False) -> Verdict:
    """Is t1, read as a degree-1 operator cochain over the regular module,
    closed under the operator-complex coboundary?"""
    if (t1.rows, t1.cols) != (r.dim, r.dim):
        raise ValueError("candidate must be square of the algebra dimension")
    reg = regular_bimodule(r)
    g = cochain_from_matrix(t1)
    result = rbo_differential(r, reg, g, trusted=trusted)
    bad = tuple(
        Violation("rbo_cocycle", tuple(i + 1 for i in key), val)
        for key, val in sorted(result.values.items())
    )
    return Verdict(ok=not bad, violations=bad)
