"""
Eigensolver for Green Operators

Dirichlet eigenvalues of the ball are reciprocals of the eigenvalues of its
(compact, positive) Green operator. Power iteration on the Green operator:
- renormalizes every step and records 𝒯^k = ‖G^k f‖/‖G^{k+1} f‖
- re-orthogonalizes against previously found eigenfunctions (deflation basis)
- declares convergence when the ratio settles AND the eigen-residual is small

Higher eigenvalues come from the deflation chain f ↦ f - λ G(f), which kills
the λ-component of the start vector.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Protocol, Sequence

import numpy as np

from spectral_green.exceptions import ConsistencyError, DegenerateStartError, DomainError
from spectral_green.geometry.ball import BallGeometry
from spectral_green.models.spectral_models import (
    AssembledSpectrum,
    ConvergenceTable,
    EigenPair,
    MultiplicityMode,
    SolveConfig,
    SpectrumEntry,
)
from spectral_green.operators.green import EuclidKernelL, RadialGreenKernel
from spectral_green.utils.quadrature import (
    RadialFunction,
    RadialGrid,
    check_same_grid,
    weighted_inner,
    weighted_norm,
)

logger = logging.getLogger(__name__)

DEGENERATE_START_TOL = 1e-14
DEFAULT_TABLE_ORDERS = (1, 2, 3, 9)


class GreenOperator(Protocol):
    grid: RadialGrid

    def apply(self, f: RadialFunction) -> RadialFunction: ...


def _project_out(f: RadialFunction, basis: Sequence[EigenPair]) -> RadialFunction:
    """Modified Gram-Schmidt against unit-norm eigenfunctions."""
    out = f
    for pair in basis:
        e = pair.eigenfunction
        out = out - weighted_inner(out, e) * e
    return out


def _fix_sign(u: RadialFunction) -> RadialFunction:
    """Make the first significant sample (u(0) for radial modes) positive."""
    values = u.values
    scale = float(np.max(np.abs(values)))
    if scale == 0.0:
        return u
    first = int(np.argmax(np.abs(values) > 1e-8 * scale))
    return -u if values[first] < 0 else u


def power_iterate(
    G: GreenOperator,
    f0: RadialFunction,
    config: SolveConfig,
    deflation_basis: Sequence[EigenPair] = (),
    min_iterations: int = 2,
) -> EigenPair:
    """
    Dominant eigenpair of G restricted to the complement of deflation_basis.

    Args:
        G: Green operator (anything with .grid and .apply)
        f0: Start vector; must keep a component outside deflation_basis
        config: Tolerance, iteration cap and grid size
        deflation_basis: Eigenpairs already found, projected out each step
        min_iterations: Iterations run before the ratio test may stop

    Returns:
        EigenPair with eigenvalue 1/μ of -L (μ the eigenvalue of G), ratio
        history 𝒯^1..𝒯^k and a unit-norm eigenfunction. Non-convergence
        within max_iter is reported with converged=False.

    Raises:
        DegenerateStartError: projection annihilated the start vector
    """
    check_same_grid(G.grid.ones(), f0)
    start_norm = weighted_norm(f0)
    u = _project_out(f0, deflation_basis)
    norm = weighted_norm(u)
    if start_norm == 0.0 or norm <= DEGENERATE_START_TOL * start_norm:
        raise DegenerateStartError(
            f"Start vector has no component outside the deflation basis (‖Pf‖={norm:.3e}, ‖f‖={start_norm:.3e})"
        )
    u = u / norm

    tol = config.tol
    ratios: List[float] = []
    converged = False
    iterations = 0
    for iterations in range(1, config.max_iter + 1):
        w = G.apply(u)
        if deflation_basis and iterations % config.reproject_every == 0:
            w = _project_out(w, deflation_basis)
        w_norm = weighted_norm(w)
        if w_norm == 0.0:
            raise DegenerateStartError("Green operator annihilated the iterate")

        ratio = 1.0 / w_norm
        ratios.append(ratio)
        nxt = w / w_norm
        # ‖PG(u) - u/λ‖ / ‖u/λ‖ with λ = ratio
        step_residual = weighted_norm(nxt - u)
        u = nxt

        if iterations >= max(2, min_iterations):
            change = abs(ratio - ratios[-2]) / ratio
            logger.debug(f"iter {iterations}: ratio={ratio:.15g} change={change:.3e} residual={step_residual:.3e}")
            if change < tol and step_residual <= tol:
                converged = True
                break

    eigenvalue = ratios[-1]
    u = _fix_sign(u)
    residual = weighted_norm(eigenvalue * G.apply(u) - u)

    if converged:
        logger.info(f"✓ λ={eigenvalue:.12g} after {iterations} iterations (residual {residual:.2e})")
    else:
        logger.warning(f"⚠️ Power iteration not converged after {iterations} iterations (λ≈{eigenvalue:.12g})")

    return EigenPair(
        eigenvalue=eigenvalue,
        eigenfunction=u,
        residual=residual,
        iterations=iterations,
        converged=converged,
        # ratios[0] = ‖f‖/‖G f‖ is 𝒯^0
        ratio_history=ratios[1:],
    )


def deflate(f: RadialFunction, lam: float, G: GreenOperator) -> RadialFunction:
    """f - λ G(f): removes the λ-eigencomponent of f."""
    return f - lam * G.apply(f)


def _deflation_chain(G: GreenOperator, f0: RadialFunction, count: int, config: SolveConfig, label: str) -> List[EigenPair]:
    if count < 1:
        raise DomainError(f"Eigenvalue count must be >= 1, got {count}")

    pairs: List[EigenPair] = []
    f = f0
    for k in range(count):
        pair = power_iterate(G, f, config, pairs)
        if pairs and not pair.eigenvalue > pairs[-1].eigenvalue:
            raise ConsistencyError(
                f"{label}: eigenvalue {k + 1} ({pair.eigenvalue:.12g}) does not exceed eigenvalue {k} ({pairs[-1].eigenvalue:.12g})"
            )
        pairs.append(pair)
        f = deflate(f, pair.eigenvalue, G)
    return pairs


def radial_spectrum(geom: BallGeometry, count: int, config: Optional[SolveConfig] = None) -> List[EigenPair]:
    """
    First `count` radial Dirichlet eigenpairs, start vector f ≡ 1.

    Args:
        geom: Ball of a model manifold
        count: Number of eigenpairs, found in increasing order by deflation
        config: Solver settings (defaults to SolveConfig())

    Returns:
        List of EigenPair with ascending eigenvalues
    """
    config = config or SolveConfig()
    G = RadialGreenKernel(geom, config.grid_size)
    logger.info(f"Radial spectrum: m={geom.dim} r={geom.radius:g} {geom.warping.family.value}, {count} eigenvalues")
    return _deflation_chain(G, G.grid.ones(), count, config, "radial spectrum")


def l_spectrum_euclid(m: int, r: float, l: int, count: int, config: Optional[SolveConfig] = None) -> List[EigenPair]:
    """First `count` eigenpairs of -L_l on the Euclidean ball, start vector t^l (r - t)."""
    config = config or SolveConfig()
    G = EuclidKernelL(l, m, r, config.grid_size)
    f0 = G.grid.sample(lambda t: t ** l * (r - t))
    return _deflation_chain(G, f0, count, config, f"l={l} spectrum")


def assemble_spectrum(
    m: int,
    r: float,
    l_max: int,
    i_max: int,
    mode: MultiplicityMode = MultiplicityMode.PAPER,
    config: Optional[SolveConfig] = None,
    workers: int = 1,
) -> AssembledSpectrum:
    """
    λ_{l,i} for l ≤ l_max, i ≤ i_max with multiplicities, sorted by eigenvalue.

    Σ δ/λ² is accumulated together with the closed-form remainders per l and
    the bound for l > l_max. Results do not depend on `workers`.
    """
    from spectral_green.services.series import delta_multiplicity, euclid_sum_l, whole_spectrum_sum_sq

    if l_max < 0 or i_max < 1:
        raise DomainError(f"Need l_max >= 0 and i_max >= 1, got l_max={l_max}, i_max={i_max}")
    config = config or SolveConfig()
    orders = list(range(l_max + 1))

    def solve(l: int) -> List[EigenPair]:
        return l_spectrum_euclid(m, r, l, i_max, config)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            per_order = list(pool.map(solve, orders))
    else:
        per_order = [solve(l) for l in orders]

    entries: List[SpectrumEntry] = []
    partial, within = 0.0, 0.0
    for l, pairs in zip(orders, per_order):
        delta = delta_multiplicity(l, m, mode)
        inverse_sq = 0.0
        for i, pair in enumerate(pairs, start=1):
            entries.append(SpectrumEntry(l=l, index=i, eigenvalue=pair.eigenvalue, multiplicity=delta, converged=pair.converged))
            inverse_sq += 1.0 / pair.eigenvalue ** 2
        partial += delta * inverse_sq
        within += delta * (euclid_sum_l(m, r, l, 2) - inverse_sq)

    entries.sort(key=lambda e: (e.eigenvalue, e.l, e.index))
    whole = whole_spectrum_sum_sq(m, r, mode, l_max)
    return AssembledSpectrum(
        mode=mode,
        l_max=l_max,
        i_max=i_max,
        entries=entries,
        partial_sum_sq=partial,
        tail_within_l_max=within,
        tail_beyond_l_max=whole.tail_bound,
        closed_form=whole.closed_form,
    )


def convergence_table(
    geom: BallGeometry,
    columns: int = 3,
    orders: Sequence[int] = DEFAULT_TABLE_ORDERS,
    config: Optional[SolveConfig] = None,
) -> ConvergenceTable:
    """𝒯^j(φ_i) for φ_0 = 1 and the deflation chain φ_i = φ_{i-1} - λ_{i-1} T(φ_{i-1})."""
    if not orders or min(orders) < 1:
        raise DomainError(f"Table orders must be positive, got {list(orders)}")
    config = config or SolveConfig()
    if max(orders) + 1 > config.max_iter:
        raise DomainError(f"Order {max(orders)} needs more than max_iter={config.max_iter} iterations")

    G = RadialGreenKernel(geom, config.grid_size)
    f = G.grid.ones()
    pairs: List[EigenPair] = []
    table: List[List[float]] = []
    for _ in range(columns):
        pair = power_iterate(G, f, config, pairs, min_iterations=max(orders) + 1)
        table.append([pair.ratio_history[j - 1] for j in orders])
        pairs.append(pair)
        f = deflate(f, pair.eigenvalue, G)

    return ConvergenceTable(orders=list(orders), columns=table, eigenvalues=[p.eigenvalue for p in pairs])


if __name__ == "__main__":
    from spectral_green.geometry.warping import WarpingFunction

    logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(name)s - %(levelname)s - %(message)s')

    print("\n" + "=" * 70)
    print("EIGENSOLVE - CLI Testing (unit disk)")
    print("=" * 70)

    disk = BallGeometry(2, 1.0, WarpingFunction.euclidean())
    result = convergence_table(disk)
    for j, order in enumerate(result.orders):
        row = "  ".join(f"{col[j]:12.6f}" for col in result.columns)
        print(f"T^{order}: {row}")
    print("λ:   " + "  ".join(f"{lam:12.6f}" for lam in result.eigenvalues))
