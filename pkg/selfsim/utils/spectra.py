from __future__ import annotations

import math

import numpy as np
import retrying

from selfsim.config import logger, settings
from selfsim.exceptions import (
    ConvergenceError,
    InvalidDefinition,
    PoleProximityError,
    SingularMatrixError,
    UsageError,
)
from selfsim.models import RecursionCheck, RecursionSample, Spectrum
from selfsim.utils.groups import Element, GroupDef, act_level, check_level, symmetrize


class SymMatrix:
    """Real symmetric matrix; symmetry is checked exactly on construction."""

    def __init__(self, values):
        array = np.array(values, dtype=float)
        if array.ndim != 2 or array.shape[0] != array.shape[1]:
            raise InvalidDefinition(f"expected a square matrix, got shape {array.shape}")
        if not np.array_equal(array, array.T):
            raise InvalidDefinition("matrix is not symmetric")
        self.values = array

    @property
    def dim(self) -> int:
        return self.values.shape[0]


def permutation_matrix(perm) -> np.ndarray:
    n = len(perm)
    p = np.zeros((n, n))
    p[np.arange(n), np.asarray(perm)] = 1.0
    return p


def hecke_matrix(group: GroupDef, gens=None, n: int = 1, normalized: bool = True, bound: int | None = None) -> SymMatrix:
    """Sum of the level-n permutation matrices over the symmetrized generating set."""
    check_level(group, n, bound)
    elements = None if gens is None else [g if isinstance(g, Element) else _named(group, g) for g in gens]
    steps = symmetrize(group, elements)
    size = group.degree ** n
    m = np.zeros((size, size))
    for _, e in steps:
        perm = act_level(e, n, bound)
        m[np.arange(size), np.asarray(perm)] += 1.0
    if normalized:
        m /= len(steps)
    return SymMatrix(m)


def _named(group: GroupDef, name: str) -> Element:
    if name not in group.generators:
        raise UsageError(f"unknown generator {name!r} for {group.name}")
    return Element(group, (group.generators.index(name),))


def _off_norm(a: np.ndarray) -> float:
    return math.sqrt(max(float(np.sum(a * a) - np.sum(np.diag(a) ** 2)), 0.0))


def _group_values(values: list[float], tol: float) -> tuple[list[float], list[int]]:
    gap = max(1e3 * tol, 1e-9)
    distinct, counts, bucket = [], [], []
    for v in sorted(values):
        if bucket and v - bucket[-1] > gap:
            distinct.append(sum(bucket) / len(bucket))
            counts.append(len(bucket))
            bucket = []
        bucket.append(v)
    if bucket:
        distinct.append(sum(bucket) / len(bucket))
        counts.append(len(bucket))
    return distinct, counts


def eigenvalues_sym(m: SymMatrix, tol: float | None = None, sweeps: int | None = None) -> Spectrum:
    """Cyclic Jacobi rotations until the off-diagonal Frobenius norm drops below tol."""
    tol = tol or settings.TOLERANCE
    sweeps = sweeps or settings.JACOBI_SWEEPS
    a = m.values.copy()
    n = m.dim
    for sweep in range(sweeps):
        if _off_norm(a) < tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) < 1e-300:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                col_p, col_q = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p, row_q = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = a[q, p] = 0.0
    else:
        residual = _off_norm(a)
        if residual >= tol:
            raise ConvergenceError(f"Jacobi did not converge in {sweeps} sweeps, residual {residual:.3e}")
    logger.debug(f"Jacobi on dimension {n} finished after {sweep} sweeps")
    distinct, counts = _group_values([float(x) for x in np.diag(a)], tol)
    return Spectrum(values=distinct, multiplicities=counts, tolerance=tol, dimension=n)


def determinant(m) -> float:
    """LU with partial pivoting."""
    a = np.array(m.values if isinstance(m, SymMatrix) else m, dtype=float)
    n = a.shape[0]
    det = 1.0
    for k in range(n):
        pivot = k + int(np.argmax(np.abs(a[k:, k])))
        if abs(a[pivot, k]) < 1e-300:
            raise SingularMatrixError(f"zero pivot in column {k}")
        if pivot != k:
            a[[k, pivot]] = a[[pivot, k]]
            det = -det
        det *= a[k, k]
        a[k + 1:, k:] -= np.outer(a[k + 1:, k] / a[k, k], a[k, k:])
    return float(det)


def fg_spectrum_closed(n: int) -> Spectrum:
    """Distinct eigenvalues of the unnormalized level-n Laplacian sum for the Fabrykowski-Gupta group."""
    if n < 0:
        raise UsageError("level must be nonnegative")
    values = {4.0}
    if n >= 1:
        values.add(1.0)
    layer = [-1.0]
    for m in range(2, n + 1):
        if m > 2:
            layer = [-1.0 + sign * math.sqrt(5.0 - c) for c in layer for sign in (1.0, -1.0)]
        values.update(1.0 + sign * math.sqrt(5.0 - theta) for theta in layer for sign in (1.0, -1.0))
    return Spectrum(values=sorted(values), multiplicities=None, tolerance=0.0, dimension=3 ** n)


# --- determinant recursions ---------------------------------------------------

def _near_pole(*values: float, eps: float = 1e-2) -> bool:
    return any(abs(v) < eps for v in values)


def _two_generators(group: GroupDef, degree: int) -> tuple[Element, Element]:
    if group.degree != degree or len(group.generators) < 2:
        raise UsageError(f"{group.name} is not a {degree}-ary group with two generators")
    return Element(group, (0,)), Element(group, (1,))


def fg_pencil(group: GroupDef, n: int, lam: float, mu: float) -> np.ndarray:
    """Q_n = S_n + lam A_n - mu I for the Fabrykowski-Gupta generators a, s."""
    gen_a, gen_s = _two_generators(group, 3)
    a = permutation_matrix(act_level(gen_a, n))
    s = permutation_matrix(act_level(gen_s, n))
    return (s + s.T) + lam * (a + a.T) - mu * np.eye(3 ** n)


def fg_detq_closed(n: int, lam: float, mu: float) -> float:
    """det Q_n through the renormalization recursion down to level 1."""
    if n == 0:
        return 2 + 2 * lam - mu
    if n == 1:
        return (2 + 2 * lam - mu) * (2 - lam - mu) ** 2
    alpha = 2 - mu + lam
    beta = 2 - mu - lam
    gamma = mu * mu - lam * lam - mu - 2
    delta = mu * mu - lam * lam - 2 * mu - lam
    if _near_pole(alpha, gamma):
        raise PoleProximityError(f"renormalization pole near lambda={lam}, mu={mu}")
    prefactor = (alpha * beta * gamma * gamma) ** (3 ** (n - 2))
    return prefactor * fg_detq_closed(
        n - 1, lam * lam * beta / (alpha * gamma), mu + 2 * lam * lam * delta / (alpha * gamma)
    )


def _relative_error(x: float, y: float) -> float:
    return abs(x - y) / max(abs(x), abs(y), 1e-300)


def _draw(rng: np.random.Generator, low: int, high: int) -> float:
    return int(rng.integers(low, high)) / 16.0


@retrying.retry(
    stop_max_attempt_number=settings.RESAMPLE_CAP,
    retry_on_exception=lambda e: isinstance(e, (PoleProximityError, SingularMatrixError)),
)
def _fg_sample(group: GroupDef, rng: np.random.Generator, n: int) -> RecursionSample:
    lam, mu = _draw(rng, 4, 48), _draw(rng, -64, 96)
    # det Q_0 = 2 + 2 lam - mu and det Q_1 = (2 + 2 lam - mu)(2 - lam - mu)^2
    base = max(_relative_error(determinant(fg_pencil(group, m, lam, mu)), fg_detq_closed(m, lam, mu)) for m in (0, 1))
    direct = determinant(fg_pencil(group, n, lam, mu))
    recursive = fg_detq_closed(n, lam, mu)
    if _near_pole(direct, recursive, eps=1e-200):
        raise PoleProximityError("sample lies on the spectrum")
    return RecursionSample(point=[lam, mu], direct=direct, recursive=recursive,
                           relative_error=_relative_error(direct, recursive), base_error=base)


def fg_detq_check(group: GroupDef, n: int, samples: int = 10, seed: int | None = None, tol: float = 1e-8) -> RecursionCheck:
    """Compare det Q_n computed by LU with the renormalization recursion at random points.

    Every sample also checks the closed forms of det Q_0 and det Q_1 at the same point.
    """
    if not 0 <= n <= 4:
        raise UsageError("det recursion check supports levels 0..4")
    seed = settings.SEED if seed is None else seed
    rng = np.random.default_rng(seed)
    records = [_fg_sample(group, rng, n) for _ in range(samples)]
    bad = [r.point for r in records if max(r.relative_error, r.base_error) > tol]
    if bad:
        logger.warning(f"det recursion mismatch at level {n}: {bad}")
    return RecursionCheck(name="fg_detq", level=n, seed=seed, tolerance=tol, passed=not bad, samples=records)


def phi(group: GroupDef, k: int, lam: float, lam1: float, lam2: float) -> float:
    """det(lam + lam1 (a + a^-1) + lam2 (b + b^-1)) on level k of a binary group generated by a, b."""
    gen_a, gen_b = _two_generators(group, 2)
    a = permutation_matrix(act_level(gen_a, k))
    b = permutation_matrix(act_level(gen_b, k))
    return determinant(lam * np.eye(2 ** k) + lam1 * (a + a.T) + lam2 * (b + b.T))


@retrying.retry(
    stop_max_attempt_number=settings.RESAMPLE_CAP,
    retry_on_exception=lambda e: isinstance(e, (PoleProximityError, SingularMatrixError)),
)
def _phi_sample(group: GroupDef, rng: np.random.Generator, k: int) -> RecursionSample:
    lam, lam1, lam2 = _draw(rng, -48, 48), _draw(rng, -32, 32), _draw(rng, -32, 32)
    big = lam + 2 * lam2
    direct = phi(group, k + 1, lam, lam1, lam2)
    recursive = phi(group, k, big * lam - 2 * lam1 * lam1, big * lam2, -lam1 * lam1)
    if _near_pole(direct, recursive, eps=1e-200):
        raise PoleProximityError("sample lies on the spectrum")
    return RecursionSample(point=[lam, lam1, lam2], direct=direct, recursive=recursive,
                           relative_error=_relative_error(direct, recursive))


def img_phi_recursion_check(
    group: GroupDef, k: int, samples: int = 10, seed: int | None = None, tol: float = 1e-8
) -> RecursionCheck:
    """Phi_{k+1}(l; l1, l2) = Phi_k(L l - 2 l1^2; L l2, -l1^2) with L = l + 2 l2, for a = (b, 1)s, b = (a, 1)."""
    if not 0 <= k <= 9:
        raise UsageError("phi recursion check supports k in 0..9")
    seed = settings.SEED if seed is None else seed
    rng = np.random.default_rng(seed)
    records = [_phi_sample(group, rng, k) for _ in range(samples)]
    passed = all(r.relative_error <= tol for r in records)
    return RecursionCheck(name="img_phi", level=k, seed=seed, tolerance=tol, passed=passed, samples=records)
