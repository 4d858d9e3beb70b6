from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from selfsim.config import logger, settings
from selfsim.exceptions import IndeterminateError, InvalidDefinition, SizeBoundExceeded, UsageError
from selfsim.models import DigitSystemConfig
from selfsim.utils.mealy import InitialAutomaton, MealyAutomaton
from selfsim.utils.words import Alphabet, Word

Vector = tuple[Fraction, ...]
Matrix = tuple[tuple[Fraction, ...], ...]


def mat_vec(a: Matrix, v) -> Vector:
    return tuple(sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    cols = list(zip(*b))
    return tuple(tuple(sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in cols) for row in a)


def identity_matrix(n: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def mat_det(a: Matrix) -> Fraction:
    m = [list(row) for row in a]
    n, det = len(m), Fraction(1)
    for k in range(n):
        pivot = next((i for i in range(k, n) if m[i][k] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != k:
            m[k], m[pivot] = m[pivot], m[k]
            det = -det
        det *= m[k][k]
        for i in range(k + 1, n):
            f = m[i][k] / m[k][k]
            m[i] = [x - f * y for x, y in zip(m[i], m[k])]
    return det


def solve(a: Matrix, b: Vector) -> Vector:
    """Exact Gauss-Jordan solve of a x = b."""
    n = len(a)
    m = [list(row) + [b[i]] for i, row in enumerate(a)]
    for k in range(n):
        pivot = next((i for i in range(k, n) if m[i][k] != 0), None)
        if pivot is None:
            raise InvalidDefinition("singular system")
        m[k], m[pivot] = m[pivot], m[k]
        m[k] = [x / m[k][k] for x in m[k]]
        for i in range(n):
            if i != k and m[i][k] != 0:
                f = m[i][k]
                m[i] = [x - f * y for x, y in zip(m[i], m[k])]
    return tuple(row[n] for row in m)


def is_integral(v) -> bool:
    return all(Fraction(x).denominator == 1 for x in v)


@dataclass(frozen=True)
class DigitSystem:
    """Contracting map phi(v) = A v on Z^n with digit set R; letter i stands for digit r_i."""

    matrix: Matrix
    digits: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.matrix)
        object.__setattr__(self, "matrix", tuple(tuple(Fraction(x) for x in row) for row in self.matrix))
        object.__setattr__(self, "digits", tuple(tuple(int(x) for x in r) for r in self.digits))
        if n == 0 or any(len(row) != n for row in self.matrix):
            raise InvalidDefinition("digit system matrix must be square and nonempty")
        if not self.digits or any(len(r) != n for r in self.digits):
            raise InvalidDefinition(f"digits must be vectors of length {n}")

    @classmethod
    def from_config(cls, config: DigitSystemConfig) -> "DigitSystem":
        try:
            return cls(tuple(tuple(Fraction(x) for x in row) for row in config.matrix), tuple(map(tuple, config.digits)))
        except (ValueError, ZeroDivisionError) as e:
            raise InvalidDefinition(f"bad digit system entry: {e}")

    @property
    def dim(self) -> int:
        return len(self.matrix)

    @property
    def alphabet(self) -> Alphabet:
        return Alphabet(len(self.digits))

    def to_config(self) -> DigitSystemConfig:
        return DigitSystemConfig(matrix=[[str(x) for x in row] for row in self.matrix], digits=[list(r) for r in self.digits])


def validate_digit_system(ds: DigitSystem):
    """r_0 = 0, digits pairwise distinct mod Dom(phi), and |det A^-1| = |R|."""
    if any(ds.digits[0]):
        raise InvalidDefinition("first digit must be the zero vector")
    det = mat_det(ds.matrix)
    if det == 0 or abs(1 / det) != len(ds.digits):
        raise InvalidDefinition(f"|det A^-1| = {abs(1 / det) if det else 'inf'} but there are {len(ds.digits)} digits")
    for i, ri in enumerate(ds.digits):
        for rj in ds.digits[i + 1:]:
            if is_integral(mat_vec(ds.matrix, [x - y for x, y in zip(ri, rj)])):
                raise InvalidDefinition(f"digits {ri} and {rj} lie in the same coset of Dom(phi)")


def is_finite_state(a: Matrix, steps: int | None = None) -> bool:
    """Spectral radius of A below 1: closed forms for n <= 2, Gelfand iteration otherwise."""
    n = len(a)
    if n == 1:
        return abs(a[0][0]) < 1
    if n == 2:
        trace, det = a[0][0] + a[1][1], mat_det(a)
        return abs(det) < 1 and abs(trace) < 1 + det
    steps = steps or settings.GELFAND_STEPS
    b = np.array([[float(x) for x in row] for row in a])
    for _ in range(steps):
        norm = float(np.max(np.sum(np.abs(b), axis=1)))
        if norm < 1:
            return True
        if norm > 1e12:
            return False
        b = b @ b
    raise IndeterminateError(f"spectral radius test undecided after {steps} squarings")


def _digit_step(ds: DigitSystem, g: tuple[int, ...], i: int) -> tuple[int, tuple[int, ...]]:
    shifted = [ri + gi for ri, gi in zip(ds.digits[i], g)]
    for j, rj in enumerate(ds.digits):
        image = mat_vec(ds.matrix, [x - y for x, y in zip(shifted, rj)])
        if is_integral(image):
            return j, tuple(int(x) for x in image)
    raise InvalidDefinition(f"no digit matches {shifted} modulo Dom(phi)")


@dataclass(frozen=True)
class DigitExceeded:
    cap: int


def digit_automaton(ds: DigitSystem, g, cap: int | None = None) -> InitialAutomaton | DigitExceeded:
    """Automaton of translation by g: (x_i w)^g = x_j w^{A(r_i + g - r_j)}."""
    validate_digit_system(ds)
    cap = cap or settings.DIGIT_STATE_CAP
    start = tuple(int(x) for x in g)
    if len(start) != ds.dim:
        raise UsageError(f"translation vector must have {ds.dim} entries")
    index = {start: 0}
    queue = deque([start])
    output, transition = [], []
    while queue:
        state = queue.popleft()
        row_out, row_tr = [], []
        for i in range(len(ds.digits)):
            j, nxt = _digit_step(ds, state, i)
            if nxt not in index:
                if len(index) >= cap:
                    logger.info(f"digit automaton passed {cap} states")
                    return DigitExceeded(cap)
                index[nxt] = len(index)
                queue.append(nxt)
            row_out.append(j)
            row_tr.append(index[nxt])
        output.append(tuple(row_out))
        transition.append(tuple(row_tr))
    names = tuple(",".join(map(str, v)) for v in sorted(index, key=index.get))
    return InitialAutomaton(MealyAutomaton(ds.alphabet, tuple(output), tuple(transition), names), 0)


def faithfulness_levels(ds: DigitSystem, depth: int = 10) -> dict[int, int | None]:
    """First level on which each basis translation moves a word, or None if none up to depth."""
    report = {}
    for axis in range(ds.dim):
        basis = tuple(int(axis == k) for k in range(ds.dim))
        a = digit_automaton(ds, basis)
        if isinstance(a, DigitExceeded):
            report[axis] = None
            continue
        m = a.automaton
        seen, frontier, found = {a.initial}, [a.initial], None
        for level in range(1, depth + 1):
            if any(m.output[q][x] != x for q in frontier for x in range(m.alphabet.size)):
                found = level
                break
            frontier = [t for q in frontier for t in m.transition[q] if t not in seen]
            seen.update(frontier)
        report[axis] = found
    return report


def fraction_point(ds: DigitSystem, w: Word) -> Vector:
    """Sum of A^k r_{x_k} over the letters of w, first letter weighted by A."""
    if w.alphabet.size != len(ds.digits):
        raise UsageError("word alphabet does not match the digit set")
    total = [Fraction(0)] * ds.dim
    power = ds.matrix
    for x in w.letters:
        total = [t + s for t, s in zip(total, mat_vec(power, ds.digits[x]))]
        power = mat_mul(ds.matrix, power)
    return tuple(total)


def _left_value(ds: DigitSystem, word) -> Vector:
    """Sum of A^k r_{x_k} over k >= 1 for a left-infinite word, computed exactly."""
    n = ds.dim
    m = len(word.suffix)
    total = [Fraction(0)] * n
    power = ds.matrix
    for k in range(1, m + 1):
        total = [t + s for t, s in zip(total, mat_vec(power, ds.digits[word.letter(k)]))]
        power = mat_mul(ds.matrix, power)
    # one period of the tail, then a geometric series in A^p
    p = len(word.tail)
    period_sum = [Fraction(0)] * n
    step = ds.matrix
    for j in range(1, p + 1):
        period_sum = [t + s for t, s in zip(period_sum, mat_vec(step, ds.digits[word.letter(m + j)]))]
        step = mat_mul(ds.matrix, step)
    a_p = identity_matrix(n)
    for _ in range(p):
        a_p = mat_mul(ds.matrix, a_p)
    lhs = tuple(tuple(int(i == j) - a_p[i][j] for j in range(n)) for i in range(n))
    tail = solve(lhs, tuple(period_sum))
    a_m = identity_matrix(n)
    for _ in range(m):
        a_m = mat_mul(ds.matrix, a_m)
    return tuple(t + s for t, s in zip(total, mat_vec(a_m, tail)))


def abelian_asymptotic_eq(ds: DigitSystem, left, right) -> bool:
    """Left-infinite words are equivalent iff their values differ by an integer vector."""
    if not is_finite_state(ds.matrix):
        raise UsageError("asymptotic equivalence needs a contracting matrix")
    u, v = _left_value(ds, left), _left_value(ds, right)
    return is_integral([x - y for x, y in zip(u, v)])


@dataclass(frozen=True)
class TileRaster:
    pixels: np.ndarray
    box: tuple[float, float, float, float]

    @property
    def filled(self) -> int:
        return int(np.count_nonzero(self.pixels))


@dataclass(frozen=True)
class TileInterval:
    low: Fraction
    high: Fraction
    points: int


def _tile_box(a: np.ndarray, digits: np.ndarray) -> tuple[float, float, float, float]:
    """Per-coordinate bounds of sum_{k>=1} A^k r_k, widened to a square."""
    largest = max(float(np.linalg.norm(r)) for r in digits)
    low, high, power = np.zeros(2), np.zeros(2), np.eye(2)
    for _ in range(4096):
        power = a @ power
        images = digits @ power.T
        low += images.min(axis=0)
        high += images.max(axis=0)
        if np.linalg.norm(power, 2) * largest < 1e-12:
            break
    else:
        raise IndeterminateError("no power of A is a contraction in the operator norm")
    cx, cy = (low + high) / 2
    half = float((high - low).max()) / 2 or 0.5
    return (cx - half, cx + half, cy - half, cy + half)


def render_tile(ds: DigitSystem, depth: int, resolution: int = 256) -> TileRaster | TileInterval:
    """Exact interval in dimension 1; in dimension 2 a raster of the sub-tiles anchored at the depth-n points.

    A pixel is filled when its center lies in the cell of some fraction_point of length depth.
    """
    count = len(ds.digits) ** depth
    if count > settings.TILE_POINT_BUDGET:
        raise SizeBoundExceeded(f"{count} points exceed the tile budget {settings.TILE_POINT_BUDGET}")
    if ds.dim == 1:
        low, high, power = Fraction(0), Fraction(0), ds.matrix[0][0]
        for _ in range(depth):
            terms = [power * r[0] for r in ds.digits]
            low, high = low + min(terms), high + max(terms)
            power *= ds.matrix[0][0]
        return TileInterval(low, high, count)
    if ds.dim != 2:
        raise UsageError("tiles are rendered for dimensions 1 and 2 only")
    a = np.array([[float(x) for x in row] for row in ds.matrix])
    digits = np.array(ds.digits, dtype=float)
    points = np.zeros((1, 2))
    for _ in range(depth):
        points = np.concatenate([(points + r) @ a.T for r in digits])
    # scaled by A^-(depth+1), the sub-tile at p is q + T with q = A^-(depth+1) p integral
    # and T = sum_{k>=0} A^k r_k, a tile of the integer lattice
    scale = np.linalg.matrix_power(np.linalg.inv(a), depth + 1)
    anchors = np.rint(points @ scale.T).astype(np.int64)
    centroid = np.linalg.solve(np.eye(2) - a, digits.mean(axis=0))
    box = _tile_box(a, digits)
    step = (box[1] - box[0]) / resolution
    xs = box[0] + (np.arange(resolution) + 0.5) * step
    ys = box[3] - (np.arange(resolution) + 0.5) * step
    gx, gy = np.meshgrid(xs, ys)
    centers = np.stack([gx.ravel(), gy.ravel()], axis=1)
    cells = np.rint(centers @ scale.T - centroid).astype(np.int64)
    lo = anchors.min(axis=0)
    span = anchors.max(axis=0) - lo + 1
    inside = np.all((cells >= lo) & (cells < lo + span), axis=1)

    def key(c):
        return (c[:, 0] - lo[0]) * span[1] + (c[:, 1] - lo[1])

    hit = np.zeros(len(cells), dtype=bool)
    hit[inside] = np.isin(key(cells[inside]), key(anchors))
    pixels = np.where(hit.reshape(resolution, resolution), 255, 0).astype(np.uint8)
    logger.debug(f"rendered {count} cells, {int(np.count_nonzero(pixels))} pixels filled")
    return TileRaster(pixels, box)


def to_pgm(raster: TileRaster) -> bytes:
    h, w = raster.pixels.shape
    return f"P5\n{w} {h}\n255\n".encode("ascii") + raster.pixels.tobytes()


def interval_text(tile: TileInterval) -> str:
    return f"[{tile.low}, {tile.high}]"

