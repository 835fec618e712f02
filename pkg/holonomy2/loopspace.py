"""
Numerical transport along sampled loops and the 2-holonomy of surfaces.

Loops are sampled at t_k = k/m, k = 0..m-1. A loop into a flat torus is
stored as a quasi-periodic lift: gamma(t + 1) = gamma(t) + winding.
Transport is the product integral of T' = rho(A(gamma')) T with one
midpoint exponential per cell; later factors multiply on the left.
"""

# pylint: disable=R0913,R0914,R0902

from dataclasses import dataclass, field
from multiprocessing.pool import ThreadPool

import numpy as np
from loguru import logger
from scipy.linalg import expm

from holonomy2.config import DEFAULT_SETTINGS
from holonomy2.errors import (
    InsertionOrderError,
    NumericError,
    StructuralError,
    UnsupportedStructureError,
)
from holonomy2.forms import as_linf, is_maurer_cartan

MIN_SAMPLES = 8


def _finite(array, what):
    if not np.all(np.isfinite(array)):
        raise NumericError(f"{what} contains non-finite values")


def periodic_derivative(samples, winding, method):
    """
    d/dt of a quasi-periodic sampled curve along axis 0, unit period
    """
    m = samples.shape[0]
    column = (m,) + (1,) * (samples.ndim - 1)
    if method == "spectral":
        t = (np.arange(m) / m).reshape(column)
        periodic = samples - t * winding
        frequencies = np.fft.fftfreq(m, d=1.0 / m)
        spectrum = np.fft.fft(periodic, axis=0) * (2j * np.pi * frequencies).reshape(column)
        if m % 2 == 0:
            spectrum[m // 2] = 0.0
        return np.real(np.fft.ifft(spectrum, axis=0)) + winding
    if method == "central":
        ahead = np.roll(samples, -1, axis=0)
        ahead[-1] += winding
        behind = np.roll(samples, 1, axis=0)
        behind[0] -= winding
        return (ahead - behind) * (m / 2.0)
    raise StructuralError(f"unknown derivative method {method!r}")


@dataclass(frozen=True, eq=False)
class SampledLoop:
    """
    m x n samples of a closed loop; sitting_instant treats the seam derivative as zero
    """

    samples: np.ndarray
    winding: np.ndarray = None
    sitting_instant: bool = False

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=float)
        if samples.ndim != 2:
            raise StructuralError("loop samples must be an m x n array")
        if samples.shape[0] < MIN_SAMPLES:
            raise StructuralError(f"a loop needs at least {MIN_SAMPLES} samples")
        _finite(samples, "loop")
        winding = (
            np.zeros(samples.shape[1]) if self.winding is None
            else np.asarray(self.winding, dtype=float)
        )
        if winding.shape != (samples.shape[1],):
            raise StructuralError("winding must have one entry per coordinate")
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "winding", winding)

    @classmethod
    def from_function(cls, function, samples, winding=None, sitting_instant=False):
        """
        Sample t -> function(t) on t_k = k/m
        """
        points = np.array([function(k / samples) for k in range(samples)], dtype=float)
        return cls(points, winding, sitting_instant)

    @property
    def m(self):
        """
        Number of samples
        """
        return self.samples.shape[0]

    @property
    def dim(self):
        """
        Target dimension
        """
        return self.samples.shape[1]

    def closed(self):
        """
        Samples with the endpoint gamma(1) appended
        """
        return np.vstack([self.samples, self.samples[:1] + self.winding])

    def increments(self):
        """
        Chords gamma(t_{k+1}) - gamma(t_k)
        """
        return np.diff(self.closed(), axis=0)

    def midpoints(self):
        """
        Chord midpoints
        """
        closed = self.closed()
        return 0.5 * (closed[:-1] + closed[1:])

    def derivative(self, method="central"):
        """
        Velocity at every sample
        """
        velocity = periodic_derivative(self.samples, self.winding, method)
        if self.sitting_instant:
            velocity[0] = 0.0
        return velocity


@dataclass(frozen=True, eq=False)
class LoopTangent:
    """
    m x n tangent samples along a loop
    """

    samples: np.ndarray

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=float)
        if samples.ndim != 2:
            raise StructuralError("tangent samples must be an m x n array")
        _finite(samples, "tangent")
        object.__setattr__(self, "samples", samples)


@dataclass(frozen=True, eq=False)
class SampledSurface:
    """
    p x m x n grid f(tau_j, sigma_i), quasi-periodic in both directions
    """

    grid: np.ndarray
    winding_sigma: np.ndarray = None
    winding_tau: np.ndarray = None

    def __post_init__(self):
        grid = np.asarray(self.grid, dtype=float)
        if grid.ndim != 3:
            raise StructuralError("surface grid must be a p x m x n array")
        if min(grid.shape[:2]) < MIN_SAMPLES:
            raise StructuralError(f"surface grids need at least {MIN_SAMPLES} samples per side")
        _finite(grid, "surface")
        n = grid.shape[2]
        for name in ("winding_sigma", "winding_tau"):
            value = getattr(self, name)
            value = np.zeros(n) if value is None else np.asarray(value, dtype=float)
            if value.shape != (n,):
                raise StructuralError(f"{name} must have one entry per coordinate")
            object.__setattr__(self, name, value)
        object.__setattr__(self, "grid", grid)

    @classmethod
    def from_function(cls, function, slices, samples, winding_sigma=None, winding_tau=None):
        """
        Sample (tau, sigma) -> function(tau, sigma)
        """
        grid = np.array(
            [[function(j / slices, i / samples) for i in range(samples)] for j in range(slices)],
            dtype=float,
        )
        return cls(grid, winding_sigma, winding_tau)

    @property
    def shape(self):
        """
        (p, m, n)
        """
        return self.grid.shape

    def loop(self, j):
        """
        The loop at tau_j
        """
        return SampledLoop(self.grid[j], self.winding_sigma)

    def tau_derivative(self, method="central"):
        """
        d/dtau of the grid, same shape as the grid
        """
        return periodic_derivative(self.grid, self.winding_tau, method)


@dataclass(frozen=True, eq=False)
class TransportProblem:
    """
    a_numeric(point, tangent) -> h_dim x h_dim matrix in der(h), linear in tangent;
    h_abelian stays None for raw callbacks until the caller declares it
    """

    a_numeric: object
    h_dim: int
    h_abelian: object = None
    label: str = field(default="", compare=False)

    @classmethod
    def from_forms(cls, a_form, target):
        """
        rho(A) from a polynomial 1-form and the action of its target algebra
        """
        linf = as_linf(target)
        evaluate = a_form.numeric()
        action = [np.array(m.tolist(), dtype=float) for m in linf.action]
        h_dim = linf.lm1_dim

        def a_numeric(point, tangent):
            value = evaluate(point, tangent)
            result = np.zeros((h_dim, h_dim))
            for coefficient, matrix in zip(value, action):
                if coefficient:
                    result += coefficient * matrix
            return result

        abelian = True
        for a in range(h_dim):
            moved = linf.act(linf.l1[:, a])
            if any(x != 0 for x in moved):
                abelian = False
        return cls(a_numeric, h_dim, abelian, "forms")

    @classmethod
    def flat(cls, h_dim):
        """
        A = 0 over an abelian h
        """
        zero = np.zeros((h_dim, h_dim))
        return cls(lambda point, tangent: zero, h_dim, True)

    def matrix(self, point, tangent):
        """
        Checked evaluation of the callback
        """
        value = np.asarray(self.a_numeric(point, tangent), dtype=float)
        if value.shape != (self.h_dim, self.h_dim):
            raise StructuralError("connection callback returned the wrong shape")
        _finite(value, "connection value")
        return value

    def check_linearity(self, point_dim, seed=0, settings=DEFAULT_SETTINGS):
        """
        Spot-check linearity in the tangent at random points
        """
        rng = np.random.default_rng(seed)
        for _ in range(3):
            point = rng.normal(size=point_dim)
            first, second = rng.normal(size=point_dim), rng.normal(size=point_dim)
            a, b = rng.normal(size=2)
            lhs = self.matrix(point, a * first + b * second)
            rhs = a * self.matrix(point, first) + b * self.matrix(point, second)
            if np.max(np.abs(lhs - rhs)) > settings.linearity_tol * (1 + np.max(np.abs(rhs))):
                raise NumericError("connection callback is not linear in the tangent")


def numeric_two_form(b_form):
    """
    Numeric callback (point, u, v) -> h-vector of a polynomial 2-form
    """
    if b_form.degree != 2:
        raise StructuralError("expected a 2-form")
    return b_form.numeric()


def transport(problem, loop, sigma0=0.0, sigma1=1.0):
    """
    Transport from sigma0 to sigma1 along the loop
    """
    if not 0.0 <= sigma0 <= sigma1 <= 1.0:
        raise StructuralError("need 0 <= sigma0 <= sigma1 <= 1")
    m = loop.m
    increments = loop.increments()
    closed = loop.closed()
    result = np.eye(problem.h_dim)
    first = min(int(np.floor(sigma0 * m)), m - 1)
    for k in range(first, m):
        left, right = k / m, (k + 1) / m
        if left >= sigma1:
            break
        start = (max(sigma0, left) - left) * m
        stop = (min(sigma1, right) - left) * m
        if stop <= start:
            continue
        middle = closed[k] + 0.5 * (start + stop) * increments[k]
        factor = expm(problem.matrix(middle, (stop - start) * increments[k]))
        result = factor @ result
    return result


def cell_factors(problem, loop):
    """
    One midpoint exponential per sampling cell
    """
    increments = loop.increments()
    midpoints = loop.midpoints()
    return [expm(problem.matrix(midpoints[k], increments[k])) for k in range(loop.m)]


def transports_to_end(problem, loop):
    """
    T(sigma_k -> 1) for k = 0..m, accumulated backwards from T(1 -> 1) = I
    """
    factors = cell_factors(problem, loop)
    result = [None] * (loop.m + 1)
    result[loop.m] = np.eye(problem.h_dim)
    for k in range(loop.m - 1, -1, -1):
        result[k] = result[k + 1] @ factors[k]
    return result


def v_form(problem, loop, insertions):
    """
    Ordered insertions (sigma, vector), each transported to the basepoint;
    the result is the tensor word of transported vectors, empty for the unit
    """
    positions = [position for position, _ in insertions]
    if any(b < a for a, b in zip(positions, positions[1:])):
        raise InsertionOrderError("insertion positions must be sorted")
    word = []
    for position, vector in insertions:
        vector = np.asarray(vector, dtype=float)
        if vector.shape != (problem.h_dim,):
            raise StructuralError("inserted vectors must lie in h")
        word.append(transport(problem, loop, position, 1.0) @ vector)
    return tuple(word)


def word_tensor(word):
    """
    Tensor product of a word of vectors; the empty word is the scalar 1
    """
    result = np.array(1.0)
    for vector in word:
        result = np.multiply.outer(result, vector)
    return result


def connection_a0(problem, b_numeric, loop, tangent, settings=DEFAULT_SETTINGS):
    """
    Trapezoid over sigma in [0, 1] of T(sigma -> 1) B(gamma(sigma))(gamma', delta gamma)
    """
    tangent_samples = tangent.samples if isinstance(tangent, LoopTangent) else np.asarray(
        tangent, dtype=float
    )
    if tangent_samples.shape != loop.samples.shape:
        raise StructuralError("tangent and loop sample counts differ")
    m = loop.m
    velocity = loop.derivative(settings.derivative)
    ends = transports_to_end(problem, loop)
    closed = loop.closed()
    total = np.zeros(problem.h_dim)
    for k in range(m + 1):
        index = k % m
        value = np.asarray(
            b_numeric(closed[k], velocity[index], tangent_samples[index]), dtype=float
        )
        weight = 0.5 if k in (0, m) else 1.0
        total += weight * (ends[k] @ value)
    _finite(total, "connection value")
    return total / m


def surface_holonomy(problem, b_numeric, surface, settings=DEFAULT_SETTINGS):
    """
    Loop of loops: periodic trapezoid over tau of connection_a0(gamma_tau, d_tau gamma_tau)
    """
    if problem.h_abelian is None:
        raise UnsupportedStructureError("declare h_abelian=True for a raw connection callback")
    if not problem.h_abelian:
        raise UnsupportedStructureError("surface holonomy needs an abelian h")
    p = surface.shape[0]
    tau_velocity = surface.tau_derivative(settings.derivative)

    def slice_value(j):
        return connection_a0(
            problem, b_numeric, surface.loop(j), LoopTangent(tau_velocity[j]), settings
        )

    if settings.workers > 1:
        with ThreadPool(processes=settings.workers) as pool:
            values = pool.map(slice_value, range(p))
    else:
        values = [slice_value(j) for j in range(p)]
    logger.debug("surface holonomy over {} slices", p)
    return np.mean(values, axis=0)


def ellipse_family(scales, slices, samples, origin=(0.0, 0.0), shear=0.0):
    """
    Contractible tori through a fixed origin: loops
    r (a(tau)(cos t - 1 + shear sin t), b(tau) sin t), t = 2 pi sigma, with
    a = 1 + cos(2 pi tau)/2 and b = 1 + sin(2 pi tau)/2.

    For A = x dy acting by the identity on R and B = dx ^ dy the holonomy is
    r^4 pi^2 shear / 4 + O(r^6), that is shear flux^2 / 4 with flux = pi r^2
    the mean dA flux through the loops; without shear the leading term cancels.
    """
    origin = np.asarray(origin, dtype=float)
    family = []
    for scale in scales:
        def point(tau, sigma, scale=scale):
            a = 1.0 + 0.5 * np.cos(2 * np.pi * tau)
            b = 1.0 + 0.5 * np.sin(2 * np.pi * tau)
            theta = 2 * np.pi * sigma
            offset = np.array(
                [a * (np.cos(theta) - 1.0 + shear * np.sin(theta)), b * np.sin(theta)]
            )
            result = origin.copy()
            result[:2] += scale * offset
            return result

        family.append((scale, SampledSurface.from_function(point, slices, samples)))
    return family


@dataclass(frozen=True, eq=False)
class FlatnessStudy:
    """
    Holonomies over a shrinking family, their values divided by scale^4, and
    the symbolic Maurer-Cartan verdict when a pair was given
    """

    maurer_cartan: object
    scales: tuple
    holonomies: tuple
    normalized: tuple

    @property
    def ratios(self):
        """
        Successive holonomy-norm ratios; an r^4 leading term gives about 16 per halving
        """
        norms = [float(np.linalg.norm(value)) for value in self.holonomies]
        return tuple(
            first / second if second else float("inf")
            for first, second in zip(norms, norms[1:])
        )


def flatness_residual(problem, b_numeric, pair, family, settings=DEFAULT_SETTINGS):
    """
    surface_holonomy over a family of (scale, surface) pairs.

    Each loop of a family of scale r encloses area of order r^2, so with
    constant dA the enclosed flux is of order r^2 and the flux-squared scale
    of a non-flat pair is r^4; normalized holds holonomy / r^4, which tends
    to a nonzero constant exactly when that leading term survives. For a
    Maurer-Cartan pair the holonomies vanish to quadrature accuracy, which
    already implies decay faster than the second order in r.
    """
    verdict = None
    if pair is not None:
        verdict, _ = is_maurer_cartan(pair, settings.l3_normalization)
    scales, holonomies, normalized = [], [], []
    for scale, surface in family:
        value = surface_holonomy(problem, b_numeric, surface, settings)
        scales.append(float(scale))
        holonomies.append(value)
        normalized.append(value / scale ** 4)
    logger.debug("flatness study over scales {}", scales)
    return FlatnessStudy(verdict, tuple(scales), tuple(holonomies), tuple(normalized))
