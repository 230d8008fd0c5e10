"""Degrees of sphere maps, bidegrees, and Hopf invariants.

Three independent routes compute a degree:

* linear slices (a fixed argument makes the map linear): sign of an exact
  determinant;
* circle maps: winding number of the image curve;
* anything smooth: Monte Carlo average of the Jacobian determinant with
  respect to oriented tangent frames, which integrates the pulled-back
  volume form.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .chains import exact_det

SliceFn = Callable[[np.ndarray], np.ndarray]

UNIT_TOL = 1e-12
NORM_DRIFT_TOL = 1e-10
IMAGE_TOL = 1e-8
FD_STEP = 1e-5
MC_BAND = 0.3
WINDING_RESIDUAL = 1e-6


class DegreeError(ValueError):
    pass


class NonlinearSlice(DegreeError):
    """The requested slice is not linear in its free argument."""


# --- Cayley-Dickson algebras -------------------------------------------------

def _conj(x: np.ndarray) -> np.ndarray:
    out = -x
    out[..., 0] = x[..., 0]
    return out


def _cd_mult(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    d = x.shape[-1]
    if d == 1:
        return x * y
    h = d // 2
    a, b = x[..., :h], x[..., h:]
    c, e = y[..., :h], y[..., h:]
    # (a, b)(c, e) = (ac - conj(e) b, e a + b conj(c))
    return np.concatenate(
        [_cd_mult(a, c) - _cd_mult(_conj(e), b), _cd_mult(e, a) + _cd_mult(b, _conj(c))],
        axis=-1,
    )


def cayley_mult(level: int, x, y, check: bool = True) -> np.ndarray:
    """Multiply in the 2**level dimensional Cayley-Dickson algebra.

    Level 1 gives the complex numbers, 2 the quaternions (``i*j = k`` in the
    basis ``1, i, j, k``), and 3 the octonions.  Inputs broadcast over
    leading axes.
    """
    if level not in (1, 2, 3):
        raise DegreeError("level must be 1, 2 or 3")
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    dim = 2**level
    if x.shape[-1] != dim or y.shape[-1] != dim:
        raise DegreeError(f"level {level} expects vectors of length {dim}")
    if check:
        for v in (x, y):
            if np.any(np.abs(np.linalg.norm(v, axis=-1) - 1) > UNIT_TOL):
                raise DegreeError("cayley_mult expects unit vectors")
    out = _cd_mult(x, y)
    if check and np.any(np.abs(np.linalg.norm(out, axis=-1) - 1) > NORM_DRIFT_TOL):
        raise DegreeError("norm drift in Cayley-Dickson product")
    return out


# --- map descriptors -----------------------------------------------------------

def phi(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """``y - 2 <x, y> x``: reflection of ``y`` in the hyperplane orthogonal to ``x``."""
    return y - 2 * np.sum(x * y, axis=-1, keepdims=True) * x


@dataclass(frozen=True)
class MapDescriptor:
    family: str  # "phi" or "cayley"
    n: int
    level: int | None = None

    def __post_init__(self):
        if self.family == "phi":
            if self.n < 2 or self.n % 2:
                raise DegreeError("the map phi is defined for even n >= 2")
        elif self.family == "cayley":
            if self.level is None:
                levels = {2: 1, 4: 2, 8: 3}
                if self.n not in levels:
                    raise DegreeError("Cayley-Dickson multiplication needs n in {2, 4, 8}")
                object.__setattr__(self, "level", levels[self.n])
            if self.level not in (1, 2, 3) or 2**self.level != self.n:
                raise DegreeError("CayleyMult level l acts on S^(2^l - 1)")
        else:
            raise DegreeError(f"unknown map family {self.family!r}")

    @classmethod
    def cayley(cls, level: int) -> "MapDescriptor":
        return cls("cayley", 2**level, level)

    def __call__(self, x, y) -> np.ndarray:
        if self.family == "phi":
            return phi(np.asarray(x, float), np.asarray(y, float))
        return cayley_mult(self.level, x, y, check=False)

    def slice(self, which: str, fixed) -> SliceFn:
        """``which="second"`` fixes y (free x, gives alpha); ``"first"`` fixes x (gives beta)."""
        p = np.asarray(fixed, dtype=float)
        if abs(np.linalg.norm(p) - 1) > UNIT_TOL:
            raise DegreeError("base point must be a unit vector")
        if which == "second":
            return lambda pts: self(pts, np.broadcast_to(p, np.shape(pts)))
        if which == "first":
            return lambda pts: self(np.broadcast_to(p, np.shape(pts)), pts)
        raise DegreeError("which must be 'first' or 'second'")

    def is_linear(self, which: str) -> bool:
        return self.family == "cayley" or which == "first"

    def label(self) -> str:
        return f"phi(n={self.n})" if self.family == "phi" else f"cayley(level={self.level})"


# --- exact route -----------------------------------------------------------

def linear_slice_degree(m: MapDescriptor, which: str, fixedpoint) -> int:
    """Degree of a linear slice: the sign of its matrix determinant, computed exactly."""
    if not m.is_linear(which):
        raise NonlinearSlice(f"{m.label()} is not linear with the {which} argument free")
    f = m.slice(which, fixedpoint)
    mat = f(np.eye(m.n)).T
    det = exact_det(mat.tolist())
    if det == 0:
        raise DegreeError("singular slice matrix")
    return 1 if det > 0 else -1


# --- winding route --------------------------------------------------------------

def winding_degree(f: SliceFn, samples: int = 4096) -> int:
    if samples < 1000:
        raise DegreeError("winding_degree needs at least 1000 samples")
    t = np.linspace(0.0, 2 * np.pi, samples, endpoint=False)
    pts = np.stack([np.cos(t), np.sin(t)], axis=1)
    img = f(pts)
    ang = np.arctan2(img[:, 1], img[:, 0])
    step = np.diff(np.append(ang, ang[0]))
    step = (step + np.pi) % (2 * np.pi) - np.pi
    if np.max(np.abs(step)) > np.pi / 2:
        raise DegreeError("image curve undersampled; increase samples")
    turns = step.sum() / (2 * np.pi)
    deg = int(round(turns))
    if abs(turns - deg) >= WINDING_RESIDUAL:
        raise DegreeError(f"non-integer winding {turns!r}")
    return deg


# --- Monte Carlo route --------------------------------------------------------------

def tangent_frames(p: np.ndarray, rotation: np.ndarray | None = None) -> np.ndarray:
    """Orthonormal frames of the tangent spaces at the rows of ``p``.

    Returns shape ``(N, d, d-1)``; prepending ``p`` as a first column gives a
    matrix of determinant +1.  Built from the Householder reflection sending
    ``e1`` to ``+-p`` (sign chosen away from the singular case).
    """
    if rotation is not None:
        return rotation @ tangent_frames(p @ rotation)
    n, d = p.shape
    sigma = np.where(p[:, 0] > 0, -1.0, 1.0)
    v = -sigma[:, None] * p
    v[:, 0] += 1.0
    vv = np.sum(v * v, axis=1)
    frames = np.eye(d)[None, :, 1:] - 2.0 * v[:, :, None] * v[:, None, 1:] / vv[:, None, None]
    frames[:, :, 0] *= -sigma[:, None]
    return frames


def _frame_ok(p: np.ndarray, frames: np.ndarray) -> bool:
    full = np.concatenate([p[:, :, None], frames], axis=2)
    gram = np.einsum("nij,nik->njk", full, full)
    return bool(np.max(np.abs(gram - np.eye(full.shape[2]))) < 1e-8)


def _frames_checked(p: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    rotation = None
    for _ in range(3):
        frames = tangent_frames(p, rotation)
        if _frame_ok(p, frames):
            return frames
        q, r = np.linalg.qr(rng.standard_normal((p.shape[1], p.shape[1])))
        q *= np.sign(np.diag(r))
        if np.linalg.det(q) < 0:
            q[:, 0] *= -1
        rotation = q
    raise DegreeError("degenerate tangent frame after 3 retries")


def _retract(x: np.ndarray) -> np.ndarray:
    return x / np.linalg.norm(x, axis=-1, keepdims=True)


def _jacobian_dets(f: SliceFn, x: np.ndarray, rng: np.random.Generator, step: float) -> np.ndarray:
    y = f(x)
    if np.any(np.abs(np.linalg.norm(y, axis=1) - 1) > IMAGE_TOL):
        raise DegreeError("slice image leaves the unit sphere")
    tx = _frames_checked(x, rng)
    ty = _frames_checked(y, rng)
    k = tx.shape[2]
    jac = np.empty((x.shape[0], k, k))
    for j in range(k):
        t = tx[:, :, j]
        diff = (f(_retract(x + step * t)) - f(_retract(x - step * t))) / (2 * step)
        jac[:, :, j] = np.einsum("ndi,nd->ni", ty, diff)
    return np.linalg.det(jac)


@dataclass(frozen=True)
class MCEstimate:
    estimate: float
    stderr: float
    samples: int
    seed: int | tuple[int, ...]
    workers: int = 1

    def as_dict(self) -> dict:
        seed = list(self.seed) if isinstance(self.seed, tuple) else self.seed
        return {
            "estimate": self.estimate,
            "stderr": self.stderr,
            "samples": self.samples,
            "seed": seed,
            "workers": self.workers,
        }


def mc_degree(
    f: SliceFn,
    dim: int,
    samples: int,
    seed: int | Sequence[int] = 0,
    workers: int = 1,
    chunk: int = 100_000,
    step: float = FD_STEP,
) -> MCEstimate:
    """Estimate the degree of ``f: S^(dim-1) -> S^(dim-1)`` as the mean Jacobian determinant.

    Every worker draws from its own Philox stream spawned from ``seed``; the
    streams are consumed in order so the result depends only on
    ``(seed, workers)``.
    """
    if samples < 100_000:
        raise DegreeError("mc_degree needs at least 1e5 samples")
    streams = np.random.SeedSequence(seed).spawn(workers)
    total = 0.0
    total_sq = 0.0
    for w, ss in enumerate(streams):
        rng = np.random.Generator(np.random.Philox(ss))
        todo = samples // workers + (1 if w < samples % workers else 0)
        while todo > 0:
            m = min(chunk, todo)
            x = _retract(rng.standard_normal((m, dim)))
            dets = _jacobian_dets(f, x, rng, step)
            total += float(dets.sum())
            total_sq += float(np.dot(dets, dets))
            todo -= m
    mean = total / samples
    var = max(total_sq / samples - mean * mean, 0.0)
    seed_key = tuple(seed) if not isinstance(seed, (int, np.integer)) else int(seed)
    return MCEstimate(mean, float(np.sqrt(var / samples)), samples, seed_key, workers)


def rounded_degree(est: MCEstimate, band: float = MC_BAND) -> int:
    deg = int(round(est.estimate))
    if abs(est.estimate - deg) >= band:
        raise DegreeError(f"Monte Carlo estimate {est.estimate:.4f} is not within {band} of an integer")
    return deg


# --- bidegree and Hopf invariant ------------------------------------------------

@dataclass(frozen=True)
class Bidegree:
    alpha: int
    beta: int
    estimates: dict = field(default_factory=dict, compare=False, hash=False)


def _random_unit(rng: np.random.Generator, n: int) -> np.ndarray:
    return _retract(rng.standard_normal(n))


def slice_degree(m: MapDescriptor, which: str, fixed, samples: int, seed) -> tuple[int, dict]:
    if m.is_linear(which):
        return linear_slice_degree(m, which, fixed), {"method": "linear"}
    f = m.slice(which, fixed)
    if m.n == 2:
        return winding_degree(f, max(4096, min(samples, 1 << 16))), {"method": "winding"}
    est = mc_degree(f, m.n, samples, seed)
    info = {"method": "monte-carlo", **est.as_dict()}
    return rounded_degree(est), info


def bidegree(m: MapDescriptor, seed: int = 0, samples: int = 200_000, base_pairs: int = 3) -> Bidegree:
    """Bidegree of ``m``, recomputed at ``base_pairs`` random base pairs.

    ``alpha`` is the degree with the second argument fixed, ``beta`` with
    the first argument fixed.
    """
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, 0])))
    alphas, betas, runs = [], [], []
    for i in range(base_pairs):
        p1 = _random_unit(rng, m.n)
        p2 = _random_unit(rng, m.n)
        a, ainfo = slice_degree(m, "second", p2, samples, [seed, 1, i])
        b, binfo = slice_degree(m, "first", p1, samples, [seed, 2, i])
        alphas.append(a)
        betas.append(b)
        runs.append({"alpha": a, "beta": b, "alpha_info": ainfo, "beta_info": binfo})
    if len(set(alphas)) != 1 or len(set(betas)) != 1:
        raise DegreeError(f"bidegree depends on the base pair: alphas={alphas}, betas={betas}")
    return Bidegree(alphas[0], betas[0], {"map": m.label(), "base_pairs": runs})


@dataclass(frozen=True)
class HopfInvariant:
    magnitude: int
    signed: int
    note: str = "sign fixed only up to orientation conventions (h = +-alpha*beta)"


def hopf_from_bidegree(b: Bidegree) -> HopfInvariant:
    prod = b.alpha * b.beta
    return HopfInvariant(abs(prod), prod)
