"""Fixed-Talbot numerical inverse Laplace transform.

The Bromwich contour is deformed to s(theta) = r theta (cot theta + i),
-pi < theta < pi, with r = 2M / (5t), and the trapezoidal rule with step
pi/M is applied. When g is real on the real axis only the upper half of the
contour is evaluated.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, PoleError, UnsuitableTransformError, ValidationError

DEFAULT_M = 32


@dataclass(frozen=True)
class TalbotPlan:
    M: int
    t: float
    nodes: tuple  # (s_k, weight_k), result = sum weight_k * g(s_k)
    symmetric: bool

    @property
    def r(self):
        return 2.0 * self.M / (5.0 * self.t)


def _contour(M, t, symmetric, shift=0.0):
    r = 2.0 * M / (5.0 * t)
    k = np.arange(0 if symmetric else -(M - 1), M)
    theta = k * np.pi / M
    with np.errstate(invalid="ignore", divide="ignore"):
        cot = np.where(k == 0, 0.0, np.cos(theta) / np.sin(theta))
        s = np.where(k == 0, r, r * theta * (cot + 1j))
        sigma = np.where(k == 0, 0.0, theta + (theta * cot - 1.0) * cot)
    s = s + shift
    w = np.exp(s * t) * (1.0 + 1j * sigma)
    if symmetric:
        w = w * (r / M)
        w[0] *= 0.5
    else:
        w = w * (r / (2.0 * M))
    return s, w


def talbot_plan(t, M=DEFAULT_M, symmetric=True, shift=0.0):
    if not (M >= 8 and M % 2 == 0):
        raise ValidationError("Talbot node count M must be even and at least 8")
    if not t > 0:
        raise DomainError("inverse Laplace transform is only evaluated at t > 0")
    s, w = _contour(M, float(t), symmetric, shift)
    return TalbotPlan(M, float(t), tuple(zip(s, w)), symmetric)


def _is_conjugate_symmetric(g, M, shift):
    probe = np.array([1.3 + 0.7j, 3.1 + 2.9j]) + shift
    with np.errstate(all="ignore"):
        a = np.asarray(g(probe), dtype=complex)
        b = np.asarray(g(np.conj(probe)), dtype=complex)
    return bool(np.all(np.isfinite(a)) and np.allclose(np.conj(a), b, rtol=1e-13, atol=1e-300))


def _decays_in_right_half_plane(g, r, shift):
    # max |g| on arcs of radius R, 10R, 100R, 1000R (|arg s| <= pi/3)
    angles = np.exp(1j * np.array([-np.pi / 3, 0.0, np.pi / 3]))
    radii = max(r, 1.0) * 10.0 ** np.arange(4)
    pts = shift + radii[:, None] * angles[None, :]
    with np.errstate(all="ignore"):
        mags = np.abs(np.asarray(g(pts), dtype=complex)).max(axis=1)
    if not np.all(np.isfinite(mags)):
        return False
    # exact underflow to zero counts as decay
    return mags[-1] < mags[0] or mags[-1] == 0.0


def talbot_ilt(g, t, M=DEFAULT_M, *, shift=0.0, symmetric=None):
    """Approximate G(t) from its Laplace transform ``g`` (vectorised over ``t``).

    ``shift`` moves the contour right by a constant, for transforms with
    singularities in the right half-plane.
    """
    if not (M >= 8 and M % 2 == 0):
        raise ValidationError("Talbot node count M must be even and at least 8")
    t_arr = np.atleast_1d(np.asarray(t, dtype=float))
    if np.any(~(t_arr > 0)):
        raise DomainError("inverse Laplace transform is only evaluated at t > 0")
    if symmetric is None:
        symmetric = _is_conjugate_symmetric(g, M, shift)
    s_list, w_list = zip(*(_contour(M, ti, symmetric, shift) for ti in t_arr))
    s = np.stack(s_list)
    w = np.stack(w_list)
    with np.errstate(all="ignore"):
        gv = np.asarray(g(s), dtype=complex)
    bad = ~np.isfinite(gv)
    if np.any(bad):
        loc = complex(s[bad][0])
        raise PoleError(f"transform is singular on the Talbot contour at s = {loc}", location=loc)
    if not _decays_in_right_half_plane(g, 2.0 * M / (5.0 * t_arr.max()), shift):
        raise UnsuitableTransformError(
            "transform does not decay in the right half-plane; its inverse is distributional")
    terms = w * gv
    mag = np.abs(terms)
    if np.any(mag[:, -1] > 1e-8 * mag.sum(axis=1)):
        raise UnsuitableTransformError(
            "Talbot contour sum does not converge; the transform grows too fast to the left")
    out = np.sum(terms, axis=1)
    if symmetric:
        out = out.real + 0j
    return out[0] if np.ndim(t) == 0 else out


def ilt_accuracy_probe(g, t, M=DEFAULT_M, **kwargs):
    """|talbot_ilt(M) - talbot_ilt(M/2)|."""
    half = M // 2 + (M // 2) % 2
    return np.abs(talbot_ilt(g, t, M, **kwargs) - talbot_ilt(g, t, max(half, 8), **kwargs))
