"""Tangent spaces of the cone, induced metrics, and the quotient cometric.

The tangent space at a cone point x is { X : Re f(X, x) = 0 }.  The real
part of the form restricted there is degenerate exactly along x, descends to
the ray quotient, and changes by lambda^2 under x -> lambda x, so the ray
quotient carries a conformal class of signature (2p-1, 2q-1).  On the
projective quadric the right object is a degenerate cometric: invert the
quotient metric and restrict to the annihilator of the phase direction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .charts import extend_to_witt_basis
from .core import (
    DEFAULT_TOL,
    ConePoint,
    CVector,
    form_eval,
)
from .errors import (
    NondegeneracyError,
    TangencyError,
    UnsupportedFrameError,
)
from .quotients import Split, canonicalize_ray

# Relative tolerance used when certifying that basis vectors are tangent.
TANGENCY_TOL = 1e-8

__all__ = [
    "MetricMatrix",
    "AdaptedFrame",
    "adapted_frame",
    "tangency_residual",
    "induced_metric",
    "metric_signature",
    "skew_form",
    "cotangent_metric_qtilde",
    "dualize_degenerate",
    "quotient_coefficients",
    "conformal_factor",
]


@dataclass(frozen=True, eq=False)
class MetricMatrix:
    """Real symmetric matrix of a (possibly degenerate) metric in a basis.

    signature is the triple (n_plus, n_minus, n_zero) counted at threshold
    tol * scale; radical_basis rows span the numerical kernel.  scale
    defaults to the largest |eigenvalue| but can be pinned externally, which
    matters when the matrix itself is a near-zero block of a larger object.
    """

    entries: np.ndarray
    basis_labels: tuple[str, ...]
    signature: tuple[int, int, int]
    radical_basis: np.ndarray
    scale: float

    @classmethod
    def from_entries(cls, entries, basis_labels, tol: float = DEFAULT_TOL,
                     scale: float | None = None) -> "MetricMatrix":
        e = np.array(entries, dtype=float)
        if e.ndim != 2 or e.shape[0] != e.shape[1]:
            raise ValueError(f"entries must be square, got {e.shape}")
        labels = tuple(basis_labels)
        if len(labels) != e.shape[0]:
            raise ValueError("one label per basis vector required")
        skew = float(np.max(np.abs(e - e.T))) if e.size else 0.0
        sym_scale = float(np.max(np.abs(e))) if e.size else 0.0
        if skew > 1e-8 * max(sym_scale, 1.0):
            raise ValueError(f"entries deviate from symmetric by {skew:.3e}")
        e = (e + e.T) / 2.0
        e.flags.writeable = False
        if e.size:
            evals, evecs = np.linalg.eigh(e)
        else:
            evals, evecs = np.zeros(0), np.zeros((0, 0))
        eff_scale = float(np.max(np.abs(evals))) if evals.size else 0.0
        if scale is not None:
            eff_scale = float(scale)
        threshold = tol * eff_scale
        n_plus = int(np.sum(evals > threshold))
        n_minus = int(np.sum(evals < -threshold))
        n_zero = e.shape[0] - n_plus - n_minus
        radical = evecs[:, np.abs(evals) <= threshold].T.copy()
        radical.flags.writeable = False
        return cls(e, labels, (n_plus, n_minus, n_zero), radical, eff_scale)

    @property
    def rank(self) -> int:
        return self.signature[0] + self.signature[1]

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def to_json(self) -> dict:
        return {
            "basis_labels": list(self.basis_labels),
            "entries": [[float(v) for v in row] for row in self.entries],
            "signature": list(self.signature),
            "radical_basis": [[float(v) for v in row] for row in self.radical_basis],
            "scale": self.scale,
        }


def metric_signature(g, tol: float = DEFAULT_TOL) -> tuple[int, int, int]:
    """Eigenvalue signs of a symmetric matrix at threshold tol * max|eig|."""
    entries = g.entries if isinstance(g, MetricMatrix) else np.asarray(g, dtype=float)
    return MetricMatrix.from_entries(
        entries, [f"v{i}" for i in range(entries.shape[0])], tol
    ).signature


@dataclass(frozen=True, eq=False)
class AdaptedFrame:
    """Witt-aligned frames at a cone point x.

    tangent_basis is {f1 = x, f2 = ix, f3 = i(e_1 - e_n)} followed by the
    middle vectors m_j, i m_j; quotient_basis drops f1 and spans the tangent
    space modulo the ray direction.
    """

    x: ConePoint
    witt_basis: tuple[CVector, ...]
    tangent_basis: tuple[CVector, ...]
    quotient_basis: tuple[CVector, ...]
    quotient_labels: tuple[str, ...]


def adapted_frame(x: ConePoint) -> AdaptedFrame:
    """Build the adapted tangent and quotient frames at x."""
    basis = extend_to_witt_basis(x)
    e1, en = basis[0], basis[-1]
    mids = basis[1:-1]
    f1 = x.vector
    f2 = 1j * x.vector
    f3 = 1j * (e1 - en)
    quotient = [f2, f3]
    labels = ["f2", "f3"]
    for k, m in enumerate(mids):
        quotient.extend([m, 1j * m])
        labels.extend([f"e{k + 2}", f"ie{k + 2}"])
    return AdaptedFrame(
        x,
        tuple(basis),
        tuple([f1] + quotient),
        tuple(quotient),
        tuple(labels),
    )


def tangency_residual(x: ConePoint, vec: CVector) -> float:
    """|Re f(X, x)| relative to the norms; zero means tangent at x."""
    denom = vec.norm() * x.vector.norm()
    if denom == 0.0:
        return 0.0
    return abs(form_eval(vec, x.vector).real) / denom


def _check_tangent(x: ConePoint, vectors, tol: float):
    for k, v in enumerate(vectors):
        res = tangency_residual(x, v)
        if res > tol:
            raise TangencyError(
                f"basis vector {k} has tangency residual {res:.3e} at x"
            )


def induced_metric(x: ConePoint, frame: str = "adapted", *,
                   basis=None, labels=None,
                   tol: float = DEFAULT_TOL) -> MetricMatrix:
    """Matrix [Re f(v_i, v_j)] of the induced metric in a tangent frame.

    frame="adapted" uses the quotient basis of the adapted frame at x (the
    metric there is nondegenerate of signature (2p-1, 2q-1)).
    frame="epsilon" is the two-dimensional case only: {i e_1, i e_n} of the
    Witt basis, where the matrix is diag(1, -1).  An explicit `basis`
    overrides the named frame, e.g. to evaluate at a transported frame or
    over the full tangent basis.
    """
    if basis is None:
        if frame == "adapted":
            fr = adapted_frame(x)
            basis = fr.quotient_basis
            labels = fr.quotient_labels
        elif frame == "epsilon":
            if x.signature.n != 2:
                raise UnsupportedFrameError(
                    "epsilon frame exists only in signature (1,1)"
                )
            witt = extend_to_witt_basis(x)
            basis = (1j * witt[0], 1j * witt[1])
            labels = ("eps1", "eps2")
        else:
            raise ValueError(f"unknown frame {frame!r}")
    basis = tuple(basis)
    if labels is None:
        labels = tuple(f"v{i}" for i in range(len(basis)))
    _check_tangent(x, basis, TANGENCY_TOL)
    entries = np.array(
        [[form_eval(a, b).real for b in basis] for a in basis], dtype=float
    )
    return MetricMatrix.from_entries(entries, labels, tol)


def skew_form(x: ConePoint, vec_a: CVector, vec_b: CVector,
              tol: float = TANGENCY_TOL) -> float:
    """Value Im f(X, Y) of the induced skew form on tangent vectors at x."""
    for v in (vec_a, vec_b):
        res = tangency_residual(x, v)
        if res > tol:
            raise TangencyError(
                f"skew form argument has tangency residual {res:.3e}"
            )
    return float(form_eval(vec_a, vec_b).imag)


def cotangent_metric_qtilde(x: ConePoint, *, basis=None, labels=None,
                            tol: float = DEFAULT_TOL) -> MetricMatrix:
    """Degenerate cometric of the projective quadric at the class of x.

    Inverts the quotient metric and restricts to the annihilator of the
    phase direction (the first quotient frame member, the class of ix).
    Rank is 2n-4 with a one-dimensional radical for n >= 3, and zero for
    n = 2; the rank threshold is pinned to the largest singular value of
    the full inverse before restriction.
    """
    if basis is None:
        fr = adapted_frame(x)
        basis = fr.quotient_basis
        labels = fr.quotient_labels
    basis = tuple(basis)
    if labels is None:
        labels = tuple(f"v{i}" for i in range(len(basis)))
    _check_tangent(x, basis, TANGENCY_TOL)
    gram = np.array(
        [[form_eval(a, b).real for b in basis] for a in basis], dtype=float
    )
    try:
        inverse = np.linalg.inv(gram)
    except np.linalg.LinAlgError as exc:
        raise NondegeneracyError("quotient metric is singular") from exc
    residual = float(np.max(np.abs(gram @ inverse - np.eye(gram.shape[0]))))
    if residual > 1e-6:
        raise NondegeneracyError(
            f"quotient metric inversion failed (residual {residual:.3e})"
        )
    full_scale = float(np.linalg.svd(inverse, compute_uv=False)[0])
    sub = inverse[1:, 1:]
    dual_labels = tuple(f"{l}*" for l in labels[1:])
    return MetricMatrix.from_entries(sub, dual_labels, tol, scale=full_scale)


def dualize_degenerate(inclusion, f1, tol: float = DEFAULT_TOL) -> MetricMatrix:
    """Degenerate dual form iota f1^{-1} iota^T on the ambient dual space.

    inclusion: real (w_dim, v_dim) matrix of full column rank embedding the
    nondegenerate piece; f1: real symmetric invertible (v_dim, v_dim) matrix.
    The result has rank v_dim and the radical is returned with it.
    """
    a = np.asarray(inclusion, dtype=float)
    f = np.asarray(f1, dtype=float)
    if a.ndim != 2:
        raise ValueError("inclusion must be a matrix")
    if f.shape != (a.shape[1], a.shape[1]):
        raise ValueError("f1 must be square matching inclusion columns")
    sv = np.linalg.svd(f, compute_uv=False) if f.size else np.zeros(0)
    if f.size and sv[-1] <= tol * sv[0]:
        raise NondegeneracyError("f1 is singular at tolerance")
    dual = a @ np.linalg.inv(f) @ a.T if f.size else np.zeros((a.shape[0],) * 2)
    labels = tuple(f"w{i}*" for i in range(a.shape[0]))
    return MetricMatrix.from_entries(dual, labels, tol)


def quotient_coefficients(x: ConePoint, basis, vectors):
    """Real coefficients of `vectors` in `basis`, modulo the ray direction.

    Solves the real least-squares problem over span(basis + {x}) and drops
    the x coefficient.  Returns (coefficient matrix, relative residual);
    column k holds the coefficients of vectors[k].
    """
    def realify(v: CVector) -> np.ndarray:
        return np.concatenate([v.components.real, v.components.imag])

    cols = [realify(b) for b in basis] + [realify(x.vector)]
    a = np.column_stack(cols)
    b = np.column_stack([realify(v) for v in vectors])
    sol, _, _, _ = np.linalg.lstsq(a, b, rcond=None)
    residual = float(np.linalg.norm(a @ sol - b) / max(np.linalg.norm(b), 1e-30))
    return sol[: len(basis), :], residual


def conformal_factor(x, split_a: Split, split_b: Split):
    """Factor between the quotient metrics built from two different splits.

    Canonicalizes x with each split, builds independent adapted frames, and
    expresses one metric in the other's frame on the shared ray-quotient
    tangent space.  Returns (factor, relative residual); the two metrics
    agree up to this positive factor when the residual is small.
    """
    ray_a = canonicalize_ray(x, split_a)
    ray_b = canonicalize_ray(x, split_b)
    xa, xb = ray_a.point, ray_b.point
    frame_a = adapted_frame(xa)
    frame_b = adapted_frame(xb)
    g_a = induced_metric(xa, basis=frame_a.quotient_basis,
                         labels=frame_a.quotient_labels)
    g_b = induced_metric(xb, basis=frame_b.quotient_basis,
                         labels=frame_b.quotient_labels)
    mu = xb.vector.norm() / xa.vector.norm()
    coeffs, fit_residual = quotient_coefficients(
        xa, frame_a.quotient_basis, frame_b.quotient_basis
    )
    if fit_residual > 1e-8:
        raise TangencyError(
            f"frames do not span a common quotient (residual {fit_residual:.3e})"
        )
    change = coeffs / mu
    inv_change = np.linalg.inv(change)
    in_frame_a = inv_change.T @ g_b.entries @ inv_change
    num = float(np.tensordot(in_frame_a, g_a.entries))
    den = float(np.tensordot(g_a.entries, g_a.entries))
    factor = num / den
    residual = float(
        np.linalg.norm(in_frame_a - factor * g_a.entries)
        / (abs(factor) * np.linalg.norm(g_a.entries))
    )
    return factor, residual
