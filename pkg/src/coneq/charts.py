"""Witt bases at a cone point and the affine compactification chart.

Given a cone point x, a hyperbolic partner u (isotropic, f(u, x) = 1) splits
the space as  span{x, u} + M,  where M is the orthogonal complement of the
hyperbolic plane.  The chart

    kappa0(r, y) = y + u + (-f(y, y)/2 + r i) x,    y in M, r real,

parametrizes every projective class except those orthogonal to x; that
exceptional set (the orthogonal boundary stratum) is stratified into the
apex class of x itself and a generic part, classified here by normalized
coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    DEFAULT_TOL,
    ConePoint,
    CVector,
    Signature,
    basis_vector,
    form_eval,
    make_rng,
    orthonormalize_indefinite,
)
from .errors import (
    InternalContractError,
    NotInAperpError,
    UnsupportedChartError,
    UnsupportedSignatureError,
)
from .quotients import ProjRep, Split, canonicalize_phase

__all__ = [
    "ChartFrame",
    "InAperp",
    "IN_APERP",
    "AperpClass",
    "hyperbolic_partner",
    "extend_to_witt_basis",
    "make_chart",
    "kappa0",
    "kappa",
    "chart_inverse",
    "is_perp",
    "aperp_classify",
    "aperp_dimension_estimate",
    "sample_aperp_point",
]


def hyperbolic_partner(x: ConePoint, v_hint: CVector | None = None) -> CVector:
    """Isotropic u with f(u, x) = 1, spanning a hyperbolic plane with x.

    Starts from v_hint, or else from the standard basis vector at the
    largest-modulus component of x (ties to the lowest index); normalizes
    v' = v / f(v, x) and returns u = v' - f(v', v') x / 2.
    """
    vec = x.vector
    if v_hint is not None:
        v = v_hint
    else:
        j = int(np.argmax(np.abs(vec.components)))
        v = basis_vector(x.signature, j)
    pairing = form_eval(v, vec)
    if abs(pairing) <= 1e-12 * v.norm() * vec.norm():
        raise InternalContractError(
            "candidate vector is orthogonal to x; pick a different hint"
        )
    vp = v * (1.0 / pairing)
    return vp - (0.5 * form_eval(vp, vp)) * vec


def _independent_subset(cands: list[CVector], count: int) -> list[CVector]:
    """Greedy norm-descending choice of `count` linearly independent vectors,
    tested by Euclidean residual against the already chosen ones."""
    order = sorted(range(len(cands)), key=lambda j: -cands[j].norm())
    scale = cands[order[0]].norm() if cands else 0.0
    for threshold in (1e-8, 1e-12):
        shadow: list[np.ndarray] = []
        picked: list[CVector] = []
        for j in order:
            v = cands[j].components.copy()
            for c in shadow:
                v -= np.vdot(c, v) * c
            if np.linalg.norm(v) > threshold * scale:
                shadow.append(v / np.linalg.norm(v))
                picked.append(cands[j])
            if len(picked) == count:
                return picked
    raise InternalContractError(
        f"could not find {count} independent middle vectors"
    )


def extend_to_witt_basis(x: ConePoint) -> list[CVector]:
    """Basis [e_1, m_2, ..., m_{n-1}, e_n] with e_1 + e_n = x, where e_1,
    e_n span a hyperbolic plane and the m_j are eta-orthonormal (positive
    block first) and orthogonal to it."""
    sig = x.signature
    n = sig.n
    u = hyperbolic_partner(x)
    e1 = 0.5 * x.vector + u
    en = 0.5 * x.vector - u
    cands = []
    for j in range(n):
        v = basis_vector(sig, j)
        w = v - form_eval(v, e1) * e1 + form_eval(v, en) * en
        cands.append(w)
    raw = _independent_subset(cands, n - 2) if n > 2 else []
    mids = orthonormalize_indefinite(raw, (sig.p - 1, sig.q - 1))
    return [e1] + mids + [en]


@dataclass(frozen=True, eq=False)
class ChartFrame:
    """Chart center x, hyperbolic partner u, and an eta-orthonormal basis of
    the orthogonal complement M (positive directions first)."""

    x: ConePoint
    u: CVector
    mu_basis: tuple[CVector, ...]

    def __post_init__(self):
        object.__setattr__(self, "mu_basis", tuple(self.mu_basis))
        sig = self.x.signature
        if len(self.mu_basis) != sig.n - 2:
            raise UnsupportedChartError(
                f"need {sig.n - 2} middle vectors, got {len(self.mu_basis)}"
            )
        xv = self.x.vector
        checks = [abs(form_eval(self.u, self.u)),
                  abs(form_eval(self.u, xv) - 1.0)]
        mu_eta = [1.0] * (sig.p - 1) + [-1.0] * (sig.q - 1)
        for i, m in enumerate(self.mu_basis):
            checks.append(abs(form_eval(m, xv)))
            checks.append(abs(form_eval(m, self.u)))
            for k, m2 in enumerate(self.mu_basis):
                want = mu_eta[i] if i == k else 0.0
                checks.append(abs(form_eval(m, m2) - want))
        worst = max(checks)
        if worst > DEFAULT_TOL:
            raise UnsupportedChartError(
                f"chart identities fail by {worst:.3e}"
            )

    @property
    def signature(self) -> Signature:
        return self.x.signature

    def witt_plus(self) -> CVector:
        """e_1 = x/2 + u."""
        return 0.5 * self.x.vector + self.u

    def witt_minus(self) -> CVector:
        """e_n = x/2 - u."""
        return 0.5 * self.x.vector - self.u

    def to_json(self) -> dict:
        return {
            "signature": self.signature.to_json(),
            "x": self.x.vector.to_json()["components"],
            "u": self.u.to_json()["components"],
            "mu_basis": [m.to_json()["components"] for m in self.mu_basis],
        }


def make_chart(x: ConePoint, v_hint: CVector | None = None) -> ChartFrame:
    """Witt extension of x packaged as a chart frame."""
    sig = x.signature
    u = hyperbolic_partner(x, v_hint)
    if sig.n > 2:
        basis = extend_to_witt_basis(x)
        mids = tuple(basis[1:-1])
    else:
        mids = ()
    return ChartFrame(x, u, mids)


def _coords_to_vector(chart: ChartFrame, y_coords) -> CVector:
    sig = chart.signature
    coords = np.asarray(y_coords, dtype=np.complex128).reshape(-1)
    if coords.shape != (sig.n - 2,):
        raise ValueError(
            f"expected {sig.n - 2} chart coordinates, got {coords.shape[0]}"
        )
    y = CVector(np.zeros(sig.n, dtype=np.complex128), sig)
    for c, m in zip(coords, chart.mu_basis):
        y = y + complex(c) * m
    return y


def kappa0(chart: ChartFrame, r: float, y_coords) -> ConePoint:
    """Isotropic representative y + u + (-f(y,y)/2 + r i) x of the chart
    point (r, y); certified with f(kappa0, kappa0) = 0 and f(x, kappa0) = 1
    at tolerance 1e-10."""
    y = _coords_to_vector(chart, y_coords)
    beta = complex(-0.5 * form_eval(y, y).real, float(r))
    vec = y + chart.u + beta * chart.x.vector
    out = ConePoint(vec, tol=1e-10)
    pairing = form_eval(chart.x.vector, out.vector)
    if abs(pairing - 1.0) > 1e-10:
        raise InternalContractError(
            f"chart normalization f(x, kappa0) = {pairing:.15g} != 1"
        )
    return out


def kappa(chart: ChartFrame, r: float, y_coords, split: Split | None = None) -> ProjRep:
    """Projective chart map: the canonical class of kappa0(r, y)."""
    return canonicalize_phase(kappa0(chart, r, y_coords), split)


def is_perp(a, b, tol: float = DEFAULT_TOL) -> bool:
    """Whether |f(a, b)| <= tol * ||a|| * ||b||; independent of the chosen
    representatives of either class."""
    av = _as_vector(a)
    bv = _as_vector(b)
    return abs(form_eval(av, bv)) <= tol * av.norm() * bv.norm()


def _as_vector(obj) -> CVector:
    if isinstance(obj, CVector):
        return obj
    if isinstance(obj, ConePoint):
        return obj.vector
    if isinstance(obj, ProjRep):
        return obj.point.vector
    return obj.point.vector  # RayRep


@dataclass(frozen=True)
class InAperp:
    """Sentinel result: the requested class is orthogonal to the chart
    center, hence outside the chart's range."""

    def to_json(self) -> dict:
        return {"result": "InAperp"}


IN_APERP = InAperp()


def chart_inverse(chart: ChartFrame, b, tol: float = DEFAULT_TOL):
    """Chart coordinates (r, y) of the class of b, or IN_APERP when b is
    orthogonal to the chart center at tolerance.

    y is returned as the coefficient vector along mu_basis.  The recovered
    data satisfy Re f(b', u) = -f(y, y)/2 for the rescaled representative
    b' with f(b', x) = 1; that identity is re-verified.
    """
    bv = _as_vector(b)
    xv = chart.x.vector
    pairing = form_eval(bv, xv)
    if abs(pairing) <= tol * bv.norm() * xv.norm():
        return IN_APERP
    z = bv * (1.0 / pairing)
    beta = form_eval(z, chart.u)
    y = np.array(
        [form_eval(z, m) / form_eval(m, m).real for m in chart.mu_basis],
        dtype=np.complex128,
    )
    fyy = float(
        sum(form_eval(m, m).real * abs(c) ** 2 for c, m in zip(y, chart.mu_basis))
    )
    drift = abs(beta.real + 0.5 * fyy)
    if drift > 1e-6 * max(1.0, abs(beta), abs(fyy)):
        raise InternalContractError(
            f"recovered Re(beta) deviates from -f(y,y)/2 by {drift:.3e}"
        )
    return float(beta.imag), y


@dataclass(frozen=True, eq=False)
class AperpClass:
    """Normalized invariants of a boundary class.

    Apex: the class of the chart center itself (alpha normalized to 1, no
    middle coordinates).  Generic: middle coordinates rescaled so each block
    has unit norm, with a joint phase gauge fixed by the largest-modulus
    middle entry; alpha transforms covariantly under both normalizations.
    """

    kind: str
    alpha: complex
    plus_coords: np.ndarray
    minus_coords: np.ndarray

    def to_json(self) -> dict:
        out = {"kind": self.kind,
               "alpha": [self.alpha.real, self.alpha.imag]}
        if self.kind == "Generic":
            out["plus"] = [[c.real, c.imag] for c in self.plus_coords]
            out["minus"] = [[c.real, c.imag] for c in self.minus_coords]
        return out


def aperp_classify(chart: ChartFrame, b, tol: float = DEFAULT_TOL) -> AperpClass:
    """Classify a boundary point as the apex class or a generic class.

    b must be isotropic and orthogonal to the chart center.  Coordinates are
    taken in the Witt basis of the chart: b = alpha x + sum_j m_j mu_j.
    """
    bv = _as_vector(b)
    xv = chart.x.vector
    if not is_perp(bv, xv, tol):
        raise NotInAperpError(
            "point is not orthogonal to the chart center at tolerance"
        )
    e1 = chart.witt_plus()
    en = chart.witt_minus()
    c1 = form_eval(bv, e1)
    cn = -form_eval(bv, en)
    alpha = 0.5 * (c1 + cn)
    m = np.array(
        [form_eval(bv, mu) / form_eval(mu, mu).real for mu in chart.mu_basis],
        dtype=np.complex128,
    )
    total = np.sqrt(abs(alpha) ** 2 + float(np.sum(np.abs(m) ** 2)))
    if total == 0.0:
        raise NotInAperpError("zero coordinates in the boundary chart")
    if np.linalg.norm(m) <= tol * total:
        p1 = chart.signature.p - 1
        return AperpClass("Apex", 1.0 + 0.0j, m[:p1] * 0.0, m[p1:] * 0.0)
    p1 = chart.signature.p - 1
    s_plus = float(np.linalg.norm(m[:p1]) ** 2)
    s_minus = float(np.linalg.norm(m[p1:]) ** 2)
    s = np.sqrt((s_plus + s_minus) / 2.0)
    m = m / s
    alpha = alpha / s
    pivot = _phase_pivot(m)
    gauge = m[pivot] / abs(m[pivot])
    m = m * np.conj(gauge)
    alpha = alpha * np.conj(gauge)
    return AperpClass("Generic", complex(alpha), m[:p1], m[p1:])


def _phase_pivot(values: np.ndarray) -> int:
    mags = np.abs(values)
    top = float(np.max(mags))
    return int(np.nonzero(mags >= top * (1.0 - 1e-12))[0][0])


def sample_aperp_point(chart: ChartFrame, seed: int,
                       apex_probability: float = 0.1) -> ConePoint:
    """Deterministic isotropic sample orthogonal to the chart center.

    With probability apex_probability the sample is a multiple of the center
    (the apex class); otherwise the middle blocks are drawn complex-normal
    and the negative block is rescaled to restore isotropy.  Signatures with
    p = 1 or q = 1 only admit apex points.
    """
    sig = chart.signature
    rng = make_rng(seed, 3)
    alpha = rng.standard_normal() + 1j * rng.standard_normal()
    apex_only = sig.p < 2 or sig.q < 2
    if apex_only or rng.uniform() < apex_probability:
        return ConePoint(alpha * chart.x.vector)
    p1, q1 = sig.p - 1, sig.q - 1
    mp = rng.standard_normal(p1) + 1j * rng.standard_normal(p1)
    mm = rng.standard_normal(q1) + 1j * rng.standard_normal(q1)
    while np.linalg.norm(mp) < 1e-3 or np.linalg.norm(mm) < 1e-3:
        mp = rng.standard_normal(p1) + 1j * rng.standard_normal(p1)
        mm = rng.standard_normal(q1) + 1j * rng.standard_normal(q1)
    mm = mm * (np.linalg.norm(mp) / np.linalg.norm(mm))
    vec = alpha * chart.x.vector
    for c, mu in zip(np.concatenate([mp, mm]), chart.mu_basis):
        vec = vec + complex(c) * mu
    return ConePoint(vec)


def aperp_dimension_estimate(chart: ChartFrame, seed: int = 0,
                             step: float = 1e-5) -> int:
    """Numerical dimension of the generic boundary stratum.

    Builds the parametrization (alpha, middle coordinates) -> canonical
    projective representative at a random base point, differentiates it by
    central differences, and returns the rank of the Jacobian (singular
    values above 1e-6 of the largest).
    """
    sig = chart.signature
    if sig.p < 2 or sig.q < 2:
        raise UnsupportedSignatureError(
            "generic boundary stratum is empty when p or q is 1"
        )
    n = sig.n
    p1 = sig.p - 1
    rng = make_rng(seed, 7)
    dim = 2 + 2 * (n - 2)

    def embed(params: np.ndarray) -> np.ndarray:
        alpha = params[0] + 1j * params[1]
        m = params[2::2] + 1j * params[3::2]
        mp, mm = m[:p1], m[p1:]
        mm = mm * (np.linalg.norm(mp) / np.linalg.norm(mm))
        vec = alpha * chart.x.vector
        for c, mu in zip(np.concatenate([mp, mm]), chart.mu_basis):
            vec = vec + complex(c) * mu
        rep = canonicalize_phase(ConePoint(vec))
        return np.concatenate([rep.components.real, rep.components.imag])

    base = rng.standard_normal(dim)
    while (np.linalg.norm(base[2 : 2 + 2 * p1]) < 0.3
           or np.linalg.norm(base[2 + 2 * p1 :]) < 0.3):
        base = rng.standard_normal(dim)
    jac = np.zeros((2 * n, dim))
    for k in range(dim):
        up = base.copy()
        up[k] += step
        down = base.copy()
        down[k] -= step
        jac[:, k] = (embed(up) - embed(down)) / (2.0 * step)
    sv = np.linalg.svd(jac, compute_uv=False)
    if sv[0] == 0.0:
        return 0
    return int(np.sum(sv > 1e-6 * sv[0]))
