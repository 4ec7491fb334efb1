"""Inverse problems: lift invariant coordinates back to explicit SU(2) tuples,
and decide K-conjugacy of unitary tuples constructively.

The rank-3 lift realizes the quaternion imaginary parts as a Cholesky frame
of their Gram matrix; the two sheets differ in the sign of the j-component
c3 of the third matrix, and coincide exactly when the normalized Gram
determinant t123 vanishes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import DEFAULT_TOL, frob, polar, unitary_eig
from .groups import (
    DimensionMismatch,
    NotInGroup,
    RepTuple,
    require_valid,
    su,
)
from .invariants import SU2Rank2Coords, SU2Rank3Coords, su2_rank3_coords
from .semialgebraic import in_su2_rank2_image, in_su2_rank3_image, sigma


class NotInImage(ValueError):
    """Coordinates violate the image inequalities beyond tolerance."""


class DegenerateUnhandled(ValueError):
    """Every relabeling degenerates and the diagonal fallback fails."""


class DegenerateSpectrum(ValueError):
    """First component's spectrum is too clustered for the conjugacy algorithm."""


@dataclass(frozen=True)
class LiftResult:
    tuples: tuple
    unique: bool
    t123: float | None = None
    signs: tuple = ()


def _sqrt_clamped(x: float, tol: float, what: str) -> float:
    if x < -tol:
        raise NotInImage(f"{what} = {x:.3e} is negative beyond tol={tol:g}")
    return float(np.sqrt(max(x, 0.0)))


def su2_rank2_lift(a: SU2Rank2Coords, tol: float = DEFAULT_TOL) -> LiftResult:
    """Solve (a1, a2, a3) for a pair X1 = diag, X2 = a2 + b2 i + c2 j.

    b1 = sqrt(1-a1^2), b2 = (a3 - a1 a2)/b1, c2 = sqrt(sigma)/b1 (the stable
    form of sqrt(1 - a2^2 - b2^2)); for b1 ~ 0 (X1 central) the fallback
    c2 = 0, b2 = sqrt(1-a2^2) applies.
    """
    if not in_su2_rank2_image(a, tol).inside:
        raise NotInImage("coordinates fail the sigma-ball inequalities")
    b1 = _sqrt_clamped(1.0 - a.a1**2, tol, "1-a1^2")
    if b1 <= tol:
        b2 = _sqrt_clamped(1.0 - a.a2**2, tol, "1-a2^2")
        c2 = 0.0
    else:
        b2 = (a.a3 - a.a1 * a.a2) / b1
        sig = sigma(a)
        c2 = _sqrt_clamped(sig, tol, "sigma") / b1
    x1 = np.array([[a.a1 + 1j * b1, 0.0], [0.0, a.a1 - 1j * b1]])
    x2 = np.array([[a.a2 + 1j * b2, c2], [-c2, a.a2 - 1j * b2]])
    return LiftResult(
        tuples=(RepTuple(su(2), (x1, x2)),), unique=True, t123=None, signs=(1,)
    )


def _gram(c: SU2Rank3Coords) -> np.ndarray:
    a = [c.a1, c.a2, c.a3]
    pair = {(0, 1): c.a12, (0, 2): c.a13, (1, 2): c.a23}
    r = np.empty((3, 3))
    for j in range(3):
        r[j, j] = 1.0 - a[j] ** 2
    for (j, k), v in pair.items():
        r[j, k] = r[k, j] = v - a[j] * a[k]
    return r


def _permute_coords(c: SU2Rank3Coords, perm) -> SU2Rank3Coords:
    a = [c.a1, c.a2, c.a3]
    pair = {(0, 1): c.a12, (0, 2): c.a13, (1, 2): c.a23, }
    for (j, k), v in list(pair.items()):
        pair[(k, j)] = v
    p = perm
    return SU2Rank3Coords(
        a[p[0]], a[p[1]], a[p[2]],
        pair[(p[0], p[1])], pair[(p[0], p[2])], pair[(p[1], p[2])],
    )


def _generic_rank3_lift(c: SU2Rank3Coords, sign: int, tol: float, c3_zero: bool):
    """Cholesky frame of the imaginary parts; requires r11 > tol, s12 > tol.

    The j-component magnitude is c3^2 = det(r)/s12 (the third Cholesky pivot
    of the Gram matrix), which vanishes exactly when t123 does; callers pass
    ``c3_zero`` when |t123| <= tol so the unique sheet carries c3 = 0 exactly
    rather than sqrt of rounding noise.
    """
    r = _gram(c)
    r11 = r[0, 0]
    s12 = r11 * r[1, 1] - r[0, 1] ** 2
    if r11 <= tol or s12 <= tol:
        return None
    detr = float(np.linalg.det(r))
    b1 = np.sqrt(r11)
    b2 = r[0, 1] / b1
    d2 = np.sqrt(s12) / b1
    b3 = r[0, 2] / b1
    d3 = (r[1, 2] * r11 - r[0, 1] * r[0, 2]) / (d2 * r11)
    if c3_zero:
        c3 = 0.0
    else:
        c3 = sign * _sqrt_clamped(detr, tol, "det(r)") / np.sqrt(s12)
    x1 = np.array([[c.a1 + 1j * b1, 0.0], [0.0, c.a1 - 1j * b1]])
    x2 = np.array([[c.a2 + 1j * b2, 1j * d2], [1j * d2, c.a2 - 1j * b2]])
    x3 = np.array([[c.a3 + 1j * b3, c3 + 1j * d3], [-c3 + 1j * d3, c.a3 - 1j * b3]])
    return x1, x2, x3


def _diagonal_rank3_lift(c: SU2Rank3Coords, tol: float):
    """All pairs reducible: simultaneously diagonal solution from the a_j.

    Imaginary parts are collinear; only the relative signs eps_j of the
    i-components remain, found by a search over the four combinations.
    """
    a = [c.a1, c.a2, c.a3]
    b = [np.sqrt(max(1.0 - x * x, 0.0)) for x in a]
    target = np.array([c.a12, c.a13, c.a23])
    for e2 in (1.0, -1.0):
        for e3 in (1.0, -1.0):
            eps = [1.0, e2, e3]
            got = np.array(
                [
                    a[0] * a[1] + eps[0] * eps[1] * b[0] * b[1],
                    a[0] * a[2] + eps[0] * eps[2] * b[0] * b[2],
                    a[1] * a[2] + eps[1] * eps[2] * b[1] * b[2],
                ]
            )
            if np.max(np.abs(got - target)) <= max(100 * tol, 1e-7):
                mats = tuple(
                    np.array([[aj + 1j * ej * bj, 0.0], [0.0, aj - 1j * ej * bj]])
                    for aj, bj, ej in zip(a, b, eps)
                )
                return mats
    return None


# Every permutation, fixed order: the generic branch needs the first index
# non-central (r_aa > 0) and the leading pair irreducible (s_ab > 0), and
# e.g. "X1 central, pair (2,3) irreducible" is reachable only with primary
# pair {2,3}, which the first three orderings never produce.
_ORDERINGS = (
    (0, 1, 2),
    (1, 0, 2),
    (2, 0, 1),
    (0, 2, 1),
    (1, 2, 0),
    (2, 1, 0),
)


def su2_rank3_lift(
    c: SU2Rank3Coords, sign: int | None = None, tol: float = DEFAULT_TOL
) -> LiftResult:
    """Lift six a-coordinates to one SU(2) triple per requested sheet.

    Returns both sheets when ``sign`` is None and the lift is non-unique
    (|t123| > tol).  Index relabelings are tried in a fixed order before the
    simultaneous-diagonal fallback; whenever relabeling is needed the lift is
    automatically unique (a degenerate pair forces t123 = 0).
    """
    if not in_su2_rank3_image(c, tol).inside:
        raise NotInImage("coordinates fail the rank-3 image inequalities")
    if max(abs(v) for v in c.as_array()) > 1.0 + tol:
        raise NotInImage("coordinates leave [-1, 1]")
    r = _gram(c)
    diag = r[0, 0] * r[1, 1] * r[2, 2]
    t123 = float(np.linalg.det(r) / diag) if diag > tol else 0.0
    unique = abs(t123) <= tol
    signs = (sign,) if sign is not None else ((1,) if unique else (1, -1))

    for perm in _ORDERINGS:
        cp = _permute_coords(c, perm)
        out = []
        for s in signs:
            mats = _generic_rank3_lift(cp, s, tol, c3_zero=unique)
            if mats is None:
                out = None
                break
            unperm = [None, None, None]
            for slot, orig in enumerate(perm):
                unperm[orig] = mats[slot]
            out.append(RepTuple(su(2), tuple(unperm)))
        if out is not None:
            return LiftResult(tuples=tuple(out), unique=unique, t123=t123, signs=signs)

    mats = _diagonal_rank3_lift(c, tol)
    if mats is None:
        raise DegenerateUnhandled("no ordering is generic and the diagonal fallback failed")
    rho = RepTuple(su(2), mats)
    got = su2_rank3_coords(rho, max(tol, 1e-8)).as_array()
    if np.max(np.abs(got - c.as_array())) > max(100 * tol, 1e-7):
        raise DegenerateUnhandled("diagonal fallback does not reproduce the coordinates")
    return LiftResult(tuples=(rho,), unique=True, t123=t123, signs=(0,))


# --- constructive K-conjugacy ------------------------------------------------


def _aligned_eig(x, tol: float):
    vals, v = unitary_eig(x)
    ang = np.angle(vals)
    gaps = [
        min(abs(ang[i] - ang[j]), 2 * np.pi - abs(ang[i] - ang[j]))
        for i in range(len(ang))
        for j in range(i + 1, len(ang))
    ]
    if min(gaps) <= tol:
        raise DegenerateSpectrum("first component has clustered eigenvalues")
    return vals, v


def _match_perm(w1, w2, tol: float):
    """Permutation p with w2[p] ~ w1, or None."""
    from itertools import permutations

    n = len(w1)
    best, best_err = None, np.inf
    for p in permutations(range(n)):
        err = max(abs(w1[i] - w2[p[i]]) for i in range(n))
        if err < best_err:
            best, best_err = p, err
    if best_err > max(10 * tol, 1e-7):
        return None
    return best


def unitary_conjugacy(rho1: RepTuple, rho2: RepTuple, tol: float = DEFAULT_TOL):
    """Find k in SU(n) with k rho1 k^-1 = rho2 within 10*tol, or None.

    Diagonalize both first components, align their spectra by the (unique,
    given simple spectra) eigenvalue-matching permutation, then fix the
    residual diagonal-torus phases from the largest off-diagonal entries of
    the second component, one per eigenline.  The candidate is verified on
    every component before being returned.
    """
    if rho1.descriptor != rho2.descriptor or rho1.r != rho2.r:
        raise DimensionMismatch("tuples must share descriptor and rank")
    if rho1.descriptor.family != "SU":
        raise NotInGroup("unitary_conjugacy expects unitary-valued tuples")
    require_valid(rho1, max(tol, 1e-8))
    require_valid(rho2, max(tol, 1e-8))
    n = rho1.n
    w1, v1 = _aligned_eig(rho1[0], tol)
    w2, v2 = _aligned_eig(rho2[0], tol)
    p = _match_perm(w1, w2, tol)
    if p is None:
        return None
    v2 = v2[:, list(p)]

    # Components of both tuples in their aligned eigenbases.
    a = [v1.conj().T @ m @ v1 for m in rho1.matrices]
    b = [v2.conj().T @ m @ v2 for m in rho2.matrices]

    # Torus phases: phi_j - phi_k = arg(b_jk / a_jk), solved along a greedy
    # spanning tree rooted at eigenline 0, preferring the second component.
    phi = np.zeros(n)
    known = {0}
    while len(known) < n:
        best = None  # (weight, j_new, j_old, comp)
        for comp in range(1, rho1.r):
            for j in range(n):
                if j in known:
                    continue
                for k in known:
                    w = min(abs(a[comp][k, j]), abs(b[comp][k, j]))
                    if best is None or w > best[0]:
                        best = (w, j, k, comp)
        if best is None or best[0] <= tol:
            # Unresolved eigenline (vanishing couplings): leave phase 0 and
            # let verification decide.
            known |= set(range(n))
            break
        w, j, k, comp = best
        # Theta a Theta* = b with Theta = diag(e^{i phi}) gives
        # e^{i(phi_k - phi_j)} a_kj = b_kj.
        phi[j] = phi[k] - np.angle(b[comp][k, j] / a[comp][k, j])
        known.add(j)

    k_mat = v2 @ np.diag(np.exp(1j * phi)) @ v1.conj().T
    k_mat = polar(k_mat).k
    k_mat = k_mat * np.exp(-1j * np.angle(np.linalg.det(k_mat)) / n)
    err = max(frob(k_mat @ m1 @ k_mat.conj().T - m2) for m1, m2 in zip(rho1.matrices, rho2.matrices))
    if err <= 10.0 * max(tol, 1e-9):
        return k_mat
    return None
