"""Trace words and the named invariant coordinate systems.

Covers the coordinate systems used for (r, n) = (2,2), (3,2) and (2,3):
quaternion real parts a_i for SU(2) pairs and triples with their derived
r/s/t/l scalars, the ten trace coordinates of a rank-2 SU(3)/SL(3) tuple
with their realified u-form and the P/Q symmetric functions, and the
torus-invariant minors of a single 3x3 matrix with their degree-2 relation.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product

import numpy as np

from .linalg import DEFAULT_TOL, cmat
from .groups import NotInGroup, RepTuple, require_valid

REALIFY_TOL = 1e-10


class ComplexInput(ValueError):
    """Input expected real (unitary-derived) carries an imaginary part."""


# --- words ------------------------------------------------------------------


@dataclass(frozen=True)
class Word:
    """Word in the free group: tuple of (generator index 1..r, exponent +-1)."""

    letters: tuple

    def __post_init__(self):
        for g, e in self.letters:
            if g < 1:
                raise IndexError(f"generator index {g} must be >= 1")
            if e not in (1, -1):
                raise ValueError(f"exponent {e} must be +-1")

    @staticmethod
    def parse(text: str) -> "Word":
        """Parse words like ``x1 x2^-1 x1`` (whitespace separated)."""
        letters = []
        for token in text.split():
            m = re.fullmatch(r"x(\d+)(\^-1)?", token)
            if not m:
                raise ValueError(f"bad word token {token!r}")
            letters.append((int(m.group(1)), -1 if m.group(2) else 1))
        return Word(tuple(letters))

    def __str__(self):
        return " ".join(f"x{g}" + ("^-1" if e < 0 else "") for g, e in self.letters)


def evaluate_word(rho: RepTuple, w: Word) -> np.ndarray:
    m = np.eye(rho.n, dtype=complex)
    for g, e in w.letters:
        if g > rho.r:
            raise IndexError(f"word uses generator x{g} but rank is {rho.r}")
        x = rho[g - 1]
        m = m @ (x if e == 1 else np.linalg.inv(x))
    return m


def trace_word(rho: RepTuple, w: Word) -> complex:
    """Trace of the evaluated word; the empty word gives n."""
    return complex(np.trace(evaluate_word(rho, w)))


def all_words(r: int, max_len: int = 3):
    """Every word of length 1..max_len in the 2r letters x_i, x_i^-1."""
    alphabet = [(g, e) for g in range(1, r + 1) for e in (1, -1)]
    for length in range(1, max_len + 1):
        for combo in product(alphabet, repeat=length):
            yield Word(tuple(combo))


def word_trace_table(rho: RepTuple, max_len: int = 3) -> dict:
    return {str(w): trace_word(rho, w) for w in all_words(rho.r, max_len)}


# --- SU(2) coordinates -------------------------------------------------------


def _re_q(m) -> float:
    """Quaternion real part of an SU(2) matrix: half the (real) trace."""
    return float(np.trace(m).real) / 2.0


@dataclass(frozen=True)
class SU2Rank2Coords:
    a1: float
    a2: float
    a3: float

    def as_array(self):
        return np.array([self.a1, self.a2, self.a3])


@dataclass(frozen=True)
class SU2Rank3Coords:
    a1: float
    a2: float
    a3: float
    a12: float
    a13: float
    a23: float

    def as_array(self):
        return np.array([self.a1, self.a2, self.a3, self.a12, self.a13, self.a23])


def _check_su2(rho: RepTuple, r: int, tol: float) -> None:
    if rho.n != 2 or rho.r != r:
        raise NotInGroup(f"expected an SU(2) tuple of rank {r}")
    require_valid(rho, max(tol, 1e-8))


def su2_rank2_coords(rho: RepTuple, tol: float = DEFAULT_TOL) -> SU2Rank2Coords:
    """(a1, a2, a3) = (Re X1, Re X2, Re(X1^-1 X2))."""
    _check_su2(rho, 2, tol)
    x1, x2 = rho.matrices
    return SU2Rank2Coords(_re_q(x1), _re_q(x2), _re_q(x1.conj().T @ x2))


def fricke_check(rho: RepTuple, tol: float = DEFAULT_TOL):
    """Commutator real part two ways: matrix product vs the trace identity.

    lhs = Re(X1 X2 X1^-1 X2^-1) by multiplication; rhs is the classical
    three-trace expression 2(a1^2+a2^2+a3^2) - 4 a1 a2 a3 - 1.
    """
    _check_su2(rho, 2, tol)
    x1, x2 = rho.matrices
    comm = x1 @ x2 @ x1.conj().T @ x2.conj().T
    lhs = _re_q(comm)
    a = su2_rank2_coords(rho, tol)
    rhs = 2.0 * (a.a1**2 + a.a2**2 + a.a3**2) - 4.0 * a.a1 * a.a2 * a.a3 - 1.0
    return lhs, rhs


def su2_rank3_coords(rho: RepTuple, tol: float = DEFAULT_TOL) -> SU2Rank3Coords:
    """Six real parts (a_1, a_2, a_3, a_12, a_13, a_23) of an SU(2) triple."""
    _check_su2(rho, 3, tol)
    x1, x2, x3 = rho.matrices
    return SU2Rank3Coords(
        _re_q(x1),
        _re_q(x2),
        _re_q(x3),
        _re_q(x1.conj().T @ x2),
        _re_q(x1.conj().T @ x3),
        _re_q(x2.conj().T @ x3),
    )


@dataclass(frozen=True)
class RSTInvariants:
    """Pair/triple scalars derived from the six a-coordinates.

    ``r`` is the Gram matrix of the quaternion imaginary parts:
    r_jj = 1 - a_j^2, r_jk = a_jk - a_j a_k.  ``s_jk`` is the pairwise sigma,
    ``t123`` the normalized Gram determinant, and ``l_jk`` the cosine of the
    angle between imaginary parts (None when an imaginary part vanishes).
    """

    r: np.ndarray
    s12: float
    s13: float
    s23: float
    t123: float
    l12: float | None
    l13: float | None
    l23: float | None


def rst(c: SU2Rank3Coords, tol: float = DEFAULT_TOL) -> RSTInvariants:
    a = [c.a1, c.a2, c.a3]
    pair = {(0, 1): c.a12, (0, 2): c.a13, (1, 2): c.a23}
    r = np.empty((3, 3))
    for j in range(3):
        r[j, j] = 1.0 - a[j] ** 2
    for (j, k), ajk in pair.items():
        r[j, k] = r[k, j] = ajk - a[j] * a[k]

    def s(j, k):
        return float(r[j, j] * r[k, k] - r[j, k] ** 2)

    def l(j, k):
        den = r[j, j] * r[k, k]
        if den <= tol:
            return None
        return float(r[j, k] / np.sqrt(den))

    diag = r[0, 0] * r[1, 1] * r[2, 2]
    # Normalized Gram volume; 0 when an imaginary part degenerates.
    t123 = float(np.linalg.det(r) / diag) if diag > tol else 0.0
    return RSTInvariants(
        r=r,
        s12=s(0, 1),
        s13=s(0, 2),
        s23=s(1, 2),
        t123=t123,
        l12=l(0, 1),
        l13=l(0, 2),
        l23=l(1, 2),
    )


# --- SU(3)/SL(3) rank-2 trace coordinates ------------------------------------


@dataclass(frozen=True)
class SU3Rank2Traces:
    """The ten trace coordinates t_(+-k) of a rank-2 tuple in SL(3,C).

    t1 = tr X1, t2 = tr X2, t3 = tr X1X2, t4 = tr X1X2^-1,
    t5 = tr X1X2X1^-1X2^-1; tm_k their inverse-word partners.
    """

    t1: complex
    tm1: complex
    t2: complex
    tm2: complex
    t3: complex
    tm3: complex
    t4: complex
    tm4: complex
    t5: complex
    tm5: complex

    def pairs(self):
        return (
            (self.t1, self.tm1),
            (self.t2, self.tm2),
            (self.t3, self.tm3),
            (self.t4, self.tm4),
            (self.t5, self.tm5),
        )

    def unitary_defect(self) -> float:
        """How far the traces are from the unitary symmetry tm_k = conj(t_k)."""
        return max(abs(tm - np.conj(t)) for t, tm in self.pairs())


def su3_traces(rho: RepTuple, tol: float = DEFAULT_TOL) -> SU3Rank2Traces:
    if rho.n != 3 or rho.r != 2:
        raise NotInGroup("expected a rank-2 tuple of 3x3 matrices")
    require_valid(rho, max(tol, 1e-8))
    x1, x2 = rho.matrices
    if rho.descriptor.family == "SU":
        x1i, x2i = x1.conj().T, x2.conj().T
    else:
        x1i, x2i = np.linalg.inv(x1), np.linalg.inv(x2)
    tr = lambda m: complex(np.trace(m))
    comm = x1 @ x2 @ x1i @ x2i
    return SU3Rank2Traces(
        t1=tr(x1),
        tm1=tr(x1i),
        t2=tr(x2),
        tm2=tr(x2i),
        t3=tr(x1 @ x2),
        tm3=tr(x1i @ x2i),
        t4=tr(x1 @ x2i),
        tm4=tr(x1i @ x2),
        t5=tr(comm),
        tm5=tr(x2 @ x1 @ x2i @ x1i),
    )


@dataclass(frozen=True)
class UCoords:
    """Realified trace coordinates u_(k) = (t_k + t_-k)/2, u_(-k) = (t_k - t_-k)/2i.

    Real floats on unitary input, complex otherwise.
    """

    u1: complex
    um1: complex
    u2: complex
    um2: complex
    u3: complex
    um3: complex
    u4: complex
    um4: complex
    u5: complex

    def as_list(self):
        return [self.u1, self.um1, self.u2, self.um2, self.u3, self.um3, self.u4, self.um4, self.u5]

    @property
    def is_real(self) -> bool:
        return all(isinstance(v, float) for v in self.as_list())

    def tau(self, k: int) -> complex:
        """Single-factor trace t_(k) = u_(k) + i u_(-k), k in 1..4."""
        u = self.as_list()
        return complex(u[2 * (k - 1)]) + 1j * complex(u[2 * (k - 1) + 1])


@dataclass(frozen=True)
class PQRecord:
    """Coefficients of the commutator-trace relation t^2 - P t + Q."""

    P: complex
    Q: complex
    tau: complex


def _realify(values, unitary, tol=REALIFY_TOL):
    worst = max(abs(complex(v).imag) for v in values)
    if unitary is None:
        unitary = worst < tol
    if unitary and worst >= tol:
        raise ComplexInput(
            f"imaginary part {worst:.3e} exceeds {tol:g}; input is not unitary-derived"
        )
    if unitary:
        return [float(complex(v).real) for v in values]
    return [complex(v) for v in values]


def u_coords(t: SU3Rank2Traces, unitary: bool | None = None) -> UCoords:
    """Change of variables to the u-coordinates; realified on unitary input.

    ``unitary=None`` auto-detects; ``unitary=True`` demands realifiability and
    raises ComplexInput otherwise (guarding against silently treating
    non-unitary input as unitary).
    """
    raw = []
    for tk, tmk in t.pairs()[:4]:
        raw.append((tk + tmk) / 2.0)
        raw.append((tk - tmk) / 2.0j)
    raw.append((t.t5 - t.tm5) / 2.0j)
    vals = _realify(raw, unitary)
    return UCoords(*vals)


def pq(t: SU3Rank2Traces, unitary: bool | None = None) -> PQRecord:
    """P = t5 + t-5, Q = t5 * t-5; real on unitary input."""
    P, Q = _realify([t.t5 + t.tm5, t.t5 * t.tm5], unitary)
    return PQRecord(P=P, Q=Q, tau=complex(t.t5))


def transpose_tuple(rho: RepTuple) -> RepTuple:
    """Componentwise transpose; swaps t5 and t-5, fixes the other traces."""
    return RepTuple(rho.descriptor, tuple(m.T.copy() for m in rho.matrices))


# --- torus-invariant minors of a 3x3 matrix ----------------------------------


@dataclass(frozen=True)
class MinorsRecord:
    """Diagonal entries, principal 2x2 minors, and the cyclic triple product.

    mm_k equals m_k evaluated on the inverse matrix when det = 1.
    """

    m1: complex
    m2: complex
    m3: complex
    mm1: complex
    mm2: complex
    mm3: complex
    m4: complex


def su3_minors(x) -> MinorsRecord:
    x = cmat(x)
    if x.shape != (3, 3):
        raise ValueError("su3_minors expects a 3x3 matrix")
    return MinorsRecord(
        m1=complex(x[0, 0]),
        m2=complex(x[1, 1]),
        m3=complex(x[2, 2]),
        mm1=complex(x[1, 1] * x[2, 2] - x[1, 2] * x[2, 1]),
        mm2=complex(x[0, 0] * x[2, 2] - x[0, 2] * x[2, 0]),
        mm3=complex(x[0, 0] * x[1, 1] - x[0, 1] * x[1, 0]),
        m4=complex(x[0, 1] * x[1, 2] * x[2, 0]),
    )


def relation_residual(m: MinorsRecord) -> complex:
    """The degree-2 relation among the seven minors; 0 on SL(3,C).

    Transcribed once, verbatim; do not "simplify".
    """
    m1, m2, m3 = m.m1, m.m2, m.m3
    mm1, mm2, mm3, m4 = m.mm1, m.mm2, m.mm3, m.m4
    return (
        -(m2**2) * m3**2 * m1**2
        + mm1 * m2 * m3 * m1**2
        + mm3 * m2 * m3**2 * m1
        - mm2 * mm1 * m2 * m1
        + mm2 * m2**2 * m3 * m1
        - mm3 * mm1 * m3 * m1
        - mm1 * m4 * m1
        + 2 * m2 * m3 * m4 * m1
        - m4**2
        + mm3 * mm2 * mm1
        - mm3 * mm2 * m2 * m3
        - mm2 * m2 * m4
        - mm3 * m3 * m4
        + m4
    )


# --- dispatch ---------------------------------------------------------------


def invariant_record(rho: RepTuple, tol: float = DEFAULT_TOL) -> dict:
    """Named invariant coordinates for the tuple's (r, n) case.

    Falls back to a word-trace table (words of length <= 3) when no bespoke
    coordinate system applies.  Values are floats on unitary input where the
    coordinates are real, complex otherwise.
    """
    unitary = rho.descriptor.family == "SU"
    if (rho.r, rho.n) == (2, 2):
        x1, x2 = rho.matrices
        x1i = x1.conj().T if unitary else np.linalg.inv(x1)
        a1 = np.trace(x1) / 2.0
        a2 = np.trace(x2) / 2.0
        a3 = np.trace(x1i @ x2) / 2.0
        if unitary:
            a1, a2, a3 = a1.real, a2.real, a3.real
        sig = 1 - a1**2 - a2**2 - a3**2 + 2 * a1 * a2 * a3
        return {"a1": a1, "a2": a2, "a3": a3, "sigma": sig}
    if (rho.r, rho.n) == (3, 2):
        x1, x2, x3 = rho.matrices
        inv = (lambda m: m.conj().T) if unitary else np.linalg.inv
        names = ["a1", "a2", "a3", "a12", "a13", "a23"]
        vals = [
            np.trace(x1) / 2.0,
            np.trace(x2) / 2.0,
            np.trace(x3) / 2.0,
            np.trace(inv(x1) @ x2) / 2.0,
            np.trace(inv(x1) @ x3) / 2.0,
            np.trace(inv(x2) @ x3) / 2.0,
        ]
        if unitary:
            vals = [v.real for v in vals]
        rec = dict(zip(names, vals))
        a1, a2, a3, a12, a13, a23 = vals
        sig = lambda x, y, z: 1 - x * x - y * y - z * z + 2 * x * y * z
        rec["s12"] = sig(a1, a2, a12)
        rec["s13"] = sig(a1, a3, a13)
        rec["s23"] = sig(a2, a3, a23)
        r = np.array(
            [
                [1 - a1 * a1, a12 - a1 * a2, a13 - a1 * a3],
                [a12 - a1 * a2, 1 - a2 * a2, a23 - a2 * a3],
                [a13 - a1 * a3, a23 - a2 * a3, 1 - a3 * a3],
            ]
        )
        den = r[0, 0] * r[1, 1] * r[2, 2]
        rec["t123"] = np.linalg.det(r) / den if abs(den) > tol else 0.0
        return rec
    if (rho.r, rho.n) == (2, 3):
        t = su3_traces(rho, tol)
        u = u_coords(t, unitary=None)
        record = pq(t, unitary=None)
        rec = {
            "t1": t.t1, "tm1": t.tm1, "t2": t.t2, "tm2": t.tm2,
            "t3": t.t3, "tm3": t.tm3, "t4": t.t4, "tm4": t.tm4,
            "t5": t.t5, "tm5": t.tm5,
        }
        for name, v in zip(
            ["u1", "um1", "u2", "um2", "u3", "um3", "u4", "um4", "u5"], u.as_list()
        ):
            rec[name] = v
        rec["P"], rec["Q"] = record.P, record.Q
        rec["disc"] = record.P**2 - 4.0 * record.Q
        rec["Delta"] = (
            record.Q**2 + 12 * record.P * record.Q + 18 * record.Q
            - 4 * record.P**3 - 27
        )
        return rec
    return word_trace_table(rho, max_len=3)
