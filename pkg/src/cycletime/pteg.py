"""P-time event graphs: characteristic matrices, cycle times, trajectories.

Dater semantics: ``x_i(k)`` is the time of the (k+1)-st firing of
transition ``i``. A place with marking ``m`` from ``t_j`` to ``t_i`` and
window ``[lo, hi]`` contributes ``A^m[i, j] = lo`` and ``B^m[i, j] = hi``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import matrix as tm
from .dioid import NEG_INF, POS_INF, format_scalar, parse_scalar
from .errors import (
    DimensionMismatchError,
    InconsistentPlacesError,
    InfeasibleLambdaError,
    ModelValidationError,
)
from .ncp import CycleTimeSet, PicInstance, solve_ncp
from .trajectory import (
    TrajectoryReport,
    check_nondecreasing,
    check_transition,
    check_within,
)


@dataclass(frozen=True)
class Place:
    source: str
    target: str
    marking: int
    lower: object
    upper: object = POS_INF

    def __post_init__(self):
        if self.marking not in (0, 1):
            raise ModelValidationError(f"place {self.source}->{self.target}: marking must be 0 or 1")
        if not (0 <= self.lower < POS_INF):
            raise ModelValidationError(f"place {self.source}->{self.target}: lower bound must be finite and >= 0")
        if self.upper < self.lower:
            raise ModelValidationError(
                f"place {self.source}->{self.target}: interval "
                f"[{format_scalar(self.lower)}, {format_scalar(self.upper)}] is empty"
            )


@dataclass(frozen=True)
class PtegNet:
    transitions: tuple
    places: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "transitions", tuple(self.transitions))
        object.__setattr__(self, "places", tuple(self.places))
        if len(set(self.transitions)) != len(self.transitions):
            raise ModelValidationError("duplicate transition names")
        known = set(self.transitions)
        for p in self.places:
            for t in (p.source, p.target):
                if t not in known:
                    raise ModelValidationError(f"place refers to unknown transition {t!r}")


@dataclass(frozen=True, eq=False)
class Pteg:
    """Characteristic matrices of one P-TEG (or one SLDI mode)."""

    A0: np.ndarray
    A1: np.ndarray
    B0: np.ndarray
    B1: np.ndarray
    transitions: tuple = field(default=())

    def __post_init__(self):
        A0, A1, B0, B1 = tm._coerce(self.A0, self.A1, self.B0, self.B1)
        shapes = {M.shape for M in (A0, A1, B0, B1)}
        if len(shapes) != 1 or A0.ndim != 2 or A0.shape[0] != A0.shape[1]:
            raise DimensionMismatchError(f"characteristic matrices must be square of equal size, got {shapes}")
        for name, A, B in (("0", A0, B0), ("1", A1, B1)):
            if np.any(A == POS_INF):
                raise ModelValidationError(f"A{name} has +inf entries")
            if np.any(B == NEG_INF):
                raise ModelValidationError(f"B{name} has -inf entries")
            bad = np.argwhere((A != NEG_INF) & (A > B))
            if len(bad):
                i, j = bad[0]
                raise ModelValidationError(f"A{name}[{i},{j}] > B{name}[{i},{j}]")
        for name, M in (("A0", A0), ("A1", A1), ("B0", B0), ("B1", B1)):
            M = np.array(M, copy=True)
            M.setflags(write=False)
            object.__setattr__(self, name, M)
        names = tuple(self.transitions) or tuple(f"t{i + 1}" for i in range(A0.shape[0]))
        if len(names) != A0.shape[0]:
            raise DimensionMismatchError("transition names do not match matrix size")
        object.__setattr__(self, "transitions", names)

    @property
    def n(self) -> int:
        return self.A0.shape[0]

    @property
    def exact(self) -> bool:
        return tm.is_exact(self.A0)

    def __eq__(self, other):
        if not isinstance(other, Pteg):
            return NotImplemented
        return self.n == other.n and all(
            np.array_equal(getattr(self, m), getattr(other, m)) for m in ("A0", "A1", "B0", "B1")
        )

    def pic(self) -> PicInstance:
        """``P = B1#``, ``I = A1``, ``C = A0 (+) B0#``."""
        return PicInstance(tm.sharp(self.B1), self.A1, tm.mat_oplus(self.A0, tm.sharp(self.B0)))

    def as_exact(self) -> "Pteg":
        return Pteg(*(tm.as_exact(M) for M in (self.A0, self.A1, self.B0, self.B1)), self.transitions)

    def periodic_matrix(self, lam) -> np.ndarray:
        """``lam B1# (+) lam^-1 A1 (+) A0 (+) B0#``."""
        return self.pic().at(lam)


def compile_net(net: PtegNet, exact: bool = False) -> Pteg:
    """Characteristic matrices of a net. Parallel places with the same
    marking merge into the intersection of their windows."""
    n = len(net.transitions)
    index = {t: i for i, t in enumerate(net.transitions)}
    A = [tm.eps_matrix(n, exact=exact), tm.eps_matrix(n, exact=exact)]
    B = [tm.top_matrix(n, exact=exact), tm.top_matrix(n, exact=exact)]
    for p in net.places:
        i, j, m = index[p.target], index[p.source], p.marking
        lo = parse_scalar(p.lower, exact=exact)
        hi = parse_scalar(p.upper, exact=exact)
        A[m][i, j] = max(A[m][i, j], lo)
        B[m][i, j] = min(B[m][i, j], hi)
        if A[m][i, j] > B[m][i, j]:
            raise InconsistentPlacesError(
                f"parallel places {p.source}->{p.target} (marking {m}) have an empty combined window"
            )
    return Pteg(A[0], A[1], B[0], B[1], net.transitions)


def cycle_time_set(g: Pteg) -> CycleTimeSet:
    """Periods of consistent 1-periodic trajectories (bounded consistency
    holds iff the result is non-empty)."""
    return solve_ncp(g.pic()).clamp_nonnegative()


def periodic_witness(inst: PicInstance, lam) -> np.ndarray:
    """Row maxima of ``M*`` for ``M = lam P (+) lam^-1 I (+) C``.

    The result ``x`` satisfies ``M x <= x``; raises
    :class:`InfeasibleLambdaError` when ``lam < 0`` or ``M`` has a positive
    circuit (no such finite ``x`` exists).
    """
    if not lam >= 0:
        raise InfeasibleLambdaError(f"period must be non-negative, got {format_scalar(lam)}")
    M = inst.at(lam)
    if tm.has_positive_circuit(M):
        raise InfeasibleLambdaError(f"no consistent periodic trajectory with period {format_scalar(lam)}")
    return np.max(tm.kleene_star(M), axis=1)


def synthesize_periodic(g: Pteg, lam) -> np.ndarray:
    """Initial dater ``x(0)`` of a consistent 1-periodic trajectory with
    period ``lam``; the trajectory is ``x(k) = x(0) + k lam``."""
    return periodic_witness(g.pic(), lam)


def check_ldi_trajectory(g: Pteg, traj: Sequence) -> TrajectoryReport:
    """Check daters ``x(0..K)`` against the LDI and non-decreasingness.

    Reports the first violation in order of ``k``, then constraint
    (A0, B0, A1, B1, nondecreasing), then row.
    """
    xs = [np.asarray(x).reshape(-1) for x in traj]
    for x in xs:
        if x.shape[0] != g.n:
            raise DimensionMismatchError(f"dater of length {x.shape[0]} for {g.n} transitions")
    for k, x in enumerate(xs):
        found = check_within(k, x, g.A0, g.B0)
        if found is None and k + 1 < len(xs):
            found = check_transition(k, x, xs[k + 1], g.A1, g.B1) or check_nondecreasing(k, x, xs[k + 1])
        if found is not None:
            return TrajectoryReport(found)
    return TrajectoryReport()
