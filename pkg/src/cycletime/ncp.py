"""Non-positive circuit weight problem for ``lam P (+) lam^-1 I (+) C``.

:func:`solve_ncp` is the strongly polynomial O(n^4) procedure; :func:`oracle_ncp`
enumerates elementary circuits and intersects their linear constraints, and
is only meant for validating the former on small instances.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import networkx as nx
import numpy as np

from . import matrix as tm
from .dioid import NEG_INF, POS_INF, format_scalar, is_finite, normalize
from .errors import DimensionMismatchError, InvalidInstanceError, TooLargeError


@dataclass(frozen=True)
class CycleTimeSet:
    """Either empty or the interval ``[lo, hi]`` intersected with the reals.

    Infinite endpoints mean the interval is unbounded on that side.
    """

    lo: object = None
    hi: object = None
    is_empty: bool = False

    @classmethod
    def empty(cls) -> "CycleTimeSet":
        return cls(None, None, True)

    @classmethod
    def interval(cls, lo, hi) -> "CycleTimeSet":
        if lo > hi or lo == POS_INF or hi == NEG_INF:
            return cls.empty()
        return cls(lo, hi, False)

    def __contains__(self, lam) -> bool:
        if self.is_empty or not is_finite(lam):
            return False
        return self.lo <= lam <= self.hi

    def clamp_nonnegative(self) -> "CycleTimeSet":
        if self.is_empty:
            return self
        return CycleTimeSet.interval(max(self.lo, 0), self.hi)

    @property
    def bounded_above(self) -> bool:
        return not self.is_empty and self.hi != POS_INF

    def __str__(self) -> str:
        if self.is_empty:
            return "empty"
        left = "]" if self.lo == NEG_INF else "["
        right = "[" if self.hi == POS_INF else "]"
        return f"{left}{format_scalar(self.lo)}, {format_scalar(self.hi)}{right}"

    def __repr__(self) -> str:
        return f"CycleTimeSet({self})"

    def normalized(self) -> "CycleTimeSet":
        if self.is_empty:
            return self
        return CycleTimeSet(normalize(self.lo), normalize(self.hi), False)


@dataclass(frozen=True)
class PicInstance:
    """Proportional, inverse and constant matrices of ``lam P (+) lam^-1 I (+) C``."""

    P: np.ndarray
    I: np.ndarray
    C: np.ndarray

    def __post_init__(self):
        P, I, C = tm._coerce(self.P, self.I, self.C)
        shapes = {P.shape, I.shape, C.shape}
        if len(shapes) != 1 or P.ndim != 2 or P.shape[0] != P.shape[1]:
            raise DimensionMismatchError(f"P, I, C must be square of equal size, got {shapes}")
        for name, M in (("P", P), ("I", I), ("C", C)):
            if not tm.is_rmax(M):
                raise InvalidInstanceError(f"{name} contains +inf entries")
        object.__setattr__(self, "P", P)
        object.__setattr__(self, "I", I)
        object.__setattr__(self, "C", C)

    @property
    def n(self) -> int:
        return self.P.shape[0]

    @property
    def exact(self) -> bool:
        return tm.is_exact(self.P)

    def at(self, lam) -> np.ndarray:
        """The constant matrix obtained by fixing the parameter to ``lam``."""
        return tm.oplus_all(
            tm.scalar_mul(lam, self.P), tm.scalar_mul(-lam, self.I), self.C
        )


def solve_ncp(inst: PicInstance) -> CycleTimeSet:
    """All real ``lam`` for which ``lam P (+) lam^-1 I (+) C`` has no
    positive-weight circuit. The result is not clamped to ``lam >= 0``."""
    P, I, C = inst.P, inst.I, inst.C
    n = inst.n
    exact = inst.exact
    if tm.has_positive_circuit(C):
        return CycleTimeSet.empty()
    Cs = tm.kleene_star(C)
    P = tm.otimes_all(Cs, P, Cs)
    I = tm.otimes_all(Cs, I, Cs)
    E = tm.identity(n, exact=exact)
    S = E
    for _ in range(n // 2):
        S2 = tm.mat_otimes(S, S)
        S = tm.oplus_all(tm.otimes_all(P, S2, I), tm.otimes_all(I, S2, P), E)
    if tm.has_positive_circuit(S):
        return CycleTimeSet.empty()
    Ss = tm.kleene_star(S)
    lo = tm.mcm(tm.mat_otimes(I, Ss))
    upper = tm.mcm(tm.mat_otimes(P, Ss))
    hi = POS_INF if upper == NEG_INF else -upper
    return CycleTimeSet.interval(lo, hi)


def _arc_options(inst: PicInstance, i: int, j: int):
    """(parameter exponent, constant weight) pairs available on arc i -> j."""
    options = []
    for exponent, M in ((1, inst.P), (-1, inst.I), (0, inst.C)):
        w = M[i, j]
        if w != NEG_INF:
            options.append((exponent, w))
    return options


def _circuit_constraints(options_along_circuit):
    """Max constant weight per net exponent over all arc-class selections."""
    best = {0: 0}
    for options in options_along_circuit:
        step = {}
        for (d_acc, c_acc), (d_arc, c_arc) in itertools.product(best.items(), options):
            d = d_acc + d_arc
            c = c_acc + c_arc
            if d not in step or c > step[d]:
                step[d] = c
        best = step
    return best


def oracle_ncp(inst: PicInstance, max_n: int = 8) -> CycleTimeSet:
    """Exact answer by enumerating every elementary circuit (Johnson).

    A circuit with net exponent ``d`` (proportional minus inverse arcs) and
    constant weight ``c`` requires ``c + d * lam <= 0``; all such constraints
    are intersected. Elementary circuits suffice because any circuit splits
    into elementary ones whose constraints add up.
    """
    n = inst.n
    if n > max_n:
        raise TooLargeError(f"oracle limited to n <= {max_n}, got {n}")
    graph = nx.DiGraph()
    graph.add_nodes_from(range(n))
    for i, j in itertools.product(range(n), repeat=2):
        if _arc_options(inst, i, j):
            graph.add_edge(i, j)
    lo, hi = NEG_INF, POS_INF
    for cycle in nx.simple_cycles(graph):
        arcs = zip(cycle, cycle[1:] + cycle[:1])
        constraints = _circuit_constraints(_arc_options(inst, i, j) for i, j in arcs)
        for d, c in constraints.items():
            if d == 0:
                if c > 0:
                    return CycleTimeSet.empty()
            elif d > 0:
                hi = min(hi, _ratio(-c, d))
            else:
                lo = max(lo, _ratio(c, -d))
    return CycleTimeSet.interval(lo, hi)


def _ratio(num, den):
    if isinstance(num, float):
        return num / den
    return Fraction(num) / den
