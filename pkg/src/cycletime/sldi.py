"""Switched linear-dual inequalities under a periodic schedule ``v^omega``.

Two routes to the cycle-time set are provided and must agree:

* :func:`cycle_times_direct` lifts the system to a ``|v| n``-dimensional
  P-TEG and solves one big NCP, O(|v|^4 n^4);
* :func:`cycle_times_improved` exploits the cyclic block-tridiagonal shape
  of the lifted matrix and only ever multiplies ``n x n`` blocks,
  O(|v| n^3 + n^4).

Returned periods are per full repetition of the subschedule ``v``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from . import matrix as tm
from .errors import (
    DimensionMismatchError,
    InvalidArgumentError,
    MissingPrefixError,
    ModelValidationError,
    UnknownModeError,
)
from .ncp import CycleTimeSet, PicInstance, solve_ncp
from .pteg import Pteg, periodic_witness
from .trajectory import (
    TrajectoryReport,
    check_nondecreasing,
    check_transition,
    check_within,
    parse_prefix_label,
)


@dataclass(frozen=True, eq=False)
class Sldi:
    """Alphabet of modes, each with its own characteristic matrices."""

    modes: dict
    events: tuple = ()

    def __post_init__(self):
        modes = dict(self.modes)
        if not modes:
            raise ModelValidationError("an SLDI needs at least one mode")
        sizes = {g.n for g in modes.values()}
        if len(sizes) != 1:
            raise DimensionMismatchError(f"modes have different dimensions: {sorted(sizes)}")
        if any(g.exact for g in modes.values()) and not all(g.exact for g in modes.values()):
            modes = {z: g.as_exact() for z, g in modes.items()}
        object.__setattr__(self, "modes", modes)
        events = tuple(self.events) or next(iter(modes.values())).transitions
        object.__setattr__(self, "events", events)

    @property
    def alphabet(self) -> tuple:
        return tuple(self.modes)

    @property
    def n(self) -> int:
        return next(iter(self.modes.values())).n

    @property
    def exact(self) -> bool:
        return next(iter(self.modes.values())).exact

    def __getitem__(self, mode) -> Pteg:
        try:
            return self.modes[mode]
        except KeyError:
            raise UnknownModeError(f"unknown mode {mode!r}; alphabet is {self.alphabet}") from None

    def as_exact(self) -> "Sldi":
        return Sldi({z: g.as_exact() for z, g in self.modes.items()}, self.events)


def parse_schedule(text, alphabet: Sequence[str]) -> tuple:
    """Subschedule from a string. ``"abab"`` works when every mode name is a
    single character; otherwise separate names with ``.``, ``,`` or spaces."""
    if not isinstance(text, str):
        schedule = tuple(text)
    else:
        for sep in (".", ",", " "):
            if sep in text:
                schedule = tuple(s for s in (p.strip() for p in text.split(sep)) if s)
                break
        else:
            schedule = (text,) if text in alphabet else tuple(text)
    validate_schedule(schedule, alphabet)
    return schedule


def validate_schedule(schedule: Sequence[str], alphabet: Sequence[str]) -> None:
    if len(schedule) < 1:
        raise ModelValidationError("a subschedule must contain at least one mode")
    for z in schedule:
        if z not in alphabet:
            raise UnknownModeError(f"unknown mode {z!r} in schedule; alphabet is {tuple(alphabet)}")


def _mode_blocks(s: Sldi, schedule) -> list:
    """``(P, I, C)`` per position of the subschedule."""
    validate_schedule(schedule, s.alphabet)
    cache = {}
    out = []
    for z in schedule:
        if z not in cache:
            inst = s[z].pic()
            cache[z] = (inst.P, inst.I, inst.C)
        out.append(cache[z])
    return out


def lift_direct(s: Sldi, schedule: Sequence[str]) -> PicInstance:
    """Lifted ``|v| n``-dimensional instance: ``C_v`` carries ``C_{v_r}`` on
    the diagonal, ``P_{v_r}`` above and ``I_{v_r}`` below it; the wrap-around
    blocks ``P_{v_|v|}`` (last block row, first column) and ``I_{v_|v|}``
    (first block row, last column) are the parametric ones."""
    blocks = _mode_blocks(s, schedule)
    L, n, exact = len(blocks), s.n, s.exact
    N = L * n
    Pv = tm.eps_matrix(N, exact=exact)
    Iv = tm.eps_matrix(N, exact=exact)
    Cv = tm.eps_matrix(N, exact=exact)

    def put(M, r, c, block):
        M[r * n:(r + 1) * n, c * n:(c + 1) * n] = block

    for r, (P, I, C) in enumerate(blocks):
        put(Cv, r, r, C)
        if r + 1 < L:
            put(Cv, r, r + 1, P)
            put(Cv, r + 1, r, I)
    P_last, I_last, _ = blocks[-1]
    put(Pv, L - 1, 0, P_last)
    put(Iv, 0, L - 1, I_last)
    return PicInstance(Pv, Iv, Cv)


def cycle_times_direct(s: Sldi, schedule: Sequence[str]) -> CycleTimeSet:
    return solve_ncp(lift_direct(s, schedule)).clamp_nonnegative()


def cycle_times_improved(s: Sldi, schedule: Sequence[str]) -> CycleTimeSet:
    """Cycle times in O(|v| n^3 + n^4) by eliminating block rows 2..|v|."""
    blocks = _mode_blocks(s, schedule)
    L = len(blocks)
    exact = s.exact
    stars = {}
    for z, (_, _, C) in zip(schedule, blocks):
        if z in stars:
            continue
        if tm.has_positive_circuit(C):
            return CycleTimeSet.empty()
        stars[z] = tm.kleene_star(C)
    # arcs from block r to r+1 (P) and back (I), absorbing the diagonal loops
    Pr, Ir = [], []
    for r in range(L):
        here, nxt = stars[schedule[r]], stars[schedule[(r + 1) % L]]
        P, I, _ = blocks[r]
        Pr.append(tm.otimes_all(here, P, nxt))
        Ir.append(tm.otimes_all(nxt, I, here))
    E = tm.identity(s.n, exact=exact)
    L_CP, L_CI = E, E
    L_P, L_I = Pr[L - 1], Ir[0]
    for r in range(2, L + 1):
        p, i = Pr[L - r], Ir[r - 1]
        loop_p = tm.otimes_all(p, L_CP, Ir[L - r])
        loop_i = tm.otimes_all(i, L_CI, Pr[r - 1])
        if tm.has_positive_circuit(loop_p) or tm.has_positive_circuit(loop_i):
            return CycleTimeSet.empty()
        L_P = tm.otimes_all(p, L_CP, L_P)
        L_I = tm.otimes_all(i, L_CI, L_I)
        L_CP = tm.kleene_star(loop_p)
        L_CI = tm.kleene_star(loop_i)
    constant = tm.oplus_all(L_CP, L_CI, blocks[0][2])
    return solve_ncp(PicInstance(L_P, L_I, constant)).clamp_nonnegative()


def synthesize_v_periodic(s: Sldi, schedule: Sequence[str], lam) -> list:
    """Daters ``x(v_1..v_h)``, ``h = 0..|v|-1``, of a consistent v-periodic
    trajectory with period ``lam``."""
    x0 = periodic_witness(lift_direct(s, schedule), lam)
    return list(x0.reshape(len(schedule), s.n))


def _normalize_key(key) -> tuple:
    if isinstance(key, str):
        return parse_prefix_label(key)
    return tuple(key)


def check_sldi_trajectory(s: Sldi, schedule: Sequence[str], traj: Mapping) -> TrajectoryReport:
    """Check daters indexed by schedule prefixes against the switched system.

    ``traj`` maps prefixes of ``v^omega`` (tuples of modes, or dot-joined
    labels) to daters. Every prefix up to the longest one given must be
    present. Checks, per prefix of length j with mode ``w_{j+1}``: the
    within-event bounds, the bounds to the next dater, and non-decreasingness
    against the dater ``|v|`` positions later.
    """
    v = tuple(schedule)
    validate_schedule(v, s.alphabet)
    L = len(v)
    daters = {}
    for key, x in traj.items():
        prefix = _normalize_key(key)
        j = len(prefix)
        expected = (v * (j // L + 1))[:j]
        if prefix != expected:
            raise InvalidArgumentError(f"{'.'.join(prefix)!r} is not a prefix of the schedule")
        x = np.asarray(x).reshape(-1)
        if x.shape[0] != s.n:
            raise DimensionMismatchError(f"dater of length {x.shape[0]} for {s.n} events")
        daters[j] = (prefix, x)
    if not daters:
        return TrajectoryReport()
    last = max(daters)
    for j in range(last + 1):
        if j not in daters:
            missing = (v * (j // L + 1))[:j]
            raise MissingPrefixError(f"missing dater for prefix {'.'.join(missing)!r} (length {j})")
    for j in range(last + 1):
        prefix, x = daters[j]
        g = s[v[j % L]]
        found = check_within(prefix, x, g.A0, g.B0)
        if found is None and j + 1 <= last:
            found = check_transition(prefix, x, daters[j + 1][1], g.A1, g.B1)
        if found is None and j + L <= last:
            found = check_nondecreasing(prefix, x, daters[j + L][1])
        if found is not None:
            return TrajectoryReport(found)
    return TrajectoryReport()
