"""Dense matrices over the extended reals with max-plus / min-plus operators.

A tropical matrix is a plain 2-D ``numpy.ndarray``. Float mode uses
``float64`` with the IEEE infinities as ``-inf``/``+inf``; exact mode uses
``object`` arrays whose finite entries are ``int`` or ``Fraction``. Operations never
mutate their arguments and return arrays of the same mode (mixing modes
promotes to exact).

The precedence graph of ``A`` has an arc ``i -> j`` of weight ``A[i, j]``
whenever ``A[i, j] != -inf``.
"""

from __future__ import annotations

import enum
import logging
from fractions import Fraction
from typing import Iterable

import numpy as np

from .dioid import NEG_INF, POS_INF, format_scalar, parse_scalar, to_exact
from .errors import DimensionMismatchError, InvalidArgumentError

log = logging.getLogger(__name__)

# broadcast products up to this many scalar terms, loop over the inner index above
_BROADCAST_LIMIT = 1 << 21


class CircuitClass(enum.Enum):
    NO_POSITIVE_CIRCUIT = "NoPositiveCircuit"
    HAS_POSITIVE_CIRCUIT = "HasPositiveCircuit"

    def __bool__(self):
        # truthy when a positive circuit exists
        return self is CircuitClass.HAS_POSITIVE_CIRCUIT


# --------------------------------------------------------------------------
# construction and mode handling
# --------------------------------------------------------------------------


def is_exact(A: np.ndarray) -> bool:
    return A.dtype == object


def matrix(rows: Iterable, exact: bool = False) -> np.ndarray:
    """Build a matrix from nested rows of scalar tokens (numbers or strings
    such as ``"-inf"``, ``"+inf"``, ``"eps"``, ``"e"``)."""
    parsed = [[parse_scalar(x, exact=exact) for x in row] for row in rows]
    if exact:
        out = np.empty((len(parsed), len(parsed[0]) if parsed else 0), dtype=object)
        for i, row in enumerate(parsed):
            if len(row) != out.shape[1]:
                raise DimensionMismatchError("ragged matrix literal")
            out[i, :] = row
        return out
    try:
        return np.array(parsed, dtype=float).reshape(len(parsed), -1)
    except ValueError:
        raise DimensionMismatchError("ragged matrix literal") from None


def full(shape, value, exact: bool = False) -> np.ndarray:
    if exact:
        out = np.empty(shape, dtype=object)
        out[...] = to_exact(value)
        return out
    return np.full(shape, float(value))


def eps_matrix(rows: int, cols: int | None = None, exact: bool = False) -> np.ndarray:
    """The all ``-inf`` matrix (neutral for max-plus addition)."""
    return full((rows, rows if cols is None else cols), NEG_INF, exact)


def top_matrix(rows: int, cols: int | None = None, exact: bool = False) -> np.ndarray:
    """The all ``+inf`` matrix (neutral for min)."""
    return full((rows, rows if cols is None else cols), POS_INF, exact)


def identity(n: int, exact: bool = False) -> np.ndarray:
    """Max-plus identity: 0 on the diagonal, ``-inf`` elsewhere."""
    out = eps_matrix(n, exact=exact)
    for i in range(n):
        out[i, i] = 0 if exact else 0.0
    return out


def dual_identity(n: int, exact: bool = False) -> np.ndarray:
    """Min-plus identity: 0 on the diagonal, ``+inf`` elsewhere."""
    out = top_matrix(n, exact=exact)
    for i in range(n):
        out[i, i] = 0 if exact else 0.0
    return out


def selector(i: int, j: int, size: int, exact: bool = False) -> np.ndarray:
    """``Y_{i,j}``: 0 at (i, j) (zero-based), ``-inf`` elsewhere."""
    out = eps_matrix(size, exact=exact)
    out[i, j] = 0 if exact else 0.0
    return out


def as_exact(A: np.ndarray) -> np.ndarray:
    if is_exact(A):
        return A
    out = np.empty(A.shape, dtype=object)
    for idx, value in np.ndenumerate(A):
        out[idx] = to_exact(float(value))
    return out


def as_float(A: np.ndarray) -> np.ndarray:
    if not is_exact(A):
        return A
    return np.array([[float(x) for x in row] for row in A], dtype=float).reshape(A.shape)


def _coerce(*arrays):
    arrays = [np.asarray(a) for a in arrays]
    if any(a.dtype == object for a in arrays):
        return [as_exact(a) if a.ndim == 2 else a for a in arrays]
    return [a.astype(float, copy=False) for a in arrays]


def _square(A: np.ndarray, what: str) -> int:
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionMismatchError(f"{what} requires a square matrix, got shape {A.shape}")
    return A.shape[0]


def _has_pos_inf(A: np.ndarray) -> bool:
    if A.dtype == object:
        return POS_INF in A.ravel().tolist()  # far cheaper than an object ufunc
    return bool(np.isposinf(A).any())


def _has_neg_inf(A: np.ndarray) -> bool:
    if A.dtype == object:
        return NEG_INF in A.ravel().tolist()
    return bool(np.isneginf(A).any())


# --------------------------------------------------------------------------
# elementwise kernels with explicit infinity handling
# --------------------------------------------------------------------------


def _ew_otimes(X, Y):
    """Broadcasting max-plus product: ``-inf`` wins over ``+inf``."""
    X = np.asarray(X)
    Y = np.asarray(Y)
    neg = (X == NEG_INF) | (Y == NEG_INF)
    if not neg.any():
        return X + Y
    Xs = np.where(X == NEG_INF, 0, X)
    Ys = np.where(Y == NEG_INF, 0, Y)
    return np.where(neg, NEG_INF, Xs + Ys)


def _ew_dual_otimes(X, Y):
    """Broadcasting min-plus product: ``+inf`` wins over ``-inf``."""
    X = np.asarray(X)
    Y = np.asarray(Y)
    pos = (X == POS_INF) | (Y == POS_INF)
    if not pos.any():
        return X + Y
    Xs = np.where(X == POS_INF, 0, X)
    Ys = np.where(Y == POS_INF, 0, Y)
    return np.where(pos, POS_INF, Xs + Ys)


# --------------------------------------------------------------------------
# matrix operators
# --------------------------------------------------------------------------


def mat_oplus(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    A, B = _coerce(A, B)
    if A.shape != B.shape:
        raise DimensionMismatchError(f"shapes {A.shape} and {B.shape} differ")
    return np.maximum(A, B)


def mat_dual_oplus(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    A, B = _coerce(A, B)
    if A.shape != B.shape:
        raise DimensionMismatchError(f"shapes {A.shape} and {B.shape} differ")
    return np.minimum(A, B)


def oplus_all(*matrices: np.ndarray) -> np.ndarray:
    out = matrices[0]
    for M in matrices[1:]:
        out = mat_oplus(out, M)
    return out


def _product(A, B, kernel, reduce, neutral, absorbing_free):
    A, B = _coerce(A, B)
    if A.ndim != 2 or B.ndim != 2 or A.shape[1] != B.shape[0]:
        raise DimensionMismatchError(f"cannot multiply shapes {A.shape} and {B.shape}")
    m, inner = A.shape
    p = B.shape[1]
    if inner == 0:
        return full((m, p), neutral, is_exact(A))
    small = m * inner * p <= _BROADCAST_LIMIT
    if absorbing_free(A) and absorbing_free(B):
        # no opposite infinity present: plain addition is already correct
        if small:
            return reduce.reduce(A[:, :, None] + B[None, :, :], axis=1)
        out = full((m, p), neutral, is_exact(A))
        for k in range(inner):
            reduce(out, A[:, k, None] + B[None, k, :], out=out)
        return out
    if small:
        return reduce.reduce(kernel(A[:, :, None], B[None, :, :]), axis=1)
    out = full((m, p), neutral, is_exact(A))
    for k in range(inner):
        out = reduce(out, kernel(A[:, k, None], B[None, k, :]))
    return out


def mat_otimes(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Max-plus product: ``(A B)_ij = max_k A_ik + B_kj`` with ``-inf`` absorbing."""
    return _product(A, B, _ew_otimes, np.maximum, NEG_INF, lambda M: not _has_pos_inf(M))


def mat_dual_otimes(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Min-plus product: ``(A B)_ij = min_k A_ik + B_kj`` with ``+inf`` absorbing."""
    return _product(A, B, _ew_dual_otimes, np.minimum, POS_INF, lambda M: not _has_neg_inf(M))


def otimes_all(*matrices: np.ndarray) -> np.ndarray:
    out = matrices[0]
    for M in matrices[1:]:
        out = mat_otimes(out, M)
    return out


def power(A: np.ndarray, k: int) -> np.ndarray:
    n = _square(A, "power")
    out = identity(n, exact=is_exact(A))
    for _ in range(k):
        out = mat_otimes(out, A)
    return out


def scalar_mul(lam, A: np.ndarray) -> np.ndarray:
    """Entrywise ``lam (x) A_ij``."""
    A = np.asarray(A)
    if is_exact(A):
        lam = to_exact(lam)
    out = _ew_otimes(np.array(lam, dtype=A.dtype), A)
    return np.asarray(out, dtype=A.dtype)


def sharp(A: np.ndarray) -> np.ndarray:
    """``-A^T``; swaps ``-inf`` and ``+inf``."""
    return -np.asarray(A).T


def tensor(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Tensor (Kronecker) product: block ``(i, j)`` is ``A_ij (x) B``."""
    A, B = _coerce(A, B)
    m, n = A.shape
    p, q = B.shape
    blocks = _ew_otimes(A[:, None, :, None], B[None, :, None, :])
    return np.asarray(blocks, dtype=A.dtype).reshape(m * p, n * q)


def trace(A: np.ndarray):
    n = _square(A, "trace")
    if n == 0:
        return NEG_INF
    return max(A[i, i] for i in range(n))


def kleene_star(A: np.ndarray) -> np.ndarray:
    """``A* = E (+) A (+) A^2 (+) ...`` by a Floyd-Warshall style closure.

    Entries reached through a positive-weight circuit saturate to ``+inf``;
    in particular every node on such a circuit gets a ``+inf`` diagonal.
    """
    n = _square(A, "kleene_star")
    exact = is_exact(A)
    D = np.array(A, copy=True)
    # +inf only enters through the input or through saturation below
    saturated = _has_pos_inf(D)
    if saturated:
        log.warning("kleene_star called on a matrix with +inf entries")
    for k in range(n):
        col = D[:, k].copy()
        row = D[k, :].copy()
        if D[k, k] > 0:
            # a positive loop at k: everything routed through k diverges
            col = np.where(col == NEG_INF, NEG_INF, POS_INF)
            if exact:
                col = col.astype(object)
            saturated = True
        if not saturated:
            term = col[:, None] + row[None, :]
        else:
            term = _ew_otimes(col[:, None], row[None, :])
        D = np.maximum(D, term)
    return mat_oplus(D, identity(n, exact=exact))


def has_positive_circuit(A: np.ndarray) -> CircuitClass:
    """Decide whether the precedence graph of ``A`` has a circuit of positive
    weight, by Bellman-Ford style longest-path relaxation from a virtual
    source connected to every node."""
    n = _square(A, "has_positive_circuit")
    if n == 0:
        return CircuitClass.NO_POSITIVE_CIRCUIT
    if _has_pos_inf(A):
        return _circuit_class_from_star(A)
    exact = is_exact(A)
    d = full(n, 0, exact)
    for _ in range(n):
        relaxed = np.maximum(d, np.max(d[:, None] + A, axis=0))
        if np.array_equal(relaxed, d):
            return CircuitClass.NO_POSITIVE_CIRCUIT
        d = relaxed
    return CircuitClass.HAS_POSITIVE_CIRCUIT


def _circuit_class_from_star(A: np.ndarray) -> CircuitClass:
    if trace(kleene_star(A)) == 0:
        return CircuitClass.NO_POSITIVE_CIRCUIT
    return CircuitClass.HAS_POSITIVE_CIRCUIT


def _mean(total, length, exact):
    if exact:
        return to_exact(Fraction(total) / length)
    return total / length


def mcm(A: np.ndarray):
    """Maximum circuit mean (Karp). ``-inf`` when the graph is acyclic."""
    n = _square(A, "mcm")
    if n == 0:
        raise InvalidArgumentError("mcm of an empty matrix")
    if _has_pos_inf(A):
        return mcm_power(A)
    exact = is_exact(A)
    # walks[k][v]: heaviest walk with exactly k arcs ending at v, starting anywhere
    walks = [full(n, 0, exact)]
    for _ in range(n):
        walks.append(np.max(walks[-1][:, None] + A, axis=0))
    best = NEG_INF
    last = walks[n]
    for v in range(n):
        if last[v] == NEG_INF:
            continue
        worst = POS_INF
        for k in range(n):
            if walks[k][v] == NEG_INF:
                continue
            worst = min(worst, _mean(last[v] - walks[k][v], n - k, exact))
        best = max(best, worst)
    return best


def mcm_power(A: np.ndarray):
    """Maximum circuit mean from the power formula ``max_k tr(A^k) / k``.

    Cubic per power; meant as a cross-check for small matrices.
    """
    n = _square(A, "mcm_power")
    exact = is_exact(A)
    best = NEG_INF
    Ak = np.array(A, copy=True)
    for k in range(1, n + 1):
        t = trace(Ak)
        if t == POS_INF:
            return POS_INF
        if t != NEG_INF:
            best = max(best, _mean(t, k, exact))
        Ak = mat_otimes(Ak, A)
    return best


def is_rmax(A: np.ndarray) -> bool:
    """True when no entry equals ``+inf``."""
    return not _has_pos_inf(np.asarray(A))


def format_matrix(A: np.ndarray) -> str:
    cells = [[format_scalar(x) for x in row] for row in A]
    width = max((len(c) for row in cells for c in row), default=1)
    return "\n".join(" ".join(c.rjust(width) for c in row) for row in cells)
