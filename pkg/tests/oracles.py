"""Slow, obviously-correct reference implementations used as test oracles.

Everything here works entry by entry on Python scalars through the scalar
operators only, independent of the vectorised kernels under test.
"""

import itertools

import networkx as nx
import numpy as np

from cycletime.dioid import NEG_INF, POS_INF, dual_oplus, dual_otimes, oplus, otimes


def product(A, B):
    m, inner = A.shape
    p = B.shape[1]
    out = np.empty((m, p), dtype=object)
    for i in range(m):
        for j in range(p):
            acc = NEG_INF
            for k in range(inner):
                acc = oplus(acc, otimes(A[i, k], B[k, j]))
            out[i, j] = acc
    return out


def dual_product(A, B):
    m, inner = A.shape
    p = B.shape[1]
    out = np.empty((m, p), dtype=object)
    for i in range(m):
        for j in range(p):
            acc = POS_INF
            for k in range(inner):
                acc = dual_oplus(acc, dual_otimes(A[i, k], B[k, j]))
            out[i, j] = acc
    return out


def identity(n):
    E = np.full((n, n), NEG_INF, dtype=object)
    for i in range(n):
        E[i, i] = 0
    return E


def powers(A, upto):
    """``[A^1, ..., A^upto]``."""
    out, cur = [], A
    for _ in range(upto):
        out.append(cur)
        cur = product(cur, A)
    return out


def star_by_powers(A):
    """``E (+) A (+) ... (+) A^(n-1)``; equals ``A*`` without positive circuits."""
    n = A.shape[0]
    S = identity(n)
    for M in powers(A, n - 1):
        S = np.vectorize(oplus, otypes=[object])(S, M)
    return S


def tensor(A, B):
    m, n = A.shape
    p, q = B.shape
    out = np.empty((m * p, n * q), dtype=object)
    for i, j, k, l in itertools.product(range(m), range(n), range(p), range(q)):
        out[i * p + k, j * q + l] = otimes(A[i, j], B[k, l])
    return out


def trace(A):
    acc = NEG_INF
    for i in range(A.shape[0]):
        acc = oplus(acc, A[i, i])
    return acc


def circuit_weights(A):
    """Weights and lengths of all elementary circuits of the precedence graph."""
    n = A.shape[0]
    g = nx.DiGraph()
    g.add_nodes_from(range(n))
    g.add_edges_from((i, j) for i in range(n) for j in range(n) if A[i, j] != NEG_INF)
    for cycle in nx.simple_cycles(g):
        arcs = list(zip(cycle, cycle[1:] + cycle[:1]))
        yield sum(A[i, j] for i, j in arcs), len(arcs)


def has_positive_circuit(A) -> bool:
    return any(w > 0 for w, _ in circuit_weights(A))


def mcm(A):
    from fractions import Fraction

    best = NEG_INF
    for w, length in circuit_weights(A):
        best = max(best, Fraction(w) / length)
    return best


def lam_matrix(inst, lam):
    """``lam P (+) lam^-1 I (+) C`` entry by entry."""
    n = inst.n
    out = np.empty((n, n), dtype=object)
    for i in range(n):
        for j in range(n):
            out[i, j] = oplus(oplus(otimes(lam, inst.P[i, j]), otimes(-lam, inst.I[i, j])), inst.C[i, j])
    return out


def equal(A, B) -> bool:
    A, B = np.asarray(A), np.asarray(B)
    return A.shape == B.shape and all(a == b for a, b in zip(A.ravel(), B.ravel()))
