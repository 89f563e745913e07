"""Upper bounds on beta(G, w) from the symmetric subspace of ``m + 2`` copies.

The two-body operator ``T = sum_i w_i S_i (x) S_i`` averaged over all copy
pairs is assembled directly in the occupation-number basis of the bosonic
(symmetric) subspace as ``1/C(M,2) * 1/2 sum <pq|T|rs> a_p^+ a_q^+ a_s a_r``.
On symmetric states this equals ``T`` acting on the first two copies.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from math import comb

import numpy as np
import scipy.linalg
import scipy.sparse as sp
import scipy.sparse.linalg

from .errors import BudgetExceeded, NotCertified

MAX_D = 2_000_000


@dataclass
class BoseBasis:
    d: int
    M: int
    occ: np.ndarray  # (D, d) occupation numbers
    keys: np.ndarray  # sorted mixed-radix keys

    @property
    def dim(self):
        return len(self.occ)

    def index(self, occ):
        k = occ @ (self.M + 1) ** np.arange(self.d)
        return np.searchsorted(self.keys, k)


def bose_basis(d, M):
    rows = []
    for combo in combinations_with_replacement(range(d), M):
        v = [0] * d
        for c in combo:
            v[c] += 1
        rows.append(v)
    occ = np.array(rows, dtype=np.int64).reshape(-1, d)
    keys = occ @ (M + 1) ** np.arange(d)
    order = np.argsort(keys)
    return BoseBasis(d, M, occ[order], keys[order])


def two_body_tensor(ops, w):
    """T[p, q, r, s] = sum_i w_i S_i[p, r] S_i[q, s]."""
    t = np.einsum("i,ipr,iqs->pqrs", np.asarray(w, dtype=float), ops, ops)
    if np.max(np.abs(t.imag)) > 1e-12:
        raise ValueError("two-body tensor is expected to be real")
    return t.real


def symmetric_operator(t, basis):
    """Sparse matrix of the pair-averaged two-body operator on the Bose basis."""
    d, M = basis.d, basis.M
    occ = basis.occ
    D = basis.dim
    rows, cols, vals = [], [], []
    src = np.arange(D)
    for r in range(d):
        for s in range(d):
            n1 = occ.copy()
            a1 = np.sqrt(n1[:, r].astype(float))
            n1[:, r] -= 1
            a2 = np.sqrt(np.clip(n1[:, s], 0, None).astype(float))
            n1[:, s] -= 1
            ok = (a1 > 0) & (a2 > 0)
            if not ok.any():
                continue
            base = n1[ok]
            amp_rs = a1[ok] * a2[ok]
            idx_src = src[ok]
            for p in range(d):
                for q in range(d):
                    coef = t[p, q, r, s]
                    if coef == 0:
                        continue
                    n2 = base.copy()
                    b1 = np.sqrt(n2[:, q] + 1.0)
                    n2[:, q] += 1
                    b2 = np.sqrt(n2[:, p] + 1.0)
                    n2[:, p] += 1
                    rows.append(basis.index(n2))
                    cols.append(idx_src)
                    vals.append(0.5 * coef * amp_rs * b1 * b2)
    if not rows:
        return sp.csr_matrix((D, D))
    h = sp.coo_matrix((np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))), shape=(D, D)).tocsr()
    return h / comb(M, 2)


def top_eigenpair(h):
    D = h.shape[0]
    if D <= 64:
        vals, vecs = scipy.linalg.eigh(h.toarray() if sp.issparse(h) else h)
        v, x = vals[-1], vecs[:, -1]
    else:
        v0 = np.cos(np.arange(D) + 1.0)  # fixed start vector keeps runs reproducible
        vals, vecs = scipy.sparse.linalg.eigsh(h, k=1, which="LA", tol=1e-13, ncv=min(D, 40), v0=v0)
        v, x = vals[0], vecs[:, 0]
    residual = float(np.linalg.norm(h @ x - v * x))
    return float(v), x, residual


@dataclass
class DeFinettiResult:
    m: int
    lambda_max: float
    rigorous_error: float
    dim: int
    residual: float
    vector: np.ndarray
    basis: BoseBasis

    @property
    def upper_bound(self):
        return self.lambda_max


def basis_dim(d, M):
    return comb(M + d - 1, d - 1)


def definetti_upper(r, w, m, max_dim=MAX_D):
    d = r.dim
    M = m + 2
    if d > 4:
        raise BudgetExceeded("de Finetti bound limited to local dimension 4", d=d)
    D = basis_dim(d, M)
    if D > max_dim:
        raise BudgetExceeded(f"symmetric subspace dimension {D} exceeds {max_dim}", dim=D, m=m, d=d)
    ops = np.array(r.dense())
    w = np.array([float(x) for x in w])
    basis = bose_basis(d, M)
    h = symmetric_operator(two_body_tensor(ops, w), basis)
    lam, vec, res = top_eigenpair(h)
    err = 4 * float(np.sum(w)) * d / (m + 2)
    return DeFinettiResult(m, lam, err, D, res, vec, basis)


def one_copy_density(dfr):
    """Single-copy reduced density matrix of the symmetric eigenvector."""
    basis = dfr.basis
    d, M = basis.d, basis.M
    psi = dfr.vector
    rho = np.zeros((d, d), dtype=complex)
    occ = basis.occ
    for p in range(d):
        for q in range(d):
            # <psi| a_q^+ a_p |psi> = M * rho[q, p]
            n1 = occ.copy()
            a = np.sqrt(n1[:, p].astype(float))
            n1[:, p] -= 1
            ok = a > 0
            n1 = n1[ok]
            b = np.sqrt(n1[:, q] + 1.0)
            n1[:, q] += 1
            tgt = basis.index(n1)
            rho[q, p] = np.sum(psi[tgt].conj() * a[ok] * b * psi[ok]) / M
    return rho


def warm_start_state(dfr):
    rho = one_copy_density(dfr)
    vals, vecs = np.linalg.eigh((rho + rho.conj().T) / 2)
    return vecs[:, -1]


def alpha_via_definetti(r, w=None, certified=None, max_dim=MAX_D):
    """Independence number as the rounded de Finetti eigenvalue.

    ``certified`` is a verdict status string; anything but ``"Perfect"`` is refused
    (pass ``None`` to run the decider).
    """
    n = len(r.strings)
    if certified is None:
        from .decide import decide

        certified = decide(r.graph).status
    if certified != "Perfect":
        raise NotCertified("graph is not certified hbar-perfect", status=certified)
    w = np.ones(n) if w is None else np.array([float(x) for x in w])
    w = w * n / w.sum()
    d = r.dim
    m = 16 * n * d - 1
    D = basis_dim(d, m + 2)
    if D > max_dim:
        raise BudgetExceeded(f"level m={m} needs dimension {D} > {max_dim}", m=m, dim=D)
    res = definetti_upper(r, w, m, max_dim)
    return int(round(res.lambda_max)), res
