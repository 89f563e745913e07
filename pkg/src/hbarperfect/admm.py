"""First-order solver for moment SDPs: ADMM between the PSD cone and the class-tied affine set.

Every matrix entry belongs to one class (a free variable, the constant 1, or
zero).  Class patterns are orthogonal, so the Frobenius projection onto the
affine set is a per-class signed average, optionally clipped from below.
"""

from __future__ import annotations

import numpy as np


class ClassStructure:
    def __init__(self, prob):
        N = prob.side
        keys = [k for k in prob.classes if k != ()]
        self.keys = keys
        self.col = {k: j for j, k in enumerate(keys)}
        K = len(keys)
        cls = np.full(N * N, K + 1, dtype=np.int64)  # K+1 marks a zero entry
        sgn = np.zeros(N * N)
        for key, members in prob.classes.items():
            c = K if key == () else self.col[key]
            for a, b, s in members:
                for i, j in {(a, b), (b, a)}:
                    cls[i * N + j] = c
                    sgn[i * N + j] = s
        self.N, self.K = N, K
        self.cls, self.sgn = cls, sgn
        count = np.bincount(cls, minlength=K + 2).astype(float)
        count[count == 0] = 1.0
        self.count = count

    def y_of(self, X):
        return np.bincount(self.cls, weights=self.sgn * X.ravel(), minlength=self.K + 2)[:self.K] / self.count[:self.K]

    def matrix(self, y):
        full = np.concatenate([y, [1.0, 0.0]])
        return (self.sgn * full[self.cls]).reshape(self.N, self.N)

    def project(self, X, lower=None):
        y = self.y_of(X)
        if lower is not None:
            y = np.maximum(y, lower)
        return self.matrix(y), y

    def objective_matrix(self, q):
        """Matrix C with <C, X> = q . y(X) on the affine set."""
        full = np.concatenate([q / self.count[:self.K], [0.0, 0.0]])
        return (self.sgn * full[self.cls]).reshape(self.N, self.N)


def psd_project(A):
    vals, vecs = np.linalg.eigh((A + A.T) / 2)
    pos = vals > 0
    v = vecs[:, pos]
    return (v * vals[pos]) @ v.T


def admm_maximize(struct, q, lower=None, tol=1e-7, max_iters=100_000, rho=1.0, relax=1.6):
    """Maximize ``q . y`` over PSD matrices in the class-tied affine set.

    Returns ``(y, Z, info)`` with ``Z`` the last PSD iterate and ``y`` its class averages.
    """
    C = struct.objective_matrix(np.asarray(q, dtype=float))
    N = struct.N
    Z = np.eye(N)
    U = np.zeros((N, N))
    it = 0
    r_norm = s_norm = np.inf
    for it in range(1, max_iters + 1):
        X, _ = struct.project(Z - U + C / rho, lower)
        Xr = relax * X + (1 - relax) * Z
        Z_old = Z
        Z = psd_project(Xr + U)
        U = U + Xr - Z
        if it % 10 == 0:
            r_norm = np.linalg.norm(X - Z)
            s_norm = rho * np.linalg.norm(Z - Z_old)
            if r_norm < tol and s_norm < tol:
                break
            if it % 50 == 0:
                if r_norm > 5 * s_norm:
                    rho *= 2
                    U /= 2
                elif s_norm > 5 * r_norm:
                    rho /= 2
                    U *= 2
    _, y = struct.project(Z, lower)
    info = {"iterations": it, "primal_residual": float(r_norm), "dual_residual": float(s_norm), "rho": rho,
            "converged": bool(r_norm < tol and s_norm < tol), "dual": -rho * U}
    return y, Z, info


def dual_bound(struct, q, L, diag_cap=1.0, polish=1000):
    """Rigorous upper bound on ``max q.y`` from any symmetric dual guess ``L``.

    ``L`` is corrected so that every class equation <L, A_k> = -q_k holds
    exactly, then shifted by ``mu I`` into the PSD cone.  Weak duality gives
    ``q.y <= <L, C0> + mu * tr M(y)``, and ``tr M(y) <= N * diag_cap`` holds for
    every state because diagonal moments are products of squared expectations.
    Valid whether or not the solver converged.  Up to ``polish`` rounds of
    alternating projections (class equations, PSD cone) shrink ``mu``.
    """
    N, K = struct.N, struct.K
    q = np.asarray(q, dtype=float)
    L = (L + L.T) / 2

    def correct(L):
        flat = L.ravel()
        dots = np.bincount(struct.cls, weights=struct.sgn * flat, minlength=K + 2)
        corr = np.concatenate([(q + dots[:K]) / struct.count[:K], [0.0, 0.0]])
        return (flat - struct.sgn * corr[struct.cls]).reshape(N, N), float(dots[K])

    def bound(L):
        L, c0 = correct(L)
        vals = np.linalg.eigvalsh(L)
        mu = max(0.0, -float(vals[0])) + 1e-12 * (1 + float(np.max(np.abs(vals))))  # eigenvalue roundoff
        return c0 + mu * N * diag_cap, L

    best, Lc = bound(L)
    last = best
    for it in range(1, polish + 1):
        b, Lc = bound(psd_project(Lc))
        best = min(best, b)
        if it % 50 == 0:
            if last - best < 1e-10:
                break
            last = best
    return best
