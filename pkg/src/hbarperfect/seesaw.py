"""Lower bounds on beta(G, w) by alternating maximization over pure states."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg
import scipy.sparse.linalg

from .errors import DegenerateWeights, DomainError, SizeOverflow

DEFAULT_SEED = 20240917


@dataclass
class SeeSawResult:
    value: float
    state: np.ndarray
    b: np.ndarray
    iterations: int
    restarts_used: int
    seed: int | None = None
    history: list = field(default_factory=list)


def operator_stack(r):
    if r.length > 6:
        raise SizeOverflow("see-saw limited to 6 qubits", length=r.length)
    return np.array(r.dense())


def expectations(ops, psi):
    """Real expectation values <psi|S_i|psi> for a stack of Hermitian operators."""
    return np.einsum("i,kij,j->k", psi.conj(), ops, psi).real


def objective(ops, w, psi):
    e = expectations(ops, psi)
    return float(np.dot(w, e * e))


def top_eigvec(h):
    d = h.shape[0]
    if d <= 64:
        vals, vecs = scipy.linalg.eigh(h, subset_by_index=[d - 1, d - 1])
        return vals[0], vecs[:, 0]
    vals, vecs = scipy.sparse.linalg.eigsh(h, k=1, which="LA", tol=1e-12, v0=np.cos(np.arange(d) + 1.0))
    return vals[0], vecs[:, 0]


def random_state(d, rng):
    v = rng.normal(size=d) + 1j * rng.normal(size=d)
    return v / np.linalg.norm(v)


def _weights(w, n):
    w = np.asarray([float(x) for x in w], dtype=float)
    if w.shape != (n,):
        raise DomainError("weight length mismatch", got=len(w), n=n)
    if np.any(w < 0):
        raise DomainError("negative weight")
    if not np.any(w > 0):
        raise DegenerateWeights("all weights are zero")
    return w


def _run(ops, w, psi, max_iter, tol):
    sw = np.sqrt(w)
    e = expectations(ops, psi)
    value = float(np.dot(w, e * e))
    history = [value]
    b = np.zeros(len(w))
    it = 0
    for it in range(1, max_iter + 1):
        v = sw * e
        nv = np.linalg.norm(v)
        if nv < 1e-14:
            b = sw / np.linalg.norm(sw)
        else:
            b = v / nv
        h = np.tensordot(b * sw, ops, axes=1)
        _, psi = top_eigvec(h)
        e = expectations(ops, psi)
        new = float(np.dot(w, e * e))
        history.append(new)
        if new - value < tol:
            value = max(value, new)
            break
        value = new
    return value, psi, b, it, history


def seesaw(r, w, init=None, restarts=10, max_iter=500, tol=1e-10, seed=DEFAULT_SEED):
    """Best see-saw value over ``restarts`` random starts plus any given initial states.

    ``init`` is a state vector or a list of them; each is run in addition to
    the random restarts.
    """
    ops = operator_stack(r)
    w = _weights(w, len(ops))
    rng = np.random.default_rng(seed)
    starts = []
    if init is not None:
        inits = [init] if isinstance(init, np.ndarray) and init.ndim == 1 else list(init)
        starts += [np.asarray(s, dtype=complex) / np.linalg.norm(s) for s in inits]
    starts += [random_state(r.dim, rng) for _ in range(restarts)]
    best = None
    for psi0 in starts:
        value, psi, b, it, hist = _run(ops, w, psi0, max_iter, tol)
        if best is None or value > best.value:
            best = SeeSawResult(value, psi, b, it, len(starts), seed, hist)
    return best


def generalized_objective(ops, w, k, psi):
    e = expectations(ops, psi)
    return float(np.dot(w, np.abs(e) ** k))


def generalized_gradient(ops, w, k, psi):
    """Euclidean gradient of sum w_i |<S_i>|^k w.r.t. psi as a complex vector (dRe + i dIm)."""
    e = expectations(ops, psi)
    coef = w * k * np.abs(e) ** (k - 1) * np.sign(e)
    return 2 * np.tensordot(coef, ops, axes=1) @ psi


def _ascend(ops, w, k, psi, max_iter, tol):
    f = generalized_objective(ops, w, k, psi)
    step = 1.0
    for _ in range(max_iter):
        g = generalized_gradient(ops, w, k, psi)
        g = g - np.vdot(psi, g).real * psi
        gn2 = np.vdot(g, g).real
        if gn2 < 1e-24:
            break
        step = min(step * 2, 1e3)
        while True:
            cand = psi + step * g
            cand /= np.linalg.norm(cand)
            fc = generalized_objective(ops, w, k, cand)
            if fc >= f + 1e-4 * step * gn2 or step < 1e-14:
                break
            step *= 0.5
        gain = fc - f
        if gain <= 0:
            break
        psi, f = cand, fc
        if gain < tol:
            break
    return f, psi


def generalized_beta_lower(r, w, k, restarts=10, max_iter=2000, tol=1e-12, seed=DEFAULT_SEED):
    """Riemannian gradient ascent of sum w_i |<S_i>|^k on the unit sphere.

    Large k flattens the landscape around random states, so each restart
    runs once directly and once climbing k = 2, 4, 8, ... up to the requested exponent.
    """
    if k < 2 or int(k) != k:
        raise DomainError("k must be an integer >= 2", k=k)
    if r.length > 5:
        raise SizeOverflow("generalized beta limited to 5 qubits", length=r.length)
    ops = operator_stack(r)
    w = _weights(w, len(ops))
    rng = np.random.default_rng(seed)
    schedule = [2]
    while schedule[-1] * 2 < k:
        schedule.append(schedule[-1] * 2)
    if schedule[-1] != k:
        schedule.append(k)
    best = -np.inf
    for _ in range(restarts):
        psi0 = random_state(r.dim, rng)
        best = max(best, _ascend(ops, w, k, psi0, max_iter, tol)[0])
        psi = psi0
        for kk in schedule:
            f, psi = _ascend(ops, w, kk, psi, max_iter, tol)
        best = max(best, f)
    return best
