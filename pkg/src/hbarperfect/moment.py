"""State-polynomial moment relaxations for beta(G, w) and related SDPs.

Letters ``x_i`` square to one and commute or anticommute according to the
graph.  A state monomial is an operator word times a multiset of
pseudo-expectations ``<u_k>``.  Moment matrix entries ``<u* v>`` are reduced to
a sign times a sorted multiset of words; entries with the same multiset are
tied to one variable.  A word whose reversal equals minus itself has
vanishing (real) pseudo-expectation, which pins the entry to zero.

lambda_r is solved by the first-order splitting in ``admm``; the Lovasz theta,
omega and uncertainty SDPs (and lambda_r on request) go to the Clarabel
interior point solver through cvxpy.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import cvxpy as cp
import numpy as np
import scipy.sparse as sp

from .admm import ClassStructure, admm_maximize, dual_bound
from .errors import Infeasible, NoGoodSign, SizeOverflow, SolverStalled

MAX_SIDE = 400
FALLBACK_SIDE = 80


def normal_form(indices, g):
    """Reduce a word to ``(sign, ascending letters)`` using x_i^2 = 1 and the graph."""
    a = list(indices)
    sign = 1
    k = 0
    while k < len(a) - 1:
        if a[k] == a[k + 1]:
            del a[k:k + 2]
            k = max(k - 1, 0)
        elif a[k] > a[k + 1]:
            if g.has_edge(a[k], a[k + 1]):
                sign = -sign
            a[k], a[k + 1] = a[k + 1], a[k]
            k = max(k - 1, 0)
        else:
            k += 1
    return sign, tuple(a)


def is_odd(word, g):
    """True when the word equals minus its reversal, so its real expectation is 0."""
    edges = sum(1 for i, j in combinations(word, 2) if g.has_edge(i, j))
    return edges % 2 == 1


@dataclass(frozen=True)
class StateMonomial:
    op: tuple
    factors: tuple = ()

    def degree(self):
        return len(self.op) + sum(len(f) for f in self.factors)

    def __str__(self):
        s = "".join(f"x{i + 1}" for i in self.op) or ("1" if not self.factors else "")
        return s + "".join("<" + "".join(f"x{i + 1}" for i in f) + ">" for f in self.factors)


def monomial(g, op, factors=()):
    """Canonical monomial; signs of the operator word and of the factors are dropped."""
    _, w = normal_form(op, g)
    fs = tuple(sorted(normal_form(f, g)[1] for f in factors))
    return StateMonomial(w, fs)


def build_basis(g, level="A"):
    if g.n > 12:
        raise SizeOverflow("moment bases limited to n <= 12", n=g.n)
    n = g.n
    nonadj = [(i, j) for i, j in combinations(range(n), 2) if not g.has_edge(i, j)]
    out = [StateMonomial(())]
    out += [monomial(g, (i,), ((i,),)) for i in range(n)]
    if level in ("B", "C"):
        out += [monomial(g, (i, j), ((i,), (j,))) for i, j in combinations(range(n), 2)]
        for i, j in nonadj:
            out.append(monomial(g, (i,), ((j,), (i, j))))
            out.append(monomial(g, (j,), ((i,), (i, j))))
    if level == "C":
        out += [monomial(g, (i, j, k), ((i,), (j,), (k,))) for i, j, k in combinations(range(n), 3)]
        for i, j in nonadj:
            for k in range(n):
                if k in (i, j):
                    continue
                out.append(monomial(g, (i, j, k), ((i, j), (k,))))
                out.append(monomial(g, (i, k), ((i, j), (j,), (k,))))
                out.append(monomial(g, (j, k), ((i, j), (i,), (k,))))
                out.append(monomial(g, (k,), ((i, j), (i,), (j,), (k,))))
    elif level not in ("A", "B"):
        raise ValueError(f"unknown basis level {level!r}")
    seen = set()
    basis = []
    for m in out:
        if m not in seen:
            seen.add(m)
            basis.append(m)
    return basis


def entry(g, u, v):
    """``<u* v>`` reduced to ``(sign, key)``; sign 0 means the entry vanishes."""
    sign, word = normal_form(tuple(reversed(u.op)) + v.op, g)
    if is_odd(word, g):
        return 0, None
    factors = []
    for f in u.factors + v.factors + ((word,) if word else ()):
        s, f2 = normal_form(f, g)
        if is_odd(f2, g):
            return 0, None
        sign *= s
        if f2:
            factors.append(f2)
    return sign, tuple(sorted(factors))


@dataclass
class MomentProblem:
    graph: object
    basis: list
    classes: dict  # key -> list of (row, col, sign) with row <= col
    objective_keys: list  # key of <x_i>^2 for each vertex

    @property
    def side(self):
        return len(self.basis)


def moment_problem(g, level="A"):
    basis = build_basis(g, level)
    if len(basis) > MAX_SIDE:
        raise SizeOverflow(f"moment matrix side {len(basis)} exceeds {MAX_SIDE}", side=len(basis))
    classes = {}
    for a in range(len(basis)):
        for b in range(a, len(basis)):
            s, key = entry(g, basis[a], basis[b])
            if s:
                classes.setdefault(key, []).append((a, b, s))
    obj = [((i,), (i,)) for i in range(g.n)]
    return MomentProblem(g, basis, classes, obj)


@dataclass
class SdpSolution:
    value: float
    matrix: np.ndarray | None = None
    primal_residual: float = 0.0
    dual_residual: float = 0.0
    iterations: int = 0
    status: str = "optimal"
    extra: dict = field(default_factory=dict)

    @property
    def min_eigenvalue(self):
        return float(np.linalg.eigvalsh(self.matrix)[0]) if self.matrix is not None else None


def _affine_map(prob):
    """Sparse ``B`` and vector ``c`` with vec(M) = B y + c (column-major), one y per class."""
    N = prob.side
    keys = [k for k in prob.classes if k != ()]
    col = {k: j for j, k in enumerate(keys)}
    rows, cols, vals = [], [], []
    c = np.zeros(N * N)
    for key, members in prob.classes.items():
        for a, b, s in members:
            for i, j in {(a, b), (b, a)}:
                if key == ():
                    c[j * N + i] = s
                else:
                    rows.append(j * N + i)
                    cols.append(col[key])
                    vals.append(float(s))
    B = sp.csr_matrix((vals, (rows, cols)), shape=(N * N, len(keys)))
    return B, c, col


def class_value(prob, X, key):
    a, b, s = prob.classes[key][0]
    return s * X[a, b]


def _solve(problem, tol=1e-9):
    try:
        problem.solve(solver=cp.CLARABEL, tol_gap_abs=tol, tol_gap_rel=tol, tol_feas=tol)
    except cp.error.SolverError as exc:
        raise SolverStalled(str(exc)) from exc
    if problem.status in ("infeasible", "infeasible_inaccurate"):
        raise Infeasible("moment relaxation is infeasible", status=problem.status)
    if problem.status not in ("optimal", "optimal_inaccurate"):
        raise SolverStalled(f"solver status {problem.status}", status=problem.status)
    stats = problem.solver_stats
    return stats.num_iters if stats and stats.num_iters is not None else 0


def lambda_r(g, w, level="A", prob=None, tol=1e-7, max_iters=200_000, solver="admm", extra_constraints=None):
    """Upper bound sup sum_i w_i <x_i>^2 over the moment relaxation at ``level``.

    ``solver="clarabel"`` solves the same problem by interior point; then
    ``extra_constraints(y_of)`` may return further cvxpy constraints, where
    ``y_of(key)`` is the variable of an entry class.
    """
    prob = prob or moment_problem(g, level)
    w = np.array([float(x) for x in w])
    if len(w) != g.n:
        raise ValueError("weight length differs from vertex count")
    if solver == "clarabel":
        return _lambda_clarabel(prob, w, level, extra_constraints)
    st = ClassStructure(prob)
    q = np.zeros(st.K)
    for i, k in enumerate(prob.objective_keys):
        if k in st.col:
            q[st.col[k]] += w[i]
    y, Z, info = admm_maximize(st, q, tol=tol, max_iters=max_iters)
    if not info["converged"] and prob.side <= FALLBACK_SIDE:
        # degenerate faces can stall the splitting method; small problems go to interior point
        sol = _lambda_clarabel(prob, w, level)
        sol.extra["fallback"] = {"admm_iterations": info["iterations"], "admm_value": float(q @ y)}
        return sol
    M = st.matrix(y)
    lam_min = float(np.linalg.eigvalsh(M)[0])
    status = "optimal" if info["converged"] else "max_iters"
    extra = {"level": level, "side": prob.side, "classes": st.K, "min_eigenvalue": lam_min, "rho": info["rho"],
             "certified_upper": dual_bound(st, q, info["dual"])}
    return SdpSolution(float(q @ y), M, info["primal_residual"], info["dual_residual"], info["iterations"], status, extra)


def _lambda_clarabel(prob, w, level, extra_constraints=None):
    N = prob.side
    B, c, col = _affine_map(prob)
    y = cp.Variable(B.shape[1])
    M = cp.reshape(B @ y + c, (N, N), order="F")

    def y_of(key):
        return y[col[key]]

    terms = [w[i] * y_of(k) for i, k in enumerate(prob.objective_keys) if w[i] and k in col]
    obj = cp.sum(cp.hstack(terms)) if terms else cp.Constant(0)
    cons = [M >> 0]
    if extra_constraints:
        cons += extra_constraints(y_of)
    problem = cp.Problem(cp.Maximize(obj), cons)
    iters = _solve(problem)
    Mv = (B @ y.value + c).reshape(N, N, order="F")
    lam_min = float(np.linalg.eigvalsh(Mv)[0])
    return SdpSolution(float(problem.value), Mv, max(0.0, -lam_min), 0.0, iters, problem.status,
                       {"level": level, "side": N, "classes": len(col), "min_eigenvalue": lam_min})


def expectation_targets(prob, sol):
    """Values of <x_i>^2 read from row 1 of the moment matrix."""
    return np.array([class_value(prob, sol.matrix, k) for k in prob.objective_keys])


def lovasz_theta(g, w=None):
    w = np.ones(g.n) if w is None else np.array([float(x) for x in w])
    if g.n > 12:
        raise SizeOverflow("theta limited to n <= 12", n=g.n)
    X = cp.Variable((g.n, g.n), symmetric=True)
    sw = np.sqrt(w)
    cons = [X >> 0, cp.trace(X) == 1]
    cons += [X[i, j] == 0 for i, j in g.edges()]
    problem = cp.Problem(cp.Maximize(cp.sum(cp.multiply(np.outer(sw, sw), X))), cons)
    iters = _solve(problem)
    return SdpSolution(float(problem.value), X.value, 0.0, 0.0, iters, problem.status)


def _class_matrices(prob):
    """Symmetric coefficient matrix of each class: M = sum_k y_k A_k."""
    N = prob.side
    mats = {}
    for key, members in prob.classes.items():
        m = np.zeros((N, N))
        for a, b, s in members:
            m[a, b] += s
            if a != b:
                m[b, a] += s
        mats[key] = m
    return mats


def omega_r(g, level="A"):
    """max sum w subject to lambda_r(G, w) <= 1, through the dual of the moment SDP."""
    prob = moment_problem(g, level)
    N = prob.side
    mats = _class_matrices(prob)
    Z = cp.Variable((N, N), symmetric=True)
    w = cp.Variable(g.n, nonneg=True)
    obj_index = {k: i for i, k in enumerate(prob.objective_keys)}
    cons = [Z >> 0, cp.trace(Z @ mats[()]) <= 1]
    for key, m in mats.items():
        if key == ():
            continue
        if key in obj_index:
            cons.append(cp.trace(Z @ m) == -w[obj_index[key]])
        else:
            cons.append(cp.trace(Z @ m) == 0)
    problem = cp.Problem(cp.Maximize(cp.sum(w)), cons)
    iters = _solve(problem)
    omega = float(problem.value)
    return SdpSolution(omega, Z.value, 0.0, 0.0, iters, problem.status,
                       {"omega": omega, "inverse": 1 / omega, "weights": np.asarray(w.value).tolist()})


def uncertainty_sdp(g, i, caps, level="A"):
    """Smallest 1 - <x_i>^2 with 1 - <x_j>^2 <= c_j for j != i (``caps[i]`` is ignored)."""
    caps = [None if c is None else float(c) for c in caps]

    def extra(y_of):
        out = []
        for j, c in enumerate(caps):
            if j != i and c is not None:
                out.append(y_of(((j,), (j,))) >= 1 - c)
        return out

    w = np.zeros(g.n)
    w[i] = 1
    sol = lambda_r(g, w, level, solver="clarabel", extra_constraints=extra)
    sol.value = 1 - sol.value
    return sol


def basis_strings(basis):
    return [str(m) for m in basis]


# state extraction ----------------------------------------------------------------


def _project_density(A):
    """Nearest density matrix in Frobenius norm: clip the spectrum onto the simplex."""
    vals, vecs = np.linalg.eigh((A + A.conj().T) / 2)
    u = np.sort(vals)[::-1]
    css = np.cumsum(u)
    k = np.nonzero(u * np.arange(1, len(u) + 1) > css - 1)[0][-1]
    lam = np.maximum(vals - (css[k] - 1) / (k + 1), 0)
    return (vecs * lam) @ vecs.conj().T


def fit_density(ops, c, max_iter=400, tol=1e-12):
    """Accelerated projected gradient for min sum (tr(rho S_i) - c_i)^2 over density matrices."""
    d = ops.shape[1]
    L = 2.0 * d  # Pauli strings are trace-orthogonal with tr(S_i S_j) = d delta_ij
    rho = Y = np.eye(d, dtype=complex) / d
    t = 1.0
    prev = np.inf
    for it in range(max_iter):
        e = np.einsum("kij,ji->k", ops, Y).real
        new = _project_density(Y - 2 * np.tensordot(e - c, ops, axes=1) / L)
        t2 = (1 + np.sqrt(1 + 4 * t * t)) / 2
        Y = new + (t - 1) / t2 * (new - rho)
        rho, t = new, t2
        if it % 20 == 19:
            e = np.einsum("kij,ji->k", ops, rho).real
            cur = float(np.sum((e - c) ** 2))
            if cur < tol or prev - cur < tol * 1e-2:
                break
            prev = cur
    e = np.einsum("kij,ji->k", ops, rho).real
    return float(np.sum((e - c) ** 2)), rho


def _sign_order(n, hint, limit):
    """Sign vectors by Hamming distance from ``hint``; the first sign is free up to the search."""
    out = [tuple(hint)]
    for k in range(1, n + 1):
        for flips in combinations(range(n), k):
            if len(out) >= limit:
                return out
            s = list(hint)
            for i in flips:
                s[i] = -s[i]
            out.append(tuple(s))
    return out


def extract_state(r, targets, sign_hints=None, max_signs=64, accept=1e-6, threshold=0.5):
    """Approximate pure state reproducing ``<S_i>^2 = targets``.

    Sign patterns are tried starting from ``sign_hints`` in Hamming order
    (at most ``max_signs``, all of them for ``max_signs=None`` and n <= 12).
    Returns ``(state, residual, signs)`` where state is the top eigenvector of
    the best fitted density matrix.
    """
    if r.length > 5:
        raise SizeOverflow("state extraction limited to 5 qubits", length=r.length)
    ops = np.array(r.dense())
    n = len(ops)
    t = np.sqrt(np.clip(np.asarray(targets, dtype=float), 0, None))
    hint = [1] * n if sign_hints is None else [1 if s >= 0 else -1 for s in sign_hints]
    if max_signs is None:
        if n > 12:
            raise SizeOverflow("full sign traversal limited to n <= 12", n=n)
        max_signs = 2 ** n
    best = None
    for signs in _sign_order(n, hint, max_signs):
        res, rho = fit_density(ops, np.array(signs) * t)
        if best is None or res < best[0]:
            best = (res, rho, signs)
        if res < accept:
            break
    res, rho, signs = best
    if res > threshold:
        raise NoGoodSign(f"best residual {res:.3g} exceeds {threshold}", residual=res, tried=max_signs)
    vals, vecs = np.linalg.eigh(rho)
    return vecs[:, -1], res, list(signs)
