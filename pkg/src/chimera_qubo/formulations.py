"""Linearized (MILP) and quadratic (MIQP) formulations of a QUBO instance.

The MILP introduces one continuous ``z_i_j`` per edge of the connectivity
graph together with the McCormick rows that pin it to ``x_i * x_j`` at binary
points::

    z_i_j - x_i <= 0            (upper, first endpoint)
    z_i_j - x_j <= 0            (upper, second endpoint)
    x_i + x_j - z_i_j <= 1      (lower, product)
    z_i_j >= 0                  (lower, nonnegativity)

``mode="reduced"`` keeps only the two lower rows when ``Q_ij > 0``, only the two
upper rows when ``Q_ij < 0`` and drops ``z_i_j`` altogether when ``Q_ij == 0``.

The MIQP keeps the objective quadratic.  With ``repair="diag-dominant"`` an
integer diagonal ``D`` is added to the quadratic form and subtracted from the
linear part, which leaves every binary objective value unchanged but makes the
quadratic form diagonally dominant with a nonnegative diagonal, hence PSD.

Models name their variables ``x<node>`` and ``z_<u>_<v>``; see
:mod:`chimera_qubo.lpformat` for the text rendering.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameterError, TooLargeError
from .instances import QuboInstance

MILP_MODES = ("full", "reduced")
MIQP_REPAIRS = ("none", "diag-dominant")


def x_name(v: int) -> str:
    return f"x{v}"


def z_name(u: int, v: int) -> str:
    return f"z_{u}_{v}"


@dataclass(frozen=True)
class Constraint:
    name: str
    terms: tuple  # ((var, coef), ...)
    sense: str    # "<=", ">=" or "="
    rhs: int


@dataclass(frozen=True)
class MilpModel:
    objective: tuple    # ((var, coef), ...), zero coefficients omitted
    offset: int
    constraints: tuple  # (Constraint, ...)
    bounds: tuple       # ((var, lo, hi), ...), None for an infinite side
    binaries: tuple     # (var, ...)
    name: str = "qubo-milp"

    @property
    def continuous(self) -> tuple:
        return tuple(b[0] for b in self.bounds)


@dataclass(frozen=True)
class MiqpModel:
    """Quadratic model ``sum c_ab v_a v_b + sum c_a v_a + offset``.

    ``quadratic`` holds ``(a, b, c)`` with ``a == b`` for square terms;
    ``shift`` records the diagonal ``D`` as ``((node, D_ii), ...)``.
    """

    linear: tuple
    quadratic: tuple
    offset: int
    binaries: tuple
    shift: tuple = ()
    name: str = "qubo-miqp"


def build_milp(inst: QuboInstance, mode: str = "full") -> MilpModel:
    if mode not in MILP_MODES:
        raise InvalidParameterError(f"mode must be one of {MILP_MODES}, got {mode!r}")
    g = inst.graph
    objective = [(x_name(v), w) for v, w in g.node_weight.items() if w != 0]
    constraints = []
    bounds = []
    for (u, v), q in g.edge_weight.items():
        if mode == "reduced" and q == 0:
            continue
        z, xu, xv = z_name(u, v), x_name(u), x_name(v)
        if q != 0:
            objective.append((z, q))
        bounds.append((z, 0, 1))
        if mode == "full" or q < 0:
            constraints.append(Constraint(f"ub_{u}_{v}_a", ((z, 1), (xu, -1)), "<=", 0))
            constraints.append(Constraint(f"ub_{u}_{v}_b", ((z, 1), (xv, -1)), "<=", 0))
        if mode == "full" or q > 0:
            constraints.append(Constraint(f"lb_{u}_{v}", ((xu, 1), (xv, 1), (z, -1)), "<=", 1))
            constraints.append(Constraint(f"nn_{u}_{v}", ((z, 1),), ">=", 0))
    return MilpModel(
        objective=tuple(objective),
        offset=inst.offset,
        constraints=tuple(constraints),
        bounds=tuple(bounds),
        binaries=tuple(x_name(v) for v in g.topology.nodes),
        name=f"qubo-milp-{mode}",
    )


def diagonal_shift(inst: QuboInstance) -> dict:
    """Smallest nonnegative integer ``D_ii`` making ``Qbar + D`` diagonally dominant.

    ``Qbar`` has ``Q_ij / 2`` off the diagonal, so the row condition reads
    ``Q_ii + D_ii >= sum_j |Q_ij| / 2``.
    """
    g = inst.graph
    absrow = dict.fromkeys(g.topology.nodes, 0)
    for (u, v), q in g.edge_weight.items():
        absrow[u] += abs(q)
        absrow[v] += abs(q)
    # ceil((S - 2 Q_ii) / 2)
    return {v: max(0, -((2 * g.node_weight[v] - absrow[v]) // 2)) for v in g.topology.nodes}


def build_miqp(inst: QuboInstance, repair: str = "none") -> MiqpModel:
    if repair not in MIQP_REPAIRS:
        raise InvalidParameterError(f"repair must be one of {MIQP_REPAIRS}, got {repair!r}")
    g = inst.graph
    shift = diagonal_shift(inst) if repair == "diag-dominant" else {}
    quadratic = []
    linear = []
    for v in g.topology.nodes:
        d = shift.get(v, 0)
        if g.node_weight[v] + d != 0:
            quadratic.append((x_name(v), x_name(v), g.node_weight[v] + d))
        if d:
            linear.append((x_name(v), -d))
    for (u, v), q in g.edge_weight.items():
        if q != 0:
            quadratic.append((x_name(u), x_name(v), q))
    return MiqpModel(
        linear=tuple(linear),
        quadratic=tuple(quadratic),
        offset=inst.offset,
        binaries=tuple(x_name(v) for v in g.topology.nodes),
        shift=tuple(shift.items()),
        name=f"qubo-miqp-{repair}",
    )


# -- evaluation on the binary hull ------------------------------------------


def milp_values(model: MilpModel, X: np.ndarray) -> np.ndarray:
    """Objective of ``model`` minimized over its continuous variables.

    ``X`` has one row per binary point, columns ordered as ``model.binaries``.
    Each constraint may involve at most one continuous variable with
    coefficient +-1.  Infeasible points get ``+inf``, unbounded ones ``-inf``.
    """
    X = np.atleast_2d(np.asarray(X))
    npts = X.shape[0]
    col = {name: i for i, name in enumerate(model.binaries)}
    lo = {}
    hi = {}
    for var, b_lo, b_hi in model.bounds:
        lo[var] = np.full(npts, -np.inf if b_lo is None else float(b_lo))
        hi[var] = np.full(npts, np.inf if b_hi is None else float(b_hi))
    feasible = np.ones(npts, dtype=bool)
    for c in model.constraints:
        rest = np.zeros(npts)
        cont = []
        for var, coef in c.terms:
            if var in col:
                rest += coef * X[:, col[var]]
            elif var in lo:
                cont.append((var, coef))
            else:
                raise InvalidParameterError(f"constraint {c.name} uses undeclared {var}")
        if not cont:
            if c.sense == "<=":
                feasible &= rest <= c.rhs
            elif c.sense == ">=":
                feasible &= rest >= c.rhs
            else:
                feasible &= rest == c.rhs
            continue
        if len(cont) > 1 or abs(cont[0][1]) != 1:
            raise InvalidParameterError(f"constraint {c.name} is not a single-variable row")
        var, coef = cont[0]
        # coef * z (sense) rhs - rest
        limit = (c.rhs - rest) * coef
        sense = c.sense if coef > 0 else {"<=": ">=", ">=": "<=", "=": "="}[c.sense]
        if sense in ("<=", "="):
            hi[var] = np.minimum(hi[var], limit)
        if sense in (">=", "="):
            lo[var] = np.maximum(lo[var], limit)
    value = np.full(npts, float(model.offset))
    obj_cont = {}
    for var, coef in model.objective:
        if var in col:
            value += coef * X[:, col[var]]
        else:
            obj_cont[var] = obj_cont.get(var, 0) + coef
    for var in lo:
        feasible &= lo[var] <= hi[var]
        coef = obj_cont.get(var, 0)
        if coef > 0:
            value = value + coef * lo[var]
        elif coef < 0:
            value = value + coef * hi[var]
    return np.where(feasible, value, np.inf)


def z_interval(model: MilpModel, x: dict) -> dict:
    """Feasible interval of every continuous variable at binary point ``x``.

    ``x`` maps binary variable names to 0/1.  Returns ``var -> (lo, hi)``.
    """
    col = {name: i for i, name in enumerate(model.binaries)}
    X = np.array([[x[name] for name in model.binaries]])
    out = {}
    for var, b_lo, b_hi in model.bounds:
        lo = -np.inf if b_lo is None else b_lo
        hi = np.inf if b_hi is None else b_hi
        for c in model.constraints:
            coef = dict(c.terms).get(var)
            if coef is None:
                continue
            rest = sum(cf * X[0, col[v]] for v, cf in c.terms if v in col)
            limit = (c.rhs - rest) * coef
            sense = c.sense if coef > 0 else {"<=": ">=", ">=": "<=", "=": "="}[c.sense]
            if sense in ("<=", "="):
                hi = min(hi, limit)
            if sense in (">=", "="):
                lo = max(lo, limit)
        out[var] = (lo, hi)
    return out


def all_binary_points(n: int) -> np.ndarray:
    """All ``2**n`` points, row ``r`` being the binary expansion of ``r``
    with column 0 most significant (lexicographic row order)."""
    r = np.arange(1 << n, dtype=np.int64)
    shifts = np.arange(n - 1, -1, -1, dtype=np.int64)
    return ((r[:, None] >> shifts) & 1).astype(np.int8)


def milp_brute_force(model: MilpModel, cap: int = 20) -> tuple:
    """Exact minimum of the MILP by enumerating every binary point.

    Returns ``(value, x)`` with ``x`` the lexicographically smallest minimizer
    keyed by binary variable name.
    """
    nb = len(model.binaries)
    if nb > cap:
        raise TooLargeError(f"{nb} binaries exceed cap {cap}")
    X = all_binary_points(nb)
    values = milp_values(model, X)
    best = int(np.argmin(values))
    if not np.isfinite(values[best]):
        raise InvalidParameterError("model is infeasible or unbounded")
    return int(values[best]), dict(zip(model.binaries, X[best].tolist()))


def miqp_arrays(model: MiqpModel) -> tuple:
    """``(A, c, offset)`` with objective ``v @ A @ v + c @ v + offset``.

    ``A`` is symmetric, indexed like ``model.binaries``.
    """
    col = {name: i for i, name in enumerate(model.binaries)}
    n = len(col)
    A = np.zeros((n, n))
    c = np.zeros(n)
    for a, b, coef in model.quadratic:
        i, j = col[a], col[b]
        if i == j:
            A[i, i] += coef
        else:
            A[i, j] += coef / 2
            A[j, i] += coef / 2
    for a, coef in model.linear:
        c[col[a]] += coef
    return A, c, model.offset


def eval_miqp(model: MiqpModel, x: dict) -> int:
    """Exact objective at a binary point keyed by variable name."""
    total = model.offset
    for a, b, coef in model.quadratic:
        total += coef * x[a] * x[b]
    for a, coef in model.linear:
        total += coef * x[a]
    return int(total)


def miqp_brute_force(model: MiqpModel, cap: int = 20) -> tuple:
    nb = len(model.binaries)
    if nb > cap:
        raise TooLargeError(f"{nb} binaries exceed cap {cap}")
    best = None
    for bits in itertools.product((0, 1), repeat=nb):
        x = dict(zip(model.binaries, bits))
        val = eval_miqp(model, x)
        if best is None or val < best[0]:
            best = (val, x)
    return best
