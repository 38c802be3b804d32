"""Solving f * h_y = q + r inside a fixed three-block decomposition.

For a received word y, h_y denotes the unique function in U with
res_{P_j}(h_y eta) = y_j.  Multiplication by h_y maps L(F) into the
ambient space L(K + F + D - G*), which splits as

    L(K + F + D - Gt)  (+)  L(K + F - G*)  (+)  W

for the target divisor Gt.  A solution is a nonzero f in L(F) whose
product lands in the first two blocks; the error values then fall out
of the residues of (r / f) eta at the evaluation points.  A candidate
is accepted only if its weight fits the cap and y - e is a codeword.
"""

from dataclasses import dataclass

import numpy as np

from . import backend
from .errors import InvariantViolation
from .funcspace import RationalFunction, decompose_with_w
from .linalg import Matrix, code_dtype, kernel


@dataclass
class KeyEquationResult:
    ok: bool
    reason: str  # accepted | no_solution | reject_weight | reject_membership
    error: np.ndarray | None
    weight: int | None
    kernel_dim: int
    f_coords: np.ndarray | None = None
    q_coords: np.ndarray | None = None
    r_coords: np.ndarray | None = None


class KeySetup:
    """Plan-time data for one (F, Gt) key-equation instance."""

    def __init__(self, ctx, fspace, big, sub1, sub2):
        curve = ctx.curve
        field = curve.field
        scheme = ctx.scheme
        if fspace.divisor + ctx.big.divisor != big.divisor:
            raise InvariantViolation("ambient space does not match F + (K + D - G*)")
        self.ctx = ctx
        self.fspace = fspace
        self.big = big
        self.sub1 = sub1
        self.sub2 = sub2
        self.field = field
        self.dec = decompose_with_w(big, sub1, sub2)
        self.minv = np.ascontiguousarray(self.dec["minv"])
        self.minv_w = np.ascontiguousarray(self.minv[:, self.dec["sw"]])
        # coords of f_a * u_j over the ambient basis
        prod_fp = scheme.product_fp(fspace.raw, ctx.u_raw)
        na, n, fptot = prod_fp.shape
        coords = big.coords_batch(prod_fp.reshape(na * n, fptot))
        self.tensor = np.ascontiguousarray(coords.reshape(na, n, big.dim))
        # windows at the evaluation points for error extraction
        self.win = 2 * max(fspace.divisor.degree, 0) + 2
        fw = fspace.window_tensor(ctx.dpoints, 0, self.win)
        self.fw_flat = np.ascontiguousarray(fw.reshape(fspace.dim, n * self.win))
        rw = sub2.window_tensor(ctx.dpoints, 0, self.win)
        tab = field.tables()
        rw_eta = np.zeros_like(rw)
        for j, p in enumerate(ctx.dpoints):
            ew = ctx.eta_window(p, 0, self.win)
            erow = np.array([[int(c) for c in ew.coeffs]], dtype=rw.dtype)
            if sub2.dim:
                rw_eta[:, j, :] = backend.batch_mul_trunc(
                    np.ascontiguousarray(rw[:, j, :]), erow, tab
                )[:, 0, :]
        self.rw_eta_flat = np.ascontiguousarray(rw_eta.reshape(sub2.dim, n * self.win))
        self._zeros_start = np.zeros(n, dtype=np.int64)

    def solve(self, y, cap, in_code):
        """One key-equation attempt against the received word y."""
        field = self.field
        tab = field.tables()
        y = np.ascontiguousarray(np.asarray(y, dtype=code_dtype(field)))
        n = len(self.ctx.dpoints)
        eps = backend.contract(self.tensor, y, tab)  # (dim F, dim big)
        ew = backend.matmul(eps, self.minv_w, tab)
        ker = kernel(Matrix(field, np.ascontiguousarray(ew.T))).a
        kdim = ker.shape[0]
        if kdim == 0:
            return KeyEquationResult(False, "no_solution", None, None, 0)
        phi = np.ascontiguousarray(ker[0])
        coords = backend.matmul(phi[None, :], eps, tab)
        blocks = backend.matmul(coords, self.minv, tab)[0]
        q = blocks[self.dec["s1"]]
        r = blocks[self.dec["s2"]]
        if blocks[self.dec["sw"]].any():
            raise InvariantViolation("kernel element leaks into the W block (bug)")
        if self.sub2.dim and r.any():
            num = backend.matmul(r[None, :], self.rw_eta_flat, tab).reshape(n, self.win)
        else:
            num = np.zeros((n, self.win), dtype=coords.dtype)
        den = backend.matmul(phi[None, :], self.fw_flat, tab).reshape(n, self.win)
        e, status = backend.residue_quotient(
            num, den, self._zeros_start, -1, tab
        )
        if status.any():
            raise InvariantViolation("error-extraction window exhausted (bug)")
        weight = int(np.count_nonzero(e))
        res = KeyEquationResult(
            False, "", e, weight, kdim, f_coords=phi, q_coords=q, r_coords=r
        )
        if weight > cap:
            res.reason = "reject_weight"
            return res
        if not in_code(y ^ e):
            res.reason = "reject_membership"
            return res
        res.ok = True
        res.reason = "accepted"
        return res


def verify_solution(setup, y, res, samples=None):
    """Independent recheck of a solver result, for tests.

    Confirms f * h_y = q + r as functions (via anchor windows) and
    recomputes every error value from first-principles residues.
    """
    ctx = setup.ctx
    curve = ctx.curve
    field = curve.field
    tab = field.tables()
    y = np.asarray(y, dtype=code_dtype(field))
    f_fn = setup.fspace.function(res.f_coords)
    h_coords = backend.matmul(y[None, :], ctx.u_combos, tab)[0]
    h_fn = ctx.big.function(h_coords)
    lhs = f_fn.mul(h_fn)
    q_fn = setup.sub1.function(res.q_coords) if setup.sub1.dim else None
    r_fn = setup.sub2.function(res.r_coords) if setup.sub2.dim else None
    sch = ctx.scheme
    for p in sch.anchors:
        a = sch.allow[p]
        w = lhs.window_at(p, -2 * a, sch.fplen[p] + 2 * a)
        acc = w
        if q_fn is not None and not q_fn.is_zero():
            acc = acc.add(q_fn.window_at(p, -2 * a, sch.fplen[p] + 2 * a).neg())
        if r_fn is not None and not r_fn.is_zero():
            acc = acc.add(r_fn.window_at(p, -2 * a, sch.fplen[p] + 2 * a).neg())
        if any(int(c) for c in acc.coeffs):
            return False
    # residues of (r / f) eta must reproduce the error vector
    if r_fn is None or r_fn.is_zero():
        e2 = np.zeros(len(ctx.dpoints), dtype=res.error.dtype)
    else:
        quot = RationalFunction(curve, r_fn.num * f_fn.den, r_fn.den * f_fn.num)
        guard = setup.win
        pts = ctx.dpoints if samples is None else [ctx.dpoints[j] for j in samples]
        vals = [ctx.residue_at(quot, p, guard) for p in pts]
        if samples is not None:
            return all(int(v) == int(res.error[j]) for v, j in zip(vals, samples))
        e2 = np.array(vals, dtype=res.error.dtype)
    return bool(np.array_equal(e2, res.error))
