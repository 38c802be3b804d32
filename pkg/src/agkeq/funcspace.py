"""Riemann-Roch spaces and their coordinate systems.

L(A) is realized as { numerator / H0 } where H0 is a fixed product of
fully rational lines clearing the poles demanded by A, and numerators
are forms of matching degree satisfying vanishing conditions read off
local expansions.  Every function is identified by its "fingerprint":
stacked Laurent windows at a small shared set of anchor points, long
enough that the fingerprint map is injective on every space in play.
That turns function-space questions (membership, coordinates, direct
sums, products) into exact matrix work on the backend.
"""

import math
from weakref import WeakKeyDictionary

import numpy as np

from . import backend
from .curve import Divisor
from .errors import (
    AmbientTooSmall,
    DegenerateDecomposition,
    InvariantViolation,
    NotInSpace,
    PoleOrderUnbounded,
    PrecisionExhausted,
)
from .forms import Form, monomials
from .linalg import Matrix, Subspace, code_dtype, kernel, rref_with_transform
from .series import Laurent, ps_inv

_point_window_caches = WeakKeyDictionary()


class RationalFunction:
    """num/den of forms of equal degree, viewed as a function on the curve."""

    __slots__ = ("curve", "num", "den")

    def __init__(self, curve, num, den):
        if num.degree != den.degree and not num.is_zero():
            raise InvariantViolation("numerator and denominator degrees differ")
        if den.is_zero():
            raise InvariantViolation("zero denominator form")
        self.curve = curve
        self.num = num
        self.den = den

    def is_zero(self):
        return self.num.is_zero()

    def mul(self, other):
        return RationalFunction(self.curve, self.num * other.num, self.den * other.den)

    def scaled(self, c):
        return RationalFunction(self.curve, self.num.scaled(c), self.den)

    def window_at(self, point, start, length):
        """Laurent window [start, start+length) at a rational point."""
        pw = point_windows(self.curve, point)
        return pw.quotient_window(self.num, self.den, start, length)

    def __repr__(self):
        return f"({self.num}) / ({self.den})"


def point_windows(curve, point):
    cache = _point_window_caches.setdefault(curve, {})
    if point not in cache:
        cache[point] = PointWindows(curve, point)
    return cache[point]


class PointWindows:
    """Taylor windows of all monomials of a given degree at one point.

    Rows are built degree by degree with batched truncated
    convolutions, in the canonical monomial order, so a form's window
    is just coefficient-vector @ rows.
    """

    def __init__(self, curve, point):
        self.curve = curve
        self.point = point
        self.field = curve.field
        self._n = 0
        self._xyz = None
        self._rows = {}

    def _ensure(self, n):
        if n <= self._n:
            return
        n = max(n, 2 * self._n, 8)
        exp = self.curve.local_expansion(self.point, n)
        xs, ys, zs = exp.xyz()
        dt = code_dtype(self.field)
        self._xyz = np.array([xs[:n], ys[:n], zs[:n]], dtype=dt)
        row0 = np.zeros((1, n), dtype=dt)
        row0[0, 0] = 1
        self._rows = {0: row0}
        self._n = n

    def rows(self, degree, n):
        """(num_monomials(degree), n) window matrix."""
        self._ensure(max(n, degree + 1))
        have = self._rows.get(degree)
        if have is not None and have.shape[1] >= n:
            return have[:, :n]
        # build upward from the largest cached degree
        dmax = max(d for d in self._rows if d <= degree)
        tab = self.field.tables()
        full = self._n
        for d in range(dmax + 1, degree + 1):
            prev = self._rows[d - 1]
            mons_prev = monomials(d - 1)
            idx_prev = {m: i for i, m in enumerate(mons_prev)}
            rows = np.zeros((len(monomials(d)), full), dtype=prev.dtype)
            # each monomial of degree d extends one of degree d-1
            plan = {0: [], 1: [], 2: []}
            for k, (i, j, l) in enumerate(monomials(d)):
                if i >= 1:
                    plan[0].append((k, idx_prev[(i - 1, j, l)]))
                elif j >= 1:
                    plan[1].append((k, idx_prev[(i, j - 1, l)]))
                else:
                    plan[2].append((k, idx_prev[(i, j, l - 1)]))
            for var, pairs in plan.items():
                if not pairs:
                    continue
                dst = [p[0] for p in pairs]
                src = [p[1] for p in pairs]
                prod = backend.batch_mul_trunc(prev[src], self._xyz[var][None, :], tab)
                rows[dst] = prod[:, 0, :]
            self._rows[d] = rows
        return self._rows[degree][:, :n]

    def form_window(self, form, n):
        """Taylor window [0, n) of a form along the curve at this point."""
        vec = form.coeff_vector()
        tab = self.field.tables()
        return backend.matmul(vec[None, :], self.rows(form.degree, n), tab)[0]

    def form_order(self, form, cap=None):
        """ord_P of the form's restriction; PoleOrderUnbounded past cap."""
        if form.is_zero():
            raise InvariantViolation("order of the zero form")
        cap = cap or (form.degree * self.curve.degree + 2)
        n = 8
        while True:
            w = self.form_window(form, n)
            nz = np.nonzero(w)[0]
            if len(nz):
                return int(nz[0])
            if n > cap:
                raise PoleOrderUnbounded(
                    f"form vanishes past order {cap} at {self.point}; is it a curve multiple?"
                )
            n *= 2

    def quotient_window(self, num, den, start, length):
        """Exact Laurent window of num/den on [start, start+length)."""
        f = self.field
        v = self.form_order(den)
        need = length + (start + v) + v + 2
        need = max(need, v + 2, length + 1)
        nw = self.form_window(num, need)
        dw = self.form_window(den, need)
        lau = Laurent(f, 0, [int(c) for c in nw]).div(Laurent(f, 0, [int(c) for c in dw]))
        return lau.truncate(start, length)


class FingerprintScheme:
    """Shared anchor windows making fingerprints injective on every
    divisor at most `bound` (pointwise)."""

    def __init__(self, curve, anchors, allow, depth):
        self.curve = curve
        self.anchors = list(anchors)
        self.allow = {p: int(allow.coeff(p)) for p in self.anchors}
        self.depth = depth
        self.bound = allow
        self.fplen = {p: self.allow[p] + depth for p in self.anchors}
        self.rawlen = {p: self.fplen[p] + self.allow[p] for p in self.anchors}
        self._fp_off = {}
        self._raw_off = {}
        fo = ro = 0
        for p in self.anchors:
            self._fp_off[p] = fo
            self._raw_off[p] = ro
            fo += self.fplen[p]
            ro += self.rawlen[p]
        self.fp_total = fo
        self.raw_total = ro

    def admits(self, divisor):
        return divisor.positive_part() <= self.bound

    def fp_from_raw(self, raw):
        """Slice per-anchor fingerprint prefixes out of raw windows."""
        cols = []
        for p in self.anchors:
            o = self._raw_off[p]
            cols.extend(range(o, o + self.fplen[p]))
        return raw[:, cols]

    def product_fp(self, raw_a, raw_b):
        """Fingerprints of all pairwise products from raw windows.

        Returns (na, nb, fp_total); valid whenever each product lies in
        a divisor this scheme admits.
        """
        tab = self.curve.field.tables()
        na, nb = raw_a.shape[0], raw_b.shape[0]
        out = np.zeros((na, nb, self.fp_total), dtype=raw_a.dtype)
        for p in self.anchors:
            o = self._raw_off[p]
            L = self.rawlen[p]
            conv = backend.batch_mul_trunc(raw_a[:, o : o + L], raw_b[:, o : o + L], tab)
            a = self.allow[p]
            fo = self._fp_off[p]
            out[:, :, fo : fo + self.fplen[p]] = conv[:, :, a : a + self.fplen[p]]
        return out


def make_scheme(curve, divisors, num_anchors=8, depth_slack=2):
    """Pick anchors and window sizes covering the given divisors."""
    amax = Divisor.zero()
    neg = set()
    for d in divisors:
        amax = amax.sup(d.positive_part())
        neg.update(d.negative_part().support())
    pts = curve.rational_points()
    pool = [p for p in pts if p not in neg]
    outside = [p for p in pool if amax.coeff(p) == 0]
    inside = [p for p in pool if amax.coeff(p) > 0]
    anchors = (outside + inside)[:num_anchors]
    if not anchors:
        raise AmbientTooSmall("no usable anchor points on the curve")
    s = len(anchors)
    depth = max(1, math.ceil((amax.degree + 1) / s)) + depth_slack
    return FingerprintScheme(curve, anchors, amax, depth)


class FunctionSpace:
    """A concrete basis of L(A) with its fingerprint coordinates."""

    def __init__(self, curve, divisor, scheme, basis, raw):
        self.curve = curve
        self.divisor = divisor
        self.scheme = scheme
        self.basis = basis
        self.raw = raw
        self.fp = scheme.fp_from_raw(raw) if len(basis) else raw[:, :0]
        field = curve.field
        if len(basis):
            r, t, piv = rref_with_transform(Matrix(field, self.fp))
            if len(piv) != len(basis):
                raise InvariantViolation(
                    f"fingerprints of L({divisor}) are not independent "
                    f"({len(piv)} < {len(basis)}); window depth too small"
                )
            self._solve_r = r.a
            self._solve_t = t.a
            self._solve_piv = list(piv)
        else:
            self._solve_r = self._solve_t = None
            self._solve_piv = []

    @property
    def dim(self):
        return len(self.basis)

    def coords_batch(self, fps, check=True):
        """Coefficients over self.basis for each fingerprint row."""
        fps = np.ascontiguousarray(fps, dtype=self.raw.dtype)
        if self.dim == 0:
            if check and fps.any():
                raise NotInSpace("nonzero fingerprint vs zero space")
            return np.zeros((fps.shape[0], 0), dtype=fps.dtype)
        tab = self.curve.field.tables()
        lam = fps[:, self._solve_piv]
        coords = backend.matmul(lam, self._solve_t, tab)
        if check:
            back = backend.matmul(coords, self.fp, tab)
            if not np.array_equal(back, fps):
                raise NotInSpace(f"fingerprint not in L({self.divisor})")
        return coords

    def contains_fp(self, fp):
        try:
            self.coords_batch(fp[None, :])
            return True
        except NotInSpace:
            return False

    def function(self, coords):
        """The rational function with the given basis coefficients."""
        if not self.basis:
            raise InvariantViolation("zero space has no functions to combine")
        f = self.curve.field
        num = Form(f, self.basis[0].num.degree, {})
        den = self.basis[0].den
        for c, b in zip(coords, self.basis):
            c = int(c)
            if c:
                num = num + b.num.scaled(c)
        return RationalFunction(self.curve, num, den)

    def window_tensor(self, points, start, length):
        """(dim, len(points), length) exact Laurent windows of every
        basis function, window [start, start+length) at each point."""
        field = self.curve.field
        tab = field.tables()
        out = np.zeros((self.dim, len(points), length), dtype=self.raw.dtype)
        if self.dim == 0:
            return out
        den = self.basis[0].den
        deg = self.basis[0].num.degree
        numvecs = np.stack([b.num.coeff_vector() for b in self.basis])
        for j, p in enumerate(points):
            pw = point_windows(self.curve, p)
            v = pw.form_order(den)
            need = max(length + start + 2 * v + 2, v + 2, length + 1)
            rows = pw.rows(deg, need)
            nws = backend.matmul(numvecs, rows, tab)
            dw = pw.form_window(den, need)
            inv = ps_inv([int(c) for c in dw[v:]], need - v, field)
            invm = np.array([inv], dtype=self.raw.dtype)
            q = backend.batch_mul_trunc(nws[:, : need - v], invm, tab)[:, 0, :]
            # quotient exponent e sits at column e + v
            for e in range(start, start + length):
                col = e + v
                if col >= 0:
                    out[:, j, e - start] = q[:, col]
        return out

    def evals_at(self, points):
        """(dim, n) values at points where every basis function is regular."""
        return self.window_tensor(points, 0, 1)[:, :, 0]


def _line_cover(curve, apos, prefer_avoid):
    """Deterministic fully-rational line arrangement with
    div(product) >= apos; returns (form, divisor)."""
    field = curve.field
    chosen = {}
    for p, need in apos.items():
        key, div = curve.good_line_through(p, avoid=prefer_avoid)
        mult = div.coeff(p)
        power = -(-need // mult)
        if key in chosen:
            form, div0, pow0 = chosen[key]
            chosen[key] = (form, div0, max(pow0, power))
        else:
            chosen[key] = (Form.line(field, *key), div, power)
    h0 = Form.constant(field)
    total = Divisor.zero()
    for form, div, power in chosen.values():
        for _ in range(power):
            h0 = h0 * form
            total = total + div
    # powers may overshoot some points but never undershoot
    if not apos <= total and apos.degree:
        raise InvariantViolation("line cover failed to dominate the divisor")
    return h0, total


def rr_space(curve, divisor, scheme=None, line_avoid=()):
    """The full linear system L(divisor) as a FunctionSpace.

    Numerators are degree-m forms with prescribed vanishing; the
    denominator is a product of fully rational lines (through the pole
    support, preferring to miss `line_avoid` and the scheme anchors).
    Dimensions are checked against Riemann-Roch whenever it is exact.
    """
    if scheme is None:
        scheme = make_scheme(curve, [divisor])
    if not scheme.admits(divisor):
        raise InvariantViolation(f"scheme windows do not cover {divisor}")
    field = curve.field
    g = curve.genus
    apos = divisor.positive_part()
    avoid = frozenset(set(scheme.anchors) | set(line_avoid))
    for attempt in range(3):
        if apos.degree == 0:
            h0 = Form.constant(field)
            hdiv = Divisor.zero()
        else:
            h0, hdiv = _line_cover(curve, apos, avoid)
        for _ in range(attempt):
            h0 = h0 * Form.variable(field, "Z")
            hdiv = hdiv + curve.z_line_divisor()
        m = h0.degree
        space = _interpolate(curve, divisor, h0, hdiv, m, scheme)
        expected = None
        if divisor.degree > 2 * g - 2:
            expected = divisor.degree + 1 - g
        elif divisor.degree < 0:
            expected = 0
        if expected is None or space.dim == expected:
            return space
    raise AmbientTooSmall(
        f"L({divisor}): got dim {space.dim}, expected {expected} (degree {m})"
    )


def _interpolate(curve, divisor, h0, hdiv, m, scheme):
    field = curve.field
    dt = code_dtype(field)
    nmon = len(monomials(m))
    cond = hdiv - divisor
    rows = []
    for p, e in cond.items():
        if e <= 0:
            continue
        pw = point_windows(curve, p)
        rows.append(np.ascontiguousarray(pw.rows(m, e).T))
    conds = np.vstack(rows) if rows else np.zeros((0, nmon), dtype=dt)
    # kernel of the condition map, inside degree-m forms
    ker = kernel(Matrix(field, conds)).a if conds.shape[0] else np.eye(nmon, dtype=dt)
    # quotient by multiples of the curve form
    if m >= curve.degree:
        mult_deg = m - curve.degree
        cm_rows = []
        for mon in monomials(mult_deg):
            f = Form(field, mult_deg, {mon: 1}) * curve.form
            cm_rows.append(f.coeff_vector())
        cm = np.stack(cm_rows)
    else:
        cm = np.zeros((0, nmon), dtype=dt)
    ker_sub = Subspace(field, ker, ambient=nmon)
    cm_sub = Subspace(field, cm, ambient=nmon)
    if not ker_sub.contains(cm_sub):
        raise InvariantViolation("curve multiples violate vanishing conditions (bug)")
    reps = cm_sub.complement_in(ker_sub).a
    basis = [
        RationalFunction(curve, Form.from_coeff_vector(field, m, vec), h0) for vec in reps
    ]
    raw = _raw_windows(curve, basis, scheme, dt)
    return FunctionSpace(curve, divisor, scheme, basis, raw)


def function_fp(curve, fn, scheme):
    """Fingerprint row of one rational function under `scheme`."""
    dt = code_dtype(curve.field)
    return scheme.fp_from_raw(_raw_windows(curve, [fn], scheme, dt))[0]


def _raw_windows(curve, basis, scheme, dt):
    field = curve.field
    tab = field.tables()
    raw = np.zeros((len(basis), scheme.raw_total), dtype=dt)
    if not basis:
        return raw
    den = basis[0].den
    deg = basis[0].num.degree
    numvecs = np.stack([b.num.coeff_vector() for b in basis])
    for p in scheme.anchors:
        pw = point_windows(curve, p)
        allow = scheme.allow[p]
        rl = scheme.rawlen[p]
        v = pw.form_order(den)
        need = max(rl - allow + 2 * v + 2, v + 2, rl + 1)
        rowsm = pw.rows(deg, need)
        nws = backend.matmul(numvecs, rowsm, tab)
        dw = pw.form_window(den, need)
        inv = ps_inv([int(c) for c in dw[v:]], need - v, field)
        invm = np.array([inv], dtype=dt)
        q = backend.batch_mul_trunc(nws[:, : need - v], invm, tab)[:, 0, :]
        o = scheme._raw_off[p]
        for e in range(-allow, -allow + rl):
            col = e + v
            if col >= 0:
                raw[:, o + e + allow] = q[:, col]
    return raw


class LadderFamily:
    """L(base + s*P) for s = 0..hi with a pole-order-adapted basis.

    The adapted basis has strictly increasing pole order at P, so the
    level-s space is spanned by a prefix of it and coordinates nest
    across levels.
    """

    def __init__(self, curve, base, point, hi, scheme, line_avoid=()):
        self.curve = curve
        self.base = base
        self.point = point
        self.hi = hi
        top_div = base + Divisor.single(point, hi)
        top = rr_space(curve, top_div, scheme, line_avoid=line_avoid)
        field = curve.field
        tab = field.tables()
        if top.dim == 0:
            self.pole_orders = []
            self.space = top
            self._dims = [0] * (hi + 1)
            self._check_dims()
            return
        pmax = max(top_div.coeff(point), 0)
        vanish_cap = top_div.positive_part().degree + 2
        wlen = pmax + vanish_cap
        wins = top.window_tensor([point], -pmax, wlen)[:, 0, :]
        r, t, piv = rref_with_transform(Matrix(field, wins))
        if len(piv) != top.dim:
            raise InvariantViolation("pole-order adaptation lost rank; window too short")
        # rref rows have strictly increasing leading exponent, i.e.
        # strictly DECREASING pole order; reverse for ascending
        order = list(range(top.dim))[::-1]
        combos = t.a[order]
        self.pole_orders = [pmax - piv[k] for k in order]
        adapted_raw = backend.matmul(combos, top.raw, tab)
        den = top.basis[0].den
        deg = top.basis[0].num.degree
        numvecs = np.stack([b.num.coeff_vector() for b in top.basis])
        adapted_vecs = backend.matmul(combos, numvecs, tab)
        adapted_basis = [
            RationalFunction(curve, Form.from_coeff_vector(field, deg, vec), den)
            for vec in adapted_vecs
        ]
        self.space = FunctionSpace(curve, top_div, scheme, adapted_basis, adapted_raw)
        base_c = base.coeff(point)
        self._dims = []
        for s in range(hi + 1):
            cap = base_c + s
            self._dims.append(sum(1 for po in self.pole_orders if po <= cap))
        self._check_dims()

    def _check_dims(self):
        g = self.curve.genus
        for s in range(self.hi + 1):
            deg = self.base.degree + s
            if deg > 2 * g - 2:
                if self._dims[s] != deg + 1 - g:
                    raise InvariantViolation(
                        f"adapted ladder level {s}: dim {self._dims[s]} != {deg + 1 - g}"
                    )
            if deg < 0 and self._dims[s] != 0:
                raise InvariantViolation("negative-degree level has nonzero dim")
        if any(b > a for a, b in zip(self._dims[1:], self._dims)):
            raise InvariantViolation("ladder dims must be nondecreasing")

    def dim_at(self, s):
        return self._dims[s]

    def level_divisor(self, s):
        return self.base + Divisor.single(self.point, s)

    def level_space(self, s):
        """The level-s member L(base + s*point) as its own space; its
        basis is the adapted-basis prefix, so coordinates nest."""
        if not hasattr(self, "_levels"):
            self._levels = {}
        if s not in self._levels:
            d = self._dims[s]
            self._levels[s] = FunctionSpace(
                self.curve,
                self.level_divisor(s),
                self.space.scheme,
                self.space.basis[:d],
                self.space.raw[:d],
            )
        return self._levels[s]


def decompose_with_w(big, sub1, sub2):
    """Split `big` into sub1 + sub2 + W with a canonical complement W.

    Returns a dict holding the inverse change of basis so that
    coordinates in `big` can be projected onto each block.
    """
    if sub1.scheme is not big.scheme or sub2.scheme is not big.scheme:
        raise InvariantViolation("decomposition needs one shared fingerprint scheme")
    field = big.curve.field
    n = big.dim
    c1 = big.coords_batch(sub1.fp) if sub1.dim else np.zeros((0, n), dtype=big.raw.dtype)
    c2 = big.coords_batch(sub2.fp) if sub2.dim else np.zeros((0, n), dtype=big.raw.dtype)
    s12 = Subspace(field, np.vstack([c1, c2]), ambient=n)
    if s12.dim != sub1.dim + sub2.dim:
        raise DegenerateDecomposition(
            f"L({sub1.divisor}) and L({sub2.divisor}) overlap inside L({big.divisor})"
        )
    w = s12.complement_in(Subspace.full(field, n)).a
    m = np.vstack([c1, c2, w])
    r, t, piv = rref_with_transform(Matrix(field, m))
    if len(piv) != n:
        raise DegenerateDecomposition("block basis is singular (bug)")
    return {
        "big": big,
        "sub1": sub1,
        "sub2": sub2,
        "w_rows": w,
        "minv": t.a,
        "s1": slice(0, sub1.dim),
        "s2": slice(sub1.dim, sub1.dim + sub2.dim),
        "sw": slice(sub1.dim + sub2.dim, n),
    }


class DifferentialContext:
    """The residue pairing data for a code C(D, G).

    eta = dx / (dF/dY) (or -dy / (dF/dX) when that partial vanishes
    identically); its divisor is the canonical K = (d-3) * z-line.
    U is the canonical complement of L(K - G*) inside L(K + D - G*)
    whose basis is residue-dual to D, so the function h_y with
    res_{P_j}(h_y eta) = y_j is literally sum y_j u_j.
    """

    def __init__(self, curve, dpoints, gdiv, pinf, scheme, gstar=None):
        self.curve = curve
        self.dpoints = list(dpoints)
        self.gdiv = gdiv
        self.pinf = pinf
        field = curve.field
        self.gstar = gstar if gstar is not None else Divisor.single(pinf, -1)
        if self.gstar.degree >= 0:
            raise InvariantViolation("G* must have negative degree so L(G*) = 0")
        if not self.gstar <= gdiv:
            raise InvariantViolation("G* must be dominated by G")
        self.k_div = curve.canonical_divisor()
        self.scheme = scheme
        n = len(self.dpoints)
        ddiv = Divisor([(p, 1) for p in self.dpoints])
        self.ddiv = ddiv
        big = rr_space(curve, self.k_div + ddiv - self.gstar, scheme)
        g = curve.genus
        if big.dim != n + g:
            raise InvariantViolation(f"dim L(K+D-G*) = {big.dim}, expected {n + g}")
        self.eta = self._eta_windows(2)
        eta0 = np.array([self.eta[j].coeff(0) for j in range(n)], dtype=big.raw.dtype)
        if not eta0.all():
            raise InvariantViolation("eta must be a unit at every evaluation point")
        self.eta0 = eta0
        # residues of the big basis: window coefficient at -1 times eta(0)
        wins = big.window_tensor(self.dpoints, -1, 1)[:, :, 0]
        tab = field.tables()
        res = backend.vec_mul(wins, eta0[None, :], tab)
        r, t, piv = rref_with_transform(Matrix(field, res))
        rank = len(piv)
        if rank != n:
            raise InvariantViolation(
                f"residue pairing on L(K+D-G*) has rank {rank}, expected {n}"
            )
        if not np.array_equal(r.a[:n], np.eye(n, dtype=res.dtype)):
            raise InvariantViolation("residue matrix rref is not the identity block (bug)")
        self.big = big
        self.u_combos = t.a[:n]
        self.u_raw = backend.matmul(self.u_combos, big.raw, tab)
        kernel_combos = t.a[n:]
        self.lk_gstar_dim = kernel_combos.shape[0]
        if self.lk_gstar_dim != g:
            raise InvariantViolation(f"dim L(K-G*) = {self.lk_gstar_dim}, expected {g}")

    def _eta_form_pair(self):
        """(numerator differential data) used for eta windows."""
        fy = self.curve.form.partial("Y")
        if not fy.is_zero():
            return ("x", fy)
        fx = self.curve.form.partial("X")
        if fx.is_zero():
            raise InvariantViolation("both X and Y partials vanish identically")
        return ("y", fx)

    def _eta_windows(self, length, points=None):
        """Laurent windows of eta at the evaluation points."""
        curve = self.curve
        field = curve.field
        pts = points if points is not None else self.dpoints
        which, fpart = self._eta_form_pair()
        d = curve.degree
        out = []
        for p in pts:
            pw = point_windows(curve, p)
            ordp = pw.form_order(fpart)
            v_z = pw.form_order(Form.variable(field, "Z")) if p.chart != "z" else 0
            # generous length: account for cancellation room
            n = length + 2 * (ordp + d * max(v_z, 1)) + 6
            exp = curve.local_expansion(p, n)
            xs, ys, zs = exp.xyz()
            zl = Laurent(field, 0, zs)
            coord = Laurent(field, 0, xs if which == "x" else ys)
            dcoord = coord.div(zl).deriv()
            fw = Laurent(field, 0, [int(c) for c in pw.form_window(fpart, n)])
            zpow = zl
            for _ in range(d - 2):
                zpow = zpow.mul(zl)
            ffun = fw.div(zpow)  # the partial as a function: form / Z^(d-1)
            w = dcoord.div(ffun)
            out.append(w.truncate(-length, 2 * length))
        return out

    def eta_window(self, point, start, length):
        return self._eta_windows(max(length + abs(start), 2), [point])[0].truncate(
            start, length
        )

    def h_from_word(self, y):
        """Coefficients over the U basis equal the word itself."""
        return np.asarray(y, dtype=self.u_raw.dtype)

    def residue_at(self, fn, point, guard=4):
        """res_point(fn * eta) from first principles; `guard` bounds the
        pole order of fn*eta at the point."""
        w = fn.window_at(point, -guard, 2 * guard + 2)
        eta = self.eta_window(point, -guard, 2 * guard + 2)
        return w.mul(eta).coeff(-1)

    def residue_vector(self, fn, guard=4):
        """res_{P_j}(fn * eta) for all j, computed from first principles."""
        out = [self.residue_at(fn, p, guard) for p in self.dpoints]
        return np.array(out, dtype=self.u_raw.dtype)
