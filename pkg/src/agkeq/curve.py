"""Smooth plane curves over finite fields.

Points are projective with the last nonzero coordinate normalized
to 1.  Local expansions at rational points are computed by Newton
lifting inside the affine chart of the point, with the parameter taken
as the shift of whichever affine coordinate has a nonvanishing partial
derivative for the other one.
"""

import numpy as np

from .errors import (
    CurveError,
    NonRationalIntersection,
    NotHomogeneous,
    PrecisionTooSmall,
    SingularCurve,
)
from .forms import Form, parse_form
from .gf import extension_of
from .series import ps_add, ps_inv, ps_mul

SCAN_BUDGET = 1 << 22  # max (q^k)^2 pairs visited per extension level
MAX_SCAN_DEGREE = 6


class ProjectivePoint:
    """A point of P^2 with the last nonzero coordinate scaled to 1."""

    __slots__ = ("field", "coords")

    def __init__(self, field, x, y, z):
        cs = [field.element(x).code, field.element(y).code, field.element(z).code]
        if not any(cs):
            raise CurveError("(0:0:0) is not a projective point")
        last = 2 if cs[2] else (1 if cs[1] else 0)
        inv = field.inv_code(cs[last])
        self.field = field
        self.coords = tuple(field.mul_codes(c, inv) for c in cs)

    @property
    def chart(self):
        """Affine chart this point lives in: "z", "y", or "x"."""
        if self.coords[2]:
            return "z"
        if self.coords[1]:
            return "y"
        return "x"

    @property
    def affine(self):
        """The two affine coordinates in this point's chart."""
        x, y, z = self.coords
        if self.chart == "z":
            return (x, y)
        if self.chart == "y":
            return (x, z)
        return (y, z)

    def sort_key(self):
        rank = {"z": 0, "y": 1, "x": 2}[self.chart]
        return (rank,) + self.coords

    def __eq__(self, other):
        return (
            isinstance(other, ProjectivePoint)
            and self.field == other.field
            and self.coords == other.coords
        )

    def __hash__(self):
        return hash((self.field.spec, self.coords))

    def __repr__(self):
        return "(" + ":".join(self.field.format_code(c) for c in self.coords) + ")"


class Divisor:
    """A finite formal sum of rational points with integer weights."""

    __slots__ = ("_data",)

    def __init__(self, data=()):
        d = {}
        items = data.items() if isinstance(data, dict) else data
        for p, n in items:
            n = int(n)
            if n:
                d[p] = d.get(p, 0) + n
        self._data = {p: n for p, n in d.items() if n}

    @classmethod
    def single(cls, point, n=1):
        return cls([(point, n)])

    @classmethod
    def zero(cls):
        return cls()

    def coeff(self, p):
        return self._data.get(p, 0)

    def items(self):
        return sorted(self._data.items(), key=lambda kv: kv[0].sort_key())

    def support(self):
        return [p for p, _ in self.items()]

    @property
    def degree(self):
        return sum(self._data.values())

    def __add__(self, other):
        out = dict(self._data)
        for p, n in other._data.items():
            out[p] = out.get(p, 0) + n
        return Divisor(out)

    def __sub__(self, other):
        out = dict(self._data)
        for p, n in other._data.items():
            out[p] = out.get(p, 0) - n
        return Divisor(out)

    def __rmul__(self, k):
        return Divisor({p: int(k) * n for p, n in self._data.items()})

    def __neg__(self):
        return -1 * self

    def positive_part(self):
        return Divisor({p: n for p, n in self._data.items() if n > 0})

    def negative_part(self):
        """The effective divisor -min(self, 0)."""
        return Divisor({p: -n for p, n in self._data.items() if n < 0})

    def sup(self, other):
        pts = set(self._data) | set(other._data)
        return Divisor({p: max(self.coeff(p), other.coeff(p)) for p in pts})

    def is_effective(self):
        return all(n > 0 for n in self._data.values())

    def __le__(self, other):
        return all((other - self).coeff(p) >= 0 for p in set(self._data) | set(other._data))

    def __ge__(self, other):
        return other <= self

    def __eq__(self, other):
        return isinstance(other, Divisor) and self._data == other._data

    def __hash__(self):
        return hash(tuple((p, n) for p, n in self.items()))

    def __bool__(self):
        return bool(self._data)

    def __repr__(self):
        if not self._data:
            return "0"
        parts = []
        for p, n in self.items():
            parts.append(f"{n}*{p}" if n != 1 else f"{p}")
        return " + ".join(parts)


class LocalExpansion:
    """Series of the two affine chart coordinates at a rational point.

    `param` records which coordinate was shifted to give the local
    parameter t; the other one is the lifted series.  Both series carry
    N exact coefficients.
    """

    __slots__ = ("point", "chart", "param", "u_series", "v_series", "n")

    def __init__(self, point, chart, param, u_series, v_series, n):
        self.point = point
        self.chart = chart
        self.param = param
        self.u_series = u_series
        self.v_series = v_series
        self.n = n

    def xyz(self):
        """Chart-normalized projective coordinate series (X, Y, Z),
        each a list of n coefficients."""
        one = [1] + [0] * (self.n - 1)
        u, v = self.u_series, self.v_series
        if self.chart == "z":
            return (u, v, one)
        if self.chart == "y":
            return (u, one, v)
        return (one, u, v)


def _chart_eval(poly, u, v, field):
    acc = 0
    for (i, j), c in poly.items():
        acc = field.add_codes(
            acc, field.mul_codes(c, field.mul_codes(field.pow_code(u, i), field.pow_code(v, j)))
        )
    return acc


def _eval_on_series(poly, useries, vseries, n, field):
    """poly(u(t), v(t)) truncated to n coefficients."""
    maxu = max((e[0] for e in poly), default=0)
    maxv = max((e[1] for e in poly), default=0)
    pu = [[1] + [0] * (n - 1)]
    for _ in range(maxu):
        pu.append(ps_mul(pu[-1], useries, n, field))
    pv = [[1] + [0] * (n - 1)]
    for _ in range(maxv):
        pv.append(ps_mul(pv[-1], vseries, n, field))
    out = [0] * n
    for (i, j), c in poly.items():
        term = ps_mul(pu[i], pv[j], n, field)
        out = ps_add(out, [field.mul_codes(c, t) for t in term], field)
    return out[:n] + [0] * (n - len(out))


class PlaneCurve:
    """A smooth projective plane curve F(X, Y, Z) = 0 over GF(q)."""

    def __init__(self, field, form, check_smooth=True):
        if isinstance(form, str):
            form = parse_form(field, form)
        if form.is_zero() or form.degree < 3:
            raise NotHomogeneous("need a homogeneous form of degree >= 3")
        self.field = field
        self.form = form
        self.degree = form.degree
        for var in "XYZ":
            if _divisible_by_variable(form, var):
                raise SingularCurve(f"curve contains the line {var} = 0", witness=None)
        self.genus = (self.degree - 1) * (self.degree - 2) // 2
        self._points = None
        self._exp_cache = {}
        self._line_cache = {}
        self._good_line_cache = {}
        self._z_line = None
        if check_smooth:
            self.assert_smooth()

    # -- smoothness --

    def assert_smooth(self):
        """Search for singular points over GF(q^k), k = 1 then larger
        extensions while the scan stays inside a fixed budget."""
        q = self.field.q
        for k in range(1, MAX_SCAN_DEGREE + 1):
            if k > 1 and (q**k) ** 2 > SCAN_BUDGET:
                break
            ext, embed = extension_of(self.field, k)
            w = self._singular_witness(ext, embed)
            if w is not None:
                raise SingularCurve(
                    f"singular point over GF({ext.q}) at codes {w}", witness=(ext, w)
                )

    def _embedded_chart(self, poly, embed):
        return {e: int(embed[c]) for e, c in poly.items()}

    def _singular_witness(self, ext, embed):
        f = self.form
        partials = [f.partial("X"), f.partial("Y"), f.partial("Z")]
        tab = ext.tables()
        codes = np.arange(ext.q, dtype=np.int64)

        def vec_eval_y(poly, x0):
            """poly(x0, y) over the whole y-array, vectorized Horner."""
            maxv = max((e[1] for e in poly), default=0)
            cs = []
            for j in range(maxv + 1):
                acc = 0
                for (i, jj), c in poly.items():
                    if jj == j:
                        acc = ext.add_codes(acc, ext.mul_codes(int(c), ext.pow_code(x0, i)))
                cs.append(acc)
            acc = np.zeros(ext.q, dtype=np.int64)
            for c in reversed(cs):
                nz = (acc != 0) & (codes != 0)
                prod = np.zeros(ext.q, dtype=np.int64)
                prod[nz] = tab.exp[tab.log[acc[nz]] + tab.log[codes[nz]]]
                acc = prod ^ c if ext.p == 2 else np.array(
                    [ext.add_codes(int(t), c) for t in prod], dtype=np.int64
                )
            return acc

        # affine chart z = 1
        ch = [self._embedded_chart(g.chart_poly("z"), embed) for g in [f] + partials]
        for x0 in range(ext.q):
            vals = vec_eval_y(ch[0], x0)
            hits = np.nonzero(vals == 0)[0]
            if len(hits) == 0:
                continue
            for g in ch[1:]:
                gv = vec_eval_y(g, x0)
                hits = hits[gv[hits] == 0]
                if len(hits) == 0:
                    break
            if len(hits):
                return (x0, int(hits[0]), 1)
        # line z = 0: points (x : 1 : 0) and (1 : 0 : 0)
        chy = [self._embedded_chart(g.chart_poly("y"), embed) for g in [f] + partials]
        for x0 in range(ext.q):
            if all(_chart_eval(g, x0, 0, ext) == 0 for g in chy):
                return (x0, 1, 0)
        chx = [self._embedded_chart(g.chart_poly("x"), embed) for g in [f] + partials]
        if all(_chart_eval(g, 0, 0, ext) == 0 for g in chx):
            return (1, 0, 0)
        return None

    # -- rational points --

    def rational_points(self):
        """All GF(q)-points: affine chart z=1 scanned in field order of
        (x, y), then z=0 points (x:1:0), then (1:0:0)."""
        if self._points is not None:
            return self._points
        f = self.field
        pts = []
        chz = self.form.chart_poly("z")
        elems = [e.code for e in f.enumerate()]
        for x in elems:
            for y in elems:
                if _chart_eval(chz, x, y, f) == 0:
                    pts.append(ProjectivePoint(f, x, y, 1))
        chy = self.form.chart_poly("y")
        for x in elems:
            if _chart_eval(chy, x, 0, f) == 0:
                pts.append(ProjectivePoint(f, x, 1, 0))
        if _chart_eval(self.form.chart_poly("x"), 0, 0, f) == 0:
            pts.append(ProjectivePoint(f, 1, 0, 0))
        self._points = pts
        return pts

    def point(self, x, y, z):
        p = ProjectivePoint(self.field, x, y, z)
        if self.form.eval_codes(*p.coords) != 0:
            raise CurveError(f"{p} does not lie on the curve")
        return p

    # -- local expansions --

    def local_expansion(self, point, n):
        """Chart-coordinate series at a rational point, n exact terms."""
        if n < 1:
            raise PrecisionTooSmall("need at least one coefficient")
        cached = self._exp_cache.get(point)
        if cached is not None and cached.n >= n:
            return cached
        f = self.field
        chart = point.chart
        u0, v0 = point.affine
        fpoly = self.form.chart_poly(chart)
        du, dv = _CHART_PARTIALS[chart]
        fu = self.form.partial(du).chart_poly(chart)
        fv = self.form.partial(dv).chart_poly(chart)
        grow = max(n, 2 * (cached.n if cached else 4))
        if _chart_eval(fv, u0, v0, f) != 0:
            useries = [u0, 1] + [0] * (grow - 2)
            vseries = _newton_lift(fpoly, fv, useries, v0, grow, f, solve_for="v")
            exp = LocalExpansion(point, chart, "u", useries[:grow], vseries, grow)
        elif _chart_eval(fu, u0, v0, f) != 0:
            vseries = [v0, 1] + [0] * (grow - 2)
            useries = _newton_lift(fpoly, fu, vseries, u0, grow, f, solve_for="u")
            exp = LocalExpansion(point, chart, "v", useries, vseries[:grow], grow)
        else:
            raise SingularCurve(f"both chart partials vanish at {point}", witness=point)
        self._exp_cache[point] = exp
        return exp

    # -- intersections with lines --

    def line_divisor(self, a, b, c, check=False):
        """Intersection divisor of the line aX + bY + cZ with the curve.

        Raises NonRationalIntersection unless all d intersection points
        (with multiplicity) are rational.  With check=True each
        multiplicity is re-verified against the local expansion of the
        restricted line.
        """
        f = self.field
        key = tuple(f.element(v).code for v in (a, b, c))
        if key in self._line_cache:
            return self._line_cache[key]
        ca, cb, cc = key
        if not any(key):
            raise CurveError("zero line")
        # two deterministic points spanning the line
        if cc:
            icc = f.inv_code(cc)
            b0 = (1, 0, f.neg_code(f.mul_codes(ca, icc)))
            b1 = (0, 1, f.neg_code(f.mul_codes(cb, icc)))
        elif cb:
            icb = f.inv_code(cb)
            b0 = (1, f.neg_code(f.mul_codes(ca, icb)), 0)
            b1 = (0, 0, 1)
        else:
            b0 = (0, 1, 0)
            b1 = (0, 0, 1)
        d = self.degree
        # g(tau) = F(b0 + tau b1), coefficients as length d+1 lists
        lin = [
            [b0[0], b1[0]],
            [b0[1], b1[1]],
            [b0[2], b1[2]],
        ]
        g = [0] * (d + 1)
        for (i, j, k), coef in self.form.coeffs.items():
            term = [1]
            for pos, e in ((0, i), (1, j), (2, k)):
                for _ in range(e):
                    term = ps_mul(term, lin[pos], d + 1, f)
            term = term + [0] * (d + 1 - len(term))
            g = [f.add_codes(x, f.mul_codes(coef, t)) for x, t in zip(g, term)]
        deg_g = max((i for i, c in enumerate(g) if c), default=-1)
        if deg_g < 0:
            raise SingularCurve("curve contains a line", witness=key)
        counts = {}
        rational_total = 0
        rest = g[: deg_g + 1]
        for e in f.enumerate():
            t0 = e.code
            m = 0
            while len(rest) > 1 and _poly_eval(rest, t0, f) == 0:
                rest = _poly_deflate(rest, t0, f)
                m += 1
            if m:
                pt = ProjectivePoint(
                    f,
                    f.add_codes(b0[0], f.mul_codes(t0, b1[0])),
                    f.add_codes(b0[1], f.mul_codes(t0, b1[1])),
                    f.add_codes(b0[2], f.mul_codes(t0, b1[2])),
                )
                counts[pt] = counts.get(pt, 0) + m
                rational_total += m
        at_inf = d - deg_g
        if at_inf:
            pt = ProjectivePoint(f, *b1)
            counts[pt] = counts.get(pt, 0) + at_inf
            rational_total += at_inf
        if rational_total != d:
            raise NonRationalIntersection(
                f"line {key} meets the curve in degree {d - rational_total} outside GF({f.q})"
            )
        div = Divisor(counts)
        if check:
            self._check_line_multiplicities(key, div)
        self._line_cache[key] = div
        return div

    def _check_line_multiplicities(self, key, div):
        from .errors import InvariantViolation

        f = self.field
        for pt, m in div.items():
            exp = self.local_expansion(pt, m + 2)
            xs, ys, zs = exp.xyz()
            w = [0] * exp.n
            for coef, series in zip(key, (xs, ys, zs)):
                if coef:
                    w = ps_add(w, [f.mul_codes(coef, s) for s in series], f)
            ord_here = next((i for i, c in enumerate(w) if c), None)
            if ord_here != m:
                raise InvariantViolation(
                    f"line multiplicity {m} at {pt} disagrees with expansion order {ord_here}"
                )

    def z_line_divisor(self, check=True):
        if self._z_line is None:
            self._z_line = self.line_divisor(0, 0, 1, check=check)
        return self._z_line

    def canonical_divisor(self):
        """(d-3) times the z-line divisor; degree 2g-2."""
        k = (self.degree - 3) * self.z_line_divisor()
        assert k.degree == 2 * self.genus - 2
        return k

    def good_line_through(self, point, avoid=()):
        """First fully rational line through `point` (canonical scan
        order) whose other intersection points avoid `avoid` where
        possible; falls back to any fully rational line."""
        key = (point, frozenset(avoid))
        if key in self._good_line_cache:
            return self._good_line_cache[key]
        f = self.field
        elems = [e.code for e in f.enumerate()]
        candidates = []
        for bcode in elems:
            for ccode in elems:
                candidates.append((1, bcode, ccode))
        candidates += [(0, 1, c) for c in elems]
        candidates.append((0, 0, 1))
        px, py, pz = point.coords
        best_fallback = None
        for la, lb, lc in candidates:
            s = f.add_codes(
                f.add_codes(f.mul_codes(la, px), f.mul_codes(lb, py)), f.mul_codes(lc, pz)
            )
            if s != 0:
                continue
            try:
                div = self.line_divisor(la, lb, lc)
            except NonRationalIntersection:
                continue
            if best_fallback is None:
                best_fallback = ((la, lb, lc), div)
            if any(p in avoid for p in div.support() if p != point):
                continue
            self._good_line_cache[key] = ((la, lb, lc), div)
            return self._good_line_cache[key]
        if best_fallback is not None:
            self._good_line_cache[key] = best_fallback
            return best_fallback
        raise NonRationalIntersection(f"no fully rational line through {point}")


_CHART_PARTIALS = {"z": ("X", "Y"), "y": ("X", "Z"), "x": ("Y", "Z")}


def _divisible_by_variable(form, var):
    pos = {"X": 0, "Y": 1, "Z": 2}[var]
    return all(e[pos] > 0 for e in form.coeffs)


def _poly_eval(coeffs, x, field):
    acc = 0
    for c in reversed(coeffs):
        acc = field.add_codes(field.mul_codes(acc, x), c)
    return acc


def _poly_deflate(coeffs, root, field):
    """Divide a polynomial (low-to-high coeffs) by (x - root)."""
    n = len(coeffs) - 1
    out = [0] * n
    acc = 0
    for i in range(n - 1, -1, -1):
        acc = field.add_codes(field.mul_codes(acc, root), coeffs[i + 1])
        out[i] = acc
    return out


def _newton_lift(fpoly, fpartial, known_series, w0, n, field, solve_for):
    """Solve fpoly(u(t), v(t)) = 0 for the unknown coordinate series.

    `known_series` is the series of the parameter coordinate; the
    unknown one starts at the simple root w0 and is refined with
    quadratically converging Newton steps.
    """
    w = [w0]
    prec = 1
    while prec < n:
        prec = min(2 * prec, n)
        wp = w + [0] * (prec - len(w))
        if solve_for == "v":
            fval = _eval_on_series(fpoly, known_series, wp, prec, field)
            fder = _eval_on_series(fpartial, known_series, wp, prec, field)
        else:
            fval = _eval_on_series(fpoly, wp, known_series, prec, field)
            fder = _eval_on_series(fpartial, wp, known_series, prec, field)
        corr = ps_mul(fval, ps_inv(fder, prec, field), prec, field)
        w = [field.sub_codes(a, b) for a, b in zip(wp, corr + [0] * (prec - len(corr)))]
    # sanity: the residual must vanish to full precision
    if solve_for == "v":
        resid = _eval_on_series(fpoly, known_series, w, n, field)
    else:
        resid = _eval_on_series(fpoly, w, known_series, n, field)
    if any(resid):
        raise PrecisionTooSmall("newton lift failed to converge (bug)")
    return w[:n]
