"""Full decoding pipeline: key-equation attempts plus coset stepping.

A DecoderPlan precomputes every space, ladder, tensor, and block
decomposition for a fixed code, so that decoding a received word is
pure linear algebra on the kernel backend.

Per round r = 0..g the decoder tries the key equation against two
divisor choices:

  (a) the fixed divisor A = G - F0 - (2g-1)P with the base code as the
      membership check (optionally shifted down the ladder per round),
  (b) the growing divisor F0 + rP against the ladder code C_r.

If both reject and r < g, one majority coset step rewrites the word
modulo a codeword separating C_r from C_{r+1} and the loop continues.
"""

from dataclasses import dataclass, field as _dcfield

import numpy as np

from .agcode import AGCode
from .curve import Divisor
from .errors import (
    CapacityZero,
    DegreeOutOfRange,
    GenusZero,
    InvariantViolation,
    SupportOverlap,
)
from .funcspace import DifferentialContext, LadderFamily, make_scheme, rr_space
from .keyeq import KeySetup
from .linalg import code_dtype
from .mcd import CosetMachine


@dataclass
class DecodeOutcome:
    ok: bool
    reason: str
    error: np.ndarray | None = None
    codeword: np.ndarray | None = None
    weight: int | None = None
    rounds_used: int = 0
    trace: list = _dcfield(default_factory=list)


class DecoderPlan:
    """All precomputed data for decoding one fixed code."""

    def __init__(self, **kw):
        self.__dict__.update(kw)

    @classmethod
    def build(cls, curve, dpoints, gdiv, pinf, f0=None, branch_i_divisor="G"):
        field = curve.field
        g = curve.genus
        if g < 1:
            raise GenusZero("coset stepping needs genus at least 1")
        if branch_i_divisor not in ("G", "Gr"):
            raise InvariantViolation("branch_i_divisor must be 'G' or 'Gr'")
        dpoints = list(dpoints)
        n = len(dpoints)
        dset = set(dpoints)
        if pinf in dset:
            raise SupportOverlap("the ladder point P lies among the evaluation points")
        dstar = gdiv.degree + 2 - 2 * g
        t = (dstar - 1) // 2
        if t < 1:
            raise CapacityZero(f"designed distance {dstar} corrects no errors")
        if f0 is None:
            f0 = Divisor.single(pinf, t)
        if any(p in dset for p in f0.support()):
            raise SupportOverlap("supp(F0) meets the evaluation points")
        if not (2 * g - 2 < gdiv.degree and gdiv.degree + g < n):
            raise DegreeOutOfRange(
                f"need 2g-2 < deg G and deg G + g < n (deg G = {gdiv.degree}, "
                f"n = {n}, g = {g})"
            )
        nu = (dstar - g - 1) // 2
        ke_shift = max(0, nu + g - f0.degree)
        if ke_shift > g:
            # the plain solver wants more room than the ladder provides;
            # clamp, keeping every space inside the precomputed families
            ke_shift = g

        kdiv = curve.canonical_divisor()
        gstar = Divisor.single(pinf, -1)
        ddiv = Divisor([(p, 1) for p in dpoints])
        one_p = Divisor.single(pinf, 1)

        fa = gdiv - f0 - Divisor.single(pinf, 2 * g - 1)
        lf_top = f0 + Divisor.single(pinf, 2 * g - 1)
        lg_top = gdiv + Divisor.single(pinf, g)
        lgf_base = gdiv - f0 - Divisor.single(pinf, 2 * g - 1)
        big_base = kdiv + ddiv + f0 + one_p
        sub1_base = kdiv + f0 + ddiv - gdiv
        sub2_base = kdiv + f0 + one_p
        u_div = kdiv + ddiv + one_p
        biga_div = kdiv + fa + ddiv + one_p
        sub2a_div = kdiv + fa + one_p
        sub1a_base = kdiv + fa + ddiv - gdiv - Divisor.single(pinf, g)

        divisors = [
            u_div,
            big_base + Divisor.single(pinf, g),
            sub1_base + Divisor.single(pinf, ke_shift),
            sub2_base + Divisor.single(pinf, g),
            lf_top,
            lg_top,
            lgf_base + Divisor.single(pinf, 2 * g),
            gdiv,
            fa,
            biga_div,
            sub2a_div,
            sub1a_base + Divisor.single(pinf, g),
        ]
        scheme = make_scheme(curve, divisors)
        ctx = DifferentialContext(curve, dpoints, gdiv, pinf, scheme, gstar)

        fam_f = LadderFamily(curve, f0, pinf, 2 * g - 1, scheme)
        fam_g = LadderFamily(curve, gdiv, pinf, g, scheme)
        fam_gf = LadderFamily(curve, lgf_base, pinf, 2 * g, scheme)
        fam_big = LadderFamily(curve, big_base, pinf, g, scheme)
        fam_sub1 = LadderFamily(curve, sub1_base, pinf, ke_shift, scheme)
        fam_sub2 = LadderFamily(curve, sub2_base, pinf, g, scheme)

        code = AGCode(curve, dpoints, gdiv, lspace=fam_g.level_space(0))
        machine = CosetMachine(ctx, fam_f, fam_g, fam_gf)

        setups_ii = [
            KeySetup(
                ctx,
                fam_f.level_space(r),
                fam_big.level_space(r),
                fam_sub1.level_space(0),
                fam_sub2.level_space(r),
            )
            for r in range(g + 1)
        ]
        ke_setup = KeySetup(
            ctx,
            fam_f.level_space(ke_shift),
            fam_big.level_space(ke_shift),
            fam_sub1.level_space(ke_shift),
            fam_sub2.level_space(ke_shift),
        )

        fa_space = rr_space(curve, fa, scheme)
        branch_i_ok = fa_space.dim >= 1
        setups_i = []
        fam_sub1a = None
        if branch_i_ok:
            biga = rr_space(curve, biga_div, scheme)
            sub2a = rr_space(curve, sub2a_div, scheme)
            if branch_i_divisor == "G":
                sub1a = rr_space(curve, sub1a_base + Divisor.single(pinf, g), scheme)
                setups_i = [KeySetup(ctx, fa_space, biga, sub1a, sub2a)] * (g + 1)
            else:
                fam_sub1a = LadderFamily(curve, sub1a_base, pinf, g, scheme)
                setups_i = [
                    KeySetup(ctx, fa_space, biga, fam_sub1a.level_space(g - r), sub2a)
                    for r in range(g + 1)
                ]

        return cls(
            curve=curve,
            field=field,
            dpoints=dpoints,
            gdiv=gdiv,
            pinf=pinf,
            f0=f0,
            genus=g,
            n=n,
            t=t,
            nu=nu,
            ke_shift=ke_shift,
            branch_i_divisor=branch_i_divisor,
            branch_i_ok=branch_i_ok,
            scheme=scheme,
            ctx=ctx,
            code=code,
            machine=machine,
            setups_i=setups_i,
            setups_ii=setups_ii,
            ke_setup=ke_setup,
            fam_f=fam_f,
            fam_g=fam_g,
            fam_gf=fam_gf,
        )

    # -- decoding --

    def _membership_i(self, r):
        if self.branch_i_divisor == "G":
            return lambda w: self.machine.in_code_at(w, 0)
        return lambda w: self.machine.in_code_at(w, r)

    def _finish(self, y0, res, rounds, trace):
        error = res.error
        codeword = y0 ^ error
        if not self.code.in_code(codeword):
            raise InvariantViolation("accepted candidate is not a codeword (bug)")
        return DecodeOutcome(
            True,
            "decoded",
            error=error,
            codeword=codeword,
            weight=int(np.count_nonzero(error)),
            rounds_used=rounds,
            trace=trace,
        )

    def decode(self, word, cap=None, ke_only=False, use_branch_i=True):
        """Decode a received word; never raises on mere decoding failure."""
        y0 = np.ascontiguousarray(np.asarray(word, dtype=code_dtype(self.field)))
        if y0.shape != (self.n,):
            raise InvariantViolation(f"received word must have length {self.n}")
        cap = self.t if cap is None else int(cap)
        trace = []
        if ke_only:
            res = self.ke_setup.solve(y0, cap, lambda w: self.machine.in_code_at(w, 0))
            trace.append({"r": 0, "ke": res.reason})
            if res.ok:
                return self._finish(y0, res, 0, trace)
            return DecodeOutcome(False, f"ke_{res.reason}", rounds_used=0, trace=trace)

        y1 = y0
        g = self.genus
        for r in range(g + 1):
            entry = {"r": r}
            if use_branch_i and self.branch_i_ok:
                res_i = self.setups_i[r].solve(y1, cap, self._membership_i(r))
                entry["branch_i"] = res_i.reason
                if res_i.ok:
                    trace.append(entry)
                    return self._finish(y0, res_i, r, trace)
            res_ii = self.setups_ii[r].solve(
                y1, cap, lambda w: self.machine.in_code_at(w, r)
            )
            entry["branch_ii"] = res_ii.reason
            if res_ii.ok:
                trace.append(entry)
                return self._finish(y0, res_ii, r, trace)
            if r == g:
                trace.append(entry)
                return DecodeOutcome(False, "exhausted", rounds_used=r, trace=trace)
            y2, report = self.machine.round_step(r, y1)
            entry["coset"] = report
            trace.append(entry)
            if y2 is None:
                return DecodeOutcome(False, report.failure, rounds_used=r, trace=trace)
            y1 = y2
        raise InvariantViolation("unreachable")
