"""Majority coset stepping across a ladder of codes.

When the key equation rejects, the received word is re-expressed one
code up the ladder: y2 = y1 - lam * c0 where c0 is a fixed codeword of
C_r outside C_{r+1} and lam is chosen by a plurality vote.  Each voter
is an index i for which condition A holds; it contributes the ratio
S_{y1}(f g) / S_{c0}(f g) for a pair (f, g) separating the relevant
kernel and function-space levels.
"""

from collections import Counter
from dataclasses import dataclass, field as _dcfield

import numpy as np

from . import backend
from .errors import InvariantViolation
from .linalg import Matrix, Subspace, code_dtype, kernel, rank


def syndrome_dot(field, w, vals):
    """sum_j w_j * vals_j in GF(2^m)."""
    prod = backend.vec_mul(
        np.asarray(w, dtype=code_dtype(field)),
        np.asarray(vals, dtype=code_dtype(field)),
        field.tables(),
    )
    return int(np.bitwise_xor.reduce(prod))


@dataclass
class CosetStepReport:
    i: int
    a1: bool
    a2: bool
    a3: bool
    in_ia: bool
    abstained: bool = False
    lam: int | None = None
    kernel_dims: tuple | None = None


@dataclass
class RoundReport:
    r: int
    steps: list = _dcfield(default_factory=list)
    i_set: list = _dcfield(default_factory=list)
    winner: int | None = None
    tally: dict | None = None
    failure: str | None = None


class CosetMachine:
    """Evaluation data shared by every coset round.

    fam_f: ladder of L(F0 + s P), s = 0..2g-1
    fam_g: ladder of L(G + s P), s = 0..g       (the code ladder)
    fam_gf: ladder of L(G - F0 + (s - (2g-1)) P), s = 0..2g
    """

    def __init__(self, ctx, fam_f, fam_g, fam_gf):
        curve = ctx.curve
        field = curve.field
        self.field = field
        self.genus = curve.genus
        self.dpoints = ctx.dpoints
        self.fam_f = fam_f
        self.fam_g = fam_g
        self.fam_gf = fam_gf
        tab = field.tables()
        self.fev = np.ascontiguousarray(fam_f.space.evals_at(self.dpoints))
        self.gev = np.ascontiguousarray(fam_g.space.evals_at(self.dpoints))
        self.gfev = np.ascontiguousarray(fam_gf.space.evals_at(self.dpoints))
        self._gev_t = np.ascontiguousarray(self.gev.T)
        g = self.genus
        self.c0 = {}
        for r in range(g):
            d0, d1 = fam_g.dim_at(r), fam_g.dim_at(r + 1)
            if d1 == d0:
                self.c0[r] = None
                continue
            if d1 - d0 != 1:
                raise InvariantViolation("consecutive ladder codes differ by more than one")
            gens = kernel(Matrix(field, self.gev[:d0])).a
            coset_t = np.ascontiguousarray(self.gev[d0:d1].T)
            ids = backend.matmul(gens, coset_t, tab)
            nz = np.nonzero(ids[:, 0])[0]
            if len(nz) == 0:
                raise InvariantViolation("no codeword separates consecutive ladder codes")
            self.c0[r] = np.ascontiguousarray(gens[nz[0]])

    def syndromes(self, word):
        tab = self.field.tables()
        w = np.ascontiguousarray(np.asarray(word, dtype=code_dtype(self.field)))
        return backend.matmul(w[None, :], self._gev_t, tab)[0]

    def in_code_at(self, word, r):
        return not self.syndromes(word)[: self.fam_g.dim_at(r)].any()

    # -- condition evaluation --

    def _bilinear(self, y1):
        tab = self.field.tables()
        y1 = np.ascontiguousarray(np.asarray(y1, dtype=code_dtype(self.field)))
        return backend.bilinear(self.fev, y1, self.gfev, tab)

    def _block_rank(self, b, cache, fd, gd):
        key = (fd, gd)
        if key not in cache:
            if fd == 0 or gd == 0:
                cache[key] = 0
            else:
                cache[key] = rank(Matrix(self.field, np.ascontiguousarray(b[:fd, :gd])))
        return cache[key]

    def _kernel_rows(self, b, fd, gd):
        """Basis of {phi in F^fd : phi @ b[:fd,:gd] = 0}."""
        if fd == 0:
            return np.zeros((0, 0), dtype=b.dtype)
        if gd == 0:
            return np.eye(fd, dtype=b.dtype)
        block = np.ascontiguousarray(b[:fd, :gd].T)
        return kernel(Matrix(self.field, block)).a

    def round_step(self, r, y1):
        """All voters for round r; returns (y2, RoundReport).

        y2 is None when the round fails (empty I_A, all abstain, tie)
        and the report's `failure` says why.
        """
        g = self.genus
        field = self.field
        report = RoundReport(r=r)
        c0 = self.c0.get(r)
        if c0 is None:
            # identical consecutive codes: nothing to correct
            report.winner = 0
            return np.asarray(y1), report
        b = self._bilinear(y1)
        cache = {}
        for i in range(r, 2 * g - 1):
            s1 = 2 * g - 1 + r - i
            fd_i = self.fam_f.dim_at(i)
            fd_ip = self.fam_f.dim_at(i + 1)
            gd_hi = self.fam_gf.dim_at(s1)
            gd_lo = self.fam_gf.dim_at(s1 - 1)
            dk0 = fd_i - self._block_rank(b, cache, fd_i, gd_lo)
            dk1p = fd_ip - self._block_rank(b, cache, fd_ip, gd_lo)
            dk1 = fd_i - self._block_rank(b, cache, fd_i, gd_hi)
            if not 0 <= dk1p - dk0 <= 1:
                raise InvariantViolation("kernel dimensions jump by more than one")
            if not 0 <= dk0 - dk1 <= 1:
                raise InvariantViolation("nested kernels out of order")
            a1 = dk1p > dk0
            a2 = dk0 == dk1
            a3 = gd_hi > gd_lo
            step = CosetStepReport(
                i=i, a1=a1, a2=a2, a3=a3, in_ia=a1 and a2 and a3,
                kernel_dims=(dk0, dk1, dk1p),
            )
            if step.in_ia:
                self._vote(step, b, r, i, y1, c0)
            report.steps.append(step)
        report.i_set = [s.i for s in report.steps if s.in_ia]
        if not report.i_set:
            report.failure = "no_condition_a"
            return None, report
        votes = [s.lam for s in report.steps if s.in_ia and not s.abstained]
        if not votes:
            report.failure = "all_abstained"
            return None, report
        tally = Counter(votes)
        report.tally = dict(tally)
        ranked = tally.most_common()
        if len(ranked) > 1 and ranked[0][1] == ranked[1][1]:
            report.failure = "vote_tie"
            return None, report
        lam = ranked[0][0]
        report.winner = lam
        tab = field.tables()
        y2 = np.asarray(y1, dtype=code_dtype(field)) ^ backend.scale(c0, lam, tab)
        return y2, report

    def _vote(self, step, b, r, i, y1, c0):
        field = self.field
        tab = field.tables()
        g = self.genus
        s1 = 2 * g - 1 + r - i
        fd_i = self.fam_f.dim_at(i)
        fd_ip = self.fam_f.dim_at(i + 1)
        gd_lo = self.fam_gf.dim_at(s1 - 1)
        k1p = self._kernel_rows(b, fd_ip, gd_lo)
        k0 = self._kernel_rows(b, fd_i, gd_lo)
        k0_pad = np.zeros((k0.shape[0], fd_ip), dtype=k1p.dtype)
        if k0.size:
            k0_pad[:, :fd_i] = k0
        comp = Subspace(field, k0_pad, ambient=fd_ip).complement_in(
            Subspace(field, k1p, ambient=fd_ip)
        ).a
        if comp.shape[0] == 0:
            raise InvariantViolation("condition A held but the kernel gained nothing")
        phi = np.ascontiguousarray(comp[0])
        f_ev = backend.matmul(phi[None, :], self.fev[:fd_ip], tab)[0]
        g_ev = self.gfev[gd_lo]
        fg = backend.vec_mul(f_ev, g_ev, tab)
        den = syndrome_dot(field, c0, fg)
        if den == 0:
            step.abstained = True
            return
        num = syndrome_dot(field, y1, fg)
        step.lam = field.mul_codes(num, field.inv_code(den))
