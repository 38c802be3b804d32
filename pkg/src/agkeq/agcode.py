"""Residue codes on smooth plane curves.

The code consists of all words orthogonal to the evaluations of L(G)
at the n chosen rational points.  For 2g-2 < deg G < n the dimension
is n - deg G - 1 + g and the minimum distance is at least the designed
value deg G + 2 - 2g.
"""

import numpy as np

from . import backend
from .errors import DegreeOutOfRange, LengthMismatch, SupportOverlap
from .funcspace import rr_space
from .linalg import Matrix, code_dtype, kernel, rank


class AGCode:
    def __init__(self, curve, dpoints, gdiv, lspace=None, scheme=None, strict=True):
        field = curve.field
        n = len(dpoints)
        if len(set(dpoints)) != n:
            raise LengthMismatch("evaluation points must be distinct")
        dsupp = set(dpoints)
        for p in gdiv.support():
            if p in dsupp:
                raise SupportOverlap(f"{p} lies in supp(G) and among the evaluation points")
        g = curve.genus
        if strict and not (2 * g - 2 < gdiv.degree < n):
            raise DegreeOutOfRange(
                f"need 2g-2 < deg G < n, got deg G = {gdiv.degree}, n = {n}, g = {g}"
            )
        self.curve = curve
        self.field = field
        self.dpoints = list(dpoints)
        self.gdiv = gdiv
        self.n = n
        self.genus = g
        self.lspace = lspace if lspace is not None else rr_space(curve, gdiv, scheme)
        self.parity = np.ascontiguousarray(self.lspace.evals_at(self.dpoints))
        self._parity_t = np.ascontiguousarray(self.parity.T)
        rk = rank(Matrix(field, self.parity))
        self.k = n - rk
        if strict and rk != self.lspace.dim:
            raise DegreeOutOfRange(
                "evaluation map on L(G) is not injective; deg G too large for this D"
            )
        self.dstar = gdiv.degree + 2 - 2 * g
        self.t = max(0, (self.dstar - 1) // 2)
        self.gen = kernel(Matrix(field, self.parity)).a

    def syndrome(self, word):
        word = self._as_word(word)
        tab = self.field.tables()
        return backend.matmul(word[None, :], self._parity_t, tab)[0]

    def in_code(self, word):
        return not self.syndrome(word).any()

    def encode(self, message):
        message = np.asarray(message, dtype=code_dtype(self.field))
        if message.shape != (self.k,):
            raise LengthMismatch(f"message length must be k = {self.k}")
        tab = self.field.tables()
        return backend.matmul(message[None, :], self.gen, tab)[0]

    def random_codeword(self, rng):
        msg = rng.integers(0, self.field.q, self.k).astype(code_dtype(self.field))
        return self.encode(msg)

    def random_error(self, rng, weight):
        """Exactly `weight` nonzero entries at distinct positions."""
        if weight > self.n:
            raise LengthMismatch("weight exceeds the code length")
        e = np.zeros(self.n, dtype=code_dtype(self.field))
        pos = rng.choice(self.n, size=weight, replace=False)
        for p in pos:
            e[p] = int(rng.integers(1, self.field.q))
        return e

    def _as_word(self, word):
        word = np.asarray(word, dtype=code_dtype(self.field))
        if word.shape != (self.n,):
            raise LengthMismatch(f"word length must be n = {self.n}")
        return word

    def __repr__(self):
        return (
            f"AGCode(n={self.n}, k={self.k}, d*={self.dstar}, t={self.t}, "
            f"deg G={self.gdiv.degree}, g={self.genus})"
        )
