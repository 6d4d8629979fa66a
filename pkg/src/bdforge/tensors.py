"""Sparse exact tensors on g (x) g and g (x) g (x) g.

Tensors are dictionaries from index tuples to scalars with no stored zeros,
over a fixed algebra object exposing ``dim`` and ``bracket_entry(i, j)``.
The triple bracket sums of the classical Yang-Baxter operator are expanded
directly; nothing passes through an enveloping algebra.
"""

from __future__ import annotations

from fractions import Fraction


class IdentityViolation(AssertionError):
    """An exact identity that the construction guarantees failed to hold."""


def _put(entries, key, val):
    if key in entries:
        val = entries[key] + val
    if val:
        entries[key] = val
    elif key in entries:
        del entries[key]


class Tensor2:
    """Sparse exact element of g (x) g."""

    __slots__ = ("algebra", "entries")

    def __init__(self, algebra, entries=None):
        self.algebra = algebra
        self.entries = {}
        if entries:
            for key, val in entries.items():
                if val:
                    self.entries[key] = val

    def get(self, i, j):
        return self.entries.get((i, j), Fraction(0))

    def items(self):
        return self.entries.items()

    def is_zero(self):
        return not self.entries

    def copy(self):
        return Tensor2(self.algebra, dict(self.entries))

    def scale(self, c):
        if not c:
            return Tensor2(self.algebra)
        return Tensor2(self.algebra, {k: c * v for k, v in self.entries.items()})

    def __add__(self, other):
        out = dict(self.entries)
        for k, v in other.entries.items():
            _put(out, k, v)
        return Tensor2(self.algebra, out)

    def __sub__(self, other):
        out = dict(self.entries)
        for k, v in other.entries.items():
            _put(out, k, -v)
        return Tensor2(self.algebra, out)

    def __neg__(self):
        return self.scale(Fraction(-1))

    def __eq__(self, other):
        if not isinstance(other, Tensor2):
            return NotImplemented
        return self.entries == other.entries

    def __repr__(self):
        return f"Tensor2({self.entries!r})"

    def to_json(self):
        from .scalars import scalar_to_str
        return [[i, j, scalar_to_str(v)]
                for (i, j), v in sorted(self.entries.items())]

    @classmethod
    def from_json(cls, algebra, data):
        from .scalars import scalar_from_str
        return cls(algebra, {(int(i), int(j)): scalar_from_str(s) for i, j, s in data})


class Tensor3:
    """Sparse exact element of g (x) g (x) g."""

    __slots__ = ("algebra", "entries")

    def __init__(self, algebra, entries=None):
        self.algebra = algebra
        self.entries = {}
        if entries:
            for key, val in entries.items():
                if val:
                    self.entries[key] = val

    def items(self):
        return self.entries.items()

    def is_zero(self):
        return not self.entries

    def scale(self, c):
        if not c:
            return Tensor3(self.algebra)
        return Tensor3(self.algebra, {k: c * v for k, v in self.entries.items()})

    def __add__(self, other):
        out = dict(self.entries)
        for k, v in other.entries.items():
            _put(out, k, v)
        return Tensor3(self.algebra, out)

    def __sub__(self, other):
        out = dict(self.entries)
        for k, v in other.entries.items():
            _put(out, k, -v)
        return Tensor3(self.algebra, out)

    def __eq__(self, other):
        if not isinstance(other, Tensor3):
            return NotImplemented
        return self.entries == other.entries

    def __repr__(self):
        return f"Tensor3({self.entries!r})"

    def to_json(self):
        from .scalars import scalar_to_str
        return [[i, j, k, scalar_to_str(v)]
                for (i, j, k), v in sorted(self.entries.items())]


def flip(r: Tensor2) -> Tensor2:
    """The transposition kappa: x (x) y -> y (x) x, extended linearly."""
    return Tensor2(r.algebra, {(j, i): v for (i, j), v in r.entries.items()})


def ad_action2(a, s: Tensor2) -> Tensor2:
    """(ad_a (x) 1 + 1 (x) ad_a)(s) for a sparse algebra element a."""
    alg = s.algebra
    out = {}
    for (i, j), c in s.entries.items():
        for k, ca in a.items():
            t = ca * c
            for m, cb in alg.bracket_entry(k, i).items():
                _put(out, (m, j), t * cb)
            for m, cb in alg.bracket_entry(k, j).items():
                _put(out, (i, m), t * cb)
    return Tensor2(alg, out)


def cyb(r: Tensor2) -> Tensor3:
    """Classical Yang-Baxter operator [r12,r13] + [r12,r23] + [r13,r23].

    Writing r = sum_i s_i (x) t_i, this is the exact triple sum
    sum_{i,j} [s_i,s_j] (x) t_i (x) t_j + s_i (x) [t_i,s_j] (x) t_j
             + s_i (x) s_j (x) [t_i,t_j].
    """
    alg = r.algebra
    out = {}
    items = list(r.entries.items())
    for (a, b), c in items:
        for (a2, b2), c2 in items:
            t = c * c2
            for m, cb in alg.bracket_entry(a, a2).items():
                _put(out, (m, b, b2), t * cb)
            for m, cb in alg.bracket_entry(b, a2).items():
                _put(out, (a, m, b2), t * cb)
            for m, cb in alg.bracket_entry(b, b2).items():
                _put(out, (a, a2, m), t * cb)
    return Tensor3(alg, out)


def casimir_cross_bracket(omega: Tensor2) -> Tensor3:
    """[Omega_12, Omega_13], the first summand of the CYB expansion."""
    alg = omega.algebra
    out = {}
    items = list(omega.entries.items())
    for (a, b), c in items:
        for (a2, b2), c2 in items:
            t = c * c2
            for m, cb in alg.bracket_entry(a, a2).items():
                _put(out, (m, b, b2), t * cb)
    return Tensor3(alg, out)


def apply_map2(phi, psi, s: Tensor2, algebra=None) -> Tensor2:
    """(phi (x) psi)(s), componentwise on the sparse entries."""
    out = {}
    for (i, j), c in s.entries.items():
        col_i = phi.column(i)
        col_j = psi.column(j)
        for ri, ci in col_i.items():
            t = c * ci
            for rj, cj in col_j.items():
                _put(out, (ri, rj), t * cj)
    return Tensor2(algebra if algebra is not None else s.algebra, out)


def proportionality(s: Tensor2, t: Tensor2):
    """Return lambda with s = lambda * t, or None if no such scalar exists.

    Requires t != 0; the zero tensor s yields lambda = 0.
    """
    if t.is_zero():
        raise ValueError("reference tensor is zero")
    if s.is_zero():
        return Fraction(0)
    key = next(iter(t.entries))
    if key not in s.entries:
        return None
    lam = s.entries[key] / t.entries[key]
    if s == t.scale(lam):
        return lam
    return None


def shifted_cyb_residual(r: Tensor2, mu, lam) -> Tensor3:
    """cyb(r - mu*Omega), asserted equal to mu*(mu - lam)*[Omega12, Omega13].

    r must be an r-matrix with r + kappa(r) = lam * Omega.  A mismatch means
    the construction of r or Omega is broken, not a property of the inputs.
    """
    omega, _ = r.algebra.casimir()
    shifted = r - omega.scale(mu)
    residual = cyb(shifted)
    expected = casimir_cross_bracket(omega).scale(mu * (mu - lam))
    if residual != expected:
        raise IdentityViolation(
            f"cyb(r - mu*Omega) != mu(mu-lam)[Omega12,Omega13] for mu={mu}, lam={lam}")
    return residual
