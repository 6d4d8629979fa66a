"""Cartan-part solver and Belavin-Drinfeld / Drinfeld-Jimbo r-matrices.

An admissible quadruple adds to an admissible triple a tensor r_h in h (x) h
with r_h + kappa(r_h) = Omega_h and, for every alpha in Gamma1,
(tau(alpha) (x) 1 + 1 (x) alpha)(r_h) = 0.  The associated r-matrix is

    r = r_h + sum_{beta > 0} X_beta (x) X_-beta / killing(X_beta, X_-beta)
            + sum_{beta, k} sign * (X_beta ^ X_{-tau^k beta}) / killing pair,

where beta runs over positive roots supported on Gamma1, k over the indices
for which the additive iterate tau^k(beta) is defined, and the signs come
from the homomorphism extending tau to the nilpotent subalgebra spanned by
Gamma1 (iterated brackets).  Both r-matrix axioms are verified exactly before
anything is returned.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .chevalley import ChevalleyAlgebra, _vneg
from .rootsys import TRIVIAL_TRIPLE, AdmissibleTriple
from .tensors import Tensor2, cyb, flip, proportionality


class NoSolution(RuntimeError):
    """The Cartan-part system is inconsistent (impossible for admissible triples)."""


class VerificationFailed(RuntimeError):
    """A constructed r-matrix failed an exact axiom check."""


class RMatrixRejection(Exception):
    """Structured rejection from verify_rmatrix naming the violated axiom."""

    NOT_PROPORTIONAL = "NotProportional"
    CYB_NONZERO = "CYBNonzero"
    LAMBDA_ZERO = "LambdaZero"

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


@dataclass(frozen=True)
class RMatrix:
    """An r-matrix together with its symmetrization scalar lambda."""

    r: Tensor2
    lam: Fraction


@dataclass(frozen=True)
class AdmissibleQuadruple:
    triple: AdmissibleTriple
    r_h: Tensor2

    def __eq__(self, other):
        if not isinstance(other, AdmissibleQuadruple):
            return NotImplemented
        return self.triple == other.triple and self.r_h == other.r_h


def _contract_left(g, functional_root, t: Tensor2):
    """(beta (x) 1)(t) in h, for t supported on h (x) h."""
    out = [Fraction(0)] * g.rank
    for (i, j), c in t.items():
        out[j] += c * g.rs.coroot_pairing(functional_root, i + 1)
    return out


def _contract_right(g, functional_root, t: Tensor2):
    """(1 (x) alpha)(t) in h."""
    out = [Fraction(0)] * g.rank
    for (i, j), c in t.items():
        out[i] += c * g.rs.coroot_pairing(functional_root, j + 1)
    return out


def cartan_constraint_violation(g, triple, r_h: Tensor2):
    """First violated constraint of the quadruple conditions, or None."""
    _, omega_h = g.casimir()
    if r_h + flip(r_h) != omega_h:
        return "symmetrization"
    for a in triple.gamma1:
        alpha = g.rs.simple_root(a)
        tau_alpha = g.rs.simple_root(triple.apply_tau(a))
        left = _contract_left(g, tau_alpha, r_h)
        right = _contract_right(g, alpha, r_h)
        if any(l + r for l, r in zip(left, right)):
            return f"tau-contraction at alpha_{a}"
    return None


def make_quadruple(g, triple: AdmissibleTriple, r_h: Tensor2 | None = None) -> AdmissibleQuadruple:
    """Quadruple with the canonical Cartan part unless one is supplied."""
    if r_h is None:
        r_h, _ = solve_cartan_part(g, triple)
    bad = cartan_constraint_violation(g, triple, r_h)
    if bad is not None:
        raise ValueError(f"invalid Cartan part: {bad}")
    return AdmissibleQuadruple(triple=triple, r_h=r_h)


def solve_cartan_part(g: ChevalleyAlgebra, triple: AdmissibleTriple):
    """Affine solution set of the Cartan-part constraints.

    Writing r_h = Omega_h/2 + s with s antisymmetric turns both constraint
    families into an exact linear system on s; returns (particular solution,
    basis of the homogeneous solution space), both as h (x) h tensors.
    """
    rank = g.rank
    _, omega_h = g.casimir()
    var_pairs = [(i, j) for i in range(rank) for j in range(i + 1, rank)]
    var_of = {p: idx for idx, p in enumerate(var_pairs)}

    def s_coeff(i, j):
        # signed variable index of s[i][j], or None on the diagonal
        if i == j:
            return None
        if i < j:
            return var_of[(i, j)], 1
        return var_of[(j, i)], -1

    rows, rhs = [], []
    half_omega = omega_h.scale(Fraction(1, 2))
    for a in triple.gamma1:
        alpha = g.rs.simple_root(a)
        tau_alpha = g.rs.simple_root(triple.apply_tau(a))
        f = [g.rs.coroot_pairing(tau_alpha, i + 1) for i in range(rank)]
        e = [g.rs.coroot_pairing(alpha, j + 1) for j in range(rank)]
        const_l = _contract_left(g, tau_alpha, half_omega)
        const_r = _contract_right(g, alpha, half_omega)
        for k in range(rank):
            row = [Fraction(0)] * len(var_pairs)
            for i in range(rank):
                sc = s_coeff(i, k)
                if sc and f[i]:
                    row[sc[0]] += f[i] * sc[1]
            for j in range(rank):
                sc = s_coeff(k, j)
                if sc and e[j]:
                    row[sc[0]] += e[j] * sc[1]
            rows.append(row)
            rhs.append(-(const_l[k] + const_r[k]))

    solved = linalg.solve_affine(rows, rhs, ncols=len(var_pairs))
    if solved is None:
        raise NoSolution(f"no Cartan part for {triple} (admissibility bug)")
    particular_vec, kernel_vecs = solved

    def s_tensor(vec):
        entries = {}
        for idx, (i, j) in enumerate(var_pairs):
            if vec[idx]:
                entries[(i, j)] = vec[idx]
                entries[(j, i)] = -vec[idx]
        return Tensor2(g, entries)

    particular = half_omega + s_tensor(particular_vec)
    kernel = [s_tensor(v) for v in kernel_vecs]
    return particular, kernel


def _tau_step_signs(g: ChevalleyAlgebra, triple: AdmissibleTriple):
    """For each positive root beta supported on Gamma1: (tau(beta), sign) with
    tau~(X_beta) = sign * X_tau(beta), tau~ the bracket-extension of tau."""
    g1 = set(triple.gamma1)
    span_pos = [b for b in g.positive
                if all(b[i - 1] == 0 for i in g.rs.simple_indices if i not in g1)]
    tau_map = triple.tau_map

    def tau_root(beta):
        img = [0] * g.rank
        for i in g1:
            if beta[i - 1]:
                img[tau_map[i] - 1] += beta[i - 1]
        return tuple(img)

    span_set = set(span_pos)
    step = {}
    for beta in span_pos:  # already height-ordered
        img = tau_root(beta)
        if sum(beta) == 1:
            step[beta] = (img, Fraction(1))
            continue
        g1_part = next(c for c in span_pos if c != beta and _vsub_ok(beta, c, span_set))
        g2_part = tuple(x - y for x, y in zip(beta, g1_part))
        s1, s2 = step[g1_part][1], step[g2_part][1]
        sgn = s1 * s2 * g.N[(tau_root(g1_part), tau_root(g2_part))] / g.N[(g1_part, g2_part)]
        assert sgn in (1, -1)
        step[beta] = (img, sgn)
    return span_pos, step


def _vsub_ok(beta, c, span_set):
    diff = tuple(x - y for x, y in zip(beta, c))
    return diff in span_set


def build_bd_rmatrix(g: ChevalleyAlgebra, quad: AdmissibleQuadruple) -> RMatrix:
    """The Belavin-Drinfeld r-matrix of an admissible quadruple, verified exactly."""
    bad = cartan_constraint_violation(g, quad.triple, quad.r_h)
    if bad is not None:
        raise ValueError(f"invalid quadruple: {bad}")
    entries = dict(quad.r_h.entries)

    def put(key, val):
        cur = entries.get(key, 0) + val
        if cur:
            entries[key] = cur
        elif key in entries:
            del entries[key]

    for beta in g.positive:
        put((g.x_index(beta), g.x_index(_vneg(beta))), 1 / g.pair_norm(beta))

    span_pos, step = _tau_step_signs(g, quad.triple)
    span_set = set(span_pos)
    for beta in span_pos:
        cur, sgn = beta, Fraction(1)
        while True:
            img, s = step[cur]
            sgn = sgn * s
            coeff = sgn / g.pair_norm(img)
            put((g.x_index(beta), g.x_index(_vneg(img))), coeff)
            put((g.x_index(_vneg(img)), g.x_index(beta)), -coeff)
            if img not in span_set:
                break
            cur = img

    r = Tensor2(g, entries)
    omega, _ = g.casimir()
    if r + flip(r) != omega:
        raise VerificationFailed("r + kappa(r) != Omega (normalization bug)")
    if not cyb(r).is_zero():
        raise VerificationFailed("CYB(r) != 0 (normalization bug)")
    return RMatrix(r=r, lam=Fraction(1))


def build_dj_rmatrix(g: ChevalleyAlgebra) -> RMatrix:
    """Drinfeld-Jimbo r-matrix: Omega_h/2 + Killing-normalized positive pairs."""
    return build_bd_rmatrix(g, make_quadruple(g, TRIVIAL_TRIPLE))


def verify_rmatrix(g: ChevalleyAlgebra, r: Tensor2):
    """Return lambda with r + kappa(r) = lambda*Omega and CYB(r) = 0.

    Raises RMatrixRejection naming the first violated axiom; lambda must be
    invertible (nonzero), skew-symmetric solutions are rejected.
    """
    omega, _ = g.casimir()
    lam = proportionality(r + flip(r), omega)
    if lam is None:
        raise RMatrixRejection(RMatrixRejection.NOT_PROPORTIONAL)
    if lam == 0:
        raise RMatrixRejection(RMatrixRejection.LAMBDA_ZERO)
    if not cyb(r).is_zero():
        raise RMatrixRejection(RMatrixRejection.CYB_NONZERO)
    return lam
