"""Quadratic Galois descent: su_n(K,d) and descended bialgebra structures.

An L-vector space for L = Q(sqrt d) is handled as a Q-space of doubled
dimension, so fixed points of the twisted Galois action gamma.x = u(conj(x))
come out of one exact rational nullspace computation.  Change of basis back
to the descended K-basis happens over L itself (QuadExt field arithmetic),
and descended coordinates are required to be rational on the nose.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import linalg
from .chevalley import AlgebraMap, ChevalleyAlgebra, _vneg, algebra
from .scalars import QuadExt, as_rational
from .tensors import Tensor2, ad_action2, apply_map2, flip
from .twist import GaloisCocycle

CASE1 = "Case1"
CASE2 = "Case2"
NO_DESCENT = "NoDescent"

ALPHA_RATIONAL = "rational"
ALPHA_SQRT_D = "sqrt_d_multiple"


class UnsupportedRank(ValueError):
    """sl_n realizations are provided for 2 <= n <= 4 only."""


class DimensionMismatch(RuntimeError):
    """The twisted fixed-point space does not have full dimension."""


class NotClosed(RuntimeError):
    """A computed value left the K-span of the descended basis."""


def _zero(n):
    return [[Fraction(0)] * n for _ in range(n)]


def _comm(a, b):
    n = len(a)
    out = _zero(n)
    for i in range(n):
        for j in range(n):
            acc = Fraction(0)
            for k in range(n):
                acc += a[i][k] * b[k][j] - b[i][k] * a[k][j]
            out[i][j] = acc
    return out


def _mat_scale(a, c):
    return [[c * x for x in row] for row in a]


def _transpose(a):
    n = len(a)
    return [[a[j][i] for j in range(n)] for i in range(n)]


@dataclass
class MatrixRealization:
    """The abstract A_{n-1} Chevalley basis realized inside traceless n x n matrices."""

    n: int
    algebra: ChevalleyAlgebra
    embed: list           # basis index -> n x n rational matrix
    transpose_map: AlgebraMap


@lru_cache(maxsize=None)
def sl_realization(n: int) -> MatrixRealization:
    """Embed the abstract type-A algebra in sl_n with H_i = E_ii - E_{i+1,i+1},
    X_{alpha_i} = E_{i,i+1}; composite root vectors follow by iterated brackets."""
    if not 2 <= n <= 4:
        raise UnsupportedRank(f"sl_realization supports 2 <= n <= 4, got {n}")
    g = algebra("A", n - 1)
    embed = [None] * g.dim
    for i in range(1, g.rank + 1):
        m = _zero(n)
        m[i - 1][i - 1] = Fraction(1)
        m[i][i] = Fraction(-1)
        embed[g.h_index(i)] = m
    for beta in g.positive:
        if sum(beta) == 1:
            i = beta.index(1)
            mp, mn = _zero(n), _zero(n)
            mp[i][i + 1] = Fraction(1)
            mn[i + 1][i] = Fraction(1)
            embed[g.x_index(beta)] = mp
            embed[g.x_index(_vneg(beta))] = mn
            continue
        eta, xi = g.extraspecial[beta]
        embed[g.x_index(beta)] = _mat_scale(
            _comm(embed[g.x_index(eta)], embed[g.x_index(xi)]), 1 / g.N[(eta, xi)])
        embed[g.x_index(_vneg(beta))] = _mat_scale(
            _comm(embed[g.x_index(_vneg(eta))], embed[g.x_index(_vneg(xi))]),
            1 / g.N[(_vneg(eta), _vneg(xi))])

    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            expected = _zero(n)
            for k, c in g.bracket_entry(i, j).items():
                for p in range(n):
                    for q in range(n):
                        expected[p][q] += c * embed[k][p][q]
            assert _comm(embed[i], embed[j]) == expected, \
                "matrix realization is not a Lie isomorphism"

    cols = {}
    for i in range(1, g.rank + 1):
        cols[g.h_index(i)] = {g.h_index(i): Fraction(1)}
    for beta in g.rs.roots:
        mt = _transpose(embed[g.x_index(beta)])
        target = embed[g.x_index(_vneg(beta))]
        ratio = None
        for p in range(n):
            for q in range(n):
                if target[p][q]:
                    ratio = mt[p][q] / target[p][q]
                    break
            if ratio is not None:
                break
        assert ratio is not None and mt == _mat_scale(target, ratio)
        cols[g.x_index(beta)] = {g.x_index(_vneg(beta)): ratio}
    tmap = AlgebraMap(g.dim, cols)
    ident = AlgebraMap.identity(g.dim)
    assert tmap.compose(tmap) == ident
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            lhs = tmap.apply_elem(g.bracket_entry(i, j))
            rhs = g.bracket_elems(tmap.column(i), tmap.column(j))
            assert lhs == {k: -v for k, v in rhs.items()}, \
                "transpose is not an anti-automorphism"
    return MatrixRealization(n=n, algebra=g, embed=embed, transpose_map=tmap)


def unitary_cocycle(n: int, d: int) -> GaloisCocycle:
    """The special unitary cocycle u(x) = -x^t on sl_n, over Q(sqrt d)."""
    real = sl_realization(n)
    u = real.transpose_map.scale(Fraction(-1))
    return GaloisCocycle(d=d, u=u, algebra=real.algebra)


@dataclass
class DescendedForm:
    """Fixed points of a twisted quadratic Galois action, as a K-Lie algebra.

    basis_over_K spans the fixed space over Q; brackets close with rational
    coordinates (asserted at construction).  Provides the same bracket
    interface as ChevalleyAlgebra so cobracket machinery applies unchanged.
    """

    cocycle: GaloisCocycle
    basis_over_K: list
    dim: int
    struct: dict
    basis_matrix: list      # P: ambient coordinates of the K-basis, over L
    basis_matrix_inv: list  # P^{-1} over L
    delta_prime: object = None

    def bracket_entry(self, i: int, j: int):
        if i == j:
            return {}
        if i < j:
            return self.struct.get((i, j), {})
        return {k: -v for k, v in self.struct.get((j, i), {}).items()}

    def bracket_elems(self, x, y):
        out = {}
        for i, ci in x.items():
            for j, cj in y.items():
                c = ci * cj
                for m, cm in self.bracket_entry(i, j).items():
                    v = out.get(m, 0) + c * cm
                    if v:
                        out[m] = v
                    elif m in out:
                        del out[m]
        return out

    def basis_element(self, idx: int):
        return {idx: Fraction(1)}


def _split_map(u: AlgebraMap, dim: int, d: int):
    u0, u1 = _zero_rect(dim), _zero_rect(dim)
    for j, col in u.cols.items():
        for i, v in col.items():
            if isinstance(v, QuadExt):
                if v.b and v.d != d:
                    raise ValueError("cocycle entries live in a different extension")
                u0[i][j] = v.a
                u1[i][j] = v.b
            else:
                u0[i][j] = Fraction(v)
    return u0, u1


def _zero_rect(n):
    return [[Fraction(0)] * n for _ in range(n)]


def fixed_points(cocycle: GaloisCocycle) -> DescendedForm:
    """K-basis of {x : u(conj(x)) = x} by exact doubled-dimension linear algebra."""
    g = cocycle.algebra
    dim, d = g.dim, cocycle.d
    u0, u1 = _split_map(cocycle.u, dim, d)
    big = []
    for i in range(dim):
        row = [u0[i][j] - (1 if i == j else 0) for j in range(dim)]
        row += [-d * u1[i][j] for j in range(dim)]
        big.append(row)
    for i in range(dim):
        row = [u1[i][j] for j in range(dim)]
        row += [-(u0[i][j] + (1 if i == j else 0)) for j in range(dim)]
        big.append(row)
    kernel = linalg.nullspace(big, ncols=2 * dim)
    if len(kernel) != dim:
        raise DimensionMismatch(
            f"fixed space has K-dimension {len(kernel)}, expected {dim}")

    basis = []
    for vec in kernel:
        elem = {}
        for i in range(dim):
            y, z = vec[i], vec[dim + i]
            val = QuadExt(y, z, d) if z else y
            if val:
                elem[i] = val
        basis.append(elem)

    for elem in basis:
        conj = {i: (v.conjugate() if isinstance(v, QuadExt) else v) for i, v in elem.items()}
        assert cocycle.u.apply_elem(conj) == elem, "basis vector is not a fixed point"

    p = [[Fraction(0)] * dim for _ in range(dim)]
    for j, elem in enumerate(basis):
        for i, v in elem.items():
            p[i][j] = v
    pinv = linalg.inv(p)

    struct = {}
    for i in range(dim):
        for j in range(i + 1, dim):
            w = g.bracket_elems(basis[i], basis[j])
            entry = {}
            for k in range(dim):
                acc = Fraction(0)
                for m, c in w.items():
                    if pinv[k][m]:
                        acc = acc + pinv[k][m] * c
                if acc:
                    try:
                        entry[k] = as_rational(acc)
                    except ValueError:
                        raise NotClosed(
                            f"bracket [v_{i}, v_{j}] leaves the K-span") from None
            if entry:
                struct[(i, j)] = entry
    return DescendedForm(cocycle=cocycle, basis_over_K=basis, dim=dim,
                         struct=struct, basis_matrix=p, basis_matrix_inv=pinv)


def descent_case(r, cocycle: GaloisCocycle, alpha_class: str) -> str:
    """Mutually exclusive descent dichotomy for alpha * dr against a cocycle."""
    if alpha_class not in (ALPHA_RATIONAL, ALPHA_SQRT_D):
        raise ValueError(f"unknown alpha class {alpha_class!r}")
    tensor = r.r if hasattr(r, "r") else r
    moved = apply_map2(cocycle.u, cocycle.u, tensor)
    if alpha_class == ALPHA_RATIONAL and moved == tensor:
        return CASE1
    if alpha_class == ALPHA_SQRT_D and moved == flip(tensor):
        return CASE2
    return NO_DESCENT


def descend_cobracket(r, cocycle: GaloisCocycle, form: DescendedForm,
                      alpha_class: str):
    """alpha * dr expressed on the K-basis of the descended form.

    alpha is 1 in case 1 and sqrt(d) in case 2.  Every value must have
    rational coordinates in basis (x) basis; the result satisfies all three
    bialgebra axioms over K (asserted).
    """
    from .bialgebra import Cobracket, check_axioms
    case = descent_case(r, cocycle, alpha_class)
    if case == NO_DESCENT:
        raise ValueError("structure does not descend for this alpha class")
    alpha = Fraction(1) if case == CASE1 else QuadExt(0, 1, cocycle.d)
    g = cocycle.algebra
    tensor = r.r if hasattr(r, "r") else r
    pinv = form.basis_matrix_inv
    values = []
    for i in range(form.dim):
        w = ad_action2(form.basis_over_K[i], tensor).scale(alpha)
        entries = {}
        for (p, q), c in w.items():
            for j in range(form.dim):
                if not pinv[j][p]:
                    continue
                cj = pinv[j][p] * c
                for k in range(form.dim):
                    if not pinv[k][q]:
                        continue
                    cur = entries.get((j, k), 0) + cj * pinv[k][q]
                    if cur:
                        entries[(j, k)] = cur
                    elif (j, k) in entries:
                        del entries[(j, k)]
        rational_entries = {}
        for key, val in entries.items():
            try:
                rational_entries[key] = as_rational(val)
            except ValueError:
                raise NotClosed(
                    f"delta(v_{i}) leaves (K-span) (x) (K-span)") from None
        values.append(Tensor2(form, rational_entries))
    delta = Cobracket(form, values)
    verdicts = check_axioms(delta)
    assert all(verdicts.values()), f"descended cobracket fails axioms: {verdicts}"
    return delta


def reextension_matches(r, cocycle: GaloisCocycle, form: DescendedForm,
                        delta_prime, alpha_class: str) -> bool:
    """Round trip: the descended cobracket, re-extended to L, equals alpha * dr."""
    case = descent_case(r, cocycle, alpha_class)
    alpha = Fraction(1) if case == CASE1 else QuadExt(0, 1, cocycle.d)
    g = cocycle.algebra
    tensor = r.r if hasattr(r, "r") else r
    p, pinv = form.basis_matrix, form.basis_matrix_inv
    expanded = []
    for j in range(form.dim):
        entries = {}
        for (a, b), c in delta_prime.values[j].items():
            for pp in range(g.dim):
                if not p[pp][a]:
                    continue
                cp = c * p[pp][a]
                for qq in range(g.dim):
                    if p[qq][b]:
                        cur = entries.get((pp, qq), 0) + cp * p[qq][b]
                        if cur:
                            entries[(pp, qq)] = cur
                        elif (pp, qq) in entries:
                            del entries[(pp, qq)]
        expanded.append(Tensor2(g, entries))
    for m in range(g.dim):
        acc = Tensor2(g)
        for j in range(form.dim):
            if pinv[j][m]:
                acc = acc + expanded[j].scale(pinv[j][m])
        direct = ad_action2(g.basis_element(m), tensor).scale(alpha)
        if acc != direct:
            return False
    return True
