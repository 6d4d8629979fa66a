"""Chevalley bases with exact structure constants, Killing form and Casimir.

Structure constants are produced by the extraspecial-pair scheme: order the
positive roots by height, give every extraspecial pair (eta, xi) the constant
p + 1 where p is the length of the descending root string, and propagate all
remaining constants through the two Jacobi-derived relations

    N(a,b)/(c,c) = N(b,c)/(a,a) = N(c,a)/(b,b)        for a + b + c = 0,
    N(a,b)N(a+b,c) + N(b,c)N(b+c,a) + N(c,a)N(c+a,b) = 0

(the second taken over quadruples of roots summing to zero with no two
opposite).  The resulting basis satisfies [X_a, X_-a] = H_a (the coroot),
N(-a,-b) = -N(a,b) and |N(a,b)| = p+1; the Jacobi identity is asserted
exhaustively on basis triples at construction time.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from . import linalg
from .rootsys import DiagramAutomorphism, RootSystem, build_root_system
from .tensors import Tensor2, ad_action2, flip


def _vadd(x, y):
    return tuple(a + b for a, b in zip(x, y))


def _vsub(x, y):
    return tuple(a - b for a, b in zip(x, y))


def _vneg(x):
    return tuple(-a for a in x)


def _structure_constants(rs: RootSystem):
    positives = list(rs.positive_roots)
    posset = set(positives)
    rootset = set(rs.roots)
    prec = {r: i for i, r in enumerate(positives)}
    norm = {r: rs.inner(r, r) for r in rs.roots}
    table = {}        # special pairs (a, b), a before b in the root order
    extraspecial = {}  # composite positive root -> its extraspecial pair

    def p_value(eta, xi):
        p, cur = 0, _vsub(xi, eta)
        while cur in rootset:
            p += 1
            cur = _vsub(cur, eta)
        return p

    def n_pos(a, b):
        if prec[a] < prec[b]:
            return table[(a, b)]
        return -table[(b, a)]

    def n_any(x, y):
        s = _vadd(x, y)
        if s not in rootset:
            return Fraction(0)
        xpos, ypos = sum(x) > 0, sum(y) > 0
        if xpos and ypos:
            return n_pos(x, y)
        if not xpos and not ypos:
            return -n_any(_vneg(x), _vneg(y))
        if sum(s) < 0:
            return -n_any(_vneg(x), _vneg(y))
        if not xpos:
            return -n_any(y, x)
        # x > 0, y < 0, x + y > 0: triple (x, y, -s) summing to zero
        return -norm[s] / norm[x] * n_pos(_vneg(y), s)

    for gamma in positives:
        if sum(gamma) == 1:
            continue
        pairs = []
        for a in positives:
            b = _vsub(gamma, a)
            if b in posset and prec[a] < prec[b]:
                pairs.append((a, b))
        pairs.sort(key=lambda ab: prec[ab[0]])
        eta, xi = pairs[0]
        extraspecial[gamma] = (eta, xi)
        table[(eta, xi)] = Fraction(p_value(eta, xi) + 1)
        for a, b in pairs[1:]:
            f1 = n_any(_vneg(eta), a)
            t1 = f1 * n_any(_vsub(a, eta), b) if f1 else Fraction(0)
            f2 = n_any(b, _vneg(eta))
            t2 = f2 * n_any(_vsub(b, eta), a) if f2 else Fraction(0)
            val = -(t1 + t2) / n_any(gamma, _vneg(eta))
            assert val.denominator == 1 and val != 0
            table[(a, b)] = val

    full = {}
    for x in rs.roots:
        for y in rs.roots:
            s = _vadd(x, y)
            if s in rootset:
                full[(x, y)] = n_any(x, y)
    return full, extraspecial


class ChevalleyAlgebra:
    """Split simple Lie algebra over Q in a pinned Chevalley basis.

    Basis order: H_1..H_rank, then X_beta for positive beta in the canonical
    root order, then X_{-beta} in the same order.  Immutable after build.
    """

    def __init__(self, rs: RootSystem):
        self.rs = rs
        self.rank = rs.rank
        self.positive = list(rs.positive_roots)
        self.n_pos = len(self.positive)
        self.dim = self.rank + 2 * self.n_pos
        self._x_index = {}
        for p, beta in enumerate(self.positive):
            self._x_index[beta] = self.rank + p
            self._x_index[_vneg(beta)] = self.rank + self.n_pos + p
        self.N, self.extraspecial = _structure_constants(rs)
        self._coroot = {beta: self._compute_coroot(beta) for beta in rs.roots}
        self._bracket = self._build_bracket_table()
        self._check_jacobi()
        self.killing = self._compute_killing()
        self._casimir_pair = None

    # -- indexing ---------------------------------------------------------

    def h_index(self, i: int) -> int:
        """Index of the simple coroot H_i, i 1-based."""
        return i - 1

    def x_index(self, root) -> int:
        return self._x_index[tuple(root)]

    def basis_label(self, idx: int):
        if idx < self.rank:
            return ("H", idx + 1)
        return ("X", self.weight(idx))

    def weight(self, idx: int):
        """Root of a root vector basis element, None on the Cartan part."""
        if idx < self.rank:
            return None
        p = idx - self.rank
        if p < self.n_pos:
            return self.positive[p]
        return _vneg(self.positive[p - self.n_pos])

    def h(self, i: int):
        return {self.h_index(i): Fraction(1)}

    def x(self, root):
        return {self.x_index(root): Fraction(1)}

    def basis_element(self, idx: int):
        return {idx: Fraction(1)}

    # -- construction internals --------------------------------------------

    def _compute_coroot(self, beta):
        # H_beta = sum_j (n_j d_j / d_beta) H_j with d = <.,.>/2; integral for roots
        d_beta = self.rs.inner(beta, beta) / 2
        out = {}
        for j in range(self.rank):
            if beta[j]:
                c = beta[j] * self.rs.gram[j][j] / 2 / d_beta
                assert c.denominator == 1
                out[j] = Fraction(c)
        return out

    def _build_bracket_table(self):
        table = {}
        rank, dim = self.rank, self.dim
        for i in range(dim):
            for j in range(dim):
                if i == j:
                    continue
                if i < rank and j < rank:
                    continue
                if i < rank:
                    beta = self.weight(j)
                    c = self.rs.coroot_pairing(beta, i + 1)
                    if c:
                        table[(i, j)] = {j: Fraction(c)}
                    continue
                if j < rank:
                    beta = self.weight(i)
                    c = self.rs.coroot_pairing(beta, j + 1)
                    if c:
                        table[(i, j)] = {i: Fraction(-c)}
                    continue
                a, b = self.weight(i), self.weight(j)
                s = _vadd(a, b)
                if not any(s):
                    entry = {h: c for h, c in self._coroot[a].items()}
                    table[(i, j)] = entry
                elif (a, b) in self.N:
                    table[(i, j)] = {self.x_index(s): self.N[(a, b)]}
        return table

    def bracket_entry(self, i: int, j: int):
        """[e_i, e_j] as a sparse element; empty dict when zero."""
        return self._bracket.get((i, j), {})

    def bracket_elems(self, x, y):
        """Bracket of two sparse elements."""
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

    def _check_jacobi(self):
        dim = self.dim
        for i in range(dim):
            for j in range(i + 1, dim):
                bij = self.bracket_entry(i, j)
                for k in range(j + 1, dim):
                    acc = {}
                    for m, c in bij.items():
                        for t, ct in self.bracket_entry(m, k).items():
                            v = acc.get(t, 0) + c * ct
                            if v:
                                acc[t] = v
                            elif t in acc:
                                del acc[t]
                    for m, c in self.bracket_entry(j, k).items():
                        for t, ct in self.bracket_entry(m, i).items():
                            v = acc.get(t, 0) + c * ct
                            if v:
                                acc[t] = v
                            elif t in acc:
                                del acc[t]
                    for m, c in self.bracket_entry(k, i).items():
                        for t, ct in self.bracket_entry(m, j).items():
                            v = acc.get(t, 0) + c * ct
                            if v:
                                acc[t] = v
                            elif t in acc:
                                del acc[t]
                    assert not acc, f"Jacobi fails on basis triple {(i, j, k)}"

    def _compute_killing(self):
        dim = self.dim
        k = [[Fraction(0)] * dim for _ in range(dim)]
        for a in range(dim):
            for b in range(a, dim):
                acc = Fraction(0)
                for j in range(dim):
                    for m, c in self.bracket_entry(b, j).items():
                        x = self.bracket_entry(a, m).get(j)
                        if x is not None:
                            acc += c * x
                k[a][b] = acc
                k[b][a] = acc
        return k

    def killing_form(self, x, y):
        """trace(ad_x ad_y) for sparse elements, exactly."""
        acc = Fraction(0)
        for i, ci in x.items():
            for j, cj in y.items():
                if self.killing[i][j]:
                    acc += ci * cj * self.killing[i][j]
        return acc

    def pair_norm(self, beta) -> Fraction:
        """killing(X_beta, X_{-beta})."""
        return self.killing[self.x_index(beta)][self.x_index(_vneg(beta))]

    # -- Casimir ------------------------------------------------------------

    def casimir(self):
        """(Omega, Omega_h): Killing-dual Casimir and its Cartan part.

        Omega = sum_i b_i (x) b^i over Killing-dual bases; ad-invariance and
        symmetry are asserted, realizing the characterization of the kernel
        of s -> (a -> [1 (x) a + a (x) 1, s]).
        """
        if self._casimir_pair is not None:
            return self._casimir_pair
        rank = self.rank
        hblock = [row[:rank] for row in self.killing[:rank]]
        w = linalg.inv(hblock)
        entries = {}
        for i in range(rank):
            for j in range(rank):
                if w[i][j]:
                    entries[(i, j)] = w[i][j]
        for beta in self.rs.roots:
            entries[(self.x_index(beta), self.x_index(_vneg(beta)))] = 1 / self.pair_norm(beta)
        omega = Tensor2(self, entries)
        omega_h = Tensor2(self, {(i, j): v for (i, j), v in entries.items()
                                 if i < rank and j < rank})
        assert flip(omega) == omega
        for a in range(self.dim):
            assert ad_action2(self.basis_element(a), omega).is_zero(), \
                f"Casimir not ad-invariant against basis element {a}"
        self._casimir_pair = (omega, omega_h)
        return self._casimir_pair

    def __repr__(self):
        return f"ChevalleyAlgebra({self.rs.type_label}{self.rank}, dim={self.dim})"


@lru_cache(maxsize=None)
def build_chevalley(rs: RootSystem) -> ChevalleyAlgebra:
    return ChevalleyAlgebra(rs)


@lru_cache(maxsize=None)
def algebra(type_label: str, rank: int) -> ChevalleyAlgebra:
    """Convenience cache: the Chevalley algebra of a named simple type."""
    return build_chevalley(build_root_system(type_label, rank))


def casimir(g: ChevalleyAlgebra):
    """Casimir element Omega and its Cartan part Omega_h."""
    return g.casimir()


def element_to_json(elem):
    """Sparse element as {basis_index: scalar_string}."""
    from .scalars import scalar_to_str
    return {str(i): scalar_to_str(v) for i, v in sorted(elem.items())}


def element_from_json(data):
    from .scalars import scalar_from_str
    return {int(i): scalar_from_str(s) for i, s in data.items()}


class AlgebraMap:
    """Linear map on the fixed basis, stored as sparse columns."""

    __slots__ = ("dim", "cols")

    def __init__(self, dim: int, cols):
        self.dim = dim
        self.cols = {}
        for j, col in cols.items():
            clean = {i: v for i, v in col.items() if v}
            if clean:
                self.cols[j] = clean

    @classmethod
    def identity(cls, dim: int) -> "AlgebraMap":
        return cls(dim, {j: {j: Fraction(1)} for j in range(dim)})

    def column(self, j: int):
        return self.cols.get(j, {})

    def apply_elem(self, elem):
        out = {}
        for j, c in elem.items():
            for i, v in self.column(j).items():
                t = out.get(i, 0) + c * v
                if t:
                    out[i] = t
                elif i in out:
                    del out[i]
        return out

    def compose(self, other: "AlgebraMap") -> "AlgebraMap":
        """self after other."""
        cols = {}
        for j in other.cols:
            col = self.apply_elem(other.cols[j])
            if col:
                cols[j] = col
        return AlgebraMap(self.dim, cols)

    def scale(self, c) -> "AlgebraMap":
        return AlgebraMap(self.dim, {j: {i: c * v for i, v in col.items()}
                                     for j, col in self.cols.items()})

    def conjugate(self) -> "AlgebraMap":
        """Entrywise Galois conjugation."""
        from .scalars import conj_scalar
        return AlgebraMap(self.dim, {j: {i: conj_scalar(v) for i, v in col.items()}
                                     for j, col in self.cols.items()})

    def to_dense(self):
        m = [[Fraction(0)] * self.dim for _ in range(self.dim)]
        for j, col in self.cols.items():
            for i, v in col.items():
                m[i][j] = v
        return m

    @classmethod
    def from_dense(cls, m) -> "AlgebraMap":
        dim = len(m)
        cols = {}
        for j in range(dim):
            col = {i: m[i][j] for i in range(dim) if m[i][j]}
            if col:
                cols[j] = col
        return cls(dim, cols)

    def inverse(self) -> "AlgebraMap":
        return AlgebraMap.from_dense(linalg.inv(self.to_dense()))

    def is_invertible(self) -> bool:
        # fast path: monomial matrices (all our generators and their products)
        if all(len(col) == 1 for col in self.cols.values()) and len(self.cols) == self.dim:
            rows = {next(iter(col)) for col in self.cols.values()}
            if len(rows) == self.dim:
                return True
        return linalg.rank(self.to_dense()) == self.dim

    def is_lie_morphism(self, alg, target=None) -> bool:
        target = target if target is not None else alg
        for i in range(alg.dim):
            fi = self.column(i)
            for j in range(i + 1, alg.dim):
                lhs = self.apply_elem(alg.bracket_entry(i, j))
                rhs = target.bracket_elems(fi, self.column(j))
                if lhs != rhs:
                    return False
        return True

    def is_automorphism(self, alg) -> bool:
        return self.is_invertible() and self.is_lie_morphism(alg)

    def __eq__(self, other):
        if not isinstance(other, AlgebraMap):
            return NotImplemented
        return self.dim == other.dim and self.cols == other.cols

    def __repr__(self):
        return f"AlgebraMap(dim={self.dim}, nnz={sum(len(c) for c in self.cols.values())})"

    def to_json(self):
        from .scalars import scalar_to_str
        return {str(j): {str(i): scalar_to_str(v) for i, v in sorted(col.items())}
                for j, col in sorted(self.cols.items())}

    @classmethod
    def from_json(cls, dim, data) -> "AlgebraMap":
        from .scalars import scalar_from_str
        return cls(dim, {int(j): {int(i): scalar_from_str(s) for i, s in col.items()}
                         for j, col in data.items()})


class TorusElement:
    """Point of the adjoint torus: one invertible scalar per simple root."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        self.entries = dict(entries)
        if any(not v for v in self.entries.values()):
            raise ValueError("torus coordinates must be invertible")

    def coordinate(self, i: int):
        return self.entries.get(i, Fraction(1))

    def character(self, root):
        """alpha(t) = prod t_i^{n_i} for alpha = sum n_i alpha_i."""
        val = Fraction(1)
        for i, n in enumerate(root, start=1):
            if n:
                val = val * self.coordinate(i) ** n
        return val

    def __repr__(self):
        return f"TorusElement({self.entries!r})"


@lru_cache(maxsize=None)
def chevalley_automorphism(g: ChevalleyAlgebra) -> AlgebraMap:
    """The involution chi: H -> -H, X_beta -> -X_{-beta}."""
    cols = {}
    for i in range(g.rank):
        cols[i] = {i: Fraction(-1)}
    for beta in g.rs.roots:
        cols[g.x_index(beta)] = {g.x_index(_vneg(beta)): Fraction(-1)}
    chi = AlgebraMap(g.dim, cols)
    assert chi.is_lie_morphism(g)
    return chi


@lru_cache(maxsize=None)
def lift_diagram_automorphism(g: ChevalleyAlgebra, pi: DiagramAutomorphism) -> AlgebraMap:
    """The pinned lift pi^: H_i -> H_pi(i), X_{a_i} -> X_{a_pi(i)}.

    On composite root vectors the image is forced by multiplicativity; the
    sign is computed through the extraspecial bracket decomposition and is
    shared between X_beta and X_{-beta}.
    """
    sign = {}
    for beta in g.positive:
        if sum(beta) == 1:
            sign[beta] = Fraction(1)
            continue
        eta, xi = g.extraspecial[beta]
        s = sign[eta] * sign[xi] * g.N[(pi.apply_root(eta), pi.apply_root(xi))] / g.N[(eta, xi)]
        assert s in (1, -1)
        sign[beta] = s
    cols = {}
    for i in range(1, g.rank + 1):
        cols[g.h_index(i)] = {g.h_index(pi(i)): Fraction(1)}
    for beta in g.positive:
        img = pi.apply_root(beta)
        cols[g.x_index(beta)] = {g.x_index(img): sign[beta]}
        cols[g.x_index(_vneg(beta))] = {g.x_index(_vneg(img)): sign[beta]}
    lifted = AlgebraMap(g.dim, cols)
    assert lifted.is_lie_morphism(g)
    return lifted


def torus_adjoint(g: ChevalleyAlgebra, t: TorusElement) -> AlgebraMap:
    """Ad_t: identity on h, X_beta -> beta(t) X_beta."""
    cols = {}
    for i in range(g.rank):
        cols[i] = {i: Fraction(1)}
    for beta in g.rs.roots:
        idx = g.x_index(beta)
        cols[idx] = {idx: t.character(beta)}
    ad = AlgebraMap(g.dim, cols)
    assert ad.is_lie_morphism(g)
    return ad


def ad_invariant_kernel(g: ChevalleyAlgebra):
    """Basis of {s in g(x)g : (ad_a (x) 1 + 1 (x) ad_a)(s) = 0 for all a}.

    Starts from the weight-zero pair basis (the common kernel of all Cartan
    actions, read off the diagonal action) and refines by exact nullspace
    computations against every root-vector basis element.
    """
    pairs = []
    for i in range(g.dim):
        wi = g.weight(i)
        for j in range(g.dim):
            wj = g.weight(j)
            if wi is None and wj is None:
                pairs.append((i, j))
            elif wi is not None and wj is not None and _vadd(wi, wj) == (0,) * g.rank:
                pairs.append((i, j))
    vectors = [Tensor2(g, {p: Fraction(1)}) for p in pairs]
    for a in range(g.rank, g.dim):
        elem = g.basis_element(a)
        images = [ad_action2(elem, v) for v in vectors]
        keys = sorted({k for img in images for k in img.entries})
        if not keys:
            continue
        mat = [[img.entries.get(k, Fraction(0)) for img in images] for k in keys]
        combos = linalg.nullspace(mat, ncols=len(vectors))
        new_vectors = []
        for combo in combos:
            acc = Tensor2(g)
            for c, v in zip(combo, vectors):
                if c:
                    acc = acc + v.scale(c)
            new_vectors.append(acc)
        vectors = new_vectors
        if not vectors:
            break
    return vectors
