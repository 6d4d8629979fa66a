"""Root systems of types A, B, C, D and G2 in simple-root coordinates.

Roots are integer coordinate vectors over the simple roots, so every isometry
check is an exact rational bilinear-form evaluation; no ambient Euclidean
embedding is ever needed.  Simple roots are labelled 1..rank.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction


class UnsupportedType(ValueError):
    """Raised for (type_label, rank) pairs that do not name a simple type."""


def _cartan_matrix(type_label: str, rank: int):
    # Convention: A[i][j] = 2 <a_i, a_j> / <a_j, a_j>  (0-based storage).
    a = [[0] * rank for _ in range(rank)]
    for i in range(rank):
        a[i][i] = 2
    for i in range(rank - 1):
        a[i][i + 1] = -1
        a[i + 1][i] = -1
    if type_label == "A":
        if rank < 1:
            raise UnsupportedType("type A needs rank >= 1")
    elif type_label == "B":
        # short last root: A[n-2][n-1] = -2
        if rank < 2:
            raise UnsupportedType("type B needs rank >= 2")
        a[rank - 2][rank - 1] = -2
    elif type_label == "C":
        # long last root: A[n-1][n-2] = -2
        if rank < 2:
            raise UnsupportedType("type C needs rank >= 2")
        a[rank - 1][rank - 2] = -2
    elif type_label == "D":
        if rank != 4:
            raise UnsupportedType("type D is supported at rank 4 only")
        a = [[2, -1, 0, 0], [-1, 2, -1, -1], [0, -1, 2, 0], [0, -1, 0, 2]]
    elif type_label == "G":
        if rank != 2:
            raise UnsupportedType("type G has rank 2 only")
        a = [[2, -1], [-3, 2]]
    else:
        raise UnsupportedType(f"unknown type label {type_label!r}")
    return tuple(tuple(row) for row in a)


def _symmetrizer(cartan):
    # d_j = <a_j, a_j>/2 up to one global choice, via d_j * A[i][j] = d_i * A[j][i].
    rank = len(cartan)
    d = [None] * rank
    d[0] = Fraction(1)
    changed = True
    while changed:
        changed = False
        for i in range(rank):
            for j in range(rank):
                if i != j and cartan[i][j] and d[i] is not None and d[j] is None:
                    d[j] = d[i] * cartan[j][i] / cartan[i][j]
                    changed = True
    if any(x is None for x in d):
        raise UnsupportedType("Cartan matrix is not connected")
    return tuple(d)


@dataclass(frozen=True)
class RootSystem:
    type_label: str
    rank: int
    cartan: tuple          # cartan[i][j] = 2<a_i,a_j>/<a_j,a_j>, 0-based
    gram: tuple            # gram[i][j] = <a_i, a_j>, Fractions
    roots: tuple           # all roots, positives first
    positive_roots: tuple

    @property
    def simple_indices(self):
        return tuple(range(1, self.rank + 1))

    def simple_root(self, i: int):
        """Coordinate vector of the simple root labelled i (1-based)."""
        return tuple(1 if k == i - 1 else 0 for k in range(self.rank))

    def inner(self, alpha, beta) -> Fraction:
        """Weyl-invariant inner product of two coordinate vectors."""
        acc = Fraction(0)
        for i, x in enumerate(alpha):
            if not x:
                continue
            for j, y in enumerate(beta):
                if y:
                    acc += x * y * self.gram[i][j]
        return acc

    def coroot_pairing(self, alpha, i: int) -> int:
        """<alpha, a_i^vee> = 2<alpha,a_i>/<a_i,a_i> for the simple root i (1-based)."""
        return sum(alpha[j] * self.cartan[j][i - 1] for j in range(self.rank))

    def is_root(self, vec) -> bool:
        return tuple(vec) in self._root_set()

    def _root_set(self):
        s = getattr(self, "_cached_root_set", None)
        if s is None:
            s = frozenset(self.roots)
            object.__setattr__(self, "_cached_root_set", s)
        return s

    def height(self, alpha) -> int:
        return sum(alpha)

    def reflect(self, alpha, i: int):
        """Simple reflection s_i applied to a coordinate vector (i 1-based)."""
        c = self.coroot_pairing(alpha, i)
        out = list(alpha)
        out[i - 1] -= c
        return tuple(out)


def build_root_system(type_label: str, rank: int) -> RootSystem:
    """Construct the root system by reflection closure of the simple roots."""
    cartan = _cartan_matrix(type_label, rank)
    d = _symmetrizer(cartan)
    gram = tuple(tuple(Fraction(cartan[i][j]) * d[j] for j in range(rank))
                 for i in range(rank))
    simples = [tuple(1 if k == i else 0 for k in range(rank)) for i in range(rank)]
    roots = set(simples) | {tuple(-x for x in s) for s in simples}
    frontier = set(roots)
    while frontier:
        new = set()
        for alpha in frontier:
            for i in range(1, rank + 1):
                c = sum(alpha[j] * cartan[j][i - 1] for j in range(rank))
                img = list(alpha)
                img[i - 1] -= c
                img = tuple(img)
                if img not in roots:
                    new.add(img)
        roots |= new
        frontier = new
    positives = sorted((r for r in roots if sum(r) > 0), key=lambda r: (sum(r), r))
    ordered = tuple(positives) + tuple(tuple(-x for x in p) for p in positives)
    rs = RootSystem(type_label=type_label, rank=rank, cartan=cartan, gram=gram,
                    roots=ordered, positive_roots=tuple(positives))
    assert len(positives) * 2 == len(ordered)
    return rs


@dataclass(frozen=True)
class DiagramAutomorphism:
    """Permutation of simple-root labels preserving the Cartan matrix."""

    perm: tuple  # perm[i-1] = pi(i), 1-based labels

    def __call__(self, i: int) -> int:
        return self.perm[i - 1]

    def apply_root(self, alpha):
        """Permute the coordinates of a root: pi(sum n_i a_i) = sum n_i a_pi(i)."""
        out = [0] * len(alpha)
        for i, n in enumerate(alpha):
            out[self.perm[i] - 1] = n
        return tuple(out)

    def compose(self, other: "DiagramAutomorphism") -> "DiagramAutomorphism":
        return DiagramAutomorphism(tuple(self.perm[other.perm[i] - 1]
                                         for i in range(len(self.perm))))

    def inverse(self) -> "DiagramAutomorphism":
        inv = [0] * len(self.perm)
        for i, p in enumerate(self.perm):
            inv[p - 1] = i + 1
        return DiagramAutomorphism(tuple(inv))

    def order(self) -> int:
        k, cur = 1, self
        ident = tuple(range(1, len(self.perm) + 1))
        while cur.perm != ident:
            cur = cur.compose(self)
            k += 1
        return k

    def is_identity(self) -> bool:
        return self.perm == tuple(range(1, len(self.perm) + 1))


def diagram_automorphisms(rs: RootSystem):
    """All Cartan-matrix-preserving permutations of the simple roots."""
    out = []
    n = rs.rank
    for perm in itertools.permutations(range(1, n + 1)):
        if all(rs.cartan[perm[i] - 1][perm[j] - 1] == rs.cartan[i][j]
               for i in range(n) for j in range(n)):
            out.append(DiagramAutomorphism(perm))
    out.sort(key=lambda p: p.perm)
    return out


@dataclass(frozen=True)
class AdmissibleTriple:
    """(Gamma1, Gamma2, tau): isometric bijection whose iterates leave Gamma1."""

    gamma1: tuple  # sorted 1-based simple-root labels
    gamma2: tuple
    tau: tuple     # sorted pairs (i, tau(i))

    @property
    def tau_map(self):
        return dict(self.tau)

    def apply_tau(self, i: int) -> int:
        return self.tau_map[i]

    def is_trivial(self) -> bool:
        return not self.gamma1

    def to_json(self):
        return {"gamma1": list(self.gamma1), "gamma2": list(self.gamma2),
                "tau": {str(i): str(j) for i, j in self.tau}}

    @classmethod
    def from_json(cls, data) -> "AdmissibleTriple":
        tau = tuple(sorted((int(i), int(j)) for i, j in data["tau"].items()))
        return cls(gamma1=tuple(sorted(int(i) for i in data["gamma1"])),
                   gamma2=tuple(sorted(int(i) for i in data["gamma2"])),
                   tau=tau)


TRIVIAL_TRIPLE = AdmissibleTriple(gamma1=(), gamma2=(), tau=())


def _is_isometry(rs, g1, g2_images):
    for (a, ia), (b, ib) in itertools.combinations_with_replacement(
            list(zip(g1, g2_images)), 2):
        sa, sb = rs.simple_root(a), rs.simple_root(b)
        ta, tb = rs.simple_root(ia), rs.simple_root(ib)
        if rs.inner(sa, sb) != rs.inner(ta, tb):
            return False
    return True


def _nilpotency_witnesses(g1, tau_map):
    """k-values after which each orbit leaves Gamma1, or None if some cycle exists."""
    witnesses = {}
    g1set = set(g1)
    for a in g1:
        cur, k = a, 0
        seen = set()
        while cur in g1set:
            if cur in seen:
                return None
            seen.add(cur)
            cur = tau_map[cur]
            k += 1
        witnesses[a] = k
    return witnesses


def enumerate_admissible_triples(rs: RootSystem):
    """Complete duplicate-free list of admissible triples, canonically ordered."""
    labels = list(rs.simple_indices)
    found = []
    for size in range(len(labels) + 1):
        for g1 in itertools.combinations(labels, size):
            for g2 in itertools.combinations(labels, size):
                for images in itertools.permutations(g2):
                    if not _is_isometry(rs, g1, images):
                        continue
                    tau_map = dict(zip(g1, images))
                    witnesses = _nilpotency_witnesses(g1, tau_map)
                    if witnesses is None:
                        continue
                    # pigeonhole bound promised by the enumeration contract
                    assert all(k <= len(g1) for k in witnesses.values())
                    found.append(AdmissibleTriple(
                        gamma1=tuple(g1), gamma2=tuple(sorted(g2)),
                        tau=tuple(sorted(tau_map.items()))))
    found.sort(key=lambda t: (t.gamma1, t.gamma2, t.tau))
    return found


def extend_tau(rs: RootSystem, triple: AdmissibleTriple, alpha, k: int):
    """tau^k(alpha) by additive extension, or None once an iterate leaves the span.

    alpha must be a positive root supported on Gamma1.  The final image need
    not lie in the span of Gamma1; every intermediate iterate must.
    """
    if k < 1:
        raise ValueError("k must be positive")
    g1 = set(triple.gamma1)
    if not rs.is_root(alpha) or sum(alpha) <= 0:
        raise ValueError(f"{alpha} is not a positive root")
    tau_map = triple.tau_map
    cur = tuple(alpha)
    for _ in range(k):
        if any(cur[i - 1] != 0 for i in rs.simple_indices if i not in g1):
            return None  # iterate left Span(Gamma1): tau no longer applies
        img = [0] * rs.rank
        for i in g1:
            n = cur[i - 1]
            if n:
                img[tau_map[i] - 1] += n
        cur = tuple(img)
        assert rs.is_root(cur)
    return cur
