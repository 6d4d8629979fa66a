import random
from fractions import Fraction

import pytest

from bdforge.bd import (RMatrixRejection, build_bd_rmatrix, build_dj_rmatrix,
                        cartan_constraint_violation, make_quadruple,
                        solve_cartan_part, verify_rmatrix)
from bdforge.chevalley import algebra, casimir
from bdforge.rootsys import TRIVIAL_TRIPLE, AdmissibleTriple, \
    enumerate_admissible_triples
from bdforge.tensors import Tensor2, cyb, flip

from oracles import nonzero_fraction, random_fraction


def test_sl2_cartan_part():
    g = algebra("A", 1)
    particular, kernel = solve_cartan_part(g, TRIVIAL_TRIPLE)
    assert particular.entries == {(0, 0): Fraction(1, 16)}
    assert kernel == []  # wedge^2 of a 1-dimensional space


def test_trivial_triple_kernel_is_wedge_square():
    for label, rank, dim in [("A", 2, 1), ("A", 3, 3), ("D", 4, 6)]:
        g = algebra(label, rank)
        particular, kernel = solve_cartan_part(g, TRIVIAL_TRIPLE)
        _, omega_h = casimir(g)
        assert particular == omega_h.scale(Fraction(1, 2))
        assert len(kernel) == rank * (rank - 1) // 2 == dim
        for s in kernel:
            assert flip(s) == s.scale(Fraction(-1))


def test_a2_nontrivial_cartan_part_frozen():
    # hand derivation in the trace form of sl3, rescaled to the Killing form:
    # r_h = (1/18)(h1(x)h1 + h1(x)h2 + h2(x)h2), solution space 0-dimensional
    g = algebra("A", 2)
    t = AdmissibleTriple(gamma1=(1,), gamma2=(2,), tau=((1, 2),))
    particular, kernel = solve_cartan_part(g, t)
    assert kernel == []
    assert particular.entries == {(0, 0): Fraction(1, 18),
                                  (0, 1): Fraction(1, 18),
                                  (1, 1): Fraction(1, 18)}


def test_cartan_constraints_hold_for_all_triples():
    for label, rank in [("A", 2), ("A", 3), ("B", 2), ("C", 3), ("G", 2)]:
        g = algebra(label, rank)
        for t in enumerate_admissible_triples(g.rs):
            particular, kernel = solve_cartan_part(g, t)
            assert cartan_constraint_violation(g, t, particular) is None
            for s in kernel:
                assert cartan_constraint_violation(g, t, particular + s) is None


def test_dj_sl2_exact_value():
    g = algebra("A", 1)
    r = build_dj_rmatrix(g)
    e, f = g.x_index((1,)), g.x_index((-1,))
    assert r.r.entries == {(0, 0): Fraction(1, 16), (e, f): Fraction(1, 4)}
    assert r.lam == 1


@pytest.mark.parametrize("label,rank", [("A", 2), ("B", 2), ("G", 2)])
def test_dj_equals_bd_of_trivial_quadruple(label, rank):
    g = algebra(label, rank)
    assert build_dj_rmatrix(g).r == build_bd_rmatrix(g, make_quadruple(g, TRIVIAL_TRIPLE)).r


def test_kappa_dj_is_omega_complement():
    g = algebra("A", 2)
    r = build_dj_rmatrix(g)
    omega, _ = casimir(g)
    assert flip(r.r) == omega - r.r


@pytest.mark.parametrize("label,rank", [
    ("A", 1), ("A", 2), ("A", 3), ("B", 2), ("C", 3), ("G", 2)])
def test_every_quadruple_gives_verified_rmatrix(label, rank):
    g = algebra(label, rank)
    omega, _ = casimir(g)
    for t in enumerate_admissible_triples(g.rs):
        r = build_bd_rmatrix(g, make_quadruple(g, t))
        assert r.lam == 1
        assert r.r + flip(r.r) == omega
        assert cyb(r.r).is_zero()


def test_kernel_offsets_still_verify():
    # any kernel combination added to the canonical Cartan part stays an r-matrix
    rng = random.Random(97)
    for label, rank in [("A", 2), ("A", 3), ("G", 2)]:
        g = algebra(label, rank)
        for t in enumerate_admissible_triples(g.rs):
            particular, kernel = solve_cartan_part(g, t)
            if not kernel:
                continue
            for _ in range(3):
                r_h = particular
                for s in kernel:
                    r_h = r_h + s.scale(random_fraction(rng))
                r = build_bd_rmatrix(g, make_quadruple(g, t, r_h))
                assert verify_rmatrix(g, r.r) == 1


def test_verify_dj():
    g = algebra("A", 2)
    assert verify_rmatrix(g, build_dj_rmatrix(g).r) == 1


def test_verify_scaling():
    g = algebra("A", 2)
    r = build_dj_rmatrix(g).r
    rng = random.Random(61)
    for _ in range(5):
        c = nonzero_fraction(rng)
        assert verify_rmatrix(g, r.scale(c)) == c


def test_verify_rejects_casimir():
    g = algebra("A", 2)
    omega, _ = casimir(g)
    with pytest.raises(RMatrixRejection) as exc:
        verify_rmatrix(g, omega)
    assert exc.value.reason == "CYBNonzero"
    with pytest.raises(RMatrixRejection) as exc:
        verify_rmatrix(g, omega.scale(Fraction(1, 2)))
    assert exc.value.reason == "CYBNonzero"


def test_verify_rejects_skew():
    g = algebra("A", 1)
    e, f = g.x_index((1,)), g.x_index((-1,))
    skew = Tensor2(g, {(e, f): Fraction(1), (f, e): Fraction(-1)})
    with pytest.raises(RMatrixRejection) as exc:
        verify_rmatrix(g, skew)
    assert exc.value.reason == "LambdaZero"


def test_verify_rejects_non_proportional():
    g = algebra("A", 1)
    e, f = g.x_index((1,)), g.x_index((-1,))
    junk = Tensor2(g, {(e, f): Fraction(1)})
    with pytest.raises(RMatrixRejection) as exc:
        verify_rmatrix(g, junk)
    assert exc.value.reason == "NotProportional"


def test_make_quadruple_rejects_bad_cartan_part():
    g = algebra("A", 2)
    _, omega_h = casimir(g)
    with pytest.raises(ValueError):
        make_quadruple(g, TRIVIAL_TRIPLE, omega_h)  # fails r_h + kappa(r_h) = Omega_h
    t = AdmissibleTriple(gamma1=(1,), gamma2=(2,), tau=((1, 2),))
    with pytest.raises(ValueError):
        # DJ Cartan part violates the tau-contraction constraint of this triple
        make_quadruple(g, t, omega_h.scale(Fraction(1, 2)))


def test_rank_three_b_type_quadruples_verify():
    g = algebra("B", 3)
    omega, _ = casimir(g)
    for t in enumerate_admissible_triples(g.rs):
        r = build_bd_rmatrix(g, make_quadruple(g, t))
        assert r.r + flip(r.r) == omega and cyb(r.r).is_zero()


def test_deep_tau_string_on_a4():
    # Gamma1 = {a1,a2,a3} -> {a2,a3,a4} has orbits of length up to 3, so the
    # cross sum contains tau^3 terms; the exact checks still pass
    g = algebra("A", 4)
    triples = enumerate_admissible_triples(g.rs)
    deep = [t for t in triples if t.gamma1 == (1, 2, 3) and t.gamma2 == (2, 3, 4)
            and t.tau == ((1, 2), (2, 3), (3, 4))]
    assert len(deep) == 1
    r = build_bd_rmatrix(g, make_quadruple(g, deep[0]))
    assert verify_rmatrix(g, r.r) == 1
    # the k = 3 term X_{a1} (x) X_{-tau^3(a1)} is present
    a1 = g.rs.simple_root(1)
    a4 = g.rs.simple_root(4)
    from bdforge.rootsys import extend_tau
    assert extend_tau(g.rs, deep[0], a1, 3) == a4
    key = (g.x_index(a1), g.x_index(tuple(-x for x in a4)))
    assert key in r.r.entries
