import pytest

from ybh.braided import (BraidedHomomorphism, braided_algebra,
                         braided_multiplication, check_associative,
                         check_braided_homomorphism, check_iy, check_yb,
                         check_yi, iy_defect, mirror, mirror_map, yi_defect)
from ybh.constructions import FiniteGroup, group_algebra, matrix_algebra_2x2, trivial_braiding
from ybh.errors import InputError, ValidationError
from ybh.fixtures import build_fixture
from ybh.hopf import braided_from_hopf, group_hopf
from ybh.rng import SplitMix64
from ybh.scalars import GF, QQ
from ybh.tensor import (TensorMap, compose, encode_index, identity_map,
                        random_map, tensor_product, transposition)

# One-sided pair found by exhaustive search over d=2, F_2: mu(e1 ox e1) = e0
# and nothing else; R as below.  Associativity and the YBE hold, YI holds,
# IY fails.  (48 such pairs exist at this size.)
ONE_SIDED_MU = [(0, 3, 1)]
ONE_SIDED_R = [(0, 0, 1), (0, 1, 1), (2, 1, 1), (1, 2, 1), (1, 3, 1), (3, 3, 1)]


def _one_sided():
    f = GF(2)
    mu = TensorMap.from_entries(f, 2, 2, 1, [(r, c, f.one) for r, c, _ in ONE_SIDED_MU])
    r = TensorMap.from_entries(f, 2, 2, 2, [(i, c, f.one) for i, c, _ in ONE_SIDED_R])
    return braided_algebra(f, 2, mu, r, require=False)


def test_check_associative_group_algebra():
    alg = group_algebra(FiniteGroup.cyclic(2), QQ)
    assert check_associative(alg.mu).ok


def test_check_associative_failure_witness():
    # e0 e0 = e1, e0 e1 = e0, everything else 0: (e0 e0) e0 = e1 e0 = 0 but
    # e0 (e0 e0) = e0 e1 = e0, so the first failing triple is (0, 0, 0)
    mu = TensorMap.from_entries(QQ, 2, 2, 1, [
        (1, encode_index((0, 0), 2), QQ.one),
        (0, encode_index((0, 1), 2), QQ.one)])
    res = check_associative(mu)
    assert not res.ok and res.witness == (0, 0, 0)


def test_zero_multiplication_is_associative():
    assert check_associative(TensorMap.zero(QQ, 3, 2, 1)).ok


def test_check_yb_transposition_and_identity():
    assert check_yb(transposition(QQ, 2)).ok
    assert check_yb(identity_map(QQ, 2, 2)).ok


def test_check_yb_against_brute_force():
    # R(e_i ox e_j) = e_j ox e_{i+j mod 2} over F_2, decided by evaluating
    # both YBE composites on all 8 basis inputs with an independent evaluator
    f = GF(2)
    r = TensorMap.from_entries(
        f, 2, 2, 2,
        ((encode_index((j, (i + j) % 2), 2), encode_index((i, j), 2), f.one)
         for i in range(2) for j in range(2)))

    def apply_r(vec):  # vec: dict (i,j) -> coeff
        out = {}
        for (i, j), c in vec.items():
            key = (j, (i + j) % 2)
            out[key] = (out.get(key, 0) + c) % 2
        return out

    def side(order, i, j, k):
        state = {(i, j, k): 1}
        for pos in order:
            nxt = {}
            for (a, b, c), coeff in state.items():
                if pos == 0:
                    for (x, y), c2 in apply_r({(a, b): coeff}).items():
                        key = (x, y, c)
                        nxt[key] = (nxt.get(key, 0) + c2) % 2
                else:
                    for (x, y), c2 in apply_r({(b, c): coeff}).items():
                        key = (a, x, y)
                        nxt[key] = (nxt.get(key, 0) + c2) % 2
            state = {k: v for k, v in nxt.items() if v}
        return state

    brute_holds = all(side([0, 1, 0], i, j, k) == side([1, 0, 1], i, j, k)
                      for i in range(2) for j in range(2) for k in range(2))
    assert check_yb(r).ok == brute_holds


def test_yi_iy_hold_for_transposition_braiding():
    b = trivial_braiding(matrix_algebra_2x2(QQ))
    assert b.yi_holds and b.iy_holds


def test_yi_fails_for_identity_braiding_on_group_algebra():
    alg = group_algebra(FiniteGroup.cyclic(2), QQ)
    res = check_yi(alg.mu, identity_map(QQ, 2, 2))
    assert not res.ok


def test_s3_adjoint_is_braided():
    b = braided_from_hopf(group_hopf(FiniteGroup.symmetric(3), QQ))
    assert b.yi_holds and b.iy_holds


def test_braided_multiplication_trivial_cases():
    z2 = build_fixture("z2_adjoint", QQ)
    out = braided_multiplication(z2, 1)
    assert out.mu == z2.mu  # R is the basis swap and mu is commutative
    mat = build_fixture("mat2_trivial", GF(3))
    out = braided_multiplication(mat, 2)
    assert out.mu == mat.mu and out.r == mat.r  # tau^2 = id


def test_braided_multiplication_s3_associative():
    b = build_fixture("s3_adjoint", GF(2))
    out = braided_multiplication(b, 1)
    assert out.algebra.check_associative().ok
    assert all(c.ok for c in out.all_checks())


def test_homomorphism_checks():
    b = build_fixture("z2_adjoint", QQ)
    ident = identity_map(QQ, 2, 1)
    assert all(r.ok for r in check_braided_homomorphism(BraidedHomomorphism(b, b, ident)))
    zero = TensorMap.zero(QQ, 2, 1, 1)
    assert all(r.ok for r in check_braided_homomorphism(BraidedHomomorphism(b, b, zero)))
    swap = TensorMap.from_entries(QQ, 2, 1, 1, [(1, 0, QQ.one), (0, 1, QQ.one)])
    results = check_braided_homomorphism(BraidedHomomorphism(b, b, swap))
    assert not results[0].ok  # f(e e) = a but f(e) f(e) = a a = e


def test_mirror_involution_and_transposition():
    b = build_fixture("heap_z2", QQ)
    bm = mirror(b)
    assert mirror(bm).mu == b.mu and mirror(bm).r == b.r
    assert mirror_map(transposition(QQ, 3)) == transposition(QQ, 3)


def test_mirror_exchanges_yi_and_iy_defects():
    rng = SplitMix64(77)
    rev2 = lambda t: mirror_map(t)
    for field in (GF(2), GF(101)):
        for _ in range(50):
            mu = random_map(field, 2, 2, 1, rng)
            r = random_map(field, 2, 2, 2, rng)
            assert mirror_map(yi_defect(mu, r)) == iy_defect(rev2(mu), rev2(r))
            assert mirror_map(iy_defect(mu, r)) == yi_defect(rev2(mu), rev2(r))


def test_one_sided_example_and_mirror_swap():
    b = _one_sided()
    assert b.algebra.check_associative().ok
    assert b.yb.check_yb().ok
    assert b.yi_holds and not b.iy_holds
    bm = mirror(b, require=False)
    assert bm.iy_holds and not bm.yi_holds
    with pytest.raises(ValidationError):
        b.require()


def test_r_inverse_satisfies_ybe():
    for name in ("z2_adjoint", "heap_z2", "s3_adjoint"):
        b = build_fixture(name, GF(3))
        inv = b.yb.r_inverse
        assert compose(b.r, inv) == identity_map(GF(3), b.dim, 2)
        assert check_yb(inv).ok


def test_braided_algebra_dimension_mismatch():
    with pytest.raises(InputError):
        braided_algebra(QQ, 2, TensorMap.zero(QQ, 2, 2, 1),
                        transposition(QQ, 3), require=False)
