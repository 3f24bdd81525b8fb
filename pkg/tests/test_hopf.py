import random
from fractions import Fraction

import pytest

from hopftruss.exact import Mat, Vec, tensor_product
from hopftruss.groups import cyclic_group, group_algebra
from hopftruss.hopf import (
    StructAlgebra,
    StructCoalgebra,
    StructHopf,
    convolution,
    convolution_unit,
    group_likes,
    is_algebra_hom,
    is_coalgebra_antihom,
    is_coalgebra_hom,
    primitive_subspace,
    sweedler,
    verify_algebra,
    verify_coalgebra,
    verify_hopf,
)
from support import mutants, random_rational_matrix, with_antipode_entry


def base_field() -> StructHopf:
    one = Vec.basis(1, 0)
    alg = StructAlgebra(("1",), ((one,),), one, "F")
    co = StructCoalgebra(("1",), (((Fraction(1), 0, 0),),), Vec.from_list([1]), "F")
    return StructHopf(alg, co, Mat.identity(1), "F")


def test_group_algebras_verify(hopfs):
    for h in hopfs.values():
        r = verify_hopf(h)
        assert r.passed, r.failures()


def test_base_field():
    assert verify_hopf(base_field()).passed
    assert primitive_subspace(base_field()) == []


def test_scaled_square_keeps_assoc_but_unit_flip_fails(hopfs):
    h = hopfs["C2"]
    two = Vec.basis(2, 0) * 2
    mult = ((h.e(0), h.e(1)), (h.e(1), two))
    r = verify_algebra(StructAlgebra(h.basis, mult, h.unit))
    assert r.status_of("ALG.assoc") == "pass" and r.status_of("ALG.unit") == "pass"
    r = verify_algebra(StructAlgebra(h.basis, h.algebra.mult, h.e(1)))
    assert r.status_of("ALG.unit") == "fail"
    assert r.get("ALG.unit").witness is not None


def test_coalgebra_counit_failure():
    one = Fraction(1)
    co = StructCoalgebra(("1", "g"), (((one, 0, 0),), ((one, 1, 0),)), Vec.from_list([1, 1]))
    r = verify_coalgebra(co)
    assert r.status_of("COALG.counit") == "fail"
    assert r.get("COALG.counit").witness["a"] == 1


def test_cocommutativity_of_s3(hopfs):
    r = verify_coalgebra(hopfs["S3"].coalgebra, cocommutative=True)
    assert r.status_of("COALG.cocomm") == "pass"


def test_s3_square_of_antipode(hopfs):
    h = hopfs["S3"]
    assert verify_hopf(h).status_of("HOPF.S2") == "pass"
    assert h.antipode @ h.antipode == h.identity_map


def test_wrong_antipode_on_c3(hopfs):
    h = hopfs["C3"]
    bad = StructHopf(h.algebra, h.coalgebra, h.identity_map)
    r = verify_hopf(bad)
    assert r.status_of("HOPF.antipode") == "fail"
    assert r.get("HOPF.antipode").witness["a"] == 1


def test_every_mutant_is_caught(hopfs):
    for name, h in hopfs.items():
        muts = mutants(h, per_kind=5, seed=hash(name) % 1000)
        assert {k for k, _, _ in muts} == {"mult", "comult", "antipode"}
        for kind, pos, m in muts:
            assert not verify_hopf(m).passed, (name, kind, pos)


def test_sweedler_group_like(hopfs):
    h = hopfs["C2"]
    g = h.e(1)
    assert sweedler(h, g, 3) == tensor_product(tensor_product(g, g), g)
    assert sweedler(h, g, 1) == g


def test_bracketing_independence(hopfs):
    h = hopfs["S3"]
    rng = random.Random(7)
    for _ in range(5):
        a = Vec.from_list([Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(6)])
        assert sweedler(h, a, 4, "left") == sweedler(h, a, 4, "right")


def test_convolution_associative(hopfs):
    h = hopfs["C4"]
    rng = random.Random(11)
    f, g, k = (random_rational_matrix(rng, 4, 4) for _ in range(3))
    lhs = convolution(convolution(f, g, h, h), k, h, h)
    rhs = convolution(f, convolution(g, k, h, h), h, h)
    assert lhs == rhs


def test_convolution_unit_and_antipode(hopfs):
    h = hopfs["S3"]
    e = convolution_unit(h, h)
    assert convolution(h.identity_map, h.antipode, h, h) == e
    assert convolution(h.antipode, h.identity_map, h, h) == e
    f = random_rational_matrix(random.Random(3), 6, 6)
    assert convolution(f, e, h, h) == f == convolution(e, f, h, h)


def test_antipode_is_hom_and_antihom(hopfs):
    h = hopfs["S3"]
    assert is_coalgebra_hom(h.antipode, h)
    assert is_coalgebra_antihom(h.antipode, h)


def test_group_hom_induces_coalgebra_hom(hopfs):
    c4, c2 = hopfs["C4"], hopfs["C2"]
    # g^k -> g^(k mod 2)
    f = Mat.from_columns(2, [Vec.basis(2, x) for x in (0, 1, 0, 1)])
    assert is_coalgebra_hom(f, c4, c2)
    assert is_algebra_hom(f, c4, c2)


def test_non_coalgebra_map(hopfs):
    h = hopfs["C2"]
    f = Mat.from_columns(2, [h.e(0), h.e(0) + h.e(1)])
    assert not is_coalgebra_hom(f, h)


def test_group_likes(hopfs):
    h = hopfs["C2"]
    assert group_likes(h) == [h.e(0), h.e(1)]
    assert group_likes(h, [h.e(0) + h.e(1)]) == []


def test_no_primitives_in_group_algebras(hopfs):
    for k in ("C2", "S3"):
        assert primitive_subspace(hopfs[k]) == []


def test_non_hopf_antipode_entry(hopfs):
    h = with_antipode_entry(hopfs["C2"], 0, 1, 1)
    assert verify_hopf(h).status_of("HOPF.antipode") == "fail"


def test_noncocommutative_rejected_by_rbs():
    from hopftruss.hopf import NotCocommutativeError
    from hopftruss.rbs import RBSystem

    one = Fraction(1)
    h = group_algebra(cyclic_group(2))
    co = StructCoalgebra(h.basis, (((one, 0, 0),), ((one, 1, 0),)), h.coalgebra.counit)
    with pytest.raises(NotCocommutativeError):
        RBSystem(StructHopf(h.algebra, co, h.antipode), h.identity_map, h.identity_map)
