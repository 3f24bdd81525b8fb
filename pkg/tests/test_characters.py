from fractions import Fraction

import pytest

from hopftruss.characters import (
    Character,
    CharacterClosureError,
    CommAlgebra,
    OutOfDomainError,
    cal_maps,
    cayley_transform,
    conv_identity,
    conv_inverse,
    convolve,
    corollary_form,
    decompose,
    enumerate_characters,
    full_report,
    normal_parts,
    normality_check,
    pair_group_and_phi,
    rationals,
    verify_char_group,
)
from hopftruss.exact import Mat, Vec
from hopftruss.hopf import StructAlgebra, StructCoalgebra, StructHopf, verify_hopf
from hopftruss.rbs import PreconditionError, RBHopf, RBSystem, from_rb_hopf

Q = rationals()


def chars(h):
    return enumerate_characters(h, Q)


def values(*xs):
    return Mat.from_rows([list(xs)])


def inverse_system(h):
    return from_rb_hopf(RBHopf(h, h.antipode))


class TestEnumeration:
    def test_c2(self, hopfs):
        cg = chars(hopfs["C2"])
        assert cg.order == 2
        assert {f.values for f in cg.elements} == {values(1, 1), values(1, -1)}
        assert verify_char_group(cg).passed

    def test_s3_sign(self, hopfs):
        cg = chars(hopfs["S3"])
        assert cg.order == 2
        sign = next(f for f in cg.elements if f != conv_identity(hopfs["S3"], Q))
        # transpositions go to -1, the rest to +1
        assert sorted(sign.values.apply(Vec.basis(6, k))[0] for k in range(6)) == [-1, -1, -1, 1, 1, 1]

    def test_c3_trivial_only(self, hopfs):
        cg = chars(hopfs["C3"])
        assert cg.order == 1
        assert cg.elements[0] == conv_identity(hopfs["C3"], Q)

    def test_c4_over_pm1(self, hopfs):
        assert chars(hopfs["C4"]).order == 2

    def test_canonical_order(self, hopfs):
        cg = chars(hopfs["S3"])
        keys = [f.sort_key() for f in cg.elements]
        assert keys == sorted(keys)

    def test_candidates_without_inverse(self, hopfs):
        with pytest.raises(CharacterClosureError) as exc:
            enumerate_characters(hopfs["C2"], Q, [Q.unit, Q.unit * 2])
        assert exc.value.witness == {"candidate": 1}

    def test_non_group_algebra_rejected(self):
        with pytest.raises(PreconditionError):
            enumerate_characters(dual_c2(), Q)

    def test_commutative_target(self, hopfs):
        # A = F[C2] as a commutative algebra, units {1, g, -1, -g}
        a = CommAlgebra(hopfs["C2"].algebra)
        units = [s * Vec.basis(2, k) for s in (1, -1) for k in range(2)]
        cg = enumerate_characters(hopfs["C2"], a, units)
        assert cg.order == 4
        assert verify_char_group(cg).passed

    def test_noncommutative_target_rejected(self, hopfs):
        with pytest.raises(ValueError):
            CommAlgebra(hopfs["S3"].algebra)


def dual_c2():
    """Functions on C2: basis of idempotents, which are not group-like."""
    one = Fraction(1)
    p = (Vec.basis(2, 0), Vec.basis(2, 1))
    alg = StructAlgebra(("p0", "p1"), ((p[0], Vec.zero(2)), (Vec.zero(2), p[1])), p[0] + p[1])
    coalg = StructCoalgebra(("p0", "p1"), (((one, 0, 0), (one, 1, 1)), ((one, 0, 1), (one, 1, 0))),
                            Vec.basis(2, 0))
    h = StructHopf(alg, coalg, Mat.identity(2))
    assert verify_hopf(h).passed
    return h


class TestInverse:
    def test_identity_self_inverse(self, hopfs):
        e = conv_identity(hopfs["C2"], Q)
        assert conv_inverse(e) == e

    def test_sign_self_inverse(self, hopfs):
        sign = Character(hopfs["C2"], Q, values(1, -1))
        assert conv_inverse(sign) == sign
        assert convolve(sign, sign) == conv_identity(hopfs["C2"], Q)

    def test_s3_inverse_table(self, hopfs):
        h = hopfs["S3"]
        e = conv_identity(h, Q)
        for f in chars(h).elements:
            assert convolve(f, Character(h, Q, f.values @ h.antipode)) == e


class TestInverseSystemOnC2:
    @pytest.fixture
    def cal(self, hopfs):
        return cal_maps(inverse_system(hopfs["C2"]), chars(hopfs["C2"]))

    def test_pullbacks(self, cal):
        e1 = cal.target_group.e
        assert cal.report.passed
        assert cal.image("b1") == (e1,)
        assert cal.kernel("b1") == (0, 1)
        assert len(cal.image("b2")) == 2
        assert cal.kernel("b2") == (cal.cg.identity,)
        assert [f.values for f in cal.psi] == [f.values for f in cal.cg.elements]

    def test_normal_parts_trivial(self, cal):
        n1, n2 = normal_parts(cal)
        assert n1 == (cal.target_group.e,)
        assert normality_check(cal).passed

    def test_cayley_trivial(self, cal):
        theta, r = cayley_transform(cal)
        assert r.passed
        assert r.get("THETA.quotients").witness == {"source": 1, "target": 1}

    def test_pair_group(self, cal):
        pg, r = pair_group_and_phi(cal)
        e1 = cal.target_group.e
        assert r.passed
        assert {p[0] for p in pg.elements} == {e1}
        assert {p[1] for p in pg.elements} == set(cal.image("b2"))

    def test_sign_decomposition(self, cal):
        pg, _ = pair_group_and_phi(cal)
        sign = next(f for f in cal.image("psi") if f != cal.target_group.e)
        f1, f2 = decompose(sign, pg)
        assert f1 == cal.target_group.e and f2 == sign
        assert corollary_form(sign, pg) == (f1, sign)

    def test_identity_decomposition(self, cal):
        pg, _ = pair_group_and_phi(cal)
        e1 = cal.target_group.e
        assert decompose(e1, pg) == (e1, e1)

    def test_out_of_domain(self, cal, hopfs):
        pg, _ = pair_group_and_phi(cal)
        stranger = Character(cal.desc.hopf, Q, Mat.from_rows([[1, 0]]))
        with pytest.raises(OutOfDomainError):
            decompose(stranger, pg)


@pytest.mark.parametrize("name", ["C2", "C3", "C4", "S3"])
def test_full_report_inverse_systems(hopfs, name):
    r = full_report(inverse_system(hopfs[name]), chars(hopfs[name]))
    assert r.passed, r.failures()
    assert r.status_of("DEM.unique") == "pass"
    assert r.status_of("COR.form") == "pass"
    assert all(c["pair_in_G"] is not None for c in r.data["corollary"])


def test_full_report_identity_counit(hopfs):
    h = hopfs["C2"]
    r = full_report(RBSystem(h, h.identity_map, h.counit_map), chars(h))
    assert r.passed
    assert r.status_of("COR.psi_identity") == "pass"


def test_trivial_character_group(hopfs):
    r = full_report(inverse_system(hopfs["C3"]), chars(hopfs["C3"]))
    assert r.passed
    assert r.get("PAIR.order").witness == {"order": 1}
    assert len(r.data["decompositions"]) == 1


def test_all_enumerated_s3_systems(extended_systems, hopfs):
    cg = chars(hopfs["S3"])
    for _, s in extended_systems["S3"]:
        r = full_report(s, cg)
        assert r.passed, r.failures()
        if s.sigma != hopfs["S3"].identity_map:
            assert r.status_of("COR.form") == "skipped"


def test_non_identity_sigma_skips_corollary(extended_systems):
    found = [s for _, s in extended_systems["C2"] if s.sigma != s.h.identity_map]
    assert found
    cg = chars(found[0].h)
    r = full_report(found[0], cg)
    assert r.passed
    assert r.status_of("COR.psi_identity") == "skipped"
