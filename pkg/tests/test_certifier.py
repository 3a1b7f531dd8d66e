import math
import random

import pytest

from hypergft.certifier import (
    Certificate,
    Verdict,
    certify_function_class,
    certify_operator_mapping,
    hadamard_convolve,
    hypergeometric_coefficients,
)
from hypergft.classes import ClassKind, ClassSpec, SourceClass, SourceKind
from hypergft.errors import HypothesisError, NormalizationError
from hypergft.families import Family, FamilyParams
from hypergft.numcore import pochhammer
from hypergft.oracle import (
    GridSpec,
    coefficient_condition_check,
    disc_sample_check,
    worst_case_coefficients,
)
from hypergft.powerseries import PowerSeries

STAR1 = ClassSpec(ClassKind.STARLIKE, 1.0)
CONV1 = ClassSpec(ClassKind.CONVEX, 1.0)
UCV = ClassSpec(ClassKind.UCV)
SP = ClassSpec(ClassKind.SP)
RBETA0 = SourceClass(SourceKind.RBETA, 0.0)
FULLS = SourceClass(SourceKind.FULL_S)


def fp3(a, b, c):
    return FamilyParams(a, b, c, Family.SPLIT3)


def fp4(a, b, c):
    return FamilyParams(a, b, c, Family.SPLIT4)


class TestHypergeometricCoefficients:
    def test_first_coefficient_is_one(self):
        f = hypergeometric_coefficients(fp3(0.5, 1.0, 4.0), 10)
        assert f.coefficient(1) == 1.0

    def test_flat_family(self):
        # a = 1 and b = c make every ratio cancel: A_n = 1 for all n.
        f = hypergeometric_coefficients(fp3(1.0, 2.0, 2.0), 12)
        for n in range(1, 13):
            assert abs(f.coefficient(n) - 1.0) < 1e-13

    def test_matches_pochhammer_formula(self):
        fp = fp3(0.5, 1.0, 4.0)
        f = hypergeometric_coefficients(fp, 6)
        for n in range(2, 7):
            direct = 1.0
            for u in fp.upper_params():
                direct *= pochhammer(u, n - 1)
            for l in fp.lower_params():
                direct /= pochhammer(l, n - 1)
            direct /= math.factorial(n - 1)
            assert abs(f.coefficient(n) - direct) <= 1e-13 * max(1.0, abs(direct))


class TestHadamard:
    def test_identity_element(self):
        f = PowerSeries((1.0, 0.5, 0.25))
        ones = PowerSeries((1.0, 1.0, 1.0))
        assert hadamard_convolve(f, ones) == f

    def test_componentwise(self):
        out = hadamard_convolve(PowerSeries((1.0, 1.0)), PowerSeries((1.0, 3.0)))
        assert out == PowerSeries((1.0, 3.0))

    def test_truncates_to_shorter(self):
        out = hadamard_convolve(PowerSeries((1.0, 2.0, 3.0)), PowerSeries((1.0, 5.0)))
        assert out.order == 2

    def test_normalization_enforced(self):
        with pytest.raises(NormalizationError):
            hadamard_convolve(PowerSeries((2.0, 1.0)), PowerSeries((1.0, 1.0)))


class TestFunctionClassCertificates:
    def test_wide_region_certifies(self):
        cert = certify_function_class(fp3(0.1, 0.1, 20.0), STAR1)
        assert cert.verdict is Verdict.CERTIFIED
        assert cert.margin > 0
        # soundness: the certified function's coefficients obey the class test
        f = hypergeometric_coefficients(fp3(0.1, 0.1, 20.0), 500)
        assert coefficient_condition_check(f, STAR1).passed

    def test_hypothesis_boundary(self):
        with pytest.raises(HypothesisError):
            certify_function_class(fp3(0.5, 0.5, 2.0), STAR1)  # c == |a|+|b|+1

    def test_lambda_validation(self):
        with pytest.raises(ValueError):
            ClassSpec(ClassKind.STARLIKE, 1.5)

    def test_all_kinds_run(self):
        fp = fp4(0.1, 0.2, 18.0)
        for spec in (STAR1, CONV1, UCV, SP):
            cert = certify_function_class(fp, spec)
            assert cert.verdict is Verdict.CERTIFIED

    def test_complex_parameters_use_moduli(self):
        cert_complex = certify_function_class(fp3(0.1j, -0.1, 20.0), STAR1)
        cert_real = certify_function_class(fp3(0.1, 0.1, 20.0), STAR1)
        assert cert_complex.lhs == pytest.approx(cert_real.lhs, rel=1e-12)

    def test_not_certified_region_exists(self):
        # Just above the hypothesis boundary the inequality genuinely fails.
        cert = certify_function_class(fp3(2.0, 3.0, 6.2), STAR1)
        assert cert.verdict is Verdict.NOT_CERTIFIED


class TestOperatorMappingCertificates:
    def test_rbeta_starlike_certifies(self):
        cert = certify_operator_mapping(fp3(0.1, 0.1, 25.0), RBETA0, STAR1)
        assert cert.verdict is Verdict.CERTIFIED

    def test_rbeta_excluded_modulus(self):
        with pytest.raises(HypothesisError):
            certify_operator_mapping(fp3(0.5, 2.0, 25.0), RBETA0, STAR1)  # |b| = 2

    def test_fulls_convex_certifies(self):
        cert = certify_operator_mapping(fp4(0.1, 0.1, 30.0), FULLS, CONV1)
        assert cert.verdict is Verdict.CERTIFIED

    def test_fulls_ucv_has_no_theorem(self):
        with pytest.raises(ValueError):
            certify_operator_mapping(fp3(0.1, 0.1, 30.0), FULLS, UCV)

    def test_function_source_redirects(self):
        with pytest.raises(ValueError):
            certify_operator_mapping(fp3(0.1, 0.1, 30.0), SourceClass(SourceKind.FUNCTION), STAR1)

    def test_corollary_relaxes_region_for_lambda_one(self):
        # Quartic family at lambda = 1: region only needs c > |a| + |b|.
        fp = fp4(1.0, 0.5, 4.0)  # |a| = 1 would violate the general hypothesis
        cert = certify_operator_mapping(fp, RBETA0, STAR1)
        assert cert.theorem_tag.endswith("lambda1")
        # The cubic family keeps the stricter hypothesis at lambda = 1.
        with pytest.raises(HypothesisError):
            certify_operator_mapping(fp3(1.0, 0.5, 4.0), RBETA0, STAR1)

    def test_rbeta_sp_with_affine_term(self):
        cert = certify_operator_mapping(fp3(0.2, 5.0, 30.0), RBETA0, SP)
        assert cert.verdict is Verdict.CERTIFIED

    def test_beta_raises_rhs(self):
        lo = certify_operator_mapping(fp3(0.1, 0.1, 25.0), SourceClass(SourceKind.RBETA, 0.0), CONV1)
        hi = certify_operator_mapping(fp3(0.1, 0.1, 25.0), SourceClass(SourceKind.RBETA, 0.8), CONV1)
        assert hi.rhs > lo.rhs
        assert hi.margin > lo.margin


class TestSoundness:
    GRID = GridSpec(n_radii=24, n_angles=64)

    def test_certified_operator_images_pass_oracles(self):
        rng = random.Random(404)
        cases = [
            (fp3, RBETA0, STAR1),
            (fp3, RBETA0, UCV),
            (fp4, RBETA0, CONV1),
            (fp4, FULLS, SP),
            (fp3, FULLS, STAR1),
        ]
        for maker, source, spec in cases:
            for _ in range(5):
                a = rng.uniform(0.05, 0.4)
                b = rng.uniform(0.1, 0.8)
                c = rng.uniform(14.0, 30.0)
                fam = maker(a, b, c)
                cert = certify_operator_mapping(fam, source, spec)
                if cert.verdict is not Verdict.CERTIFIED:
                    continue
                image = hadamard_convolve(
                    hypergeometric_coefficients(fam, 200),
                    worst_case_coefficients(source, 200),
                )
                assert coefficient_condition_check(image, spec).passed
                assert disc_sample_check(image, spec, self.GRID).passed

    def test_monotone_in_c(self):
        vals = []
        for c in [4.0, 6.0, 9.0, 14.0, 22.0, 35.0]:
            cert = certify_function_class(fp3(0.5, 0.5, c), STAR1)
            vals.append(cert.lhs)
        assert all(x >= y - 1e-12 for x, y in zip(vals, vals[1:]))

    def test_certificates_are_deterministic(self):
        a = certify_function_class(fp4(0.3, 0.7, 12.0), CONV1)
        b = certify_function_class(fp4(0.3, 0.7, 12.0), CONV1)
        assert a == b


class TestVerdictLogic:
    def test_inconclusive_band(self):
        # Build straddling values directly through the dataclass contract.
        from hypergft.certifier import _decide

        assert _decide(1.0, 2.0, 0.5) is Verdict.CERTIFIED
        assert _decide(2.4, 2.0, 0.1) is Verdict.NOT_CERTIFIED
        assert _decide(2.05, 2.0, 0.2) is Verdict.INCONCLUSIVE
