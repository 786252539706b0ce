import numpy as np
import pytest

from fusionkit import (BasedAlgebra, CertificateError, InductionCertificate,
                       NondegeneracyRequired, StructureError,
                       compute_Z_from_branching, conjugation_certificate,
                       full_report, quantum_dimensions, trivial_certificate,
                       verify_generating, verify_homomorphism)
from fusionkit.catalog import cyclic_model, su2_level


def corrupted(cert, **changes):
    return InductionCertificate(
        changes.get("ring", cert.ring), changes.get("twists", cert.twists),
        changes.get("mm", cert.mm), changes.get("aplus", cert.aplus),
        changes.get("aminus", cert.aminus), theta=changes.get("theta", cert.theta),
        nm_count=changes.get("nm_count", cert.nm_count))


def homomorphism_breaking_aplus(ring):
    """Replace the weight-2 row of the identity branching at level 4 by the
    dimension-preserving but fusion-breaking combination e0 + e4."""
    A = np.eye(ring.size, dtype=np.int64)
    A[2] = 0
    A[2, 0] = A[2, 4] = 1
    return A


class TestConstruction:
    def test_shape_mismatch(self):
        ring, twists = su2_level(2)
        cert = trivial_certificate(ring, twists)
        with pytest.raises(StructureError):
            InductionCertificate(ring, twists, cert.mm,
                                 np.eye(2, dtype=int), np.eye(2, dtype=int))

    def test_requires_dims(self):
        ring, twists = su2_level(2)
        mm = BasedAlgebra(ring.labels, ring.unit, ring.dual, dict(ring.fusion))
        with pytest.raises(StructureError):
            InductionCertificate(ring, twists, mm,
                                 np.eye(3, dtype=int), np.eye(3, dtype=int))

    def test_negative_entries(self):
        ring, twists = su2_level(2)
        cert = trivial_certificate(ring, twists)
        A = -np.eye(3, dtype=int)
        with pytest.raises(StructureError):
            corrupted(cert, aplus=A)


class TestHomomorphism:
    def test_trivial_passes_both_signs(self):
        cert = trivial_certificate(*su2_level(4))
        assert verify_homomorphism(cert, "+").passed
        assert verify_homomorphism(cert, "-").passed

    def test_conjugation_passes_on_commutative_base(self):
        cert = conjugation_certificate(*cyclic_model(3, 2))
        assert verify_homomorphism(cert, "+").passed
        assert verify_homomorphism(cert, "-").passed

    def test_violation_reported_with_witness(self):
        ring, twists = su2_level(4)
        cert = corrupted(trivial_certificate(ring, twists),
                         aplus=homomorphism_breaking_aplus(ring))
        report = verify_homomorphism(cert, "+")
        assert not report.passed
        l, m, b, got, want = report.violation
        assert got != want


class TestMassMatrixFromBranching:
    def test_trivial_gives_identity(self):
        cert = trivial_certificate(*su2_level(3))
        assert np.array_equal(compute_Z_from_branching(cert), np.eye(4, dtype=int))

    def test_conjugation_gives_c(self):
        ring, twists = cyclic_model(3, 2)
        cert = conjugation_certificate(ring, twists)
        assert np.array_equal(compute_Z_from_branching(cert), ring.conjugation_matrix())

    def test_z00_violation_raises(self):
        ring, twists = su2_level(2)
        cert = trivial_certificate(ring, twists)
        A = np.eye(3, dtype=np.int64)
        A[0, 1] = 1  # unit row now hits two extended sectors
        bad = corrupted(cert, aplus=A, aminus=A)
        with pytest.raises(CertificateError):
            compute_Z_from_branching(bad)


class TestGenerating:
    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    def test_trivial_collapses_to_w(self, k):
        cert = trivial_certificate(*su2_level(k))
        report = verify_generating(cert)
        assert report.passed
        assert report.max_residual < 1e-9
        assert report.uncovered == ()

    def test_conjugation_certificate(self):
        report = verify_generating(conjugation_certificate(*cyclic_model(3, 2)))
        assert report.passed

    def test_degenerate_base_raises(self):
        cert = trivial_certificate(*cyclic_model(2, 0))
        with pytest.raises(NondegeneracyRequired):
            verify_generating(cert)


class TestFullReport:
    @pytest.mark.parametrize("k", list(range(1, 11)))
    def test_trivial_and_conjugation_over_su2(self, k):
        ring, twists = su2_level(k)
        for build in (trivial_certificate, conjugation_certificate):
            report = full_report(build(ring, twists))
            assert report.passed, (k, build.__name__, report.failures)

    def test_trivial_su2_4_counts(self):
        report = full_report(trivial_certificate(*su2_level(4), nm_count=5))
        assert report.passed
        assert "tr Z = 5, tr Z Z^t = 5" in report["counts"].detail

    def test_conjugation_equals_trivial_for_self_dual(self):
        ring, twists = su2_level(4)
        Zc = compute_Z_from_branching(conjugation_certificate(ring, twists))
        Zt = compute_Z_from_branching(trivial_certificate(ring, twists))
        assert np.array_equal(Zc, Zt)

    def test_wrong_declared_count_fails(self):
        report = full_report(trivial_certificate(*su2_level(4), nm_count=7))
        assert "counts" in report.failures

    def test_certificate_z_satisfies_search_invariants(self):
        # cross-module consistency: a Z that passes modular invariance also
        # obeys the entry-sum bound and the global-index identity
        ring, twists = cyclic_model(3, 2)
        cert = conjugation_certificate(ring, twists)
        assert full_report(cert).passed
        Z = compute_Z_from_branching(cert)
        dims = quantum_dimensions(ring)
        assert Z.sum() <= dims.w + 1e-9
        dd = np.outer(dims.d, dims.d)
        assert float(np.sum(dd * Z)) == pytest.approx(dims.w, rel=1e-9)


class TestTargetedCorruptions:
    """Each corruption must trip its specific named check."""

    def test_unit_row(self):
        ring, twists = su2_level(4)
        cert = trivial_certificate(ring, twists)
        A = np.eye(5, dtype=np.int64)[[4, 1, 2, 3, 0]]  # unit row hits label 4
        report = full_report(corrupted(cert, aplus=A))
        assert "unit_row" in report.failures

    def test_dimension_vector(self):
        ring, twists = su2_level(4)
        cert = trivial_certificate(ring, twists)
        dims = list(cert.mm.dims)
        dims[2] = dims[2] + 0.5
        mm = BasedAlgebra(cert.mm.labels, cert.mm.unit, cert.mm.dual,
                          dict(cert.mm.structure), dims=dims)
        report = full_report(corrupted(cert, mm=mm))
        assert "dimension" in report.failures

    def test_homomorphism_entry(self):
        ring, twists = su2_level(4)
        cert = corrupted(trivial_certificate(ring, twists),
                         aplus=homomorphism_breaking_aplus(ring))
        report = full_report(cert)
        assert "homomorphism_plus" in report.failures
        assert "unit_row" not in report.failures
        assert "dimension" not in report.failures

    def test_z00(self):
        ring, twists = su2_level(4)
        cert = trivial_certificate(ring, twists)
        A = np.eye(5, dtype=np.int64)
        A[0, 1] = 1
        report = full_report(corrupted(cert, aplus=A, aminus=A))
        assert "z_matrix" in report.failures

    def test_degenerate_base(self):
        report = full_report(trivial_certificate(*cyclic_model(2, 0)))
        assert "nondegeneracy" in report.failures
        assert "generating" in report.failures
        assert "NondegeneracyRequired" in report["generating"].detail

    def test_all_ones_column_fails_dimensions(self):
        # both branchings sending everything to the extended unit kills
        # dimension preservation (and the homomorphism) on any base with
        # more than one label, while Z stays the all-ones matrix
        ring, twists = su2_level(2)
        cert = trivial_certificate(ring, twists)
        A = np.zeros((3, 3), dtype=np.int64)
        A[:, 0] = 1
        bad = corrupted(cert, aplus=A, aminus=A)
        assert np.array_equal(bad.aplus @ bad.aminus.T, np.ones((3, 3), dtype=int))
        report = full_report(bad)
        assert "dimension" in report.failures


class TestThetaBound:
    def test_trivial_theta_equality(self):
        ring, twists = su2_level(4)
        cert = trivial_certificate(ring, twists)
        theta = [0] * 5
        theta[ring.unit] = 1
        report = full_report(corrupted(cert, theta=theta))
        assert report.passed
        assert report["theta_bound"].passed

    def test_violation_detected(self):
        ring, twists = su2_level(4)
        theta = [0] * 5
        theta[ring.unit] = 1
        cert = corrupted(trivial_certificate(ring, twists),
                         aplus=homomorphism_breaking_aplus(ring), theta=theta)
        report = full_report(cert)
        assert "theta_bound" in report.failures

    def test_absent_by_default(self):
        report = full_report(trivial_certificate(*su2_level(2)))
        assert all(c.name != "theta_bound" for c in report.checks)
