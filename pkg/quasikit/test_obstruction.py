"""
Unit tests for the Obstruction Module

Test coverage:
- Sphere certificates for 2 and 3 curves
- Negative controls (tori, circles) and the dimension mismatch policy
- Failed hypotheses: disconnected, impure, non-quasi off a finite set
- Suspension certificates (sphere, torus, projective plane, wedge of spheres)
- Reduction of disconnected bases to one component
- Re-verification of serialized certificates
"""

import json
import unittest

from quasikit.complex_core import SimplicialComplex
from quasikit.errors import TopologyError
from quasikit.generators import book, cycle, rp2_6, sphere_boundary, torus, torus7, wedge_spheres
from quasikit.obstruction import (
    Verdict,
    curve_product_obstruction,
    reverify_certificate,
    suspension_obstruction,
)


def two_disjoint_spheres():
    first = sphere_boundary(2).labeled_facets()
    second = [tuple(f"b{v}" for v in facet) for facet in first]
    return SimplicialComplex(list(first) + second)


class TestCurveProductObstruction(unittest.TestCase):
    """Test certificates for products of n curves."""

    def test_spheres(self):
        """Test n-spheres do not embed in a product of n curves (n = 2, 3)."""
        for n in (2, 3):
            certificate = curve_product_obstruction(sphere_boundary(n), n, subject=f"S{n}")
            self.assertEqual(certificate.verdict, Verdict.NOT_EMBEDDABLE, n)
            self.assertEqual(certificate.b1, 0)
            self.assertTrue(certificate.trace.quasi_everywhere)
            self.assertTrue(certificate.trace.satisfied)

    def test_torus_is_inconclusive(self):
        """Test the staircase 2-torus is never certified for 2 curves."""
        certificate = curve_product_obstruction(torus(2), 2)
        self.assertEqual(certificate.verdict, Verdict.INCONCLUSIVE)
        self.assertEqual(certificate.b1, 2)
        self.assertTrue(certificate.trace.satisfied)
        self.assertTrue(any("rank H^1 = 2 >= 2" in r for r in certificate.reasons))

    def test_tori_controls(self):
        """Test staircase m-tori with m = 1, 2 stay Inconclusive for m curves."""
        for m in (1, 2):
            self.assertEqual(curve_product_obstruction(torus(m), m).verdict, Verdict.INCONCLUSIVE, m)

    def test_circle(self):
        """Test a circle is a curve, so one factor is inconclusive."""
        certificate = curve_product_obstruction(cycle(5), 1)
        self.assertEqual(certificate.verdict, Verdict.INCONCLUSIVE)
        self.assertEqual(certificate.b1, 1)

    def test_dimension_mismatch(self):
        """Test n different from dim K is Inconclusive, never an error."""
        for n in (1, 3, 4):
            certificate = curve_product_obstruction(sphere_boundary(2), n)
            self.assertEqual(certificate.verdict, Verdict.INCONCLUSIVE, n)
            self.assertFalse(certificate.trace.dimension_matches)
            self.assertIn("dimension mismatch", certificate.reasons[0])

    def test_larger_counts_only_fail_on_dimension(self):
        """Test a certified sphere stays Inconclusive for more curves, for the dimension alone."""
        K = sphere_boundary(3)
        self.assertEqual(curve_product_obstruction(K, 3).verdict, Verdict.NOT_EMBEDDABLE)
        for bigger in range(4, 7):
            certificate = curve_product_obstruction(K, bigger)
            self.assertEqual(certificate.verdict, Verdict.INCONCLUSIVE, bigger)
            self.assertEqual(len(certificate.reasons), 1, bigger)
            self.assertTrue(certificate.reasons[0].startswith("dimension mismatch"), bigger)
            trace = certificate.trace
            self.assertTrue(trace.connected and trace.pure and trace.off_finite, bigger)
            self.assertLess(certificate.b1, bigger)

    def test_book_is_not_off_finite(self):
        """Test the book fails the off-a-finite-set hypothesis."""
        certificate = curve_product_obstruction(book(3), 2)
        self.assertEqual(certificate.verdict, Verdict.INCONCLUSIVE)
        self.assertFalse(certificate.trace.off_finite)
        self.assertTrue(any("not quasi off a finite set" in r for r in certificate.reasons))

    def test_disconnected(self):
        """Test two disjoint spheres fail the connectedness hypothesis."""
        certificate = curve_product_obstruction(two_disjoint_spheres(), 2)
        self.assertEqual(certificate.verdict, Verdict.INCONCLUSIVE)
        self.assertFalse(certificate.trace.connected)

    def test_impure(self):
        """Test an extra dangling edge fails purity."""
        K = SimplicialComplex(list(sphere_boundary(2).labeled_facets()) + [("0", "x")])
        certificate = curve_product_obstruction(K, 2)
        self.assertEqual(certificate.verdict, Verdict.INCONCLUSIVE)
        self.assertFalse(certificate.trace.pure)

    def test_invalid_input(self):
        """Test the empty complex and non-positive n raise TopologyError."""
        with self.assertRaises(TopologyError):
            curve_product_obstruction(SimplicialComplex(), 2)
        with self.assertRaises(TopologyError):
            curve_product_obstruction(sphere_boundary(2), 0)

    def test_certificate_soundness(self):
        """Test a NotEmbeddable verdict implies every hypothesis and b1 < n."""
        for K, n in ((sphere_boundary(2), 2), (torus7(), 2), (book(3), 2), (wedge_spheres(2, 2), 2)):
            certificate = curve_product_obstruction(K, n)
            if certificate.is_certificate:
                trace = certificate.trace
                self.assertTrue(trace.connected and trace.pure and trace.off_finite)
                self.assertLess(certificate.b1, n)

    def test_wedge_of_spheres(self):
        """Test the wedge of two 2-spheres is certified for 2 curves."""
        self.assertEqual(curve_product_obstruction(wedge_spheres(2, 2), 2).verdict, Verdict.NOT_EMBEDDABLE)


class TestSuspensionObstruction(unittest.TestCase):
    """Test the suspension pipeline."""

    def test_named_bases(self):
        """Test suspensions of quasi 2-manifolds are certified for 3 curves."""
        for name, K in (("S2", sphere_boundary(2)), ("torus7", torus7()),
                        ("rp2_6", rp2_6()), ("wedge", wedge_spheres(2, 2))):
            certificate = suspension_obstruction(K, subject=name)
            self.assertEqual(certificate.verdict, Verdict.NOT_EMBEDDABLE, name)
            self.assertEqual(certificate.n, 3)
            self.assertEqual(certificate.b1, 0)
            self.assertEqual(certificate.kind, "suspension")
            self.assertTrue(certificate.base["quasi_everywhere"])
            self.assertEqual(certificate.subject, f"suspension({name})")

    def test_book_base(self):
        """Test a non-quasi base is Inconclusive with its offending faces listed."""
        certificate = suspension_obstruction(book(3), subject="book3")
        self.assertEqual(certificate.verdict, Verdict.INCONCLUSIVE)
        self.assertEqual(len(certificate.base["non_quasi_faces"]), 11)
        self.assertTrue(any("not a quasi 2-manifold" in r for r in certificate.reasons))

    def test_disconnected_base(self):
        """Test a disconnected base reduces to its first component."""
        certificate = suspension_obstruction(two_disjoint_spheres())
        self.assertEqual(certificate.verdict, Verdict.NOT_EMBEDDABLE)
        self.assertEqual(certificate.base["components"], 2)
        self.assertTrue(certificate.reasons[0].startswith("disconnected"))
        self.assertEqual(len(certificate.subject_facets), 8)

    def test_zero_dimensional_base(self):
        """Test two points (n = 0) are outside the pipeline."""
        certificate = suspension_obstruction(SimplicialComplex([["a"], ["b"]]))
        self.assertEqual(certificate.verdict, Verdict.INCONCLUSIVE)


class TestReverification(unittest.TestCase):
    """Test independent re-verification of certificates."""

    def test_certificates_reverify(self):
        """Test sphere and suspension certificates pass from their dictionaries."""
        self.assertTrue(reverify_certificate(curve_product_obstruction(sphere_boundary(3), 3)))
        data = json.loads(json.dumps(suspension_obstruction(torus7()).to_dict()))
        self.assertTrue(reverify_certificate(data))

    def test_inconclusive_reverifies(self):
        """Test an honest Inconclusive verdict also re-verifies."""
        self.assertTrue(reverify_certificate(curve_product_obstruction(torus(2), 2)))

    def test_tampered_certificates_fail(self):
        """Test edited b1, verdicts and subjects are caught."""
        data = curve_product_obstruction(sphere_boundary(2), 2).to_dict()
        data["b1"] = 1
        self.assertFalse(reverify_certificate(data))

        forged = curve_product_obstruction(torus(2), 2).to_dict()
        forged["verdict"] = "NotEmbeddable"
        self.assertFalse(reverify_certificate(forged))

        broken = curve_product_obstruction(sphere_boundary(2), 2).to_dict()
        broken["subject"]["facets"] = []
        self.assertFalse(reverify_certificate(broken))

    def test_forged_suspension_base(self):
        """Test a suspension certificate whose base is not quasi is rejected."""
        data = suspension_obstruction(sphere_boundary(2)).to_dict()
        data["base"]["facets"] = [list(f) for f in book(3).labeled_facets()]
        self.assertFalse(reverify_certificate(data))

    def test_serialization_is_deterministic(self):
        """Test two runs give byte-identical JSON."""
        first = json.dumps(suspension_obstruction(rp2_6()).to_dict(), indent=2)
        second = json.dumps(suspension_obstruction(rp2_6()).to_dict(), indent=2)
        self.assertEqual(first, second)


if __name__ == '__main__':
    unittest.main()
