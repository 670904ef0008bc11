"""
Unit tests for the Facet I/O Module

Test coverage:
- Text facet lists: comments, headers, duplicates, dropped faces
- JSON mirror
- Parse errors with line numbers
- Serialization round trips over the corpus
- Analysis reports: structure, determinism, text rendering
"""

import json
import tempfile
import unittest
from pathlib import Path

from quasikit.complex_core import f_vector, is_isomorphic, suspension
from quasikit.errors import FacetParseError
from quasikit.facet_io import (
    build_analysis_report,
    parse_document,
    parse_facets,
    read_complex,
    render_report_json,
    render_report_text,
    serialize_facets,
    write_complex,
)
from quasikit.generators import book, corpus, cycle, sphere_boundary, torus7


class TestParseText(unittest.TestCase):
    """Test the text facet-list format."""

    def test_two_triangles(self):
        """Test two triangles sharing the edge ab."""
        K = parse_facets("a b c\na b d\n")
        self.assertEqual(f_vector(K), (4, 5, 2))
        self.assertIn(K.simplex("a", "b"), K)

    def test_integer_labels(self):
        """Test an integer-labelled 3-cycle."""
        self.assertTrue(is_isomorphic(parse_facets("1 2\n2 3\n3 1\n"), cycle(3)))

    def test_face_of_facet_is_dropped_with_warning(self):
        """Test a listed face of a facet changes nothing but warns."""
        doc = parse_document("a b c\nb c\n")
        self.assertEqual(doc.simplicial_complex, parse_facets("a b c\n"))
        self.assertEqual(len(doc.warnings), 1)
        self.assertIn("{b,c}", doc.warnings[0])

    def test_duplicates_collapse(self):
        """Test repeated facets in any vertex order collapse silently."""
        doc = parse_document("a b\nb a\na b\n")
        self.assertEqual(len(doc.facets), 1)
        self.assertEqual(doc.warnings, [])

    def test_comments_and_headers(self):
        """Test headers, full-line and trailing comments."""
        text = "# name: disc\n# dimension: 2\n# apexes: c\n# a comment\na b c  # trailing\n\n"
        doc = parse_document(text)
        self.assertEqual(doc.name, "disc")
        self.assertEqual(doc.dimension_hint, 2)
        self.assertEqual(doc.simplicial_complex.apex_labels, ("c",))
        self.assertEqual(doc.warnings, [])

    def test_dimension_mismatch_warns(self):
        """Test a wrong dimension header is reported."""
        doc = parse_document("# dimension: 3\na b c\n")
        self.assertEqual(len(doc.warnings), 1)
        self.assertIn("Dimension header", doc.warnings[0])

    def test_malformed_line_reports_line_number(self):
        """Test a repeated vertex is reported with its line."""
        with self.assertRaises(FacetParseError) as ctx:
            parse_facets("# header\na b\nc c\n")
        self.assertEqual(ctx.exception.line_number, 3)
        self.assertIn("line 3", str(ctx.exception))

    def test_bad_dimension_header(self):
        """Test a non-integer dimension header is an error."""
        with self.assertRaises(FacetParseError) as ctx:
            parse_facets("# dimension: two\na b\n")
        self.assertEqual(ctx.exception.line_number, 1)

    def test_empty_input(self):
        """Test empty and comment-only documents are errors."""
        for text in ("", "   \n", "# only a comment\n"):
            with self.assertRaises(FacetParseError):
                parse_facets(text)


class TestParseJson(unittest.TestCase):
    """Test the JSON mirror."""

    def test_json_cycle(self):
        """Test a JSON 3-cycle with integer labels."""
        K = parse_facets('{"facets": [[1, 2], [2, 3], [3, 1]]}')
        self.assertTrue(is_isomorphic(K, cycle(3)))

    def test_json_header_fields(self):
        """Test name, dimension and apexes in JSON."""
        doc = parse_document('{"name": "s0", "dimension": 0, "apexes": ["a"], "facets": [["a"], ["b"]]}')
        self.assertEqual(doc.name, "s0")
        self.assertEqual(doc.simplicial_complex.apex_labels, ("a",))

    def test_invalid_json(self):
        """Test broken JSON and wrong shapes are parse errors."""
        for text in ('{"facets": [[1, 2]', '{"faces": []}', '{"facets": [[1.5, 2]]}', '{"facets": [3]}'):
            with self.assertRaises(FacetParseError):
                parse_facets(text)


class TestSerialization(unittest.TestCase):
    """Test serialization and files."""

    def test_text_layout(self):
        """Test headers followed by sorted facets."""
        text = serialize_facets(book(2), name="book2")
        self.assertEqual(text, "# name: book2\n# dimension: 2\n0 1 2\n0 1 3\n")

    def test_round_trip_over_corpus(self):
        """Test parse(serialize(K)) gives K back in both formats."""
        samples = dict(corpus())
        samples["suspended torus"] = suspension(torus7())
        for name, K in samples.items():
            for fmt in ("text", "json"):
                again = parse_facets(serialize_facets(K, name=name, fmt=fmt))
                self.assertEqual(again, K, (name, fmt))
                self.assertEqual(again.apex_labels, K.apex_labels, (name, fmt))
                self.assertTrue(is_isomorphic(again, K), (name, fmt))

    def test_canonical_documents_are_fixed_points(self):
        """Test serialize(parse(doc)) == doc for a canonical document."""
        doc = serialize_facets(sphere_boundary(2), name="S2")
        self.assertEqual(serialize_facets(parse_facets(doc), name="S2"), doc)

    def test_files(self):
        """Test writing and reading text and JSON files."""
        with tempfile.TemporaryDirectory() as tmp:
            for filename in ("t.fl", "t.json"):
                path = write_complex(torus7(), Path(tmp) / filename, name="torus7")
                doc = read_complex(path)
                self.assertEqual(doc.simplicial_complex, torus7())
                self.assertEqual(doc.name, "torus7")
            Path(tmp, "anon.fl").write_text("a b\n", encoding="utf-8")
            self.assertEqual(read_complex(Path(tmp, "anon.fl")).name, "anon")

    def test_unknown_format(self):
        """Test an unknown serialization format is rejected."""
        with self.assertRaises(ValueError):
            serialize_facets(cycle(3), fmt="xml")


class TestAnalysisReport(unittest.TestCase):
    """Test analysis reports."""

    def test_structure(self):
        """Test the fixed key order and the sphere certificate."""
        report = build_analysis_report(sphere_boundary(2), name="S2")
        self.assertEqual(list(report), ["schema_version", "name", "summary", "cohomology", "quasi",
                                        "ramified", "certificate", "warnings"])
        self.assertEqual(report["schema_version"], "1.0")
        self.assertEqual(report["summary"]["f_vector"], [4, 6, 4])
        self.assertEqual(report["cohomology"]["groups"]["2"], {"free_rank": 1, "torsion": []})
        self.assertEqual(report["certificate"]["verdict"], "NotEmbeddable")

    def test_zero_dimensional_has_no_certificate(self):
        """Test two points get no default certificate."""
        report = build_analysis_report(parse_facets("a\nb\n"))
        self.assertIsNone(report["certificate"])

    def test_deterministic_bytes(self):
        """Test two runs render byte-identical JSON."""
        first = render_report_json(build_analysis_report(book(3), name="book3"))
        second = render_report_json(build_analysis_report(book(3), name="book3"))
        self.assertEqual(first, second)
        self.assertEqual(json.loads(first)["name"], "book3")

    def test_text_rendering(self):
        """Test the text report lists the verdict and the face table without colour."""
        text = render_report_text(build_analysis_report(book(3), name="book3"), color=False)
        self.assertIn("== book3 ==", text)
        self.assertIn("NO", text)
        self.assertIn("Inconclusive", text)
        self.assertNotIn("\033[", text)

    def test_coloured_rendering(self):
        """Test colour codes appear only when requested."""
        text = render_report_text(build_analysis_report(sphere_boundary(2), name="S2"), color=True)
        self.assertIn("\033[31mNotEmbeddable\033[0m", text)


if __name__ == '__main__':
    unittest.main()
