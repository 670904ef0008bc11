"""
Manual Verification Script for quasikit

Prints the classification tables, cohomology profiles and certificates of the
named complexes so the desk-scale results can be checked by eye.
"""

import sys

import pandas as pd

from quasikit.classification import classify_quasi, classify_ramified, ramified_core
from quasikit.cohomology import reduced_cohomology
from quasikit.complex_core import f_vector, staircase_product, suspension
from quasikit.generators import NAMED_CORPUS, book, cycle, generate, random_ramified_cores
from quasikit.obstruction import curve_product_obstruction, suspension_obstruction


def print_separator(title=""):
    """Print a formatted separator."""
    print("\n" + "=" * 70)
    if title:
        print(f"  {title}")
        print("=" * 70)
    print()


def verify_corpus_table():
    """Summarize every named complex in one table."""
    print_separator("NAMED CORPUS")

    rows = []
    for name in NAMED_CORPUS:
        K = generate(name)
        quasi = classify_quasi(K)
        rows.append({
            "complex": name,
            "f-vector": " ".join(str(c) for c in f_vector(K)),
            "cohomology": reduced_cohomology(K).describe(),
            "quasi": quasi.off_set_description,
            "ramified": classify_ramified(K).is_ramified,
        })
    print(pd.DataFrame(rows).to_string(index=False))
    return True


def verify_certificates():
    """Sphere, suspension and torus certificates."""
    print_separator("CERTIFICATES")

    cases = [
        (f"S{n} in {n} curves", curve_product_obstruction(generate(f"sphere_boundary:{n}"), n))
        for n in (2, 3, 4)
    ]
    for name in ("sphere_boundary:2", "torus7", "rp2_6", "wedge_spheres:2:2", "book:3"):
        cases.append((f"suspension({name}) in 3 curves", suspension_obstruction(generate(name), subject=name)))
    cases.append(("C3xC3 in 2 curves", curve_product_obstruction(staircase_product(cycle(3), cycle(3)), 2)))

    expected_inconclusive = {"suspension(book:3) in 3 curves", "C3xC3 in 2 curves"}
    success = True
    for label, certificate in cases:
        ok = certificate.is_certificate != (label in expected_inconclusive)
        success &= ok
        mark = "✓" if ok else "✗"
        print(f"{mark} {label:<40} {certificate.verdict.value:<14} b1 = {certificate.b1}")
        for reason in certificate.reasons:
            print(f"    - {reason}")
    return success


def verify_suspension_apexes():
    """Non-quasi faces of a suspended sphere and a suspended book."""
    print_separator("SUSPENSION APEXES")

    for name in ("sphere_boundary:2", "book:3"):
        report = classify_quasi(suspension(generate(name)))
        print(f"suspension({name}):")
        print(f"   {report.off_set_description}")
        print(f"   apex only: {report.apex_only}")
        print(f"   non-quasi faces: {len(report.non_quasi_faces)}")
    return True


def verify_random_cores():
    """Sizes of the seeded random ramified 3-complexes."""
    print_separator("RANDOM RAMIFIED 3-COMPLEXES")

    cores = random_ramified_cores(10, seed=0)
    success = True
    print(f"{'Seed':<8} {'Vertices':<10} {'Tetrahedra':<12} {'Quasi off vertices':<20}")
    print("-" * 70)
    for seed, K in cores:
        report = classify_quasi(K)
        ok = all(c.quasi for c in report.classifications if c.carrier_dim >= 1)
        success &= ok
        print(f"{seed:<8} {len(K.labels):<10} {len(K.facets):<12} {'yes' if ok else 'NO':<20}")

    core = ramified_core(book(3))
    print(f"\nramified core of book:3: {'empty' if core.is_empty else core.labeled_facets()}")
    return success


def main():
    """Run every verification."""
    print_separator("QUASIKIT MANUAL VERIFICATION")

    results = [
        verify_corpus_table(),
        verify_certificates(),
        verify_suspension_apexes(),
        verify_random_cores(),
    ]

    print_separator("SUMMARY")
    if all(results):
        print("✓ All verifications matched")
    else:
        print("✗ Some verifications did not match")
    return all(results)


if __name__ == "__main__":
    success = main()
    sys.exit(0 if success else 1)
