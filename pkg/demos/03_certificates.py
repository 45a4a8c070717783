"""Triangular families of torus knots for a fixed odd prime.

For m_i = p^(2^n_i) (skipping the indices where p^(2^n) -+ 1 is itself
a prime power), a split m_i + 1 = a_i b_i k_i gives a knot T(a_i, b_i)
with delta_{m_i} != 0 while every later delta_{m_j} vanishes. The
verifier re-derives each value from the torsion route.
"""

from concord import independence_certificate, verify_certificate

for p in (3, 5, 7, 11):
    cert = independence_certificate(p, 2)
    report = verify_certificate(cert)
    excluded = sorted(cert.exclusions.excluded)
    print(f"p = {p}: excluded n {excluded}, {report.checks} checks, valid = {bool(report)}")
    for e in cert.entries:
        print(f"    n = {e.n}: m = {e.m}, m + 1 = {e.a} * {e.b} * {e.k} -> T({e.a},{e.b})")
