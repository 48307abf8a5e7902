"""Acceptance suite: one test per criterion, each printing its pass/fail line.

Every check runs at its stated tolerance (exact unless noted as a derived
band); the implementations live in indecomp.verify so the CLI `verify`
subcommand runs the identical code.
"""

from indecomp import verify


def _run(check):
    result = check()
    print(result.line())
    assert result.passed, result.details
    return result


def test_acceptance_01_squarefree_table():
    """Squarefree-norm table over all 44 certified a in [-1, 50], exact."""
    _run(verify.check_squarefree_table)


def test_acceptance_02_inventory_equals_search():
    """Closed-form inventories equal the exhaustive window search for
    a in {-1, 0, 1, 2, 4, 7, 8}, exact set equality up to unit corners."""
    _run(verify.check_inventory_vs_search)


def test_acceptance_03_trace_certificates():
    """Triangle elements have minimal trace 1, the exceptional element 2."""
    _run(verify.check_trace_certificates)


def test_acceptance_04_family_traces():
    """Ennola a=3: every non-unit indecomposable has minimal trace 2;
    Thomas a=3: 11*rho - 2*rho^2 has minimal trace 3."""
    _run(verify.check_family_traces)


def test_acceptance_05_count_ground_truth():
    """count_exact == count_bruteforce for a in {7, 8} and every X <= a^2."""
    _run(verify.check_count_ground_truth)


def test_acceptance_06_count_scaling():
    """count_fast(a, a^(1+delta)) / a^(2 delta/3) stays within the derived
    bands (ratio far below 10) over a in {50, 100, 200, 400, 800}."""
    result = _run(verify.check_count_scaling)
    for key, info in result.data.items():
        print(f"  delta={key}: counts {info['counts']} ratios {info['ratios']}")


def test_acceptance_07_rank_formulas():
    """upper 228 and classical lower 13 at a=7; nonclassical branch switches
    exactly at a = 21."""
    _run(verify.check_rank_formulas)


def test_acceptance_08_quadratic_suite():
    """Semiconvergent inventories match the rank-2 search for the tested D;
    all trace-one certificates pass, with the 1 mod 4 scaling resolved."""
    _run(verify.check_quadratic_suite)


def test_acceptance_09_identity_suites():
    """Norm-of-sum expansion and superadditivity on 10^4 random pairs,
    row-norm monotonicity to a = 30, convergent determinant identities."""
    _run(verify.check_identities)


def test_acceptance_10_universality_windows():
    """Constructive universality windows (a, bound) in {(1, 6), (2, 4)}."""
    _run(verify.check_universality_windows)
