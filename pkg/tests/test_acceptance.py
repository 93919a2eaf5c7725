"""End-to-end claim catalog, one test per check.

Each test prints a single PASS/FAIL line tagged with the check id (run with
``pytest -s`` to see them inline) and fails with the per-item details when a
check breaks.  The checks themselves live in :mod:`meanlab.suite` so the CLI
``suite paper`` command and this file stay in lockstep.
"""

from meanlab import suite
from meanlab.orderlab import default_grid

GRID = default_grid()


def _run(check_id, fn):
    outcome = fn(GRID)
    print(("PASS" if outcome.passed else "FAIL") + f" {check_id}")
    assert outcome.passed, "\n".join((check_id,) + tuple(outcome.details))
    return outcome


def test_01_fundamental_chain_is_strict():
    _run("delta0-chain", suite.check_delta0_chain)


def test_02_characteristic_number_table():
    _run("sigma-table", suite.check_sigma_table)


def test_03_phi_closed_forms_match_oracle():
    _run("phi-closed-forms", suite.check_phi_closed_forms)


def test_04_genlog_constants_and_exponents():
    _run("T1.1-genlog-constants", suite.check_genlog_constants)


def test_05_holder_constants_and_concavity():
    _run("T2.2-holder-constants", suite.check_holder_constants)


def test_06_stolarsky_identity_and_constants():
    _run("T3.2-stolarsky-constants", suite.check_stolarsky_constants)


def test_07_cancelling_verdicts():
    _run("T2.1-T4.1-cancelling", suite.check_cancelling_verdicts)


def test_08_lambda_sandwich_and_ladder():
    _run("lambda-sandwich", suite.check_lambda_sandwich)


def test_09_series_coefficients():
    _run("series-coefficients", suite.check_series_coefficients)


def test_10_seiffert_bounds():
    _run("seiffert-bounds", suite.check_seiffert_bounds)


def test_11_oracle_agreement():
    _run("oracle-agreement", suite.check_oracle_agreement)


def test_suite_registry_is_complete():
    # the ids above must be exactly the registered suite, in order
    assert [cid for cid, _ in suite.SUITE_CHECKS] == [
        "delta0-chain",
        "sigma-table",
        "phi-closed-forms",
        "T1.1-genlog-constants",
        "T2.2-holder-constants",
        "T3.2-stolarsky-constants",
        "T2.1-T4.1-cancelling",
        "lambda-sandwich",
        "series-coefficients",
        "seiffert-bounds",
        "oracle-agreement",
    ]


def test_run_suite_end_to_end():
    outcomes = suite.run_suite()
    assert len(outcomes) == 11
    assert all(o.passed for o in outcomes), [
        (o.check_id, o.details) for o in outcomes if not o.passed
    ]
