"""
Tests for the reference-rule quadrature oracle.
"""

import pytest

from domains.verifier.oracle import COMPARED, quadrature_oracle


def test_entry_layout(family_params, serrin):
    entries = quadrature_oracle(family_params, serrin, size=1, seed=3, factor=2)
    assert [e["functional"] for e in entries] == list(COMPARED)
    for entry in entries:
        if entry["functional"] != "I3":
            scale = max(abs(entry["value"]), abs(entry["refined"]))
            expected = abs(entry["value"] - entry["refined"]) / scale if scale > 0 else 0.0
            assert entry["relative_difference"] == pytest.approx(expected)


@pytest.mark.slow
def test_production_rule_matches_reference_on_ensemble(family_params, serrin):
    entries = quadrature_oracle(family_params, serrin, size=20, seed=7, factor=4)
    assert len(entries) == 20 * len(COMPARED)
    worst = [(e["state"], e["functional"], e["relative_difference"])
             for e in entries if e["relative_difference"] > 1e-5]
    assert worst == []
