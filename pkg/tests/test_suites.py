"""The documented example suites and the random property suites."""

from __future__ import annotations

import pytest

from boxcorr import suites


def verdicts(rep):
    return {r.property_name: r.verdict for r in rep.walk()}


def test_golden_first_example_passes_and_refutes_base_usc():
    rep = suites.golden_example_2_1()
    assert rep.passed
    v = verdicts(rep)
    assert v["original-usc-refuted"] == "pass"
    assert v["t-upper-constant@eps=0.1"] == "pass"
    assert v["adherence-usc@eps=1"] == "pass"


def test_golden_first_example_tracks_coarser_grid():
    rep = suites.golden_example_2_1(step=0.125)
    assert rep.passed
    assert rep.parameters["step"] == 0.125


def test_golden_second_example_pre_adherence_hole():
    rep = suites.golden_example_2_2()
    assert rep.passed
    v = verdicts(rep)
    assert v["pre-adherence-at-1@eps=0.5"] == "pass"
    assert v["pre-adherence-at-1@eps=2.5"] == "pass"


def test_golden_equilibrium_example():
    rep = suites.golden_example_4_1()
    assert rep.passed
    names = {r.property_name for r in rep.walk()}
    assert "equilibrium-at-known-point" in names
    assert "search-equilibria" in names


def test_golden_selection_theorem():
    rep = suites.golden_theorem_4_3()
    assert rep.passed


def test_fixed_point_scheme_children():
    rep = suites.theorem_3_1_suite()
    assert rep.passed
    names = [c.property_name for c in rep.children]
    assert names == ["single-factor-chain", "composite-chain",
                     "construction-chain"]


def test_sum_intersection_suite_deterministic():
    a = suites.lemma_2_1_suite(count=6, seed=7)
    b = suites.lemma_2_1_suite(count=6, seed=7)
    assert a.passed and b.passed
    assert verdicts(a) == verdicts(b)
    assert len(a.children) == 12  # base-usc plus sum-clip-usc per map


def test_sum_intersection_suite_seed_changes_instances():
    a = suites.lemma_2_1_suite(count=4, seed=1)
    b = suites.lemma_2_1_suite(count=4, seed=2)
    pa = [c.parameters for c in a.children]
    pb = [c.parameters for c in b.children]
    assert pa != pb


def test_chain_containment_suite():
    rep = suites.lemma_2_2_suite(count=10)
    assert rep.passed
    names = [c.property_name for c in rep.children]
    assert names[:3] == ["builtin-first", "builtin-variant", "builtin-composite"]
    assert len(names) == 13
    # built-ins run at radius zero, random instances at the surrogate radius
    for c in rep.children[:3]:
        assert c.parameters["radius"] == 0.0
    for c in rep.children[3:]:
        assert c.parameters["radius"] > 0.0


def test_radner_pipeline_suite():
    rep = suites.radner_suite()
    assert rep.passed
    names = [c.property_name for c in rep.children]
    assert names == ["constraint-inclusion", "certificates-clear",
                     "autarky-equilibrium"]


def test_reproduce_paper_step_guard():
    with pytest.raises(ValueError, match="divide"):
        suites.reproduce_paper(step=0.3)


def test_reproduce_paper_coarse_step():
    rep = suites.reproduce_paper(step=0.5)
    assert rep.passed
    names = [c.property_name for c in rep.children]
    assert names == ["example-2.1", "example-2.2", "example-4.1",
                     "hypotheses-4.3", "fixed-point-scheme",
                     "sum-intersection-usc", "chain-containment",
                     "info-economy-pipeline"]
