import json
from fractions import Fraction

import numpy as np
import pytest

from fatpart.dse import dse_partition_function
from fatpart.ribbon import CornerAssignment, CornerSpec, builtin_graph
from fatpart.series import (
    ContentFunction,
    ModelConfig,
    classify_solvability,
    config_from_dict,
    hyp_tau_series,
    load_config,
    mc_partition_function,
    mixed_series,
    schur_average_relation_check,
    zu_mm_series,
)
from fatpart.partitions import Partition
from fatpart.symfun import Specialization


def _gamma1(l, other, N=2, face="miwa:-:3/10", cutoff=8):
    A = CornerAssignment({1: CornerSpec.projector(l), -1: other}, N)
    return ModelConfig(builtin_graph("gamma1"), A, [face], cutoff)


def test_content_function_parse():
    r = ContentFunction.parse("1/2*(2+c)/(c-1)^2")
    assert r.scale == Fraction(1, 2) and r.zeros == (2,) and r.poles == (-1, -1)
    assert r(0) == Fraction(1)
    assert r(3) == Fraction(5, 8)
    assert ContentFunction.parse(str(r)) == r
    assert ContentFunction.parse("1") == ContentFunction()
    assert ContentFunction.parse("(c)").zeros == (0,)
    with pytest.raises(ValueError):
        ContentFunction.parse("(2+x)")


def test_content_function_pole_message():
    r = ContentFunction.parse("1/(c-1)")
    with pytest.raises(ValueError, match=r"pole at content 1: cell \(1,2\)"):
        r.product(Partition((2,)))


def test_content_function_bounds():
    assert ContentFunction.parse("(2+c)*(3+c)").length_bound() == 2
    assert ContentFunction.parse("(c-3)").width_bound() == 3
    assert ContentFunction.parse("(1/2+c)").length_bound() is None


def test_kp_pinf_partial_sum():
    sv = hyp_tau_series("kp", "1", "pinf", None, 3)
    assert sv.value == Fraction(11, 3)
    assert not sv.truncated_exactly


def test_kp_single_variable_is_rising_factorial_series():
    # only one-row partitions survive, with s_(m)(x) = x^m, giving sum_m (a)(a+1)...(a+m-1) x^m
    a, x = Fraction(3, 2), Fraction(1, 3)
    sv = hyp_tau_series("kp", f"({a}+c)", Specialization.miwa([x]), None, 6)
    want, coef = Fraction(0), Fraction(1)
    for m in range(7):
        want += coef * x**m
        coef = coef * (a + m)
    assert sv.value == want


def test_dkp_two_variables_geometric():
    # fat partitions of length <= 2 are (m, m) with s = (xy)^m
    sv = hyp_tau_series("dkp", "1", "miwa:+:1/2,1/3", 2, 6)
    assert sv.value == Fraction(259, 216)
    sv = hyp_tau_series("dkp", "1", "miwa:+:1/2,1/3", 2, 40)
    assert abs(sv.value - Fraction(6, 5)) < Fraction(1, 10**12)


def test_hyp_tau_errors():
    with pytest.raises(ValueError):
        hyp_tau_series("bkp", "1", "pinf", None, 3)
    with pytest.raises(ValueError):
        hyp_tau_series("dkp", "1", "pinf", None, 3, extra=Specialization.pinf())


def test_exact_truncation_flag():
    sv = hyp_tau_series("kp", "(2+c)", "miwa:-:1/2,1/3", None, 4)
    assert sv.truncated_exactly
    sv = hyp_tau_series("kp", "(2+c)", "miwa:-:1/2,1/3", None, 3)
    assert not sv.truncated_exactly


def test_zu_mm_gamma1_value():
    # lam in {(), (1), (2)}: 1 - 3/5 + 27/200
    sv = zu_mm_series(_gamma1(1, CornerSpec.identity()))
    assert sv.value == Fraction(107, 200)
    assert sv.truncated_exactly and sv.term_count == 3


def test_zu_mm_rejects_averaged():
    with pytest.raises(ValueError):
        zu_mm_series(_gamma1(1, CornerSpec.placeholder("sp:k=1")))


@pytest.mark.parametrize("k,l", [(1, 1), (1, 2), (2, 3)])
def test_mixed_sp_equals_dkp(k, l):
    N = 2 * k
    p = Specialization.explicit(tuple(Fraction(i + 1, 7) * (-1) ** i for i in range(8)))
    cfg = _gamma1(l, CornerSpec.placeholder(f"sp:k={k}"), N=N, face=p)
    lhs = mixed_series(cfg).value
    rhs = hyp_tau_series("dkp", f"1/{N}*({l}+c)", Specialization.scaled(N, p), N, 8).value
    assert lhs == rhs


def test_borodin_identity():
    p = Specialization.explicit(tuple(Fraction(1, i + 2) for i in range(8)))
    A = CornerAssignment({1: CornerSpec.placeholder("sp:k=1"), -1: CornerSpec.identity()}, 2)
    lhs = mixed_series(ModelConfig(builtin_graph("gamma2"), A, [p, "pinf"], 8)).value
    assert lhs == dse_partition_function(Specialization.scaled(2, p), 1, 8).value


def test_orth_direct_equals_dual():
    p = Specialization.explicit(tuple(Fraction(3 - i, 5) for i in range(10)))
    cfg = _gamma1(2, CornerSpec.placeholder("orth:N=3"), N=3, face=p, cutoff=10)
    assert mixed_series(cfg).value == mixed_series(cfg, orth_form="dual").value
    with pytest.raises(ValueError):
        mixed_series(cfg, orth_form="sideways")
    sp = _gamma1(1, CornerSpec.placeholder("sp:k=1"))
    with pytest.raises(ValueError):
        mixed_series(sp, orth_form="dual")


def test_config_validation():
    with pytest.raises(ValueError):
        ModelConfig(builtin_graph("gamma1"), CornerAssignment.uniform(builtin_graph("gamma1"), 2), []).check()
    bad = CornerAssignment({1: CornerSpec.projector(1), -1: CornerSpec.placeholder("sp:k=2")}, 2)
    with pytest.raises(ValueError):
        ModelConfig(builtin_graph("gamma1"), bad, ["pinf"]).check()
    g5 = builtin_graph("gamma5")
    two = CornerAssignment({1: CornerSpec.placeholder("sp:k=1"), -1: CornerSpec.projector(1),
                            2: CornerSpec.identity(), -2: CornerSpec.identity()}, 2)
    with pytest.raises(ValueError):
        ModelConfig(g5, two, ["pinf", "pinf"]).averaged_vertices
    gin = _gamma1(1, CornerSpec.placeholder("gin:N=2"))
    with pytest.raises(ValueError):
        mixed_series(gin)


def test_config_from_dict_and_file(tmp_path):
    d = {"graph": "gamma1", "N": 2, "faces": ["miwa:-:3/10"], "cutoff": 8,
         "corners": {"1": {"type": "J", "l": 1}}}
    cfg = config_from_dict(d)
    assert zu_mm_series(cfg).value == Fraction(107, 200)
    graph = {"n": 1, "faces": [[1, -1]], "vertices": [[1], [-1]], "N": 2,
             "corners": {"1": {"type": "J", "l": 1}, "-1": {"type": "identity"}}}
    (tmp_path / "g.json").write_text(json.dumps(graph))
    (tmp_path / "c.json").write_text(json.dumps({"graph": "g.json", "faces": ["miwa:-:3/10"]}))
    assert zu_mm_series(load_config(tmp_path / "c.json")).value == Fraction(107, 200)
    inline = config_from_dict({"graph": graph, "faces": ["miwa:-:3/10"]})
    assert zu_mm_series(inline).value == Fraction(107, 200)


def test_classifier_rules():
    ok = _gamma1(1, CornerSpec.placeholder("sp:k=1"))
    assert classify_solvability(ok).exactly_solvable
    torus = builtin_graph("torus")
    t = ModelConfig(torus, CornerAssignment.uniform(torus, 2), ["miwa:+:1/2"])
    rep = classify_solvability(t)
    assert rep.solvable and not rep.exactly_solvable and any("genus 1" in r for r in rep.reasons)
    g2 = builtin_graph("gamma2")
    two_general = ModelConfig(g2, CornerAssignment.uniform(g2, 2), ["miwa:+:1/2", "miwa:-:1/3"])
    assert not classify_solvability(two_general).exactly_solvable
    nonproj = ModelConfig(builtin_graph("gamma1"),
                          CornerAssignment({1: CornerSpec.explicit([[2, 0], [0, 1]]), -1: CornerSpec.identity()}, 2),
                          ["pinf"])
    assert not classify_solvability(nonproj).exactly_solvable
    both = _gamma1(1, CornerSpec.placeholder("sp:k=1"))
    both = ModelConfig(both.graph, both.assignment.replace({1: CornerSpec.placeholder("sp:k=1")}), ["pinf"])
    strict, loose = classify_solvability(both), classify_solvability(both, permissive=True)
    assert not strict.exactly_solvable
    assert loose.exactly_solvable and loose.warnings


def test_mc_zu_mm_gamma1():
    cfg = _gamma1(1, CornerSpec.identity())
    est = mc_partition_function(cfg, 40000, seed=3)
    assert est.diagnostics["valid"] and est.diagnostics["rejected"] == 0
    assert est.agrees_with(107 / 200, 4.0)


def test_mc_deterministic_across_threads():
    cfg = _gamma1(1, CornerSpec.placeholder("sp:k=1"), face="miwa:-:1/3")
    runs = [mc_partition_function(cfg, 6000, seed=8, threads=t) for t in (1, 4, 2)]
    for r in runs[1:]:
        assert (r.mean, r.stderr, r.diagnostics) == (runs[0].mean, runs[0].stderr, runs[0].diagnostics)


def test_mc_non_integer_power_flags():
    # pa with a = 1/2: principal-log branch; diagnostics report the unit-disk escape rate
    G = builtin_graph("gamma2")
    cfg = ModelConfig(G, CornerAssignment.uniform(G, 2), ["pa:1/2", "pinf"])
    est = mc_partition_function(cfg, 4000, seed=2)
    d = est.diagnostics
    assert set(d) == {"rejected", "rejected_fraction", "valid", "outside_unit_disk_fraction"}
    assert 0 <= d["outside_unit_disk_fraction"] <= 1


def test_relation_check_gamma2():
    G = builtin_graph("gamma2")
    A = CornerAssignment.uniform(G, 2)
    r = schur_average_relation_check(G, A, [Partition((1, 1)), Partition((1, 1))], 20000, seed=5)
    assert r.exact == Fraction(1, 2)
    assert r.passed
    zero = schur_average_relation_check(G, A, [Partition((1,)), Partition((2,))], 20000, seed=6)
    assert zero.exact == 0 and zero.passed
    assert isinstance(r.mc.mean, (float, complex, np.floating))
