import random
from fractions import Fraction

import pytest

from sfs4.classify import (
    BUDGET_EXCEEDED,
    EMBEDS,
    OBSTRUCTED,
    UNKNOWN,
    EpsZeroPairing,
    PairingImbalance,
    classify,
    eps_zero_pairing,
    replay_certificate,
)
from sfs4.homology import h1_formula, is_direct_double
from sfs4.mubar import mubar_embedding_conditions
from sfs4.partitions import bound_e, is_partitionable
from sfs4.seifert import SeifertData, euler_invariant, expand, normalize
from tests.test_homology import random_seifert

F = Fraction


def sfs(g, e, *fibers):
    return SeifertData(g, e, tuple(F(x) for x in fibers))


def test_eps_zero_pairing_examples():
    p = eps_zero_pairing((F(3), F(-3), F(2), F(-2)))
    assert isinstance(p, EpsZeroPairing)
    assert sorted(p.disk_fibers) == [F(2), F(3)]

    with pytest.raises(ValueError):
        eps_zero_pairing((F(3), F(-3), F(2)))

    p2 = eps_zero_pairing((F(4), F(-4), F(12, 5), F(-12, 5)))
    assert isinstance(p2, EpsZeroPairing)
    assert sorted(p2.disk_fibers) == [F(12, 5), F(4)]

    # integral reciprocal sum but no complement partners
    bad = eps_zero_pairing((F(5), F(5), F(5), F(5), F(5)))
    assert isinstance(bad, PairingImbalance)
    assert bad.count == 5 and bad.complement_count == 0


def test_eps_zero_pairing_standard_form_input():
    # the pairing is presentation independent: standard form fibers pair
    # through complements
    std = normalize(sfs(0, 0, 3, -3, 2, -2))
    p = eps_zero_pairing(std.fibers)
    assert isinstance(p, EpsZeroPairing)
    assert sorted(p.disk_fibers) == [F(2), F(3)]


def test_golden_verdicts():
    v1 = classify(sfs(0, 0, -3, 3, -3))
    assert v1.tag == EMBEDS
    assert v1.certificate.kind == "expansion"
    assert v1.certificate.base_fibers == (F(3, 2),)
    assert len(v1.certificate.expansions) == 1

    v2 = classify(sfs(0, 2, 2, F(3, 2), F(5, 4)))
    assert v2.tag == OBSTRUCTED
    assert v2.obstruction.name == "not_partitionable"

    v3 = classify(sfs(0, 1, 4, 4, F(12, 5)))
    assert v3.tag == EMBEDS
    assert v3.certificate.rule == "known_embedding_4_4_12_5"

    v4 = classify(sfs(0, 2, 3, F(5, 3), 15, F(15, 14)))
    assert v4.tag == UNKNOWN
    assert all(t.result != "fail" for t in v4.trace if t.test != "contraction")

    v5 = classify(sfs(2, 2, F(3, 2), 3, F(3, 2)))
    assert v5.tag == EMBEDS
    assert v5.certificate.genus_bumps == 2


def test_eps_zero_branch_rules():
    assert classify(sfs(0, 0, 3, -3, 5, -5)).tag == EMBEDS
    assert classify(sfs(0, 0, 2, -2, 3, -3)).tag == EMBEDS
    v = classify(sfs(0, 0, 4, -4, F(12, 5), F(-12, 5)))
    assert v.tag == EMBEDS
    assert v.certificate.rule == "eps_zero_known_disk"
    v2 = classify(sfs(0, 0, 4, -4, 6, -6))
    assert v2.tag == OBSTRUCTED
    assert v2.obstruction.name == "furuta_ten_eighths"
    # a = b even: duplicated pair of an embeddable space
    v3 = classify(sfs(0, 0, 4, -4, 4, -4))
    assert v3.tag == EMBEDS
    # >= 2 distinct even classes outside the known shapes
    v4 = classify(sfs(0, 0, 4, -4, 6, -6, 3, -3))
    assert v4.tag == UNKNOWN


def test_eps_zero_unpaired_obstructed():
    # beta sum = 1/2 + 1/2 + 1/3 + 1/3 + 1/3 = 2 = e, so eps = 0, but the
    # three 1/3-fibers cannot match complements
    v = classify(sfs(0, 2, 2, 2, 3, 3, 3))
    assert v.tag == OBSTRUCTED
    assert v.obstruction.name == "unpaired_fibers"


def test_k0_cases():
    assert classify(sfs(0, 1)).tag == EMBEDS
    assert classify(sfs(0, -1)).tag == EMBEDS  # normalizes to e = 1 reversed
    assert classify(sfs(0, 0)).tag == UNKNOWN
    assert classify(sfs(1, 1)).tag == UNKNOWN
    assert classify(sfs(0, 3)).tag == UNKNOWN


def test_k0_regular_fiber_fold():
    # fibers with integer reciprocals fold away entirely
    assert classify(sfs(0, 2, 1, F(1, 1))).tag == UNKNOWN  # folds to SFS(g=0;e=0;)


def test_half_weight_bound_obstruction():
    v = classify(sfs(0, 3, 2, 2, F(3, 2)))
    assert v.tag == OBSTRUCTED
    assert v.obstruction.name in ("torsion_not_direct_double", "central_weight_bound")


def test_direct_double_obstruction():
    v = classify(sfs(0, 0, 3, -3, 5))
    assert v.tag == OBSTRUCTED
    assert v.obstruction.name == "torsion_not_direct_double"
    assert "Z/9" in v.obstruction.detail


def test_ceiling_bound_obstruction():
    v = classify(sfs(0, 2, 2, F(5, 2), 10, F(10, 9)))
    assert v.tag == OBSTRUCTED
    assert v.obstruction.name == "spin_partition_conditions"


def test_z2_bound_obstruction():
    # partitionable (single class summing to 1 - 1/8) with a direct double,
    # but five even multiplicities force dim H^1(Y;Z2) = 4 > 2e = 2
    v = classify(sfs(0, 1, 4, 4, 8, 8, 8))
    assert v.tag == OBSTRUCTED
    assert v.obstruction.name == "z2_cohomology_bound"


def test_budget_exceeded():
    s = SeifertData(0, 8, tuple([F(2)] * 15))
    assert classify(s).tag == BUDGET_EXCEEDED


def test_certificates_replay():
    cases = [
        sfs(0, 0, -3, 3, -3),
        sfs(0, 1, 4, 4, F(12, 5)),
        sfs(2, 2, F(3, 2), 3, F(3, 2)),
        sfs(0, 2, 2, F(5, 2), 2, 2),
        sfs(0, 0, 4, -4, F(12, 5), F(-12, 5)),
        sfs(0, 1),
    ]
    for s in cases:
        v = classify(s)
        assert v.tag == EMBEDS, s
        assert replay_certificate(v.certificate, v.standard_form), s


def test_orientation_insensitive():
    rng = random.Random(77)
    for _ in range(60):
        s = random_seifert(rng, gmax=1, kmax=5, pmax=9)
        rev = SeifertData(s.genus, -s.central, tuple(-r for r in s.fibers))
        assert classify(s).tag == classify(rev).tag, s


def test_monotone_under_expansion():
    rng = random.Random(1234)
    checked = 0
    for _ in range(300):
        s = normalize(random_seifert(rng, gmax=1, kmax=4, pmax=7))
        if s.fiber_count == 0:
            continue
        v = classify(s.as_seifert_data())
        if v.tag != EMBEDS:
            continue
        checked += 1
        for j in range(1, s.fiber_count + 1):
            bigger = expand(s, j)
            assert classify(bigger.as_seifert_data()).tag == EMBEDS, (s, j)
        if checked >= 8:
            break
    assert checked > 0


def test_embeds_never_obstructed_audit():
    # no EMBEDS verdict may fail any implemented obstruction
    rng = random.Random(4321)
    audited = 0
    for _ in range(400):
        s = normalize(random_seifert(rng, gmax=1, kmax=5, pmax=9))
        v = classify(s.as_seifert_data())
        if v.tag != EMBEDS:
            continue
        audited += 1
        eps = euler_invariant(s)
        assert is_direct_double(h1_formula(s))
        if eps > 0 and s.fiber_count:
            assert bound_e(s).ok
            assert is_partitionable(s).is_witness
            if s.genus == 0:
                rep = mubar_embedding_conditions(s, is_partitionable(s).witness)
                assert rep.ok, s
    assert audited > 3


def test_trace_is_complete_for_unknown():
    v = classify(sfs(0, 2, 3, F(5, 3), 15, F(15, 14)))
    names = [t.test for t in v.trace]
    assert "direct_double" in names
    assert "central_weight_bound" in names
    assert "partitionable" in names
    assert "contraction" in names
