"""Acceptance criteria, one test per criterion.

Each test records a ``PASS``/``FAIL`` line; the lines are printed in the
terminal summary (see ``conftest.py``) and by ``python tests/test_acceptance.py``.
"""
import functools
import itertools
import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conftest import identity_ca, shift_ca, two_track_ca  # noqa: E402
from surjunct.analysis import (  # noqa: E402
    Injective,
    PreInjective,
    Surjective,
    decide_injectivity,
    decide_postsurjectivity,
    decide_preinjectivity,
    decide_surjectivity,
    find_injectivity_set,
    find_inverse_injectivity_set,
    find_postsurjectivity_set,
    image_sft,
    iterated_image_sft,
    synthesize_inverse,
    verify_injectivity_set,
    verify_postsurjectivity_set,
)
from surjunct.analysis import oracles  # noqa: E402
from surjunct.cli import _csv_text, run_census, threads  # noqa: E402
from surjunct.group import cyclic, direct_product, integers, symmetric  # noqa: E402
from surjunct.groupring import (  # noqa: E402
    PROBE_COLUMNS,
    GroupRingElement,
    augmentation,
    direct_finiteness_scan,
    hamming_norm,
    in_augmentation_ideal,
    metric_probe,
    norm_S,
    norm_S_bruteforce,
    probe_rows,
    verify_unit_claims,
)
from surjunct.symbolic import (  # noqa: E402
    apply,
    compose,
    delta,
    image_automaton,
    make_ca,
    random_almost_equal,
    random_configuration,
    sft_automaton,
    sofic_equal,
)

RESULTS: list[str] = []
SEED = 20240611
Z = integers()


def record(n, ok: bool, detail: str) -> bool:
    RESULTS.append(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
    print(RESULTS[-1])
    return ok


def table(rid: int, k: int, size: int) -> list[int]:
    return [(rid // k**c) % k for c in range(size)]


# --- shared censuses ------------------------------------------------------------------------


@functools.cache
def z_census():
    t0 = time.perf_counter()
    rows = []
    for memory in ((0, 1), (0, 1, 2)):
        for row, violations in run_census(Z, 2, memory, workers=threads()):
            rows.append((memory, int(row[0]), row, violations))
    return rows, time.perf_counter() - t0


@functools.cache
def finite_census():
    t0 = time.perf_counter()
    rows = []
    for n in (3, 4):
        G = cyclic(n)
        for row, violations in run_census(G, 2, tuple(G.elements()), workers=threads()):
            rows.append((G, int(row[0]), row, violations))
    return rows, time.perf_counter() - t0


def coherent(row) -> bool:
    inj, sur, pre, post = (v == "true" for v in row[1:5])
    known = all(v in ("true", "false") for v in row[1:5])
    rev = inj and sur
    return known and post == inj == rev and (not post or sur) and (not inj or sur) and (not (post and pre) or inj)


def reversible_rules():
    """(automaton) for every reversible rule of criteria 1 and 3."""
    out = []
    for memory, rid, row, _ in z_census()[0]:
        if row[1] == "true":
            out.append(make_ca(Z, 2, memory, table(rid, 2, 2 ** len(memory))))
    for G, rid, row, _ in finite_census()[0]:
        if row[1] == "true":
            out.append(make_ca(G, 2, tuple(G.elements()), table(rid, 2, 2**G.order)))
    return out


# --- criteria ----------------------------------------------------------------------------------------


def test_criterion_1_z_census_coherence():
    rows, elapsed = z_census()
    bad = [(m, rid) for m, rid, row, v in rows if v or not coherent(row)]
    ok = len(rows) == 272 and not bad and elapsed < 120
    assert record(1, ok, f"{len(rows)} rules, {len(bad)} exceptions, {elapsed:.1f}s (< 120s)")


def _oracle_disagreements(max_length: int):
    out = []
    for memory in ((0, 1), (0, 1, 2)):
        for rid in range(2 ** (2 ** len(memory))):
            T = make_ca(Z, 2, memory, table(rid, 2, 2 ** len(memory)))
            if isinstance(decide_injectivity(T), Injective) != oracles.brute_injective(T, 10):
                out.append((memory, rid, "injective"))
            if isinstance(decide_preinjectivity(T), PreInjective) != oracles.brute_preinjective(T, 10):
                out.append((memory, rid, "pre_injective"))
            if isinstance(decide_surjectivity(T), Surjective) != oracles.brute_surjective(T, max_length):
                out.append((memory, rid, "surjective"))
    return out


@pytest.mark.xfail(
    strict=True,
    reason="four rules (37, 91, 164, 218 on memory {0,1,2}) have shortest Garden-of-Eden words of length 9, "
    "beyond factor coverage to length 8",
)
def test_criterion_2_oracle_agreement():
    bad = _oracle_disagreements(8)
    detail = f"{len(bad)} disagreements over 272 rules (period <= 10, factors <= 8)"
    if bad:
        detail += ": " + ", ".join(f"rule {rid} {prop}" for _, rid, prop in bad)
    assert record(2, not bad, detail)


def test_criterion_2_extended_factor_length():
    bad = _oracle_disagreements(9)
    RESULTS.append(f"criterion 2 (supplement): {'PASS' if not bad else 'FAIL'}  "
                   f"{len(bad)} disagreements with factor coverage to length 9")
    assert not bad


def test_criterion_3_finite_census():
    rows, elapsed = finite_census()
    bad = [(G, rid) for G, rid, row, v in rows if v or not coherent(row)]
    ok = len(rows) == 256 + 65536 and not bad and elapsed < 300
    assert record(3, ok, f"{len(rows)} rules on C3, C4, {len(bad)} exceptions, {elapsed:.1f}s (< 300s)")


def test_criterion_4_set_duality():
    rules = reversible_rules()
    failed = 0
    for T in rules:
        g = T.group
        N = find_injectivity_set(T, 8).set
        M = find_postsurjectivity_set(T, 8).set
        if not verify_postsurjectivity_set(T, g.symmetrize(N)).ok or not verify_injectivity_set(T, g.symmetrize(M)).ok:
            failed += 1
    assert record(4, failed == 0, f"{len(rules) - failed}/{len(rules)} reversible rules dual in both directions")


def test_criterion_5_inverse_synthesis():
    rules = reversible_rules()
    failed = 0
    rng = random.Random(SEED)
    for T in rules:
        N = decide_injectivity(T).certificate.set
        inv = synthesize_inverse(T, N)
        ok = set(inv.memory) <= set(N)
        for _ in range(100):
            x = random_configuration(T.group, T.k, rng)
            ok = ok and apply(inv, apply(T, x)) == x
        failed += not ok
    assert record(5, failed == 0, f"{len(rules) - failed}/{len(rules)} rules, 100 configurations each")


def _z_reversible():
    return [two_track_ca()] + [T for T in reversible_rules() if not T.group.is_finite]


def test_criterion_6_image_sft():
    failed = []
    fixtures = _z_reversible()
    for T in fixtures:
        N = decide_injectivity(T).certificate.set
        inv = synthesize_inverse(T, N)
        M = find_inverse_injectivity_set(T, N, inv, 8).set
        S1 = image_sft(T, N, M, verify=False)
        S2 = iterated_image_sft(T, N, M, 2, verify=False)
        if not sofic_equal(sft_automaton(S1), image_automaton(T)):
            failed.append((T.rule.table, 1))
        if not sofic_equal(sft_automaton(S2), image_automaton(compose(T, T))):
            failed.append((T.rule.table, 2))
    assert record(6, not failed, f"{len(fixtures)} automata, n = 1 and n = 2, {len(failed)} mismatches")


def test_criterion_7_delta_bound():
    fixtures = [identity_ca(), shift_ca()] + _z_reversible()
    rng = random.Random(SEED + 7)
    failures = 0
    for T in fixtures:
        M = decide_postsurjectivity(T).certificate.set
        for _ in range(200):
            x = random_configuration(Z, T.k, rng)
            y = random_almost_equal(Z, T.k, x, rng)
            img = delta(apply(T, x), apply(T, y))
            if not set(delta(x, y)) <= set(Z.set_product(img, M)):
                failures += 1
    assert record(7, failures == 0, f"{len(fixtures)} reversible automata x 200 pairs, {failures} failures")


def test_criterion_8_direct_finiteness():
    t0 = time.perf_counter()
    cases = [
        (2, cyclic(2)), (2, cyclic(4)), (2, direct_product(cyclic(2), cyclic(2))), (3, cyclic(2)), (2, symmetric(3)),
    ]
    violations = units = claims_failed = 0
    for p, G in cases:
        rep = direct_finiteness_scan(p, G)
        violations += len(rep.violations)
        units += len(rep.unit_pairs)
        for a_vec, b_vec in rep.unit_pairs:
            a = GroupRingElement.from_vector(G, p, a_vec)
            b = GroupRingElement.from_vector(G, p, b_vec)
            try:
                verify_unit_claims(a, b)
            except Exception:  # noqa: BLE001 - any failure counts against the claim
                claims_failed += 1
    elapsed = time.perf_counter() - t0
    ok = violations == 0 and claims_failed == 0 and elapsed < 300
    assert record(8, ok, f"{violations} violations, {units - claims_failed}/{units} unit claims verified, {elapsed:.1f}s")


def test_criterion_9_norm_s():
    nm = hamming_norm(3)
    G = nm.group
    compared = mismatches = zero_bad = 0
    for p in (2, 3):
        for size in range(0, 5):
            for supp in itertools.combinations(range(G.order), size):
                for coeffs in itertools.product(range(1, p), repeat=size):
                    f = GroupRingElement.from_dict(G, p, dict(zip(supp, coeffs)))
                    if not in_augmentation_ideal(f):
                        continue
                    value = norm_S(f, nm)
                    compared += 1
                    mismatches += value != norm_S_bruteforce(f, nm)
                    if size <= 3 and (value == 0) != f.is_zero():
                        zero_bad += 1
    ok = mismatches == 0 and zero_bad == 0
    assert record(9, ok, f"{compared} ideal elements, {mismatches} mismatches, {zero_bad} zero-norm failures")


def test_criterion_10_probe_reproducibility():
    runs = [metric_probe(4, 3, 500, seed=7) for _ in range(2)]
    texts = [_csv_text(PROBE_COLUMNS, probe_rows(r)).encode() for r in runs]
    recs = runs[0]
    p = recs[0].a.p
    eps_ok = all(augmentation(r.a) * augmentation(r.b) % p == 1 for r in recs)
    one = GroupRingElement.one(recs[0].a.group, p)
    units = [r for r in recs if r.a * r.b == one]
    units_ok = all((r.norm_ab, r.norm_ba) == (0, 0) for r in units)
    ok = texts[0] == texts[1] and eps_ok and units_ok and len(recs) == 500
    assert record(10, ok, f"byte-identical={texts[0] == texts[1]}, eps(ab)=1 for all 500, {len(units)} exact units at (0, 0)")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
