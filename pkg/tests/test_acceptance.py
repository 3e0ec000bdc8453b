"""Acceptance criteria, one test per criterion.

Each test prints a single PASS line once its assertions hold; a failed
assertion surfaces as the usual FAILED line for that criterion.  All
checks are exact: residuals must be identically zero, not small.
"""

import itertools
import random
from fractions import Fraction

from qcalc import (
    LaurentScalar,
    NCPoly,
    get_presentation,
)
from qcalc.calculus import (
    cartan_maurer_d,
    conversion_closure_residuals,
    differential,
    one_form_consistency_residuals,
    star,
    star_involution_residuals,
    star_table,
    verify_d_star,
)
from qcalc.hopf import coproduct, tensor
from qcalc.parser import parse
from qcalc.presentations import (
    corrected_rule_diff,
    eval_poly_at,
    grassmann_vs_differentials_crosscheck,
    leibniz_consistency_check,
    norm_poly,
)

A = ("a0", "a1", "a2", "a3")

# the six coordinate relations, entered independently of the presentation
RELATION_TABLE = {
    ("a0", "a1"): "a1*a0 - i*(q - q^-1)/2*(a2^2 + a3^2)",
    ("a0", "a2"): "(q + q^-1)/2*a2*a0 + i*(q - q^-1)/2*a2*a1",
    ("a0", "a3"): "(q + q^-1)/2*a3*a0 + i*(q - q^-1)/2*a3*a1",
    ("a1", "a2"): "(q + q^-1)/2*a2*a1 - i*(q - q^-1)/2*a2*a0",
    ("a1", "a3"): "(q + q^-1)/2*a3*a1 - i*(q - q^-1)/2*a3*a0",
    ("a2", "a3"): "a3*a2",
}


def test_criterion_01_local_confluence_of_shipped_presentations():
    for name in ("hq", "units", "cartan_maurer", "dga", "grassmann"):
        assert get_presentation(name).check_local_confluence() == [], name
    print("ACCEPTANCE 1 PASS: zero failing overlaps in the coordinate, "
          "unit, frame, differential, and odd presentations")


def test_criterion_02_defining_relations_verbatim_and_at_q_one():
    hq = get_presentation("hq")
    cl = get_presentation("classical-hq")
    assert sorted(hq.rules) == sorted(RELATION_TABLE)
    for lhs, text in RELATION_TABLE.items():
        nf = hq.normal_form(NCPoly.word(lhs, universe=hq.name))
        assert hq.normal_form(nf - parse(text, hq)) == 0, lhs
        flip = NCPoly.word((lhs[1], lhs[0]), universe=cl.name)
        classical_nf = cl.normal_form(NCPoly.word(lhs, universe=cl.name))
        assert classical_nf == flip, lhs
    print("ACCEPTANCE 2 PASS: all six relations reproduced verbatim and "
          "degenerate to transpositions at q=1")


def test_criterion_03_norm_is_central_and_grouplike():
    hq = get_presentation("hq")
    n = NCPoly(dict(norm_poly().terms), hq.name)
    for gid in A:
        g = NCPoly.letter(gid, hq.name)
        assert hq.normal_form(n * g - g * n) == 0, gid
    residual = coproduct(hq.normal_form(n), hq) - tensor(n, n).normal_form(hq)
    assert not residual
    print("ACCEPTANCE 3 PASS: the norm commutes with every generator and "
          "its coproduct is the norm on both legs")


def test_criterion_04_hopf_suite_is_exact(hopf_records):
    by_id = {r["id"]: r for r in hopf_records}
    exact = [r for r in hopf_records if r["kind"] == "exact"]
    assert len(exact) == 51
    for record in exact:
        assert not record["residual"], record["id"]
    for gid in A:
        assert f"coproduct.coassociativity.{gid}" in by_id
        assert f"counit.left.{gid}" in by_id
        assert f"counit.right.{gid}" in by_id
    antipode_ids = [f"antipode.{side}.{gid}"
                    for side in ("left", "right") for gid in A]
    for check_id in antipode_ids:
        assert not by_id[check_id]["residual"], check_id
    print("ACCEPTANCE 4 PASS: coproduct, counit, and star respect every "
          "relation; coassociativity and counit laws hold; the antipode "
          "law reduces to zero on both sides for all generators")


def test_criterion_05_star_suite():
    rng = random.Random(20111)
    for name in ("hq", "units", "classical-dga", "classical-cartan_maurer"):
        pres = get_presentation(name)
        table = star_table(name)
        gens = list(pres.generator_ids())
        for _ in range(100):
            w = tuple(rng.choice(gens) for _ in range(rng.randint(1, 3)))
            p = NCPoly.word(w, universe=pres.name)
            assert pres.normal_form(
                star(star(p, table, pres), table, pres) - p) == 0, (name, w)
    hq = get_presentation("hq")
    worked = star(NCPoly.letter("a2", hq.name), star_table("hq"), hq)
    cos = (LaurentScalar.q_power(1) + LaurentScalar.q_power(-1)) \
        * Fraction(1, 2)
    sin = (LaurentScalar.q_power(1) - LaurentScalar.q_power(-1)) \
        * Fraction(1, 2)
    expected = NCPoly.word(("a2",), cos, hq.name) \
        - NCPoly.word(("a3",), LaurentScalar.i_unit() * sin, hq.name)
    assert worked == expected
    for k in range(4):
        assert verify_d_star(k) == 0, k
    # the quantum differential universes are not involutive; the defect
    # is reported, never hidden
    defects = [gid for gid, res in star_involution_residuals("dga") if res]
    assert defects == ["da0", "da1", "da2", "da3"]
    defects = [gid for gid, res in star_involution_residuals("cartan_maurer")
               if res]
    assert defects == ["w0"]
    print("ACCEPTANCE 5 PASS: star is involutive on 100 random words in "
          "each involutive universe, the worked star image matches, the "
          "d-star residuals vanish, and quantum defects are flagged")


def test_criterion_06_differential_suite():
    dga = get_presentation("dga")
    gens = [g.id for g in dga.generators]
    count = 0
    for n in (1, 2, 3):
        for letters in itertools.product(gens, repeat=n):
            w = NCPoly.word(letters, universe=dga.name)
            assert dga.normal_form(
                differential(differential(w, dga), dga)) == 0, letters
            count += 1
    assert count == 584
    for row in leibniz_consistency_check(dga):
        assert row["residual"] == 0, row["lhs"]
    literal_rows = leibniz_consistency_check(
        get_presentation("dga_literal"), trace_rules=True)
    repaired = set(corrected_rule_diff())
    implicated = set()
    for row in literal_rows:
        touched = (row["rules_used"] & repaired) or row["lhs"] in repaired
        if row["residual"]:
            assert touched, row["lhs"]
            implicated |= row["rules_used"] & repaired
            if row["lhs"] in repaired:
                implicated.add(row["lhs"])
    assert implicated == repaired
    print(f"ACCEPTANCE 6 PASS: d squares to zero on {count} monomials, the "
          "repaired table satisfies the graded Leibniz rule everywhere, "
          "and the printed table breaks exactly at the repaired rules")


def test_criterion_07_frame_closure():
    for lhs, residual in one_form_consistency_residuals():
        assert residual == 0, lhs
    for aid, residual in conversion_closure_residuals():
        assert residual == 0, aid
    cl = get_presentation("classical-cartan_maurer")
    w = {k: NCPoly.letter(f"w{k}", cl.name) for k in range(4)}
    targets = {0: NCPoly.zero(cl.name), 1: 2 * w[2] * w[3],
               2: 2 * w[3] * w[1], 3: -2 * w[2] * w[1]}
    for k in range(4):
        limit = NCPoly(dict(cartan_maurer_d(k).eval_at(1).terms), cl.name)
        assert cl.normal_form(limit - cl.normal_form(targets[k])) == 0, k
    print("ACCEPTANCE 7 PASS: the frame definitions satisfy every frame "
          "relation, the two-form table closes the frame expansion, and "
          "its q=1 limit is the classical table")


def test_criterion_08_lie_algebra_sector(classical_lie_records,
                                         quantum_lie_records):
    assert len(classical_lie_records) == 6
    for row in classical_lie_records:
        assert row["failures"] == [], row["relation"]
    expected = {"n0n1-n1n0": 0, "n0n2-n2n0": 0, "n0n3-n3n0": 0,
                "n1n2-row": 14, "n1n3-row": 14, "n3n2-row": 14}
    for convention, records in quantum_lie_records.items():
        by_label = {row["relation"]: len(row["failures"]) for row in records}
        assert by_label == expected, convention
    print("ACCEPTANCE 8 PASS: all six classical bracket identities "
          "annihilate the cap-3 basis, and the quantum rows are evaluated "
          "and reported under both normalization conventions")


def test_criterion_09_odd_sector_crosscheck():
    rows = grassmann_vs_differentials_crosscheck()
    assert len(rows) == 10
    mismatched = [row for row in rows if not row["match"]]
    assert [row["id"] for row in mismatched] == ["squares.common-coefficient"]
    assert "(2)" in mismatched[0]["detail"]
    print("ACCEPTANCE 9 PASS: the odd-to-differential translation matches "
          "on 9 of 10 relations and flags only the factor-2 square "
          "coefficient")


def _random_poly(rng, pres, gens, pool, max_len=3, terms=3):
    p = NCPoly.zero(pres.name)
    for _ in range(rng.randint(1, terms)):
        w = tuple(rng.choice(gens) for _ in range(rng.randint(1, max_len)))
        p = p + NCPoly.word(w, rng.choice(pool), pres.name)
    return p


def test_criterion_10_engine_properties():
    universes = ("hq", "units", "dga", "cartan_maurer", "grassmann")
    presentations = [get_presentation(name) for name in universes]
    letters = {pres.name: list(pres.generator_ids()) for pres in presentations}
    i = LaurentScalar.i_unit()
    q = LaurentScalar.q_power(1)
    pool = (LaurentScalar.one(), -LaurentScalar.one(), i, -i, q,
            LaurentScalar.q_power(-1),
            LaurentScalar.from_rational(Fraction(1, 2)), i * q + 1)
    points = (1, 2, Fraction(1, 2), -1, Fraction(3, 2))

    rng = random.Random(101)
    for _ in range(1000):
        pres = rng.choice(presentations)
        nf = pres.normal_form(_random_poly(rng, pres, letters[pres.name], pool))
        assert pres.normal_form(nf) == nf

    rng = random.Random(102)
    for _ in range(1000):
        pres = rng.choice(presentations)
        w = tuple(rng.choice(letters[pres.name])
                  for _ in range(rng.randint(1, 3)))
        nf = pres.normal_form(NCPoly.word(w, universe=pres.name))
        if nf:
            assert pres.grade_of(nf) == pres.word_grade(w)
        if pres.is_degree_homogeneous():
            assert all(len(u) == len(w) for u in nf.terms)

    rng = random.Random(103)
    for _ in range(1000):
        pres = rng.choice(presentations)
        p = _random_poly(rng, pres, letters[pres.name], pool)
        r = _random_poly(rng, pres, letters[pres.name], pool)
        q0 = rng.choice(points)
        assert eval_poly_at(p + r, q0) == \
            eval_poly_at(p, q0) + eval_poly_at(r, q0)
        assert eval_poly_at(p * r, q0) == \
            eval_poly_at(p, q0) * eval_poly_at(r, q0)

    print("ACCEPTANCE 10 PASS: normal-form idempotence, grading "
          "preservation, and evaluation homomorphism each passed 1,000 "
          "randomized trials")
