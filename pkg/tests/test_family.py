"""The x^n - a x^{n-1} - p pipeline: closed forms, certificates, searches."""
from __future__ import annotations

import json
import math
from datetime import datetime

import pytest

from conftest import poly
from perronpoly import __version__
from perronpoly.errors import InvalidInputError, OracleViolationError
from perronpoly.family import (
    Certificate,
    FamilyParams,
    build,
    companion_matrix,
    descartes_profile,
    discriminant_closed,
    family_irreducible,
    family_monogenic,
    g_value,
    strictly_perron_certificate,
)
from perronpoly.intarith import primes_below
from perronpoly.irreducibility import is_irreducible
from perronpoly.matrices import char_poly
from perronpoly.monogenicity import monogenic
from perronpoly.polynomial import discriminant
from perronpoly.search import SearchSpec, SearchTally, ledger_record, run_search


class TestParams:
    def test_validation(self):
        with pytest.raises(InvalidInputError):
            FamilyParams(1, 1, 3)  # n too small
        with pytest.raises(InvalidInputError):
            FamilyParams(2, 0, 3)  # a too small
        with pytest.raises(InvalidInputError):
            FamilyParams(2, 1, 4)  # p not prime

    def test_coprime_and_applicability(self):
        assert FamilyParams(4, 3, 5).coprime
        assert FamilyParams(4, 3, 5).theorem_applicable
        assert not FamilyParams(4, 2, 5).coprime
        assert not FamilyParams(4, 2, 5).theorem_applicable
        # p = a + 1 fails the strict inequality even when coprime.
        assert not FamilyParams(3, 2, 3).theorem_applicable


class TestClosedForms:
    def test_build(self):
        assert build(2, 1, 3) == poly(-3, -1, 1)
        assert build(4, 3, 5) == poly(-5, 0, 0, -3, 1)
        assert build(4, 3, 5).pretty() == "x^4 - 3*x^3 - 5"

    def test_g_value(self):
        assert g_value(2, 1, 3) == 13
        assert g_value(3, 1, 2) == 58
        assert g_value(4, 3, 5) == 3467

    def test_discriminant_closed(self):
        assert discriminant_closed(2, 1, 3) == 13
        assert discriminant_closed(3, 1, 2) == -116
        assert discriminant_closed(4, 3, 5) == -86675

    def test_closed_matches_resultant_grid(self):
        for n in range(2, 7):
            for a in range(1, 5):
                for p in primes_below(30):
                    assert discriminant_closed(n, a, p) == discriminant(build(n, a, p))

    def test_irreducibility_dichotomy(self):
        # Reducible exactly at even n with p = a + 1.
        assert not family_irreducible(2, 1, 2)
        assert not family_irreducible(4, 1, 2)
        assert not family_irreducible(6, 2, 3)
        assert family_irreducible(3, 1, 2)  # odd n, p = a + 1
        assert family_irreducible(2, 1, 3)
        for n in range(2, 6):
            for a in range(1, 5):
                for p in primes_below(20):
                    assert family_irreducible(n, a, p) == is_irreducible(build(n, a, p))

    def test_companion_shape(self):
        m = companion_matrix(4, 3, 5)
        assert char_poly(m) == build(4, 3, 5)
        assert m[0][-1] == 5 and m[-1][-1] == 3


class TestFamilyMonogenic:
    def test_verdicts(self):
        assert family_monogenic(2, 1, 3) == "Monogenic"
        # G(31) = 125 = 5^3 for n = 2, a = 1.
        assert family_monogenic(2, 1, 31) == "NotMonogenic(5)"

    def test_requires_coprime(self):
        with pytest.raises(InvalidInputError):
            family_monogenic(4, 2, 5)

    def test_requires_irreducible(self):
        with pytest.raises(InvalidInputError):
            family_monogenic(2, 1, 2)

    def test_agrees_with_local_tests_everywhere(self):
        # The squarefree-G criterion and the local index tests are fully
        # independent routes; their verdicts (witness prime included) must
        # coincide on the whole coprime grid.
        for n in range(2, 6):
            for a in range(1, 5):
                if math.gcd(a, n) != 1:
                    continue
                for p in primes_below(60):
                    if not family_irreducible(n, a, p):
                        continue
                    assert family_monogenic(n, a, p) == monogenic(build(n, a, p)).verdict, (n, a, p)


class TestDescartes:
    def test_parity_profiles(self):
        assert descartes_profile(2, 1, 3) == (1, 1)
        assert descartes_profile(4, 3, 5) == (1, 1)
        assert descartes_profile(3, 1, 2) == (1, 0)
        assert descartes_profile(5, 2, 7) == (1, 0)


class TestCertificate:
    def test_strictly_perron_monogenic(self):
        cert = strictly_perron_certificate(4, 3, 5)
        assert cert.irreducible
        assert cert.g == 3467
        assert cert.g_status == "Squarefree"
        assert cert.monogenic_verdict == "Monogenic"
        assert cert.classification.headline == "StrictlyPerron"
        assert cert.matrix_strongly_connected
        assert cert.conclusion == "monogenic strictly-Perron"
        assert cert.params.theorem_applicable

    def test_not_monogenic_member(self):
        cert = strictly_perron_certificate(2, 1, 31)
        assert cert.g_status == "NotSquarefree(5)"
        assert cert.monogenic_verdict == "NotMonogenic(5)"
        assert cert.conclusion == "strictly-Perron, NOT monogenic"

    def test_small_p_pisot_member(self):
        cert = strictly_perron_certificate(3, 2, 2)
        assert cert.classification.headline == "Pisot"
        assert cert.conclusion == "monogenic Pisot"
        assert not cert.params.theorem_applicable

    def test_small_p_anti_pisot_member(self):
        cert = strictly_perron_certificate(4, 3, 3)
        assert cert.classification.headline == "AntiPisot"
        assert cert.conclusion.startswith("monogenic anti-Pisot") or cert.conclusion == "anti-Pisot, NOT monogenic"

    def test_reducible_member(self):
        cert = strictly_perron_certificate(2, 1, 2)
        assert not cert.irreducible
        assert cert.monogenicity is None
        assert cert.monogenic_verdict == "NotApplicable(reducible)"
        assert cert.conclusion == "reducible"
        assert cert.classification.headline == "NotIrreducible"

    def test_eigenvalue_matches_dominant_root(self):
        cert = strictly_perron_certificate(5, 2, 11)
        lam = float(cert.classification.dominant)
        assert cert.matrix_eigenvalue == pytest.approx(lam, abs=1e-8)

    def test_json_shape(self):
        d = strictly_perron_certificate(4, 3, 5).to_json_dict()
        assert set(d) == {
            "n", "a", "p", "poly", "disc", "G", "G_status", "irreducible",
            "monogenic", "class", "lambda", "theorem_applicable", "conclusion",
        }
        assert d["disc"] == -86675
        assert d["G"] == 3467
        assert d["class"] == "StrictlyPerron"
        assert float(d["lambda"]) > 3  # root of x^4 - 3x^3 - 5 is ~3.17

    def test_fault_injection_trips_oracle(self):
        with pytest.raises(OracleViolationError):
            strictly_perron_certificate(4, 3, 5, _fault="disc-sign")
        with pytest.raises(InvalidInputError):
            strictly_perron_certificate(4, 3, 5, _fault="no-such-fault")

    def test_rejects_bad_params(self):
        with pytest.raises(InvalidInputError):
            strictly_perron_certificate(2, 1, 9)


class TestSearch:
    def test_spec_validation(self):
        with pytest.raises(InvalidInputError):
            SearchSpec((), (1,), 50)
        with pytest.raises(InvalidInputError):
            SearchSpec((2,), (1,), 1)
        with pytest.raises(InvalidInputError):
            SearchSpec((1,), (1,), 50)

    def test_pairs_order_and_coprime_filter(self):
        spec = SearchSpec((2, 3), (1, 2), 10)
        assert spec.pairs() == [(2, 1), (2, 2), (3, 1), (3, 2)]
        spec_c = SearchSpec((2, 3), (1, 2), 10, coprime_only=True)
        assert spec_c.pairs() == [(2, 1), (3, 1), (3, 2)]

    def test_run_search_order_and_tally(self):
        tally = SearchTally()
        certs = list(run_search(SearchSpec((2,), (1,), 13), tally))
        # primes 2, 3, 5, 7, 11, 13 in ascending order.
        assert [c.params.p for c in certs] == [2, 3, 5, 7, 11, 13]
        assert tally.points == 6
        assert tally.reducible == 1  # p = 2 = a + 1
        # G = 4p + 1: 9, 13, 21, 29, 45, 53 — squares at p = 2 and p = 11.
        assert tally.hits == 4
        assert tally.misses == 2
        assert tally.unknowns == 0
        assert "searched 6 points" in tally.summary()

    def test_search_deterministic(self):
        spec = SearchSpec((3, 4), (1, 2, 3), 20)
        first = [c.to_json_dict() for c in run_search(spec)]
        second = [c.to_json_dict() for c in run_search(spec)]
        assert first == second

    def test_ledger_record_roundtrip(self):
        cert = strictly_perron_certificate(4, 3, 5)
        line = ledger_record(cert)
        record = json.loads(line)
        assert record["n"] == 4 and record["p"] == 5
        assert record["version"] == __version__
        datetime.fromisoformat(record["timestamp"])  # must parse
        fixed = json.loads(ledger_record(cert, timestamp="2024-01-01T00:00:00+00:00"))
        assert fixed["timestamp"] == "2024-01-01T00:00:00+00:00"
