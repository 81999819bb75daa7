from __future__ import annotations

import json
from pathlib import Path
import random
from fractions import Fraction

import pytest

from gaussgeom.algebra import BasisIndex, basis_indices
from gaussgeom.connections import amari_difference
from gaussgeom.exact import HALF_SQRT2, ONE, ZERO, QSqrt2
from gaussgeom.solver import (
    AMARI_SCALE,
    TheoremCertificate,
    assemble,
    expected_pattern,
    perturbation_breaks_constraints,
    solve,
    solved_difference_tensor,
    statistical_space_dim,
    verify_theorem,
)
from gaussgeom.tensors import basis_dimension, symmetric_triples, triple_positions


def positions(n):
    return {idx: p for p, idx in enumerate(basis_indices(n))}


def kernel_entry(cert, *parts: BasisIndex) -> QSqrt2:
    vec = solved_difference_tensor(cert)
    pos = positions(cert.n)
    return vec.get(*(pos[p] for p in parts))


class TestCounting:
    @pytest.mark.parametrize("n,count", [(1, 4), (2, 35), (3, 165), (4, 560)])
    def test_unknown_count(self, n, count):
        assert statistical_space_dim(n) == count

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_assembled_system_shape(self, n):
        system = assemble(n)
        assert system.unknowns == statistical_space_dim(n)
        assert len(system.rows) == len(system.labels)


class TestSystem:
    def test_n1_by_hand(self):
        # the four constraints reduce to: K_MMM = 0, K_MCC = 0, K_CCC = 2 K_MMC
        cert = solve(1)
        assert cert.rank == 3
        assert cert.kernel == {
            "Mean(1)|Mean(1)|Cov(1,1)": ONE.to_string(),
            "Cov(1,1)|Cov(1,1)|Cov(1,1)": QSqrt2(2).to_string(),
        }

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_amari_tensor_satisfies_every_row(self, n):
        system = assemble(n)
        amari = amari_difference(n)
        assert system.satisfied_by(list(amari.values))

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_kernel_dim_one(self, n):
        cert = solve(n)
        assert cert.kernel_dim == 1
        assert cert.rank + 1 == cert.unknowns

    def test_kernel_dim_one_n4(self):
        cert = solve(4)
        assert cert.kernel_dim == 1
        assert cert.passed


class TestKernelPattern:
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_pattern_and_checks(self, n):
        cert = solve(n)
        assert cert.passed, cert.failures
        assert cert.checks["nonzero_pattern"]
        assert cert.checks["cubic_table_reproduced"]

    def test_mean_cov_cov_entries_vanish(self):
        # any entry pairing one mean direction with two covariance directions
        cert = solve(3)
        vec = solved_difference_tensor(cert)
        idx = basis_indices(3)
        for a in range(len(idx)):
            for b in range(a, len(idx)):
                for c in range(b, len(idx)):
                    kinds = sum(1 for p in (a, b, c) if idx[p].is_mean)
                    if kinds == 1:
                        assert vec.get(a, b, c) == ZERO

    def test_pure_mean_entries_vanish(self):
        cert = solve(3)
        vec = solved_difference_tensor(cert)
        pos = positions(3)
        means = [BasisIndex.mean(i) for i in (1, 2, 3)]
        for a in means:
            for b in means:
                for c in means:
                    assert vec.get(pos[a], pos[b], pos[c]) == ZERO

    def test_repeated_offdiagonal_entries_vanish(self):
        cert = solve(3)
        pos = positions(3)
        vec = solved_difference_tensor(cert)
        c12, c13, c23 = (
            pos[BasisIndex.cov(1, 2)],
            pos[BasisIndex.cov(1, 3)],
            pos[BasisIndex.cov(2, 3)],
        )
        assert vec.get(c12, c12, c13) == ZERO
        assert vec.get(c12, c12, c12) == ZERO
        assert vec.get(c13, c13, c23) == ZERO

    def test_mixed_mean_pair_with_own_offdiagonal_vanishes(self):
        cert = solve(2)
        pos = positions(2)
        vec = solved_difference_tensor(cert)
        m1, m2 = pos[BasisIndex.mean(1)], pos[BasisIndex.mean(2)]
        c12 = pos[BasisIndex.cov(1, 2)]
        assert vec.get(m1, m1, c12) == ZERO
        assert vec.get(m2, m2, c12) == ZERO

    def test_certified_ratios(self):
        cert = solve(3)
        for i in (1, 2, 3):
            assert kernel_entry(
                cert, BasisIndex.cov(i, i), BasisIndex.cov(i, i), BasisIndex.cov(i, i)
            ) == kernel_entry(
                cert, BasisIndex.mean(i), BasisIndex.mean(i), BasisIndex.cov(i, i)
            ) * 2
        assert kernel_entry(
            cert, BasisIndex.mean(1), BasisIndex.mean(2), BasisIndex.cov(1, 2)
        ) == HALF_SQRT2
        assert kernel_entry(
            cert, BasisIndex.cov(1, 2), BasisIndex.cov(2, 3), BasisIndex.cov(1, 3)
        ) == HALF_SQRT2

    @pytest.mark.parametrize("n", [1, 2])
    def test_pattern_filtered_by_n(self, n):
        # families indexed by i<j or i<j<k only appear once n admits them
        pattern = expected_pattern(n)
        assert len(pattern) == {1: 2, 2: 7}[n]

    def test_scaled_generator_is_amari_difference(self):
        for n in (1, 2, 3):
            cert = solve(n)
            generator = solved_difference_tensor(cert)
            assert generator.scale(AMARI_SCALE) == amari_difference(n)


class TestPerturbation:
    @pytest.mark.parametrize("n", [1, 2])
    def test_every_unit_perturbation_breaks_a_constraint(self, n):
        system = assemble(n)
        amari = list(amari_difference(n).values)
        assert perturbation_breaks_constraints(
            system, amari, range(statistical_space_dim(n))
        )

    def test_sampled_unit_perturbations_n3(self):
        system = assemble(3)
        amari = list(amari_difference(3).values)
        rng = random.Random(5)
        sample = rng.sample(range(statistical_space_dim(3)), 25)
        assert perturbation_breaks_constraints(system, amari, sample)


class TestCertificate:
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_verify_theorem_passes(self, n):
        cert = verify_theorem(n)
        assert cert.passed, cert.failures
        for alpha in (1, -1, 2, -2, Fraction(1, 3)):
            assert cert.checks[f"conjugate_symmetric_alpha_{alpha}"]
            assert cert.checks[f"predicates_agree_alpha_{alpha}"]
        assert cert.checks["dually_flat_plus"]
        assert cert.checks["dually_flat_minus"]

    def test_json_is_deterministic(self):
        assert verify_theorem(2).to_json() == verify_theorem(2).to_json()

    def test_json_contents(self):
        payload = json.loads(verify_theorem(2).to_json())
        assert payload["status"] == "PASS"
        assert payload["kernel_dim"] == 1
        assert payload["unknowns"] == 35
        assert payload["kernel"]["Mean(1)|Mean(1)|Cov(1,1)"] == "1/1 + 0/1*sqrt2"

    def test_failed_certificate_reports_entries(self):
        cert = TheoremCertificate(
            n=1,
            dim=2,
            unknowns=4,
            row_count=4,
            rank=3,
            kernel_dim=2,
            normalization="",
        )
        cert.record("kernel_dim_is_one", False, "dim=2")
        assert not cert.passed
        assert cert.to_json_dict()["status"] == "FAILED"
        assert any("kernel_dim_is_one" in f for f in cert.failures)

    def test_certificate_round_trip_through_json(self):
        cert = solve(2)
        payload = json.loads(cert.to_json())
        rebuilt = {
            label: QSqrt2.parse(text) for label, text in payload["kernel"].items()
        }
        assert rebuilt == {
            label: QSqrt2.parse(text) for label, text in cert.kernel.items()
        }

    def test_certificate_conforms_to_published_schema(self):
        jsonschema = pytest.importorskip("jsonschema")
        schema_path = (
            Path(__file__).resolve().parent.parent
            / "docs"
            / "certificate.schema.v1.json"
        )
        schema = json.loads(schema_path.read_text())
        for n in (1, 2):
            jsonschema.validate(verify_theorem(n).to_json_dict(), schema)
