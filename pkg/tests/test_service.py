"""HTTP service endpoints: values, shapes, and error mapping."""

import math

import pytest
from fastapi.testclient import TestClient

from pccloner.cloner import HybridConfig, run_hybrid, with_settings
from pccloner.service.app import create_app
from pccloner.state import PolarizationQubit
from pccloner.theory import (
    HYBRID_REFERENCE,
    hybrid_filter_settings,
    sbs_filter_settings,
)

F_SYM = 0.5 * (1.0 + 1.0 / math.sqrt(2.0))

client = TestClient(create_app())


class TestEndpoints:
    def test_health(self):
        resp = client.get("/health")
        assert resp.status_code == 200
        assert resp.json() == {"status": "ok"}

    def test_frontier(self):
        resp = client.post("/frontier", json={"grid": {"start": 0.0, "stop": 1.0, "num": 5}})
        assert resp.status_code == 200
        body = resp.json()
        rows = body["rows"]
        assert len(rows) == 5
        mid = rows[2]
        assert mid["q"] == 0.5
        assert mid["f1_pc"] == pytest.approx(F_SYM, abs=1e-9)
        assert mid["f2_pc"] == pytest.approx(F_SYM, abs=1e-9)
        for row in rows:
            lhs = (2 * row["f1_pc"] - 1) ** 2 + (2 * row["f2_pc"] - 1) ** 2
            assert lhs == pytest.approx(1.0, abs=1e-9)
        assert body["spec"]["grid"]["num"] == 5

    def test_filters_values(self):
        resp = client.post("/filters", json={"setup": "sbs", "q": 0.93})
        assert resp.status_code == 200
        (row,) = resp.json()["rows"]
        want = sbs_filter_settings(0.93, 0.758, 0.179)
        assert row["sigma_eta"] == pytest.approx(want.sigma_eta, abs=1e-9)
        assert row["sigma_nu"] == pytest.approx(want.sigma_nu, abs=1e-9)
        assert row["feasible"] is True
        assert 0.0 < row["tilt_eta"] < math.pi / 2
        assert 0.0 < row["tilt_nu"] < math.pi / 2

    def test_filters_infeasible_ratio(self):
        # sigma_nu blows up near q -> 1, beyond any plate tilt
        resp = client.post("/filters", json={"setup": "sbs", "q": 0.98})
        assert resp.status_code == 200
        (row,) = resp.json()["rows"]
        assert row["feasible"] is False
        assert row["tilt_nu"] is None

    def test_clone_rows(self):
        resp = client.post("/clone", json={"q": 0.7})
        assert resp.status_code == 200
        rows = resp.json()["rows"]
        assert len(rows) == 10
        states = [r for r in rows if r["kind"] == "state"]
        (mean,) = [r for r in rows if r["kind"] == "mean"]
        assert len(states) == 9
        # phase covariance: every equator point gives the same fidelities
        for row in states:
            assert row["f1"] == pytest.approx(states[0]["f1"], abs=1e-9)
            assert row["p_succ"] == pytest.approx(states[0]["p_succ"], abs=1e-9)
        assert mean["f1"] == pytest.approx(states[0]["f1"], abs=1e-9)
        assert mean["f1_std"] == pytest.approx(0.0, abs=1e-9)
        assert mean["c_pp"] is None
        assert states[0]["c_pp"] is not None

    def test_clone_realistic_overlap_degrades_fidelity(self):
        ideal = client.post("/clone", json={"q": 0.5}).json()["rows"][-1]
        worse = client.post(
            "/clone", json={"q": 0.5, "mode": "realistic", "overlap": 0.9}
        ).json()["rows"][-1]
        assert worse["f1"] < ideal["f1"]
        assert worse["f2"] < ideal["f2"]

    def test_psucc_matches_library(self):
        resp = client.post(
            "/psucc",
            json={"setup": "hybrid", "q_grid": {"start": 0.5, "stop": 0.75, "num": 2}},
        )
        assert resp.status_code == 200
        rows = resp.json()["rows"]
        assert [row["q"] for row in rows] == [0.5, 0.75]
        r_v, r_h = HYBRID_REFERENCE
        for row in rows:
            cfg = with_settings(
                HybridConfig(r_v=r_v, r_h=r_h),
                hybrid_filter_settings(row["q"], r_v, r_h),
            )
            out = run_hybrid(PolarizationQubit.equatorial(0.0), cfg)
            assert row["p_succ"] == pytest.approx(out.p_succ, abs=1e-9)

    def test_sample_counts_deterministic(self):
        payload = {"q": 0.6, "duration": 5.0, "pair_rate": 800.0, "seed": 9}
        a = client.post("/sample-counts", json=payload)
        b = client.post("/sample-counts", json=payload)
        assert a.status_code == 200
        assert a.json()["rows"] == b.json()["rows"]
        rows = a.json()["rows"]
        assert len(rows) == 11
        assert rows[-1]["kind"] == "summary"
        assert all(isinstance(r["c_pp"], int) for r in rows[:-1])

    def test_hom_curve(self):
        resp = client.post(
            "/hom", json={"reflectance": 0.5, "s_grid": {"start": 0.0, "stop": 1.0, "num": 6}}
        )
        assert resp.status_code == 200
        for row in resp.json()["rows"]:
            s = row["overlap"]
            assert row["p_coinc"] == pytest.approx(0.5 * (1 - s * s), abs=1e-9)


class TestErrorMapping:
    def test_out_of_range_q(self):
        resp = client.post("/clone", json={"q": 1.5})
        assert resp.status_code == 422

    def test_unknown_setup(self):
        resp = client.post("/clone", json={"setup": "bogus", "q": 0.5})
        assert resp.status_code == 422

    def test_missing_required_duration(self):
        resp = client.post("/sample-counts", json={"q": 0.5})
        assert resp.status_code == 422

    def test_singular_splitter_maps_to_422(self):
        resp = client.post("/clone", json={"q": 0.5, "r_v": 0.5, "r_h": 0.5})
        assert resp.status_code == 422
        assert "detail" in resp.json()

    def test_hom_reflectance_range(self):
        resp = client.post("/hom", json={"reflectance": 1.5})
        assert resp.status_code == 422
