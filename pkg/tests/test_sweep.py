"""Unit tests for the conjecture sweep, its record format and replay."""

import json

import pytest

from holebound.config import ExperimentConfig
from holebound.formats import to_graph6
from holebound.graph import Coloring
from holebound.sweep import (
    ExperimentRecord,
    cell_bounds,
    parse_records,
    passes_filter,
    plan_jobs,
    replay_records,
    run_conjecture_sweep,
    verify_record,
    write_sweep,
)
from tests.conftest import cycle_graph


def edgeless_config(**overrides):
    data = {
        "generators": [{"model": "gnp", "n_min": 3, "n_max": 6, "p": 0.0, "count": 3}],
        "ks": [1],
        "ells": [4],
        "workers": 2,
    }
    data.update(overrides)
    return ExperimentConfig.model_validate(data)


def chordal_config():
    return ExperimentConfig.model_validate({
        "generators": [{"model": "chordal", "n_min": 6, "n_max": 9, "width": 3, "count": 4}],
        "ks": [4],
        "ells": [4],
        "seed": 3,
        "workers": 3,
    })


def c5_record(**overrides):
    data = dict(
        index=0, generator=0, sample=0, graph6=to_graph6(cycle_graph(5)), n=5, m=5, status="complete",
        omega=2, clique=(0, 1), longest_hole=5, hole=(0, 1, 2, 3, 4), chi=3, chi_lower=3, chi_upper=3,
        coloring=Coloring({0: 0, 1: 1, 2: 0, 3: 1, 4: 2}, 3), cells=((2, 6),),
    )
    data.update(overrides)
    return ExperimentRecord(**data)


class TestPlanning:
    def test_jobs_follow_generator_order(self):
        jobs = plan_jobs(edgeless_config())
        assert [(j.index, j.generator, j.sample) for j in jobs] == [(0, 0, 0), (1, 0, 1), (2, 0, 2)]
        assert all(3 <= j.n <= 6 for j in jobs)

    def test_seed_changes_plan(self):
        first = [j.graph_seed for j in plan_jobs(edgeless_config(seed=1))]
        second = [j.graph_seed for j in plan_jobs(edgeless_config(seed=2))]
        assert first != second

    def test_filter(self):
        assert passes_filter(2, None, 2, 4)
        assert passes_filter(2, 5, 2, 6)
        assert not passes_filter(2, 6, 2, 6)
        assert not passes_filter(3, None, 2, 9)

    def test_triangle_free_bound_is_evaluable(self):
        assert cell_bounds([1], [4, 7]) == {(1, 4): 1, (1, 7): 1}


class TestSweep:
    def test_triangle_free_cell_has_chi_one(self):
        result = run_conjecture_sweep(edgeless_config())
        assert [r.index for r in result.records] == [0, 1, 2]
        assert all(r.complete and r.chi == 1 and r.cells == ((1, 4),) for r in result.records)
        (cell,) = result.table
        assert (cell.graphs, cell.max_chi, cell.bound) == (3, 1, 1)
        assert not any(r.bound_violations for r in result.records)

    def test_max_chi_table_over_all_cells(self):
        generators = [{"model": "gnp", "n_min": 4, "n_max": 4, "p": 0.0, "count": 1}]
        generators += [{"model": "gnp", "n_min": n, "n_max": n, "p": 1.0, "count": 1} for n in (2, 3)]
        config = ExperimentConfig.model_validate(
            {"generators": generators, "ks": [1, 2, 3], "ells": [4, 5, 6], "workers": 2}
        )
        result = run_conjecture_sweep(config)
        assert [(r.n, r.omega, r.chi) for r in result.records] == [(4, 1, 1), (2, 2, 2), (3, 3, 3)]
        table = {(cell.k, cell.ell): (cell.graphs, cell.max_chi) for cell in result.table}
        assert table == {(k, ell): (k, k) for k in (1, 2, 3) for ell in (4, 5, 6)}
        assert all(table[(1, ell)][1] == 1 for ell in (4, 5, 6))
        assert all(table[(k, 4)][1] == k for k in (1, 2, 3))

    def test_chordal_graphs_are_perfect(self):
        result = run_conjecture_sweep(chordal_config())
        for record in result.records:
            assert record.complete
            assert record.longest_hole is None
            assert record.chi == record.omega
            assert record.cells == ((4, 4),)
            assert record.outcomes["engine"] == "longhole"

    def test_reruns_are_byte_identical(self):
        first = run_conjecture_sweep(chordal_config())
        second = run_conjecture_sweep(chordal_config())
        assert first.records_jsonl() == second.records_jsonl()
        assert first.summary_csv() == second.summary_csv()

    def test_summary_csv(self):
        csv_text = run_conjecture_sweep(edgeless_config()).summary_csv()
        assert csv_text.splitlines() == ["k,ell,graphs,max_chi,main_bound", "1,4,3,1,1"]

    def test_budget_exhaustion_is_recorded(self):
        config = edgeless_config(
            generators=[{"model": "gnp", "n_min": 8, "n_max": 8, "p": 0.5, "count": 1}],
            limits={"node_budget": 0},
        )
        (record,) = run_conjecture_sweep(config).records
        assert record.status == "budget_exhausted"
        assert record.chi is None
        assert verify_record(record).ok

    def test_timings_only_on_request(self):
        (record,) = run_conjecture_sweep(edgeless_config(
            generators=[{"model": "gnp", "n_min": 3, "n_max": 3, "p": 0.0}], record_timings=True,
        )).records
        assert set(record.timings) >= {"omega", "longest_hole", "chi"}
        assert "timings" in record.to_json()


class TestReplay:
    def test_written_records_replay_clean(self, tmp_path):
        result = run_conjecture_sweep(chordal_config())
        records_at, summary_at = write_sweep(result, str(tmp_path / "out"))
        assert (tmp_path / "out" / "summary.csv").exists()
        verdicts = replay_records(records_at)
        assert len(verdicts) == 4
        assert all(v.ok for v in verdicts)

    def test_records_roundtrip_through_jsonl(self):
        result = run_conjecture_sweep(edgeless_config())
        assert parse_records(result.records_jsonl()) == result.records

    def test_hand_built_record(self):
        assert verify_record(c5_record()).ok

    def test_wrong_colouring_caught(self):
        bad = c5_record(coloring=Coloring({0: 0, 1: 1, 2: 0, 3: 1, 4: 0}, 2), chi=2)
        verdict = verify_record(bad)
        assert not verdict.ok
        assert any(d.startswith("coloring") for d in verdict.defects)

    def test_cell_outside_filter_caught(self):
        verdict = verify_record(c5_record(cells=((2, 5),)))
        assert verdict.defects == ("cell (2, 5) does not pass the filter",)

    def test_bad_clique_caught(self):
        assert not verify_record(c5_record(clique=(0, 2))).ok

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            replay_records(str(tmp_path / "records.jsonl"))

    def test_verdict_json(self):
        assert json.loads(json.dumps(verify_record(c5_record()).to_json())) == {"index": 0, "ok": True, "defects": []}
