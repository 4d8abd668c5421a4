"""Tests for the distributed clustering protocols and communication accounting."""

import numpy as np
import pytest

from src.dyncluster.clustering import ncut, spectral_cluster
from src.dyncluster.datasets.schedule_gen import gen_schedule
from src.dyncluster.graph.core import Graph, WeightedEdge, quadratic_form
from src.dyncluster.models.schemas import ALGORITHM_ORDER, SamplerConfig
from src.dyncluster.protocols import (
    CommLedger,
    EventKind,
    ProtocolRun,
    ScheduleError,
    StreamSchedule,
    UpdateEvent,
    apply_deletions_policy,
    derive_seed,
    get_runner,
    message_passing_rounds,
    run_algorithm,
    run_cntrl,
    run_d2cabl,
    run_d2camp,
    run_stbl,
    run_stmp,
)
from src.dyncluster.sparsify import OnlineSampler
from src.dyncluster.spanner import SpannerState

from .conftest import random_graph


def _tree_schedule(n: int, t: int, s: int) -> StreamSchedule:
    """Path 0-1-...-(n-1), edge i at time i % t + 1 and site i % s + 1."""
    events = [
        UpdateEvent(i % t + 1, i % s + 1, EventKind.INSERT, WeightedEdge(i, i + 1, 1.0 + i / n))
        for i in range(n - 1)
    ]
    return StreamSchedule(n, t, s, events)


@pytest.fixture
def churn_schedule(small_graph, small_cloud) -> StreamSchedule:
    """The small schedule with a tenth of its edges deleted."""
    return gen_schedule(small_graph, small_cloud, t=4, s=3, seed=0, delete_frac=0.1)


class TestCommLedger:
    """Test cumulative communication counts."""

    def test_running_total(self):
        """Test each closed time point adds to the total."""
        ledger = CommLedger("x")
        ledger.close_time_point(3)
        ledger.close_time_point(0)
        ledger.close_time_point(2)

        assert ledger.cumulative == [3, 3, 5]
        assert ledger.total == 5
        assert ledger.at(2) == 3

    def test_negative_rejected(self):
        """Test negative sends raise."""
        with pytest.raises(ValueError):
            CommLedger("x").close_time_point(-1)


class TestSeeds:
    """Test seed derivation."""

    def test_derive_seed_stable_and_distinct(self):
        """Test derived seeds are reproducible, 64-bit and key dependent."""
        a = derive_seed(7, 1)

        assert a == derive_seed(7, 1)
        assert 0 <= a < 2**64
        assert len({derive_seed(7, i) for i in range(1, 50)}) == 49
        assert derive_seed(7, 2, 1) != derive_seed(7, 1, 2)


class TestCentralized:
    """Test CNTRL."""

    def test_ledger_counts_every_insert(self, small_schedule):
        """Test CNTRL sends every update and ends at m."""
        run = run_cntrl(small_schedule, 4)

        expected = np.cumsum([small_schedule.inserts_at(tau) for tau in range(1, 5)]).tolist()
        assert run.ledger.cumulative == expected
        assert run.final_comm == small_schedule.insert_count

    def test_ncut_from_exact_graph(self, small_schedule):
        """Test the last NCut equals clustering the true final graph directly."""
        run = run_cntrl(small_schedule, 4, cluster_seed=2)
        truth = small_schedule.graph_at(4)

        assert run.final_ncut == pytest.approx(ncut(truth, spectral_cluster(truth, 4, seed=2)))

    def test_empty_time_point_has_no_ncut(self):
        """Test a coordinator with no edges yet reports no clustering."""
        events = [UpdateEvent(2, 1, EventKind.INSERT, WeightedEdge(i, i + 1)) for i in range(5)]
        run = run_cntrl(StreamSchedule(6, 2, 1, events), 2)

        assert run.records[0].ncut is None
        assert run.records[0].partition is None
        assert run.records[1].ncut is not None
        assert run.ledger.cumulative == [0, 5]

    def test_deletions_forwarded(self, churn_schedule):
        """Test CNTRL pays for every delete unless told not to."""
        with_deletes = run_cntrl(churn_schedule, 4)
        without = run_cntrl(churn_schedule, 4, forward_deletions=False)

        assert with_deletes.final_comm == churn_schedule.insert_count + churn_schedule.delete_count
        assert without.final_comm == churn_schedule.insert_count

    def test_cluster_stride(self, small_schedule):
        """Test skipped time points carry no NCut but the last is always scored."""
        run = run_cntrl(small_schedule, 4, cluster_every=3)

        assert [r.partition is not None for r in run.records] == [False, False, True, True]


class TestMonotoneProtocols:
    """Test D2-CAMP and D2-CABL."""

    def test_tree_stream_sends_every_edge(self):
        """Test every tree edge is kept with p=1 and sent exactly once."""
        schedule = _tree_schedule(40, t=5, s=4)
        cfg = SamplerConfig(n=40, seed=3)

        camp = run_d2camp(schedule, 2, cfg)
        cabl = run_d2cabl(schedule, 2, cfg)

        assert camp.final_comm == 39
        assert cabl.final_comm == 39
        assert camp.final_graph.m == 39

    def test_blackboard_matches_single_sampler(self, small_schedule, small_sampler_config):
        """Test D2-CABL is one sampler fed the inserts in processing order."""
        run = run_d2cabl(small_schedule, 4, small_sampler_config)
        sampler = OnlineSampler(small_sampler_config)
        sampler.offer_many(e.edge for e in small_schedule.events() if e.is_insert)

        assert run.final_comm == sampler.kept_count
        np.testing.assert_array_equal(run.final_graph.weights, sampler.to_graph().weights)

    def test_single_site_camp_equals_blackboard(
        self, small_graph, small_cloud, small_sampler_config
    ):
        """Test one site with the base seed reproduces the blackboard run."""
        schedule = gen_schedule(small_graph, small_cloud, t=3, s=1, seed=4)

        camp = run_d2camp(
            schedule,
            4,
            small_sampler_config,
            sketch_factory=lambda site: OnlineSampler(small_sampler_config),
        )
        cabl = run_d2cabl(schedule, 4, small_sampler_config)

        assert camp.ledger.cumulative == cabl.ledger.cumulative
        assert camp.ncut_series() == cabl.ncut_series()

    def test_coordinator_is_union_of_site_sparsifiers(self, small_schedule, small_sampler_config):
        """Test the coordinator graph decomposes into independent per-site samplers."""
        run = run_d2camp(small_schedule, 4, small_sampler_config)
        kept = 0
        for site in range(1, small_schedule.s + 1):
            cfg = small_sampler_config.with_seed(derive_seed(small_sampler_config.seed, site))
            sampler = OnlineSampler(cfg)
            sampler.offer_many(
                e.edge for e in small_schedule.events() if e.is_insert and e.site == site
            )
            kept += sampler.kept_count

        assert run.final_graph.m == kept
        assert run.final_comm == kept

    def test_union_approximates_live_graph_every_time_point(self):
        """Test the union of per-site sparsifiers tracks G^tau's quadratic form at each tau."""
        n, s, t = 100, 3, 4
        g = random_graph(n, 1.0, seed=21)
        rng = np.random.default_rng(21)
        times = rng.integers(1, t + 1, size=g.m)
        sites = rng.integers(1, s + 1, size=g.m)
        events = [
            UpdateEvent(int(tau), int(site), EventKind.INSERT, e)
            for tau, site, e in zip(times, sites, g.edges())
        ]
        schedule = StreamSchedule(n, t, s, events)
        cfg = SamplerConfig(n=n, oversampling=4.0, seed=21)

        received: list[WeightedEdge] = []
        rounds = message_passing_rounds(
            schedule, lambda site: OnlineSampler(cfg.with_seed(derive_seed(cfg.seed, site)))
        )
        for (tau, sent, _), (_, truth) in zip(rounds, schedule.live_graphs()):
            received.extend(sent)
            union = Graph(n, received)
            for _ in range(20):
                x = rng.normal(size=n)
                ratio = quadratic_form(union, x) / quadratic_form(truth, x)
                assert 0.6 <= ratio <= 1.4, f"tau={tau}"

        assert union.m < truth.m

    def test_comm_never_exceeds_inserts(self, small_schedule, small_sampler_config):
        """Test sketches only send offered edges."""
        for run in (
            run_d2camp(small_schedule, 4, small_sampler_config),
            run_d2cabl(small_schedule, 4, small_sampler_config),
        ):
            assert run.final_comm <= small_schedule.insert_count
            assert run.ledger.cumulative == sorted(run.ledger.cumulative)

    def test_deterministic(self, small_schedule, small_sampler_config):
        """Test identical inputs reproduce ledgers and NCut series."""
        a = run_d2camp(small_schedule, 4, small_sampler_config, cluster_seed=1)
        b = run_d2camp(small_schedule, 4, small_sampler_config, cluster_seed=1)

        assert a.ledger.cumulative == b.ledger.cumulative
        assert a.ncut_series() == b.ncut_series()

    def test_single_time_point(self, small_graph, small_cloud, small_sampler_config):
        """Test t=1 gives one record per algorithm."""
        schedule = gen_schedule(small_graph, small_cloud, t=1, s=2, seed=0)

        for name in ALGORITHM_ORDER:
            run = run_algorithm(name, schedule, 4, small_sampler_config)
            assert run.t == 1
            assert len(run.ledger.cumulative) == 1

    def test_spanner_as_site_sketch(self, small_schedule, small_sampler_config):
        """Test message passing accepts any monotone sketch."""
        run = run_d2camp(
            small_schedule,
            4,
            small_sampler_config,
            sketch_factory=lambda site: SpannerState(small_schedule.n, 2),
        )

        assert 0 < run.final_comm <= small_schedule.insert_count

    def test_sampler_required(self, small_schedule):
        """Test sketch algorithms refuse to run without a sampler config."""
        with pytest.raises(ValueError):
            run_d2camp(small_schedule, 4)

    def test_sampler_size_mismatch(self, small_schedule):
        """Test a sampler sized for another graph is rejected."""
        with pytest.raises(ScheduleError):
            run_d2cabl(small_schedule, 4, SamplerConfig(n=small_schedule.n + 1))


class TestStaticRebuilds:
    """Test STMP and STBL."""

    def test_tree_rebuild_costs(self):
        """Test a forest is resent in full every time point."""
        schedule = _tree_schedule(30, t=4, s=3)
        cfg = SamplerConfig(n=30, seed=0)
        live = [schedule.graph_at(tau).m for tau in range(1, 5)]

        for runner in (run_stmp, run_stbl):
            run = runner(schedule, 2, cfg)
            assert run.ledger.cumulative == np.cumsum(live).tolist()

    def test_static_pays_more_than_monotone(self, small_schedule, small_sampler_config):
        """Test resending sparsifiers costs more than sending increments."""
        stmp = run_stmp(small_schedule, 4, small_sampler_config)
        camp = run_d2camp(small_schedule, 4, small_sampler_config)

        assert stmp.final_comm > camp.final_comm


class TestRegistry:
    """Test runner lookup."""

    def test_every_algorithm_registered(self):
        """Test each name maps to a runner."""
        for name in ALGORITHM_ORDER:
            assert callable(get_runner(name))

    def test_unknown_algorithm(self):
        """Test unknown names raise KeyError."""
        with pytest.raises(KeyError):
            get_runner("kmeans")


class TestDeletionPolicy:
    """Test how runs meet schedules with deletions."""

    def test_monotone_ledger_unchanged(self, churn_schedule, small_sampler_config):
        """Test deletions cost D2 algorithms nothing and only NCut is rescored."""
        for runner in (run_d2camp, run_d2cabl):
            base = runner(churn_schedule.without_deletions(), 4, small_sampler_config)
            policy = apply_deletions_policy(base, churn_schedule)

            assert policy.ledger.cumulative == base.ledger.cumulative
            assert policy.ledger is not base.ledger
            assert [r.partition for r in policy.records] == [r.partition for r in base.records]
            truth = churn_schedule.graph_at(churn_schedule.t)
            assert policy.final_ncut == pytest.approx(ncut(truth, policy.records[-1].partition))

    def test_monotone_runs_ignore_deletes_natively(self, churn_schedule, small_sampler_config):
        """Test running on the deleting schedule matches the policy result."""
        direct = run_d2camp(churn_schedule, 4, small_sampler_config)
        base = run_d2camp(churn_schedule.without_deletions(), 4, small_sampler_config)
        policy = apply_deletions_policy(base, churn_schedule)

        assert direct.ledger.cumulative == policy.ledger.cumulative
        assert direct.ncut_series() == policy.ncut_series()

    def test_cntrl_rerun_adds_deletes(self, churn_schedule):
        """Test CNTRL is rerun and pays every delete on top."""
        base = run_cntrl(churn_schedule.without_deletions(), 4)
        policy = apply_deletions_policy(base, churn_schedule)

        deletes = np.cumsum([churn_schedule.deletes_at(tau) for tau in range(1, 5)])
        assert policy.ledger.cumulative == list(np.array(base.ledger.cumulative) + deletes)

    def test_no_deletions_is_identity(self, small_schedule):
        """Test a deletion-free schedule returns the run as is."""
        run = run_cntrl(small_schedule, 4)

        assert apply_deletions_policy(run, small_schedule) is run

    def test_shape_mismatch(self, small_schedule, churn_schedule):
        """Test runs over a different horizon are rejected."""
        run = ProtocolRun("cntrl", 4, [], CommLedger("cntrl"), small_schedule.graph_at(1))

        with pytest.raises(ScheduleError):
            apply_deletions_policy(run, churn_schedule)


class TestRunOutput:
    """Test run CSV and summary."""

    def test_csv_blank_for_missing_ncut(self, temp_dir):
        """Test undefined NCut is written as an empty field."""
        events = [UpdateEvent(2, 1, EventKind.INSERT, WeightedEdge(i, i + 1)) for i in range(5)]
        run = run_cntrl(StreamSchedule(6, 2, 1, events), 2)
        lines = run.to_csv(temp_dir / "cntrl.csv").read_text().splitlines()

        assert lines[0] == "tau,comm_cumulative,ncut"
        assert lines[1] == "1,0,"
        assert lines[2].startswith("2,5,")

    def test_summary_keys(self, small_schedule, small_sampler_config):
        """Test the summary carries comm, NCut and seeds."""
        summary = run_d2cabl(small_schedule, 4, small_sampler_config).summary()

        assert summary["algorithm"] == "d2cabl"
        assert summary["sampler_seed"] == small_sampler_config.seed
        assert set(summary) >= {"final_comm", "final_ncut", "final_sketch_edges"}
