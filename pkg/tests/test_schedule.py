"""Tests for update schedules."""

import pytest

from src.dyncluster.graph.core import WeightedEdge
from src.dyncluster.protocols.schedule import (
    EventKind,
    ScheduleError,
    StreamSchedule,
    UpdateEvent,
)


def _ins(time: int, site: int, u: int, v: int, w: float = 1.0) -> UpdateEvent:
    return UpdateEvent(time, site, EventKind.INSERT, WeightedEdge(u, v, w))


def _del(time: int, site: int, u: int, v: int, w: float = 1.0) -> UpdateEvent:
    return UpdateEvent(time, site, EventKind.DELETE, WeightedEdge(u, v, w))


@pytest.fixture
def churn_schedule() -> StreamSchedule:
    """Three time points, two sites, one deletion at time 3."""
    return StreamSchedule(
        4,
        3,
        2,
        [
            _ins(1, 2, 0, 1),
            _ins(1, 1, 1, 2, 2.0),
            _ins(2, 1, 2, 3),
            _del(3, 2, 0, 1),
            _ins(3, 2, 0, 3, 0.5),
        ],
    )


class TestValidation:
    """Test schedule validation."""

    @pytest.mark.parametrize("t,s", [(0, 1), (1, 0)])
    def test_shape_must_be_positive(self, t, s):
        """Test t and s below 1 are rejected."""
        with pytest.raises(ScheduleError):
            StreamSchedule(3, t, s)

    def test_time_out_of_range(self):
        """Test events after t are rejected."""
        with pytest.raises(ScheduleError):
            StreamSchedule(3, 2, 1, [_ins(3, 1, 0, 1)])

    def test_site_out_of_range(self):
        """Test site indices are 1-based and at most s."""
        with pytest.raises(ScheduleError):
            StreamSchedule(3, 2, 2, [_ins(1, 0, 0, 1)])

    def test_node_out_of_range(self):
        """Test endpoints must be below n."""
        with pytest.raises(ScheduleError):
            StreamSchedule(3, 1, 1, [_ins(1, 1, 0, 3)])

    def test_duplicate_insert_same_site_and_time(self):
        """Test one site cannot insert an edge twice in one time point."""
        with pytest.raises(ScheduleError):
            StreamSchedule(3, 1, 1, [_ins(1, 1, 0, 1), _ins(1, 1, 1, 0, 2.0)])

    def test_same_edge_at_two_sites_allowed(self):
        """Test different sites may hold parallel copies."""
        schedule = StreamSchedule(3, 1, 2, [_ins(1, 1, 0, 1), _ins(1, 2, 0, 1)])

        assert schedule.graph_at(1).m == 2

    def test_delete_without_insert(self):
        """Test deleting an edge never inserted fails."""
        with pytest.raises(ScheduleError):
            StreamSchedule(3, 2, 1, [_del(2, 1, 0, 1)])

    def test_delete_at_other_site(self):
        """Test deletions must happen at the inserting site."""
        with pytest.raises(ScheduleError):
            StreamSchedule(3, 2, 2, [_ins(1, 1, 0, 1), _del(2, 2, 0, 1)])

    def test_delete_in_insert_time_point(self):
        """Test a delete must come strictly after its insert."""
        with pytest.raises(ScheduleError):
            StreamSchedule(3, 2, 1, [_ins(1, 1, 0, 1), _del(1, 1, 0, 1)])


class TestOrderingAndCounts:
    """Test event grouping and counters."""

    def test_events_sorted_by_time_then_site(self, churn_schedule):
        """Test processing order is time, then site, then arrival."""
        order = [(e.time, e.site) for e in churn_schedule.events()]

        assert order == sorted(order)
        site_two = [e.edge.endpoints for e in churn_schedule.events_at(3) if e.site == 2]
        assert site_two == [(0, 1), (0, 3)]

    def test_counts(self, churn_schedule):
        """Test insert and delete tallies."""
        assert churn_schedule.insert_count == 4
        assert churn_schedule.delete_count == 1
        assert churn_schedule.inserts_at(1) == 2
        assert churn_schedule.deletes_at(3) == 1
        assert [churn_schedule.deletes_at(tau) for tau in (1, 2, 3)] == [0, 0, 1]

    def test_events_at_range(self, churn_schedule):
        """Test asking for time 0 raises."""
        with pytest.raises(ScheduleError):
            churn_schedule.events_at(0)


class TestLiveGraphs:
    """Test graph reconstruction after each time point."""

    def test_graph_at_applies_deletions(self, churn_schedule):
        """Test the deleted edge is gone at time 3."""
        g2 = churn_schedule.graph_at(2)
        g3 = churn_schedule.graph_at(3)

        assert sorted(e.endpoints for e in g2.edges()) == [(0, 1), (1, 2), (2, 3)]
        assert sorted(e.endpoints for e in g3.edges()) == [(0, 3), (1, 2), (2, 3)]
        assert g3.total_weight == pytest.approx(3.5)

    def test_live_site_edges_split_by_site(self, churn_schedule):
        """Test per-site live sets after each time point."""
        snapshots = dict(churn_schedule.live_site_edges())

        assert [e.endpoints for e in snapshots[1][0]] == [(1, 2)]
        assert [e.endpoints for e in snapshots[1][1]] == [(0, 1)]
        assert [e.endpoints for e in snapshots[3][1]] == [(0, 3)]

    def test_without_deletions(self, churn_schedule):
        """Test dropping deletes keeps every insert live."""
        plain = churn_schedule.without_deletions()

        assert plain.delete_count == 0
        assert plain.graph_at(3).m == 4

    def test_reinsert_after_delete(self):
        """Test an edge can come back after being deleted."""
        schedule = StreamSchedule(
            2, 3, 1, [_ins(1, 1, 0, 1), _del(2, 1, 0, 1), _ins(3, 1, 0, 1, 4.0)]
        )

        assert schedule.graph_at(2).m == 0
        assert schedule.graph_at(3).total_weight == 4.0


class TestScheduleFile:
    """Test schedule CSV persistence."""

    def test_round_trip(self, temp_dir, churn_schedule):
        """Test the header restores n, t and s and events survive."""
        path = churn_schedule.to_csv(temp_dir / "schedule.csv")
        loaded = StreamSchedule.from_csv(path)

        assert (loaded.n, loaded.t, loaded.s) == (4, 3, 2)
        assert list(loaded.events()) == list(churn_schedule.events())

    def test_header_free_file_infers_shape(self, temp_dir):
        """Test files without the comment header infer n, t and s."""
        path = temp_dir / "schedule.csv"
        path.write_text("time,site,kind,u,v,w\n1,1,I,0,1,1.0\n2,3,I,1,4,0.5\n")

        loaded = StreamSchedule.from_csv(path)

        assert (loaded.n, loaded.t, loaded.s) == (5, 2, 3)

    def test_bad_kind(self, temp_dir):
        """Test unknown event kinds raise ScheduleError."""
        path = temp_dir / "schedule.csv"
        path.write_text("time,site,kind,u,v,w\n1,1,X,0,1,1.0\n")

        with pytest.raises(ScheduleError):
            StreamSchedule.from_csv(path)

    def test_bad_header(self, temp_dir):
        """Test wrong columns raise ScheduleError."""
        path = temp_dir / "schedule.csv"
        path.write_text("t,s,u,v\n1,1,0,1\n")

        with pytest.raises(ScheduleError):
            StreamSchedule.from_csv(path)
