"""Distributed update streams: which site sees which edge change at which time point."""

from __future__ import annotations

import csv
import logging
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

from ..graph.core import Graph, WeightedEdge

logger = logging.getLogger(__name__)

SCHEDULE_COLUMNS = ("time", "site", "kind", "u", "v", "w")


class ScheduleError(ValueError):
    """Raised for malformed or inconsistent update schedules."""

    pass


class EventKind(str, Enum):
    """Edge insertion or deletion."""

    INSERT = "I"
    DELETE = "D"


@dataclass(frozen=True)
class UpdateEvent:
    """One edge update observed by one site at one time point (both 1-based)."""

    time: int
    site: int
    kind: EventKind
    edge: WeightedEdge

    @property
    def is_insert(self) -> bool:
        return self.kind is EventKind.INSERT


_LiveStore = dict[tuple[int, int], list[tuple[int, float]]]


class StreamSchedule:
    """Validated update stream over ``t`` time points and ``s`` sites on ``n`` nodes.

    Events are held grouped by (time, site); within a group they keep their
    arrival order. Sites are processed in index order inside a time point.
    """

    def __init__(self, n: int, t: int, s: int, events: Iterable[UpdateEvent] = ()) -> None:
        """Build and validate a schedule.

        Args:
            n: Node count
            t: Number of time points
            s: Number of sites
            events: Update events in arrival order

        Raises:
            ScheduleError: On out-of-range times, sites or nodes, duplicate
                inserts within a (site, time) pair, or deletes without an
                earlier live insert at the same site
        """
        if t < 1 or s < 1:
            raise ScheduleError(f"Need t >= 1 and s >= 1, got t={t}, s={s}")
        if n < 0:
            raise ScheduleError(f"Node count must be non-negative, got {n}")
        self._n = n
        self._t = t
        self._s = s

        ordered = sorted(events, key=lambda e: (e.time, e.site))
        self._by_time: list[list[UpdateEvent]] = [[] for _ in range(t + 1)]
        for event in ordered:
            if not 1 <= event.time <= t:
                raise ScheduleError(f"Event time {event.time} outside [1, {t}]")
            if not 1 <= event.site <= s:
                raise ScheduleError(f"Event site {event.site} outside [1, {s}]")
            if event.edge.v >= n:
                raise ScheduleError(f"Edge ({event.edge.u}, {event.edge.v}) outside n={n}")
            self._by_time[event.time].append(event)

        self._validate()
        self._insert_counts = [
            sum(1 for e in self._by_time[tau] if e.is_insert) for tau in range(t + 1)
        ]
        self._delete_counts = [
            len(self._by_time[tau]) - self._insert_counts[tau] for tau in range(t + 1)
        ]

    def _validate(self) -> None:
        live = self._empty_store()
        for tau in range(1, self._t + 1):
            seen: set[tuple[int, int, int]] = set()
            for event in self._by_time[tau]:
                if event.is_insert:
                    key = (event.site, event.edge.u, event.edge.v)
                    if key in seen:
                        raise ScheduleError(
                            f"Edge ({event.edge.u}, {event.edge.v}) inserted twice at "
                            f"site {event.site}, time {tau}"
                        )
                    seen.add(key)
                self._apply(live, event)

    def _empty_store(self) -> list[_LiveStore]:
        return [{} for _ in range(self._s + 1)]

    @staticmethod
    def _apply(live: list[_LiveStore], event: UpdateEvent) -> None:
        store = live[event.site]
        key = event.edge.endpoints
        if event.is_insert:
            store.setdefault(key, []).append((event.time, event.edge.w))
            return

        instances = store.get(key, [])
        for i, (inserted, _) in enumerate(instances):
            if inserted < event.time:
                del instances[i]
                if not instances:
                    del store[key]
                return
        raise ScheduleError(
            f"Delete of ({key[0]}, {key[1]}) at site {event.site}, time {event.time} "
            "has no earlier live insert"
        )

    @property
    def n(self) -> int:
        return self._n

    @property
    def t(self) -> int:
        return self._t

    @property
    def s(self) -> int:
        return self._s

    @property
    def insert_count(self) -> int:
        return sum(self._insert_counts)

    @property
    def delete_count(self) -> int:
        return sum(self._delete_counts)

    def events(self) -> Iterator[UpdateEvent]:
        """All events in processing order."""
        for tau in range(1, self._t + 1):
            yield from self._by_time[tau]

    def events_at(self, tau: int) -> tuple[UpdateEvent, ...]:
        """Events at time point ``tau``, sites in index order."""
        if not 1 <= tau <= self._t:
            raise ScheduleError(f"Time point {tau} outside [1, {self._t}]")
        return tuple(self._by_time[tau])

    def inserts_at(self, tau: int) -> int:
        return self._insert_counts[tau]

    def deletes_at(self, tau: int) -> int:
        return self._delete_counts[tau]

    def live_site_edges(self) -> Iterator[tuple[int, list[list[WeightedEdge]]]]:
        """Yield ``(tau, per_site_edges)`` with each site's live edge set after ``tau``.

        ``per_site_edges[i - 1]`` lists site i's live edges in arrival order.
        """
        live = self._empty_store()
        for tau in range(1, self._t + 1):
            for event in self._by_time[tau]:
                self._apply(live, event)
            per_site = [
                [WeightedEdge(u, v, w) for (u, v), inst in store.items() for _, w in inst]
                for store in live[1:]
            ]
            yield tau, per_site

    def live_graphs(self) -> Iterator[tuple[int, Graph]]:
        """Yield ``(tau, G^tau)``: the union of all live site edges after ``tau``."""
        for tau, per_site in self.live_site_edges():
            yield tau, Graph(self._n, (e for edges in per_site for e in edges))

    def graph_at(self, tau: int) -> Graph:
        """The true global graph after applying every event up to ``tau``."""
        if not 1 <= tau <= self._t:
            raise ScheduleError(f"Time point {tau} outside [1, {self._t}]")
        for current, graph in self.live_graphs():
            if current == tau:
                return graph
        raise AssertionError("unreachable")

    def without_deletions(self) -> StreamSchedule:
        """Same schedule with every delete event dropped."""
        return StreamSchedule(self._n, self._t, self._s, (e for e in self.events() if e.is_insert))

    def to_csv(self, path: str | Path) -> Path:
        """Write ``time,site,kind,u,v,w`` rows behind a ``# n=.. t=.. s=..`` header."""
        out = Path(path)
        with out.open("w", newline="", encoding="utf-8") as f:
            f.write(f"# n={self._n} t={self._t} s={self._s}\n")
            writer = csv.writer(f)
            writer.writerow(SCHEDULE_COLUMNS)
            for e in self.events():
                writer.writerow([e.time, e.site, e.kind.value, e.edge.u, e.edge.v, repr(e.edge.w)])
        logger.info(
            f"Wrote schedule with {self.insert_count} inserts, "
            f"{self.delete_count} deletes to {out}"
        )
        return out

    @classmethod
    def from_csv(
        cls, path: str | Path, n: int | None = None, t: int | None = None, s: int | None = None
    ) -> StreamSchedule:
        """Read a schedule file.

        Values missing from both the arguments and the ``#`` header are
        inferred from the largest node, time and site present.

        Raises:
            ScheduleError: On malformed rows or inconsistent events
        """
        src = Path(path)
        header: dict[str, int] = {}
        with src.open("r", newline="", encoding="utf-8") as f:
            lines = f.readlines()
        if lines and lines[0].startswith("#"):
            for token in lines[0].lstrip("#").split():
                key, _, value = token.partition("=")
                if value:
                    header[key] = int(value)
            lines = lines[1:]

        events = []
        reader = csv.DictReader(lines)
        if reader.fieldnames is None or tuple(reader.fieldnames) != SCHEDULE_COLUMNS:
            raise ScheduleError(f"Schedule {src} must have header {','.join(SCHEDULE_COLUMNS)}")
        for lineno, row in enumerate(reader, start=2):
            try:
                events.append(
                    UpdateEvent(
                        time=int(row["time"]),
                        site=int(row["site"]),
                        kind=EventKind(row["kind"]),
                        edge=WeightedEdge(int(row["u"]), int(row["v"]), float(row["w"])),
                    )
                )
            except (TypeError, ValueError) as e:
                raise ScheduleError(f"{src}:{lineno}: {e}") from e

        n = n if n is not None else header.get("n", max((e.edge.v for e in events), default=-1) + 1)
        t = t if t is not None else header.get("t", max((e.time for e in events), default=1))
        s = s if s is not None else header.get("s", max((e.site for e in events), default=1))
        return cls(n, t, s, events)

    def __repr__(self) -> str:
        return (
            f"StreamSchedule(n={self._n}, t={self._t}, s={self._s}, "
            f"inserts={self.insert_count}, deletes={self.delete_count})"
        )
