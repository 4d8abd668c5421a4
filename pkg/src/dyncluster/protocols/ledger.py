"""Communication accounting and per-time-point protocol output."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path

from ..clustering.partition import Partition
from ..graph.core import Graph
from ..models.schemas import SamplerConfig

RUN_COLUMNS = ("tau", "comm_cumulative", "ncut")


@dataclass
class CommLedger:
    """Cumulative count of edges sent, closed once per time point."""

    algorithm: str
    cumulative: list[int] = field(default_factory=list)

    def close_time_point(self, sent: int) -> int:
        """Record ``sent`` edges for the next time point; returns the running total.

        Raises:
            ValueError: If ``sent`` is negative
        """
        if sent < 0:
            raise ValueError(f"Cannot send a negative number of edges ({sent})")
        total = self.total + sent
        self.cumulative.append(total)
        return total

    @property
    def total(self) -> int:
        return self.cumulative[-1] if self.cumulative else 0

    def at(self, tau: int) -> int:
        """Cumulative count after time point ``tau`` (1-based)."""
        return self.cumulative[tau - 1]


@dataclass(frozen=True)
class TimeRecord:
    """Output of one algorithm at one time point.

    ``partition`` is None on time points skipped by the clustering stride or
    when the coordinator's graph has fewer than k non-isolated nodes.
    """

    tau: int
    comm_cumulative: int
    ncut: float | None
    partition: Partition | None
    sketch_edges: int


@dataclass
class ProtocolRun:
    """Everything one algorithm produced over a schedule."""

    algorithm: str
    k: int
    records: list[TimeRecord]
    ledger: CommLedger
    final_graph: Graph
    sampler_config: SamplerConfig | None = None
    cluster_seed: int = 0
    cluster_every: int = 1

    @property
    def t(self) -> int:
        return len(self.records)

    @property
    def final_comm(self) -> int:
        return self.ledger.total

    @property
    def final_ncut(self) -> float | None:
        return self.records[-1].ncut if self.records else None

    def ncut_series(self) -> list[float | None]:
        return [r.ncut for r in self.records]

    def to_csv(self, path: str | Path) -> Path:
        """Write ``tau,comm_cumulative,ncut`` rows; undefined NCut is left blank."""
        out = Path(path)
        with out.open("w", newline="", encoding="utf-8") as f:
            writer = csv.writer(f)
            writer.writerow(RUN_COLUMNS)
            for r in self.records:
                writer.writerow([r.tau, r.comm_cumulative, "" if r.ncut is None else repr(r.ncut)])
        return out

    def summary(self) -> dict[str, object]:
        """JSON-ready digest of the run."""
        return {
            "algorithm": self.algorithm,
            "final_comm": self.final_comm,
            "final_ncut": self.final_ncut,
            "final_sketch_edges": self.records[-1].sketch_edges if self.records else 0,
            "sampler_seed": self.sampler_config.seed if self.sampler_config else None,
            "cluster_seed": self.cluster_seed,
        }
