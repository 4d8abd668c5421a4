"""Distributed dynamic simulation: schedules, ledgers and the protocol runners."""

from .ledger import CommLedger, ProtocolRun, TimeRecord
from .runners import (
    RUNNERS,
    apply_deletions_policy,
    blackboard_rounds,
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
from .schedule import EventKind, ScheduleError, StreamSchedule, UpdateEvent

__all__ = [
    "CommLedger",
    "ProtocolRun",
    "TimeRecord",
    "RUNNERS",
    "apply_deletions_policy",
    "blackboard_rounds",
    "derive_seed",
    "get_runner",
    "message_passing_rounds",
    "run_algorithm",
    "run_cntrl",
    "run_d2cabl",
    "run_d2camp",
    "run_stbl",
    "run_stmp",
    "EventKind",
    "ScheduleError",
    "StreamSchedule",
    "UpdateEvent",
]
