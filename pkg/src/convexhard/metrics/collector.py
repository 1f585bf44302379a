"""Simple in-memory metrics collection for solver and check stages.

Each stage (a solver run, a lemma check) records its wall time and the number
of search nodes it explored. The check battery reads both back into its report.
"""

import threading
import time
from dataclasses import dataclass, field
from typing import Any, Dict


@dataclass
class MetricsData:
    """Container for stage metrics."""

    total_stages: int = 0
    successful_stages: int = 0
    failed_stages: int = 0
    wall_times: Dict[str, float] = field(default_factory=dict)
    explored: Dict[str, int] = field(default_factory=dict)
    failures: Dict[str, int] = field(default_factory=dict)

    @property
    def total_seconds(self) -> float:
        return sum(self.wall_times.values())


class MetricsCollector:
    """Thread-safe in-memory metrics collector."""

    def __init__(self) -> None:
        self._data = MetricsData()
        self._lock = threading.Lock()

    def record_stage_start(self) -> float:
        """Record the start of a stage and return a start timestamp."""
        return time.perf_counter()

    def record_stage_success(
        self, start_time: float, stage: str, explored: int = 0
    ) -> None:
        """Record a finished stage with its wall time and explored node count.

        Repeated stages accumulate.
        """
        elapsed = time.perf_counter() - start_time

        with self._lock:
            self._data.total_stages += 1
            self._data.successful_stages += 1
            self._data.wall_times[stage] = self._data.wall_times.get(stage, 0.0) + elapsed
            if explored:
                self._data.explored[stage] = self._data.explored.get(stage, 0) + explored

    def record_stage_failure(self, stage: str) -> None:
        """Record a stage that raised instead of finishing."""
        with self._lock:
            self._data.total_stages += 1
            self._data.failed_stages += 1
            self._data.failures[stage] = self._data.failures.get(stage, 0) + 1

    def get_metrics(self) -> Dict[str, Any]:
        """Get current metrics as a dictionary; wall times in seconds."""
        with self._lock:
            return {
                "total_stages": self._data.total_stages,
                "successful_stages": self._data.successful_stages,
                "failed_stages": self._data.failed_stages,
                "total_seconds": round(self._data.total_seconds, 6),
                "wall_times": {k: round(v, 6) for k, v in self._data.wall_times.items()},
                "explored": dict(self._data.explored),
                "failures": dict(self._data.failures),
            }

    def reset_metrics(self) -> None:
        """Reset all metrics to zero."""
        with self._lock:
            self._data = MetricsData()

