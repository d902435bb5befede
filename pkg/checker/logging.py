import sys
import threading
from pathlib import Path
from typing import Final, IO, Optional

from checker.log_models import SEVERITY_RANKS, ActivityLog, LogAuthor, LogType, Severity

import orjson

__all__ = ('Logger',)

class Logger:
    '''Buffers activity records and flushes them as JSON lines to stderr or a file'''
    __slots__ = ('__weakref__',
                 '_buffer', '_lock', '_sink', '_owns_sink',
                 '_batch_size', '_minimum_severity')

    def __init__(self,
                 batch_size: int,
                 sink: str = 'stderr',
                 minimum_severity: Severity = Severity.INFO):
        self._batch_size: int = batch_size
        self._minimum_severity: Severity = minimum_severity
        self._buffer: list[ActivityLog] = []
        self._lock: Final[threading.Lock] = threading.Lock()

        self._owns_sink: bool = sink != 'stderr'
        self._sink: Optional[IO[bytes]] = None if self._owns_sink else sys.stderr.buffer
        if self._owns_sink:
            log_path: Path = Path(sink)
            log_path.parent.mkdir(parents=True, exist_ok=True)
            self._sink = log_path.open('ab')

    @property
    def batch_size(self) -> int:
        return self._batch_size
    @batch_size.setter
    def batch_size(self, value: int) -> None:
        if not isinstance(value, int) or value <= 0:
            raise ValueError("Batch size must be a positive integer")
        self._batch_size = value

    @property
    def minimum_severity(self) -> Severity:
        return self._minimum_severity

    def enqueue_log(self, log: ActivityLog) -> None:
        if SEVERITY_RANKS[Severity(log.reported_severity)] < SEVERITY_RANKS[self._minimum_severity]:
            return
        with self._lock:
            self._buffer.append(log)
            if len(self._buffer) >= self._batch_size:
                self._flush_locked()

    def log(self,
            severity: Severity,
            details: str,
            category: LogType = LogType.UNKNOWN,
            author: LogAuthor = LogAuthor.CHECKER,
            scenario: Optional[str] = None) -> None:
        self.enqueue_log(ActivityLog(reported_severity=severity,
                                     logged_by=author,
                                     log_category=category,
                                     log_details=details[:2048],
                                     scenario_concerned=scenario))

    def _flush_locked(self) -> None:
        if not self._buffer or self._sink is None:
            self._buffer.clear()
            return
        try:
            self._sink.write(b''.join(orjson.dumps(entry.model_dump(mode='json')) + b'\n' for entry in self._buffer))
            self._sink.flush()
        except (OSError, ValueError):
            # Logging must never take a run down with it
            pass
        self._buffer.clear()

    def flush(self) -> None:
        with self._lock:
            self._flush_locked()

    def close(self) -> None:
        with self._lock:
            self._flush_locked()
            if self._owns_sink and self._sink is not None:
                self._sink.close()
            self._sink = None
