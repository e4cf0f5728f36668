"""Resident-set sampling on a background thread."""

from __future__ import annotations

import threading

from casim.errors import PlatformUnsupported

DEFAULT_INTERVAL = 0.05


def _process():
    try:
        import psutil
    except ImportError as exc:  # pragma: no cover
        raise PlatformUnsupported("psutil is not installed") from exc
    try:
        proc = psutil.Process()
        proc.memory_info()
    except (psutil.Error, NotImplementedError, OSError) as exc:
        raise PlatformUnsupported(f"cannot read process memory: {exc}") from exc
    return proc


def rss_bytes() -> int:
    return _process().memory_info().rss


class MemorySampler:
    """Samples this process's RSS every ``interval`` seconds while active.

    ``baseline`` is taken on entry, before anything is built; :attr:`peak`
    is the largest sample seen minus that baseline.
    """

    def __init__(self, interval: float = DEFAULT_INTERVAL):
        if interval <= 0:
            raise ValueError("sample interval must be positive")
        self.interval = interval
        self._proc = _process()
        self.baseline: int | None = None
        self.max_rss = 0
        self.samples = 0
        self._stop = threading.Event()
        self._thread: threading.Thread | None = None

    def _sample(self) -> None:
        rss = self._proc.memory_info().rss
        self.samples += 1
        if rss > self.max_rss:
            self.max_rss = rss

    def _run(self) -> None:
        while not self._stop.wait(self.interval):
            self._sample()

    def start(self) -> "MemorySampler":
        self.baseline = self._proc.memory_info().rss
        self.max_rss = self.baseline
        self._stop.clear()
        self._thread = threading.Thread(target=self._run, name="rss-sampler", daemon=True)
        self._thread.start()
        return self

    def stop(self) -> int:
        if self._thread is not None:
            self._stop.set()
            self._thread.join()
            self._thread = None
            self._sample()
        return self.peak

    @property
    def running(self) -> bool:
        return self._thread is not None

    @property
    def peak(self) -> int:
        if self.baseline is None:
            return 0
        return max(0, self.max_rss - self.baseline)

    def __enter__(self) -> "MemorySampler":
        return self.start()

    def __exit__(self, *exc) -> None:
        self.stop()


def sample_peak_memory(handle: MemorySampler) -> int:
    """Peak growth over baseline observed so far, sampling once more right now."""
    if handle.running:
        handle._sample()
    return handle.peak
