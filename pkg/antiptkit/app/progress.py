from __future__ import annotations

from typing import Iterable, Iterator, Protocol, TypeVar

T = TypeVar("T")


class ProgressCallback(Protocol):
    def start(self, total: int) -> None: ...

    def advance(self, step: int = 1) -> None: ...

    def finish(self) -> None: ...


class NullProgress:
    def start(self, total: int) -> None:
        return None

    def advance(self, step: int = 1) -> None:
        return None

    def finish(self) -> None:
        return None


def tracked(items: Iterable[T], total: int, progress: ProgressCallback | None) -> Iterator[T]:
    """Yield items unchanged, advancing the progress callback once per item."""
    progress = progress or NullProgress()
    progress.start(total)
    try:
        for item in items:
            progress.advance()
            yield item
    finally:
        progress.finish()
