"""Append-only tables that grow on demand.

Rows are computed lazily from the rows already present and published by
replacing the row list, so readers never observe a partially built table.
"""

import logging
import threading
from dataclasses import dataclass, field
from typing import Callable, Generic, List, TypeVar

logger = logging.getLogger(__name__)

T = TypeVar("T")


@dataclass
class GrowingTable(Generic[T]):
    """Lazily extended table indexed from 0.

    ``build_row(n, rows)`` receives the index of the missing row and the
    rows ``0..n-1`` built so far. Capacity grows geometrically.
    """

    name: str
    build_row: Callable[[int, List[T]], T]
    initial_capacity: int = 16
    _rows: List[T] = field(default_factory=list, repr=False)
    _lock: threading.RLock = field(default_factory=threading.RLock, repr=False)

    def get(self, index: int) -> T:
        """Return row ``index``, extending the table when needed."""
        if index < 0:
            raise IndexError(f"{self.name}: negative index {index}")
        rows = self._rows
        if index < len(rows):
            return rows[index]
        self.ensure(index)
        return self._rows[index]

    def ensure(self, index: int) -> None:
        """Make sure rows ``0..index`` exist."""
        with self._lock:
            current = len(self._rows)
            if index < current:
                return
            target = max(index + 1, 2 * current, self.initial_capacity)
            rows = list(self._rows)
            while len(rows) < target:
                rows.append(self.build_row(len(rows), rows))
            self._rows = rows
            logger.debug(f"Table {self.name} extended from {current} to {target} rows")

    def rows(self, count: int) -> List[T]:
        """Return the first ``count`` rows as a new list."""
        if count <= 0:
            return []
        self.ensure(count - 1)
        return self._rows[:count]

    def clear(self) -> None:
        """Drop all rows."""
        with self._lock:
            self._rows = []

    def __contains__(self, index: int) -> bool:
        """Check whether row ``index`` is already built."""
        return 0 <= index < len(self._rows)

    def __len__(self) -> int:
        """Return number of rows built so far."""
        return len(self._rows)
