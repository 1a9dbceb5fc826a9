"""Global logical clock counting sequential work units.

Every sequential hash step and every charged circuit evaluation advances
the clock; timestamps and deadline comparisons are expressed in these
units, which keeps the protocol's timing behaviour deterministic and
test-stable.
"""

from __future__ import annotations

import threading
from contextlib import contextmanager

from .errors import BudgetExceeded


class MeteredClock:
    """Monotone step counter with an optional hard budget per phase.

    `charge` is atomic; a clock may be shared by concurrent prover /
    solver threads.
    """

    def __init__(self, start: int = 0):
        if start < 0:
            raise ValueError("clock cannot start negative")
        self._now = start
        self._lock = threading.Lock()
        self._phase_start: int | None = None
        self._phase_budget: int | None = None

    @property
    def now(self) -> int:
        return self._now

    def charge(self, steps: int = 1) -> int:
        if steps < 0:
            raise ValueError("cannot charge negative steps")
        with self._lock:
            if self._phase_budget is not None:
                used = self._now - self._phase_start
                if used + steps > self._phase_budget:
                    raise BudgetExceeded(
                        f"charge of {steps} exceeds phase budget "
                        f"{self._phase_budget} (used {used})"
                    )
            self._now += steps
            return self._now

    @contextmanager
    def phase_budget(self, budget: int | None):
        """Bound all charges inside the context to at most `budget` steps.

        A budget of None means unlimited.
        """
        prev = (self._phase_start, self._phase_budget)
        if budget is not None:
            self._phase_start = self._now
            self._phase_budget = budget
        try:
            yield self
        finally:
            self._phase_start, self._phase_budget = prev
