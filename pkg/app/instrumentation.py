########################
# Operation Counting   #
########################

from collections import Counter
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass, field
from typing import Iterator, Optional, Tuple


@dataclass
class OpTally:
    """
    Running count of ground-field operations.

    ``events`` counts occurrences of named kernel calls (one per call) and
    ``event_ops`` the operations charged under each name.
    """

    ops: int = 0
    events: Counter = field(default_factory=Counter)
    event_ops: Counter = field(default_factory=Counter)

    def ops_excluding(self, *events: str) -> int:
        return self.ops - sum(self.event_ops[name] for name in events)


_active_tallies: ContextVar[Tuple[OpTally, ...]] = ContextVar("_active_tallies", default=())


@contextmanager
def count_ops(isolated: bool = False) -> Iterator[OpTally]:
    """
    Count every operation charged inside the ``with`` block.

    Nested blocks all receive the charges made while they are open. An
    ``isolated`` block hides the charges from the blocks around it.
    """
    tally = OpTally()
    outer = () if isolated else _active_tallies.get()
    token = _active_tallies.set(outer + (tally,))
    try:
        yield tally
    finally:
        _active_tallies.reset(token)


def charge(ops: int, event: Optional[str] = None) -> None:
    """Charge ``ops`` operations to every open tally."""
    tallies = _active_tallies.get()
    if not tallies:
        return
    for tally in tallies:
        tally.ops += ops
        if event is not None:
            tally.events[event] += 1
            tally.event_ops[event] += ops
