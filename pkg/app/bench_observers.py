########################
# Result Observers     #
########################

from abc import ABC, abstractmethod
import logging
from typing import Any

from app.bench_record import BenchRecord


class RecordObserver(ABC):
    """
    Abstract base class for benchmark observers.

    Observers are notified once per finished run with the record it produced.
    """

    @abstractmethod
    def update(self, record: BenchRecord) -> None:
        """
        Handle a finished run.

        Args:
            record (BenchRecord): The record of the run.
        """
        pass  # pragma: no cover


class LoggingObserver(RecordObserver):
    """Observer that writes every record to the log file."""

    def update(self, record: BenchRecord) -> None:
        if record is None:
            raise AttributeError("Record cannot be None")
        logging.info(f"Run finished: {record}")
        if record.timed_out:
            logging.warning(f"{record.algorithm} exceeded the timeout at n={record.n}")


class AutoSaveObserver(RecordObserver):
    """
    Observer that saves the result table after every run when auto-save is
    enabled in the configuration.
    """

    def __init__(self, runner: Any):
        """
        Args:
            runner (Any): Must have 'config' and 'save_results' attributes.

        Raises:
            TypeError: If the runner does not have the required attributes.
        """
        if not hasattr(runner, 'config') or not hasattr(runner, 'save_results'):
            raise TypeError("Runner must have 'config' and 'save_results' attributes")
        self.runner = runner

    def update(self, record: BenchRecord) -> None:
        if record is None:
            raise AttributeError("Record cannot be None")
        if self.runner.config.auto_save:
            self.runner.save_results()
            logging.info("Results auto-saved")
