########################
# Benchmark Runner     #
########################

import logging
import os
import time
from pathlib import Path
from typing import Callable, Dict, List, Optional, Set

import numpy as np
import pandas as pd

from app.algorithms import Algorithm, AlgorithmFactory
from app.bench_observers import RecordObserver
from app.bench_record import ERROR, FAIL, PASS, SKIP, TIME_COLUMN, BenchRecord
from app.exceptions import CharacteristicTooSmall, OperationError, OreError, ZeroCharacteristic
from app.input_validators import BenchConfig
from app.instrumentation import count_ops
from app.matrixarith import BlockCounter
from app.ore_config import OreConfig, get_project_root, set_config
from app.orecore import PARTIAL, OrePoly, mul_naive
from app.random_ops import random_pair

FaultHook = Callable[[OrePoly], OrePoly]

COLUMNS = [
    'algorithm', 'strategy', 'n', 'd', 'r', 'p', 'trial', 'seed', 'elapsed_ns', 'timed_out',
    'naive_blocks', 'strassen_blocks', 'skipped_blocks', 'block_total', 'ops', 'status', 'note'
]


def _retag(P: OrePoly, tag: str) -> OrePoly:
    """The same coefficient grid read in the other derivation."""
    return P if P.tag == tag else OrePoly(tag, P.coeffs, P.domain)


class BenchRunner:
    """
    Runs verification and benchmark sweeps.

    For every size and trial one random pair is drawn; every algorithm of the
    sweep multiplies that pair (read as theta operators for the theta
    algorithms). Runs are timed, their ground-field operations and block
    products counted, and each finished run is handed to the observers.
    """

    def __init__(self, config: Optional[OreConfig] = None, fault_hook: Optional[FaultHook] = None):
        """
        Initialize the runner with configuration.

        Args:
            config (Optional[OreConfig], optional): Configuration settings. If not provided,
                settings are loaded from the environment.
            fault_hook (Optional[FaultHook], optional): Applied to every computed product
                before verification. Defaults to None.
        """
        if config is None:
            config = OreConfig(base_dir=get_project_root())

        self.config = config
        self.config.validate()
        set_config(self.config)

        os.makedirs(self.config.log_dir, exist_ok=True)
        self._setup_logging()

        self.records: List[BenchRecord] = []
        self.observers: List[RecordObserver] = []
        self.fault_hook = fault_hook

        self._setup_directories()
        logging.info("Benchmark runner initialized with configuration")

    def _setup_logging(self) -> None:
        """
        Configure the logging system.

        Sets up logging to a file with a specified format and log level.
        """
        try:
            os.makedirs(self.config.log_dir, exist_ok=True)
            log_file = self.config.log_file.resolve()

            logging.basicConfig(
                filename=str(log_file),
                level=logging.INFO,
                format='%(asctime)s - %(levelname)s - %(message)s',
                force=True  # Overwrite any existing logging configuration
            )
            logging.info(f"Logging initialized at: {log_file}")
        except Exception as e:
            print(f"Error setting up logging: {e}")
            raise

    def _setup_directories(self) -> None:
        self.config.results_dir.mkdir(parents=True, exist_ok=True)

    def add_observer(self, observer: RecordObserver) -> None:
        self.observers.append(observer)
        logging.info(f"Added observer: {observer.__class__.__name__}")

    def remove_observer(self, observer: RecordObserver) -> None:
        self.observers.remove(observer)
        logging.info(f"Removed observer: {observer.__class__.__name__}")

    def notify_observers(self, record: BenchRecord) -> None:
        for observer in self.observers:
            observer.update(record)

    def run(self, bench: BenchConfig) -> List[BenchRecord]:
        """
        Run a sweep.

        Sizes run in increasing order. Once an algorithm exceeds the timeout,
        its remaining larger sizes are recorded as skipped.

        Args:
            bench (BenchConfig): The sweep to run.

        Returns:
            List[BenchRecord]: One record per (size, trial, algorithm).

        Raises:
            InvalidConfig: If the sweep settings are invalid.
            UnknownAlgorithm: If an algorithm name is not registered.
        """
        bench.validate()
        algorithms = [(name, AlgorithmFactory.create_algorithm(name, bench.strategy)) for name in bench.algos]
        domain = bench.domain
        timed_out: Set[str] = set()
        produced: List[BenchRecord] = []
        logging.info(f"Starting sweep: algos={bench.algos} sizes={bench.sizes} p={bench.p} trials={bench.trials}")

        for n in sorted(set(bench.sizes)):
            for trial in range(bench.trials):
                seed = np.random.SeedSequence([bench.seed, n, trial])
                B, A = random_pair(n, n, PARTIAL, domain, seed)
                oracles: Dict[str, OrePoly] = {}
                for name, algorithm in algorithms:
                    record = self._run_one(name, algorithm, B, A, n, trial, bench, oracles, timed_out)
                    self.records.append(record)
                    produced.append(record)
                    self.notify_observers(record)
        return produced

    def _run_one(
        self,
        name: str,
        algorithm: Algorithm,
        B: OrePoly,
        A: OrePoly,
        n: int,
        trial: int,
        bench: BenchConfig,
        oracles: Dict[str, OrePoly],
        timed_out: Set[str]
    ) -> BenchRecord:
        B, A = _retag(B, algorithm.tag), _retag(A, algorithm.tag)
        record = BenchRecord(name, bench.strategy, n, B.d, B.r, bench.p, trial, bench.seed)

        if name in timed_out:
            record.status = SKIP
            record.note = "timed out at a smaller size"
            return record
        reason = algorithm.skip_reason(B, A)
        if reason:
            record.status = SKIP
            record.note = reason
            return record

        counter = BlockCounter(bench.block_size or n) if bench.count_blocks and algorithm.counts_blocks else None
        try:
            with count_ops() as tally:
                start = time.perf_counter_ns()
                C = algorithm.multiply(B, A, counter)
                record.elapsed_ns = time.perf_counter_ns() - start
        except (CharacteristicTooSmall, ZeroCharacteristic) as e:
            record.status = SKIP
            record.note = str(e)
            return record
        except OreError as e:
            logging.error(f"{name} failed at n={n}: {e}")
            record.status = ERROR
            record.note = str(e)
            return record

        record.ops = tally.ops
        record.attach_counter(counter)
        if self.fault_hook is not None:
            C = self.fault_hook(C)

        if record.elapsed_ns > bench.timeout * 1e9:
            record.timed_out = True
            timed_out.add(name)

        if bench.verify:
            if algorithm.tag not in oracles:
                oracles[algorithm.tag] = mul_naive(B, A)
            record.status = PASS if C == oracles[algorithm.tag] else FAIL
            if record.status == FAIL:
                logging.error(f"{name} disagrees with the naive product at n={n}, trial {trial}")
        return record

    def all_passed(self, records: Optional[List[BenchRecord]] = None) -> bool:
        """True when no record failed or errored."""
        records = self.records if records is None else records
        return not any(record.status in (FAIL, ERROR) for record in records)

    def save_results(self, path: Optional[Path] = None) -> None:
        """
        Save the records to a CSV file using pandas.

        Raises:
            OperationError: If saving fails.
        """
        target = Path(path) if path is not None else self.config.results_file
        try:
            target.parent.mkdir(parents=True, exist_ok=True)
            self.get_results_dataframe().to_csv(target, index=False, encoding=self.config.default_encoding)
            logging.info(f"Results saved successfully to {target}")
        except Exception as e:
            logging.error(f"Failed to save results: {e}")
            raise OperationError(f"Failed to save results: {e}")

    def load_results(self, path: Optional[Path] = None) -> None:
        """
        Load records from a CSV file using pandas.

        Raises:
            OperationError: If loading fails.
        """
        source = Path(path) if path is not None else self.config.results_file
        try:
            if source.exists():
                df = pd.read_csv(source, encoding=self.config.default_encoding)
                self.records = [BenchRecord.from_dict(row.to_dict()) for _, row in df.iterrows()]
                logging.info(f"Loaded {len(self.records)} records from {source}")
            else:
                logging.info("No results file found - starting with no records")
        except Exception as e:
            logging.error(f"Failed to load results: {e}")
            raise OperationError(f"Failed to load results: {e}")

    def get_results_dataframe(self, include_time: bool = True) -> pd.DataFrame:
        df = pd.DataFrame([record.to_dict() for record in self.records], columns=COLUMNS)
        if not include_time:
            df = df.drop(columns=[TIME_COLUMN])
        return df

    def growth_table(self, value: str = "ops") -> pd.DataFrame:
        """
        Mean of ``value`` per size (rows) and algorithm (columns) over the
        non-skipped runs.
        """
        df = self.get_results_dataframe()
        df = df[df['status'] != SKIP]
        if df.empty:
            return pd.DataFrame()
        return df.pivot_table(index='n', columns='algorithm', values=value, aggfunc='mean')

    def render(self, output_format: str = "table", include_time: bool = True) -> str:
        """The records as CSV text or as an aligned text table."""
        df = self.get_results_dataframe(include_time)
        if output_format == "csv":
            return df.to_csv(index=False)
        if df.empty:
            return "No results"
        return df.to_string(index=False)

    def clear_results(self) -> None:
        self.records.clear()
        logging.info("Results cleared")
