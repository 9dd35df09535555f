########################
# Benchmark Record     #
########################

from dataclasses import asdict, dataclass, fields
import logging
from typing import Any, Dict, Optional

from app.exceptions import OperationError
from app.matrixarith import BlockCounter

PASS = "pass"
FAIL = "fail"
SKIP = "skip"
ERROR = "error"
UNVERIFIED = "unverified"
STATUSES = (PASS, FAIL, SKIP, ERROR, UNVERIFIED)

# Only column that changes between identical runs
TIME_COLUMN = "elapsed_ns"

REQUIRED_FIELDS = ("algorithm", "strategy", "n", "d", "r", "p", "trial", "seed")


@dataclass
class BenchRecord:
    """
    Value Object for one multiplication run.

    One record is made per (algorithm, size, trial). Block tallies are zero
    unless block counting was requested and the algorithm works through matrix
    products; ``status`` is ``pass`` or ``fail`` whenever the product was
    checked against the naive product.
    """

    algorithm: str
    strategy: str
    n: int
    d: int
    r: int
    p: int
    trial: int
    seed: int
    elapsed_ns: int = 0
    timed_out: bool = False
    naive_blocks: int = 0
    strassen_blocks: int = 0
    skipped_blocks: int = 0
    block_total: int = 0
    ops: int = 0
    status: str = UNVERIFIED
    note: str = ""

    def __post_init__(self):
        if self.status not in STATUSES:
            raise OperationError(f"Unknown record status: {self.status}")

    def attach_counter(self, counter: Optional[BlockCounter]) -> None:
        """Copy the tallies of a block counter into the record."""
        if counter is None:
            return
        self.naive_blocks = counter.naive_products
        self.strassen_blocks = counter.strassen_products
        self.skipped_blocks = counter.skipped_products
        self.block_total = counter.total

    @property
    def passed(self) -> Optional[bool]:
        """True or False after a verification, None otherwise."""
        if self.status == PASS:
            return True
        if self.status in (FAIL, ERROR):
            return False
        return None

    def to_dict(self) -> Dict[str, Any]:
        """
        Convert the record to a dictionary for serialization.

        Returns:
            Dict[str, Any]: One CSV row.
        """
        return asdict(self)

    @staticmethod
    def from_dict(data: Dict[str, Any]) -> 'BenchRecord':
        """
        Create a record from a dictionary (e.g. a CSV row read by pandas).

        Raises:
            OperationError: If data is invalid or missing required fields.
        """
        try:
            values = {name: data[name] for name in REQUIRED_FIELDS}
            values.update({f.name: data[f.name] for f in fields(BenchRecord) if f.name in data})
            record = BenchRecord(
                algorithm=str(values['algorithm']),
                strategy=str(values['strategy']),
                n=int(values['n']),
                d=int(values['d']),
                r=int(values['r']),
                p=int(values['p']),
                trial=int(values['trial']),
                seed=int(values['seed']),
                elapsed_ns=int(values.get('elapsed_ns', 0)),
                timed_out=str(values.get('timed_out', False)).lower() in ('true', '1'),
                naive_blocks=int(values.get('naive_blocks', 0)),
                strassen_blocks=int(values.get('strassen_blocks', 0)),
                skipped_blocks=int(values.get('skipped_blocks', 0)),
                block_total=int(values.get('block_total', 0)),
                ops=int(values.get('ops', 0)),
                status=str(values.get('status', UNVERIFIED)),
                note=_clean_note(values.get('note', "")),
            )
        except (KeyError, TypeError, ValueError) as e:
            raise OperationError(f"Invalid benchmark record: {str(e)}")
        if record.timed_out:
            logging.info(f"Loaded timed-out record for {record.algorithm} n={record.n}")
        return record

    def __str__(self) -> str:
        blocks = f", blocks={self.block_total}" if self.block_total else ""
        return (
            f"{self.algorithm}[{self.strategy}] n={self.n} p={self.p} trial={self.trial}: "
            f"{self.status}, {self.elapsed_ns / 1e6:.2f} ms, ops={self.ops}{blocks}"
        )


def _clean_note(value: Any) -> str:
    # pandas reads empty cells back as NaN
    if value is None or value != value:
        return ""
    return str(value)
