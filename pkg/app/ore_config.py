########################
# Library Config       #
########################

from dataclasses import dataclass
from pathlib import Path
import os
from typing import Optional

from dotenv import load_dotenv
from sympy import isprime

from app.exceptions import ConfigurationError

# Load environment variables from a .env file into the program's environment
load_dotenv()


def get_project_root() -> Path:
    """
    Get the project root directory.

    Returns:
        Path: The root directory path of the project (parent of ``app/``).
    """
    current_file = Path(__file__)
    return current_file.parent.parent


def _env_bool(name: str, default: str) -> bool:
    value = os.getenv(name, default).lower()
    return value == 'true' or value == '1'


@dataclass
class OreConfig:
    """
    Library and benchmark configuration settings.

    Holds the polynomial and matrix kernel thresholds, the default prime used by
    the command-line harness, the benchmark timeout and the locations of log and
    result files.

    Every value can be set through an ``OREMUL_*`` environment variable (or a
    ``.env`` file) or passed directly to the constructor.
    """

    def __init__(
        self,
        base_dir: Optional[Path] = None,
        karatsuba_threshold: Optional[int] = None,
        ntt_threshold: Optional[int] = None,
        strassen_threshold: Optional[int] = None,
        default_prime: Optional[int] = None,
        timeout: Optional[float] = None,
        auto_save: Optional[bool] = None,
        default_encoding: Optional[str] = None
    ):
        """
        Initialize configuration with environment variables and defaults.

        Args:
            base_dir (Optional[Path], optional): Base directory for logs and results. Defaults to None.
            karatsuba_threshold (Optional[int], optional): Operand length at which Karatsuba replaces
                the schoolbook product. Defaults to None.
            ntt_threshold (Optional[int], optional): Product length at which the number-theoretic
                transform is used when the modulus allows it. Defaults to None.
            strassen_threshold (Optional[int], optional): Block side above which Strassen recursion
                continues inside a block product. Defaults to None.
            default_prime (Optional[int], optional): Prime used when none is given (0 for rationals).
                Defaults to None.
            timeout (Optional[float], optional): Per-run benchmark timeout in seconds. Defaults to None.
            auto_save (Optional[bool], optional): Whether benchmark results are saved after each run.
                Defaults to None.
            default_encoding (Optional[str], optional): Encoding for file operations. Defaults to None.
        """
        project_root = get_project_root()
        self.base_dir = base_dir or Path(
            os.getenv('OREMUL_BASE_DIR', str(project_root))
        ).resolve()

        self.karatsuba_threshold = karatsuba_threshold or int(
            os.getenv('OREMUL_KARATSUBA_THRESHOLD', '32')
        )

        self.ntt_threshold = ntt_threshold or int(
            os.getenv('OREMUL_NTT_THRESHOLD', '512')
        )

        self.strassen_threshold = strassen_threshold or int(
            os.getenv('OREMUL_STRASSEN_THRESHOLD', '64')
        )

        # 0 is meaningful here (rationals), so test against None
        self.default_prime = default_prime if default_prime is not None else int(
            os.getenv('OREMUL_DEFAULT_PRIME', '65521')
        )

        self.timeout = timeout or float(
            os.getenv('OREMUL_TIMEOUT', '60')
        )

        self.auto_save = auto_save if auto_save is not None else _env_bool(
            'OREMUL_AUTO_SAVE', 'true'
        )

        self.default_encoding = default_encoding or os.getenv(
            'OREMUL_DEFAULT_ENCODING', 'utf-8'
        )

    @property
    def log_dir(self) -> Path:
        """
        Get log directory path.

        Returns:
            Path: The log directory path.
        """
        return Path(os.getenv(
            'OREMUL_LOG_DIR',
            str(self.base_dir / "logs")
        )).resolve()

    @property
    def results_dir(self) -> Path:
        """
        Get benchmark results directory path.

        Returns:
            Path: The results directory path.
        """
        return Path(os.getenv(
            'OREMUL_RESULTS_DIR',
            str(self.base_dir / "results")
        )).resolve()

    @property
    def results_file(self) -> Path:
        """
        Get benchmark results file path (CSV).

        Returns:
            Path: The results file path.
        """
        return Path(os.getenv(
            'OREMUL_RESULTS_FILE',
            str(self.results_dir / "bench_results.csv")
        )).resolve()

    @property
    def log_file(self) -> Path:
        """
        Get log file path.

        Returns:
            Path: The log file path.
        """
        return Path(os.getenv(
            'OREMUL_LOG_FILE',
            str(self.log_dir / "oremul.log")
        )).resolve()

    def validate(self) -> None:
        """
        Validate configuration settings.

        Raises:
            ConfigurationError: If any configuration parameter is invalid.
        """
        if self.karatsuba_threshold <= 1:
            raise ConfigurationError("karatsuba_threshold must be at least 2")
        if self.ntt_threshold <= 0:
            raise ConfigurationError("ntt_threshold must be positive")
        if self.strassen_threshold <= 0:
            raise ConfigurationError("strassen_threshold must be positive")
        if self.timeout <= 0:
            raise ConfigurationError("timeout must be positive")
        if self.default_prime < 0:
            raise ConfigurationError("default_prime must be 0 or a prime")
        if self.default_prime and self.default_prime < 2 ** 32 and not isprime(self.default_prime):
            raise ConfigurationError(f"default_prime {self.default_prime} is not prime")


_active_config: Optional[OreConfig] = None


def get_config() -> OreConfig:
    """
    Return the process-wide configuration, building it from the environment on
    first use.
    """
    global _active_config
    if _active_config is None:
        config = OreConfig()
        config.validate()
        _active_config = config
    return _active_config


def set_config(config: Optional[OreConfig]) -> None:
    """
    Replace the process-wide configuration.

    Passing None drops the cached instance so the next ``get_config`` call
    re-reads the environment.
    """
    global _active_config
    if config is not None:
        config.validate()
    _active_config = config
