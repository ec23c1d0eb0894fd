"""Configuration constants and logging setup."""

import logging
import os
from pathlib import Path
from typing import Optional

AXIOMS_ENV = "NPSTRATA_AXIOMS"
LOG_LEVEL_ENV = "NPSTRATA_LOG_LEVEL"

AXIOM_FILE_VERSION = 1
FACTTABLE_VERSION = 1

# Oracle budgets: brute force is exponential past these.
ORACLE_MAX_GENUS = 8
ORACLE_MAX_FACTORS = 24

# Ranges exercised by `npstrata selfcheck`.
SELFCHECK_ENUM_GENUS = 8
SELFCHECK_PARTITION_GENUS = 7
SELFCHECK_IDENTITY_GENUS = 12

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def default_axiom_path() -> Optional[Path]:
    """Axiom file named by NPSTRATA_AXIOMS, or None for the builtin base."""
    value = os.getenv(AXIOMS_ENV)
    return Path(value) if value else None


def configure_logging(verbosity: int = 0) -> None:
    """Configure root logging on stderr; -v gives INFO, -vv gives DEBUG."""
    if verbosity >= 2:
        level = logging.DEBUG
    elif verbosity == 1:
        level = logging.INFO
    else:
        level = logging.getLevelName(os.getenv(LOG_LEVEL_ENV, "WARNING").upper())
        if not isinstance(level, int):
            level = logging.WARNING
    logging.basicConfig(level=level, format=LOG_FORMAT, force=True)
