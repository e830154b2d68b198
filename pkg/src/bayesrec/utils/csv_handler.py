import re
from logging import getLogger
from pathlib import Path

import pandas as pd

logger = getLogger(__name__)

SCHEMA_VERSION = 1
_HEADER = re.compile(r"^# bayesrec-schema: (?P<name>[\w-]+) v(?P<version>\d+)$")


class CsvHandler:
    """Handler for the versioned CSV tables written by the harness.

    Every file starts with one comment line ``# bayesrec-schema: <name> v1`` followed by
    a plain CSV table. Files are UTF-8 with LF line endings.
    """

    @staticmethod
    def save_table(frame: pd.DataFrame, file_path: str | Path, schema: str) -> Path:
        """Save ``frame`` under a schema header.

        Args:
            frame (pd.DataFrame): Table to save; the index is dropped.
            file_path (str | Path): Destination; parent directories are created.
            schema (str): Schema name written into the header line.

        Returns:
            Path: The written file.
        """
        path = Path(file_path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", encoding="utf-8", newline="") as f:
            f.write(f"# bayesrec-schema: {schema} v{SCHEMA_VERSION}\n")
            frame.to_csv(f, index=False, lineterminator="\n")
        logger.info("Table saved to %s", path)
        return path

    @staticmethod
    def read_schema(file_path: str | Path) -> tuple[str, int]:
        """Return ``(name, version)`` from the header line.

        Raises:
            ValueError: The first line is not a schema header.
        """
        path = Path(file_path)
        with path.open("r", encoding="utf-8") as f:
            first = f.readline().rstrip("\n")
        match = _HEADER.match(first)
        if match is None:
            raise ValueError(f"{path}: missing bayesrec schema header, got {first!r}.")
        return match["name"], int(match["version"])

    @staticmethod
    def load_table(file_path: str | Path, schema: str | None = None) -> pd.DataFrame:
        """Load a table written by :meth:`save_table`.

        Args:
            file_path (str | Path): File to read.
            schema (str | None): Expected schema name; checked when given.

        Raises:
            ValueError: The header is missing, names another schema, or has a newer version.
        """
        name, version = CsvHandler.read_schema(file_path)
        if schema is not None and name != schema:
            raise ValueError(f"{file_path}: expected schema {schema!r}, found {name!r}.")
        if version > SCHEMA_VERSION:
            raise ValueError(
                f"{file_path}: schema version {version} is newer than {SCHEMA_VERSION}."
            )
        return pd.read_csv(file_path, skiprows=1)
