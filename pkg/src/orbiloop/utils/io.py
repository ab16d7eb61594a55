"""JSON document helpers.

Every report is written with sorted keys and a fixed indent, so two runs on the
same input produce byte-identical files.
"""
import json
import os
from pathlib import Path
from typing import Any, Union

from ..exceptions import SchemaError

__all__ = ["dumps", "load_json", "save_json"]


def dumps(document: Any) -> str:
    """Deterministic JSON text of ``document`` (with a trailing newline)."""
    return json.dumps(document, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def load_json(path: Union[str, Path, os.PathLike]) -> Any:
    """Read a JSON document.

    Raises:
        SchemaError: If the file cannot be read or is not valid JSON.
    """
    try:
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)
    except FileNotFoundError:
        raise SchemaError(f"no such file '{path}'") from None
    except json.JSONDecodeError as e:
        raise SchemaError(f"invalid JSON in '{path}' (line {e.lineno}): {e.msg}") from None


def save_json(document: Any, path: Union[str, Path, os.PathLike]):
    path = Path(path)
    if path.parent != Path(""):
        path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        f.write(dumps(document))
