import csv
import io
import json
from abc import ABC, abstractmethod
from typing import Any, Dict, List, Optional

from shared import __version__
from shared.config import RunConfig
from shared.errors import ToolkitError
from shared.report_cache import ReportCache
from shared.utils import setup_logger

SUCCESS = "success"
FINDING = "finding"
ERROR = "error"


class AbstractCommand(ABC):
    """
    One subcommand. Subclasses compute an output dict; the base class wraps it
    in the report envelope, consults the report cache and renders the result.
    """

    name = ""

    def __init__(self, config: RunConfig):
        self.config = config
        self.logger = setup_logger(self.__class__.__name__)
        self.cache: Optional[ReportCache] = None
        if config.cache_dir:
            self.cache = ReportCache(config.cache_dir)

    @abstractmethod
    def compute(self, arguments: Dict[str, Any]) -> dict:
        pass

    def is_finding(self, output: dict) -> bool:
        """True when a cross-check inside the output disagreed."""
        return False

    def rows(self, output: dict) -> List[Dict[str, Any]]:
        """CSV rows; the default is a single row of the scalar fields."""
        return [{k: v for k, v in output.items() if not isinstance(v, (dict, list))}]

    def process_task(self, task_data: Dict[str, Any]) -> dict:
        try:
            self.logger.info(f"Processing {self.name} request")
            key = {**self.config.as_dict(), "arguments": task_data}
            if self.cache is not None:
                cached = self.cache.lookup(key)
                if cached:
                    self.logger.info("Returning cached report")
                    return cached

            output = self.compute(task_data)
            status = FINDING if self.is_finding(output) else SUCCESS
            message = f"{self.name} completed"
            if status == FINDING:
                message += " with a finding"
            result = {
                "status": status,
                "message": message,
                "output": output,
            }
            if self.cache is not None:
                self.cache.store(key, result)
            if status == FINDING:
                self.logger.warning(f"{self.name}: a cross-check disagreed, see output")
            return result

        except ToolkitError as e:
            self.logger.error(f"{self.name} failed: {e.message}")
            return {
                "status": ERROR,
                "message": e.message,
                "error_code": e.error_code,
                "output": {"witness": str(e.witness)} if e.witness is not None else None,
            }
        except Exception as e:
            self.logger.error(f"Error processing {self.name}: {str(e)}", exc_info=True)
            return {
                "status": ERROR,
                "message": f"Error processing {self.name}: {str(e)}",
                "error_code": "PROCESSING_ERROR",
            }

    def run(self, task_data: Dict[str, Any]) -> dict:
        """The report envelope."""
        result = self.process_task(task_data)
        error = None
        if result["status"] == ERROR:
            error = {
                "type": result.get("error_code", "PROCESSING_ERROR"),
                "message": result["message"],
            }
        return {
            "status": result["status"],
            "output": result.get("output"),
            "error": error,
            "version": __version__,
            "config": self.config.as_dict(),
        }

    def render(self, envelope: dict) -> str:
        fmt = self.config.output_format
        if fmt == "json" or envelope["status"] == ERROR:
            return json.dumps(envelope, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
        if fmt == "csv":
            return _to_csv(self.rows(envelope["output"]))
        return _to_text(envelope)


def _to_csv(rows: List[Dict[str, Any]]) -> str:
    if not rows:
        return ""
    fields: List[str] = []
    for row in rows:
        fields.extend(k for k in row if k not in fields)
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: _cell(v) for k, v in row.items()})
    return buffer.getvalue()


def _cell(value: Any) -> Any:
    if isinstance(value, (dict, list)):
        return json.dumps(value, sort_keys=True)
    return value


def _to_text(value: Any, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(value, dict):
        lines = []
        for key in sorted(value):
            item = value[key]
            if isinstance(item, (dict, list)) and item:
                lines.append(f"{pad}{key}:")
                lines.append(_to_text(item, indent + 1).rstrip("\n"))
            else:
                lines.append(f"{pad}{key}: {item}")
        return "\n".join(lines) + "\n"
    if isinstance(value, list):
        if all(not isinstance(item, (dict, list)) for item in value):
            return f"{pad}{', '.join(str(item) for item in value)}\n"
        return "".join(f"{pad}-\n" + _to_text(item, indent + 1) for item in value)
    return f"{pad}{value}\n"
