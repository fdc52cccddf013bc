import hashlib
import json
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, Optional

from shared.utils import setup_logger


class ReportCache:
    """Whole-report cache on disk, keyed by the hash of the run configuration and arguments."""

    def __init__(self, cache_dir: str):
        self.logger = setup_logger(self.__class__.__name__)
        self._entries: Dict[str, Any] = {}
        self._cache_dir = Path(cache_dir)
        self._cache_dir.mkdir(parents=True, exist_ok=True)
        self._cache_file = self._cache_dir / "cache.json"
        self._load_from_disk()

    @staticmethod
    def key_for(config: dict) -> str:
        config_str = json.dumps(config, sort_keys=True)
        return hashlib.sha256(config_str.encode()).hexdigest()

    def lookup(self, config: dict) -> Optional[dict]:
        key = self.key_for(config)
        entry = self._entries.get(key)
        if entry:
            self.logger.info(f"Found cached report for config hash: {key[:8]}...")
            return entry.get("report")
        return None

    def store(self, config: dict, report: dict) -> bool:
        key = self.key_for(config)
        self._entries[key] = {
            "config": config,
            "report": report,
            "timestamp": self._get_current_timestamp(),
        }
        self.logger.debug(f"Stored report in cache: {key[:8]}...")
        return self._save_to_disk()

    def __len__(self) -> int:
        return len(self._entries)

    def _load_from_disk(self):
        try:
            if self._cache_file.exists():
                with open(self._cache_file, 'r', encoding='utf-8') as f:
                    data = json.load(f)
                self._entries = data if isinstance(data, dict) else {}
                self.logger.info(f"Loaded {len(self._entries)} cached reports")
            else:
                self._entries = {}
                self.logger.info("No existing report cache found, starting fresh")
        except Exception as e:
            self.logger.error(f"Error loading report cache: {str(e)}", exc_info=True)
            self._entries = {}

    def _save_to_disk(self) -> bool:
        try:
            with open(self._cache_file, 'w', encoding='utf-8') as f:
                json.dump(self._entries, f, indent=2, ensure_ascii=False)
            return True
        except Exception as e:
            self.logger.error(f"Error saving report cache: {str(e)}", exc_info=True)
            return False

    def _get_current_timestamp(self) -> str:
        return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")
