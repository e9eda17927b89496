from typing import Any, Callable, Dict, Optional
from pathlib import Path
import hashlib
import json
import os

from config.settings import TOOL_VERSION, get_engine_config
from utils.logger import get_logger

logger = get_logger(__name__)


def normalize_payload(payload: Dict[str, Any]) -> Dict[str, Any]:
    """JSON round trip with sorted keys: tuples become lists, nested dicts get a fixed order"""
    return json.loads(json.dumps(payload, sort_keys=True))


class CacheService:
    """Content-addressed disk cache for weight sets, constants, families and verdicts"""

    def __init__(self, cache_dir: Optional[str] = None):
        if cache_dir is None:
            cache_dir = get_engine_config()["cache_dir"]
        self.cache_dir = Path(cache_dir) if cache_dir else None
        self.enabled = self.cache_dir is not None
        if self.enabled:
            try:
                self.cache_dir.mkdir(parents=True, exist_ok=True)
                logger.info(f"Disk cache enabled at {self.cache_dir}")
            except OSError as e:
                logger.error(f"Cache directory {self.cache_dir} unusable: {e}")
                self.enabled = False

    def is_enabled(self) -> bool:
        return self.enabled

    @staticmethod
    def make_key(operation: str, inputs: Dict[str, Any]) -> str:
        """SHA-256 of the canonical JSON of the inputs"""
        content = {"operation": operation, "inputs": inputs, "tool_version": TOOL_VERSION}
        content_str = json.dumps(content, sort_keys=True)
        return hashlib.sha256(content_str.encode()).hexdigest()

    def _path(self, operation: str, digest: str) -> Path:
        return self.cache_dir / operation / f"{digest}.json"

    def get(self, operation: str, inputs: Dict[str, Any]) -> Optional[Dict[str, Any]]:
        """Stored payload, or None on a miss or a corrupt entry"""
        if not self.enabled:
            return None
        digest = self.make_key(operation, inputs)
        path = self._path(operation, digest)
        if not path.exists():
            return None
        try:
            with path.open("r", encoding="utf-8") as f:
                entry = json.load(f)
            if entry.get("key") != digest or "payload" not in entry:
                raise ValueError("key mismatch")
            logger.debug(f"Cache hit: {operation}/{digest[:12]}")
            return entry["payload"]
        except (OSError, ValueError) as e:
            logger.warning(f"Ignoring corrupt cache entry {path}: {e}")
            return None

    def store(self, operation: str, inputs: Dict[str, Any], payload: Dict[str, Any]) -> None:
        if not self.enabled:
            return
        digest = self.make_key(operation, inputs)
        path = self._path(operation, digest)
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            tmp = path.with_suffix(".tmp")
            with tmp.open("w", encoding="utf-8") as f:
                json.dump({"key": digest, "inputs": inputs, "payload": payload}, f, sort_keys=True)
            os.replace(tmp, path)
            logger.debug(f"Cached {operation}/{digest[:12]}")
        except (OSError, TypeError) as e:
            logger.error(f"Failed to store cache entry {operation}: {e}")

    def get_or_compute(self, operation: str, inputs: Dict[str, Any], compute: Callable[[], Dict[str, Any]],
                       cacheable: Callable[[Dict[str, Any]], bool] = lambda payload: True) -> Dict[str, Any]:
        """
        Cached payload when present, otherwise compute and store. Fresh payloads pass
        through the same JSON normalization as stored ones so both paths emit the same bytes.
        """
        cached = self.get(operation, inputs)
        if cached is not None:
            return cached
        payload = normalize_payload(compute())
        if cacheable(payload):
            self.store(operation, inputs, payload)
        return payload
