"""Engine configuration for zslab"""

from .settings import get_engine_config, SearchConfig, TOOL_VERSION

__all__ = ["get_engine_config", "SearchConfig", "TOOL_VERSION"]
