"""Reproduce app crashes from a stack trace by guided GUI exploration."""

from .explorer import QTable, RewardConfig, SelectorConfig, reproduce
from .predictor import OfflinePredictor, RemotePredictor, render_prompt_p1, render_prompt_p2
from .replayer import emit_script, emit_steps, minimize, run_script
from .simulator import AppModel, load_app, start_session
from .tokens import tokenize
from .trace import AppMetadata, CrashSignature, parse_trace, signature_matches

__all__ = [
    "AppMetadata", "AppModel", "CrashSignature", "OfflinePredictor", "QTable", "RemotePredictor",
    "RewardConfig", "SelectorConfig", "emit_script", "emit_steps", "load_app", "minimize",
    "parse_trace", "render_prompt_p1", "render_prompt_p2", "reproduce", "run_script",
    "signature_matches", "start_session", "tokenize",
]

__version__ = "0.1.0"
