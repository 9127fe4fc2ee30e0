from .dispatch import dispatch, main
from .run_config import OutputFormat, RunConfig

__all__ = ["OutputFormat", "RunConfig", "dispatch", "main"]
