from .settings import Backend, Config, RunConfig, SaMode

__all__ = ["Config", "RunConfig", "SaMode", "Backend"]
