"""Self-hostable compile-and-run backend for a browser IDE.

Accounts, per-user workspaces with storage quotas, sandboxed C / C++ / Java
compilation, admin limits, and a verification harness that exercises a
running instance end to end.
"""

__version__ = "0.1.0"

from .config import ServiceConfig, load_config
from .errors import ServiceError
from .service import create_app

__all__ = ["ServiceConfig", "load_config", "create_app", "ServiceError", "__version__"]
