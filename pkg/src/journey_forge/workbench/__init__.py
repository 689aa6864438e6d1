from .service import ANNOTATION_OFFSET_HEADER, create_app
from .store import RederivePreview, RunListing, RunStore, UnknownNodeError, UnknownRunError

__all__ = [
    "ANNOTATION_OFFSET_HEADER",
    "create_app",
    "RederivePreview",
    "RunListing",
    "RunStore",
    "UnknownNodeError",
    "UnknownRunError",
]
