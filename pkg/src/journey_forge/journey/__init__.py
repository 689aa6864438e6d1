from .derive import (
    NoShortcutError,
    attach_reflections,
    extract_shortcuts,
    journey_violations,
    mark_correct_paths,
    traverse_journey,
    validate_traversal,
)

__all__ = [
    "NoShortcutError",
    "attach_reflections",
    "extract_shortcuts",
    "journey_violations",
    "mark_correct_paths",
    "traverse_journey",
    "validate_traversal",
]
