from .builder import BuilderConfig, TreeBuildAborted, build_tree, is_terminal_step
from .importer import ImportReport, ImportResult, import_labeled_tree

__all__ = [
    "BuilderConfig",
    "TreeBuildAborted",
    "build_tree",
    "is_terminal_step",
    "ImportReport",
    "ImportResult",
    "import_labeled_tree",
]
