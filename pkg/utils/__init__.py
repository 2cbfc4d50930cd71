from .helpers import ensure_dir, ensure_parent, write_json, write_tsv

__all__ = ["ensure_dir", "ensure_parent", "write_json", "write_tsv"]
