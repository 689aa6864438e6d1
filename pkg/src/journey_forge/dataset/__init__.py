from .dpo import DEFAULT_RESPONSE_FLOOR, DpoManifest, SampleResult, build_dpo_pairs, emit_dpo, sample_responses, write_dpo_pairs
from .sft import EmitManifest, VARIANT_TO_KIND, emit_sft, write_sft_records

__all__ = [name for name in dir() if not name.startswith("_")]
