"""Natural-language to FOL translation through a prompted chat model."""

from chainprover.nl2fol.llm import ChatClient, HttpTransport, LlmEndpointConfig, ScriptedTransport
from chainprover.nl2fol.preprocess import (
    DEFAULT_KEYWORDS,
    RawResponse,
    extract_answer,
    filter_speculative,
    split_steps,
)
from chainprover.nl2fol.translate import (
    MAX_ATTEMPTS,
    NlInstance,
    ParsedOutput,
    TranslationResult,
    build_prompt,
    dedup_steps,
    load_template,
    parse_llm_output,
    translate,
)

__all__ = [
    "DEFAULT_KEYWORDS", "MAX_ATTEMPTS", "ChatClient", "HttpTransport", "LlmEndpointConfig",
    "NlInstance", "ParsedOutput", "RawResponse", "ScriptedTransport", "TranslationResult",
    "build_prompt", "dedup_steps", "extract_answer", "filter_speculative", "load_template",
    "parse_llm_output", "split_steps", "translate",
]
