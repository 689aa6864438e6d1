from .answer_check import CheckReport, extract_boxed, extract_final_answer, final_answer, normalize_answer
from .base import (
    CassetteMissError,
    ParseError,
    PolicyProvider,
    ProviderError,
    ResponseGenerator,
    RewardProvider,
    Rewriter,
    TransportError,
    UnjudgeableError,
    dedupe_candidates,
    normalize_candidate,
)
from .http import HttpChatClient, HttpGenerator, HttpPolicy, HttpReward, HttpRewriter, load_template, render_template, template_hash
from .scripted import (
    IdentityRewriter,
    ScriptedGenerator,
    ScriptedPolicy,
    ScriptedRewriter,
    ScriptedScalarReward,
    ScriptedVerdictReward,
)
from .specs import build_generator, build_policy, build_reward, build_rewriter, parse_spec
from .synthetic import (
    LinearEquation,
    OraclePolicy,
    OracleReward,
    PlantedResponseGenerator,
    SyntheticTask,
    brute_force_solution_check,
    generate_problem,
    generate_task,
    is_terminal_step,
    make_problem,
    parse_equation,
    task_from_problem,
)
from .transport import LiveTransport, RecordingTransport, ReplayTransport, TokenBucket, request_hash

__all__ = [name for name in dir() if not name.startswith("_")]
