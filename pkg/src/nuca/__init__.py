"""Non-uniform cellular automata on eventually periodic configurations."""
from .core import (
    EpConfig,
    ResourceBudgetError,
    distance,
    distance_exponent,
    equals,
    format_config,
    format_word,
    parse_config,
    parse_word,
)
from .rules import LocalRule, NuCaClass, NuCaSpec, apply, extend_word, self_compose
from .engine import OrbitReport, Trace, iterate, orbit, orbit_analyze, step, trace
from .conjugacy import PackedAlphabetMap, embed_in_ca, pack_config, pack_spec, unpack_config
from .debruijn import (
    InjectivityVerdict,
    SurjectivityVerdict,
    build_debruijn,
    build_product,
    build_reduced,
    decide_injective,
    decide_surjective,
)
from .oracles import (
    ConsistentUpTo,
    RefutedAt,
    count_preimages_bounded,
    has_preimage,
    injectivity_witness_oracle,
    surjectivity_oracle,
)
from .dynamics import (
    AlmostEquicontinuousCert,
    BlockingCertificate,
    Equicontinuous,
    NoBlockingWordUpTo,
    certify_strongly_blocking,
    classify_ca,
    classify_nuca,
    detect_global_ultimate_periodicity,
    equicontinuity_search,
    find_strongly_blocking,
    refute_blocking,
)

__all__ = [
    "EpConfig",
    "ResourceBudgetError",
    "distance",
    "distance_exponent",
    "equals",
    "format_config",
    "format_word",
    "parse_config",
    "parse_word",
    "LocalRule",
    "NuCaClass",
    "NuCaSpec",
    "apply",
    "extend_word",
    "self_compose",
    "OrbitReport",
    "Trace",
    "iterate",
    "orbit",
    "orbit_analyze",
    "step",
    "trace",
    "PackedAlphabetMap",
    "embed_in_ca",
    "pack_config",
    "pack_spec",
    "unpack_config",
    "InjectivityVerdict",
    "SurjectivityVerdict",
    "build_debruijn",
    "build_product",
    "build_reduced",
    "decide_injective",
    "decide_surjective",
    "ConsistentUpTo",
    "RefutedAt",
    "count_preimages_bounded",
    "has_preimage",
    "injectivity_witness_oracle",
    "surjectivity_oracle",
    "AlmostEquicontinuousCert",
    "BlockingCertificate",
    "Equicontinuous",
    "NoBlockingWordUpTo",
    "certify_strongly_blocking",
    "classify_ca",
    "classify_nuca",
    "detect_global_ultimate_periodicity",
    "equicontinuity_search",
    "find_strongly_blocking",
    "refute_blocking",
]

__version__ = "0.1.0"
