"""Decision procedures and certificate search."""
from .classify import Classification, classify, consistency_violations
from .decide import (
    Injective,
    NotInjective,
    NotPostSurjective,
    NotPreInjective,
    NotSurjective,
    PostSurjective,
    PreInjective,
    Surjective,
    decide_injectivity,
    decide_postsurjectivity,
    decide_preinjectivity,
    decide_surjectivity,
)
from .derive import (
    find_inverse_injectivity_set,
    goe_on_mn,
    goe_search,
    image_sft,
    iterated_image_sft,
    synthesize_inverse,
    verify_inverse_injectivity_set,
)
from .windows import (
    Check,
    InjectivityCertificate,
    NotFound,
    PostSurjectivityCertificate,
    dual_injectivity_set,
    dual_set,
    find_injectivity_set,
    find_postsurjectivity_set,
    verify_injectivity_set,
    verify_postsurjectivity_set,
)

__all__ = [name for name in dir() if not name.startswith("_")]
