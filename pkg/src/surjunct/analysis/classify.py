from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import BudgetExceeded, PropertyViolation
from ..symbolic import CellularAutomaton
from .decide import (
    RADIUS_CAP,
    SHIFT_BUDGET,
    Injective,
    PostSurjective,
    PreInjective,
    Surjective,
    decide_injectivity,
    decide_postsurjectivity,
    decide_preinjectivity,
    decide_surjectivity,
)

FLAGS = ("injective", "surjective", "pre_injective", "post_surjective", "reversible")


@dataclass
class Classification:
    """Flags are True, False, or None (unknown: budget exceeded)."""

    injective: bool | None = None
    surjective: bool | None = None
    pre_injective: bool | None = None
    post_surjective: bool | None = None
    reversible: bool | None = None
    results: dict = field(default_factory=dict)
    methods: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)

    def flags(self) -> dict:
        return {f: getattr(self, f) for f in FLAGS}


def consistency_violations(c: Classification) -> list[str]:
    """Implications that must hold on the integers and on finite groups."""
    out = []

    def known(*vals):
        return all(v is not None for v in vals)

    inj, sur, pre, post, rev = c.injective, c.surjective, c.pre_injective, c.post_surjective, c.reversible
    if known(post, pre, inj) and post and pre and not inj:
        out.append("post-surjective and pre-injective but not injective")
    if known(post, sur) and post and not sur:
        out.append("post-surjective but not surjective")
    if known(inj, sur) and inj and not sur:
        out.append("injective but not surjective")
    if known(post, pre) and post and not pre:
        out.append("post-surjective but not pre-injective")
    if known(inj, pre) and inj and not pre:
        out.append("injective but not pre-injective")
    if known(post, inj) and post != inj:
        out.append("post-surjectivity differs from injectivity")
    if known(rev, inj) and rev != inj:
        out.append("reversibility differs from injectivity")
    if known(sur, pre) and sur != pre:
        out.append("surjectivity differs from pre-injectivity (Garden of Eden)")
    return out


def classify(
    T: CellularAutomaton,
    radius_cap: int = RADIUS_CAP,
    budget: int | None = None,
    shift_budget: int = SHIFT_BUDGET,
    check: bool = True,
) -> Classification:
    c = Classification()
    inj = None
    try:
        inj = decide_injectivity(T, radius_cap, budget, shift_budget)
        c.injective = isinstance(inj, Injective)
        c.results["injective"], c.methods["injective"] = inj, inj.method
    except BudgetExceeded as exc:
        c.results["injective"] = exc
    try:
        sur = decide_surjectivity(T, shift_budget)
        c.surjective = isinstance(sur, Surjective)
        c.results["surjective"], c.methods["surjective"] = sur, sur.method
    except BudgetExceeded as exc:
        c.results["surjective"] = exc
    try:
        pre = decide_preinjectivity(T, shift_budget)
        c.pre_injective = isinstance(pre, PreInjective)
        c.results["pre_injective"], c.methods["pre_injective"] = pre, pre.method
    except BudgetExceeded as exc:
        c.results["pre_injective"] = exc
    if inj is not None:
        try:
            post = decide_postsurjectivity(T, radius_cap, budget, shift_budget, injectivity=inj)
            c.post_surjective = isinstance(post, PostSurjective)
            c.results["post_surjective"], c.methods["post_surjective"] = post, post.method
        except BudgetExceeded as exc:
            c.results["post_surjective"] = exc
    if c.injective is not None and c.surjective is not None:
        c.reversible = c.injective and c.surjective
        c.methods["reversible"] = "derived"
    c.violations = consistency_violations(c)
    if check and c.violations:
        raise PropertyViolation("; ".join(c.violations), c)
    return c
