"""Seeded random generation of valid transition systems and formulas.

Randomness comes from ``random.Random`` (the stdlib Mersenne Twister), whose
core draws are stable across platforms and supported Python versions, so a
(seed, params) pair pins the generated artifact exactly. Continuity is
enforced constructively: every profile is assigned its successors directly,
no rejection sampling.
"""

from __future__ import annotations

import random
import string
from dataclasses import dataclass
from itertools import product

from .errors import CapacityError, InputError
from .formula import BOT, TOP, Formula, Modal, Modality, Neg, Or, Prop
from .model import DEFAULT_PROFILE_CAP, TransitionSystem, make_model


@dataclass(frozen=True)
class GenParams:
    seed: int
    num_agents: int = 2
    num_states: int = 3
    max_actions: int = 2
    num_props: int = 1
    permitted_density: float = 1.0
    branching: int = 1
    deterministic: bool = False
    single_agent: bool = False

    def __post_init__(self) -> None:
        if min(self.num_agents, self.num_states, self.max_actions, self.num_props) < 1:
            raise InputError("generator counts must be at least 1")
        if not 0 < self.permitted_density <= 1:
            raise InputError("permitted_density must lie in (0, 1]")
        if self.branching < 1:
            raise InputError("branching must be at least 1")
        if self.single_agent and self.num_agents != 1:
            raise InputError("single_agent requires num_agents == 1")


def agent_names(count: int) -> list[str]:
    letters = string.ascii_lowercase
    return [letters[i] if i < len(letters) else f"a{i}" for i in range(count)]


def random_model(params: GenParams, profile_cap: int = DEFAULT_PROFILE_CAP) -> TransitionSystem:
    """Generate a model that always passes validation. Identical params and
    seed give a structurally identical model."""
    rng = random.Random(params.seed)
    states = [f"s{i}" for i in range(params.num_states)]
    agents = agent_names(params.num_agents)

    actions: dict[str, dict[str, list[str]]] = {}
    permitted: dict[str, dict[str, list[str]]] = {}
    total_profiles = 0
    for s in states:
        actions[s] = {}
        permitted[s] = {}
        count_product = 1
        for a in agents:
            count = rng.randint(1, params.max_actions)
            count_product *= count
            acts = [str(i + 1) for i in range(count)]
            actions[s][a] = acts
            chosen = [i for i in acts if rng.random() < params.permitted_density]
            if not chosen:
                chosen = [rng.choice(acts)]
            permitted[s][a] = chosen
        total_profiles += count_product
    if total_profiles > profile_cap:
        raise CapacityError(
            f"requested model needs {total_profiles} profiles, over the cap of {profile_cap}"
        )

    branching = 1 if params.deterministic else params.branching
    transitions: list[tuple[str, dict[str, str], str]] = []
    for s in states:
        for combo in product(*(actions[s][a] for a in agents)):
            profile = dict(zip(agents, combo))
            k = 1 if branching == 1 else rng.randint(1, min(branching, len(states)))
            for target in rng.sample(states, k):
                transitions.append((s, profile, target))

    valuation = {
        f"p{i}": [s for s in states if rng.random() < 0.5] for i in range(params.num_props)
    }
    return make_model(agents, states, actions, permitted, transitions, valuation)


def replicate_model(m: TransitionSystem, copies: int) -> TransitionSystem:
    """Disjoint union of renamed copies of ``m``; every size measure scales by
    exactly ``copies``. Used by the scaling experiments."""
    if copies < 1:
        raise InputError("copies must be at least 1")

    def rename(state: str, i: int) -> str:
        return f"{state}~{i}"

    states = [rename(s, i) for i in range(copies) for s in m.states]
    actions = {
        rename(s, i): {a: list(m.action_set(s, a)) for a in m.agents}
        for i in range(copies)
        for s in m.states
    }
    permitted = {
        rename(s, i): {a: sorted(m.permitted_set(s, a)) for a in m.agents}
        for i in range(copies)
        for s in m.states
    }
    transitions = [
        (rename(s, i), dict(profile), rename(target, i))
        for i in range(copies)
        for s in m.states
        for profile, target in m.entries(s)
    ]
    valuation = {
        p: [rename(s, i) for i in range(copies) for s in held]
        for p, held in m.valuation.items()
    }
    return make_model(m.agents, states, actions, permitted, transitions, valuation)


_PRODUCTIONS = ("prop", "const", "neg", "or", "wa", "we", "se", "sa")
_MODALITY_BY_PRODUCTION = {
    "wa": Modality.WA,
    "we": Modality.WE,
    "se": Modality.SE,
    "sa": Modality.SA,
}


def random_formula(
    seed: int,
    max_depth: int,
    agents: list[str] | tuple[str, ...],
    props: list[str] | tuple[str, ...],
) -> Formula:
    """Seed-deterministic random formula of tree depth <= max_depth. Every
    production (propositions, constants, negation, disjunction, and all four
    modalities) is reachable with positive probability at depth >= 1."""
    if max_depth < 0:
        raise InputError("max_depth must be nonnegative")
    if not agents or not props:
        raise InputError("need at least one agent and one proposition")
    rng = random.Random(seed)
    return _gen(rng, max_depth, tuple(agents), tuple(props))


def _gen(rng: random.Random, depth: int, agents: tuple[str, ...], props: tuple[str, ...]) -> Formula:
    if depth == 0:
        if rng.random() < 0.2:
            return TOP if rng.random() < 0.5 else BOT
        return Prop(rng.choice(props))
    production = rng.choice(_PRODUCTIONS)
    if production == "prop":
        return Prop(rng.choice(props))
    if production == "const":
        return TOP if rng.random() < 0.5 else BOT
    if production == "neg":
        return Neg(_gen(rng, depth - 1, agents, props))
    if production == "or":
        return Or(_gen(rng, depth - 1, agents, props), _gen(rng, depth - 1, agents, props))
    kind = _MODALITY_BY_PRODUCTION[production]
    return Modal(kind, rng.choice(agents), _gen(rng, depth - 1, agents, props))
