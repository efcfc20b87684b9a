"""Semantics engine: global model checking and a literal per-state oracle.

The global checker computes truth sets bottom-up; each modality is a single
pass over the mechanism per state, so one recursion step costs
O(|S| + |M| + |Delta|). The per-state oracle `check_state_naive` transcribes
the satisfaction relation directly with no sharing; it exists so the two
implementations can be checked against each other.
"""

from __future__ import annotations

from typing import Container

from .errors import InputError
from .formula import TOP_PROP, Formula, Modal, Modality, Neg, Or, Prop
from .model import TransitionSystem, TruthSet, full_set

__all__ = [
    "ensures",
    "admits",
    "truth_set_wa",
    "truth_set_we",
    "truth_set_se",
    "truth_set_sa",
    "ModelChecker",
    "model_check",
    "check_state_naive",
]


def _require_locus(m: TransitionSystem, s: str, agent: str, action: str) -> None:
    if s not in set(m.states):
        raise InputError(f"unknown state {s!r}")
    if agent not in m.agents:
        raise InputError(f"unknown agent {agent!r}")
    if action not in m.action_set(s, agent):
        raise InputError(f"action {action!r} of agent {agent!r} unavailable at state {s!r}")


def ensures(
    m: TransitionSystem, s: str, agent: str, action: str, target: Container[str]
) -> bool:
    """True when every successor reachable while ``agent`` plays ``action``
    lies in ``target``. Vacuously true if the action occurs in no mechanism
    entry, which cannot happen in valid models."""
    _require_locus(m, s, agent, action)
    return all(t in target for profile, t in m.entries(s) if profile.get(agent) == action)


def admits(
    m: TransitionSystem, s: str, agent: str, action: str, target: Container[str]
) -> bool:
    """True when some successor reachable while ``agent`` plays ``action``
    lies in ``target``; the dual of ensuring the complement."""
    _require_locus(m, s, agent, action)
    return any(t in target for profile, t in m.entries(s) if profile.get(agent) == action)


def truth_set_wa(m: TransitionSystem, agent: str, psi: TruthSet) -> TruthSet:
    """States where some permitted action of ``agent`` admits ``psi``:
    scan mechanism entries and collect on the first witness."""
    members = set()
    inside = psi.members
    for s in m.states:
        permitted = m.permitted_set(s, agent)
        for profile, target in m.entries(s):
            if target in inside and profile.get(agent) in permitted:
                members.add(s)
                break
    return TruthSet(m.states, frozenset(members))


def truth_set_we(m: TransitionSystem, agent: str, psi: TruthSet) -> TruthSet:
    """States where some permitted action of ``agent`` ensures ``psi``:
    start from all available actions, strike out each action seen reaching
    outside ``psi``, then test the survivors against the permitted set."""
    members = set()
    inside = psi.members
    for s in m.states:
        ensurers = set(m.action_set(s, agent))
        for profile, target in m.entries(s):
            if target not in inside:
                ensurers.discard(profile.get(agent))
        if ensurers & m.permitted_set(s, agent):
            members.add(s)
    return TruthSet(m.states, frozenset(members))


def truth_set_se(m: TransitionSystem, agent: str, psi: TruthSet) -> TruthSet:
    """States where every action of ``agent`` that ensures ``psi`` is
    permitted; same striking pass as the WE computation with a subset test."""
    members = set()
    inside = psi.members
    for s in m.states:
        ensurers = set(m.action_set(s, agent))
        for profile, target in m.entries(s):
            if target not in inside:
                ensurers.discard(profile.get(agent))
        if ensurers <= m.permitted_set(s, agent):
            members.add(s)
    return TruthSet(m.states, frozenset(members))


def truth_set_sa(m: TransitionSystem, agent: str, psi: TruthSet) -> TruthSet:
    """States where every action of ``agent`` that admits ``psi`` is
    permitted: sieve out states with a counterexample entry."""
    members = set(m.states)
    inside = psi.members
    for s in m.states:
        permitted = m.permitted_set(s, agent)
        for profile, target in m.entries(s):
            if target in inside and profile.get(agent) not in permitted:
                members.discard(s)
                break
    return TruthSet(m.states, frozenset(members))


_MODALITY_OPS = {
    Modality.WA: truth_set_wa,
    Modality.WE: truth_set_we,
    Modality.SE: truth_set_se,
    Modality.SA: truth_set_sa,
}


class ModelChecker:
    """Global model checking context for one model, memoized per subformula.

    The cache is private to the instance, so independent checkers can run
    concurrently over the same (immutable) model.
    """

    def __init__(self, model: TransitionSystem):
        self.model = model
        self._memo: dict[Formula, TruthSet] = {}

    def truth_set(self, f: Formula) -> TruthSet:
        cached = self._memo.get(f)
        if cached is not None:
            return cached
        if isinstance(f, Prop):
            if f.name == TOP_PROP:
                result = full_set(self.model)
            else:
                result = TruthSet(
                    self.model.states, self.model.valuation.get(f.name, frozenset())
                )
        elif isinstance(f, Neg):
            result = self.truth_set(f.child).complement()
        elif isinstance(f, Or):
            result = self.truth_set(f.left).union(self.truth_set(f.right))
        elif isinstance(f, Modal):
            if f.agent not in self.model.agents:
                raise InputError(f"formula mentions unknown agent {f.agent!r}")
            result = _MODALITY_OPS[f.kind](self.model, f.agent, self.truth_set(f.child))
        else:
            raise InputError(f"not a formula node: {f!r}")
        self._memo[f] = result
        return result


def model_check(m: TransitionSystem, f: Formula) -> TruthSet:
    """Truth set of ``f`` in ``m``."""
    return ModelChecker(m).truth_set(f)


def check_state_naive(m: TransitionSystem, s: str, f: Formula) -> bool:
    """Direct recursive satisfaction check at one state.

    Deliberately naive: no memoization, no truth sets, each modality expands
    into per-action quantifier scans. Serves as an independent oracle for
    model_check.
    """
    if s not in set(m.states):
        raise InputError(f"unknown state {s!r}")
    return _naive(m, s, f)


def _naive(m: TransitionSystem, s: str, f: Formula) -> bool:
    if isinstance(f, Prop):
        if f.name == TOP_PROP:
            return True
        return s in m.valuation.get(f.name, frozenset())
    if isinstance(f, Neg):
        return not _naive(m, s, f.child)
    if isinstance(f, Or):
        return _naive(m, s, f.left) or _naive(m, s, f.right)
    if isinstance(f, Modal):
        agent = f.agent
        if agent not in m.agents:
            raise InputError(f"formula mentions unknown agent {agent!r}")
        if f.kind is Modality.WA:
            return any(
                not _ensures_naive(m, s, agent, i, Neg(f.child))
                for i in m.permitted_set(s, agent)
            )
        if f.kind is Modality.WE:
            return any(
                _ensures_naive(m, s, agent, i, f.child) for i in m.permitted_set(s, agent)
            )
        if f.kind is Modality.SE:
            return all(
                i in m.permitted_set(s, agent)
                for i in m.action_set(s, agent)
                if _ensures_naive(m, s, agent, i, f.child)
            )
        if f.kind is Modality.SA:
            return all(
                i in m.permitted_set(s, agent)
                for i in m.action_set(s, agent)
                if not _ensures_naive(m, s, agent, i, Neg(f.child))
            )
    raise InputError(f"not a formula node: {f!r}")


def _ensures_naive(m: TransitionSystem, s: str, agent: str, action: str, f: Formula) -> bool:
    return all(
        _naive(m, t, f) for profile, t in m.entries(s) if profile.get(agent) == action
    )
