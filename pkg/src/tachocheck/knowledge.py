"""Propositional knowledge closure: explicit facts, one-step inference,
and the fixed point where nothing new can be drawn.

Facts are atoms with an optional negation flag; rules fire when all their
premises are already known. One inference step is deliberately not
idempotent (chained rules need chained steps); the fixed point is.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from typing import Iterable


@dataclass(frozen=True)
class Proposition:
    atom: str
    negated: bool = False

    def negation(self) -> "Proposition":
        return Proposition(self.atom, not self.negated)

    @classmethod
    def parse(cls, token: str) -> "Proposition":
        if token.startswith("!"):
            return cls(token[1:], True)
        return cls(token)

    def __str__(self) -> str:
        return ("!" if self.negated else "") + self.atom


@dataclass(frozen=True)
class InferenceRule:
    premises: frozenset[Proposition]
    conclusion: Proposition

    def __post_init__(self):
        if not self.premises:
            raise ValueError("an inference rule needs at least one premise")


@dataclass(frozen=True)
class KnowledgeBase:
    props: frozenset[Proposition] = frozenset()

    def is_consistent(self) -> bool:
        return not any(p.negation() in self.props for p in self.props)

    def __contains__(self, p: Proposition) -> bool:
        return p in self.props

    def __or__(self, other: "KnowledgeBase") -> "KnowledgeBase":
        return KnowledgeBase(self.props | other.props)


class Inconsistent(Exception):
    """The closure contains a proposition together with its negation."""

    def __init__(self, kb: KnowledgeBase):
        super().__init__("knowledge base is inconsistent")
        self.kb = kb


class Answer(Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


def infer_step(kb: KnowledgeBase, rules: Iterable[InferenceRule]) -> KnowledgeBase:
    """One inferential step: fire every rule whose premises are all known."""
    fired = {r.conclusion for r in rules if r.premises <= kb.props}
    return KnowledgeBase(kb.props | fired)


def infer_fixpoint(kb: KnowledgeBase, rules: Iterable[InferenceRule]) -> KnowledgeBase:
    """Least fixed point of :func:`infer_step` above ``kb``. Terminates:
    each step either adds one of finitely many conclusions or stops."""
    rules = tuple(rules)
    current = kb
    while True:
        nxt = infer_step(current, rules)
        if nxt.props == current.props:
            return current
        current = nxt


def answer_query(kb: KnowledgeBase, rules: Iterable[InferenceRule], q: Proposition) -> Answer:
    """YES if the closure contains the query, NO if it contains its negation.

    Raises:
        Inconsistent: when it contains both.
    """
    closure = infer_fixpoint(kb, rules)
    positive = q in closure
    negative = q.negation() in closure
    if positive and negative:
        raise Inconsistent(closure)
    if positive:
        return Answer.YES
    if negative:
        return Answer.NO
    return Answer.UNKNOWN


def load_document(text: str | dict) -> tuple[KnowledgeBase, frozenset[InferenceRule]]:
    """Load facts and rules from JSON: atoms as strings, ``!`` for negation.

    Shape::

        {"facts": ["A", "!B"],
         "rules": [{"premises": ["A", "!B"], "conclusion": "!C"}]}
    """
    doc = json.loads(text) if isinstance(text, str) else text
    facts = frozenset(Proposition.parse(tok) for tok in doc.get("facts", []))
    rules = frozenset(
        InferenceRule(
            frozenset(Proposition.parse(tok) for tok in r["premises"]),
            Proposition.parse(r["conclusion"]),
        )
        for r in doc.get("rules", [])
    )
    return KnowledgeBase(facts), rules
