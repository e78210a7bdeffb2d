"""Flattened, table-shaped view of an instance's items.

Canonical text forms: concepts and measures use Clark notation
(``{uri}local``); periods render as ``I:<instant>``, ``D:<start>/<end>``,
or ``F``; divide units as ``numerator/denominator`` with measures joined
by ``*``; ``tuple_path`` is the slash-joined chain of ancestor tuple
concepts, empty for top-level items.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import Divide, Duration, Fact, Forever, Instance, Instant, Item, Tuple, Unit

CSV_HEADER = ("concept", "value", "context_id", "entity", "period", "unit", "tuple_path")


@dataclass(frozen=True)
class FactRow:
    concept: str
    value: str
    context_id: str
    entity: str
    period: str
    unit: str
    tuple_path: str

    def as_tuple(self) -> tuple[str, ...]:
        return (self.concept, self.value, self.context_id, self.entity,
                self.period, self.unit, self.tuple_path)


def _period_text(period) -> str:
    if isinstance(period, Forever):
        return "F"
    if isinstance(period, Instant):
        return f"I:{period.when.raw}"
    if isinstance(period, Duration):
        return f"D:{period.start.raw}/{period.end.raw}"
    return ""


def _unit_text(unit: Unit) -> str:
    if isinstance(unit.body, Divide):
        num = "*".join(m.clark() for m in unit.body.numerator)
        den = "*".join(m.clark() for m in unit.body.denominator)
        return f"{num}/{den}"
    return "*".join(m.clark() for m in unit.body.measures)


def fact_rows(instance: Instance) -> list[FactRow]:
    """One row per Item, document order; unresolvable references render empty."""
    rows: list[FactRow] = []

    def emit(item: Item, path: tuple[str, ...]) -> None:
        context = instance.contexts.get(item.context_ref)
        unit = instance.units.get(item.unit_ref) if item.unit_ref else None
        rows.append(FactRow(
            concept=item.concept.clark(),
            value=item.value,
            context_id=item.context_ref,
            entity=context.entity.identifier if context else "",
            period=_period_text(context.period) if context else "",
            unit=_unit_text(unit) if unit else "",
            tuple_path="/".join(path),
        ))

    def walk(facts: tuple[Fact, ...], path: tuple[str, ...]) -> None:
        for fact in facts:
            if isinstance(fact, Item):
                emit(fact, path)
            elif isinstance(fact, Tuple):
                walk(fact.children, path + (fact.concept.clark(),))

    walk(instance.facts, ())
    return rows
