"""Deterministic structural validation of parsed instances.

Every problem is a finding, never a failure: validate() always returns a
report. Findings carry stable codes from the catalog below, are ordered
(location, code) lexicographically, and two runs over the same input
produce identical reports. Rules marked ``requires_dts`` run only when a
taxonomy set is supplied and are listed as skipped otherwise, so providing
a DTS can only ever add findings.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass
from typing import Mapping

from .constants import ISO4217_NS
from .dts import ConceptRegistry, DataKind, Dts
from .findings import Finding, Severity
from .model import (
    Duration,
    Fact,
    Instance,
    Item,
    Measures,
    Tuple,
    Unit,
)
from .iso8601 import compare_start_end
from .parser import DEFAULT_MAX_TUPLE_DEPTH, ParseOutcome


@dataclass(frozen=True)
class Rule:
    code: str
    severity: Severity
    description: str
    requires_dts: bool = False


@dataclass(frozen=True)
class RuleCatalog:
    rules: tuple[Rule, ...]

    def codes(self) -> tuple[str, ...]:
        return tuple(r.code for r in self.rules)


_RULES = (
    Rule("CTX-001", Severity.ERROR,
         "Item contextRef does not resolve to any context in the instance."),
    Rule("CTX-002", Severity.ERROR,
         "Item carries no contextRef (recovered during lenient parse; the item is dropped)."),
    Rule("PER-001", Severity.ERROR,
         "Period value is not valid ISO 8601 (recovered during lenient parse; the context is dropped)."),
    Rule("PER-002", Severity.ERROR,
         "Period startDate is after endDate (recovered during lenient parse; the context is dropped)."),
    Rule("PER-003", Severity.WARNING,
         "Period mixes zoned and zoneless date-times; the zoneless value was assumed to be UTC."),
    Rule("UNT-001", Severity.ERROR,
         "Item unitRef does not resolve to any unit in the instance."),
    Rule("UNT-002", Severity.ERROR,
         "Monetary item uses a unit without any ISO 4217 measure.", requires_dts=True),
    Rule("NUM-001", Severity.ERROR,
         "Numeric item (per the concept registry) has no unitRef.", requires_dts=True),
    Rule("DTS-001", Severity.ERROR,
         "Fact concept is not declared in the discovered taxonomy set.", requires_dts=True),
    Rule("DTS-002", Severity.WARNING,
         "Item concept is declared without a periodType.", requires_dts=True),
    Rule("DTS-003", Severity.WARNING,
         "Concept QName is declared in more than one schema; the first declaration wins.",
         requires_dts=True),
    Rule("DTS-004", Severity.WARNING,
         "Taxonomy schema has no targetNamespace; its declarations were skipped.",
         requires_dts=True),
    Rule("FTN-001", Severity.ERROR,
         "Footnote arc endpoint label matches no locator or footnote in its link."),
    Rule("SCN-001", Severity.WARNING,
         "Scenario element is present but empty."),
    Rule("T-001", Severity.WARNING,
         "Tuple element carries a contextRef; tuples are not context-bound."),
    Rule("T-DEPTH", Severity.WARNING,
         f"Tuple nesting exceeds the depth guard of {DEFAULT_MAX_TUPLE_DEPTH}."),
    Rule("ITM-001", Severity.WARNING,
         "Conflicting or invalid decimals/precision attributes (recovered during lenient parse)."),
    Rule("EMB-001", Severity.WARNING,
         "Embedded xbrl element inside another instance was not parsed."),
)

_RULES_BY_CODE = {r.code: r for r in _RULES}


def rule_catalog() -> RuleCatalog:
    """The full rule catalog in stable order."""
    return RuleCatalog(rules=_RULES)


@dataclass(frozen=True)
class ValidationReport:
    findings: tuple[Finding, ...]
    counts: Mapping[str, int]
    input_digest: str
    skipped_rules: tuple[str, ...] = ()

    def error_count(self) -> int:
        return self.counts.get(Severity.ERROR.value, 0)


_NUMERIC_VALUE_RE = re.compile(r"[+-]?(\d+(\.\d*)?|\.\d+)$")


def is_numeric_item(item: Item, registry: ConceptRegistry | None = None) -> bool:
    """Whether an item reports a numeric value.

    With a registry, the concept's data kind decides. Without one, the
    fallback is purely lexical: the value parses as a decimal number and a
    unitRef is present, so the fallback can never flag a missing unit.
    """
    if registry is not None:
        concept = registry.lookup(item.concept)
        if concept is not None:
            return concept.data_kind in (
                DataKind.MONETARY, DataKind.SHARES, DataKind.NUMERIC
            )
    return item.unit_ref is not None and bool(_NUMERIC_VALUE_RE.match(item.value))


def _has_monetary_measure(unit: Unit) -> bool:
    # A Divide with a monetary numerator (e.g. USD per share) qualifies.
    if isinstance(unit.body, Measures):
        measures = unit.body.measures
    else:
        measures = unit.body.numerator
    return any(m.namespace_uri == ISO4217_NS for m in measures)


class _Checker:
    def __init__(self, instance: Instance, registry: ConceptRegistry | None):
        self.instance = instance
        self.registry = registry
        self.findings: list[Finding] = []

    def emit(self, code: str, message: str, location, subject: str | None = None) -> None:
        rule = _RULES_BY_CODE[code]
        self.findings.append(Finding(
            code=code, severity=rule.severity, message=message,
            location=location, subject=subject,
        ))

    def run(self) -> list[Finding]:
        for fact in self.instance.facts:
            self._check_fact(fact, depth=1)
        self._check_contexts()
        self._check_footnotes()
        return self.findings

    # -- facts --------------------------------------------------------------

    def _check_fact(self, fact: Fact, depth: int) -> None:
        if isinstance(fact, Item):
            self._check_item(fact)
            return
        self._check_tuple(fact, depth)

    def _subject(self, fact: Fact) -> str:
        return fact.id if fact.id else fact.concept.clark()

    def _check_item(self, item: Item) -> None:
        subject = self._subject(item)
        loc = item.source_location
        if item.context_ref not in self.instance.contexts:
            self.emit(
                "CTX-001",
                f"item {item.concept.clark()} references undefined context "
                f"{item.context_ref!r}",
                loc, subject,
            )
        unit = None
        if item.unit_ref is not None:
            unit = self.instance.units.get(item.unit_ref)
            if unit is None:
                self.emit(
                    "UNT-001",
                    f"item {item.concept.clark()} references undefined unit "
                    f"{item.unit_ref!r}",
                    loc, subject,
                )
        if self.registry is None:
            return
        concept = self.registry.lookup(item.concept)
        if concept is None:
            self.emit(
                "DTS-001",
                f"concept {item.concept.clark()} is not declared in the taxonomy set",
                loc, subject,
            )
            return
        numeric = concept.data_kind in (DataKind.MONETARY, DataKind.SHARES, DataKind.NUMERIC)
        if numeric and item.unit_ref is None:
            self.emit(
                "NUM-001",
                f"numeric item {item.concept.clark()} has no unitRef",
                loc, subject,
            )
        if concept.data_kind is DataKind.MONETARY and unit is not None:
            if not _has_monetary_measure(unit):
                self.emit(
                    "UNT-002",
                    f"monetary item {item.concept.clark()} uses unit "
                    f"{item.unit_ref!r} without an ISO 4217 measure",
                    loc, subject,
                )

    def _check_tuple(self, tup: Tuple, depth: int) -> None:
        subject = self._subject(tup)
        if tup.context_ref is not None:
            self.emit(
                "T-001",
                f"tuple {tup.concept.clark()} carries contextRef {tup.context_ref!r}",
                tup.source_location, subject,
            )
        if depth > DEFAULT_MAX_TUPLE_DEPTH:
            self.emit(
                "T-DEPTH",
                f"tuple {tup.concept.clark()} is nested deeper than "
                f"{DEFAULT_MAX_TUPLE_DEPTH}",
                tup.source_location, subject,
            )
        if self.registry is not None and self.registry.lookup(tup.concept) is None:
            self.emit(
                "DTS-001",
                f"concept {tup.concept.clark()} is not declared in the taxonomy set",
                tup.source_location, subject,
            )
        for child in tup.children:
            self._check_fact(child, depth + 1)

    # -- contexts -----------------------------------------------------------

    def _check_contexts(self) -> None:
        for context in self.instance.contexts.values():
            if context.scenario is not None and not context.scenario.child_elements():
                self.emit(
                    "SCN-001",
                    f"context {context.id!r} has an empty scenario element",
                    context.scenario.source_location, context.id,
                )
            period = context.period
            if isinstance(period, Duration):
                _, assumed_utc = compare_start_end(period.start, period.end)
                if assumed_utc:
                    self.emit(
                        "PER-003",
                        f"context {context.id!r} mixes zoned and zoneless period "
                        "values; the zoneless one was assumed to be UTC",
                        context.source_location, context.id,
                    )

    # -- footnotes ----------------------------------------------------------

    def _check_footnotes(self) -> None:
        for link in self.instance.footnote_links:
            labels = set(link.locators) | set(link.footnotes)
            for arc in link.arcs:
                for endpoint in (arc.from_label, arc.to_label):
                    if endpoint not in labels:
                        self.emit(
                            "FTN-001",
                            f"footnote arc endpoint {endpoint!r} matches no "
                            "locator or footnote label",
                            link.source_location, endpoint,
                        )


def validate(subject: Instance | ParseOutcome, dts: Dts | None = None, *,
             input_digest: str | None = None) -> ValidationReport:
    """Check an instance against the rule catalog.

    Accepts a plain Instance or a lenient ParseOutcome, whose recovered
    findings are merged into the report. ``input_digest`` should be the
    content hash of the source bytes; when omitted it is computed from the
    canonical serialization so reports stay deterministic.
    """
    if isinstance(subject, ParseOutcome):
        instance = subject.instance
        collected = list(subject.recovered_findings)
    else:
        instance = subject
        collected = []

    registry = dts.concepts if dts is not None else None
    if dts is not None:
        collected.extend(dts.findings)
    collected.extend(_Checker(instance, registry).run())
    collected.sort(key=Finding.sort_key)

    counts = {s.value: 0 for s in Severity}
    for finding in collected:
        counts[finding.severity.value] += 1

    if input_digest is None:
        from .parser import serialize

        input_digest = digest_bytes(serialize(instance))

    skipped = tuple(r.code for r in _RULES if r.requires_dts) if dts is None else ()
    return ValidationReport(
        findings=tuple(collected),
        counts=counts,
        input_digest=input_digest,
        skipped_rules=skipped,
    )


def digest_bytes(data: bytes) -> str:
    return "sha256:" + hashlib.sha256(data).hexdigest()
