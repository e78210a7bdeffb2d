"""Taxonomy set discovery and the concept registry.

Discovery runs breadth-first from an instance's schema and linkbase
references, following schema imports/includes and embedded linkbaseRefs,
with a visited set on resolved URIs so cycles terminate. Every reachable
href ends up either in ``documents`` or in ``unresolved``; nothing is
dropped silently. Relationship networks inside linkbases are fetched and
recorded but not interpreted.
"""

from __future__ import annotations

import posixpath
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterator, Mapping, Protocol
from urllib.parse import urlsplit, urljoin

from . import constants as c
from .errors import XbrlError
from .findings import Finding, Severity
from .model import Instance
from .xmltree import QName, XmlElement, XmlReadError, read_document

DEFAULT_MAX_DOCUMENTS = 256
DEFAULT_MAX_DEPTH = 16


class NotASchema(XbrlError):
    """The document is not an XML Schema."""


class ResolutionError(XbrlError):
    """A reference could not be fetched; the message is the reason."""


class ItemKind(Enum):
    ITEM = "item"
    TUPLE = "tuple"
    UNKNOWN = "unknown"


class DataKind(Enum):
    MONETARY = "monetary"
    SHARES = "shares"
    NUMERIC = "numeric"
    NON_NUMERIC = "non-numeric"
    UNKNOWN = "unknown"


class PeriodType(Enum):
    INSTANT = "instant"
    DURATION = "duration"
    UNKNOWN = "unknown"


class Balance(Enum):
    DEBIT = "debit"
    CREDIT = "credit"
    NONE = "none"


class DocumentKind(Enum):
    TAXONOMY_SCHEMA = "schema"
    LINKBASE = "linkbase"


@dataclass(frozen=True)
class Concept:
    """One reporting concept declared in a taxonomy schema."""

    qname: QName
    item_kind: ItemKind = ItemKind.UNKNOWN
    data_kind: DataKind = DataKind.UNKNOWN
    period_type: PeriodType = PeriodType.UNKNOWN
    balance: Balance = Balance.NONE
    abstract: bool = False


class ConceptRegistry:
    """Exact-match concept lookup; misses return None, never a default."""

    def __init__(self, concepts: Mapping[QName, Concept] | None = None):
        self.by_qname: dict[QName, Concept] = dict(concepts or {})

    def lookup(self, qname: QName) -> Concept | None:
        return self.by_qname.get(qname)

    def __len__(self) -> int:
        return len(self.by_qname)

    def __iter__(self) -> Iterator[Concept]:
        return iter(self.by_qname.values())

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ConceptRegistry) and self.by_qname == other.by_qname


@dataclass(frozen=True)
class DtsDocument:
    uri: str
    kind: DocumentKind
    outgoing_refs: tuple[str, ...] = ()


@dataclass(frozen=True)
class Dts:
    """The discovered taxonomy set reachable from one instance."""

    documents: Mapping[str, DtsDocument] = field(default_factory=dict)
    concepts: ConceptRegistry = field(default_factory=ConceptRegistry)
    unresolved: tuple[tuple[str, str], ...] = ()
    findings: tuple[Finding, ...] = ()
    limit_exceeded: bool = False


# ---------------------------------------------------------------------------
# Resolvers
# ---------------------------------------------------------------------------


class Resolver(Protocol):
    def resolve(self, base_uri: str, href: str) -> str: ...

    def fetch(self, uri: str) -> bytes: ...


def resolve_reference(base_uri: str, href: str) -> str:
    """RFC 3986 relative-reference resolution against a base URI or path."""
    if urlsplit(href).scheme:
        return href
    return urljoin(base_uri, href)


class FileSystemResolver:
    """Maps URIs into files under a root directory.

    Plain (possibly relative) paths resolve directly; http/https URIs are
    folded into path segments under the root as ``<scheme>/<authority>/<path>``.
    Anything escaping the root is refused.
    """

    def __init__(self, root: str | Path):
        self.root = Path(root)

    def resolve(self, base_uri: str, href: str) -> str:
        return resolve_reference(base_uri, href)

    def _uri_to_path(self, uri: str) -> Path:
        parts = urlsplit(uri)
        if parts.scheme in ("http", "https"):
            return self.root / parts.scheme / parts.netloc / parts.path.lstrip("/")
        if parts.scheme == "file":
            return Path(parts.path)
        return Path(posixpath.normpath(uri))

    def fetch(self, uri: str) -> bytes:
        path = self._uri_to_path(uri)
        resolved = path if path.is_absolute() else Path.cwd() / path
        try:
            resolved = resolved.resolve()
            root = (self.root if self.root.is_absolute() else Path.cwd() / self.root).resolve()
            resolved.relative_to(root)
        except ValueError:
            raise ResolutionError(f"outside taxonomy root: {uri}") from None
        try:
            return resolved.read_bytes()
        except FileNotFoundError:
            raise ResolutionError(f"not found: {uri}") from None
        except OSError as exc:
            raise ResolutionError(f"unreadable: {uri} ({exc.strerror})") from None


class HttpResolver:
    """Read-only network fetcher; only constructed when explicitly enabled."""

    def __init__(self, timeout: float = 30.0):
        self.timeout = timeout

    def resolve(self, base_uri: str, href: str) -> str:
        return resolve_reference(base_uri, href)

    def fetch(self, uri: str) -> bytes:
        if urlsplit(uri).scheme not in ("http", "https"):
            raise ResolutionError(f"not an http(s) URI: {uri}")
        import urllib.request

        try:
            with urllib.request.urlopen(uri, timeout=self.timeout) as response:
                return response.read()
        except OSError as exc:
            raise ResolutionError(f"fetch failed: {uri} ({exc})") from None


class NullResolver:
    """Resolves nothing; used when no taxonomy source is configured."""

    def resolve(self, base_uri: str, href: str) -> str:
        return resolve_reference(base_uri, href)

    def fetch(self, uri: str) -> bytes:
        raise ResolutionError("no taxonomy source configured")


class RoutingResolver:
    """Sends http(s) URIs to a network resolver, everything else to files."""

    def __init__(self, filesystem: FileSystemResolver, http: HttpResolver):
        self.filesystem = filesystem
        self.http = http

    def resolve(self, base_uri: str, href: str) -> str:
        return resolve_reference(base_uri, href)

    def fetch(self, uri: str) -> bytes:
        if urlsplit(uri).scheme in ("http", "https"):
            return self.http.fetch(uri)
        return self.filesystem.fetch(uri)


def build_resolver(taxonomy_root: str | Path | None = None,
                   allow_network: bool = False) -> Resolver:
    if taxonomy_root is not None and allow_network:
        return RoutingResolver(FileSystemResolver(taxonomy_root), HttpResolver())
    if taxonomy_root is not None:
        return FileSystemResolver(taxonomy_root)
    if allow_network:
        return HttpResolver()
    return NullResolver()


# ---------------------------------------------------------------------------
# Schema loading
# ---------------------------------------------------------------------------


def _data_kind(type_name: QName | None) -> DataKind:
    if type_name is None or type_name.namespace_uri != c.XBRLI_NS:
        return DataKind.UNKNOWN
    local = type_name.local_name
    if local in c.MONETARY_ITEM_TYPES:
        return DataKind.MONETARY
    if local in c.SHARES_ITEM_TYPES:
        return DataKind.SHARES
    if local in c.NUMERIC_ITEM_TYPES:
        return DataKind.NUMERIC
    if local in c.NON_NUMERIC_ITEM_TYPES:
        return DataKind.NON_NUMERIC
    return DataKind.UNKNOWN


def _qname_attr(element: XmlElement, attr: str) -> QName | None:
    raw = element.attr(attr)
    if raw is None:
        return None
    try:
        return element.resolve_qname_text(raw)
    except XmlReadError:
        return None


def _concept_from_declaration(element: XmlElement, target_ns: str,
                              uri: str) -> tuple[Concept, Finding | None]:
    name = element.attr("name") or ""
    qname = QName(target_ns, name)
    subst = _qname_attr(element, "substitutionGroup")
    if subst == c.QN_SUBST_ITEM:
        item_kind = ItemKind.ITEM
    elif subst == c.QN_SUBST_TUPLE:
        item_kind = ItemKind.TUPLE
    else:
        item_kind = ItemKind.UNKNOWN

    period_raw = element.attr_qn(c.QN_PERIOD_TYPE_ATTR)
    if period_raw == "instant":
        period_type = PeriodType.INSTANT
    elif period_raw == "duration":
        period_type = PeriodType.DURATION
    else:
        period_type = PeriodType.UNKNOWN

    finding = None
    if period_type is PeriodType.UNKNOWN and item_kind is ItemKind.ITEM:
        finding = Finding(
            code="DTS-002",
            severity=Severity.WARNING,
            message=f"{uri}: concept {qname.clark()} declares no periodType",
            location=element.source_location,
            subject=qname.clark(),
        )

    balance_raw = element.attr_qn(c.QN_BALANCE_ATTR)
    balance = {"debit": Balance.DEBIT, "credit": Balance.CREDIT}.get(
        balance_raw or "", Balance.NONE
    )
    concept = Concept(
        qname=qname,
        item_kind=item_kind,
        data_kind=_data_kind(_qname_attr(element, "type")),
        period_type=period_type,
        balance=balance,
        abstract=(element.attr("abstract") or "").strip() in ("true", "1"),
    )
    return concept, finding


def _outgoing_refs(root: XmlElement) -> list[str]:
    refs: list[str] = []
    for element in root.iter_elements():
        if element.name in (c.QN_XSD_IMPORT, c.QN_XSD_INCLUDE):
            location = element.attr("schemaLocation")
            if location:
                refs.append(location)
        elif element.name in (c.QN_LINKBASE_REF, c.QN_SCHEMA_REF):
            href = element.attr_qn(c.QN_XLINK_HREF)
            if href:
                refs.append(href)
    return refs


def load_taxonomy_schema(data: bytes, uri: str) -> tuple[list[Concept], list[str], list[Finding]]:
    """Extract top-level element declarations and outgoing hrefs from a schema.

    Returns (concepts, outgoing hrefs, findings). Raises NotASchema when the
    root is not an XML Schema document; a schema without a targetNamespace
    contributes no concepts and one finding.
    """
    return _load_schema_root(read_document(data).root, uri)


def _load_schema_root(root: XmlElement, uri: str) -> tuple[list[Concept], list[str], list[Finding]]:
    if root.name != c.QN_XSD_SCHEMA:
        raise NotASchema(f"{uri}: root element is {root.name.clark()}, not a schema")
    findings: list[Finding] = []
    concepts: list[Concept] = []
    target_ns = root.attr("targetNamespace")
    if target_ns is None:
        findings.append(Finding(
            code="DTS-004",
            severity=Severity.WARNING,
            message=f"{uri}: schema has no targetNamespace; declarations skipped",
            location=root.source_location,
        ))
    else:
        for child in root.child_elements():
            if child.name == c.QN_XSD_ELEMENT and child.attr("name"):
                concept, finding = _concept_from_declaration(child, target_ns, uri)
                concepts.append(concept)
                if finding is not None:
                    findings.append(finding)
    return concepts, _outgoing_refs(root), findings


# ---------------------------------------------------------------------------
# Discovery
# ---------------------------------------------------------------------------


def discover(instance: Instance, resolver: Resolver, *, base_uri: str = "",
             max_documents: int = DEFAULT_MAX_DOCUMENTS,
             max_depth: int = DEFAULT_MAX_DEPTH) -> Dts:
    """Breadth-first closure over taxonomy references.

    Deterministic for deterministic resolvers: each URI is fetched at most
    once per run, documents appear in discovery order, and unresolved
    entries keep the order of the referencing edge. When a limit is hit the
    partial result is returned with ``limit_exceeded`` set.
    """
    queue: list[tuple[str, int]] = []
    seen: set[str] = set()
    for ref in (*instance.schema_refs, *instance.linkbase_refs):
        queue.append((resolver.resolve(base_uri, ref.href), 1))

    documents: dict[str, DtsDocument] = {}
    registry: dict[QName, Concept] = {}
    concept_sources: dict[QName, str] = {}
    findings: list[Finding] = []
    unresolved: list[tuple[str, str]] = []
    limit_exceeded = False

    index = 0
    while index < len(queue):
        uri, depth = queue[index]
        index += 1
        if uri in seen:
            continue
        seen.add(uri)
        if depth > max_depth:
            unresolved.append((uri, f"depth limit {max_depth} exceeded"))
            limit_exceeded = True
            continue
        if len(documents) >= max_documents:
            unresolved.append((uri, f"document limit {max_documents} reached"))
            limit_exceeded = True
            continue
        try:
            data = resolver.fetch(uri)
        except ResolutionError as exc:
            unresolved.append((uri, str(exc)))
            continue
        try:
            root = read_document(data).root
        except XmlReadError as exc:
            unresolved.append((uri, f"not XML: {exc}"))
            continue
        if root.name == c.QN_XSD_SCHEMA:
            kind = DocumentKind.TAXONOMY_SCHEMA
            concepts, refs, schema_findings = _load_schema_root(root, uri)
            findings.extend(schema_findings)
            for concept in concepts:
                if concept.qname in registry:
                    findings.append(Finding(
                        code="DTS-003",
                        severity=Severity.WARNING,
                        message=(
                            f"concept {concept.qname.clark()} in {uri} duplicates the "
                            f"declaration in {concept_sources[concept.qname]}; first wins"
                        ),
                        subject=concept.qname.clark(),
                    ))
                    continue
                registry[concept.qname] = concept
                concept_sources[concept.qname] = uri
        elif root.name == c.QN_LINKBASE:
            kind = DocumentKind.LINKBASE
            refs = _outgoing_refs(root)
        else:
            unresolved.append((uri, "root element is neither a schema nor a linkbase"))
            continue
        documents[uri] = DtsDocument(uri=uri, kind=kind, outgoing_refs=tuple(refs))
        for href in refs:
            queue.append((resolver.resolve(uri, href), depth + 1))

    return Dts(
        documents=documents,
        concepts=ConceptRegistry(registry),
        unresolved=tuple(unresolved),
        findings=tuple(findings),
        limit_exceeded=limit_exceeded,
    )
