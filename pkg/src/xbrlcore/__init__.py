"""xbrlcore: parse XBRL instance documents, discover their taxonomy set,
and validate structural rules into deterministic reports."""

from .errors import XbrlError
from .xmltree import (
    MalformedXml,
    QName,
    SourceLocation,
    UnboundPrefix,
    UnsupportedEncoding,
    XmlElement,
    XmlReadError,
    XmlTree,
    find_elements,
    read_document,
)
from .model import (
    Context,
    Divide,
    Duration,
    Entity,
    Fact,
    Footnote,
    FootnoteArc,
    FootnoteLink,
    Forever,
    Instance,
    Instant,
    Item,
    Measures,
    RefKind,
    TaxonomyRef,
    Tuple,
    Unit,
    UnresolvedContextRef,
    UnresolvedUnitRef,
)
from .parser import (
    ParseError,
    ParseMode,
    ParseOptions,
    ParseOutcome,
    find_instances,
    parse_instance,
    parse_period,
    parse_unit,
    serialize,
)
from .dts import (
    Balance,
    Concept,
    ConceptRegistry,
    DataKind,
    DocumentKind,
    Dts,
    DtsDocument,
    FileSystemResolver,
    HttpResolver,
    ItemKind,
    NotASchema,
    PeriodType,
    ResolutionError,
    Resolver,
    build_resolver,
    discover,
    load_taxonomy_schema,
)
from .findings import Finding, Severity
from .validation import (
    Rule,
    RuleCatalog,
    ValidationReport,
    is_numeric_item,
    rule_catalog,
    validate,
)
from .facttable import CSV_HEADER, FactRow, fact_rows

__version__ = "0.1.0"

__all__ = [
    "XbrlError",
    "QName", "SourceLocation", "XmlElement", "XmlTree",
    "read_document", "find_elements",
    "MalformedXml", "UnboundPrefix", "UnsupportedEncoding", "XmlReadError",
    "Instance", "Item", "Tuple", "Fact", "Context", "Entity", "Unit",
    "Measures", "Divide", "Instant", "Duration", "Forever",
    "TaxonomyRef", "RefKind", "Footnote", "FootnoteArc", "FootnoteLink",
    "UnresolvedContextRef", "UnresolvedUnitRef",
    "ParseOptions", "ParseMode", "ParseOutcome", "ParseError",
    "parse_instance", "parse_period", "parse_unit", "find_instances", "serialize",
    "Dts", "DtsDocument", "Concept", "ConceptRegistry",
    "ItemKind", "DataKind", "PeriodType", "Balance", "DocumentKind",
    "Resolver", "FileSystemResolver", "HttpResolver", "build_resolver",
    "ResolutionError", "NotASchema", "discover", "load_taxonomy_schema",
    "Finding", "Severity", "Rule", "RuleCatalog", "ValidationReport",
    "validate", "rule_catalog", "is_numeric_item",
    "FactRow", "fact_rows", "CSV_HEADER",
    "__version__",
]
