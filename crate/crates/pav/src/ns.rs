//! Namespace IRIs used throughout the toolkit.

pub const PAV: &str = "http://purl.org/pav/";
pub const PROV: &str = "http://www.w3.org/ns/prov#";
pub const DCT: &str = "http://purl.org/dc/terms/";
pub const SKOS: &str = "http://www.w3.org/2004/02/skos/core#";
pub const RDF: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
pub const RDFS: &str = "http://www.w3.org/2000/01/rdf-schema#";
pub const XSD: &str = "http://www.w3.org/2001/XMLSchema#";
pub const OWL: &str = "http://www.w3.org/2002/07/owl#";

/// Prefix for deterministic skolem IRIs minted by the inference engine
/// and the activity unroller.
pub const SKOLEM: &str = "urn:pav-skolem:";

/// Namespace for the activity classes minted by the unroller.
pub const UNROLL: &str = "urn:pav-unroll:";

pub const RDF_TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
pub const RDF_LANG_STRING: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString";
pub const XSD_STRING: &str = "http://www.w3.org/2001/XMLSchema#string";
pub const XSD_DATE_TIME: &str = "http://www.w3.org/2001/XMLSchema#dateTime";

pub const RDFS_SUB_PROPERTY_OF: &str = "http://www.w3.org/2000/01/rdf-schema#subPropertyOf";
pub const RDFS_COMMENT: &str = "http://www.w3.org/2000/01/rdf-schema#comment";
pub const RDFS_LABEL: &str = "http://www.w3.org/2000/01/rdf-schema#label";

pub const OWL_OBJECT_PROPERTY: &str = "http://www.w3.org/2002/07/owl#ObjectProperty";
pub const OWL_DATATYPE_PROPERTY: &str = "http://www.w3.org/2002/07/owl#DatatypeProperty";

pub const PROV_WAS_ATTRIBUTED_TO: &str = "http://www.w3.org/ns/prov#wasAttributedTo";
pub const PROV_WAS_DERIVED_FROM: &str = "http://www.w3.org/ns/prov#wasDerivedFrom";
pub const PROV_WAS_INFLUENCED_BY: &str = "http://www.w3.org/ns/prov#wasInfluencedBy";
pub const PROV_WAS_REVISION_OF: &str = "http://www.w3.org/ns/prov#wasRevisionOf";
pub const PROV_ALTERNATE_OF: &str = "http://www.w3.org/ns/prov#alternateOf";
pub const PROV_WAS_GENERATED_BY: &str = "http://www.w3.org/ns/prov#wasGeneratedBy";
pub const PROV_WAS_ASSOCIATED_WITH: &str = "http://www.w3.org/ns/prov#wasAssociatedWith";
pub const PROV_USED: &str = "http://www.w3.org/ns/prov#used";
pub const PROV_ENDED_AT_TIME: &str = "http://www.w3.org/ns/prov#endedAtTime";
pub const PROV_ACTIVITY: &str = "http://www.w3.org/ns/prov#Activity";
pub const PROV_AGENT: &str = "http://www.w3.org/ns/prov#Agent";
pub const PROV_SOFTWARE_AGENT: &str = "http://www.w3.org/ns/prov#SoftwareAgent";
pub const PROV_PERSON: &str = "http://www.w3.org/ns/prov#Person";
pub const PROV_ORGANIZATION: &str = "http://www.w3.org/ns/prov#Organization";

pub const DCT_CREATOR: &str = "http://purl.org/dc/terms/creator";
pub const DCT_CONTRIBUTOR: &str = "http://purl.org/dc/terms/contributor";
pub const DCT_SOURCE: &str = "http://purl.org/dc/terms/source";
pub const DCT_IS_FORMAT_OF: &str = "http://purl.org/dc/terms/isFormatOf";
pub const DCT_IS_VERSION_OF: &str = "http://purl.org/dc/terms/isVersionOf";
pub const DCT_REPLACES: &str = "http://purl.org/dc/terms/replaces";

/// Expands a local name in the PAV namespace.
pub fn pav(local: &str) -> String {
    format!("{PAV}{local}")
}

/// Expands a local name in the PROV-O namespace.
pub fn prov(local: &str) -> String {
    format!("{PROV}{local}")
}

/// Expands a local name in the DC Terms namespace.
pub fn dct(local: &str) -> String {
    format!("{DCT}{local}")
}

/// Expands a local name in the SKOS namespace.
pub fn skos(local: &str) -> String {
    format!("{SKOS}{local}")
}

/// The well-known prefix bindings used when pretty-printing graphs the
/// toolkit produces itself (inference closures, exports, reports).
pub fn well_known_prefixes() -> std::collections::BTreeMap<String, String> {
    [
        ("pav", PAV),
        ("prov", PROV),
        ("dct", DCT),
        ("skos", SKOS),
        ("rdf", RDF),
        ("rdfs", RDFS),
        ("xsd", XSD),
        ("owl", OWL),
    ]
    .into_iter()
    .map(|(p, n)| (p.to_string(), n.to_string()))
    .collect()
}
