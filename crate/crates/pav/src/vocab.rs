//! Registry of the 26 PAV terms: definitions, value kinds, functional-use
//! recommendations, property hierarchies into PAV itself, DC Terms and
//! PROV-O, and the SKOS alignment with DC Terms.
//!
//! The hierarchy edges drive the inference engine; the SKOS mappings are
//! descriptive data only and are never used for inference.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::model::{Dataset, GraphSelector, Quad, Term};
use crate::ns;

/// Which of the three PAV groups a term belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Category {
    Authoring,
    Provenance,
    Versioning,
}

/// The kind of value a property expects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ValueKind {
    Agent,
    Resource,
    Timestamp,
    FreeText,
    Location,
}

/// SKOS mapping relations used in the DC Terms alignment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum SkosRelation {
    BroadMatch,
    CloseMatch,
    NarrowMatch,
    RelatedMatch,
}

impl SkosRelation {
    pub fn iri(self) -> String {
        match self {
            SkosRelation::BroadMatch => ns::skos("broadMatch"),
            SkosRelation::CloseMatch => ns::skos("closeMatch"),
            SkosRelation::NarrowMatch => ns::skos("narrowMatch"),
            SkosRelation::RelatedMatch => ns::skos("relatedMatch"),
        }
    }
}

/// Everything the registry knows about one PAV property.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermDescriptor {
    pub iri: String,
    pub category: Category,
    pub value_kind: ValueKind,
    /// True for properties whose definition recommends a single value per
    /// subject ("normally used in a functional way").
    pub functional_recommended: bool,
    pub definition: String,
    pub pav_superproperties: BTreeSet<String>,
    pub dct_superproperties: BTreeSet<String>,
    pub prov_superproperties: BTreeSet<String>,
    pub skos_mappings: BTreeSet<(SkosRelation, String)>,
}

impl TermDescriptor {
    /// Direct superproperty edges across all three target vocabularies.
    pub fn direct_superproperties(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        out.extend(self.pav_superproperties.iter().cloned());
        out.extend(self.dct_superproperties.iter().cloned());
        out.extend(self.prov_superproperties.iter().cloned());
        out
    }

    /// Local name within the PAV namespace.
    pub fn local_name(&self) -> &str {
        self.iri.strip_prefix(ns::PAV).unwrap_or(&self.iri)
    }
}

/// Raised by [`Registry::lookup`] for IRIs outside the registry; carries the
/// closest registered term for typo diagnostics.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown PAV term <{iri}>{}", suggestion.as_ref().map(|s| format!(" (did you mean <{s}>?)")).unwrap_or_default())]
pub struct UnknownTerm {
    pub iri: String,
    pub suggestion: Option<String>,
}

struct Spec {
    local: &'static str,
    category: Category,
    kind: ValueKind,
    functional: bool,
    definition: &'static str,
    pav_supers: &'static [&'static str],
    dct_supers: &'static [&'static str],
    prov_supers: &'static [&'static str],
    skos: &'static [(SkosRelation, &'static str)],
}

use Category::{Authoring, Provenance, Versioning};
use SkosRelation::{BroadMatch, CloseMatch, NarrowMatch, RelatedMatch};
use ValueKind::{Agent, FreeText, Location, Resource, Timestamp};

const TERMS: &[Spec] = &[
    // -- authoring ----------------------------------------------------------
    Spec {
        local: "authoredBy",
        category: Authoring,
        kind: Agent,
        functional: false,
        definition: "An agent that originated or gave existence to the work that is expressed by the digital resource. The author of the content may be different from the creator of the resource representation.",
        pav_supers: &["contributedBy"],
        dct_supers: &["creator"],
        prov_supers: &["wasAttributedTo"],
        skos: &[(BroadMatch, "creator")],
    },
    Spec {
        local: "authoredOn",
        category: Authoring,
        kind: Timestamp,
        functional: true,
        definition: "The date this resource was authored by the agents given by pav:authoredBy. Normally used in a functional way, indicating the last time of authoring.",
        pav_supers: &["contributedOn"],
        dct_supers: &[],
        prov_supers: &[],
        skos: &[],
    },
    Spec {
        local: "curatedBy",
        category: Authoring,
        kind: Agent,
        functional: false,
        definition: "An agent specialist responsible for shaping the expression in an appropriate format; often the primary agent responsible for ensuring the quality of the representation.",
        pav_supers: &["contributedBy"],
        dct_supers: &[],
        prov_supers: &["wasAttributedTo"],
        skos: &[],
    },
    Spec {
        local: "curatedOn",
        category: Authoring,
        kind: Timestamp,
        functional: true,
        definition: "The date this resource was curated. Normally used in a functional way, indicating the last curation date.",
        pav_supers: &["contributedOn"],
        dct_supers: &[],
        prov_supers: &[],
        skos: &[],
    },
    Spec {
        local: "contributedBy",
        category: Authoring,
        kind: Agent,
        functional: false,
        definition: "An agent that provided any sort of help in conceiving the work that is expressed by the digital artifact. Covers authors and curators as well as other contribution roles.",
        pav_supers: &[],
        dct_supers: &["contributor"],
        prov_supers: &["wasAttributedTo"],
        skos: &[(CloseMatch, "contributor")],
    },
    Spec {
        local: "contributedOn",
        category: Authoring,
        kind: Timestamp,
        functional: false,
        definition: "The date this resource was contributed on. Superproperty of pav:authoredOn and pav:curatedOn, but can also be used for other kinds of contributions.",
        pav_supers: &[],
        dct_supers: &[],
        prov_supers: &[],
        skos: &[],
    },
    // -- provenance ---------------------------------------------------------
    Spec {
        local: "createdBy",
        category: Provenance,
        kind: Agent,
        functional: false,
        definition: "An agent primarily responsible for encoding the digital artifact or resource representation. Distinct from forming the content, which is indicated with pav:contributedBy or its subproperties.",
        pav_supers: &[],
        dct_supers: &["creator"],
        prov_supers: &["wasAttributedTo"],
        skos: &[(BroadMatch, "creator")],
    },
    Spec {
        local: "createdOn",
        category: Provenance,
        kind: Timestamp,
        functional: true,
        definition: "The date of creation of the digital artifact or resource representation. Normally used in a functional way, indicating the time of creation.",
        pav_supers: &[],
        dct_supers: &[],
        prov_supers: &[],
        skos: &[],
    },
    Spec {
        local: "createdWith",
        category: Provenance,
        kind: Agent,
        functional: false,
        definition: "The software or tool used by the creator (pav:createdBy) when making the digital resource, for instance a word processor or an annotation tool.",
        pav_supers: &[],
        dct_supers: &[],
        prov_supers: &["wasAttributedTo"],
        skos: &[],
    },
    Spec {
        local: "createdAt",
        category: Provenance,
        kind: Location,
        functional: false,
        definition: "The geo-location of the agents when creating the resource (pav:createdBy).",
        pav_supers: &[],
        dct_supers: &[],
        prov_supers: &[],
        skos: &[],
    },
    Spec {
        local: "retrievedFrom",
        category: Provenance,
        kind: Resource,
        functional: true,
        definition: "The URI where a resource has been retrieved from. Retrieval indicates this resource has the same representation as the original; if it was somewhat transformed, use pav:importedFrom instead. Normally used in a functional way.",
        pav_supers: &[],
        dct_supers: &[],
        prov_supers: &["wasDerivedFrom", "alternateOf"],
        skos: &[],
    },
    Spec {
        local: "retrievedBy",
        category: Provenance,
        kind: Agent,
        functional: false,
        definition: "An entity responsible for retrieving the data from an external source, usually a software entity which has done the retrieval without performing any transcription.",
        pav_supers: &[],
        dct_supers: &[],
        prov_supers: &["wasAttributedTo"],
        skos: &[],
    },
    Spec {
        local: "retrievedOn",
        category: Provenance,
        kind: Timestamp,
        functional: true,
        definition: "The date the source for this resource was retrieved. Normally used in a functional way.",
        pav_supers: &[],
        dct_supers: &[],
        prov_supers: &[],
        skos: &[],
    },
    Spec {
        local: "importedFrom",
        category: Provenance,
        kind: Resource,
        functional: false,
        definition: "The original source of imported information. Import means the content has been preserved but transcribed somehow, for instance to fit a different representation model by converting formats.",
        pav_supers: &[],
        dct_supers: &[],
        prov_supers: &["wasDerivedFrom", "alternateOf"],
        skos: &[(BroadMatch, "source"), (BroadMatch, "isFormatOf")],
    },
    Spec {
        local: "importedBy",
        category: Provenance,
        kind: Agent,
        functional: false,
        definition: "An agent responsible for importing data from a source given by pav:importedFrom; usually a software agent which has done the transcription from the original source.",
        pav_supers: &[],
        dct_supers: &[],
        prov_supers: &["wasAttributedTo"],
        skos: &[(BroadMatch, "creator")],
    },
    Spec {
        local: "importedOn",
        category: Provenance,
        kind: Timestamp,
        functional: true,
        definition: "The date the resource was imported from a source given by pav:importedFrom. Normally used in a functional way, indicating the first import date; later re-imports are indicated with pav:lastRefreshedOn.",
        pav_supers: &[],
        dct_supers: &[],
        prov_supers: &[],
        skos: &[],
    },
    Spec {
        local: "lastRefreshedOn",
        category: Provenance,
        kind: Timestamp,
        functional: true,
        definition: "The date of the last import of the resource, used if this version has been updated due to a re-import rather than the import creating a new resource related using pav:previousVersion.",
        pav_supers: &[],
        dct_supers: &[],
        prov_supers: &[],
        skos: &[],
    },
    Spec {
        local: "providedBy",
        category: Provenance,
        kind: Agent,
        functional: false,
        definition: "The original provider of the encoded information, which might not coincide with the current publisher of the resource.",
        pav_supers: &[],
        dct_supers: &[],
        prov_supers: &[],
        skos: &[],
    },
    Spec {
        local: "sourceAccessedAt",
        category: Provenance,
        kind: Resource,
        functional: false,
        definition: "A source which was accessed or consulted, but not retrieved, imported or derived from; useful when resources such as webpages are accessed but not cached or imported.",
        pav_supers: &[],
        dct_supers: &[],
        prov_supers: &["wasInfluencedBy"],
        skos: &[],
    },
    Spec {
        local: "sourceAccessedBy",
        category: Provenance,
        kind: Agent,
        functional: false,
        definition: "The agent who accessed the source given by pav:sourceAccessedAt.",
        pav_supers: &[],
        dct_supers: &[],
        prov_supers: &[],
        skos: &[],
    },
    Spec {
        local: "sourceAccessedOn",
        category: Provenance,
        kind: Timestamp,
        functional: true,
        definition: "The date when the original source given by pav:sourceAccessedAt was accessed to create the resource. Normally used in a functional way.",
        pav_supers: &[],
        dct_supers: &[],
        prov_supers: &[],
        skos: &[],
    },
    Spec {
        local: "sourceLastAccessedOn",
        category: Provenance,
        kind: Timestamp,
        functional: true,
        definition: "The date when the original source given by pav:sourceAccessedAt was last accessed and verified. Normally used in a functional way.",
        pav_supers: &[],
        dct_supers: &[],
        prov_supers: &[],
        skos: &[],
    },
    // -- versioning ---------------------------------------------------------
    Spec {
        local: "version",
        category: Versioning,
        kind: FreeText,
        functional: true,
        definition: "The version identifier of a resource, as a free text string; typical values are \"1.5\" or \"21\". Normally used in a functional way.",
        pav_supers: &[],
        dct_supers: &[],
        prov_supers: &[],
        skos: &[],
    },
    Spec {
        local: "previousVersion",
        category: Versioning,
        kind: Resource,
        functional: true,
        definition: "The previous version of a resource in a lineage. Normally used in a functional way. If the content has significantly changed so the two resources no longer share lineage, relate them with pav:derivedFrom instead.",
        pav_supers: &[],
        dct_supers: &[],
        prov_supers: &["wasRevisionOf"],
        skos: &[(NarrowMatch, "replaces"), (RelatedMatch, "isVersionOf")],
    },
    Spec {
        local: "derivedFrom",
        category: Versioning,
        kind: Resource,
        functional: false,
        definition: "Derived from a different resource. Derivation concerns itself with derived knowledge; content transcribed to fit a different model is indicated with pav:importedFrom instead.",
        pav_supers: &[],
        dct_supers: &[],
        prov_supers: &["wasDerivedFrom"],
        skos: &[(BroadMatch, "source"), (NarrowMatch, "isVersionOf")],
    },
    Spec {
        local: "lastUpdateOn",
        category: Versioning,
        kind: Timestamp,
        functional: true,
        definition: "The date of the last update of the resource; an update is a change which did not warrant making a new resource related using pav:previousVersion. Normally used in a functional way.",
        pav_supers: &[],
        dct_supers: &[],
        prov_supers: &[],
        skos: &[],
    },
];

/// Fixed subproperty edges inside DC Terms and PROV-O. They are standard in
/// those vocabularies and make the transitive closures over the PAV mapping
/// meaningful.
pub const EXTERNAL_EDGES: &[(&str, &str)] = &[
    ("http://purl.org/dc/terms/creator", "http://purl.org/dc/terms/contributor"),
    ("http://www.w3.org/ns/prov#wasDerivedFrom", "http://www.w3.org/ns/prov#wasInfluencedBy"),
    ("http://www.w3.org/ns/prov#wasAttributedTo", "http://www.w3.org/ns/prov#wasInfluencedBy"),
    ("http://www.w3.org/ns/prov#wasRevisionOf", "http://www.w3.org/ns/prov#wasDerivedFrom"),
];

/// The immutable registry of all PAV terms. Construct once, share freely.
#[derive(Debug, Clone)]
pub struct Registry {
    terms: BTreeMap<String, TermDescriptor>,
}

impl Default for Registry {
    fn default() -> Registry {
        Registry::new()
    }
}

impl Registry {
    pub fn new() -> Registry {
        let mut terms = BTreeMap::new();
        for spec in TERMS {
            let descriptor = TermDescriptor {
                iri: ns::pav(spec.local),
                category: spec.category,
                value_kind: spec.kind,
                functional_recommended: spec.functional,
                definition: spec.definition.to_string(),
                pav_superproperties: spec.pav_supers.iter().map(|l| ns::pav(l)).collect(),
                dct_superproperties: spec.dct_supers.iter().map(|l| ns::dct(l)).collect(),
                prov_superproperties: spec.prov_supers.iter().map(|l| ns::prov(l)).collect(),
                skos_mappings: spec
                    .skos
                    .iter()
                    .map(|(rel, local)| (*rel, ns::dct(local)))
                    .collect(),
            };
            terms.insert(descriptor.iri.clone(), descriptor);
        }
        Registry { terms }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// All descriptors in IRI order.
    pub fn terms(&self) -> impl Iterator<Item = &TermDescriptor> {
        self.terms.values()
    }

    pub fn contains(&self, iri: &str) -> bool {
        self.terms.contains_key(iri)
    }

    /// Looks a term up by IRI. Unknown IRIs produce an [`UnknownTerm`] with
    /// the nearest registered term by edit distance over local names.
    pub fn lookup(&self, iri: &str) -> Result<&TermDescriptor, UnknownTerm> {
        if let Some(d) = self.terms.get(iri) {
            return Ok(d);
        }
        Err(UnknownTerm {
            iri: iri.to_string(),
            suggestion: self.nearest_term(iri),
        })
    }

    /// The closest registered term by local-name edit distance.
    pub fn nearest_term(&self, iri: &str) -> Option<String> {
        let local = iri.rsplit(['/', '#']).next().unwrap_or(iri);
        self.terms
            .values()
            .map(|d| (levenshtein(local, d.local_name()), &d.iri))
            .min()
            .map(|(_, iri)| iri.clone())
    }

    /// Direct superproperty edges of any property IRI: the descriptor edges
    /// for PAV terms, the fixed external edges for DC Terms/PROV-O terms.
    pub fn direct_superproperties(&self, iri: &str) -> BTreeSet<String> {
        if let Some(d) = self.terms.get(iri) {
            return d.direct_superproperties();
        }
        EXTERNAL_EDGES
            .iter()
            .filter(|(sub, _)| *sub == iri)
            .map(|(_, sup)| sup.to_string())
            .collect()
    }

    /// Transitive closure over the PAV, DC Terms and PROV-O superproperty
    /// edges, including the fixed external edges.
    pub fn superproperty_closure(&self, iri: &str) -> Result<BTreeSet<String>, UnknownTerm> {
        self.lookup(iri)?;
        let mut closure = BTreeSet::new();
        let mut frontier = vec![iri.to_string()];
        while let Some(current) = frontier.pop() {
            for sup in self.direct_superproperties(&current) {
                if closure.insert(sup.clone()) {
                    frontier.push(sup);
                }
            }
        }
        Ok(closure)
    }

    /// The ontology graph: every term typed as an OWL property, its direct
    /// `rdfs:subPropertyOf` edges, its definition as `rdfs:comment`, plus the
    /// fixed external edges. Rebuilding a hierarchy snapshot from this graph
    /// reproduces the registry's hierarchy fields.
    pub fn export_ontology(&self) -> Dataset {
        let mut ds = Dataset::new();
        ds.merge_prefixes(&ns::well_known_prefixes());
        let rdf_type = Term::Iri(ns::RDF_TYPE.to_string());
        let sub = Term::Iri(ns::RDFS_SUB_PROPERTY_OF.to_string());
        let comment = Term::Iri(ns::RDFS_COMMENT.to_string());
        let label = Term::Iri(ns::RDFS_LABEL.to_string());
        for d in self.terms.values() {
            let term = Term::Iri(d.iri.clone());
            let property_class = match d.value_kind {
                ValueKind::Timestamp | ValueKind::FreeText => ns::OWL_DATATYPE_PROPERTY,
                _ => ns::OWL_OBJECT_PROPERTY,
            };
            ds.insert(
                Quad::triple(term.clone(), rdf_type.clone(), Term::Iri(property_class.into()))
                    .unwrap(),
            );
            ds.insert(
                Quad::triple(term.clone(), label.clone(), Term::string(d.local_name())).unwrap(),
            );
            ds.insert(
                Quad::triple(term.clone(), comment.clone(), Term::string(&d.definition)).unwrap(),
            );
            for sup in d.direct_superproperties() {
                ds.insert(
                    Quad::triple(term.clone(), sub.clone(), Term::Iri(sup)).unwrap(),
                );
            }
        }
        for (s, o) in EXTERNAL_EDGES {
            ds.insert(
                Quad::triple(
                    Term::Iri((*s).to_string()),
                    sub.clone(),
                    Term::Iri((*o).to_string()),
                )
                .unwrap(),
            );
        }
        ds
    }

    /// The SKOS alignment of PAV terms with DC Terms: exactly one triple per
    /// mapping carried by the descriptors.
    pub fn export_skos_mapping(&self) -> Dataset {
        let mut ds = Dataset::new();
        ds.merge_prefixes(&ns::well_known_prefixes());
        for d in self.terms.values() {
            for (relation, target) in &d.skos_mappings {
                ds.insert(
                    Quad::triple(
                        Term::Iri(d.iri.clone()),
                        Term::Iri(relation.iri()),
                        Term::Iri(target.clone()),
                    )
                    .unwrap(),
                );
            }
        }
        ds
    }

    /// Hierarchy fields and definitions, for comparison against a snapshot
    /// rebuilt from an exported ontology graph.
    pub fn hierarchy_snapshot(&self) -> HierarchySnapshot {
        HierarchySnapshot {
            terms: self
                .terms
                .values()
                .map(|d| {
                    (
                        d.iri.clone(),
                        TermHierarchy {
                            definition: d.definition.clone(),
                            pav_superproperties: d.pav_superproperties.clone(),
                            dct_superproperties: d.dct_superproperties.clone(),
                            prov_superproperties: d.prov_superproperties.clone(),
                        },
                    )
                })
                .collect(),
        }
    }
}

/// The hierarchy-bearing fields of the registry: definitions plus the three
/// superproperty sets per term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HierarchySnapshot {
    pub terms: BTreeMap<String, TermHierarchy>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermHierarchy {
    pub definition: String,
    pub pav_superproperties: BTreeSet<String>,
    pub dct_superproperties: BTreeSet<String>,
    pub prov_superproperties: BTreeSet<String>,
}

/// Rebuilds a hierarchy snapshot from an ontology graph as produced by
/// [`Registry::export_ontology`].
pub fn snapshot_from_graph(graph: &Dataset) -> HierarchySnapshot {
    let sub = Term::Iri(ns::RDFS_SUB_PROPERTY_OF.to_string());
    let comment = Term::Iri(ns::RDFS_COMMENT.to_string());
    let mut terms: BTreeMap<String, TermHierarchy> = BTreeMap::new();
    let subjects: BTreeSet<String> = graph
        .iter()
        .filter_map(|q| q.subject().as_iri())
        .filter(|iri| iri.starts_with(ns::PAV))
        .map(str::to_string)
        .collect();
    for iri in subjects {
        let subject = Term::Iri(iri.clone());
        let definition = graph
            .matching(Some(&subject), Some(&comment), None, GraphSelector::Any)
            .filter_map(|q| q.object().as_literal())
            .map(|l| l.lexical.clone())
            .next()
            .unwrap_or_default();
        let mut entry = TermHierarchy {
            definition,
            pav_superproperties: BTreeSet::new(),
            dct_superproperties: BTreeSet::new(),
            prov_superproperties: BTreeSet::new(),
        };
        for q in graph.matching(Some(&subject), Some(&sub), None, GraphSelector::Any) {
            if let Some(target) = q.object().as_iri() {
                if target.starts_with(ns::PAV) {
                    entry.pav_superproperties.insert(target.to_string());
                } else if target.starts_with(ns::DCT) {
                    entry.dct_superproperties.insert(target.to_string());
                } else if target.starts_with(ns::PROV) {
                    entry.prov_superproperties.insert(target.to_string());
                }
            }
        }
        terms.insert(iri, entry);
    }
    HierarchySnapshot { terms }
}

/// Edit distance with class-aware substitution: swapping a vowel for a
/// consonant costs double. This keeps time-suffix slips like `importedAt`
/// closer to `importedOn` than to `importedBy`.
fn levenshtein(a: &str, b: &str) -> usize {
    fn substitution_cost(a: char, b: char) -> usize {
        if a == b {
            return 0;
        }
        let vowel = |c: char| "aeiouAEIOU".contains(c);
        if vowel(a) == vowel(b) {
            1
        } else {
            2
        }
    }
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    let mut current = vec![0; b.len() + 1];
    for (i, ca) in a.iter().enumerate() {
        current[0] = i + 1;
        for (j, cb) in b.iter().enumerate() {
            let substitution = prev[j] + substitution_cost(*ca, *cb);
            current[j + 1] = substitution.min(prev[j + 1] + 1).min(current[j] + 1);
        }
        std::mem::swap(&mut prev, &mut current);
    }
    prev[b.len()]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_has_26_terms_in_three_groups() {
        let registry = Registry::new();
        assert_eq!(registry.len(), 26);
        let count = |c: Category| registry.terms().filter(|d| d.category == c).count();
        assert_eq!(count(Category::Authoring), 6);
        assert_eq!(count(Category::Provenance), 16);
        assert_eq!(count(Category::Versioning), 4);
    }

    #[test]
    fn inventory_is_exact() {
        let registry = Registry::new();
        let expected: BTreeSet<String> = [
            "authoredBy", "authoredOn", "curatedBy", "curatedOn", "contributedBy",
            "contributedOn", "createdBy", "createdOn", "createdWith", "createdAt",
            "retrievedFrom", "retrievedBy", "retrievedOn", "importedFrom", "importedBy",
            "importedOn", "lastRefreshedOn", "providedBy", "sourceAccessedAt",
            "sourceAccessedBy", "sourceAccessedOn", "sourceLastAccessedOn", "version",
            "previousVersion", "derivedFrom", "lastUpdateOn",
        ]
        .iter()
        .map(|l| ns::pav(l))
        .collect();
        let actual: BTreeSet<String> = registry.terms().map(|d| d.iri.clone()).collect();
        assert_eq!(actual, expected);
    }

    #[test]
    fn lookup_retrieved_from() {
        let registry = Registry::new();
        let d = registry.lookup(&ns::pav("retrievedFrom")).unwrap();
        assert!(d.functional_recommended);
        let expected: BTreeSet<String> =
            [ns::prov("wasDerivedFrom"), ns::prov("alternateOf")].into_iter().collect();
        assert_eq!(d.prov_superproperties, expected);
    }

    #[test]
    fn lookup_unknown_term_suggests_nearest() {
        let registry = Registry::new();
        let err = registry.lookup(&ns::pav("importedAt")).unwrap_err();
        assert_eq!(err.suggestion.as_deref(), Some(ns::pav("importedOn").as_str()));
    }

    #[test]
    fn version_is_free_text_without_skos() {
        let registry = Registry::new();
        let d = registry.lookup(&ns::pav("version")).unwrap();
        assert_eq!(d.value_kind, ValueKind::FreeText);
        assert!(d.skos_mappings.is_empty());
    }

    #[test]
    fn closure_of_authored_by() {
        let registry = Registry::new();
        let closure = registry.superproperty_closure(&ns::pav("authoredBy")).unwrap();
        let expected: BTreeSet<String> = [
            ns::pav("contributedBy"),
            ns::dct("creator"),
            ns::dct("contributor"),
            ns::prov("wasAttributedTo"),
            ns::prov("wasInfluencedBy"),
        ]
        .into_iter()
        .collect();
        assert_eq!(closure, expected);
    }

    #[test]
    fn closure_of_previous_version() {
        let registry = Registry::new();
        let closure = registry
            .superproperty_closure(&ns::pav("previousVersion"))
            .unwrap();
        for sup in ["wasRevisionOf", "wasDerivedFrom", "wasInfluencedBy"] {
            assert!(closure.contains(&ns::prov(sup)), "missing {sup}");
        }
        assert_eq!(closure.len(), 3);
    }

    #[test]
    fn created_at_has_no_superproperties() {
        let registry = Registry::new();
        assert!(registry
            .superproperty_closure(&ns::pav("createdAt"))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn closure_is_monotone_over_direct_edges() {
        let registry = Registry::new();
        for d in registry.terms() {
            let closure = registry.superproperty_closure(&d.iri).unwrap();
            for direct in d.direct_superproperties() {
                assert!(closure.contains(&direct), "{} misses {direct}", d.iri);
            }
        }
    }

    #[test]
    fn hierarchy_is_acyclic() {
        let registry = Registry::new();
        for d in registry.terms() {
            let closure = registry.superproperty_closure(&d.iri).unwrap();
            assert!(!closure.contains(&d.iri), "{} reaches itself", d.iri);
        }
    }

    #[test]
    fn agent_terms_map_to_was_attributed_to_only() {
        let registry = Registry::new();
        let attributed: BTreeSet<String> = [ns::prov("wasAttributedTo")].into_iter().collect();
        for local in [
            "createdBy", "createdWith", "contributedBy", "authoredBy", "curatedBy",
            "importedBy", "retrievedBy",
        ] {
            let d = registry.lookup(&ns::pav(local)).unwrap();
            assert_eq!(d.prov_superproperties, attributed, "term {local}");
        }
        // the two unmapped agent-or-source access terms stay unmapped
        for local in ["sourceAccessedBy", "sourceAccessedOn", "providedBy"] {
            let d = registry.lookup(&ns::pav(local)).unwrap();
            assert!(d.prov_superproperties.is_empty(), "term {local}");
        }
    }

    #[test]
    fn ontology_export_contains_declared_edges() {
        let registry = Registry::new();
        let graph = registry.export_ontology();
        let has = |s: String, o: String| {
            graph.contains(
                &Quad::triple(
                    Term::Iri(s),
                    Term::Iri(ns::RDFS_SUB_PROPERTY_OF.to_string()),
                    Term::Iri(o),
                )
                .unwrap(),
            )
        };
        assert!(has(ns::pav("contributedBy"), ns::dct("contributor")));
        assert!(has(ns::pav("curatedOn"), ns::pav("contributedOn")));
        let pav_subjects: BTreeSet<&str> = graph
            .iter()
            .filter_map(|q| q.subject().as_iri())
            .filter(|i| i.starts_with(ns::PAV))
            .collect();
        assert_eq!(pav_subjects.len(), 26);
    }

    #[test]
    fn ontology_roundtrip_reproduces_hierarchy() {
        let registry = Registry::new();
        let graph = registry.export_ontology();
        let text = crate::turtle::serialize_turtle(&graph, graph.prefixes());
        let reparsed = crate::turtle::parse_turtle(&text, None).unwrap().dataset;
        assert_eq!(snapshot_from_graph(&reparsed), registry.hierarchy_snapshot());
    }

    #[test]
    fn skos_mapping_has_ten_triples() {
        let registry = Registry::new();
        let graph = registry.export_skos_mapping();
        assert_eq!(graph.len(), 10);
        let has = |s: String, rel: SkosRelation, o: String| {
            graph.contains(
                &Quad::triple(Term::Iri(s), Term::Iri(rel.iri()), Term::Iri(o)).unwrap(),
            )
        };
        assert!(has(ns::pav("previousVersion"), SkosRelation::NarrowMatch, ns::dct("replaces")));
        assert!(has(ns::pav("contributedBy"), SkosRelation::CloseMatch, ns::dct("contributor")));
    }

    #[test]
    fn levenshtein_basics() {
        assert_eq!(levenshtein("importedAt", "importedOn"), 2);
        assert!(levenshtein("importedAt", "importedBy") > 2);
        assert_eq!(levenshtein("", "abc"), 3);
        assert_eq!(levenshtein("same", "same"), 0);
    }
}
