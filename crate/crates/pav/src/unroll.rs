//! Expands flat PAV statements into explicit PROV-O activity chains.
//!
//! A cluster like `importedFrom` / `importedBy` / `importedOn` on one entity
//! becomes one activity that `prov:used` the source, was
//! `prov:wasAssociatedWith` the agent and `prov:endedAtTime` the timestamp;
//! the entity gains `prov:wasGeneratedBy` and `prov:wasDerivedFrom` edges
//! where the family warrants them. One activity is minted per (entity,
//! family) pair — an entity with several sources or agents gets a single
//! conflating activity, which [`ambiguity_report`] makes visible.
//!
//! The import family mirrors the retrieval and source-access families, which
//! share the same from/by/on symmetry; source access emits neither
//! generation nor derivation, since consulting a source does not produce the
//! resource from it. Incomplete clusters (say a source without a date) still
//! yield an activity with the available arcs; partial provenance beats none.
//!
//! Authoring and curation are deliberately not unrolled: detailed attribution
//! belongs to `prov:qualifiedAttribution` patterns, which pass through
//! untouched.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use sha2::{Digest, Sha256};

use crate::lint::{Finding, Severity};
use crate::model::{Dataset, Quad, Term};
use crate::ns;

/// The unrollable statement families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Family {
    Import,
    Retrieval,
    SourceAccess,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Import => "import",
            Family::Retrieval => "retrieval",
            Family::SourceAccess => "source-access",
        }
    }

    pub fn all() -> [Family; 3] {
        [Family::Import, Family::Retrieval, Family::SourceAccess]
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Family, String> {
        match s {
            "import" => Ok(Family::Import),
            "retrieval" => Ok(Family::Retrieval),
            "source-access" | "source_access" => Ok(Family::SourceAccess),
            other => Err(format!(
                "unknown family {other:?} (expected import, retrieval or source-access)"
            )),
        }
    }
}

/// How one statement family unrolls into an activity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnrollTemplate {
    pub family: Family,
    pub from_property: String,
    pub by_property: String,
    pub on_property: String,
    pub activity_type: String,
    pub emit_derivation: bool,
    pub emit_generation: bool,
}

/// The built-in templates for all three families.
pub fn default_templates() -> Vec<UnrollTemplate> {
    vec![
        UnrollTemplate {
            family: Family::Import,
            from_property: ns::pav("importedFrom"),
            by_property: ns::pav("importedBy"),
            on_property: ns::pav("importedOn"),
            activity_type: format!("{}ImportActivity", ns::UNROLL),
            emit_derivation: true,
            emit_generation: true,
        },
        UnrollTemplate {
            family: Family::Retrieval,
            from_property: ns::pav("retrievedFrom"),
            by_property: ns::pav("retrievedBy"),
            on_property: ns::pav("retrievedOn"),
            activity_type: format!("{}RetrievalActivity", ns::UNROLL),
            emit_derivation: true,
            emit_generation: true,
        },
        UnrollTemplate {
            family: Family::SourceAccess,
            from_property: ns::pav("sourceAccessedAt"),
            by_property: ns::pav("sourceAccessedBy"),
            on_property: ns::pav("sourceAccessedOn"),
            activity_type: format!("{}SourceAccessActivity", ns::UNROLL),
            emit_derivation: false,
            emit_generation: false,
        },
    ]
}

/// Templates for a selection of families.
pub fn templates_for(families: &[Family]) -> Vec<UnrollTemplate> {
    default_templates()
        .into_iter()
        .filter(|t| families.contains(&t.family))
        .collect()
}

fn digest16(term: &Term) -> String {
    let mut hasher = Sha256::new();
    hasher.update(term.to_string().as_bytes());
    let digest = hasher.finalize();
    digest[..8].iter().map(|b| format!("{b:02x}")).collect()
}

/// The deterministic skolem activity for one (entity, family) pair.
pub fn unroll_activity(entity: &Term, family: Family) -> Term {
    Term::Iri(format!(
        "{}unroll:{}:{}",
        ns::SKOLEM,
        family.name(),
        digest16(entity)
    ))
}

struct Cluster {
    entity: Term,
    sources: Vec<Term>,
    agents: Vec<Term>,
    timestamps: Vec<Term>,
}

fn clusters(graph: &Dataset, template: &UnrollTemplate) -> Vec<Cluster> {
    let from = Term::Iri(template.from_property.clone());
    let by = Term::Iri(template.by_property.clone());
    let on = Term::Iri(template.on_property.clone());
    let mut entities: BTreeSet<Term> = BTreeSet::new();
    for p in [&from, &by, &on] {
        for quad in graph.matching(None, Some(p), None, crate::model::GraphSelector::Any) {
            entities.insert(quad.subject().clone());
        }
    }
    entities
        .into_iter()
        .map(|entity| Cluster {
            sources: graph.objects(&entity, &from).into_iter().cloned().collect(),
            agents: graph.objects(&entity, &by).into_iter().cloned().collect(),
            timestamps: graph.objects(&entity, &on).into_iter().cloned().collect(),
            entity,
        })
        .collect()
}

/// Unrolls every cluster of the given templates over the union graph.
/// Original triples are retained; the additions are pure PROV-O.
pub fn unroll(dataset: &Dataset, templates: &[UnrollTemplate]) -> Dataset {
    let mut graph = dataset.union_default();
    graph.merge_prefixes(&ns::well_known_prefixes());
    let rdf_type = Term::Iri(ns::RDF_TYPE.to_string());
    let used = Term::Iri(ns::PROV_USED.to_string());
    let associated = Term::Iri(ns::PROV_WAS_ASSOCIATED_WITH.to_string());
    let ended = Term::Iri(ns::PROV_ENDED_AT_TIME.to_string());
    let generated = Term::Iri(ns::PROV_WAS_GENERATED_BY.to_string());
    let derived = Term::Iri(ns::PROV_WAS_DERIVED_FROM.to_string());
    let snapshot = graph.clone();
    for template in templates {
        for cluster in clusters(&snapshot, template) {
            let activity = unroll_activity(&cluster.entity, template.family);
            let push = |graph: &mut Dataset, s: Term, p: Term, o: Term| {
                graph.insert(Quad::triple(s, p, o).expect("unrolled triple keeps positions"));
            };
            push(
                &mut graph,
                activity.clone(),
                rdf_type.clone(),
                Term::Iri(template.activity_type.clone()),
            );
            for source in &cluster.sources {
                push(&mut graph, activity.clone(), used.clone(), source.clone());
                if template.emit_derivation {
                    push(
                        &mut graph,
                        cluster.entity.clone(),
                        derived.clone(),
                        source.clone(),
                    );
                }
            }
            for agent in &cluster.agents {
                push(&mut graph, activity.clone(), associated.clone(), agent.clone());
            }
            for timestamp in &cluster.timestamps {
                push(&mut graph, activity.clone(), ended.clone(), timestamp.clone());
            }
            if template.emit_generation {
                push(&mut graph, cluster.entity.clone(), generated.clone(), activity);
            }
        }
    }
    graph
}

/// One finding (rule U1) per entity-family whose single unrolled activity
/// conflates several sources with several agents or timestamps; with one
/// source per statement the activity extent is unambiguous.
pub fn ambiguity_report(dataset: &Dataset, templates: &[UnrollTemplate]) -> Vec<Finding> {
    let graph = dataset.union_default();
    let mut findings = Vec::new();
    for template in templates {
        for cluster in clusters(&graph, template) {
            if cluster.sources.len() > 1
                && (cluster.agents.len() > 1 || cluster.timestamps.len() > 1)
            {
                findings.push(Finding {
                    rule: "U1".to_string(),
                    severity: Severity::Warning,
                    subject: cluster.entity.clone(),
                    predicate: Some(Term::Iri(template.from_property.clone())),
                    message: format!(
                        "{} {} sources with {} agents and {} timestamps share one unrolled activity; which agent handled which source when is not preserved",
                        template.family,
                        cluster.sources.len(),
                        cluster.agents.len(),
                        cluster.timestamps.len()
                    ),
                });
            }
        }
    }
    findings.sort();
    findings
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::GraphSelector;

    fn iri(s: &str) -> Term {
        Term::iri(s).unwrap()
    }

    fn triple(s: &Term, p: String, o: Term) -> Quad {
        Quad::triple(s.clone(), Term::Iri(p), o).unwrap()
    }

    fn import_cluster() -> (Dataset, Term, Term, Term, Term) {
        let entity = Term::blank("rec");
        let source = iri("http://www.ncbi.nlm.nih.gov/");
        let agent = Term::blank("software");
        let when = Term::typed_literal("2009-02-26T19:49:12-0500", ns::XSD_DATE_TIME).unwrap();
        let mut ds = Dataset::new();
        ds.insert(triple(&entity, ns::pav("importedFrom"), source.clone()));
        ds.insert(triple(&entity, ns::pav("importedBy"), agent.clone()));
        ds.insert(triple(&entity, ns::pav("importedOn"), when.clone()));
        (ds, entity, source, agent, when)
    }

    #[test]
    fn full_import_cluster_unrolls_to_one_activity() {
        let (ds, entity, source, agent, when) = import_cluster();
        let out = unroll(&ds, &default_templates());
        let activity = unroll_activity(&entity, Family::Import);
        let expect = |s: &Term, p: String, o: &Term| {
            assert!(
                out.contains(&triple(s, p.clone(), o.clone())),
                "missing {s} {p} {o}"
            );
        };
        expect(&activity, ns::RDF_TYPE.to_string(), &Term::Iri(format!("{}ImportActivity", ns::UNROLL)));
        expect(&activity, ns::PROV_USED.to_string(), &source);
        expect(&activity, ns::PROV_WAS_ASSOCIATED_WITH.to_string(), &agent);
        expect(&activity, ns::PROV_ENDED_AT_TIME.to_string(), &when);
        expect(&entity, ns::PROV_WAS_GENERATED_BY.to_string(), &activity);
        expect(&entity, ns::PROV_WAS_DERIVED_FROM.to_string(), &source);
        // input retained + exactly the six new arcs
        assert_eq!(out.len(), ds.len() + 6);
    }

    #[test]
    fn source_access_emits_neither_generation_nor_derivation() {
        let entity = iri("http://e/post");
        let page = iri("http://www.weather.example/tomorrow");
        let mut ds = Dataset::new();
        ds.insert(triple(&entity, ns::pav("sourceAccessedAt"), page.clone()));
        let out = unroll(&ds, &default_templates());
        let activity = unroll_activity(&entity, Family::SourceAccess);
        assert!(out.contains(&triple(&activity, ns::PROV_USED.to_string(), page)));
        let generated = Term::Iri(ns::PROV_WAS_GENERATED_BY.to_string());
        let derived = Term::Iri(ns::PROV_WAS_DERIVED_FROM.to_string());
        assert_eq!(out.matching(None, Some(&generated), None, GraphSelector::Any).count(), 0);
        assert_eq!(out.matching(None, Some(&derived), None, GraphSelector::Any).count(), 0);
        let associated = Term::Iri(ns::PROV_WAS_ASSOCIATED_WITH.to_string());
        assert_eq!(out.matching(None, Some(&associated), None, GraphSelector::Any).count(), 0);
        let ended = Term::Iri(ns::PROV_ENDED_AT_TIME.to_string());
        assert_eq!(out.matching(None, Some(&ended), None, GraphSelector::Any).count(), 0);
    }

    #[test]
    fn graph_without_pav_statements_is_unchanged() {
        let mut ds = Dataset::new();
        ds.insert(triple(
            &iri("http://e/s"),
            "http://e/p".to_string(),
            iri("http://e/o"),
        ));
        let out = unroll(&ds, &default_templates());
        assert_eq!(out.len(), ds.len());
    }

    #[test]
    fn unroll_is_deterministic_and_idempotent_in_size() {
        let (ds, ..) = import_cluster();
        let once = unroll(&ds, &default_templates());
        let again = unroll(&ds, &default_templates());
        assert_eq!(once, again);
        // unrolling the output adds nothing: same clusters, same skolems
        let twice = unroll(&once, &default_templates());
        assert_eq!(once, twice);
    }

    #[test]
    fn family_selection_restricts_templates() {
        let (ds, entity, ..) = import_cluster();
        let out = unroll(&ds, &templates_for(&[Family::Retrieval]));
        assert_eq!(out.len(), ds.len());
        let out = unroll(&ds, &templates_for(&[Family::Import]));
        assert!(out.contains(&triple(
            &entity,
            ns::PROV_WAS_GENERATED_BY.to_string(),
            unroll_activity(&entity, Family::Import),
        )));
    }

    #[test]
    fn ambiguity_needs_multiple_sources_and_agents() {
        let entity = iri("http://e/r");
        let mut ds = Dataset::new();
        ds.insert(triple(&entity, ns::pav("importedFrom"), iri("http://e/src1")));
        ds.insert(triple(&entity, ns::pav("importedFrom"), iri("http://e/src2")));
        ds.insert(triple(&entity, ns::pav("importedBy"), iri("http://e/a1")));
        let none = ambiguity_report(&ds, &default_templates());
        assert!(none.is_empty(), "single agent cannot be conflated");

        ds.insert(triple(&entity, ns::pav("importedBy"), iri("http://e/a2")));
        let findings = ambiguity_report(&ds, &default_templates());
        assert_eq!(findings.len(), 1);
        assert_eq!(findings[0].rule, "U1");
        assert_eq!(findings[0].subject, entity);
    }

    #[test]
    fn singleton_cluster_reports_no_ambiguity() {
        let (ds, ..) = import_cluster();
        assert!(ambiguity_report(&ds, &default_templates()).is_empty());
    }

    #[test]
    fn family_names_parse() {
        assert_eq!("import".parse::<Family>().unwrap(), Family::Import);
        assert_eq!("source-access".parse::<Family>().unwrap(), Family::SourceAccess);
        assert!("compile".parse::<Family>().is_err());
    }
}
