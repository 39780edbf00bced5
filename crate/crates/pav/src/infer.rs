//! Forward-chaining materialization of implied statements.
//!
//! Two rule families run to a fixpoint:
//!
//! 1. **Subproperty closure**: for every triple whose predicate is a
//!    registered PAV term, every superproperty reachable through the
//!    registry's hierarchy yields a new triple with the same subject and
//!    object. Profiles select which target vocabularies (PAV, DC Terms,
//!    PROV-O) are materialized.
//! 2. **Attribution inference**: every `prov:wasAttributedTo` statement
//!    implies an activity that generated the entity and was associated with
//!    the agent. The activity is a deterministic skolem IRI derived from the
//!    (entity, agent) pair, so re-running inference adds nothing and outputs
//!    stay diffable.
//!
//! Every materialized triple carries a justification: the rule, the premise
//! it fired on, and the hierarchy edges walked. PAV predicates are leaves of
//! the hierarchy, so no rule ever produces a triple with a `pav:` predicate;
//! the input distinctions (say authoredBy vs createdBy) always survive.

use std::collections::BTreeMap;

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::model::{Dataset, Quad, Term};
use crate::ns;
use crate::vocab::Registry;

/// Which rule families an inference run materializes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InferenceProfile {
    pub subproperty_pav: bool,
    pub subproperty_dct: bool,
    pub subproperty_prov: bool,
    pub attribution_inference: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProfileError {
    #[error("attribution inference requires the PROV subproperty family (it consumes prov:wasAttributedTo triples)")]
    AttributionNeedsProv,
    #[error("unknown profile {0:?} (expected all, prov, dcterms or pav)")]
    UnknownName(String),
}

impl InferenceProfile {
    /// All four rule families.
    pub fn all() -> InferenceProfile {
        InferenceProfile {
            subproperty_pav: true,
            subproperty_dct: true,
            subproperty_prov: true,
            attribution_inference: true,
        }
    }

    /// PROV materialization: the PROV subproperty family plus attribution
    /// inference.
    pub fn prov() -> InferenceProfile {
        InferenceProfile {
            subproperty_pav: false,
            subproperty_dct: false,
            subproperty_prov: true,
            attribution_inference: true,
        }
    }

    /// DC Terms subproperty family only.
    pub fn dcterms() -> InferenceProfile {
        InferenceProfile {
            subproperty_pav: false,
            subproperty_dct: true,
            subproperty_prov: false,
            attribution_inference: false,
        }
    }

    /// PAV-internal subproperty family only.
    pub fn pav() -> InferenceProfile {
        InferenceProfile {
            subproperty_pav: true,
            subproperty_dct: false,
            subproperty_prov: false,
            attribution_inference: false,
        }
    }

    pub fn from_name(name: &str) -> Result<InferenceProfile, ProfileError> {
        match name {
            "all" => Ok(InferenceProfile::all()),
            "prov" => Ok(InferenceProfile::prov()),
            "dcterms" => Ok(InferenceProfile::dcterms()),
            "pav" => Ok(InferenceProfile::pav()),
            other => Err(ProfileError::UnknownName(other.to_string())),
        }
    }

    pub fn validate(&self) -> Result<(), ProfileError> {
        if self.attribution_inference && !self.subproperty_prov {
            return Err(ProfileError::AttributionNeedsProv);
        }
        Ok(())
    }

    fn family_enabled(&self, property_iri: &str) -> bool {
        if property_iri.starts_with(ns::PAV) {
            self.subproperty_pav
        } else if property_iri.starts_with(ns::DCT) {
            self.subproperty_dct
        } else if property_iri.starts_with(ns::PROV) {
            self.subproperty_prov
        } else {
            false
        }
    }
}

/// The rule that produced an inferred triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuleKind {
    SubpropertyPav,
    SubpropertyDct,
    SubpropertyProv,
    AttributionInference,
}

impl RuleKind {
    pub fn id(self) -> &'static str {
        match self {
            RuleKind::SubpropertyPav => "subproperty-pav",
            RuleKind::SubpropertyDct => "subproperty-dct",
            RuleKind::SubpropertyProv => "subproperty-prov",
            RuleKind::AttributionInference => "attribution-inference",
        }
    }

    fn for_target(property_iri: &str) -> RuleKind {
        if property_iri.starts_with(ns::PAV) {
            RuleKind::SubpropertyPav
        } else if property_iri.starts_with(ns::DCT) {
            RuleKind::SubpropertyDct
        } else {
            RuleKind::SubpropertyProv
        }
    }
}

/// One hierarchy edge walked by the subproperty rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubpropertyEdge {
    pub from: String,
    pub to: String,
}

/// Why a triple was materialized: the rule, the premise triple it fired on,
/// and (for subproperty steps) the registry edges walked since that premise.
/// Premises always exist in the input or in an earlier inference round.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Justification {
    pub rule: RuleKind,
    pub premise: Quad,
    pub via: Vec<SubpropertyEdge>,
}

/// A materialized triple plus its justification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InferredTriple {
    pub triple: Quad,
    pub justification: Justification,
}

/// Output of [`infer`]: the closure graph (input retained) and the
/// materialized triples in deterministic order.
#[derive(Debug, Clone)]
pub struct InferenceResult {
    pub graph: Dataset,
    pub inferred: Vec<InferredTriple>,
    input: Dataset,
}

impl InferenceResult {
    /// The triples added by inference, i.e. the closure minus the input.
    pub fn inferred_only(&self) -> Dataset {
        let mut out: Dataset = self
            .graph
            .iter()
            .filter(|q| !self.input.contains(q))
            .cloned()
            .collect();
        out.merge_prefixes(self.graph.prefixes());
        out
    }

    pub fn input(&self) -> &Dataset {
        &self.input
    }
}

fn digest16(term: &Term) -> String {
    let mut hasher = Sha256::new();
    hasher.update(term.to_string().as_bytes());
    let digest = hasher.finalize();
    digest[..8].iter().map(|b| format!("{b:02x}")).collect()
}

/// The deterministic skolem activity standing in for the existential
/// "some activity generated the entity and involved the agent".
pub fn attribution_activity(entity: &Term, agent: &Term) -> Term {
    Term::Iri(format!(
        "{}attribution:{}:{}",
        ns::SKOLEM,
        digest16(entity),
        digest16(agent)
    ))
}

/// Computes the full inference closure of the dataset's union graph.
///
/// The result is the least fixpoint of the enabled rules; running `infer` on
/// its own output adds nothing. Inferences land in the default graph.
pub fn infer(
    dataset: &Dataset,
    registry: &Registry,
    profile: InferenceProfile,
) -> Result<InferenceResult, ProfileError> {
    profile.validate()?;
    let input = dataset.union_default();
    let mut graph = input.clone();
    graph.merge_prefixes(&ns::well_known_prefixes());
    let mut justifications: BTreeMap<Quad, Justification> = BTreeMap::new();

    loop {
        let mut changed = false;

        // subproperty closure over registered PAV predicates
        let snapshot: Vec<Quad> = graph.iter().cloned().collect();
        for quad in &snapshot {
            let Some(predicate_iri) = quad.predicate().as_iri() else {
                continue;
            };
            if !registry.contains(predicate_iri) {
                continue;
            }
            changed |= derive_superproperties(
                registry,
                profile,
                quad,
                predicate_iri,
                &mut graph,
                &mut justifications,
            );
        }

        // attribution inference over prov:wasAttributedTo
        if profile.attribution_inference {
            let attributed = Term::Iri(ns::PROV_WAS_ATTRIBUTED_TO.to_string());
            let generated_by = Term::Iri(ns::PROV_WAS_GENERATED_BY.to_string());
            let associated = Term::Iri(ns::PROV_WAS_ASSOCIATED_WITH.to_string());
            let premises: Vec<Quad> = graph
                .matching(None, Some(&attributed), None, crate::model::GraphSelector::Default)
                .cloned()
                .collect();
            for premise in premises {
                let entity = premise.subject().clone();
                let agent = premise.object().clone();
                let activity = attribution_activity(&entity, &agent);
                let products = [
                    Quad::triple(entity, generated_by.clone(), activity.clone())
                        .expect("skolem generation triple"),
                    Quad::triple(activity.clone(), associated.clone(), agent)
                        .expect("skolem association triple"),
                ];
                for product in products {
                    if graph.insert(product.clone()) {
                        changed = true;
                        justifications.entry(product).or_insert_with(|| Justification {
                            rule: RuleKind::AttributionInference,
                            premise: premise.clone(),
                            via: Vec::new(),
                        });
                    }
                }
            }
        }

        if !changed {
            break;
        }
    }

    let inferred = justifications
        .into_iter()
        .map(|(triple, justification)| InferredTriple {
            triple,
            justification,
        })
        .collect();
    Ok(InferenceResult {
        graph,
        inferred,
        input,
    })
}

/// Walks the hierarchy upwards from one triple, materializing targets in
/// enabled families. When a family is disabled, the walk continues through
/// the skipped property and the justification keeps the whole edge path back
/// to the nearest materialized premise.
fn derive_superproperties(
    registry: &Registry,
    profile: InferenceProfile,
    origin: &Quad,
    origin_property: &str,
    graph: &mut Dataset,
    justifications: &mut BTreeMap<Quad, Justification>,
) -> bool {
    struct Pending {
        property: String,
        premise: Quad,
        path: Vec<SubpropertyEdge>,
    }
    let mut changed = false;
    let mut stack = vec![Pending {
        property: origin_property.to_string(),
        premise: origin.clone(),
        path: Vec::new(),
    }];
    let mut visited = std::collections::BTreeSet::new();
    while let Some(pending) = stack.pop() {
        for target in registry.direct_superproperties(&pending.property) {
            if !visited.insert(target.clone()) {
                continue;
            }
            let mut path = pending.path.clone();
            path.push(SubpropertyEdge {
                from: pending.property.clone(),
                to: target.clone(),
            });
            if profile.family_enabled(&target) {
                let triple = Quad::triple(
                    origin.subject().clone(),
                    Term::Iri(target.clone()),
                    origin.object().clone(),
                )
                .expect("superproperty triple keeps positions");
                if graph.insert(triple.clone()) {
                    changed = true;
                    justifications.entry(triple.clone()).or_insert_with(|| Justification {
                        rule: RuleKind::for_target(&target),
                        premise: pending.premise.clone(),
                        via: path.clone(),
                    });
                }
                stack.push(Pending {
                    property: target,
                    premise: triple,
                    path: Vec::new(),
                });
            } else {
                stack.push(Pending {
                    property: target,
                    premise: pending.premise.clone(),
                    path,
                });
            }
        }
    }
    changed
}

/// Materializes only the subproperty families of the profile over a
/// default-graph-only dataset; attribution inference is left off.
pub fn subproperty_closure(
    graph: &Dataset,
    registry: &Registry,
    profile: InferenceProfile,
) -> Dataset {
    let subproperties_only = InferenceProfile {
        attribution_inference: false,
        ..profile
    };
    infer(graph, registry, subproperties_only)
        .expect("subproperty-only profile is always valid")
        .graph
}

/// Applies the attribution-inference rule once over an already-closed graph:
/// each `(entity, prov:wasAttributedTo, agent)` gains a skolem activity with
/// generation and association triples.
pub fn attribution_inference(graph: &Dataset) -> Dataset {
    let mut out = graph.union_default();
    let attributed = Term::Iri(ns::PROV_WAS_ATTRIBUTED_TO.to_string());
    let generated_by = Term::Iri(ns::PROV_WAS_GENERATED_BY.to_string());
    let associated = Term::Iri(ns::PROV_WAS_ASSOCIATED_WITH.to_string());
    let premises: Vec<Quad> = out
        .matching(None, Some(&attributed), None, crate::model::GraphSelector::Default)
        .cloned()
        .collect();
    for premise in premises {
        let activity = attribution_activity(premise.subject(), premise.object());
        out.insert(
            Quad::triple(premise.subject().clone(), generated_by.clone(), activity.clone())
                .expect("skolem generation triple"),
        );
        out.insert(
            Quad::triple(activity, associated.clone(), premise.object().clone())
                .expect("skolem association triple"),
        );
    }
    out
}

/// A chain of rule applications terminating in input triples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Explanation {
    pub triple: Quad,
    /// `None` marks an input triple.
    pub rule: Option<RuleKind>,
    pub via: Vec<SubpropertyEdge>,
    pub premises: Vec<Explanation>,
}

impl Explanation {
    /// Number of nodes on the longest premise chain, counting this one.
    pub fn depth(&self) -> usize {
        1 + self.premises.iter().map(Explanation::depth).max().unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("triple was not produced by this inference run: {0}")]
pub struct UnknownTriple(pub String);

/// Explains how a triple of the closure came to be: input triples yield an
/// empty chain, inferred triples a tree of rule applications.
pub fn explain(result: &InferenceResult, triple: &Quad) -> Result<Explanation, UnknownTriple> {
    if result.input.contains(triple) {
        return Ok(Explanation {
            triple: triple.clone(),
            rule: None,
            via: Vec::new(),
            premises: Vec::new(),
        });
    }
    let found = result
        .inferred
        .iter()
        .find(|i| i.triple == *triple)
        .ok_or_else(|| UnknownTriple(triple.to_string()))?;
    let premise = explain(result, &found.justification.premise)?;
    Ok(Explanation {
        triple: triple.clone(),
        rule: Some(found.justification.rule),
        via: found.justification.via.clone(),
        premises: vec![premise],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::GraphSelector;

    fn iri(s: &str) -> Term {
        Term::iri(s).unwrap()
    }

    fn triple(s: &Term, p: String, o: &Term) -> Quad {
        Quad::triple(s.clone(), Term::Iri(p), o.clone()).unwrap()
    }

    fn single(statement: Quad) -> Dataset {
        let mut ds = Dataset::new();
        ds.insert(statement);
        ds
    }

    #[test]
    fn authored_by_yields_attribution() {
        let registry = Registry::new();
        let resource = iri("http://example.com/resource.html");
        let paolo = iri("http://example.com/paolo");
        let input = single(triple(&resource, ns::pav("authoredBy"), &paolo));
        let result = infer(&input, &registry, InferenceProfile::all()).unwrap();
        assert!(result
            .graph
            .contains(&triple(&resource, ns::prov("wasAttributedTo"), &paolo)));
        // the skolem activity closes the generation/association pattern
        let activity = attribution_activity(&resource, &paolo);
        assert!(result
            .graph
            .contains(&triple(&resource, ns::prov("wasGeneratedBy"), &activity)));
        assert!(result
            .graph
            .contains(&triple(&activity, ns::prov("wasAssociatedWith"), &paolo)));
    }

    #[test]
    fn imported_from_yields_derivation_and_alternate() {
        let registry = Registry::new();
        let record = Term::blank("rec");
        let source = iri("http://www.ncbi.nlm.nih.gov/");
        let input = single(triple(&record, ns::pav("importedFrom"), &source));
        let closure = subproperty_closure(&input, &registry, InferenceProfile::all());
        assert!(closure.contains(&triple(&record, ns::prov("wasDerivedFrom"), &source)));
        assert!(closure.contains(&triple(&record, ns::prov("alternateOf"), &source)));
    }

    #[test]
    fn empty_graph_stays_empty() {
        let registry = Registry::new();
        let result = infer(&Dataset::new(), &registry, InferenceProfile::all()).unwrap();
        assert!(result.graph.is_empty());
        assert!(result.inferred.is_empty());
    }

    #[test]
    fn attribution_rule_without_premises_is_identity() {
        let ds = single(triple(
            &iri("http://e/s"),
            "http://e/p".to_string(),
            &iri("http://e/o"),
        ));
        assert_eq!(attribution_inference(&ds), ds.union_default());
    }

    #[test]
    fn per_agent_skolem_activities() {
        let registry = Registry::new();
        let resource = iri("http://example.com/resource.html");
        let mut input = Dataset::new();
        for agent in ["paolo", "stian", "khalid"] {
            input.insert(triple(
                &resource,
                ns::pav("authoredBy"),
                &iri(&format!("http://example.com/{agent}")),
            ));
        }
        let result = infer(&input, &registry, InferenceProfile::all()).unwrap();
        let generated = Term::Iri(ns::PROV_WAS_GENERATED_BY.to_string());
        let activities: std::collections::BTreeSet<_> = result
            .graph
            .matching(Some(&resource), Some(&generated), None, GraphSelector::Default)
            .map(|q| q.object().clone())
            .collect();
        assert_eq!(activities.len(), 3);
        let associated = Term::Iri(ns::PROV_WAS_ASSOCIATED_WITH.to_string());
        assert_eq!(
            result
                .graph
                .matching(None, Some(&associated), None, GraphSelector::Default)
                .count(),
            3
        );
    }

    #[test]
    fn pav_only_profile_stays_inside_pav() {
        let registry = Registry::new();
        let r = iri("http://e/r");
        let a = iri("http://e/a");
        let input = single(triple(&r, ns::pav("curatedBy"), &a));
        let result = infer(&input, &registry, InferenceProfile::pav()).unwrap();
        let expected = triple(&r, ns::pav("contributedBy"), &a);
        assert_eq!(result.inferred.len(), 1);
        assert_eq!(result.inferred[0].triple, expected);
    }

    #[test]
    fn dcterms_only_profile_reaches_through_disabled_families() {
        let registry = Registry::new();
        let r = iri("http://e/r");
        let a = iri("http://e/a");
        let input = single(triple(&r, ns::pav("curatedBy"), &a));
        let result = infer(&input, &registry, InferenceProfile::dcterms()).unwrap();
        // curatedBy -> contributedBy (skipped) -> dct:contributor
        assert_eq!(result.inferred.len(), 1);
        let inferred = &result.inferred[0];
        assert_eq!(
            inferred.triple,
            triple(&r, ns::dct("contributor"), &a)
        );
        assert_eq!(inferred.justification.premise, input.iter().next().unwrap().clone());
        assert_eq!(inferred.justification.via.len(), 2);
    }

    #[test]
    fn idempotent_on_own_output() {
        let registry = Registry::new();
        let mut input = Dataset::new();
        input.insert(triple(
            &iri("http://e/r"),
            ns::pav("authoredBy"),
            &Term::blank("who"),
        ));
        input.insert(triple(
            &iri("http://e/r"),
            ns::pav("importedFrom"),
            &iri("http://e/src"),
        ));
        let once = infer(&input, &registry, InferenceProfile::all()).unwrap().graph;
        let twice = infer(&once, &registry, InferenceProfile::all()).unwrap().graph;
        assert_eq!(once, twice);
    }

    #[test]
    fn attribution_requires_prov_family() {
        let profile = InferenceProfile {
            subproperty_pav: true,
            subproperty_dct: true,
            subproperty_prov: false,
            attribution_inference: true,
        };
        assert!(profile.validate().is_err());
        let registry = Registry::new();
        assert!(infer(&Dataset::new(), &registry, profile).is_err());
    }

    #[test]
    fn no_rule_produces_pav_predicates_beyond_hierarchy() {
        let registry = Registry::new();
        let input = single(triple(
            &iri("http://e/r"),
            ns::pav("authoredBy"),
            &iri("http://e/a"),
        ));
        let result = infer(&input, &registry, InferenceProfile::all()).unwrap();
        for inferred in &result.inferred {
            let p = inferred.triple.predicate().as_iri().unwrap();
            if p.starts_with(ns::PAV) {
                // only PAV-internal superproperties, never a leaf term
                assert!(
                    p == ns::pav("contributedBy") || p == ns::pav("contributedOn"),
                    "unexpected PAV predicate {p}"
                );
            }
        }
    }

    #[test]
    fn explain_builds_three_step_chain() {
        let registry = Registry::new();
        let r = iri("http://e/r");
        let a = iri("http://e/a");
        let input = single(triple(&r, ns::pav("authoredBy"), &a));
        let result = infer(&input, &registry, InferenceProfile::all()).unwrap();
        let influenced = triple(&r, ns::prov("wasInfluencedBy"), &a);
        let explanation = explain(&result, &influenced).unwrap();
        // authoredBy -> wasAttributedTo -> wasInfluencedBy
        assert_eq!(explanation.depth(), 3);
        assert_eq!(explanation.rule, Some(RuleKind::SubpropertyProv));
        let attributed = &explanation.premises[0];
        assert_eq!(
            attributed.triple,
            triple(&r, ns::prov("wasAttributedTo"), &a)
        );
        let origin = &attributed.premises[0];
        assert_eq!(origin.rule, None);
        assert!(origin.premises.is_empty());
    }

    #[test]
    fn explain_input_triple_has_empty_chain() {
        let registry = Registry::new();
        let statement = triple(
            &iri("http://e/r"),
            ns::pav("authoredBy"),
            &iri("http://e/a"),
        );
        let input = single(statement.clone());
        let result = infer(&input, &registry, InferenceProfile::all()).unwrap();
        let explanation = explain(&result, &statement).unwrap();
        assert_eq!(explanation.rule, None);
        assert_eq!(explanation.depth(), 1);
    }

    #[test]
    fn explain_skolem_generation_cites_attribution_rule() {
        let registry = Registry::new();
        let r = iri("http://e/r");
        let a = iri("http://e/a");
        let input = single(triple(&r, ns::pav("authoredBy"), &a));
        let result = infer(&input, &registry, InferenceProfile::all()).unwrap();
        let activity = attribution_activity(&r, &a);
        let generated = triple(&r, ns::prov("wasGeneratedBy"), &activity);
        let explanation = explain(&result, &generated).unwrap();
        assert_eq!(explanation.rule, Some(RuleKind::AttributionInference));
        assert_eq!(
            explanation.premises[0].triple,
            triple(&r, ns::prov("wasAttributedTo"), &a)
        );
    }

    #[test]
    fn explain_unknown_triple_errors() {
        let registry = Registry::new();
        let result = infer(&Dataset::new(), &registry, InferenceProfile::all()).unwrap();
        let stray = triple(&iri("http://e/x"), ns::pav("authoredBy"), &iri("http://e/y"));
        assert!(explain(&result, &stray).is_err());
    }

    #[test]
    fn only_inferred_excludes_input() {
        let registry = Registry::new();
        let statement = triple(
            &iri("http://e/r"),
            ns::pav("curatedBy"),
            &iri("http://e/a"),
        );
        let input = single(statement.clone());
        let result = infer(&input, &registry, InferenceProfile::all()).unwrap();
        let only = result.inferred_only();
        assert!(!only.contains(&statement));
        assert_eq!(only.len(), result.graph.len() - 1);
    }
}
