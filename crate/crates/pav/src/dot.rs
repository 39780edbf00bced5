//! DOT export of provenance graphs for rendering with Graphviz.
//!
//! Nodes follow the conventional PROV diagram style: entities are yellow
//! boxes, agents orange houses, activities blue hexagons; literals render as
//! plain notes. Activities are recognized by the skolem IRI prefix, a
//! `prov:Activity` type or an unroller activity type; agents by agent typing
//! or by standing in an agent position (`pav:*By`, `pav:createdWith`,
//! `prov:wasAttributedTo`, `prov:wasAssociatedWith`, `prov:agent`).

use std::collections::{BTreeMap, BTreeSet};

use crate::model::{Dataset, Term};
use crate::ns;
use crate::vocab::{Registry, ValueKind};

const ENTITY_FILL: &str = "#FFFC87";
const AGENT_FILL: &str = "#FED37F";
const ACTIVITY_FILL: &str = "#9FB1FC";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum NodeKind {
    Entity,
    Agent,
    Activity,
    Literal,
}

fn agent_position_predicates(registry: &Registry) -> BTreeSet<String> {
    let mut out: BTreeSet<String> = registry
        .terms()
        .filter(|d| d.value_kind == ValueKind::Agent)
        .map(|d| d.iri.clone())
        .collect();
    out.insert(ns::PROV_WAS_ATTRIBUTED_TO.to_string());
    out.insert(ns::PROV_WAS_ASSOCIATED_WITH.to_string());
    out.insert(ns::prov("agent"));
    out
}

fn agent_types() -> BTreeSet<&'static str> {
    [
        ns::PROV_AGENT,
        ns::PROV_SOFTWARE_AGENT,
        ns::PROV_PERSON,
        ns::PROV_ORGANIZATION,
        "http://xmlns.com/foaf/0.1/Agent",
        "http://xmlns.com/foaf/0.1/Person",
        "http://xmlns.com/foaf/0.1/Organization",
        "http://purl.org/swan/1.2/agents/Software",
    ]
    .into_iter()
    .collect()
}

fn classify(graph: &Dataset, registry: &Registry) -> BTreeMap<Term, NodeKind> {
    let rdf_type = Term::Iri(ns::RDF_TYPE.to_string());
    let agent_predicates = agent_position_predicates(registry);
    let agent_types = agent_types();
    let mut kinds: BTreeMap<Term, NodeKind> = BTreeMap::new();

    for term in graph.terms() {
        if graph
            .matching(Some(term), None, None, crate::model::GraphSelector::Any)
            .next()
            .is_none()
            && graph
                .matching(None, None, Some(term), crate::model::GraphSelector::Any)
                .next()
                .is_none()
        {
            continue; // predicate-only or graph-only term
        }
        let kind = if term.is_literal() {
            NodeKind::Literal
        } else {
            NodeKind::Entity
        };
        kinds.insert(term.clone(), kind);
    }

    for quad in graph.iter() {
        // activity typing
        if quad.predicate() == &rdf_type {
            if let Some(t) = quad.object().as_iri() {
                if t == ns::PROV_ACTIVITY || t.starts_with(ns::UNROLL) {
                    kinds.insert(quad.subject().clone(), NodeKind::Activity);
                }
                if agent_types.contains(t) {
                    kinds.insert(quad.subject().clone(), NodeKind::Agent);
                }
            }
        }
        // agent positions
        if let Some(p) = quad.predicate().as_iri() {
            if agent_predicates.contains(p) && !quad.object().is_literal() {
                kinds.insert(quad.object().clone(), NodeKind::Agent);
            }
        }
    }

    // skolem activities win over anything else
    let keys: Vec<Term> = kinds.keys().cloned().collect();
    for term in keys {
        if term.as_iri().is_some_and(|iri| iri.starts_with(ns::SKOLEM)) {
            kinds.insert(term, NodeKind::Activity);
        }
    }
    kinds
}

fn escape_label(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn node_label(term: &Term, prefixes: &BTreeMap<String, String>) -> String {
    match term {
        Term::Iri(iri) => {
            if let Some(rest) = iri.strip_prefix(ns::SKOLEM) {
                return rest.to_string();
            }
            for (prefix, namespace) in prefixes {
                if let Some(local) = iri.strip_prefix(namespace.as_str()) {
                    if !local.is_empty() && !prefix.is_empty() {
                        return format!("{prefix}:{local}");
                    }
                }
            }
            iri.clone()
        }
        Term::Blank(label) => format!("_:{label}"),
        Term::Literal(lit) => lit.lexical.clone(),
    }
}

fn edge_label(predicate: &Term, prefixes: &BTreeMap<String, String>) -> String {
    match predicate.as_iri() {
        Some(iri) => {
            if iri == ns::RDF_TYPE {
                return "a".to_string();
            }
            for (prefix, namespace) in prefixes {
                if let Some(local) = iri.strip_prefix(namespace.as_str()) {
                    if !local.is_empty() && !prefix.is_empty() {
                        return format!("{prefix}:{local}");
                    }
                }
            }
            iri.rsplit(['/', '#']).next().unwrap_or(iri).to_string()
        }
        None => predicate.to_string(),
    }
}

/// Renders the union graph as a DOT digraph with deterministic node order.
pub fn to_dot(dataset: &Dataset, registry: &Registry) -> String {
    let graph = dataset.union_default();
    let mut prefixes = ns::well_known_prefixes();
    for (p, n) in graph.prefixes() {
        prefixes.insert(p.clone(), n.clone());
    }
    let kinds = classify(&graph, registry);

    let mut out = String::from("digraph provenance {\n");
    if kinds.is_empty() {
        out.push_str("}\n");
        return out;
    }
    out.push_str("  rankdir=BT;\n  node [style=filled fontname=\"Helvetica\"];\n");

    let ids: BTreeMap<&Term, String> = kinds
        .keys()
        .enumerate()
        .map(|(i, t)| (t, format!("n{i}")))
        .collect();

    for (term, id) in &ids {
        let label = escape_label(&node_label(term, &prefixes));
        let attrs = match kinds[term] {
            NodeKind::Entity => format!("shape=box fillcolor=\"{ENTITY_FILL}\""),
            NodeKind::Agent => format!("shape=house fillcolor=\"{AGENT_FILL}\""),
            NodeKind::Activity => format!("shape=hexagon fillcolor=\"{ACTIVITY_FILL}\""),
            NodeKind::Literal => "shape=note fillcolor=\"#FFFFFF\"".to_string(),
        };
        out.push_str(&format!("  {id} [label=\"{label}\" {attrs}];\n"));
    }
    for quad in graph.iter() {
        let (Some(s), Some(o)) = (ids.get(quad.subject()), ids.get(quad.object())) else {
            continue;
        };
        let label = escape_label(&edge_label(quad.predicate(), &prefixes));
        out.push_str(&format!("  {s} -> {o} [label=\"{label}\"];\n"));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Quad;

    fn iri(s: &str) -> Term {
        Term::iri(s).unwrap()
    }

    fn triple(s: &Term, p: String, o: Term) -> Quad {
        Quad::triple(s.clone(), Term::Iri(p), o).unwrap()
    }

    #[test]
    fn empty_graph_renders_shell() {
        let dot = to_dot(&Dataset::new(), &Registry::new());
        assert_eq!(dot, "digraph provenance {\n}\n");
    }

    #[test]
    fn shapes_follow_node_kinds() {
        let registry = Registry::new();
        let entity = iri("http://e/r");
        let agent = Term::blank("who");
        let mut ds = Dataset::new();
        ds.insert(triple(&entity, ns::pav("authoredBy"), agent.clone()));
        let inferred = crate::infer::infer(&ds, &registry, crate::infer::InferenceProfile::all())
            .unwrap()
            .graph;
        let dot = to_dot(&inferred, &registry);
        assert!(dot.contains("shape=box"), "entity missing: {dot}");
        assert!(dot.contains("shape=house"), "agent missing: {dot}");
        assert!(dot.contains("shape=hexagon"), "activity missing: {dot}");
        assert!(dot.contains("pav:authoredBy"));
    }

    #[test]
    fn output_is_deterministic() {
        let registry = Registry::new();
        let mut ds = Dataset::new();
        ds.insert(triple(&iri("http://e/a"), ns::pav("curatedBy"), Term::blank("x")));
        ds.insert(triple(&iri("http://e/b"), ns::pav("createdBy"), Term::blank("y")));
        assert_eq!(to_dot(&ds, &registry), to_dot(&ds, &registry));
    }
}
