//! Basic graph pattern matching plus canned lineage and attribution walks.
//!
//! The query language is deliberately small: conjunctions of triple patterns
//! with named variables, joined on shared variable names. The text syntax
//! takes one `subject predicate object` pattern per line, `?name` variables,
//! and IRIs either in `<...>` form or prefixed using the dataset's prefix
//! map. No OPTIONAL, FILTER, paths or aggregation.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::model::{Dataset, GraphSelector, Quad, Term};
use crate::ns;

/// A term position in a pattern: concrete or variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PatternTerm {
    Term(Term),
    Variable(String),
}

impl PatternTerm {
    pub fn var(name: impl Into<String>) -> PatternTerm {
        PatternTerm::Variable(name.into())
    }

    fn variable_name(&self) -> Option<&str> {
        match self {
            PatternTerm::Variable(v) => Some(v),
            PatternTerm::Term(_) => None,
        }
    }
}

/// One triple pattern; any position may be a variable, including the
/// predicate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriplePattern {
    pub subject: PatternTerm,
    pub predicate: PatternTerm,
    pub object: PatternTerm,
}

impl TriplePattern {
    pub fn new(subject: PatternTerm, predicate: PatternTerm, object: PatternTerm) -> TriplePattern {
        TriplePattern {
            subject,
            predicate,
            object,
        }
    }

    fn variables(&self) -> BTreeSet<String> {
        [&self.subject, &self.predicate, &self.object]
            .into_iter()
            .filter_map(|p| p.variable_name().map(str::to_string))
            .collect()
    }

    fn concrete_positions(&self) -> usize {
        [&self.subject, &self.predicate, &self.object]
            .into_iter()
            .filter(|p| matches!(p, PatternTerm::Term(_)))
            .count()
    }
}

/// One solution: every query variable bound to a term.
pub type BindingSet = BTreeMap<String, Term>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QueryError {
    #[error("query has no patterns")]
    EmptyQuery,
    #[error("projected variable ?{0} does not occur in any pattern")]
    UnboundProjection(String),
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("pav:previousVersion cycle at {0} (lint rule L3)")]
    VersionCycle(String),
}

fn resolve(position: &PatternTerm, bindings: &BindingSet) -> Option<Term> {
    match position {
        PatternTerm::Term(t) => Some(t.clone()),
        PatternTerm::Variable(v) => bindings.get(v).cloned(),
    }
}

fn extend(
    bindings: &BindingSet,
    pattern: &TriplePattern,
    quad: &Quad,
) -> Option<BindingSet> {
    let mut out = bindings.clone();
    for (position, value) in [
        (&pattern.subject, quad.subject()),
        (&pattern.predicate, quad.predicate()),
        (&pattern.object, quad.object()),
    ] {
        if let PatternTerm::Variable(name) = position {
            match out.get(name) {
                Some(bound) if bound != value => return None,
                Some(_) => {}
                None => {
                    out.insert(name.clone(), value.clone());
                }
            }
        }
    }
    Some(out)
}

/// Solves a conjunctive pattern over a graph. Solutions are projected onto
/// `projected` (all variables when empty), deduplicated and returned in
/// sorted order. Join order is chosen by selectivity (most concrete
/// positions first); evaluation is a nested-loop join.
pub fn select(
    graph: &Dataset,
    patterns: &[TriplePattern],
    projected: &[String],
) -> Result<Vec<BindingSet>, QueryError> {
    if patterns.is_empty() {
        return Err(QueryError::EmptyQuery);
    }
    let all_vars: BTreeSet<String> = patterns.iter().flat_map(|p| p.variables()).collect();
    for var in projected {
        if !all_vars.contains(var) {
            return Err(QueryError::UnboundProjection(var.clone()));
        }
    }
    let keep: BTreeSet<String> = if projected.is_empty() {
        all_vars
    } else {
        projected.iter().cloned().collect()
    };

    let mut ordered: Vec<&TriplePattern> = patterns.iter().collect();
    ordered.sort_by_key(|p| std::cmp::Reverse(p.concrete_positions()));

    let mut solutions: Vec<BindingSet> = vec![BindingSet::new()];
    for pattern in ordered {
        let mut next = Vec::new();
        for bindings in &solutions {
            let s = resolve(&pattern.subject, bindings);
            let p = resolve(&pattern.predicate, bindings);
            let o = resolve(&pattern.object, bindings);
            for quad in graph.matching(s.as_ref(), p.as_ref(), o.as_ref(), GraphSelector::Any) {
                if let Some(extended) = extend(bindings, pattern, quad) {
                    next.push(extended);
                }
            }
        }
        solutions = next;
        if solutions.is_empty() {
            break;
        }
    }

    let projected_solutions: BTreeSet<BindingSet> = solutions
        .into_iter()
        .map(|b| {
            b.into_iter()
                .filter(|(name, _)| keep.contains(name))
                .collect()
        })
        .collect();
    Ok(projected_solutions.into_iter().collect())
}

/// Parses the line-oriented pattern syntax. `prefixes` usually comes from
/// the queried dataset; the well-known pav/prov/dct/rdf(s)/xsd/skos/owl
/// bindings are available as fallbacks.
pub fn parse_patterns(
    text: &str,
    prefixes: &BTreeMap<String, String>,
) -> Result<Vec<TriplePattern>, QueryError> {
    let mut map = ns::well_known_prefixes();
    for (p, n) in prefixes {
        map.insert(p.clone(), n.clone());
    }
    let mut patterns = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let terms = tokenize_pattern_line(line, &map, line_no)?;
        match <[PatternTerm; 3]>::try_from(terms) {
            Ok([subject, predicate, object]) => {
                patterns.push(TriplePattern::new(subject, predicate, object));
            }
            Err(_) => {
                return Err(QueryError::Syntax {
                    line: line_no,
                    message: "each pattern line needs exactly three terms".to_string(),
                })
            }
        }
    }
    if patterns.is_empty() {
        return Err(QueryError::EmptyQuery);
    }
    Ok(patterns)
}

fn tokenize_pattern_line(
    line: &str,
    prefixes: &BTreeMap<String, String>,
    line_no: usize,
) -> Result<Vec<PatternTerm>, QueryError> {
    let err = |message: String| QueryError::Syntax {
        line: line_no,
        message,
    };
    let mut terms = Vec::new();
    let chars: Vec<char> = line.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c == '.' && i + 1 == chars.len() {
            break; // optional statement-style terminator
        }
        match c {
            '?' => {
                let mut name = String::new();
                i += 1;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    name.push(chars[i]);
                    i += 1;
                }
                if name.is_empty() {
                    return Err(err("empty variable name".to_string()));
                }
                terms.push(PatternTerm::var(name));
            }
            '<' => {
                let mut iri = String::new();
                i += 1;
                loop {
                    if i >= chars.len() {
                        return Err(err("unterminated IRI".to_string()));
                    }
                    if chars[i] == '>' {
                        i += 1;
                        break;
                    }
                    iri.push(chars[i]);
                    i += 1;
                }
                let term = Term::iri(iri).map_err(|e| err(e.to_string()))?;
                terms.push(PatternTerm::Term(term));
            }
            '"' => {
                let mut lexical = String::new();
                i += 1;
                loop {
                    if i >= chars.len() {
                        return Err(err("unterminated literal".to_string()));
                    }
                    match chars[i] {
                        '"' => {
                            i += 1;
                            break;
                        }
                        '\\' if i + 1 < chars.len() => {
                            lexical.push(match chars[i + 1] {
                                'n' => '\n',
                                't' => '\t',
                                other => other,
                            });
                            i += 2;
                        }
                        other => {
                            lexical.push(other);
                            i += 1;
                        }
                    }
                }
                if i < chars.len() && chars[i] == '@' {
                    let mut tag = String::new();
                    i += 1;
                    while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '-') {
                        tag.push(chars[i]);
                        i += 1;
                    }
                    terms.push(PatternTerm::Term(Term::lang_string(lexical, tag)));
                } else if i + 1 < chars.len() && chars[i] == '^' && chars[i + 1] == '^' {
                    i += 2;
                    let rest: String = chars[i..].iter().collect();
                    let (datatype, consumed) = if rest.starts_with('<') {
                        let end = rest
                            .find('>')
                            .ok_or_else(|| err("unterminated datatype IRI".to_string()))?;
                        (rest[1..end].to_string(), end + 1)
                    } else {
                        let end = rest
                            .find(|c: char| c.is_whitespace())
                            .unwrap_or(rest.len());
                        let name = &rest[..end];
                        (expand_prefixed(name, prefixes).map_err(&err)?, end)
                    };
                    i += consumed;
                    let term =
                        Term::typed_literal(lexical, datatype).map_err(|e| err(e.to_string()))?;
                    terms.push(PatternTerm::Term(term));
                } else {
                    terms.push(PatternTerm::Term(Term::string(lexical)));
                }
            }
            '_' if i + 1 < chars.len() && chars[i + 1] == ':' => {
                let mut label = String::new();
                i += 2;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '-') {
                    label.push(chars[i]);
                    i += 1;
                }
                terms.push(PatternTerm::Term(Term::blank(label)));
            }
            _ => {
                let mut token = String::new();
                while i < chars.len() && !chars[i].is_whitespace() {
                    token.push(chars[i]);
                    i += 1;
                }
                while token.ends_with('.') {
                    token.pop();
                }
                if token == "a" {
                    terms.push(PatternTerm::Term(Term::Iri(ns::RDF_TYPE.to_string())));
                } else {
                    let iri = expand_prefixed(&token, prefixes).map_err(&err)?;
                    terms.push(PatternTerm::Term(Term::Iri(iri)));
                }
            }
        }
    }
    Ok(terms)
}

fn expand_prefixed(
    token: &str,
    prefixes: &BTreeMap<String, String>,
) -> Result<String, String> {
    let Some((prefix, local)) = token.split_once(':') else {
        return Err(format!("expected a prefixed name or IRI, found {token:?}"));
    };
    let Some(namespace) = prefixes.get(prefix) else {
        return Err(format!("unknown prefix {prefix:?}"));
    };
    Ok(format!("{namespace}{local}"))
}

/// Follows `pav:previousVersion` from a resource to the end of its lineage.
/// Every element is paired with its `pav:version` label when present.
/// Multiple predecessors (flagged by lint rule L1) follow the smallest term.
pub fn version_chain(
    graph: &Dataset,
    resource: &Term,
) -> Result<Vec<(Term, Option<String>)>, QueryError> {
    let graph = graph.union_default();
    let prev = Term::Iri(ns::pav("previousVersion"));
    let mut chain = Vec::new();
    let mut seen: BTreeSet<Term> = BTreeSet::new();
    let mut current = Some(resource.clone());
    while let Some(node) = current {
        if !seen.insert(node.clone()) {
            return Err(QueryError::VersionCycle(node.to_string()));
        }
        chain.push((node.clone(), crate::lint::version_label(&graph, &node)));
        current = graph
            .objects(&node, &prev)
            .into_iter()
            .find(|o| !o.is_literal())
            .cloned();
    }
    Ok(chain)
}

/// The derivation predicates a lineage walk follows.
pub fn derivation_predicates() -> [Term; 4] {
    [
        Term::Iri(ns::pav("derivedFrom")),
        Term::Iri(ns::pav("importedFrom")),
        Term::Iri(ns::pav("retrievedFrom")),
        Term::Iri(ns::PROV_WAS_DERIVED_FROM.to_string()),
    ]
}

/// The derivation subgraph reachable from a resource: each edge labeled with
/// its predicate. Cycles are tolerated; traversal visits each node once and
/// reports whether a back edge was seen.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationGraph {
    pub edges: Vec<(Term, Term, Term)>,
    pub cyclic: bool,
}

pub fn derivation_ancestors(graph: &Dataset, resource: &Term) -> DerivationGraph {
    let graph = graph.union_default();
    let predicates = derivation_predicates();
    let mut edges = Vec::new();
    let mut visited: BTreeSet<Term> = BTreeSet::new();
    let mut cyclic = false;
    let mut frontier = vec![resource.clone()];
    visited.insert(resource.clone());
    while let Some(node) = frontier.pop() {
        for predicate in &predicates {
            for quad in graph.matching(Some(&node), Some(predicate), None, GraphSelector::Any) {
                edges.push((node.clone(), predicate.clone(), quad.object().clone()));
                if visited.insert(quad.object().clone()) {
                    if !quad.object().is_literal() {
                        frontier.push(quad.object().clone());
                    }
                } else {
                    cyclic = true;
                }
            }
        }
    }
    edges.sort();
    edges.dedup();
    DerivationGraph { edges, cyclic }
}

/// The agent roles PAV distinguishes, with their property pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Role {
    Author,
    Curator,
    Contributor,
    Creator,
    CreatingTool,
    Importer,
    Retriever,
    SourceAccessor,
}

impl Role {
    pub fn all() -> [Role; 8] {
        [
            Role::Author,
            Role::Curator,
            Role::Contributor,
            Role::Creator,
            Role::CreatingTool,
            Role::Importer,
            Role::Retriever,
            Role::SourceAccessor,
        ]
    }

    pub fn label(self) -> &'static str {
        match self {
            Role::Author => "author",
            Role::Curator => "curator",
            Role::Contributor => "contributor",
            Role::Creator => "creator",
            Role::CreatingTool => "creating-tool",
            Role::Importer => "importer",
            Role::Retriever => "retriever",
            Role::SourceAccessor => "source-accessor",
        }
    }

    /// The PAV property whose objects fill this role.
    pub fn agent_property(self) -> String {
        match self {
            Role::Author => ns::pav("authoredBy"),
            Role::Curator => ns::pav("curatedBy"),
            Role::Contributor => ns::pav("contributedBy"),
            Role::Creator => ns::pav("createdBy"),
            Role::CreatingTool => ns::pav("createdWith"),
            Role::Importer => ns::pav("importedBy"),
            Role::Retriever => ns::pav("retrievedBy"),
            Role::SourceAccessor => ns::pav("sourceAccessedBy"),
        }
    }

    /// The matching timestamp property, where one exists. `createdOn` dates
    /// the creator's work, so the creating tool has no timestamp of its own.
    pub fn timestamp_property(self) -> Option<String> {
        match self {
            Role::Author => Some(ns::pav("authoredOn")),
            Role::Curator => Some(ns::pav("curatedOn")),
            Role::Contributor => Some(ns::pav("contributedOn")),
            Role::Creator => Some(ns::pav("createdOn")),
            Role::CreatingTool => None,
            Role::Importer => Some(ns::pav("importedOn")),
            Role::Retriever => Some(ns::pav("retrievedOn")),
            Role::SourceAccessor => Some(ns::pav("sourceAccessedOn")),
        }
    }
}

/// Agents and timestamps for one role on one resource.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RoleAttribution {
    pub agents: BTreeSet<Term>,
    pub timestamps: BTreeSet<Term>,
}

/// Role-grouped agent summary of one resource, from its direct PAV triples
/// only. Inferred PROV statements are deliberately excluded: collapsing to
/// `prov:wasAttributedTo` would erase exactly the author/curator/creator
/// distinctions this report exists to show.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttributionReport {
    pub resource: Term,
    pub roles: BTreeMap<Role, RoleAttribution>,
}

impl AttributionReport {
    pub fn role(&self, role: Role) -> &RoleAttribution {
        &self.roles[&role]
    }

    pub fn is_empty(&self) -> bool {
        self.roles
            .values()
            .all(|r| r.agents.is_empty() && r.timestamps.is_empty())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let roles: serde_json::Map<String, serde_json::Value> = self
            .roles
            .iter()
            .map(|(role, attribution)| {
                (
                    role.label().to_string(),
                    serde_json::json!({
                        "agents": attribution.agents.iter().map(Term::to_string).collect::<Vec<_>>(),
                        "timestamps": attribution.timestamps.iter().map(Term::to_string).collect::<Vec<_>>(),
                    }),
                )
            })
            .collect();
        serde_json::json!({
            "resource": self.resource.to_string(),
            "roles": roles,
        })
    }
}

/// Collects agents and timestamps per role from the triples whose subject is
/// `resource`, over the union graph.
pub fn attribution_report(graph: &Dataset, resource: &Term) -> AttributionReport {
    let graph = graph.union_default();
    let mut roles = BTreeMap::new();
    for role in Role::all() {
        let mut attribution = RoleAttribution::default();
        let agent_property = Term::Iri(role.agent_property());
        attribution.agents = graph
            .objects(resource, &agent_property)
            .into_iter()
            .cloned()
            .collect();
        if let Some(on) = role.timestamp_property() {
            let on = Term::Iri(on);
            attribution.timestamps = graph
                .objects(resource, &on)
                .into_iter()
                .cloned()
                .collect();
        }
        roles.insert(role, attribution);
    }
    AttributionReport {
        resource: resource.clone(),
        roles,
    }
}
