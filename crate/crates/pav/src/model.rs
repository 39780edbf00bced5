//! In-memory RDF data model: terms, quads and datasets.
//!
//! Terms are structural values: two IRIs are equal iff their strings are
//! equal, two blank nodes are equal iff their labels are equal within one
//! dataset, and literals compare by lexical form (no value-space
//! canonicalization, so `"0.000656"^^xsd:float` round-trips byte-exact).
//! A [`Dataset`] is a set of [`Quad`]s plus the prefix map retained from
//! parsing; the prefix map never affects equality.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::ns;

/// Structural violations of the RDF model invariants.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("IRI is not absolute: {0:?}")]
    RelativeIri(String),
    #[error("language-tagged literals must use the rdf:langString datatype")]
    LanguageTagDatatype,
    #[error("rdf:langString literals must carry a language tag")]
    MissingLanguageTag,
    #[error("quad subject must be an IRI or blank node, got literal {0}")]
    LiteralSubject(String),
    #[error("quad predicate must be an IRI, got {0}")]
    NonIriPredicate(String),
    #[error("graph name must be an IRI or blank node, got {0}")]
    InvalidGraphName(String),
    #[error("operation requires a default-graph-only dataset")]
    NamedGraphsPresent,
}

/// An RDF literal: lexical form, datatype IRI and optional language tag.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub lexical: String,
    pub datatype: String,
    pub language: Option<String>,
}

/// An RDF term: IRI, blank node or literal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Iri(String),
    Blank(String),
    Literal(Literal),
}

/// True iff `s` starts with a `scheme:` part as required for absolute IRIs.
pub fn is_absolute_iri(s: &str) -> bool {
    let Some(colon) = s.find(':') else {
        return false;
    };
    let scheme = &s[..colon];
    let mut chars = scheme.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '+' || c == '-' || c == '.')
}

impl Term {
    /// Creates an IRI term, rejecting relative IRIs.
    pub fn iri(iri: impl Into<String>) -> Result<Term, ModelError> {
        let iri = iri.into();
        if !is_absolute_iri(&iri) {
            return Err(ModelError::RelativeIri(iri));
        }
        Ok(Term::Iri(iri))
    }

    /// Creates a blank node with the given label.
    pub fn blank(label: impl Into<String>) -> Term {
        Term::Blank(label.into())
    }

    /// Creates a simple string literal (`xsd:string`).
    pub fn string(lexical: impl Into<String>) -> Term {
        Term::Literal(Literal {
            lexical: lexical.into(),
            datatype: ns::XSD_STRING.to_string(),
            language: None,
        })
    }

    /// Creates a language-tagged literal (`rdf:langString`).
    pub fn lang_string(lexical: impl Into<String>, tag: impl Into<String>) -> Term {
        Term::Literal(Literal {
            lexical: lexical.into(),
            datatype: ns::RDF_LANG_STRING.to_string(),
            language: Some(tag.into()),
        })
    }

    /// Creates a typed literal. The datatype must be an absolute IRI and must
    /// not be `rdf:langString` (use [`Term::lang_string`] for that).
    pub fn typed_literal(
        lexical: impl Into<String>,
        datatype: impl Into<String>,
    ) -> Result<Term, ModelError> {
        let datatype = datatype.into();
        if !is_absolute_iri(&datatype) {
            return Err(ModelError::RelativeIri(datatype));
        }
        if datatype == ns::RDF_LANG_STRING {
            return Err(ModelError::MissingLanguageTag);
        }
        Ok(Term::Literal(Literal {
            lexical: lexical.into(),
            datatype,
            language: None,
        }))
    }

    pub fn is_iri(&self) -> bool {
        matches!(self, Term::Iri(_))
    }

    pub fn is_blank(&self) -> bool {
        matches!(self, Term::Blank(_))
    }

    pub fn is_literal(&self) -> bool {
        matches!(self, Term::Literal(_))
    }

    pub fn as_iri(&self) -> Option<&str> {
        match self {
            Term::Iri(iri) => Some(iri),
            _ => None,
        }
    }

    pub fn as_literal(&self) -> Option<&Literal> {
        match self {
            Term::Literal(l) => Some(l),
            _ => None,
        }
    }
}

fn escape_string(s: &str, out: &mut String) {
    for c in s.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '"' => out.push_str("\\\""),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => {
                out.push_str(&format!("\\u{:04X}", c as u32));
            }
            c => out.push(c),
        }
    }
}

impl fmt::Display for Term {
    /// Formats the term in N-Triples syntax.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Iri(iri) => write!(f, "<{iri}>"),
            Term::Blank(label) => write!(f, "_:{label}"),
            Term::Literal(lit) => {
                let mut quoted = String::with_capacity(lit.lexical.len() + 2);
                escape_string(&lit.lexical, &mut quoted);
                write!(f, "\"{quoted}\"")?;
                if let Some(tag) = &lit.language {
                    write!(f, "@{tag}")
                } else if lit.datatype != ns::XSD_STRING {
                    write!(f, "^^<{}>", lit.datatype)
                } else {
                    Ok(())
                }
            }
        }
    }
}

/// An RDF quad: subject, predicate, object and optional graph name.
///
/// `graph == None` places the triple in the default graph.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Quad {
    subject: Term,
    predicate: Term,
    object: Term,
    graph: Option<Term>,
}

impl Quad {
    /// Creates a quad, enforcing the positional invariants: the subject is an
    /// IRI or blank node, the predicate an IRI, and the graph name (when
    /// present) an IRI or blank node.
    pub fn new(
        subject: Term,
        predicate: Term,
        object: Term,
        graph: Option<Term>,
    ) -> Result<Quad, ModelError> {
        if subject.is_literal() {
            return Err(ModelError::LiteralSubject(subject.to_string()));
        }
        if !predicate.is_iri() {
            return Err(ModelError::NonIriPredicate(predicate.to_string()));
        }
        if let Some(g) = &graph {
            if g.is_literal() {
                return Err(ModelError::InvalidGraphName(g.to_string()));
            }
        }
        Ok(Quad {
            subject,
            predicate,
            object,
            graph,
        })
    }

    /// Creates a default-graph triple.
    pub fn triple(subject: Term, predicate: Term, object: Term) -> Result<Quad, ModelError> {
        Quad::new(subject, predicate, object, None)
    }

    pub fn subject(&self) -> &Term {
        &self.subject
    }

    pub fn predicate(&self) -> &Term {
        &self.predicate
    }

    pub fn object(&self) -> &Term {
        &self.object
    }

    pub fn graph(&self) -> Option<&Term> {
        self.graph.as_ref()
    }

    /// The same triple relocated to the default graph.
    pub fn into_default_graph(mut self) -> Quad {
        self.graph = None;
        self
    }
}

impl fmt::Display for Quad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.subject, self.predicate, self.object)?;
        if let Some(g) = &self.graph {
            write!(f, " {g}")?;
        }
        write!(f, " .")
    }
}

/// Selects which graphs a [`Dataset::matching`] call inspects.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphSelector<'a> {
    /// Any graph, named or default.
    Any,
    /// The default graph only.
    Default,
    /// One specific named graph.
    Named(&'a Term),
}

/// A set of quads plus the prefix map retained from parsing.
///
/// Set semantics: inserting a quad twice leaves one copy. Blank node labels
/// are scoped to the dataset. Construction is single-threaded; once loaded
/// the dataset is meant to be shared read-only.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Dataset {
    quads: BTreeSet<Quad>,
    prefixes: BTreeMap<String, String>,
}

impl Dataset {
    pub fn new() -> Dataset {
        Dataset::default()
    }

    /// Inserts a quad; returns `true` if it was not already present.
    pub fn insert(&mut self, quad: Quad) -> bool {
        self.quads.insert(quad)
    }

    pub fn extend(&mut self, quads: impl IntoIterator<Item = Quad>) {
        self.quads.extend(quads);
    }

    pub fn contains(&self, quad: &Quad) -> bool {
        self.quads.contains(quad)
    }

    pub fn len(&self) -> usize {
        self.quads.len()
    }

    pub fn is_empty(&self) -> bool {
        self.quads.is_empty()
    }

    /// Iterates all quads in sorted order.
    pub fn iter(&self) -> impl Iterator<Item = &Quad> {
        self.quads.iter()
    }

    pub fn prefixes(&self) -> &BTreeMap<String, String> {
        &self.prefixes
    }

    /// Binds `prefix` to `namespace` for serialization purposes.
    pub fn add_prefix(&mut self, prefix: impl Into<String>, namespace: impl Into<String>) {
        self.prefixes.insert(prefix.into(), namespace.into());
    }

    pub fn merge_prefixes(&mut self, other: &BTreeMap<String, String>) {
        for (p, n) in other {
            self.prefixes.entry(p.clone()).or_insert_with(|| n.clone());
        }
    }

    /// True when every quad lives in the default graph.
    pub fn is_default_graph_only(&self) -> bool {
        self.quads.iter().all(|q| q.graph().is_none())
    }

    /// All quads agreeing with every concrete position. `None` in a term
    /// position is a wildcard; the graph position distinguishes "any graph"
    /// from "the default graph" via [`GraphSelector`].
    pub fn matching<'a>(
        &'a self,
        subject: Option<&'a Term>,
        predicate: Option<&'a Term>,
        object: Option<&'a Term>,
        graph: GraphSelector<'a>,
    ) -> impl Iterator<Item = &'a Quad> {
        self.quads.iter().filter(move |q| {
            subject.is_none_or(|s| q.subject() == s)
                && predicate.is_none_or(|p| q.predicate() == p)
                && object.is_none_or(|o| q.object() == o)
                && match graph {
                    GraphSelector::Any => true,
                    GraphSelector::Default => q.graph().is_none(),
                    GraphSelector::Named(g) => q.graph() == Some(g),
                }
        })
    }

    /// Objects of `(subject, predicate, ?)` over all graphs, sorted.
    pub fn objects(&self, subject: &Term, predicate: &Term) -> Vec<&Term> {
        let set: BTreeSet<&Term> = self
            .quads
            .iter()
            .filter(|q| q.subject() == subject && q.predicate() == predicate)
            .map(|q| q.object())
            .collect();
        set.into_iter().collect()
    }

    /// Every triple from every graph merged into the default graph,
    /// deduplicated. The prefix map is carried over.
    pub fn union_default(&self) -> Dataset {
        let mut out = Dataset {
            quads: BTreeSet::new(),
            prefixes: self.prefixes.clone(),
        };
        for q in &self.quads {
            out.insert(q.clone().into_default_graph());
        }
        out
    }

    /// The names of all named graphs, sorted.
    pub fn graph_names(&self) -> Vec<&Term> {
        let set: BTreeSet<&Term> = self.quads.iter().filter_map(|q| q.graph()).collect();
        set.into_iter().collect()
    }

    /// All terms appearing in any position, sorted.
    pub fn terms(&self) -> Vec<&Term> {
        let mut set: BTreeSet<&Term> = BTreeSet::new();
        for q in &self.quads {
            set.insert(q.subject());
            set.insert(q.predicate());
            set.insert(q.object());
            if let Some(g) = q.graph() {
                set.insert(g);
            }
        }
        set.into_iter().collect()
    }
}

impl FromIterator<Quad> for Dataset {
    fn from_iter<I: IntoIterator<Item = Quad>>(iter: I) -> Dataset {
        let mut ds = Dataset::new();
        ds.extend(iter);
        ds
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iri(s: &str) -> Term {
        Term::iri(s).unwrap()
    }

    #[test]
    fn absolute_iri_check() {
        assert!(is_absolute_iri("http://example.com/x"));
        assert!(is_absolute_iri("urn:pav-skolem:x"));
        assert!(is_absolute_iri("tag:a"));
        assert!(!is_absolute_iri("example.com/x"));
        assert!(!is_absolute_iri("#fragment"));
        assert!(!is_absolute_iri("1http://x"));
        assert!(!is_absolute_iri(":x"));
    }

    #[test]
    fn relative_iri_rejected() {
        assert!(matches!(
            Term::iri("relative/path"),
            Err(ModelError::RelativeIri(_))
        ));
    }

    #[test]
    fn language_tag_requires_lang_string() {
        assert!(Term::typed_literal("x", crate::ns::RDF_LANG_STRING).is_err());
        let t = Term::lang_string("hello", "en");
        let lit = t.as_literal().unwrap();
        assert_eq!(lit.datatype, crate::ns::RDF_LANG_STRING);
        assert_eq!(lit.language.as_deref(), Some("en"));
    }

    #[test]
    fn quad_invariants() {
        let s = iri("http://example.com/s");
        let p = iri("http://example.com/p");
        let o = Term::string("x");
        assert!(Quad::triple(Term::string("lit"), p.clone(), o.clone()).is_err());
        assert!(Quad::triple(s.clone(), Term::blank("b"), o.clone()).is_err());
        assert!(Quad::new(s.clone(), p.clone(), o.clone(), Some(Term::string("g"))).is_err());
        assert!(Quad::triple(s, p, o).is_ok());
    }

    #[test]
    fn insert_is_idempotent() {
        let q = Quad::triple(
            iri("http://example.com/s"),
            iri("http://example.com/p"),
            iri("http://example.com/o"),
        )
        .unwrap();
        let mut ds = Dataset::new();
        assert!(ds.insert(q.clone()));
        assert_eq!(ds.len(), 1);
        assert!(!ds.insert(q));
        assert_eq!(ds.len(), 1);
    }

    #[test]
    fn match_wildcards_return_everything() {
        let mut ds = Dataset::new();
        for i in 0..4 {
            ds.insert(
                Quad::triple(
                    iri(&format!("http://example.com/s{i}")),
                    iri("http://example.com/p"),
                    Term::string(format!("{i}")),
                )
                .unwrap(),
            );
        }
        assert_eq!(ds.matching(None, None, None, GraphSelector::Any).count(), 4);
        let empty = Dataset::new();
        assert_eq!(
            empty.matching(None, None, None, GraphSelector::Any).count(),
            0
        );
    }

    #[test]
    fn graph_selector_distinguishes_default() {
        let s = iri("http://example.com/s");
        let p = iri("http://example.com/p");
        let g = iri("http://example.com/g");
        let mut ds = Dataset::new();
        ds.insert(Quad::triple(s.clone(), p.clone(), Term::string("d")).unwrap());
        ds.insert(Quad::new(s.clone(), p.clone(), Term::string("n"), Some(g.clone())).unwrap());
        assert_eq!(ds.matching(None, None, None, GraphSelector::Any).count(), 2);
        assert_eq!(
            ds.matching(None, None, None, GraphSelector::Default).count(),
            1
        );
        assert_eq!(
            ds.matching(None, None, None, GraphSelector::Named(&g)).count(),
            1
        );
    }

    #[test]
    fn union_default_deduplicates() {
        let s = iri("http://example.com/s");
        let p = iri("http://example.com/p");
        let o = iri("http://example.com/o");
        let o2 = iri("http://example.com/o2");
        let g1 = iri("http://example.com/g1");
        let g2 = iri("http://example.com/g2");
        let mut ds = Dataset::new();
        ds.insert(Quad::new(s.clone(), p.clone(), o.clone(), Some(g1)).unwrap());
        ds.insert(Quad::new(s.clone(), p.clone(), o.clone(), Some(g2.clone())).unwrap());
        ds.insert(Quad::new(s.clone(), p.clone(), o2.clone(), Some(g2)).unwrap());
        let union = ds.union_default();
        assert_eq!(union.len(), 2);
        assert!(union.is_default_graph_only());
        assert!(Dataset::new().union_default().is_empty());
    }

    #[test]
    fn display_forms() {
        assert_eq!(
            iri("http://example.com/s").to_string(),
            "<http://example.com/s>"
        );
        assert_eq!(Term::blank("b0").to_string(), "_:b0");
        assert_eq!(Term::string("plain").to_string(), "\"plain\"");
        assert_eq!(
            Term::lang_string("hi", "en").to_string(),
            "\"hi\"@en"
        );
        assert_eq!(
            Term::typed_literal("1.4", crate::ns::XSD_DATE_TIME)
                .unwrap()
                .to_string(),
            "\"1.4\"^^<http://www.w3.org/2001/XMLSchema#dateTime>"
        );
        assert_eq!(
            Term::string("a\"b\\c\nd").to_string(),
            "\"a\\\"b\\\\c\\nd\""
        );
    }
}
