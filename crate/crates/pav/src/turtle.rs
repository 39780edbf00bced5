//! Turtle and TriG reading; N-Quads and pretty Turtle writing.
//!
//! The reader covers the subset of Turtle/TriG needed for real-world PAV
//! metadata snippets:
//!
//! - `@prefix` and `@base` directives
//! - `a` for `rdf:type`, `;` and `,` abbreviations
//! - anonymous blank-node property lists `[ ... ]`
//! - quoted literals with `^^datatype` and `@lang`, including `\uXXXX` escapes
//! - absolute, prefixed and base-relative IRIs
//! - TriG named-graph blocks `<name> { ... }` / `:name { ... }` and the
//!   anonymous default-graph block `{ ... }`; nested blocks are rejected
//!
//! Not supported: RDF collections `( ... )`, numeric/boolean shorthand
//! literals, and triple-quoted multi-line strings.
//!
//! The writers are deterministic: N-Quads output is sorted line-wise and
//! blank nodes are relabeled `b0, b1, ...` by first appearance in sorted
//! quad order, so identical datasets always serialize to identical bytes.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use thiserror::Error;

use crate::model::{Dataset, Quad, Term};
use crate::ns;

/// Severity of a reader diagnostic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagnosticSeverity {
    Warning,
    Error,
}

impl fmt::Display for DiagnosticSeverity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiagnosticSeverity::Warning => write!(f, "warning"),
            DiagnosticSeverity::Error => write!(f, "error"),
        }
    }
}

/// A positioned parse diagnostic. Errors abort the parse; warnings accompany
/// an otherwise successful result (a well-formed document produces none).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {severity}: {message}")]
pub struct ParseDiagnostic {
    pub line: usize,
    pub column: usize,
    pub severity: DiagnosticSeverity,
    pub message: String,
}

/// A parsed dataset plus any warnings the reader emitted.
#[derive(Debug, Clone)]
pub struct Parsed {
    pub dataset: Dataset,
    pub warnings: Vec<ParseDiagnostic>,
}

/// Parses a Turtle document into a default-graph-only dataset.
pub fn parse_turtle(text: &str, base_iri: Option<&str>) -> Result<Parsed, ParseDiagnostic> {
    Parser::new(text, base_iri, false).run()
}

/// Parses a TriG document; quads carry their named graph.
pub fn parse_trig(text: &str, base_iri: Option<&str>) -> Result<Parsed, ParseDiagnostic> {
    Parser::new(text, base_iri, true).run()
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col: usize,
    trig: bool,
    base: Option<String>,
    dataset: Dataset,
    warnings: Vec<ParseDiagnostic>,
    /// user blank-node label -> internal label
    user_labels: HashMap<String, String>,
    taken_labels: HashSet<String>,
    next_anon: usize,
    current_graph: Option<Term>,
    in_graph_block: bool,
}

type PResult<T> = Result<T, ParseDiagnostic>;

impl Parser {
    fn new(text: &str, base_iri: Option<&str>, trig: bool) -> Parser {
        Parser {
            chars: text.chars().collect(),
            pos: 0,
            line: 1,
            col: 1,
            trig,
            base: base_iri.map(str::to_string),
            dataset: Dataset::new(),
            warnings: Vec::new(),
            user_labels: HashMap::new(),
            taken_labels: HashSet::new(),
            next_anon: 0,
            current_graph: None,
            in_graph_block: false,
        }
    }

    fn error(&self, message: impl Into<String>) -> ParseDiagnostic {
        ParseDiagnostic {
            line: self.line,
            column: self.col,
            severity: DiagnosticSeverity::Error,
            message: message.into(),
        }
    }

    fn warn(&mut self, message: impl Into<String>) {
        self.warnings.push(ParseDiagnostic {
            line: self.line,
            column: self.col,
            severity: DiagnosticSeverity::Warning,
            message: message.into(),
        });
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn peek_at(&self, offset: usize) -> Option<char> {
        self.chars.get(self.pos + offset).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn skip_ws(&mut self) {
        loop {
            match self.peek() {
                Some(c) if c.is_whitespace() => {
                    self.bump();
                }
                Some('#') => {
                    while let Some(c) = self.peek() {
                        if c == '\n' {
                            break;
                        }
                        self.bump();
                    }
                }
                _ => break,
            }
        }
    }

    fn expect(&mut self, c: char) -> PResult<()> {
        match self.peek() {
            Some(found) if found == c => {
                self.bump();
                Ok(())
            }
            Some(found) => Err(self.error(format!("expected {c:?}, found {found:?}"))),
            None => Err(self.error(format!("expected {c:?}, found end of input"))),
        }
    }

    fn starts_with_keyword(&self, kw: &str) -> bool {
        let kw_chars: Vec<char> = kw.chars().collect();
        if self.chars.len() < self.pos + kw_chars.len() {
            return false;
        }
        self.chars[self.pos..self.pos + kw_chars.len()] == kw_chars[..]
    }

    fn consume_keyword(&mut self, kw: &str) {
        for _ in kw.chars() {
            self.bump();
        }
    }

    fn run(mut self) -> PResult<Parsed> {
        loop {
            self.skip_ws();
            if self.peek().is_none() {
                break;
            }
            if self.starts_with_keyword("@prefix") {
                self.consume_keyword("@prefix");
                self.parse_prefix_directive()?;
            } else if self.starts_with_keyword("@base") {
                self.consume_keyword("@base");
                self.parse_base_directive()?;
            } else if self.peek() == Some('{') {
                if !self.trig {
                    return Err(self.error("graph blocks are only allowed in TriG input"));
                }
                self.parse_graph_block(None)?;
            } else {
                self.parse_statement_or_named_block()?;
            }
        }
        Ok(Parsed {
            dataset: self.dataset,
            warnings: self.warnings,
        })
    }

    fn parse_prefix_directive(&mut self) -> PResult<()> {
        self.skip_ws();
        let prefix = self.parse_pname_prefix()?;
        self.expect(':')?;
        self.skip_ws();
        let iri = self.parse_iriref()?;
        self.skip_ws();
        self.expect('.')?;
        if let Some(old) = self.dataset.prefixes().get(&prefix) {
            if *old != iri {
                self.warn(format!(
                    "prefix {prefix:?} redefined from <{old}> to <{iri}>"
                ));
            }
        }
        self.dataset.add_prefix(prefix, iri);
        Ok(())
    }

    fn parse_base_directive(&mut self) -> PResult<()> {
        self.skip_ws();
        let iri = self.parse_iriref()?;
        self.skip_ws();
        self.expect('.')?;
        if let Some(old) = &self.base {
            if *old != iri {
                self.warn(format!("base redefined from <{old}> to <{iri}>"));
            }
        }
        self.base = Some(iri);
        Ok(())
    }

    /// Parses either `term { ... }` (TriG named graph) or ordinary triples.
    fn parse_statement_or_named_block(&mut self) -> PResult<()> {
        if self.peek() == Some('[') {
            // blank node property list as subject
            let subject = self.parse_bnode_property_list()?;
            self.skip_ws();
            if self.peek() != Some('.') {
                self.parse_predicate_object_list(&subject)?;
            }
            self.end_of_statement()?;
            return Ok(());
        }
        let term = self.parse_subject_like_term()?;
        self.skip_ws();
        if self.trig && self.peek() == Some('{') {
            if self.in_graph_block {
                return Err(self.error("nested graph blocks are not allowed"));
            }
            self.parse_graph_block(Some(term))?;
            return Ok(());
        }
        self.parse_predicate_object_list(&term)?;
        self.end_of_statement()?;
        Ok(())
    }

    fn parse_graph_block(&mut self, name: Option<Term>) -> PResult<()> {
        if self.in_graph_block {
            return Err(self.error("nested graph blocks are not allowed"));
        }
        self.expect('{')?;
        self.in_graph_block = true;
        self.current_graph = name;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('}') => {
                    self.bump();
                    break;
                }
                Some('{') => {
                    return Err(self.error("nested graph blocks are not allowed"));
                }
                Some(_) => {
                    if self.peek() == Some('[') {
                        let subject = self.parse_bnode_property_list()?;
                        self.skip_ws();
                        if !matches!(self.peek(), Some('.') | Some('}')) {
                            self.parse_predicate_object_list(&subject)?;
                        }
                    } else {
                        let subject = self.parse_subject_like_term()?;
                        self.skip_ws();
                        if self.peek() == Some('{') {
                            return Err(self.error("nested graph blocks are not allowed"));
                        }
                        self.parse_predicate_object_list(&subject)?;
                    }
                    self.skip_ws();
                    match self.peek() {
                        Some('.') => {
                            self.bump();
                        }
                        Some('}') => {}
                        Some(c) => {
                            return Err(self.error(format!(
                                "expected '.' or '}}' after triples in graph block, found {c:?}"
                            )))
                        }
                        None => {
                            return Err(self.error("unterminated graph block"));
                        }
                    }
                }
                None => return Err(self.error("unterminated graph block")),
            }
        }
        self.in_graph_block = false;
        self.current_graph = None;
        Ok(())
    }

    fn end_of_statement(&mut self) -> PResult<()> {
        self.skip_ws();
        self.expect('.')
    }

    /// IRI, prefixed name or blank node label — the terms that may open a
    /// statement or name a graph.
    fn parse_subject_like_term(&mut self) -> PResult<Term> {
        match self.peek() {
            Some('<') => {
                let iri = self.parse_iriref()?;
                Ok(Term::Iri(iri))
            }
            Some('_') if self.peek_at(1) == Some(':') => self.parse_blank_node_label(),
            Some(c) if c == '"' || c == '\'' => {
                Err(self.error("literals cannot appear in the subject position"))
            }
            Some(_) => {
                let iri = self.parse_prefixed_name()?;
                Ok(Term::Iri(iri))
            }
            None => Err(self.error("expected a statement, found end of input")),
        }
    }

    fn parse_predicate_object_list(&mut self, subject: &Term) -> PResult<()> {
        loop {
            self.skip_ws();
            let predicate = self.parse_verb()?;
            loop {
                self.skip_ws();
                let object = self.parse_object()?;
                self.emit(subject.clone(), predicate.clone(), object)?;
                self.skip_ws();
                if self.peek() == Some(',') {
                    self.bump();
                } else {
                    break;
                }
            }
            if self.peek() == Some(';') {
                self.bump();
                self.skip_ws();
                // trailing ';' before the statement terminator
                if matches!(self.peek(), Some('.') | Some(']') | Some('}') | None) {
                    return Ok(());
                }
            } else {
                return Ok(());
            }
        }
    }

    fn parse_verb(&mut self) -> PResult<Term> {
        if self.peek() == Some('a') {
            let next = self.peek_at(1);
            let terminates = next.is_none_or(|c| c.is_whitespace() || c == '<' || c == '[' || c == '#');
            if terminates {
                self.bump();
                return Ok(Term::Iri(ns::RDF_TYPE.to_string()));
            }
        }
        match self.peek() {
            Some('<') => Ok(Term::Iri(self.parse_iriref()?)),
            Some(_) => Ok(Term::Iri(self.parse_prefixed_name()?)),
            None => Err(self.error("expected a predicate, found end of input")),
        }
    }

    fn parse_object(&mut self) -> PResult<Term> {
        match self.peek() {
            Some('<') => Ok(Term::Iri(self.parse_iriref()?)),
            Some('_') if self.peek_at(1) == Some(':') => self.parse_blank_node_label(),
            Some('[') => self.parse_bnode_property_list(),
            Some('"') => self.parse_literal(),
            Some('\'') => Err(self.error("single-quoted literals are not supported; use double quotes")),
            Some('(') => Err(self.error("RDF collections '( ... )' are not supported")),
            Some(c) if c.is_ascii_digit() || c == '+' || c == '-' => Err(self.error(
                "numeric literal shorthand is not supported; write a quoted literal with a datatype",
            )),
            Some(_) => Ok(Term::Iri(self.parse_prefixed_name()?)),
            None => Err(self.error("expected an object, found end of input")),
        }
    }

    fn parse_bnode_property_list(&mut self) -> PResult<Term> {
        self.expect('[')?;
        let node = Term::Blank(self.fresh_anon_label());
        self.skip_ws();
        if self.peek() == Some(']') {
            self.bump();
            return Ok(node);
        }
        self.parse_predicate_object_list(&node)?;
        self.skip_ws();
        self.expect(']')?;
        Ok(node)
    }

    fn parse_literal(&mut self) -> PResult<Term> {
        let lexical = self.parse_quoted_string()?;
        match self.peek() {
            Some('@') => {
                self.bump();
                let tag = self.parse_lang_tag()?;
                Ok(Term::lang_string(lexical, tag))
            }
            Some('^') if self.peek_at(1) == Some('^') => {
                self.bump();
                self.bump();
                self.skip_ws();
                let datatype = match self.peek() {
                    Some('<') => self.parse_iriref()?,
                    Some(_) => self.parse_prefixed_name()?,
                    None => return Err(self.error("expected a datatype IRI after '^^'")),
                };
                if datatype == ns::RDF_LANG_STRING {
                    return Err(self.error(
                        "rdf:langString literals must be written with a language tag",
                    ));
                }
                Term::typed_literal(lexical, datatype).map_err(|e| self.error(e.to_string()))
            }
            _ => Ok(Term::string(lexical)),
        }
    }

    fn parse_quoted_string(&mut self) -> PResult<String> {
        self.expect('"')?;
        if self.peek() == Some('"') && self.peek_at(1) == Some('"') {
            return Err(self.error("triple-quoted multi-line literals are not supported"));
        }
        let mut out = String::new();
        loop {
            match self.bump() {
                Some('"') => return Ok(out),
                Some('\\') => {
                    let escaped = self
                        .bump()
                        .ok_or_else(|| self.error("unterminated string literal"))?;
                    match escaped {
                        't' => out.push('\t'),
                        'b' => out.push('\u{8}'),
                        'n' => out.push('\n'),
                        'r' => out.push('\r'),
                        'f' => out.push('\u{c}'),
                        '"' => out.push('"'),
                        '\'' => out.push('\''),
                        '\\' => out.push('\\'),
                        'u' => out.push(self.parse_unicode_escape(4)?),
                        'U' => out.push(self.parse_unicode_escape(8)?),
                        other => {
                            return Err(self.error(format!("invalid escape sequence \\{other}")))
                        }
                    }
                }
                Some('\n') | None => return Err(self.error("unterminated string literal")),
                Some(c) => out.push(c),
            }
        }
    }

    fn parse_unicode_escape(&mut self, digits: usize) -> PResult<char> {
        let mut value: u32 = 0;
        for _ in 0..digits {
            let c = self
                .bump()
                .ok_or_else(|| self.error("unterminated unicode escape"))?;
            let d = c
                .to_digit(16)
                .ok_or_else(|| self.error(format!("invalid hex digit {c:?} in unicode escape")))?;
            value = value * 16 + d;
        }
        char::from_u32(value).ok_or_else(|| self.error("invalid unicode code point"))
    }

    fn parse_lang_tag(&mut self) -> PResult<String> {
        let mut tag = String::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == '-' {
                tag.push(c);
                self.bump();
            } else {
                break;
            }
        }
        if tag.is_empty() || !tag.chars().next().unwrap().is_ascii_alphabetic() {
            return Err(self.error("invalid language tag"));
        }
        Ok(tag)
    }

    fn parse_iriref(&mut self) -> PResult<String> {
        self.expect('<')?;
        let mut iri = String::new();
        loop {
            match self.bump() {
                Some('>') => break,
                Some(c) if c == '\n' || c == '\r' => {
                    return Err(self.error("unterminated IRI"));
                }
                Some(c) if c == ' ' || c == '\t' => {
                    return Err(self.error("whitespace inside IRI"));
                }
                Some(c) => iri.push(c),
                None => return Err(self.error("unterminated IRI")),
            }
        }
        self.resolve_iri(&iri)
    }

    fn resolve_iri(&self, iri: &str) -> PResult<String> {
        if crate::model::is_absolute_iri(iri) {
            return Ok(iri.to_string());
        }
        let Some(base) = &self.base else {
            return Err(self.error(format!(
                "relative IRI <{iri}> cannot be resolved without a base IRI"
            )));
        };
        Ok(resolve_relative(iri, base))
    }

    fn parse_pname_prefix(&mut self) -> PResult<String> {
        let mut prefix = String::new();
        while let Some(c) = self.peek() {
            if c.is_alphanumeric() || c == '_' || c == '-' || c == '.' {
                prefix.push(c);
                self.bump();
            } else {
                break;
            }
        }
        Ok(prefix)
    }

    fn parse_prefixed_name(&mut self) -> PResult<String> {
        let start_line = self.line;
        let start_col = self.col;
        let prefix = self.parse_pname_prefix()?;
        if self.peek() != Some(':') {
            return Err(ParseDiagnostic {
                line: start_line,
                column: start_col,
                severity: DiagnosticSeverity::Error,
                message: format!("expected a prefixed name, found {prefix:?}"),
            });
        }
        self.bump();
        let mut local = String::new();
        while let Some(c) = self.peek() {
            if c.is_alphanumeric() || c == '_' || c == '-' || c == '.' || c == '%' {
                local.push(c);
                self.bump();
            } else {
                break;
            }
        }
        // a trailing dot terminates the statement, not the name
        while local.ends_with('.') {
            local.pop();
            self.pos -= 1;
            self.col -= 1;
        }
        let Some(namespace) = self.dataset.prefixes().get(&prefix) else {
            return Err(ParseDiagnostic {
                line: start_line,
                column: start_col,
                severity: DiagnosticSeverity::Error,
                message: format!("unknown prefix {prefix:?}"),
            });
        };
        Ok(format!("{namespace}{local}"))
    }

    fn parse_blank_node_label(&mut self) -> PResult<Term> {
        self.expect('_')?;
        self.expect(':')?;
        let mut label = String::new();
        while let Some(c) = self.peek() {
            if c.is_alphanumeric() || c == '_' || c == '-' || c == '.' {
                label.push(c);
                self.bump();
            } else {
                break;
            }
        }
        while label.ends_with('.') {
            label.pop();
            self.pos -= 1;
            self.col -= 1;
        }
        if label.is_empty() {
            return Err(self.error("empty blank node label"));
        }
        Ok(Term::Blank(self.user_label(&label)))
    }

    fn fresh_anon_label(&mut self) -> String {
        loop {
            let label = format!("anon{}", self.next_anon);
            self.next_anon += 1;
            if self.taken_labels.insert(label.clone()) {
                return label;
            }
        }
    }

    fn user_label(&mut self, label: &str) -> String {
        if let Some(mapped) = self.user_labels.get(label) {
            return mapped.clone();
        }
        let internal = if self.taken_labels.contains(label) {
            self.fresh_anon_label()
        } else {
            self.taken_labels.insert(label.to_string());
            label.to_string()
        };
        self.user_labels.insert(label.to_string(), internal.clone());
        internal
    }

    fn emit(&mut self, subject: Term, predicate: Term, object: Term) -> PResult<()> {
        let quad = Quad::new(subject, predicate, object, self.current_graph.clone())
            .map_err(|e| self.error(e.to_string()))?;
        self.dataset.insert(quad);
        Ok(())
    }
}

/// Minimal RFC 3986-style reference resolution, sufficient for fragment and
/// path references against the document base.
fn resolve_relative(reference: &str, base: &str) -> String {
    if reference.is_empty() {
        return base.split('#').next().unwrap_or(base).to_string();
    }
    if let Some(fragment) = reference.strip_prefix('#') {
        let without = base.split('#').next().unwrap_or(base);
        return format!("{without}#{fragment}");
    }
    let scheme_end = base.find(':').map(|i| i + 1).unwrap_or(0);
    let (scheme, rest) = base.split_at(scheme_end);
    if let Some(r) = reference.strip_prefix("//") {
        return format!("{scheme}//{r}");
    }
    let authority_len = if let Some(after) = rest.strip_prefix("//") {
        2 + after.find('/').unwrap_or(after.len())
    } else {
        0
    };
    let (authority, path) = rest.split_at(authority_len);
    if reference.starts_with('/') {
        return format!("{scheme}{authority}{reference}");
    }
    let path = path.split('#').next().unwrap_or(path);
    let dir_end = path.rfind('/').map(|i| i + 1).unwrap_or(0);
    format!("{scheme}{authority}{}{reference}", &path[..dir_end])
}

/// Parses N-Quads (or N-Triples) text; one statement per line.
pub fn parse_nquads(text: &str) -> Result<Parsed, ParseDiagnostic> {
    let mut dataset = Dataset::new();
    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let trimmed = raw_line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut p = Parser::new(raw_line, None, false);
        p.line = line_no;
        let err_at = |p: &Parser, msg: String| ParseDiagnostic {
            line: line_no,
            column: p.col,
            severity: DiagnosticSeverity::Error,
            message: msg,
        };
        let mut terms = Vec::new();
        loop {
            p.skip_ws();
            match p.peek() {
                Some('.') => {
                    p.bump();
                    p.skip_ws();
                    if p.peek().is_some() {
                        return Err(err_at(&p, "content after statement terminator".into()));
                    }
                    break;
                }
                None => {
                    return Err(err_at(&p, "missing '.' at end of statement".into()));
                }
                Some('<') => terms.push(Term::Iri(p.parse_iriref().map_err(|e| {
                    ParseDiagnostic { line: line_no, ..e }
                })?)),
                Some('_') => terms.push(
                    p.parse_blank_node_label()
                        .map_err(|e| ParseDiagnostic { line: line_no, ..e })?,
                ),
                Some('"') => terms.push(
                    p.parse_literal()
                        .map_err(|e| ParseDiagnostic { line: line_no, ..e })?,
                ),
                Some(c) => {
                    return Err(err_at(&p, format!("unexpected character {c:?}")));
                }
            }
            if terms.len() > 4 {
                return Err(err_at(&p, "too many terms in statement".into()));
            }
        }
        if terms.len() < 3 {
            return Err(ParseDiagnostic {
                line: line_no,
                column: 1,
                severity: DiagnosticSeverity::Error,
                message: "statement needs subject, predicate and object".into(),
            });
        }
        let graph = if terms.len() == 4 { Some(terms.pop().unwrap()) } else { None };
        let object = terms.pop().unwrap();
        let predicate = terms.pop().unwrap();
        let subject = terms.pop().unwrap();
        let quad = Quad::new(subject, predicate, object, graph).map_err(|e| ParseDiagnostic {
            line: line_no,
            column: 1,
            severity: DiagnosticSeverity::Error,
            message: e.to_string(),
        })?;
        dataset.insert(quad);
    }
    Ok(Parsed {
        dataset,
        warnings: Vec::new(),
    })
}

/// Relabels blank nodes `b0, b1, ...` by first appearance in sorted quad
/// order. Quads are sorted by their serialization under the original labels,
/// which makes the relabeling a pure function of the dataset.
fn canonical_relabel(ds: &Dataset) -> Vec<Quad> {
    let mut sorted: Vec<&Quad> = ds.iter().collect();
    sorted.sort_by_key(|q| q.to_string());
    let mut labels: HashMap<String, String> = HashMap::new();
    let assign = |t: &Term, labels: &mut HashMap<String, String>| {
        if let Term::Blank(l) = t {
            if !labels.contains_key(l) {
                let fresh = format!("b{}", labels.len());
                labels.insert(l.clone(), fresh);
            }
        }
    };
    for q in &sorted {
        assign(q.subject(), &mut labels);
        assign(q.object(), &mut labels);
        if let Some(g) = q.graph() {
            assign(g, &mut labels);
        }
    }
    let rename = |t: &Term| match t {
        Term::Blank(l) => Term::Blank(labels[l].clone()),
        other => other.clone(),
    };
    sorted
        .into_iter()
        .map(|q| {
            Quad::new(
                rename(q.subject()),
                q.predicate().clone(),
                rename(q.object()),
                q.graph().map(&rename),
            )
            .expect("relabeling keeps positions")
        })
        .collect()
}

/// Serializes a dataset as sorted, newline-terminated N-Quads. Statements in
/// the default graph come out as N-Triples lines. Deterministic for a given
/// dataset, including blank node labels.
pub fn serialize_nquads(ds: &Dataset) -> String {
    let mut lines: Vec<String> = canonical_relabel(ds)
        .iter()
        .map(|q| format!("{q}\n"))
        .collect();
    lines.sort();
    lines.concat()
}

fn local_name_ok(local: &str) -> bool {
    !local.is_empty()
        && local
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
        && !local.starts_with('-')
}

fn compact_iri(iri: &str, prefixes: &BTreeMap<String, String>) -> Option<String> {
    let mut best: Option<(usize, String)> = None;
    for (prefix, namespace) in prefixes {
        if let Some(local) = iri.strip_prefix(namespace.as_str()) {
            if local_name_ok(local) || (local.is_empty() && !prefix.is_empty()) {
                let candidate = format!("{prefix}:{local}");
                if best.as_ref().is_none_or(|(len, _)| namespace.len() > *len) {
                    best = Some((namespace.len(), candidate));
                }
            }
        }
    }
    best.map(|(_, s)| s)
}

fn turtle_term(t: &Term, prefixes: &BTreeMap<String, String>) -> String {
    match t {
        Term::Iri(iri) => compact_iri(iri, prefixes).unwrap_or_else(|| format!("<{iri}>")),
        Term::Blank(_) => t.to_string(),
        Term::Literal(lit) => {
            let quoted = Term::string(lit.lexical.clone()).to_string();
            if let Some(tag) = &lit.language {
                format!("{quoted}@{tag}")
            } else if lit.datatype == ns::XSD_STRING {
                quoted
            } else {
                let dt = compact_iri(&lit.datatype, prefixes)
                    .unwrap_or_else(|| format!("<{}>", lit.datatype));
                format!("{quoted}^^{dt}")
            }
        }
    }
}

/// Pretty-prints the default graph of a dataset as Turtle, using the given
/// prefix map for compaction. Named-graph quads are not written; union the
/// dataset first when they matter. Reparsing the output yields a graph
/// isomorphic to the input.
pub fn serialize_turtle(ds: &Dataset, prefixes: &BTreeMap<String, String>) -> String {
    let mut out = String::new();
    for (prefix, namespace) in prefixes {
        out.push_str(&format!("@prefix {prefix}: <{namespace}> .\n"));
    }
    if !prefixes.is_empty() {
        out.push('\n');
    }

    let default_only: Dataset = ds
        .iter()
        .filter(|q| q.graph().is_none())
        .cloned()
        .collect();
    let quads = canonical_relabel(&default_only);

    // group by subject, preserving sorted order
    let mut by_subject: Vec<(Term, Vec<(Term, Term)>)> = Vec::new();
    for q in quads {
        let s = q.subject().clone();
        let po = (q.predicate().clone(), q.object().clone());
        match by_subject.last_mut() {
            Some((last, pos)) if *last == s => pos.push(po),
            _ => by_subject.push((s, vec![po])),
        }
    }
    for (subject, mut pos) in by_subject {
        pos.sort();
        pos.dedup();
        out.push_str(&turtle_term(&subject, prefixes));
        let mut grouped: Vec<(Term, Vec<Term>)> = Vec::new();
        for (p, o) in pos {
            match grouped.last_mut() {
                Some((last, objs)) if *last == p => objs.push(o),
                _ => grouped.push((p, vec![o])),
            }
        }
        let n = grouped.len();
        for (i, (p, objs)) in grouped.into_iter().enumerate() {
            let pred = if p.as_iri() == Some(ns::RDF_TYPE) {
                "a".to_string()
            } else {
                turtle_term(&p, prefixes)
            };
            let rendered: Vec<String> = objs.iter().map(|o| turtle_term(o, prefixes)).collect();
            out.push_str(&format!(" {pred} {}", rendered.join(", ")));
            out.push_str(if i + 1 == n { " .\n" } else { " ;\n   "});
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::isomorphic;
    use crate::model::GraphSelector;

    const GENE_IMPORT: &str = r#"
@prefix lses: <http://purl.org/swan/1.2/lses/> .
@prefix agents: <http://purl.org/swan/1.2/agents/> .
@prefix pav: <http://purl.org/pav/> .
@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .
@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .

_:geneRecord a lses:GeneRecord ;
  lses:fullName "Amyloid beta (A4) precursor protein" ;
  lses:preferredSymbol "APP" ;
  pav:importedOn "2009-02-26T19:49:12-0500"^^xsd:dateTime ;
  pav:importedFrom <http://www.ncbi.nlm.nih.gov/> ;
  pav:importedBy [
    a agents:Software ;
    rdfs:label "AlzSWAN" ;
    agents:softwareVersion "2.0" ] .
"#;

    #[test]
    fn parses_gene_import_snippet() {
        let parsed = parse_turtle(GENE_IMPORT, None).unwrap();
        assert!(parsed.warnings.is_empty());
        let ds = parsed.dataset;
        assert_eq!(ds.len(), 9);
        let imported_from = Term::iri("http://purl.org/pav/importedFrom").unwrap();
        let hits: Vec<_> = ds
            .matching(None, Some(&imported_from), None, GraphSelector::Any)
            .collect();
        assert_eq!(hits.len(), 1);
        assert_eq!(
            hits[0].object().as_iri(),
            Some("http://www.ncbi.nlm.nih.gov/")
        );
        // the software blank node keeps its rdfs:label
        let label = Term::iri("http://www.w3.org/2000/01/rdf-schema#label").unwrap();
        let labels: Vec<_> = ds
            .matching(None, Some(&label), None, GraphSelector::Any)
            .collect();
        assert_eq!(labels.len(), 1);
        assert_eq!(
            labels[0].object().as_literal().map(|l| l.lexical.as_str()),
            Some("AlzSWAN")
        );
        assert!(labels[0].subject().is_blank());
    }

    #[test]
    fn empty_document_parses_to_empty_dataset() {
        let parsed = parse_turtle("", None).unwrap();
        assert!(parsed.dataset.is_empty());
        assert!(parsed.warnings.is_empty());
    }

    #[test]
    fn object_and_predicate_lists() {
        let text = r#"
@prefix ex: <http://example.com/> .
ex:s ex:p ex:a, ex:b ; ex:q "x" .
"#;
        let ds = parse_turtle(text, None).unwrap().dataset;
        assert_eq!(ds.len(), 3);
    }

    #[test]
    fn unknown_prefix_is_an_error() {
        let err = parse_turtle("ex:s ex:p ex:o .", None).unwrap_err();
        assert!(err.message.contains("unknown prefix"));
        assert_eq!(err.line, 1);
    }

    #[test]
    fn unterminated_literal_reports_position() {
        let err = parse_turtle(
            "@prefix ex: <http://example.com/> .\nex:s ex:p \"broken .",
            None,
        )
        .unwrap_err();
        assert!(err.message.contains("unterminated string"));
        assert_eq!(err.line, 2);
    }

    #[test]
    fn collections_are_rejected() {
        let err = parse_turtle(
            "@prefix ex: <http://example.com/> .\nex:s ex:p (1 2) .",
            None,
        )
        .unwrap_err();
        assert!(err.message.contains("collections"));
    }

    #[test]
    fn relative_iris_resolve_against_base() {
        let ds = parse_turtle(
            "<#> <http://example.com/p> <other> .",
            Some("http://example.com/doc"),
        )
        .unwrap()
        .dataset;
        let q = ds.iter().next().unwrap();
        assert_eq!(q.subject().as_iri(), Some("http://example.com/doc#"));
        assert_eq!(q.object().as_iri(), Some("http://example.com/other"));
    }

    #[test]
    fn base_directive_applies() {
        let ds = parse_turtle(
            "@base <http://example.com/doc> .\n<#x> <http://example.com/p> <#y> .",
            None,
        )
        .unwrap()
        .dataset;
        let q = ds.iter().next().unwrap();
        assert_eq!(q.subject().as_iri(), Some("http://example.com/doc#x"));
    }

    #[test]
    fn trig_named_and_default_blocks() {
        let text = r#"
@prefix ex: <http://example.com/> .
{
  ex:head ex:p ex:o .
}
ex:g1 {
  ex:s ex:p "in g1" .
  ex:s ex:q "also in g1" .
}
ex:top ex:p "default" .
"#;
        let ds = parse_trig(text, None).unwrap().dataset;
        assert_eq!(ds.len(), 4);
        let g1 = Term::iri("http://example.com/g1").unwrap();
        assert_eq!(
            ds.matching(None, None, None, GraphSelector::Named(&g1)).count(),
            2
        );
        assert_eq!(
            ds.matching(None, None, None, GraphSelector::Default).count(),
            2
        );
    }

    #[test]
    fn plain_turtle_is_degenerate_trig() {
        let ds = parse_trig(GENE_IMPORT, None).unwrap().dataset;
        assert_eq!(ds.len(), 9);
        assert!(ds.is_default_graph_only());
    }

    #[test]
    fn nested_graph_blocks_rejected() {
        let text = r#"
@prefix ex: <http://example.com/> .
ex:g1 { ex:g2 { ex:s ex:p ex:o . } }
"#;
        let err = parse_trig(text, None).unwrap_err();
        assert!(err.message.contains("nested"));
    }

    #[test]
    fn graph_blocks_rejected_in_turtle() {
        let text = "@prefix ex: <http://example.com/> .\nex:g { ex:s ex:p ex:o . }";
        assert!(parse_turtle(text, None).is_err());
    }

    #[test]
    fn nquads_roundtrip_language_literal() {
        let mut ds = Dataset::new();
        ds.insert(
            Quad::triple(
                Term::iri("http://e/s").unwrap(),
                Term::iri("http://e/p").unwrap(),
                Term::lang_string("x", "en"),
            )
            .unwrap(),
        );
        let nq = serialize_nquads(&ds);
        assert_eq!(nq, "<http://e/s> <http://e/p> \"x\"@en .\n");
        let back = parse_nquads(&nq).unwrap().dataset;
        assert_eq!(back, ds);
    }

    #[test]
    fn nquads_of_empty_dataset_is_empty() {
        assert_eq!(serialize_nquads(&Dataset::new()), "");
    }

    #[test]
    fn nquads_relabeling_is_deterministic() {
        let parsed = parse_turtle(GENE_IMPORT, None).unwrap().dataset;
        let a = serialize_nquads(&parsed);
        let b = serialize_nquads(&parse_turtle(GENE_IMPORT, None).unwrap().dataset);
        assert_eq!(a, b);
        assert_eq!(a.lines().count(), 9);
        assert!(a.contains("_:b"));
    }

    #[test]
    fn turtle_roundtrip_is_isomorphic() {
        let ds = parse_turtle(GENE_IMPORT, None).unwrap().dataset;
        let text = serialize_turtle(&ds, ds.prefixes());
        let back = parse_turtle(&text, None).unwrap().dataset;
        assert!(isomorphic(&ds, &back));
    }

    #[test]
    fn turtle_roundtrip_of_empty_graph() {
        let ds = Dataset::new();
        let text = serialize_turtle(&ds, &BTreeMap::new());
        assert!(parse_turtle(&text, None).unwrap().dataset.is_empty());
    }

    #[test]
    fn prefix_redefinition_warns() {
        let text = "@prefix ex: <http://example.com/> .\n@prefix ex: <http://other.com/> .\nex:s ex:p ex:o .";
        let parsed = parse_turtle(text, None).unwrap();
        assert_eq!(parsed.warnings.len(), 1);
        assert!(parsed.warnings[0].message.contains("redefined"));
    }

    #[test]
    fn user_blank_labels_survive_and_anon_labels_avoid_collisions() {
        let text = "@prefix ex: <http://example.com/> .\n_:anon0 ex:p [ ex:q ex:o ] .";
        let ds = parse_turtle(text, None).unwrap().dataset;
        // both blank nodes stay distinct
        let blanks: std::collections::BTreeSet<_> = ds
            .terms()
            .into_iter()
            .filter(|t| t.is_blank())
            .cloned()
            .collect();
        assert_eq!(blanks.len(), 2);
    }
}
