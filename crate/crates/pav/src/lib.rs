//! Toolkit for the PAV (Provenance, Authoring and Versioning) vocabulary.
//!
//! PAV describes who authored, curated and created digital resources, where
//! they were imported or retrieved from, and how versions relate — 26
//! properties in the `http://purl.org/pav/` namespace. This crate implements
//! the vocabulary end to end:
//!
//! - [`model`] / [`iso`] — in-memory RDF terms, quads, datasets, pattern
//!   matching and blank-node-aware graph comparison
//! - [`turtle`] — Turtle/TriG reading, N-Quads and pretty Turtle writing
//! - [`vocab`] — the term registry: definitions, PAV/DC Terms/PROV-O
//!   hierarchies and the SKOS alignment with DC Terms
//! - [`infer`] — subproperty closure plus PROV attribution inference, with
//!   justifications and deterministic skolem activities
//! - [`unroll`] — expansion of flat import/retrieval/source-access
//!   statements into explicit PROV-O activity chains
//! - [`lint`] — usage-convention checks (rules L1–L9) and version-lineage
//!   analysis
//! - [`query`] — basic graph patterns, version chains, derivation ancestry
//!   and role-grouped attribution reports
//! - [`dot`] — Graphviz export of provenance graphs
//!
//! # Examples
//!
//! Each capability has a runnable example:
//!
//! ```bash
//! cargo run --example parse_and_serialize   # read Turtle/TriG, write N-Quads
//! cargo run --example validate_findings     # lint a document, inject a typo
//! cargo run --example infer_prov            # PROV closure with explanations
//! cargo run --example unroll_imports        # flat imports -> activity chain
//! cargo run --example query_provenance      # flat vs unrolled query parity
//! cargo run --example version_lineage       # chains, forks and cycles
//! cargo run --example attribution_roles     # author/curator/creator split
//! cargo run --example export_vocabulary     # ontology + SKOS mapping graphs
//! cargo run --example dot_diagram           # Graphviz rendering input
//! ```
//!
//! The same operations are scriptable through the thin `pavtool` binary; see
//! the README for the command reference.

pub mod dot;
pub mod infer;
pub mod iso;
pub mod lint;
pub mod model;
pub mod ns;
pub mod query;
pub mod turtle;
pub mod unroll;
pub mod vocab;

pub use iso::isomorphic;
pub use model::{Dataset, GraphSelector, Literal, ModelError, Quad, Term};
pub use turtle::{parse_nquads, parse_trig, parse_turtle, serialize_nquads, serialize_turtle};
pub use vocab::Registry;
