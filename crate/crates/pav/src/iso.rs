//! Blank-node-aware graph comparison.
//!
//! Two graphs are isomorphic iff a bijection between their blank nodes maps
//! one quad set exactly onto the other. The implementation computes iterative
//! signature hashes to partition blank nodes, then backtracks over
//! candidates within each partition class on hash ties. Adequate for the
//! fixture corpus, where graphs stay well under a hundred triples.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::model::{Dataset, Quad, Term};

fn fnv64(data: &str) -> u64 {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for byte in data.as_bytes() {
        hash ^= u64::from(*byte);
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}

fn blank_labels(quads: &[&Quad]) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for q in quads {
        for t in [Some(q.subject()), Some(q.object()), q.graph()].into_iter().flatten() {
            if let Term::Blank(label) = t {
                out.insert(label.clone());
            }
        }
    }
    out
}

fn encode_term(t: &Term, viewpoint: &str, colors: &BTreeMap<String, u64>) -> String {
    match t {
        Term::Blank(label) if label == viewpoint => "SELF".to_string(),
        Term::Blank(label) => format!("B{}", colors[label]),
        other => other.to_string(),
    }
}

fn encode_quad(q: &Quad, viewpoint: &str, colors: &BTreeMap<String, u64>) -> String {
    let g = match q.graph() {
        Some(g) => encode_term(g, viewpoint, colors),
        None => "D".to_string(),
    };
    format!(
        "{}|{}|{}|{}",
        encode_term(q.subject(), viewpoint, colors),
        q.predicate(),
        encode_term(q.object(), viewpoint, colors),
        g
    )
}

fn quad_mentions(q: &Quad, label: &str) -> bool {
    let is = |t: &Term| matches!(t, Term::Blank(l) if l == label);
    is(q.subject()) || is(q.object()) || q.graph().is_some_and(is)
}

/// Signature colors per blank node, refined until the partition stabilizes.
fn refine_colors(quads: &[&Quad], blanks: &BTreeSet<String>) -> BTreeMap<String, u64> {
    let mut colors: BTreeMap<String, u64> = blanks.iter().map(|b| (b.clone(), 0)).collect();
    let occurrences: BTreeMap<&String, Vec<&&Quad>> = blanks
        .iter()
        .map(|b| (b, quads.iter().filter(|q| quad_mentions(q, b)).collect()))
        .collect();
    for _ in 0..=blanks.len() {
        let mut next = BTreeMap::new();
        for b in blanks {
            let mut encoded: Vec<String> = occurrences[b]
                .iter()
                .map(|q| encode_quad(q, b, &colors))
                .collect();
            encoded.sort();
            next.insert(b.clone(), fnv64(&encoded.join("\n")));
        }
        let stable = partition_of(&colors) == partition_of(&next);
        colors = next;
        if stable {
            break;
        }
    }
    colors
}

fn partition_of(colors: &BTreeMap<String, u64>) -> BTreeMap<u64, BTreeSet<&String>> {
    let mut p: BTreeMap<u64, BTreeSet<&String>> = BTreeMap::new();
    for (b, c) in colors {
        p.entry(*c).or_default().insert(b);
    }
    p
}

fn map_term(t: &Term, mapping: &HashMap<String, String>) -> Option<Term> {
    match t {
        Term::Blank(label) => mapping.get(label).map(|m| Term::Blank(m.clone())),
        other => Some(other.clone()),
    }
}

fn map_quad(q: &Quad, mapping: &HashMap<String, String>) -> Option<Quad> {
    let s = map_term(q.subject(), mapping)?;
    let o = map_term(q.object(), mapping)?;
    let g = match q.graph() {
        Some(g) => Some(map_term(g, mapping)?),
        None => None,
    };
    // positions preserved, so the mapped quad is structurally valid
    Some(Quad::new(s, q.predicate().clone(), o, g).expect("mapped quad keeps positions"))
}

fn search(
    order: &[String],
    idx: usize,
    candidates: &BTreeMap<String, Vec<String>>,
    used: &mut BTreeSet<String>,
    mapping: &mut HashMap<String, String>,
    quads_a: &[&Quad],
    set_b: &BTreeSet<&Quad>,
) -> bool {
    if idx == order.len() {
        return quads_a
            .iter()
            .all(|q| map_quad(q, mapping).is_some_and(|m| set_b.contains(&m)));
    }
    let a = &order[idx];
    for b in &candidates[a] {
        if used.contains(b) {
            continue;
        }
        mapping.insert(a.clone(), b.clone());
        used.insert(b.clone());
        // prune: every quad whose blanks are now all mapped must land in B
        let consistent = quads_a
            .iter()
            .filter(|q| quad_mentions(q, a))
            .all(|q| match map_quad(q, mapping) {
                Some(m) => set_b.contains(&m),
                None => true, // still contains unmapped blanks
            });
        if consistent && search(order, idx + 1, candidates, used, mapping, quads_a, set_b) {
            return true;
        }
        mapping.remove(a);
        used.remove(b);
    }
    false
}

/// True iff a blank-node bijection maps `a` onto `b` exactly.
///
/// Ground quads must match verbatim; blank nodes are matched structurally.
/// Works on full datasets; graph-name blank nodes participate in the
/// bijection like any other blank node.
pub fn isomorphic(a: &Dataset, b: &Dataset) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let quads_a: Vec<&Quad> = a.iter().collect();
    let quads_b: Vec<&Quad> = b.iter().collect();

    let is_ground = |q: &&Quad| {
        !matches!(q.subject(), Term::Blank(_))
            && !matches!(q.object(), Term::Blank(_))
            && !matches!(q.graph(), Some(Term::Blank(_)))
    };
    let ground_a: BTreeSet<&Quad> = quads_a.iter().copied().filter(is_ground).collect();
    let ground_b: BTreeSet<&Quad> = quads_b.iter().copied().filter(is_ground).collect();
    if ground_a != ground_b {
        return false;
    }

    let blanks_a = blank_labels(&quads_a);
    let blanks_b = blank_labels(&quads_b);
    if blanks_a.len() != blanks_b.len() {
        return false;
    }
    if blanks_a.is_empty() {
        return true; // ground sets already matched and sizes agree
    }

    let colors_a = refine_colors(&quads_a, &blanks_a);
    let colors_b = refine_colors(&quads_b, &blanks_b);

    // class sizes per color must agree
    let hist = |colors: &BTreeMap<String, u64>| {
        let mut h: BTreeMap<u64, usize> = BTreeMap::new();
        for c in colors.values() {
            *h.entry(*c).or_default() += 1;
        }
        h
    };
    if hist(&colors_a) != hist(&colors_b) {
        return false;
    }

    let mut candidates: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for (ba, ca) in &colors_a {
        let cands: Vec<String> = colors_b
            .iter()
            .filter(|(_, cb)| *cb == ca)
            .map(|(bb, _)| bb.clone())
            .collect();
        candidates.insert(ba.clone(), cands);
    }

    // fewest candidates first keeps the search shallow
    let mut order: Vec<String> = blanks_a.iter().cloned().collect();
    order.sort_by_key(|b| (candidates[b].len(), b.clone()));

    let set_b: BTreeSet<&Quad> = quads_b.iter().copied().collect();
    let mut mapping = HashMap::new();
    let mut used = BTreeSet::new();
    search(
        &order,
        0,
        &candidates,
        &mut used,
        &mut mapping,
        &quads_a,
        &set_b,
    )
}
