//! Deterministic synthetic graphs.
//!
//! Every random choice is drawn from [`crate::rng::WalkRng`] seeded by the spec,
//! so a spec always yields the same graph on every platform.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::DirectedGraph;
use crate::rng;

/// Description of a synthetic graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum GenSpec {
    /// Each ordered pair `(i, j)`, `i != j`, is an edge independently with probability `p`.
    ErdosRenyiDirected { n: usize, p: f64, seed: u64 },
    /// Directed cycle `0 -> 1 -> ... -> n-1 -> 0`.
    Ring { n: usize },
    /// Every ordered pair of distinct nodes is an edge.
    CompleteBidirected { n: usize },
    /// Disjoint union; component `k` occupies the id range after component `k-1`.
    Union { components: Vec<GenSpec> },
    /// `n` nodes, every other node has an edge into node 0.
    InwardStar { n: usize },
    /// The reciprocal closure of another spec.
    Symmetrized { inner: Box<GenSpec> },
}

impl GenSpec {
    pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Self {
        GenSpec::ErdosRenyiDirected { n, p, seed }
    }

    pub fn symmetrized(self) -> Self {
        GenSpec::Symmetrized { inner: Box::new(self) }
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        match self {
            GenSpec::ErdosRenyiDirected { n, p, .. } => {
                if *n == 0 {
                    return bad("erdos_renyi_directed needs n >= 1".into());
                }
                if !(0.0..=1.0).contains(p) {
                    return bad(format!("edge probability {p} outside [0, 1]"));
                }
            }
            GenSpec::Ring { n } | GenSpec::CompleteBidirected { n } | GenSpec::InwardStar { n } => {
                if *n == 0 {
                    return bad(format!("{self} needs n >= 1"));
                }
            }
            GenSpec::Union { components } => {
                if components.is_empty() {
                    return bad("union needs at least one component".into());
                }
                components.iter().try_for_each(GenSpec::validate)?;
            }
            GenSpec::Symmetrized { inner } => inner.validate()?,
        }
        Ok(())
    }
}

/// Builds the graph described by `spec`.
pub fn generate(spec: &GenSpec) -> Result<DirectedGraph> {
    spec.validate()?;
    let (n, edges) = edges_of(spec)?;
    DirectedGraph::from_edges(n, edges)
}

fn edges_of(spec: &GenSpec) -> Result<(usize, Vec<(usize, usize)>)> {
    Ok(match *spec {
        GenSpec::ErdosRenyiDirected { n, p, seed } => {
            let mut rng = rng::from_seed(seed);
            let mut edges = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    if i != j && rng.random::<f64>() < p {
                        edges.push((i, j));
                    }
                }
            }
            (n, edges)
        }
        GenSpec::Ring { n } => {
            let edges = if n > 1 { (0..n).map(|i| (i, (i + 1) % n)).collect() } else { Vec::new() };
            (n, edges)
        }
        GenSpec::CompleteBidirected { n } => {
            let edges = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).collect();
            (n, edges)
        }
        GenSpec::InwardStar { n } => (n, (1..n).map(|i| (i, 0)).collect()),
        GenSpec::Union { ref components } => {
            let mut offset = 0;
            let mut edges = Vec::new();
            for c in components {
                let (n, e) = edges_of(c)?;
                edges.extend(e.into_iter().map(|(s, t)| (s + offset, t + offset)));
                offset += n;
            }
            (offset, edges)
        }
        GenSpec::Symmetrized { ref inner } => {
            let (n, e) = edges_of(inner)?;
            let edges = e.iter().flat_map(|&(s, t)| [(s, t), (t, s)]).collect();
            (n, edges)
        }
    })
}

/// Adds the reverse of every edge; the node set is unchanged.
pub fn symmetrize(g: &DirectedGraph) -> DirectedGraph {
    let edges = g.edges().flat_map(|(i, j)| [(g.id(i), g.id(j)), (g.id(j), g.id(i))]);
    DirectedGraph::from_id_edges(edges, g.ids()).expect("ids come from a valid graph")
}

impl fmt::Display for GenSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenSpec::ErdosRenyiDirected { n, p, seed } => write!(f, "er:{n}:{p}:{seed}"),
            GenSpec::Ring { n } => write!(f, "ring:{n}"),
            GenSpec::CompleteBidirected { n } => write!(f, "complete:{n}"),
            GenSpec::InwardStar { n } => write!(f, "star:{n}"),
            GenSpec::Union { components } => {
                let parts: Vec<String> = components.iter().map(ToString::to_string).collect();
                f.write_str(&parts.join("+"))
            }
            GenSpec::Symmetrized { inner } => write!(f, "sym({inner})"),
        }
    }
}

/// Compact command-line syntax: `er:N:P:SEED`, `ring:N`, `complete:N`,
/// `star:N`, `sym(SPEC)`, and `A+B+...` for disjoint unions.
impl FromStr for GenSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parts = split_top_level(s, '+');
        if parts.len() > 1 {
            let components = parts.into_iter().map(str::parse).collect::<Result<_>>()?;
            return Ok(GenSpec::Union { components });
        }
        if let Some(inner) = s.strip_prefix("sym(").and_then(|r| r.strip_suffix(')')) {
            return Ok(inner.parse::<GenSpec>()?.symmetrized());
        }
        let bad = || Error::InvalidParameter(format!("cannot parse graph spec {s:?}"));
        let fields: Vec<&str> = s.split(':').collect();
        let num = |i: usize| -> Result<usize> { fields.get(i).and_then(|t| t.parse().ok()).ok_or_else(bad) };
        let spec = match (fields[0], fields.len()) {
            ("er", 4) => GenSpec::ErdosRenyiDirected {
                n: num(1)?,
                p: fields[2].parse().map_err(|_| bad())?,
                seed: fields[3].parse().map_err(|_| bad())?,
            },
            ("ring", 2) => GenSpec::Ring { n: num(1)? },
            ("complete", 2) => GenSpec::CompleteBidirected { n: num(1)? },
            ("star", 2) => GenSpec::InwardStar { n: num(1)? },
            _ => return Err(bad()),
        };
        spec.validate()?;
        Ok(spec)
    }
}

fn split_top_level(s: &str, sep: char) -> Vec<&str> {
    let mut depth = 0i32;
    let mut start = 0;
    let mut out = Vec::new();
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::load_edge_list;
    use proptest::prelude::*;

    #[test]
    fn complete_bidirected_is_fully_mutual() {
        let g = generate(&GenSpec::CompleteBidirected { n: 4 }).unwrap();
        assert_eq!(g.edge_count(), 12);
        assert_eq!(g.mutual_proportion().unwrap(), 1.0);
    }

    #[test]
    fn union_has_disjoint_components() {
        let c3 = GenSpec::CompleteBidirected { n: 3 };
        let g = generate(&GenSpec::Union { components: vec![c3.clone(), c3] }).unwrap();
        assert_eq!(g.node_count(), 6);
        assert_eq!(g.edge_count(), 12);
        for (i, j) in g.edges() {
            assert_eq!(i / 3, j / 3, "cross edge {i}->{j}");
        }
    }

    #[test]
    fn erdos_renyi_is_deterministic() {
        let spec = GenSpec::erdos_renyi(100, 0.05, 7);
        let a = generate(&spec).unwrap();
        let b = generate(&spec).unwrap();
        assert_eq!(a.to_edge_list(), b.to_edge_list());
        assert_ne!(a, generate(&GenSpec::erdos_renyi(100, 0.05, 8)).unwrap());
        let expected = 0.05 * 9900.0;
        assert!((a.edge_count() as f64 - expected).abs() < 5.0 * expected.sqrt());
    }

    #[test]
    fn invalid_params_rejected() {
        assert!(generate(&GenSpec::erdos_renyi(0, 0.5, 1)).is_err());
        assert!(generate(&GenSpec::erdos_renyi(5, 1.5, 1)).is_err());
        assert!(generate(&GenSpec::Ring { n: 0 }).is_err());
        assert!(generate(&GenSpec::Union { components: vec![] }).is_err());
    }

    #[test]
    fn symmetrize_examples() {
        let g3 = load_edge_list("1 2\n2 1\n2 3\n".as_bytes()).unwrap();
        let s = symmetrize(&g3);
        assert_eq!(s.edge_count(), 4);
        assert_eq!(s.mutual_proportion().unwrap(), 1.0);
        assert_eq!(s.ids(), g3.ids());

        let k = generate(&GenSpec::CompleteBidirected { n: 5 }).unwrap();
        assert_eq!(symmetrize(&k), k);
        let empty = DirectedGraph::from_edges(4, []).unwrap();
        assert_eq!(symmetrize(&empty), empty);
    }

    #[test]
    fn spec_strings_round_trip() {
        for text in ["er:20:0.3:5", "ring:7", "complete:3+complete:3", "sym(er:10:0.2:1)+star:4"] {
            let spec: GenSpec = text.parse().unwrap();
            assert_eq!(spec.to_string(), text);
        }
        assert!("er:10".parse::<GenSpec>().is_err());
        assert!("blob:3".parse::<GenSpec>().is_err());
    }

    #[test]
    fn toml_form() {
        let spec: GenSpec = toml::from_str("family = \"erdos_renyi_directed\"\nn = 10\np = 0.1\nseed = 3\n").unwrap();
        assert_eq!(spec, GenSpec::erdos_renyi(10, 0.1, 3));
    }

    proptest! {
        #[test]
        fn symmetrize_properties(n in 1usize..30, p in 0.0f64..0.4, seed in any::<u64>()) {
            let g = generate(&GenSpec::erdos_renyi(n, p, seed)).unwrap();
            let s = symmetrize(&g);
            prop_assert_eq!(&symmetrize(&s), &s);
            prop_assert_eq!(s.node_count(), g.node_count());
            if g.edge_count() > 0 {
                prop_assert_eq!(s.mutual_proportion().unwrap(), 1.0);
            }
            prop_assert_eq!(&generate(&GenSpec::erdos_renyi(n, p, seed).symmetrized()).unwrap(), &s);
        }

        #[test]
        fn union_preserves_counts(a in 1usize..15, b in 1usize..15, seed in any::<u64>()) {
            let specs = vec![GenSpec::erdos_renyi(a, 0.3, seed), GenSpec::Ring { n: b }];
            let parts: Vec<_> = specs.iter().map(|s| generate(s).unwrap()).collect();
            let u = generate(&GenSpec::Union { components: specs }).unwrap();
            prop_assert_eq!(u.node_count(), a + b);
            prop_assert_eq!(u.edge_count(), parts[0].edge_count() + parts[1].edge_count());
        }
    }
}
