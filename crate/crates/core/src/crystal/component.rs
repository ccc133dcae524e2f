//! Connected components of words under the Kashiwara operators.

use super::word::word_op;
use super::{word_to_string, CrystalError, CrystalType, Dir, Letter, Word};
use serde::Serialize;
use std::collections::HashMap;
use std::fmt::Write as _;

/// A labeled digraph on words: one vertex per reachable word, edges labeled by
/// the operator label, oriented in the lowering direction.
#[derive(Debug, Clone)]
pub struct ComponentGraph {
    pub vertices: Vec<Word>,
    /// (source index, target index, label)
    pub edges: Vec<(usize, usize, u8)>,
}

/// Breadth-first closure of `{w}` under all operators. Fails once more than
/// `cap` vertices have been discovered, reporting the partial size.
pub fn connected_component(
    ty: &CrystalType,
    w: &[Letter],
    cap: usize,
) -> Result<ComponentGraph, CrystalError> {
    ty.check_word(w)?;
    let mut vertices: Vec<Word> = vec![w.to_vec()];
    let mut index: HashMap<Word, usize> = HashMap::from([(w.to_vec(), 0)]);
    let mut edges = Vec::new();
    let mut frontier = vec![0usize];
    while let Some(v) = frontier.pop() {
        let word = vertices[v].clone();
        for i in ty.labels() {
            for dir in [Dir::Lower, Dir::Raise] {
                if let Some(next) = word_op(ty, &word, i, dir)? {
                    let target = match index.get(&next) {
                        Some(&k) => k,
                        None => {
                            let k = vertices.len();
                            if k >= cap {
                                return Err(CrystalError::ComponentCapExceeded { cap, partial: k });
                            }
                            vertices.push(next.clone());
                            index.insert(next, k);
                            frontier.push(k);
                            k
                        }
                    };
                    if dir == Dir::Lower {
                        edges.push((v, target, i));
                    }
                }
            }
        }
    }
    // Canonical vertex order; BFS discovery order depends on the start word.
    let mut order: Vec<usize> = (0..vertices.len()).collect();
    order.sort_by(|&a, &b| vertices[a].cmp(&vertices[b]));
    let mut rename = vec![0usize; vertices.len()];
    for (new, &old) in order.iter().enumerate() {
        rename[old] = new;
    }
    let mut sorted_vertices: Vec<Word> = vec![Vec::new(); vertices.len()];
    for (old, w) in vertices.into_iter().enumerate() {
        sorted_vertices[rename[old]] = w;
    }
    let mut sorted_edges: Vec<(usize, usize, u8)> = edges
        .into_iter()
        .map(|(s, t, i)| (rename[s], rename[t], i))
        .collect();
    sorted_edges.sort();
    sorted_edges.dedup();
    Ok(ComponentGraph {
        vertices: sorted_vertices,
        edges: sorted_edges,
    })
}

impl ComponentGraph {
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph crystal {\n");
        for w in &self.vertices {
            let _ = writeln!(s, "  \"{}\";", word_to_string(w));
        }
        for &(src, dst, label) in &self.edges {
            let _ = writeln!(
                s,
                "  \"{}\" -> \"{}\" [label=\"{}\"];",
                word_to_string(&self.vertices[src]),
                word_to_string(&self.vertices[dst]),
                label
            );
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Edge {
            src: String,
            dst: String,
            label: u8,
        }
        let vertices: Vec<String> = self.vertices.iter().map(|w| word_to_string(w)).collect();
        let edges: Vec<Edge> = self
            .edges
            .iter()
            .map(|&(s, t, i)| Edge {
                src: word_to_string(&self.vertices[s]),
                dst: word_to_string(&self.vertices[t]),
                label: i,
            })
            .collect();
        serde_json::json!({ "vertices": vertices, "edges": edges })
    }
}
