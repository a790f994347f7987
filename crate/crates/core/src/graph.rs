//! Finite directed multigraphs and the free category on an acyclic one.
//!
//! The free category has the graph's vertices as objects and all finite
//! paths as morphisms; it is finite exactly when the graph is acyclic,
//! which is why `free_category` insists on a DAG and returns the offending
//! cycle otherwise.

use std::collections::BTreeMap;

use crate::category::{Category, MorId, ObjId};
use crate::error::BuildError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub src: usize,
    pub dst: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Graph {
    pub vertices: Vec<String>,
    pub edges: Vec<Edge>,
}

impl Graph {
    pub fn new() -> Self {
        Graph::default()
    }

    pub fn add_vertex(&mut self, name: impl Into<String>) -> usize {
        self.vertices.push(name.into());
        self.vertices.len() - 1
    }

    pub fn add_edge(&mut self, name: impl Into<String>, src: usize, dst: usize) -> usize {
        self.edges.push(Edge {
            name: name.into(),
            src,
            dst,
        });
        self.edges.len() - 1
    }

    /// Kahn's algorithm; on failure returns the vertices of a cycle.
    pub fn topological_order(&self) -> Result<Vec<usize>, Vec<String>> {
        let n = self.vertices.len();
        let mut indegree = vec![0usize; n];
        for e in &self.edges {
            indegree[e.dst] += 1;
        }
        let mut queue: Vec<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = queue.pop() {
            order.push(v);
            for e in &self.edges {
                if e.src == v {
                    indegree[e.dst] -= 1;
                    if indegree[e.dst] == 0 {
                        queue.push(e.dst);
                    }
                }
            }
        }
        if order.len() == n {
            Ok(order)
        } else {
            Err((0..n)
                .filter(|&v| indegree[v] > 0)
                .map(|v| self.vertices[v].clone())
                .collect())
        }
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_ok()
    }
}

/// The free category on a DAG, with a record of which path each morphism is.
#[derive(Debug, Clone)]
pub struct FreeCategory {
    pub category: Category,
    /// For each morphism, its edge sequence in diagrammatic order.
    /// Identities are the empty path.
    pub paths: Vec<Vec<usize>>,
    vertex_objects: Vec<ObjId>,
    path_index: BTreeMap<Vec<usize>, MorId>,
}

impl FreeCategory {
    pub fn object_of_vertex(&self, v: usize) -> ObjId {
        self.vertex_objects[v]
    }

    /// The morphism for a non-empty edge sequence, if composable. The empty
    /// path is per-vertex; use `category.identity(object_of_vertex(v))`.
    pub fn path_morphism(&self, edges: &[usize]) -> Option<MorId> {
        self.path_index.get(edges).copied()
    }

    pub fn edge_morphism(&self, e: usize) -> Option<MorId> {
        self.path_morphism(&[e])
    }
}

/// Build the free category on `g`, failing with a cycle witness when the
/// path category would be infinite.
pub fn free_category(g: &Graph) -> Result<FreeCategory, BuildError> {
    if let Err(cycle) = g.topological_order() {
        return Err(BuildError::Invalid(format!(
            "graph has a cycle through: {}",
            cycle.join(", ")
        )));
    }
    let mut builder = Category::builder();
    let vertex_objects: Vec<ObjId> = g
        .vertices
        .iter()
        .map(|v| builder.add_object(v.clone()))
        .collect();

    // All non-empty paths, enumerated by length; acyclicity makes this
    // terminate.
    let mut frontier: Vec<Vec<usize>> = (0..g.edges.len()).map(|e| vec![e]).collect();
    let mut all: Vec<Vec<usize>> = Vec::new();
    while !frontier.is_empty() {
        all.extend(frontier.iter().cloned());
        let mut next = Vec::new();
        for p in &frontier {
            let last = &g.edges[*p.last().expect("nonempty path")];
            for (e, edge) in g.edges.iter().enumerate() {
                if edge.src == last.dst {
                    let mut q = p.clone();
                    q.push(e);
                    next.push(q);
                }
            }
        }
        frontier = next;
    }
    all.sort();

    // Identities first (the empty path at each vertex), then proper paths.
    let mut morph_paths: Vec<Vec<usize>> = Vec::new();
    let mut identity_ids: Vec<MorId> = Vec::new();
    for (v, obj) in vertex_objects.iter().enumerate() {
        identity_ids.push(builder.add_identity(format!("id_{}", g.vertices[v]), *obj));
        morph_paths.push(Vec::new());
    }
    let mut path_index: BTreeMap<Vec<usize>, MorId> = BTreeMap::new();
    for p in &all {
        let name = p
            .iter()
            .map(|&e| g.edges[e].name.clone())
            .collect::<Vec<_>>()
            .join(";");
        let dom = vertex_objects[g.edges[p[0]].src];
        let cod = vertex_objects[g.edges[*p.last().unwrap()].dst];
        let m = builder.add_morphism(name, dom, cod);
        path_index.insert(p.clone(), m);
        morph_paths.push(p.clone());
    }

    // Composition is path concatenation.
    for (p, &mp) in &path_index {
        for (q, &mq) in &path_index {
            if g.edges[q[0]].src == g.edges[*p.last().unwrap()].dst {
                let mut pq = p.clone();
                pq.extend(q.iter().copied());
                builder.set_composite(mp, mq, path_index[&pq]);
            }
        }
        let dom_v = g.edges[p[0]].src;
        let cod_v = g.edges[*p.last().unwrap()].dst;
        builder.set_composite(identity_ids[dom_v], mp, mp);
        builder.set_composite(mp, identity_ids[cod_v], mp);
    }
    for &id in &identity_ids {
        builder.set_composite(id, id, id);
    }
    let category = builder.finish()?;
    Ok(FreeCategory {
        category,
        paths: morph_paths,
        vertex_objects,
        path_index,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diamond() -> Graph {
        let mut g = Graph::new();
        let a = g.add_vertex("a");
        let b = g.add_vertex("b");
        let c = g.add_vertex("c");
        let d = g.add_vertex("d");
        g.add_edge("f", a, b);
        g.add_edge("g", a, c);
        g.add_edge("h", b, d);
        g.add_edge("k", c, d);
        g
    }

    #[test]
    fn free_category_on_diamond() {
        let free = free_category(&diamond()).unwrap();
        let cat = &free.category;
        // 4 identities, 4 edges, 2 length-two paths.
        assert_eq!(cat.morphism_count(), 10);
        assert!(cat.validate().is_empty());
        let f = cat.morphism_named("f").unwrap();
        let h = cat.morphism_named("h").unwrap();
        let fh = cat.compose(f, h).unwrap();
        assert_eq!(cat.morphism_name(fh), "f;h");
    }

    #[test]
    fn cycle_is_rejected_with_witness() {
        let mut g = Graph::new();
        let a = g.add_vertex("a");
        let b = g.add_vertex("b");
        g.add_edge("f", a, b);
        g.add_edge("g", b, a);
        let err = free_category(&g).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("cycle"), "message: {msg}");
        assert!(msg.contains('a') && msg.contains('b'));
    }

    #[test]
    fn path_lookup() {
        let free = free_category(&diamond()).unwrap();
        let m = free.path_morphism(&[0, 2]).unwrap();
        assert_eq!(free.category.morphism_name(m), "f;h");
        assert!(free.path_morphism(&[0, 3]).is_none());
    }
}
