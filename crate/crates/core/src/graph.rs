//! Tope graphs: topes as vertices, single sign flips as edges labelled by the
//! flipped hyperplane.

use std::collections::{BTreeMap, HashMap, VecDeque};

use crate::arrangement::IndexMap;
use crate::error::{Error, Result};
use crate::tope::{adjacency, Tope};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    /// Index of the hyperplane containing the separating wall.
    pub kind: usize,
}

/// A tope graph with canonically ordered vertices and edges.
#[derive(Debug, Clone)]
pub struct TopeGraph {
    m: usize,
    topes: Vec<Tope>,
    index: HashMap<Tope, usize>,
    edges: Vec<Edge>,
    adj: Vec<Vec<(usize, usize)>>,
}

impl PartialEq for TopeGraph {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.topes == other.topes && self.edges == other.edges
    }
}

impl Eq for TopeGraph {}

impl TopeGraph {
    /// Builds a graph from topes and edges given as index pairs into `topes`.
    /// Vertices are sorted, duplicate edges merged, and each edge type recomputed
    /// from its endpoints; pairs that are not at Hamming distance one are rejected.
    pub fn new(m: usize, topes: Vec<Tope>, pairs: &[(usize, usize)]) -> Result<TopeGraph> {
        if let Some(t) = topes.iter().find(|t| t.len() != m) {
            return Err(Error::LengthMismatch(t.len(), m));
        }
        let mut order: Vec<usize> = (0..topes.len()).collect();
        order.sort_by(|&i, &j| topes[i].cmp(&topes[j]));
        let mut new_id = vec![0; topes.len()];
        for (new, &old) in order.iter().enumerate() {
            new_id[old] = new;
        }
        let mut sorted = Vec::with_capacity(topes.len());
        let mut slots: Vec<Option<Tope>> = topes.into_iter().map(Some).collect();
        for &old in &order {
            sorted.push(slots[old].take().unwrap());
        }
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidGraph("repeated tope".into()));
        }
        let mut edges = Vec::with_capacity(pairs.len());
        for &(x, y) in pairs {
            let (a, b) = (new_id[x], new_id[y]);
            let kind = adjacency(&sorted[a], &sorted[b])?
                .ok_or_else(|| Error::InvalidGraph(format!("{} and {} are not adjacent", sorted[a], sorted[b])))?;
            edges.push(Edge {
                a: a.min(b),
                b: a.max(b),
                kind,
            });
        }
        Ok(Self::assemble(m, sorted, edges))
    }

    fn assemble(m: usize, topes: Vec<Tope>, mut edges: Vec<Edge>) -> TopeGraph {
        edges.sort();
        edges.dedup();
        let mut adj = vec![Vec::new(); topes.len()];
        for e in &edges {
            adj[e.a].push((e.b, e.kind));
            adj[e.b].push((e.a, e.kind));
        }
        for l in adj.iter_mut() {
            l.sort();
        }
        let index = topes.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
        TopeGraph {
            m,
            topes,
            index,
            edges,
            adj,
        }
    }

    /// The graph on a tope set whose edges are all Hamming-distance-one pairs.
    pub fn from_topes(m: usize, topes: Vec<Tope>) -> Result<TopeGraph> {
        let index: HashMap<&Tope, usize> = topes.iter().enumerate().map(|(i, t)| (t, i)).collect();
        let mut pairs = Vec::new();
        for (i, t) in topes.iter().enumerate() {
            for h in 0..m {
                if let Some(&j) = index.get(&t.flipped(h)) {
                    if i < j {
                        pairs.push((i, j));
                    }
                }
            }
        }
        drop(index);
        TopeGraph::new(m, topes, &pairs)
    }

    /// Number of hyperplanes (length of every tope).
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.topes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.topes.is_empty()
    }

    pub fn topes(&self) -> &[Tope] {
        &self.topes
    }

    pub fn tope(&self, id: usize) -> &Tope {
        &self.topes[id]
    }

    pub fn id(&self, t: &Tope) -> Option<usize> {
        self.index.get(t).copied()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// `(neighbor, edge type)` pairs, sorted by neighbor id.
    pub fn neighbors(&self, id: usize) -> &[(usize, usize)] {
        &self.adj[id]
    }

    pub fn degree(&self, id: usize) -> usize {
        self.adj[id].len()
    }

    /// The type of the edge `{a, b}`, if present.
    pub fn edge_type(&self, a: usize, b: usize) -> Option<usize> {
        self.adj[a]
            .binary_search_by(|&(n, _)| n.cmp(&b))
            .ok()
            .map(|k| self.adj[a][k].1)
    }

    /// Number of edges of each type.
    pub fn edge_type_counts(&self) -> Vec<usize> {
        let mut c = vec![0; self.m];
        for e in &self.edges {
            c[e.kind] += 1;
        }
        c
    }

    pub fn is_connected(&self) -> bool {
        if self.topes.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.len()];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &(w, _) in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.len()
    }

    /// Checks the structural invariants of a tope graph of a central arrangement:
    /// edge types match the differing sign, the tope set and edges are centrally
    /// symmetric, and the graph is connected.
    pub fn validate(&self) -> Result<()> {
        for e in &self.edges {
            if adjacency(&self.topes[e.a], &self.topes[e.b])? != Some(e.kind) {
                return Err(Error::InvalidGraph(format!("edge {e:?} has the wrong type")));
            }
        }
        for (i, t) in self.topes.iter().enumerate() {
            let Some(j) = self.id(&t.negated()) else {
                return Err(Error::InvalidGraph(format!("-{t} is missing")));
            };
            for &(n, kind) in &self.adj[i] {
                let Some(nn) = self.id(&self.topes[n].negated()) else {
                    return Err(Error::InvalidGraph("antipode missing".into()));
                };
                if self.edge_type(j, nn) != Some(kind) {
                    return Err(Error::InvalidGraph(format!("antipodal edge of {t} missing")));
                }
            }
        }
        if !self.is_connected() {
            return Err(Error::InvalidGraph("not connected".into()));
        }
        Ok(())
    }

    /// Contracts every edge whose type is in `drop`, merges parallel edges and
    /// removes loops. Merged vertices are labelled by the projection of their topes
    /// onto the retained hyperplanes.
    pub fn contract(&self, drop: &[usize]) -> Result<(TopeGraph, IndexMap)> {
        if let Some(&bad) = drop.iter().find(|&&h| h >= self.m) {
            return Err(Error::IndexOutOfRange(bad));
        }
        let map = IndexMap::dropping(self.m, drop);
        if map.new_to_old.is_empty() {
            return Err(Error::DropAll);
        }
        let mut dropped = vec![false; self.m];
        for &h in drop {
            dropped[h] = true;
        }
        let mut uf = UnionFind::new(self.len());
        for e in self.edges.iter().filter(|e| dropped[e.kind]) {
            uf.union(e.a, e.b);
        }
        let mut classes: BTreeMap<Tope, usize> = BTreeMap::new();
        let mut class_of_root: HashMap<usize, Tope> = HashMap::new();
        for v in 0..self.len() {
            let root = uf.find(v);
            let key = self.topes[v].select(&map.new_to_old);
            match class_of_root.get(&root) {
                Some(k) if *k != key => {
                    return Err(Error::InvalidGraph(format!(
                        "contracted class mixes projections {k} and {key}"
                    )))
                }
                Some(_) => {}
                None => {
                    class_of_root.insert(root, key.clone());
                }
            }
            classes.entry(key).or_insert(0);
        }
        if classes.len() != class_of_root.len() {
            return Err(Error::InvalidGraph("two contracted classes share a projection".into()));
        }
        let topes: Vec<Tope> = classes.keys().cloned().collect();
        for (i, v) in classes.values_mut().enumerate() {
            *v = i;
        }
        let vid: Vec<usize> = (0..self.len()).map(|v| classes[&class_of_root[&uf.find(v)]]).collect();
        let edges = self
            .edges
            .iter()
            .filter(|e| !dropped[e.kind])
            .map(|e| {
                let (a, b) = (vid[e.a], vid[e.b]);
                Edge {
                    a: a.min(b),
                    b: a.max(b),
                    kind: map.old_to_new[e.kind].unwrap(),
                }
            })
            .filter(|e| e.a != e.b)
            .collect();
        Ok((Self::assemble(map.new_to_old.len(), topes, edges), map))
    }

    /// Box product; vertex `(s, t)` is the concatenated sign vector.
    pub fn box_product(&self, other: &TopeGraph) -> TopeGraph {
        let n2 = other.len();
        let mut topes = Vec::with_capacity(self.len() * n2);
        for s in &self.topes {
            for t in &other.topes {
                topes.push(s.concat(t));
            }
        }
        let mut edges = Vec::new();
        for e in &self.edges {
            for j in 0..n2 {
                edges.push(Edge {
                    a: e.a * n2 + j,
                    b: e.b * n2 + j,
                    kind: e.kind,
                });
            }
        }
        for i in 0..self.len() {
            for e in &other.edges {
                edges.push(Edge {
                    a: i * n2 + e.a,
                    b: i * n2 + e.b,
                    kind: self.m + e.kind,
                });
            }
        }
        // concatenation preserves the lexicographic order, so ids are already canonical
        debug_assert!(topes.windows(2).all(|w| w[0] < w[1]));
        Self::assemble(self.m + other.m, topes, edges)
    }

    /// The same graph with every tope multiplied by `signs` (reorientation).
    pub fn reoriented(&self, signs: &Tope) -> TopeGraph {
        let topes: Vec<Tope> = self.topes.iter().map(|t| t.times(signs)).collect();
        let pairs: Vec<(usize, usize)> = self.edges.iter().map(|e| (e.a, e.b)).collect();
        TopeGraph::new(self.m, topes, &pairs).expect("reorientation preserves adjacency")
    }

    /// Reorders hyperplanes: coordinate `new` of the result is coordinate
    /// `order[new]` of `self`.
    pub fn permuted(&self, order: &[usize]) -> TopeGraph {
        let topes: Vec<Tope> = self.topes.iter().map(|t| t.select(order)).collect();
        let pairs: Vec<(usize, usize)> = self.edges.iter().map(|e| (e.a, e.b)).collect();
        TopeGraph::new(self.m, topes, &pairs).expect("permutation preserves adjacency")
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn topes(list: &[&str]) -> Vec<Tope> {
        list.iter().map(|s| s.parse().unwrap()).collect()
    }

    fn square() -> TopeGraph {
        TopeGraph::from_topes(2, topes(&["++", "+-", "-+", "--"])).unwrap()
    }

    #[test]
    fn four_cycle() {
        let g = square();
        assert_eq!(g.len(), 4);
        assert_eq!(g.edges().len(), 4);
        g.validate().unwrap();
        assert_eq!(g.edge_type(0, 1), Some(1));
        assert_eq!(g.edge_type(0, 3), None);
    }

    #[test]
    fn rejects_non_adjacent_edge() {
        let e = TopeGraph::new(2, topes(&["++", "--"]), &[(0, 1)]);
        assert!(matches!(e, Err(Error::InvalidGraph(_))));
    }

    #[test]
    fn contract_square_merges_parallel_edges() {
        let (c, map) = square().contract(&[1]).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c.edges().len(), 1);
        assert_eq!(c.edges()[0].kind, 0);
        assert_eq!(map.new_to_old, vec![0]);
    }

    #[test]
    fn contract_nothing_is_identity() {
        let (c, _) = square().contract(&[]).unwrap();
        assert_eq!(c, square());
    }

    #[test]
    fn validate_catches_asymmetry() {
        let g = TopeGraph::from_topes(2, topes(&["++", "+-", "-+"])).unwrap();
        assert!(g.validate().is_err());
    }

    #[test]
    fn box_product_of_edges_is_square() {
        let k2 = TopeGraph::from_topes(1, topes(&["+", "-"])).unwrap();
        assert_eq!(k2.box_product(&k2), square());
    }
}
