use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::TopeGraph;

use super::HamiltonCertificate;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome<T> {
    Found(T),
    /// The search space was exhausted.
    ProvedNone,
    /// The node budget ran out first.
    BudgetExceeded,
}

impl<T> SearchOutcome<T> {
    pub fn found(self) -> Option<T> {
        match self {
            SearchOutcome::Found(t) => Some(t),
            _ => None,
        }
    }

    fn map<U>(self, f: impl FnOnce(T) -> U) -> SearchOutcome<U> {
        match self {
            SearchOutcome::Found(t) => SearchOutcome::Found(f(t)),
            SearchOutcome::ProvedNone => SearchOutcome::ProvedNone,
            SearchOutcome::BudgetExceeded => SearchOutcome::BudgetExceeded,
        }
    }
}

struct State<'a> {
    adj: &'a [Vec<usize>],
    /// Tie-break among moves with equally many exits.
    rank: &'a [usize],
    visited: Vec<bool>,
    /// Unvisited neighbours of each vertex.
    free: Vec<usize>,
    path: Vec<usize>,
}

impl State<'_> {
    fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adj[a].contains(&b)
    }

    /// Edges still usable by the unvisited vertex `v`.
    fn available(&self, v: usize) -> usize {
        let head = *self.path.last().unwrap();
        let start = self.path[0];
        self.free[v] + self.adjacent(v, head) as usize + (head != start && self.adjacent(v, start)) as usize
    }

    fn push(&mut self, v: usize) {
        self.visited[v] = true;
        self.path.push(v);
        for &w in &self.adj[v] {
            self.free[w] -= 1;
        }
    }

    fn pop(&mut self) {
        let v = self.path.pop().unwrap();
        self.visited[v] = false;
        for &w in &self.adj[v] {
            self.free[w] += 1;
        }
    }

    /// No unvisited vertex near the last two path vertices is starved, and the
    /// start can still be closed.
    fn viable(&self) -> bool {
        let n = self.adj.len();
        if self.path.len() == n {
            return true;
        }
        let head = *self.path.last().unwrap();
        let start = self.path[0];
        if self.path.len() > 1 && self.free[start] == 0 {
            return false;
        }
        let prev = self.path[self.path.len().saturating_sub(2)];
        let starved = [head, prev]
            .iter()
            .flat_map(|&u| self.adj[u].iter())
            .filter(|&&x| !self.visited[x])
            .any(|&x| self.available(x) < 2);
        !starved && self.unvisited_connected()
    }

    /// Every unvisited vertex is reachable from the head through unvisited ones.
    fn unvisited_connected(&self) -> bool {
        let head = *self.path.last().unwrap();
        let remaining = self.adj.len() - self.path.len();
        let mut seen = vec![false; self.adj.len()];
        let mut stack = vec![head];
        let mut reached = 0;
        while let Some(u) = stack.pop() {
            for &w in &self.adj[u] {
                if !self.visited[w] && !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    stack.push(w);
                }
            }
        }
        reached == remaining
    }

    /// Moves from the head in the order they should be tried.
    fn candidates(&self) -> Vec<usize> {
        let head = *self.path.last().unwrap();
        let start = self.path[0];
        let mut next: Vec<(usize, usize, usize)> = self.adj[head]
            .iter()
            .filter(|&&x| !self.visited[x])
            .map(|&x| (self.available(x), self.rank[x], x))
            .collect();
        if head != start {
            let forced: Vec<usize> = next.iter().filter(|&&(a, _, _)| a == 2).map(|&(_, _, x)| x).collect();
            // a neighbour with two usable edges needs the edge to the head now
            let forced: Vec<usize> = forced
                .into_iter()
                .filter(|&x| !(self.adjacent(x, start) && self.path.len() + 1 == self.adj.len()))
                .collect();
            match forced.len() {
                0 => {}
                1 => return forced,
                _ => return Vec::new(),
            }
        }
        next.sort_unstable();
        next.into_iter().map(|(_, _, x)| x).collect()
    }
}

/// Depth-first search for a Hamiltonian cycle through vertex 0 on a plain
/// adjacency list, with degree and connectivity pruning, forced moves and
/// fewest-exits ordering. `budget` bounds the total number of moves tried. The
/// first pass breaks ties by vertex id; when a pass runs past its share of the
/// budget the search restarts with seeded random tie-breaks and a larger share.
pub fn search_cycle_raw(adj: &[Vec<usize>], budget: u64) -> SearchOutcome<Vec<usize>> {
    let n = adj.len();
    if n == 0 {
        return SearchOutcome::ProvedNone;
    }
    if n == 1 {
        return SearchOutcome::Found(vec![0]);
    }
    if n == 2 {
        return if adj[0].contains(&1) {
            SearchOutcome::Found(vec![0, 1])
        } else {
            SearchOutcome::ProvedNone
        };
    }
    if adj.iter().any(|l| l.len() < 2) {
        return SearchOutcome::ProvedNone;
    }
    let mut rank: Vec<usize> = (0..n).collect();
    let mut spent = 0u64;
    let mut share = 20_000u64;
    for attempt in 0u64.. {
        let limit = if spent + 2 * share > budget {
            budget - spent
        } else {
            share
        };
        match search_pass(adj, &rank, limit) {
            (SearchOutcome::BudgetExceeded, used) => {
                spent += used;
                if spent >= budget {
                    return SearchOutcome::BudgetExceeded;
                }
            }
            (done, _) => return done,
        }
        share += share / 2;
        rank.shuffle(&mut ChaCha8Rng::seed_from_u64(attempt));
    }
    unreachable!()
}

fn search_pass(adj: &[Vec<usize>], rank: &[usize], budget: u64) -> (SearchOutcome<Vec<usize>>, u64) {
    let n = adj.len();
    let mut st = State {
        adj,
        rank,
        visited: vec![false; n],
        free: adj.iter().map(Vec::len).collect(),
        path: Vec::with_capacity(n),
    };
    st.push(0);
    let mut stack: Vec<(Vec<usize>, usize)> = vec![(st.candidates(), 0)];
    let mut nodes = 0u64;
    while let Some((cands, idx)) = stack.last_mut() {
        if *idx == cands.len() {
            stack.pop();
            if st.path.len() > 1 {
                st.pop();
            }
            continue;
        }
        let v = cands[*idx];
        *idx += 1;
        nodes += 1;
        if nodes > budget {
            return (SearchOutcome::BudgetExceeded, nodes);
        }
        st.push(v);
        if st.path.len() == n {
            if st.adjacent(v, 0) {
                return (SearchOutcome::Found(st.path.clone()), nodes);
            }
            st.pop();
            continue;
        }
        if !st.viable() {
            st.pop();
            continue;
        }
        let next = st.candidates();
        stack.push((next, 0));
    }
    (SearchOutcome::ProvedNone, nodes)
}

/// [`search_cycle_raw`] on a tope graph, vertices in canonical tope order.
pub fn search_cycle(g: &TopeGraph, budget: u64) -> SearchOutcome<HamiltonCertificate> {
    let adj: Vec<Vec<usize>> = (0..g.len())
        .map(|v| g.neighbors(v).iter().map(|&(w, _)| w).collect())
        .collect();
    search_cycle_raw(&adj, budget).map(|order| {
        let topes: Vec<_> = order.iter().map(|&v| g.tope(v).clone()).collect();
        HamiltonCertificate::from_topes(g.m(), &topes).expect("search follows graph edges")
    })
}
