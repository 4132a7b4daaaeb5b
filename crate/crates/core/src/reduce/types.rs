//! Solution types on the small side of a 3-vertex cut and the exact search
//! for minimum subgraphs of a given type.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::connectivity::{is_2ec_spanning_mask, lowlink, two_edge_classes, Host};
use crate::graph::{EdgeSubset, MultiGraph, Vertex};

/// Declared from most to least preferred, so `Ord` gives `A < B1 < ...`
/// and "higher type" means "smaller in `Ord`".
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SolutionType {
    A,
    B1,
    B2,
    C1,
    C2,
    C3,
}

impl SolutionType {
    pub const ALL: [SolutionType; 6] =
        [SolutionType::A, SolutionType::B1, SolutionType::B2, SolutionType::C1, SolutionType::C2, SolutionType::C3];

    /// Whether `self` ranks above `other` in the tie-breaking order.
    pub fn precedes(self, other: SolutionType) -> bool {
        self < other
    }

    /// Types a solution on the other side may have when this side has type `self`.
    pub fn compatible_with(self) -> &'static [SolutionType] {
        use SolutionType::*;
        match self {
            A => &[A, B1, B2, C1, C2, C3],
            B1 => &[A, B1, B2, C1, C2],
            B2 => &[A, B1, B2],
            C1 => &[A, B1, C1],
            C2 => &[A, B1],
            C3 => &[A],
        }
    }
}

/// A type together with the role of each cut vertex. `lone` indexes the cut
/// vertex that sits apart from the other two.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Shape {
    A,
    B1 { lone: usize },
    B2 { lone: usize },
    C1,
    C2 { lone: usize },
    C3,
}

impl Shape {
    pub const ALL: [Shape; 12] = [
        Shape::A,
        Shape::B1 { lone: 0 },
        Shape::B1 { lone: 1 },
        Shape::B1 { lone: 2 },
        Shape::B2 { lone: 0 },
        Shape::B2 { lone: 1 },
        Shape::B2 { lone: 2 },
        Shape::C1,
        Shape::C2 { lone: 0 },
        Shape::C2 { lone: 1 },
        Shape::C2 { lone: 2 },
        Shape::C3,
    ];

    pub fn solution_type(self) -> SolutionType {
        match self {
            Shape::A => SolutionType::A,
            Shape::B1 { .. } => SolutionType::B1,
            Shape::B2 { .. } => SolutionType::B2,
            Shape::C1 => SolutionType::C1,
            Shape::C2 { .. } => SolutionType::C2,
            Shape::C3 => SolutionType::C3,
        }
    }

    fn lone(self) -> Option<usize> {
        match self {
            Shape::B1 { lone } | Shape::B2 { lone } | Shape::C2 { lone } => Some(lone),
            _ => None,
        }
    }

    /// Virtual edges on the cut that close every solution of this shape.
    fn closure(self) -> Vec<(usize, usize)> {
        let (x, y, z) = self.roles();
        match self {
            Shape::A => Vec::new(),
            Shape::B1 { .. } => vec![(x, z)],
            Shape::B2 { .. } => vec![(x, z), (x, z)],
            Shape::C1 | Shape::C3 => vec![(0, 1), (1, 2), (0, 2)],
            Shape::C2 { .. } => vec![(x, y), (x, z), (x, z)],
        }
    }

    /// Components of a solution, and how many independent cycles it must have.
    fn components_and_cycles(self) -> (usize, usize) {
        match self {
            Shape::A | Shape::B1 { .. } => (1, 1),
            Shape::B2 { .. } => (2, 1),
            Shape::C1 => (1, 0),
            Shape::C2 { .. } => (2, 0),
            Shape::C3 => (3, 0),
        }
    }

    /// Cut positions grouped by the solution component that holds them.
    pub fn cut_groups(self) -> Vec<Vec<usize>> {
        let (x, y, z) = self.roles();
        match self {
            Shape::B2 { .. } | Shape::C2 { .. } => vec![vec![x, y], vec![z]],
            Shape::C3 => vec![vec![0], vec![1], vec![2]],
            _ => vec![vec![0, 1, 2]],
        }
    }

    /// `(x, y, z)` with `z` the lone vertex when there is one.
    fn roles(self) -> (usize, usize, usize) {
        match self.lone() {
            Some(0) => (1, 2, 0),
            Some(1) => (0, 2, 1),
            _ => (0, 1, 2),
        }
    }
}

struct Structure {
    comp: Vec<usize>,
    class: Vec<usize>,
    ncomp: usize,
}

fn structure(host: &Host, mask: &[bool]) -> Structure {
    let (class, _, ll) = two_edge_classes(host, mask);
    Structure { comp: ll.comp, class, ncomp: ll.ncomp }
}

/// Type of `h` relative to `cut`, with the role of each cut vertex.
pub fn classify_shape(g: &MultiGraph, h: &EdgeSubset, cut: [Vertex; 3]) -> Result<Shape> {
    let host = Host::new(g);
    let mask = host.mask(h);
    let ll = lowlink(&host, &mask);
    let (class, nclass, _) = two_edge_classes(&host, &mask);
    let mut holds_cut = vec![false; host.n];
    for &c in &cut {
        holds_cut[ll.comp[c]] = true;
    }
    if (0..host.n).any(|x| !holds_cut[ll.comp[x]]) {
        return Err(Error::Untypeable);
    }
    // every leaf of the bridge forest must carry a cut vertex
    let mut deg = vec![0usize; nclass];
    for i in 0..host.m() {
        if mask[i] && ll.is_bridge[i] {
            let (u, v) = host.ends[i];
            deg[class[u]] += 1;
            deg[class[v]] += 1;
        }
    }
    let mut cut_class = vec![false; nclass];
    for &c in &cut {
        cut_class[class[c]] = true;
    }
    if (0..nclass).any(|k| deg[k] == 1 && !cut_class[k]) {
        return Err(Error::Untypeable);
    }
    let cc = cut.map(|c| ll.comp[c]);
    let cl = cut.map(|c| class[c]);
    let lone_of = |key: [usize; 3]| -> usize {
        if key[0] == key[1] {
            2
        } else if key[0] == key[2] {
            1
        } else {
            0
        }
    };
    let distinct = |key: [usize; 3]| {
        let mut k = key.to_vec();
        k.sort_unstable();
        k.dedup();
        k.len()
    };
    let shape = match (distinct(cc), distinct(cl)) {
        (1, 1) => Shape::A,
        (1, 2) => Shape::B1 { lone: lone_of(cl) },
        (1, 3) => Shape::C1,
        (2, 2) => Shape::B2 { lone: lone_of(cc) },
        (2, 3) => Shape::C2 { lone: lone_of(cc) },
        (3, _) => Shape::C3,
        _ => return Err(Error::Untypeable),
    };
    Ok(shape)
}

/// The type of `h` (a subgraph of `g`) with respect to the cut vertices.
pub fn classify_solution_type(g: &MultiGraph, h: &EdgeSubset, cut: [Vertex; 3]) -> Result<SolutionType> {
    classify_shape(g, h, cut).map(Shape::solution_type)
}

/// Minimum subgraph of `g1` of type `t` accepted by `compat`, or `None`.
///
/// `compat` must be monotone: accepting a set implies accepting every
/// superset. The search uses it to prune on optimistic edge sets.
pub fn enumerate_min_typed_subgraph(
    g1: &MultiGraph,
    cut: [Vertex; 3],
    t: SolutionType,
    compat: &mut dyn FnMut(&EdgeSubset) -> bool,
    budget: u64,
) -> Result<Option<EdgeSubset>> {
    let mut best: Option<EdgeSubset> = None;
    for shape in Shape::ALL.into_iter().filter(|s| s.solution_type() == t) {
        if let Some(h) = min_subgraph_of_shape(g1, cut, shape, compat, budget)? {
            if best.as_ref().is_none_or(|b| h.len() < b.len()) {
                best = Some(h);
            }
        }
    }
    Ok(best)
}

/// Minimum subgraph of `g1` with exactly the given shape.
pub fn min_subgraph_of_shape(
    g1: &MultiGraph,
    cut: [Vertex; 3],
    shape: Shape,
    compat: &mut dyn FnMut(&EdgeSubset) -> bool,
    budget: u64,
) -> Result<Option<EdgeSubset>> {
    min_subgraph_of_shape_below(g1, cut, shape, compat, budget, usize::MAX)
}

/// Like [`min_subgraph_of_shape`], but only solutions with fewer than
/// `limit` edges count.
pub fn min_subgraph_of_shape_below(
    g1: &MultiGraph,
    cut: [Vertex; 3],
    shape: Shape,
    compat: &mut dyn FnMut(&EdgeSubset) -> bool,
    budget: u64,
    limit: usize,
) -> Result<Option<EdgeSubset>> {
    let mut closed = g1.clone();
    for (a, b) in shape.closure() {
        closed.add_edge(cut[a], cut[b])?;
    }
    let host = Host::new(&closed);
    let real = g1.edge_count();
    // degree each vertex needs from real edges, given the closure
    let mut need = vec![2usize; host.n];
    for i in real..host.m() {
        let (a, b) = host.ends[i];
        need[a] = need[a].saturating_sub(1);
        need[b] = need[b].saturating_sub(1);
    }
    let mut s = ShapeSearch {
        host: &host,
        real,
        cut,
        need,
        shape,
        compat,
        state: vec![State::Free; real],
        best: None,
        limit,
        nodes: 0,
        budget,
    };
    s.dfs()?;
    Ok(s.best.map(|mask| host.subset(&mask)))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum State {
    Free,
    In,
    Out,
}

struct ShapeSearch<'a> {
    host: &'a Host,
    real: usize,
    cut: [Vertex; 3],
    need: Vec<usize>,
    shape: Shape,
    compat: &'a mut dyn FnMut(&EdgeSubset) -> bool,
    state: Vec<State>,
    best: Option<Vec<bool>>,
    limit: usize,
    nodes: u64,
    budget: u64,
}

impl ShapeSearch<'_> {
    /// Mask over the closed host: real edges passing `keep`, plus the closure.
    fn mask(&self, keep: impl Fn(State) -> bool, closure: bool) -> Vec<bool> {
        (0..self.host.m()).map(|i| if i < self.real { keep(self.state[i]) } else { closure }).collect()
    }

    fn subset(&self, mask: &[bool]) -> EdgeSubset {
        (0..self.real).filter(|&i| mask[i]).map(|i| self.host.ids[i]).collect()
    }

    /// Upward-closed requirements: the closure completes it, the extra
    /// shape conditions hold and `compat` accepts.
    fn upward(&mut self, keep: impl Fn(State) -> bool + Copy) -> bool {
        if !is_2ec_spanning_mask(self.host, &self.mask(keep, true)) {
            return false;
        }
        let alone = self.mask(keep, false);
        let st = structure(self.host, &alone);
        let (x, y, _) = self.shape.roles();
        let [cx, cy] = [self.cut[x], self.cut[y]];
        let extra = match self.shape {
            Shape::B1 { .. } | Shape::B2 { .. } => st.class[cx] == st.class[cy],
            Shape::C1 => st.ncomp == 1,
            _ => true,
        };
        if !extra {
            return false;
        }
        let chosen = self.subset(&alone);
        (self.compat)(&chosen)
    }

    /// Downward-closed requirements on the chosen edges.
    fn downward(&self, st: &Structure) -> bool {
        let (x, y, z) = self.shape.roles();
        let [x, y, z] = [self.cut[x], self.cut[y], self.cut[z]];
        let cl = |a: Vertex, b: Vertex| st.class[a] != st.class[b];
        let co = |a: Vertex, b: Vertex| st.comp[a] != st.comp[b];
        match self.shape {
            Shape::A => true,
            Shape::B1 { .. } => cl(z, x) && cl(z, y),
            Shape::B2 { .. } => co(z, x) && co(z, y),
            Shape::C1 => cl(x, y) && cl(y, z) && cl(x, z),
            Shape::C2 { .. } => cl(x, y) && co(z, x) && co(z, y),
            Shape::C3 => co(x, y) && co(y, z) && co(x, z),
        }
    }

    fn dfs(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded("typed subgraph enumeration"));
        }
        let chosen_alone = self.mask(|s| s == State::In, false);
        let st = structure(self.host, &chosen_alone);
        if !self.downward(&st) {
            return Ok(());
        }
        let size = self.state.iter().filter(|&&s| s == State::In).count();
        let deg = self.host.degrees(&chosen_alone);
        let deficit: usize = (0..self.host.n).map(|v| self.need[v].saturating_sub(deg[v])).sum();
        // a solution has exactly k components and at least r independent cycles
        let n = self.host.n;
        let (k, r) = self.shape.components_and_cycles();
        let cyclomatic = size + st.ncomp - n;
        let lb = (size + deficit.div_ceil(2)).max((n + r.max(cyclomatic)).saturating_sub(k));
        let bound = self.best.as_ref().map_or(self.limit, |b| b.iter().filter(|&&x| x).count());
        if lb >= bound {
            return Ok(());
        }
        if deficit == 0 && self.upward(|s| s == State::In) {
            self.best = Some(chosen_alone);
            return Ok(());
        }
        if !self.upward(|s| s != State::Out) {
            return Ok(());
        }

        // a vertex short of degree 2: one of its free edges must come in
        let free_at = |v: Vertex| -> Vec<usize> {
            self.host.adj[v]
                .iter()
                .map(|&(_, i)| i)
                .filter(|&i| i < self.real && self.state[i] == State::Free)
                .collect()
        };
        let pick = (0..self.host.n).filter(|&v| deg[v] < self.need[v]).map(free_at).min_by_key(|f| f.len());
        if let Some(mut options) = pick {
            options.sort_unstable();
            options.dedup();
            // prefer edges to a vertex that is still short, then edges
            // that do not close a cycle
            let rank = |i: usize| {
                let (u, v) = self.host.ends[i];
                (!(deg[u] < self.need[u] && deg[v] < self.need[v]), st.comp[u] == st.comp[v])
            };
            options.sort_by_key(|&i| rank(i));
            let saved = self.state.clone();
            for &e in &options {
                self.state[e] = State::In;
                self.dfs()?;
                self.state[e] = State::Out;
            }
            self.state = saved;
            return Ok(());
        }

        // otherwise branch on an edge joining two classes of the closed graph
        let closed = self.mask(|s| s == State::In, true);
        let (cls, _, _) = two_edge_classes(self.host, &closed);
        let across = |i: usize| {
            let (u, v) = self.host.ends[i];
            cls[u] != cls[v] || st.class[u] != st.class[v]
        };
        let frees: Vec<usize> = (0..self.real).filter(|&i| self.state[i] == State::Free).collect();
        let Some(&e) = frees.iter().find(|&&i| across(i)).or(frees.first()) else {
            return Ok(());
        };
        self.state[e] = State::In;
        self.dfs()?;
        self.state[e] = State::Out;
        self.dfs()?;
        self.state[e] = State::Free;
        Ok(())
    }
}
