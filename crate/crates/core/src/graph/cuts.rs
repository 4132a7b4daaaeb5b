use serde::{Deserialize, Serialize};

use super::connectivity::{components_on, Host};
use super::multigraph::{MultiGraph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CutKind {
    OneCut,
    TwoIsolating,
    TwoNonIsolating,
    ThreeSmall,
    ThreeLarge,
}

/// A vertex cut with its residual components (sorted by smallest vertex).
/// `side_a` is the first residual component, `side_b` the union of the rest.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutCertificate {
    pub cut: Vec<Vertex>,
    pub side_a: Vec<Vertex>,
    pub side_b: Vec<Vertex>,
    pub residual: Vec<Vec<Vertex>>,
    pub kind: CutKind,
}

/// Residual components of `g - removed`, each sorted, ordered by smallest vertex.
pub fn residual_components(g: &MultiGraph, removed: &[Vertex]) -> Vec<Vec<Vertex>> {
    let host = Host::new(g);
    residual_with_host(&host, removed)
}

fn residual_with_host(host: &Host, removed: &[Vertex]) -> Vec<Vec<Vertex>> {
    let mut alive = vec![true; host.n];
    for &x in removed {
        alive[x] = false;
    }
    let (comp, count) = components_on(host, &host.full_mask(), &alive);
    let mut out = vec![Vec::new(); count];
    for v in 0..host.n {
        if alive[v] {
            out[comp[v]].push(v);
        }
    }
    out
}

pub fn classify(k: usize, residual: &[Vec<Vertex>]) -> CutKind {
    match k {
        1 => CutKind::OneCut,
        2 => {
            if residual.len() == 2 && residual.iter().any(|c| c.len() == 1) {
                CutKind::TwoIsolating
            } else {
                CutKind::TwoNonIsolating
            }
        }
        _ => {
            if residual.len() == 2 && residual.iter().any(|c| c.len() <= 6) {
                CutKind::ThreeSmall
            } else {
                CutKind::ThreeLarge
            }
        }
    }
}

fn certificate(cut: Vec<Vertex>, residual: Vec<Vec<Vertex>>) -> CutCertificate {
    let kind = classify(cut.len(), &residual);
    let side_a = residual[0].clone();
    let mut side_b: Vec<Vertex> = residual[1..].iter().flatten().copied().collect();
    side_b.sort_unstable();
    CutCertificate { cut, side_a, side_b, residual, kind }
}

/// All vertex cuts of size exactly `k`, in lexicographic order of the cut.
pub fn vertex_cuts(g: &MultiGraph, k: usize) -> Vec<CutCertificate> {
    let n = g.vertex_count();
    if k == 0 || k > 3 || n < k + 2 {
        return Vec::new();
    }
    let host = Host::new(g);
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let residual = residual_with_host(&host, &idx);
        if residual.len() >= 2 {
            out.push(certificate(idx.clone(), residual));
        }
        // next combination
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// A `k`-vertex cut, or `None`. Among all cuts the most reduction-relevant
/// kind is preferred (non-isolating over isolating, large over small), then
/// the lexicographically least vertex set.
pub fn find_vertex_cut(g: &MultiGraph, k: usize) -> Option<CutCertificate> {
    let cuts = vertex_cuts(g, k);
    let rank = |c: &CutCertificate| match c.kind {
        CutKind::TwoNonIsolating | CutKind::ThreeLarge | CutKind::OneCut => 0,
        _ => 1,
    };
    cuts.into_iter().min_by(|a, b| rank(a).cmp(&rank(b)).then_with(|| a.cut.cmp(&b.cut)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> MultiGraph {
        let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        MultiGraph::from_edges(n, &e).unwrap()
    }

    #[test]
    fn c6_two_cut_is_opposite_pair() {
        let c = find_vertex_cut(&cycle(6), 2).unwrap();
        assert_eq!(c.cut, vec![0, 3]);
        assert_eq!(c.kind, CutKind::TwoNonIsolating);
        assert_eq!(c.side_a.len(), 2);
        assert_eq!(c.side_b.len(), 2);
    }

    #[test]
    fn k4_has_no_three_cut() {
        let mut e = Vec::new();
        for i in 0..4 {
            for j in i + 1..4 {
                e.push((i, j));
            }
        }
        let g = MultiGraph::from_edges(4, &e).unwrap();
        assert!(find_vertex_cut(&g, 3).is_none());
        assert!(find_vertex_cut(&g, 1).is_none());
    }

    #[test]
    fn isolating_cut_classification() {
        let r = vec![vec![0], vec![2, 3, 4]];
        assert_eq!(classify(2, &r), CutKind::TwoIsolating);
        let r = vec![vec![0], vec![2], vec![3]];
        assert_eq!(classify(2, &r), CutKind::TwoNonIsolating);
        let r = vec![vec![0; 6], vec![1; 9]];
        assert_eq!(classify(3, &r), CutKind::ThreeSmall);
        let r = vec![vec![0; 7], vec![1; 7]];
        assert_eq!(classify(3, &r), CutKind::ThreeLarge);
    }
}
