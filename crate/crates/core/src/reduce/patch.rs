use crate::error::{Error, Result};
use crate::graph::connectivity::{is_2ec_spanning_mask, two_edge_classes, Host};
use crate::graph::{EdgeSubset, MultiGraph};

/// Smallest `F` with `base ∪ F` a 2-ECSS of `g`, by increasing size and then
/// lexicographic edge ids. Fails when more than `bound` edges are needed.
pub fn min_patch(g: &MultiGraph, base: &EdgeSubset, bound: usize) -> Result<EdgeSubset> {
    let host = Host::new(g);
    let mut mask = host.mask(base);
    for k in 0..=bound {
        let mut picked = Vec::new();
        if extend(&host, &mut mask, 0, k, &mut picked) {
            return Ok(picked.into_iter().map(|i| host.ids[i]).collect());
        }
    }
    Err(Error::PatchNotFound { bound })
}

fn extend(host: &Host, mask: &mut [bool], from: usize, left: usize, picked: &mut Vec<usize>) -> bool {
    if is_2ec_spanning_mask(host, mask) {
        return true;
    }
    if left == 0 {
        return false;
    }
    let (class, nclass, ll) = two_edge_classes(host, mask);
    if lower_bound(host, mask, &class, nclass, &ll.is_bridge, ll.ncomp) > left {
        return false;
    }
    for i in from..host.m() {
        if mask[i] {
            continue;
        }
        let (u, v) = host.ends[i];
        // an edge inside one class never helps
        if class[u] == class[v] {
            continue;
        }
        mask[i] = true;
        picked.push(i);
        if extend(host, mask, i + 1, left - 1, picked) {
            return true;
        }
        picked.pop();
        mask[i] = false;
    }
    false
}

/// Every leaf of the bridge forest needs a new edge end, an isolated class two.
fn lower_bound(host: &Host, mask: &[bool], class: &[usize], nclass: usize, is_bridge: &[bool], ncomp: usize) -> usize {
    if nclass <= 1 {
        return 0;
    }
    let mut deg = vec![0usize; nclass];
    for i in 0..host.m() {
        if mask[i] && is_bridge[i] {
            let (u, v) = host.ends[i];
            deg[class[u]] += 1;
            deg[class[v]] += 1;
        }
    }
    let ends: usize = deg
        .iter()
        .map(|&d| match d {
            0 if ncomp > 1 => 2,
            1 => 1,
            _ => 0,
        })
        .sum();
    ends.div_ceil(2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_paths_need_nothing_more_than_a_chord() {
        let g = MultiGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        let base: EdgeSubset = g.edge_ids().iter().filter(|e| e.0 < 3).collect();
        let f = min_patch(&g, &base, 2).unwrap();
        assert_eq!(f.len(), 1);
        assert!(f.contains(crate::graph::EdgeId(3)));
    }

    #[test]
    fn missing_patch_is_reported() {
        let g = MultiGraph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let r = min_patch(&g, &EdgeSubset::new(), 2);
        assert_eq!(r, Err(Error::PatchNotFound { bound: 2 }));
    }
}
